// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "procurate/corpus.hpp"
#include "procurate/embedindex.hpp"
#include "procurate/error.hpp"
#include "procurate/parallel.hpp"
#include "procurate/report.hpp"
#include "procurate/sieve.hpp"
#include "procurate/swap.hpp"
#include "procurate/textnorm.hpp"

namespace procurate::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::shared_ptr<spdlog::logger> log() {
    static std::shared_ptr<spdlog::logger> logger = [] {
        auto l = spdlog::stderr_logger_mt("procurate");
        l->set_pattern("procurate: %l: %v");
        l->set_level(spdlog::level::info);
        if (const char* env = std::getenv("PROCURATE_LOG")) {
            const std::string level(env);
            if (level == "error") {
                l->set_level(spdlog::level::err);
            } else if (level == "debug") {
                l->set_level(spdlog::level::debug);
            } else if (level != "info") {
                l->warn("ignoring PROCURATE_LOG='{}' (expected error, info or debug)", level);
            }
        }
        return l;
    }();
    return logger;
}

void require_file(const fs::path& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string(what) + " path is not set");
    if (!fs::is_regular_file(path)) throw ConfigError(std::string(what) + " file not found: " + path.string());
}

corpus::IngestMode ingest_mode(const PipelineConfig& cfg) {
    return cfg.strict ? corpus::IngestMode::kStrict : corpus::IngestMode::kLenient;
}

text::Stoplist load_stoplist(const PipelineConfig& cfg) {
    text::Stoplist lists = text::Stoplist::defaults();
    if (!cfg.function_words.empty()) {
        require_file(cfg.function_words, "function-word list");
        lists.function_words = text::load_word_list(cfg.function_words);
    }
    if (!cfg.generic_words.empty()) {
        require_file(cfg.generic_words, "generic-word list");
        lists.generic_recipe_words = text::load_word_list(cfg.generic_words);
    }
    return lists;
}

void log_ingest(const char* what, const corpus::IngestStats& s) {
    log()->info("{}: {} records from {} lines ({} rejected lines, {} dropped segments, {} dropped steps)", what,
                s.records, s.lines, s.rejected_lines, s.dropped_segments, s.dropped_steps);
}

std::vector<corpus::VideoRecord> read_all_videos(const PipelineConfig& cfg) {
    corpus::IngestStats stats;
    auto videos = corpus::read_videos(cfg.videos, ingest_mode(cfg), &stats);
    log_ingest("videos", stats);
    return videos;
}

std::vector<corpus::VideoRecord> read_source_videos(const PipelineConfig& cfg) {
    auto all = read_all_videos(cfg);
    auto kept = corpus::filter_source(all, {cfg.max_duration_s, cfg.min_per_category});
    log()->info("source filter kept {} of {} videos", kept.size(), all.size());
    return kept;
}

std::vector<corpus::Recipe> read_all_recipes(const PipelineConfig& cfg) {
    corpus::IngestStats stats;
    auto recipes = corpus::read_recipes(cfg.recipes, ingest_mode(cfg), &stats);
    log_ingest("recipes", stats);
    return recipes;
}

fs::path out_file(const PipelineConfig& cfg, const char* name) { return cfg.out_dir / name; }

void ensure_out_dir(const PipelineConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());
}

void write_jsonl(const fs::path& path, const std::vector<json>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& r : rows) out << r.dump() << '\n';
    out.flush();
    if (!out) throw IoError("write failure in " + path.string());
}

std::vector<json> read_jsonl(const fs::path& path) {
    corpus::detail::LineSource source(path);
    std::vector<json> rows;
    while (auto line = source.next()) {
        try {
            rows.push_back(json::parse(*line));
        } catch (const json::parse_error& e) {
            throw IngestError(source.path(), source.line_number(), std::string("malformed JSON: ") + e.what());
        }
    }
    return rows;
}

template <typename T>
T row_field(const json& row, const char* key, const fs::path& path) {
    try {
        return row.at(key).get<T>();
    } catch (const json::exception&) {
        throw FormatError(path.string() + ": row lacks a valid '" + key + "'");
    }
}

std::map<std::string, corpus::VideoRecord> by_id(std::vector<corpus::VideoRecord> videos) {
    std::map<std::string, corpus::VideoRecord> out;
    for (auto& v : videos) {
        auto id = v.video_id;
        out.emplace(std::move(id), std::move(v));
    }
    return out;
}

std::map<std::string, corpus::Recipe> by_id(std::vector<corpus::Recipe> recipes) {
    std::map<std::string, corpus::Recipe> out;
    for (auto& r : recipes) {
        auto id = r.recipe_id;
        out.emplace(std::move(id), std::move(r));
    }
    return out;
}

swap::MergeParams merge_params(const PipelineConfig& cfg) { return {cfg.merge_max_dur_s, cfg.merge_max_gap_s}; }

}  // namespace

// ─── Stages ─────────────────────────────────────────────────────────────────

std::vector<fs::path> run_sieve_titles(const PipelineConfig& cfg) {
    cfg.validate();
    require_file(cfg.videos, "videos");
    require_file(cfg.recipes, "recipes");
    const auto stoplist = load_stoplist(cfg);
    ensure_out_dir(cfg);

    const auto videos = read_source_videos(cfg);
    const auto recipes = read_all_recipes(cfg);
    const auto pairing = sieve::pair_by_title(videos, recipes, stoplist);
    log()->info("title sieve: {} pairs, {} videos, {} recipes", pairing.pairs.size(), pairing.videos.size(),
                pairing.recipes.size());

    std::vector<json> rows;
    rows.reserve(pairing.pairs.size());
    for (const auto& p : pairing.pairs) rows.push_back({{"video_id", p.video_id}, {"recipe_id", p.recipe_id}});
    const auto path = out_file(cfg, files::kTitlePairs);
    write_jsonl(path, rows);
    return {path};
}

std::vector<fs::path> run_sieve_content(const PipelineConfig& cfg) {
    cfg.validate();
    require_file(cfg.videos, "videos");
    require_file(cfg.recipes, "recipes");
    const auto title_pairs_path = out_file(cfg, files::kTitlePairs);
    require_file(title_pairs_path, "title pairs");
    const auto stoplist = load_stoplist(cfg);
    ensure_out_dir(cfg);

    const auto videos = read_source_videos(cfg);
    const auto recipes = read_all_recipes(cfg);
    std::vector<sieve::PairId> pairs;
    for (const auto& row : read_jsonl(title_pairs_path)) {
        pairs.push_back({row_field<std::string>(row, "video_id", title_pairs_path),
                         row_field<std::string>(row, "recipe_id", title_pairs_path)});
    }
    std::sort(pairs.begin(), pairs.end());

    const auto scored = sieve::score_pairs(pairs, videos, recipes, stoplist, cfg.recall_denominator, cfg.workers);
    const auto sieved = sieve::sieve_content(scored, {cfg.iou, cfg.recall});
    const auto split = sieve::split_train_val(sieved.kept, cfg.val_iou);
    log()->info("content sieve: kept {} of {} pairs, {} videos, {} recipes", sieved.kept.size(), scored.size(),
                sieved.videos.size(), sieved.recipes.size());

    std::vector<json> pair_rows;
    for (const auto& s : sieved.kept) {
        pair_rows.push_back({{"video_id", s.video_id},
                             {"recipe_id", s.recipe_id},
                             {"token_iou", s.token_iou},
                             {"token_recall", s.token_recall}});
    }
    std::vector<json> split_rows;
    for (const auto& [id, tag] : split) split_rows.push_back({{"video_id", id}, {"split", sieve::to_string(tag)}});

    // Texts the embedding sidecar needs before `swap` can run.
    std::vector<json> segment_rows;
    std::vector<const corpus::VideoRecord*> kept_videos;
    for (const auto& v : videos) {
        if (sieved.videos.contains(v.video_id)) kept_videos.push_back(&v);
    }
    std::sort(kept_videos.begin(), kept_videos.end(),
              [](const auto* a, const auto* b) { return a->video_id < b->video_id; });
    for (const auto* v : kept_videos) {
        const auto merged = swap::merge_segments(v->segments, merge_params(cfg));
        for (std::size_t k = 0; k < merged.size(); ++k) {
            segment_rows.push_back({{"id", swap::segment_key(v->video_id, k)}, {"text", merged[k].segment.text}});
        }
    }
    std::vector<json> step_rows;
    for (const auto& [id, recipe] : by_id(recipes)) {
        if (!sieved.recipes.contains(id)) continue;
        for (std::size_t k = 0; k < recipe.steps.size(); ++k) {
            step_rows.push_back({{"id", corpus::StepRef{id, k}.key()}, {"text", recipe.steps[k]}});
        }
    }

    std::vector<fs::path> written{out_file(cfg, files::kPairs), out_file(cfg, files::kSplit),
                                  out_file(cfg, files::kSegmentTexts), out_file(cfg, files::kStepTexts)};
    write_jsonl(written[0], pair_rows);
    write_jsonl(written[1], split_rows);
    write_jsonl(written[2], segment_rows);
    write_jsonl(written[3], step_rows);
    return written;
}

std::vector<fs::path> run_swap(const PipelineConfig& cfg) {
    cfg.validate();
    require_file(cfg.videos, "videos");
    require_file(cfg.recipes, "recipes");
    const auto pairs_path = out_file(cfg, files::kPairs);
    const auto split_path = out_file(cfg, files::kSplit);
    require_file(pairs_path, "pairs");
    require_file(split_path, "split");
    require_file(cfg.step_emb, "step embeddings");
    require_file(embed::ids_path_for(cfg.step_emb), "step embedding ids");
    require_file(cfg.seg_emb, "segment embeddings");
    require_file(embed::ids_path_for(cfg.seg_emb), "segment embedding ids");
    ensure_out_dir(cfg);

    std::map<std::string, sieve::SplitTag> split;
    for (const auto& row : read_jsonl(split_path)) {
        split.emplace(row_field<std::string>(row, "video_id", split_path),
                      sieve::parse_split(row_field<std::string>(row, "split", split_path)));
    }
    std::map<std::string, std::vector<std::string>> paired;
    std::set<std::string> pool_ids;
    for (const auto& row : read_jsonl(pairs_path)) {
        auto recipe_id = row_field<std::string>(row, "recipe_id", pairs_path);
        pool_ids.insert(recipe_id);
        paired[row_field<std::string>(row, "video_id", pairs_path)].push_back(std::move(recipe_id));
    }

    std::vector<corpus::VideoRecord> videos;
    for (auto& v : read_source_videos(cfg)) {
        if (split.contains(v.video_id)) videos.push_back(std::move(v));
    }
    if (videos.size() != split.size()) {
        throw Error("split.jsonl names " + std::to_string(split.size() - videos.size()) +
                    " videos absent from the source-filtered corpus");
    }
    std::vector<corpus::Recipe> pool;
    for (auto& r : read_all_recipes(cfg)) {
        if (pool_ids.contains(r.recipe_id)) pool.push_back(std::move(r));
    }

    const auto step_matrix = embed::load_embeddings(cfg.step_emb, embed::ids_path_for(cfg.step_emb));
    const auto segment_matrix = embed::load_embeddings(cfg.seg_emb, embed::ids_path_for(cfg.seg_emb));
    if (step_matrix.dim() != segment_matrix.dim() && !step_matrix.empty() && !segment_matrix.empty()) {
        throw FormatError("step embeddings have dim " + std::to_string(step_matrix.dim()) +
                          " but segment embeddings have dim " + std::to_string(segment_matrix.dim()));
    }
    const swap::StepIndex steps(step_matrix, pool);
    if (steps.missing_steps() > 0) log()->warn("{} pool steps have no embedding", steps.missing_steps());

    const swap::SwapParams params{cfg.sim, cfg.pool, merge_params(cfg)};
    std::vector<std::optional<swap::CuratedVideo>> results(videos.size());
    parallel_for(videos.size(), cfg.workers, [&](std::size_t i) {
        const auto& v = videos[i];
        try {
            const auto vectors = swap::segment_vectors_for(v, segment_matrix, params.merge);
            const auto& recipes_for_video = paired[v.video_id];
            results[i] = swap::swap_video(v, split.at(v.video_id), vectors, steps, params, recipes_for_video);
        } catch (const swap::AlignmentError& e) {
            log()->warn("swap: skipping video: {}", e.what());
        }
    });

    std::vector<swap::CuratedVideo> curated;
    std::size_t failed = 0;
    for (auto& r : results) {
        if (r) {
            curated.push_back(std::move(*r));
        } else {
            ++failed;
        }
    }
    const auto dataset_path = out_file(cfg, files::kDataset);
    const auto manifest_path = out_file(cfg, files::kManifest);
    const auto m = swap::emit_dataset(std::move(curated), dataset_path, manifest_path, failed, cfg.echo());
    log()->info("swap: {} videos, segments {} -> {} ({} merged), {} without segments, {} failed", m.videos,
                m.segments_before, m.segments_after, m.segments_merged, m.videos_without_segments, m.videos_failed);
    return {dataset_path, manifest_path};
}

std::vector<fs::path> run_stats(const PipelineConfig& cfg) {
    cfg.validate();
    const auto dataset_path = out_file(cfg, files::kDataset);
    require_file(dataset_path, "dataset");
    require_file(cfg.videos, "videos");
    const bool have_recipes = !cfg.recipes.empty();
    if (have_recipes) require_file(cfg.recipes, "recipes");
    const auto stoplist = load_stoplist(cfg);
    ensure_out_dir(cfg);

    const auto dataset = swap::read_dataset(dataset_path);
    auto raw = read_all_videos(cfg);
    const auto word_report = report::compute_word_deltas(raw, dataset, stoplist);
    const auto source = by_id(std::move(raw));
    std::map<std::string, corpus::Recipe> recipes;
    if (have_recipes) recipes = by_id(read_all_recipes(cfg));
    const auto stats = report::compute_stats(dataset, source, have_recipes ? &recipes : nullptr);

    std::vector<fs::path> written{out_file(cfg, files::kReport), out_file(cfg, files::kWordDeltas),
                                  out_file(cfg, files::kSentenceCounts)};
    report::write_report_json(stats, written[0]);
    report::write_word_deltas_csv(word_report, written[1]);
    report::write_sentence_counts_csv(word_report, written[2]);
    return written;
}

std::vector<fs::path> run_pipeline(const PipelineConfig& cfg) {
    std::vector<fs::path> written;
    for (auto* stage : {&run_sieve_titles, &run_sieve_content, &run_swap, &run_stats}) {
        auto files = stage(cfg);
        written.insert(written.end(), files.begin(), files.end());
    }
    return written;
}

std::vector<std::string> run_validate(const PipelineConfig& cfg) {
    cfg.validate();
    const auto dataset_path = out_file(cfg, files::kDataset);
    require_file(dataset_path, "dataset");
    if (!cfg.videos.empty()) require_file(cfg.videos, "videos");
    if (!cfg.recipes.empty()) require_file(cfg.recipes, "recipes");

    const auto dataset = swap::read_dataset(dataset_path);
    std::map<std::string, corpus::VideoRecord> videos;
    std::map<std::string, corpus::Recipe> recipes;
    swap::ValidationInputs inputs;
    inputs.min_similarity = cfg.sim;
    if (!cfg.videos.empty()) {
        videos = by_id(read_all_videos(cfg));
        inputs.videos = &videos;
    }
    if (!cfg.recipes.empty()) {
        recipes = by_id(read_all_recipes(cfg));
        inputs.recipes = &recipes;
    }
    return swap::validate_dataset(dataset, inputs);
}

// ─── Command line ───────────────────────────────────────────────────────────

namespace {

struct Flags {
    std::string config, videos, recipes, step_emb, seg_emb, out_dir, function_words, generic_words;
    std::string pool, recall_denominator;
    double iou = 0, recall = 0, val_iou = 0, sim = 0, merge_max_dur = 0, merge_max_gap = 0, max_duration = 0;
    std::size_t min_per_category = 0, workers = 0;
};

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"procurate: sieve and swap curation of instructional video transcripts"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Flags f;
    std::map<std::string, CLI::Option*> opt;
    opt["config"] = app.add_option("--config", f.config, "JSON config file; flags override its fields");
    opt["videos"] = app.add_option("--videos", f.videos, "videos.jsonl");
    opt["recipes"] = app.add_option("--recipes", f.recipes, "recipes.jsonl");
    opt["step_emb"] = app.add_option("--step-emb", f.step_emb, "step embeddings (.sseb, ids beside it)");
    opt["seg_emb"] = app.add_option("--seg-emb", f.seg_emb, "merged-segment embeddings (.sseb, ids beside it)");
    opt["out_dir"] = app.add_option("--out-dir", f.out_dir, "directory for stage outputs");
    opt["function_words"] = app.add_option("--function-words", f.function_words, "function-word list");
    opt["generic_words"] = app.add_option("--generic-words", f.generic_words, "generic recipe-word list");
    opt["iou"] = app.add_option("--iou", f.iou, "minimum token IoU (default 0.1)");
    opt["recall"] = app.add_option("--recall", f.recall, "minimum token recall (default 0.3)");
    opt["val_iou"] = app.add_option("--val-iou", f.val_iou, "token IoU for validation videos (default 0.2)");
    opt["sim"] = app.add_option("--sim", f.sim, "minimum retrieval similarity (default 0.75)");
    opt["merge_max_dur_s"] = app.add_option("--merge-max-dur", f.merge_max_dur, "merge duration limit, s (default 8)");
    opt["merge_max_gap_s"] = app.add_option("--merge-max-gap", f.merge_max_gap, "merge gap limit, s (default 4)");
    opt["max_duration_s"] = app.add_option("--max-duration", f.max_duration, "longest video kept, s (default 600)");
    opt["min_per_category"] = app.add_option("--min-per-category", f.min_per_category, "default 5");
    opt["pool"] = app.add_option("--pool", f.pool, "retrieval pool")->check(CLI::IsMember({"global", "paired"}));
    opt["recall_denominator"] = app.add_option("--recall-denominator", f.recall_denominator)
                                    ->check(CLI::IsMember({"recipe", "transcript"}));
    opt["workers"] = app.add_option("--workers", f.workers, "worker threads (default 1)");
    auto* strict = app.add_flag("--strict", "abort on the first malformed input line (default)");
    auto* lenient = app.add_flag("--lenient", "skip and count malformed input lines")->excludes(strict);

    const std::vector<std::pair<const char*, const char*>> subcommands{
        {"sieve-titles", "pair videos and recipes by title content words"},
        {"sieve-content", "score title pairs by transcript/step overlap and split train/validation"},
        {"swap", "replace merged transcript segments with retrieved recipe steps"},
        {"stats", "dataset statistics and content-word deltas"},
        {"pipeline", "sieve-titles, sieve-content, swap and stats in order"},
        {"validate", "check dataset.jsonl against the curated-dataset invariants"},
    };
    for (const auto& [name, help] : subcommands) app.add_subcommand(name, help);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    const std::string name = app.get_subcommands().front()->get_name();

    try {
        PipelineConfig cfg;
        if (opt["config"]->count()) {
            require_file(f.config, "config");
            cfg = PipelineConfig::load(f.config);
        }
        if (opt["videos"]->count()) cfg.videos = f.videos;
        if (opt["recipes"]->count()) cfg.recipes = f.recipes;
        if (opt["step_emb"]->count()) cfg.step_emb = f.step_emb;
        if (opt["seg_emb"]->count()) cfg.seg_emb = f.seg_emb;
        if (opt["out_dir"]->count()) cfg.out_dir = f.out_dir;
        if (opt["function_words"]->count()) cfg.function_words = f.function_words;
        if (opt["generic_words"]->count()) cfg.generic_words = f.generic_words;
        if (opt["iou"]->count()) cfg.iou = f.iou;
        if (opt["recall"]->count()) cfg.recall = f.recall;
        if (opt["val_iou"]->count()) cfg.val_iou = f.val_iou;
        if (opt["sim"]->count()) cfg.sim = f.sim;
        if (opt["merge_max_dur_s"]->count()) cfg.merge_max_dur_s = f.merge_max_dur;
        if (opt["merge_max_gap_s"]->count()) cfg.merge_max_gap_s = f.merge_max_gap;
        if (opt["max_duration_s"]->count()) cfg.max_duration_s = f.max_duration;
        if (opt["min_per_category"]->count()) cfg.min_per_category = f.min_per_category;
        if (opt["pool"]->count()) cfg.pool = swap::parse_pool(f.pool);
        if (opt["recall_denominator"]->count()) {
            cfg.recall_denominator = sieve::parse_recall_denominator(f.recall_denominator);
        }
        if (opt["workers"]->count()) cfg.workers = f.workers;
        if (strict->count()) cfg.strict = true;
        if (lenient->count()) cfg.strict = false;
        cfg.validate();

        std::vector<fs::path> written;
        if (name == "sieve-titles") {
            written = run_sieve_titles(cfg);
        } else if (name == "sieve-content") {
            written = run_sieve_content(cfg);
        } else if (name == "swap") {
            written = run_swap(cfg);
        } else if (name == "stats") {
            written = run_stats(cfg);
        } else if (name == "pipeline") {
            written = run_pipeline(cfg);
        } else {
            const auto problems = run_validate(cfg);
            for (const auto& p : problems) log()->error("validate: {}", p);
            if (!problems.empty()) {
                log()->error("validate: {} invariant violations", problems.size());
                return kExitConfig;
            }
            log()->info("validate: dataset satisfies all invariants");
        }
        for (const auto& p : written) log()->debug("{}: wrote {}", name, p.string());
        return kExitOk;
    } catch (const ConfigError& e) {
        log()->error("{}: {}", name, e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        log()->error("{}: {}", name, e.what());
        return kExitRuntime;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace procurate::cli
