// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/swap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace procurate::swap {

using nlohmann::json;

// ─── Segment merging ────────────────────────────────────────────────────────

std::vector<MergedSegment> merge_segments(std::span<const corpus::AsrSegment> segments, const MergeParams& params,
                                          std::vector<MergeStep>* trace) {
    std::vector<MergedSegment> out;
    if (segments.empty()) return out;

    MergedSegment current{segments[0], {0}};
    for (std::size_t i = 1; i < segments.size(); ++i) {
        const auto& next = segments[i];
        const double cur_dur = current.segment.duration();
        const double next_dur = next.duration();
        const double gap = std::max(0.0, next.start_s - current.segment.end_s);
        if (cur_dur < params.max_dur_s && next_dur < params.max_dur_s && gap < params.max_gap_s) {
            if (trace) trace->push_back({cur_dur, next_dur, gap});
            current.segment.text += ' ';
            current.segment.text += next.text;
            current.segment.end_s = std::max(current.segment.end_s, next.end_s);
            current.source_indices.push_back(i);
            continue;
        }
        out.push_back(std::move(current));
        current = MergedSegment{next, {i}};
    }
    out.push_back(std::move(current));
    return out;
}

std::vector<corpus::AsrSegment> merged_text_segments(std::span<const MergedSegment> merged) {
    std::vector<corpus::AsrSegment> out;
    out.reserve(merged.size());
    for (const auto& m : merged) out.push_back(m.segment);
    return out;
}

std::string segment_key(std::string_view video_id, std::size_t merged_index) {
    return std::string(video_id) + "#" + std::to_string(merged_index);
}

// ─── Retrieval and swap ─────────────────────────────────────────────────────

std::string_view to_string(RetrievalPool pool) noexcept {
    return pool == RetrievalPool::kPaired ? "paired" : "global";
}

RetrievalPool parse_pool(std::string_view name) {
    if (name == "global") return RetrievalPool::kGlobal;
    if (name == "paired") return RetrievalPool::kPaired;
    throw ConfigError("pool must be 'global' or 'paired', got '" + std::string(name) + "'");
}

StepIndex::StepIndex(const embed::EmbeddingMatrix& all_steps, std::span<const corpus::Recipe> pool) {
    for (const auto& r : pool) steps_.emplace(r.recipe_id, r.steps);

    std::vector<std::size_t> keep;
    std::set<corpus::StepRef> covered;
    for (std::size_t row = 0; row < all_steps.size(); ++row) {
        const auto ref = corpus::StepRef::parse(all_steps.id(row));
        if (!ref) throw FormatError("step embedding id '" + all_steps.id(row) + "' is not <recipe_id>#<step_index>");
        auto it = steps_.find(ref->recipe_id);
        if (it == steps_.end()) continue;
        if (ref->step_index >= it->second.size()) {
            throw FormatError("step embedding id '" + all_steps.id(row) + "' points past the recipe's last step");
        }
        keep.push_back(row);
        covered.insert(*ref);
    }
    matrix_ = all_steps.subset(keep);
    for (std::size_t row = 0; row < matrix_.size(); ++row) {
        rows_by_recipe_[corpus::StepRef::parse(matrix_.id(row))->recipe_id].push_back(row);
    }
    for (const auto& r : pool) missing_steps_ += r.steps.size();
    missing_steps_ -= covered.size();
}

const std::string& StepIndex::step_text(const corpus::StepRef& ref) const {
    auto it = steps_.find(ref.recipe_id);
    if (it == steps_.end() || ref.step_index >= it->second.size()) {
        throw Error("step " + ref.key() + " is not in the retrieval pool");
    }
    return it->second[ref.step_index];
}

std::span<const std::size_t> StepIndex::rows_for_recipe(const std::string& recipe_id) const {
    auto it = rows_by_recipe_.find(recipe_id);
    if (it == rows_by_recipe_.end()) return {};
    return it->second;
}

std::vector<SwapSegment> collapse_repeats(std::vector<SwapSegment> segments) {
    std::vector<SwapSegment> out;
    for (auto& seg : segments) {
        if (!out.empty() && out.back().step == seg.step) {
            auto& run = out.back();
            run.start_s = std::min(run.start_s, seg.start_s);
            run.end_s = std::max(run.end_s, seg.end_s);
            run.similarity = std::max(run.similarity, seg.similarity);
            run.source_segment_indices.insert(run.source_segment_indices.end(), seg.source_segment_indices.begin(),
                                              seg.source_segment_indices.end());
            continue;
        }
        out.push_back(std::move(seg));
    }
    return out;
}

CuratedVideo swap_video(const corpus::VideoRecord& video, sieve::SplitTag split,
                        std::span<const std::span<const float>> segment_vectors, const StepIndex& steps,
                        const SwapParams& params, std::span<const std::string> paired_recipes) {
    const auto merged = merge_segments(video.segments, params.merge);
    if (segment_vectors.size() != merged.size()) {
        throw AlignmentError("video '" + video.video_id + "' has " + std::to_string(merged.size()) +
                             " merged segments but " + std::to_string(segment_vectors.size()) + " embeddings");
    }

    std::vector<std::size_t> candidates;
    if (params.pool == RetrievalPool::kPaired) {
        for (const auto& id : paired_recipes) {
            auto rows = steps.rows_for_recipe(id);
            candidates.insert(candidates.end(), rows.begin(), rows.end());
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    }

    std::vector<SwapSegment> kept;
    for (std::size_t k = 0; k < merged.size(); ++k) {
        const auto hits = params.pool == RetrievalPool::kPaired
                              ? embed::query(steps.matrix(), segment_vectors[k], 1, candidates)
                              : embed::query(steps.matrix(), segment_vectors[k], 1);
        if (hits.empty() || hits.front().similarity < params.min_similarity) continue;
        auto ref = *corpus::StepRef::parse(hits.front().id);
        std::string text = steps.step_text(ref);
        kept.push_back(SwapSegment{std::move(ref), std::move(text), merged[k].segment.start_s,
                                   merged[k].segment.end_s, hits.front().similarity, merged[k].source_indices});
    }

    CuratedVideo out;
    out.video_id = video.video_id;
    out.title = video.title;
    out.split = split;
    out.segments = collapse_repeats(std::move(kept));
    out.raw_segment_count = video.segments.size();
    out.merged_segment_count = merged.size();
    return out;
}

std::vector<std::span<const float>> segment_vectors_for(const corpus::VideoRecord& video,
                                                        const embed::EmbeddingMatrix& segment_matrix,
                                                        const MergeParams& merge) {
    const std::size_t n = merge_segments(video.segments, merge).size();
    std::vector<std::span<const float>> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto key = segment_key(video.video_id, k);
        const auto row = segment_matrix.find(key);
        if (!row) throw AlignmentError("no segment embedding for '" + key + "'");
        out.push_back(segment_matrix.row(*row));
    }
    if (segment_matrix.find(segment_key(video.video_id, n))) {
        throw AlignmentError("video '" + video.video_id + "' has more segment embeddings than merged segments (" +
                             std::to_string(n) + ")");
    }
    return out;
}

// ─── Dataset output ─────────────────────────────────────────────────────────

double round_similarity(double s) noexcept {
    constexpr double scale = 1e6;
    static_assert(kSimilarityDecimals == 6);
    return std::round(s * scale) / scale;
}

std::string to_jsonl(const CuratedVideo& video) {
    json segs = json::array();
    for (const auto& s : video.segments) {
        segs.push_back({{"recipe_id", s.step.recipe_id},
                        {"step_index", s.step.step_index},
                        {"text", s.text},
                        {"start_s", s.start_s},
                        {"end_s", s.end_s},
                        {"similarity", round_similarity(s.similarity)}});
    }
    json obj{{"video_id", video.video_id},
             {"title", video.title},
             {"split", sieve::to_string(video.split)},
             {"segments", std::move(segs)}};
    return obj.dump();
}

CuratedVideo curated_from_json(std::string_view line) {
    CuratedVideo v;
    try {
        const json obj = json::parse(line);
        v.video_id = obj.at("video_id").get<std::string>();
        v.title = obj.at("title").get<std::string>();
        v.split = sieve::parse_split(obj.at("split").get<std::string>());
        for (const auto& s : obj.at("segments")) {
            SwapSegment seg;
            seg.step.recipe_id = s.at("recipe_id").get<std::string>();
            seg.step.step_index = s.at("step_index").get<std::size_t>();
            seg.text = s.at("text").get<std::string>();
            seg.start_s = s.at("start_s").get<double>();
            seg.end_s = s.at("end_s").get<double>();
            seg.similarity = s.at("similarity").get<double>();
            v.segments.push_back(std::move(seg));
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed dataset line: ") + e.what());
    }
    return v;
}

std::vector<CuratedVideo> read_dataset(const std::filesystem::path& path) {
    corpus::detail::LineSource source(path);
    std::vector<CuratedVideo> out;
    while (auto line = source.next()) {
        try {
            out.push_back(curated_from_json(*line));
        } catch (const Error& e) {
            throw IngestError(source.path(), source.line_number(), e.what());
        }
    }
    return out;
}

json Manifest::to_json() const {
    return json{{"videos", videos},
                {"segments_before", segments_before},
                {"segments_merged", segments_merged},
                {"segments_after", segments_after},
                {"videos_without_segments", videos_without_segments},
                {"videos_failed", videos_failed},
                {"train_videos", train_videos},
                {"validation_videos", validation_videos},
                {"config", config}};
}

Manifest emit_dataset(std::vector<CuratedVideo> curated, const std::filesystem::path& dataset_path,
                      const std::filesystem::path& manifest_path, std::size_t videos_failed, json config_echo) {
    std::sort(curated.begin(), curated.end(),
              [](const CuratedVideo& a, const CuratedVideo& b) { return a.video_id < b.video_id; });
    for (std::size_t i = 1; i < curated.size(); ++i) {
        if (curated[i].video_id == curated[i - 1].video_id) {
            throw Error("video '" + curated[i].video_id + "' emitted twice");
        }
    }

    Manifest m;
    m.videos_failed = videos_failed;
    m.config = std::move(config_echo);

    std::ofstream out(dataset_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + dataset_path.string());
    for (const auto& v : curated) {
        out << to_jsonl(v) << '\n';
        ++m.videos;
        m.segments_before += v.raw_segment_count;
        m.segments_merged += v.merged_segment_count;
        m.segments_after += v.segments.size();
        if (v.segments.empty()) ++m.videos_without_segments;
        if (v.split == sieve::SplitTag::kValidation) {
            ++m.validation_videos;
        } else {
            ++m.train_videos;
        }
    }
    out.flush();
    if (!out) throw IoError("write failure in " + dataset_path.string());

    std::ofstream mout(manifest_path, std::ios::binary | std::ios::trunc);
    if (!mout) throw IoError("cannot write " + manifest_path.string());
    mout << m.to_json().dump(2) << '\n';
    mout.flush();
    if (!mout) throw IoError("write failure in " + manifest_path.string());
    return m;
}

// ─── Validation ─────────────────────────────────────────────────────────────

std::vector<std::string> validate_dataset(std::span<const CuratedVideo> dataset, const ValidationInputs& inputs) {
    std::vector<std::string> problems;
    auto report = [&](const std::string& video_id, const std::string& what) {
        problems.push_back("video '" + video_id + "': " + what);
    };

    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto& v = dataset[i];
        if (i > 0 && !(dataset[i - 1].video_id < v.video_id)) {
            report(v.video_id, "videos not sorted by video_id or id repeated");
        }
        const corpus::VideoRecord* source = nullptr;
        if (inputs.videos) {
            auto it = inputs.videos->find(v.video_id);
            if (it == inputs.videos->end()) {
                report(v.video_id, "not present in the source corpus");
            } else {
                source = &it->second;
                if (v.segments.size() > source->segments.size()) {
                    report(v.video_id, std::to_string(v.segments.size()) + " segments exceed the " +
                                           std::to_string(source->segments.size()) + " source segments");
                }
            }
        }

        for (std::size_t k = 0; k < v.segments.size(); ++k) {
            const auto& s = v.segments[k];
            const std::string where = "segment " + std::to_string(k) + ": ";
            if (!(s.similarity >= inputs.min_similarity)) {
                report(v.video_id, where + "similarity " + std::to_string(s.similarity) + " below threshold");
            }
            if (!(s.start_s < s.end_s)) report(v.video_id, where + "start_s >= end_s");
            if (k > 0) {
                const auto& prev = v.segments[k - 1];
                if (s.start_s < prev.start_s) report(v.video_id, where + "not sorted by start_s");
                if (s.step == prev.step) report(v.video_id, where + "repeats the previous segment's step");
            }
            if (inputs.recipes) {
                auto it = inputs.recipes->find(s.step.recipe_id);
                if (it == inputs.recipes->end() || s.step.step_index >= it->second.steps.size()) {
                    report(v.video_id, where + "unknown step " + s.step.key());
                } else if (it->second.steps[s.step.step_index] != s.text) {
                    report(v.video_id, where + "text differs from step " + s.step.key());
                }
            }
            if (source) {
                const auto& raw = source->segments;
                const bool start_ok = std::any_of(raw.begin(), raw.end(), [&](const auto& r) { return r.start_s == s.start_s; });
                const bool end_ok = std::any_of(raw.begin(), raw.end(), [&](const auto& r) { return r.end_s == s.end_s; });
                if (!start_ok || !end_ok) report(v.video_id, where + "timestamps do not come from source segments");
            }
        }
    }
    return problems;
}

}  // namespace procurate::swap
