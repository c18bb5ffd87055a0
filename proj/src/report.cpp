// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "procurate/error.hpp"

namespace procurate::report {

using nlohmann::json;

void Histogram::add(double value) {
    const auto bin = static_cast<std::size_t>(std::floor(std::max(0.0, value) / bin_width));
    if (counts.size() <= bin) counts.resize(bin + 1, 0);
    ++counts[bin];
    ++total;
    sum_ += value;
}

void Histogram::finish() { mean = total == 0 ? 0.0 : sum_ / static_cast<double>(total); }

json Histogram::to_json() const {
    return json{{"bin_width", bin_width}, {"counts", counts}, {"total", total}, {"mean", mean}};
}

json DatasetReport::to_json() const {
    json top = json::array();
    for (const auto& t : top_recipe_titles) top.push_back({{"title", t.title}, {"count", t.count}});
    return json{
        {"video_count", video_count},
        {"train_videos", train_videos},
        {"validation_videos", validation_videos},
        {"segment_count_before", segment_count_before},
        {"segment_count_after", segment_count_after},
        {"reduction_ratio", reduction_ratio},
        {"steps_per_video", steps_per_video.to_json()},
        {"segment_duration_s", segment_duration_s.to_json()},
        {"video_duration_s", video_duration_s.to_json()},
        {"words_per_step", words_per_step.to_json()},
        {"unique_recipes_used", unique_recipes_used},
        {"top_recipe_titles", std::move(top)},
        {"reference",
         {{"segments_before", CorpusReference::kSegmentsBefore},
          {"segments_after", CorpusReference::kSegmentsAfter},
          {"train_videos", CorpusReference::kTrainVideos},
          {"validation_videos", CorpusReference::kValidationVideos},
          {"unique_recipes", CorpusReference::kUniqueRecipes},
          {"mean_steps_per_video", CorpusReference::kMeanStepsPerVideo},
          {"mean_segment_duration_s", CorpusReference::kMeanSegmentDurationS},
          {"mean_video_duration_s", CorpusReference::kMeanVideoDurationS}}},
    };
}

namespace {

std::size_t word_count(const std::string& s) {
    std::istringstream in(s);
    std::size_t n = 0;
    for (std::string w; in >> w;) ++n;
    return n;
}

}  // namespace

DatasetReport compute_stats(std::span<const swap::CuratedVideo> dataset,
                            const std::map<std::string, corpus::VideoRecord>& source,
                            const std::map<std::string, corpus::Recipe>* recipes, std::size_t top_k) {
    std::vector<std::string> missing;
    for (const auto& v : dataset) {
        if (!source.contains(v.video_id)) missing.push_back(v.video_id);
    }
    if (!missing.empty()) {
        std::string msg = "dataset videos missing from the source corpus:";
        for (const auto& id : missing) msg += " " + id;
        throw Error(msg);
    }

    DatasetReport r;
    std::set<std::string> recipes_used;
    std::map<std::string, std::size_t> per_title;
    for (const auto& v : dataset) {
        const auto& src = source.at(v.video_id);
        ++r.video_count;
        if (v.split == sieve::SplitTag::kValidation) {
            ++r.validation_videos;
        } else {
            ++r.train_videos;
        }
        r.segment_count_before += src.segments.size();
        r.segment_count_after += v.segments.size();
        r.steps_per_video.add(static_cast<double>(v.segments.size()));
        r.video_duration_s.add(src.duration_s);
        for (const auto& s : v.segments) {
            r.segment_duration_s.add(s.end_s - s.start_s);
            r.words_per_step.add(static_cast<double>(word_count(s.text)));
            recipes_used.insert(s.step.recipe_id);
            std::string title = s.step.recipe_id;
            if (recipes) {
                if (auto it = recipes->find(s.step.recipe_id); it != recipes->end()) title = it->second.title;
            }
            ++per_title[title];
        }
    }
    r.reduction_ratio = r.segment_count_before == 0 ? 0.0
                                                    : static_cast<double>(r.segment_count_after) /
                                                          static_cast<double>(r.segment_count_before);
    r.steps_per_video.finish();
    r.segment_duration_s.finish();
    r.video_duration_s.finish();
    r.words_per_step.finish();
    r.unique_recipes_used = recipes_used.size();

    for (auto& [title, count] : per_title) r.top_recipe_titles.push_back({title, count});
    std::stable_sort(r.top_recipe_titles.begin(), r.top_recipe_titles.end(),
                     [](const TitleCount& a, const TitleCount& b) { return a.count > b.count; });
    if (r.top_recipe_titles.size() > top_k) r.top_recipe_titles.resize(top_k);
    return r;
}

WordDeltaReport compute_word_deltas(std::span<const corpus::VideoRecord> raw,
                                    std::span<const swap::CuratedVideo> curated, const text::Stoplist& stoplist,
                                    bool restrict_to_curated, const text::WordSet& units) {
    std::set<std::string_view> curated_ids;
    for (const auto& v : curated) curated_ids.insert(v.video_id);

    WordDeltaReport out;
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
    auto count_sentence = [&](const std::string& sentence, TextCorpus corpus) {
        SentenceCounts sc{corpus};
        for (auto& lemma : text::content_lemmas(sentence, stoplist)) {
            ++sc.content_words;
            if (text::is_numeral(lemma)) ++sc.numerals;
            if (units.contains(lemma)) ++sc.units;
            auto& c = counts[std::move(lemma)];
            ++(corpus == TextCorpus::kRaw ? c.first : c.second);
        }
        out.sentences.push_back(sc);
    };

    for (const auto& v : raw) {
        if (restrict_to_curated && !curated_ids.contains(v.video_id)) continue;
        for (const auto& s : v.segments) count_sentence(s.text, TextCorpus::kRaw);
    }
    for (const auto& v : curated) {
        for (const auto& s : v.segments) count_sentence(s.text, TextCorpus::kCurated);
    }

    for (const auto& [lemma, c] : counts) {
        out.deltas.push_back({lemma, c.first, c.second,
                              static_cast<long long>(c.second) - static_cast<long long>(c.first)});
    }
    std::stable_sort(out.deltas.begin(), out.deltas.end(), [](const LemmaDelta& a, const LemmaDelta& b) {
        return std::llabs(a.delta) > std::llabs(b.delta);
    });
    return out;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failure in " + path.string());
}

}  // namespace

void write_report_json(const DatasetReport& report, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << report.to_json().dump(2) << '\n';
    finish(out, path);
}

void write_word_deltas_csv(const WordDeltaReport& report, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "lemma,count_raw,count_curated,delta\n";
    for (const auto& d : report.deltas) {
        out << d.lemma << ',' << d.count_raw << ',' << d.count_curated << ',' << d.delta << '\n';
    }
    finish(out, path);
}

void write_sentence_counts_csv(const WordDeltaReport& report, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "corpus,content_words,numerals,units\n";
    for (const auto& s : report.sentences) {
        out << (s.corpus == TextCorpus::kRaw ? "raw" : "curated") << ',' << s.content_words << ',' << s.numerals
            << ',' << s.units << '\n';
    }
    finish(out, path);
}

}  // namespace procurate::report
