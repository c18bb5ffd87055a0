// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "procurate/corpus.hpp"
#include "procurate/swap.hpp"
#include "procurate/textnorm.hpp"

namespace procurate::report {

// Corpus-scale figures of the original curation run. They depend on the full
// web-scale corpus and are echoed in report.json for comparison only.
struct CorpusReference {
    static constexpr std::size_t kSegmentsBefore = 2'750'000;
    static constexpr std::size_t kSegmentsAfter = 510'000;
    static constexpr std::size_t kTrainVideos = 48'000;
    static constexpr std::size_t kValidationVideos = 3'000;
    static constexpr std::size_t kUniqueRecipes = 4'109;
    static constexpr double kMeanStepsPerVideo = 10.6;
    static constexpr double kMeanSegmentDurationS = 11.83;
    static constexpr double kMeanVideoDurationS = 310.5;
};

// Fixed-width bins starting at 0; value v lands in bin floor(v / bin_width).
struct Histogram {
    explicit Histogram(double width = 1.0) : bin_width(width) {}

    double bin_width;
    std::vector<std::size_t> counts;
    std::size_t total = 0;
    double mean = 0.0;

    void add(double value);
    void finish();  // computes mean from the accumulated sum
    nlohmann::json to_json() const;

private:
    double sum_ = 0.0;
};

inline constexpr double kStepsBinWidth = 1.0;
inline constexpr double kSegmentDurationBinWidthS = 1.0;
inline constexpr double kVideoDurationBinWidthS = 10.0;
inline constexpr double kWordsBinWidth = 1.0;
inline constexpr std::size_t kTopRecipeTitles = 50;

struct TitleCount {
    std::string title;
    std::size_t count = 0;  // curated segments drawing on recipes with this title
};

struct DatasetReport {
    std::size_t video_count = 0;
    std::size_t train_videos = 0;
    std::size_t validation_videos = 0;
    std::size_t segment_count_before = 0;
    std::size_t segment_count_after = 0;
    double reduction_ratio = 0.0;
    Histogram steps_per_video = Histogram(kStepsBinWidth);
    Histogram segment_duration_s = Histogram(kSegmentDurationBinWidthS);
    Histogram video_duration_s = Histogram(kVideoDurationBinWidthS);
    Histogram words_per_step = Histogram(kWordsBinWidth);
    std::size_t unique_recipes_used = 0;
    std::vector<TitleCount> top_recipe_titles;

    nlohmann::json to_json() const;
};

// `recipes` supplies titles for the top-recipe table; without it recipe ids
// stand in for titles. Throws Error naming every dataset video missing from
// `source`.
DatasetReport compute_stats(std::span<const swap::CuratedVideo> dataset,
                            const std::map<std::string, corpus::VideoRecord>& source,
                            const std::map<std::string, corpus::Recipe>* recipes = nullptr,
                            std::size_t top_k = kTopRecipeTitles);

struct LemmaDelta {
    std::string lemma;
    std::size_t count_raw = 0;
    std::size_t count_curated = 0;
    long long delta = 0;  // curated - raw
};

enum class TextCorpus { kRaw, kCurated };

// Content-word counts for one sentence (an ASR segment or a swapped step).
struct SentenceCounts {
    TextCorpus corpus;
    std::size_t content_words = 0;
    std::size_t numerals = 0;
    std::size_t units = 0;
};

struct WordDeltaReport {
    std::vector<LemmaDelta> deltas;  // |delta| descending, then lemma ascending
    std::vector<SentenceCounts> sentences;
};

// Raw side: ASR segments of the source videos that appear in `curated`
// (or every source video when restrict_to_curated is false).
WordDeltaReport compute_word_deltas(std::span<const corpus::VideoRecord> raw,
                                    std::span<const swap::CuratedVideo> curated, const text::Stoplist& stoplist,
                                    bool restrict_to_curated = true,
                                    const text::WordSet& units = text::default_units());

void write_report_json(const DatasetReport& report, const std::filesystem::path& path);
void write_word_deltas_csv(const WordDeltaReport& report, const std::filesystem::path& path);
void write_sentence_counts_csv(const WordDeltaReport& report, const std::filesystem::path& path);

}  // namespace procurate::report
