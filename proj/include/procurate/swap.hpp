// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "procurate/corpus.hpp"
#include "procurate/embedindex.hpp"
#include "procurate/error.hpp"
#include "procurate/sieve.hpp"

namespace procurate::swap {

// ─── Segment merging ────────────────────────────────────────────────────────

struct MergeParams {
    double max_dur_s = 8.0;
    double max_gap_s = 4.0;
};

struct MergedSegment {
    corpus::AsrSegment segment;
    std::vector<std::size_t> source_indices;  // into the input segment list
};

// One accepted join, recorded for auditing.
struct MergeStep {
    double current_duration;
    double next_duration;
    double gap;  // floored at 0
};

// Greedy left-to-right pass: the running segment absorbs the next one while
// both are shorter than max_dur_s and the gap between them is below
// max_gap_s. Texts are joined with one space.
std::vector<MergedSegment> merge_segments(std::span<const corpus::AsrSegment> segments, const MergeParams& params,
                                          std::vector<MergeStep>* trace = nullptr);

std::vector<corpus::AsrSegment> merged_text_segments(std::span<const MergedSegment> merged);

// Row id of a merged segment in segment-embedding files: "<video_id>#<k>".
std::string segment_key(std::string_view video_id, std::size_t merged_index);

// ─── Retrieval and swap ─────────────────────────────────────────────────────

enum class RetrievalPool { kGlobal, kPaired };

std::string_view to_string(RetrievalPool pool) noexcept;
RetrievalPool parse_pool(std::string_view name);

// Step embeddings restricted to a recipe pool, with the step texts needed to
// build swapped segments. Rows for recipes outside the pool are dropped.
class StepIndex {
public:
    StepIndex(const embed::EmbeddingMatrix& all_steps, std::span<const corpus::Recipe> pool);

    const embed::EmbeddingMatrix& matrix() const noexcept { return matrix_; }
    const std::string& step_text(const corpus::StepRef& ref) const;
    // Rows of matrix() belonging to the recipe (empty if none).
    std::span<const std::size_t> rows_for_recipe(const std::string& recipe_id) const;
    // Pool steps that had no embedding row.
    std::size_t missing_steps() const noexcept { return missing_steps_; }

private:
    embed::EmbeddingMatrix matrix_;
    std::unordered_map<std::string, std::vector<std::string>> steps_;
    std::unordered_map<std::string, std::vector<std::size_t>> rows_by_recipe_;
    std::size_t missing_steps_ = 0;
};

struct SwapSegment {
    corpus::StepRef step;
    std::string text;
    double start_s = 0.0;
    double end_s = 0.0;
    double similarity = 0.0;
    std::vector<std::size_t> source_segment_indices;

    friend bool operator==(const SwapSegment&, const SwapSegment&) = default;
};

struct CuratedVideo {
    std::string video_id;
    std::string title;
    sieve::SplitTag split = sieve::SplitTag::kTrain;
    std::vector<SwapSegment> segments;
    std::size_t raw_segment_count = 0;     // M
    std::size_t merged_segment_count = 0;  // segments that went to retrieval

    friend bool operator==(const CuratedVideo&, const CuratedVideo&) = default;
};

struct SwapParams {
    double min_similarity = 0.75;
    RetrievalPool pool = RetrievalPool::kGlobal;
    MergeParams merge;
};

// Thrown when a video's segment embeddings do not line up with its merged
// segments; the caller skips the video and counts it.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// Collapses runs of neighbouring segments that retrieved the same step into
// one segment spanning the run, keeping the run's best similarity.
std::vector<SwapSegment> collapse_repeats(std::vector<SwapSegment> segments);

// segment_vectors[k] embeds merged segment k of merge_segments(video.segments).
// `paired_recipes` is consulted only for RetrievalPool::kPaired.
CuratedVideo swap_video(const corpus::VideoRecord& video, sieve::SplitTag split,
                        std::span<const std::span<const float>> segment_vectors, const StepIndex& steps,
                        const SwapParams& params, std::span<const std::string> paired_recipes = {});

// Looks up each merged segment's row ("<video_id>#<k>") in segment_matrix.
// Throws AlignmentError if a row is missing.
std::vector<std::span<const float>> segment_vectors_for(const corpus::VideoRecord& video,
                                                        const embed::EmbeddingMatrix& segment_matrix,
                                                        const MergeParams& merge);

// ─── Dataset output ─────────────────────────────────────────────────────────

// Similarities are written rounded to this many decimals.
inline constexpr int kSimilarityDecimals = 6;

double round_similarity(double s) noexcept;

std::string to_jsonl(const CuratedVideo& video);
// Parses one dataset line; raw/merged counts and source indices are not
// stored in the file and come back zero/empty.
CuratedVideo curated_from_json(std::string_view line);
std::vector<CuratedVideo> read_dataset(const std::filesystem::path& path);

struct Manifest {
    std::size_t videos = 0;
    std::size_t segments_before = 0;  // raw ASR segments of emitted videos
    std::size_t segments_merged = 0;  // after merging, before the similarity sieve
    std::size_t segments_after = 0;
    std::size_t videos_without_segments = 0;
    std::size_t videos_failed = 0;
    std::size_t train_videos = 0;
    std::size_t validation_videos = 0;
    nlohmann::json config = nlohmann::json::object();

    nlohmann::json to_json() const;
};

// Writes one line per video sorted by video_id, then the manifest.
Manifest emit_dataset(std::vector<CuratedVideo> curated, const std::filesystem::path& dataset_path,
                      const std::filesystem::path& manifest_path, std::size_t videos_failed,
                      nlohmann::json config_echo);

// ─── Validation ─────────────────────────────────────────────────────────────

struct ValidationInputs {
    double min_similarity = 0.75;
    // Optional cross-checks; skipped when null.
    const std::map<std::string, corpus::VideoRecord>* videos = nullptr;
    const std::map<std::string, corpus::Recipe>* recipes = nullptr;
};

// Every SwapSegment / CuratedVideo invariant violated by the dataset, one
// message each. Empty means valid.
std::vector<std::string> validate_dataset(std::span<const CuratedVideo> dataset, const ValidationInputs& inputs);

}  // namespace procurate::swap
