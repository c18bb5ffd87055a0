// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace procurate::corpus {

// One timestamped ASR transcript segment.
struct AsrSegment {
    std::string text;
    double start_s = 0.0;
    double end_s = 0.0;

    double duration() const noexcept { return end_s - start_s; }
    friend bool operator==(const AsrSegment&, const AsrSegment&) = default;
};

// Allowed overshoot of a segment end past the video duration (ASR drift).
inline constexpr double kSegmentEndSlackS = 1.0;

struct VideoRecord {
    std::string video_id;
    std::string title;
    double duration_s = 0.0;
    std::string category;
    std::vector<AsrSegment> segments;  // sorted by (start_s, end_s)

    friend bool operator==(const VideoRecord&, const VideoRecord&) = default;
};

struct Recipe {
    std::string recipe_id;
    std::string title;
    std::vector<std::string> steps;  // non-empty, each step non-blank

    friend bool operator==(const Recipe&, const Recipe&) = default;
};

// Addresses one step of one recipe. The textual key "<recipe_id>#<index>"
// is the row id used in step embedding files.
struct StepRef {
    std::string recipe_id;
    std::size_t step_index = 0;

    std::string key() const;
    static std::optional<StepRef> parse(std::string_view key);

    friend auto operator<=>(const StepRef&, const StepRef&) = default;
};

enum class IngestMode { kStrict, kLenient };

struct IngestStats {
    std::size_t lines = 0;             // non-blank lines read
    std::size_t records = 0;           // records produced
    std::size_t rejected_lines = 0;    // lenient mode only
    std::size_t dropped_segments = 0;  // lenient mode only
    std::size_t dropped_steps = 0;     // empty steps removed
};

namespace detail {

// Shared line reader for the JSONL streams.
class LineSource {
public:
    explicit LineSource(const std::filesystem::path& path);
    // Next non-blank line, or nullopt at end of file.
    std::optional<std::string> next();
    std::size_t line_number() const noexcept { return line_number_; }
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
    std::ifstream in_;
    std::size_t line_number_ = 0;
};

}  // namespace detail

// Streams videos.jsonl one record at a time. Segments are normalized to
// (start_s, end_s) order. Strict mode throws IngestError on the first bad
// line; lenient mode skips bad lines and drops bad segments, counting both.
// A duplicate video_id throws in either mode.
class VideoReader {
public:
    VideoReader(const std::filesystem::path& path, IngestMode mode);

    std::optional<VideoRecord> next();
    const IngestStats& stats() const noexcept { return stats_; }

private:
    detail::LineSource source_;
    IngestMode mode_;
    IngestStats stats_;
    std::unordered_set<std::string> seen_ids_;
};

// Streams recipes.jsonl. Empty steps are removed; a recipe with no steps
// left is rejected.
class RecipeReader {
public:
    RecipeReader(const std::filesystem::path& path, IngestMode mode);

    std::optional<Recipe> next();
    const IngestStats& stats() const noexcept { return stats_; }

private:
    detail::LineSource source_;
    IngestMode mode_;
    IngestStats stats_;
    std::unordered_set<std::string> seen_ids_;
};

std::vector<VideoRecord> read_videos(const std::filesystem::path& path, IngestMode mode,
                                     IngestStats* stats = nullptr);
std::vector<Recipe> read_recipes(const std::filesystem::path& path, IngestMode mode,
                                 IngestStats* stats = nullptr);

// Single-line JSON encodings matching the input schemas.
std::string to_jsonl(const VideoRecord& video);
std::string to_jsonl(const Recipe& recipe);

struct SourceFilter {
    double max_duration_s = 600.0;
    std::size_t min_per_category = 5;
};

// Keeps videos no longer than max_duration_s whose category still holds at
// least min_per_category videos after the duration cut. Input order kept.
std::vector<VideoRecord> filter_source(std::span<const VideoRecord> videos, const SourceFilter& filter);

}  // namespace procurate::corpus
