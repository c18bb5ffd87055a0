// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "json.hpp"
#include "procurate/error.hpp"

namespace procurate::corpus {

using nlohmann::json;

std::string StepRef::key() const { return recipe_id + "#" + std::to_string(step_index); }

std::optional<StepRef> StepRef::parse(std::string_view key) {
    const auto hash = key.rfind('#');
    if (hash == std::string_view::npos || hash == 0 || hash + 1 == key.size()) return std::nullopt;
    std::size_t index = 0;
    const char* first = key.data() + hash + 1;
    const char* last = key.data() + key.size();
    auto [ptr, ec] = std::from_chars(first, last, index);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return StepRef{std::string(key.substr(0, hash)), index};
}

namespace detail {

LineSource::LineSource(const std::filesystem::path& path) : path_(path.string()), in_(path, std::ios::binary) {
    if (!in_) throw IoError("cannot open " + path_);
}

std::optional<std::string> LineSource::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_number_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) return line;
    }
    if (in_.bad()) throw IoError("read failure in " + path_);
    return std::nullopt;
}

}  // namespace detail

namespace {

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

// Raised for a problem confined to one line; the readers decide whether it
// aborts or is counted.
struct LineProblem {
    std::string message;
};

const json& field(const json& obj, const char* name) {
    auto it = obj.find(name);
    if (it == obj.end()) throw LineProblem{std::string("missing field '") + name + "'"};
    return *it;
}

std::string string_field(const json& obj, const char* name) {
    const json& v = field(obj, name);
    if (!v.is_string()) throw LineProblem{std::string("field '") + name + "' must be a string"};
    return v.get<std::string>();
}

double number_field(const json& obj, const char* name) {
    const json& v = field(obj, name);
    if (!v.is_number()) throw LineProblem{std::string("field '") + name + "' must be a number"};
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw LineProblem{std::string("field '") + name + "' must be finite"};
    return d;
}

json parse_object(const std::string& line) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw LineProblem{std::string("malformed JSON: ") + e.what()};
    }
    if (!obj.is_object()) throw LineProblem{"line is not a JSON object"};
    return obj;
}

// Why a segment breaks the AsrSegment / VideoRecord invariants, or empty.
std::string segment_problem(const AsrSegment& seg, double duration_s) {
    if (seg.start_s < 0.0) return "segment start_s is negative";
    if (!(seg.start_s < seg.end_s)) return "segment start_s >= end_s";
    if (seg.end_s > duration_s + kSegmentEndSlackS) return "segment ends after the video duration";
    if (is_blank(seg.text)) return "segment text is empty";
    return {};
}

VideoRecord parse_video(const std::string& line, IngestMode mode, IngestStats& stats) {
    const json obj = parse_object(line);
    VideoRecord video;
    video.video_id = string_field(obj, "video_id");
    if (video.video_id.empty()) throw LineProblem{"video_id is empty"};
    video.title = string_field(obj, "title");
    video.duration_s = number_field(obj, "duration_s");
    if (!(video.duration_s > 0.0)) throw LineProblem{"duration_s must be positive"};
    auto cat = obj.find("category");
    if (cat == obj.end() || cat->is_null()) throw LineProblem{"missing category"};
    if (!cat->is_string()) throw LineProblem{"field 'category' must be a string"};
    video.category = cat->get<std::string>();
    if (is_blank(video.category)) throw LineProblem{"missing category"};

    const json& segs = field(obj, "segments");
    if (!segs.is_array()) throw LineProblem{"field 'segments' must be an array"};
    video.segments.reserve(segs.size());
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const json& s = segs[k];
        if (!s.is_object()) throw LineProblem{"segment " + std::to_string(k) + " is not an object"};
        AsrSegment seg{string_field(s, "text"), number_field(s, "start_s"), number_field(s, "end_s")};
        if (auto why = segment_problem(seg, video.duration_s); !why.empty()) {
            if (mode == IngestMode::kStrict) throw LineProblem{why + " (segment " + std::to_string(k) + ")"};
            ++stats.dropped_segments;
            continue;
        }
        video.segments.push_back(std::move(seg));
    }
    std::stable_sort(video.segments.begin(), video.segments.end(), [](const AsrSegment& a, const AsrSegment& b) {
        if (a.start_s != b.start_s) return a.start_s < b.start_s;
        return a.end_s < b.end_s;
    });
    return video;
}

Recipe parse_recipe(const std::string& line, IngestStats& stats) {
    const json obj = parse_object(line);
    Recipe recipe;
    recipe.recipe_id = string_field(obj, "recipe_id");
    if (recipe.recipe_id.empty()) throw LineProblem{"recipe_id is empty"};
    recipe.title = string_field(obj, "title");
    const json& steps = field(obj, "steps");
    if (!steps.is_array()) throw LineProblem{"field 'steps' must be an array"};
    for (const json& s : steps) {
        if (!s.is_string()) throw LineProblem{"steps must be strings"};
        auto text = s.get<std::string>();
        if (is_blank(text)) {
            ++stats.dropped_steps;
            continue;
        }
        recipe.steps.push_back(std::move(text));
    }
    if (recipe.steps.empty()) throw LineProblem{"recipe has no non-empty steps"};
    return recipe;
}

}  // namespace

VideoReader::VideoReader(const std::filesystem::path& path, IngestMode mode) : source_(path), mode_(mode) {}

std::optional<VideoRecord> VideoReader::next() {
    while (auto line = source_.next()) {
        ++stats_.lines;
        try {
            VideoRecord video = parse_video(*line, mode_, stats_);
            if (!seen_ids_.insert(video.video_id).second) {
                throw IngestError(source_.path(), source_.line_number(), "duplicate video_id '" + video.video_id + "'");
            }
            ++stats_.records;
            return video;
        } catch (const LineProblem& p) {
            if (mode_ == IngestMode::kStrict) throw IngestError(source_.path(), source_.line_number(), p.message);
            ++stats_.rejected_lines;
        }
    }
    return std::nullopt;
}

RecipeReader::RecipeReader(const std::filesystem::path& path, IngestMode mode) : source_(path), mode_(mode) {}

std::optional<Recipe> RecipeReader::next() {
    while (auto line = source_.next()) {
        ++stats_.lines;
        try {
            Recipe recipe = parse_recipe(*line, stats_);
            if (!seen_ids_.insert(recipe.recipe_id).second) {
                throw IngestError(source_.path(), source_.line_number(),
                                  "duplicate recipe_id '" + recipe.recipe_id + "'");
            }
            ++stats_.records;
            return recipe;
        } catch (const LineProblem& p) {
            if (mode_ == IngestMode::kStrict) throw IngestError(source_.path(), source_.line_number(), p.message);
            ++stats_.rejected_lines;
        }
    }
    return std::nullopt;
}

std::vector<VideoRecord> read_videos(const std::filesystem::path& path, IngestMode mode, IngestStats* stats) {
    VideoReader reader(path, mode);
    std::vector<VideoRecord> out;
    while (auto v = reader.next()) out.push_back(std::move(*v));
    if (stats) *stats = reader.stats();
    return out;
}

std::vector<Recipe> read_recipes(const std::filesystem::path& path, IngestMode mode, IngestStats* stats) {
    RecipeReader reader(path, mode);
    std::vector<Recipe> out;
    while (auto r = reader.next()) out.push_back(std::move(*r));
    if (stats) *stats = reader.stats();
    return out;
}

std::string to_jsonl(const VideoRecord& video) {
    json segs = json::array();
    for (const auto& s : video.segments) {
        segs.push_back({{"text", s.text}, {"start_s", s.start_s}, {"end_s", s.end_s}});
    }
    json obj{{"video_id", video.video_id},
             {"title", video.title},
             {"duration_s", video.duration_s},
             {"category", video.category},
             {"segments", std::move(segs)}};
    return obj.dump();
}

std::string to_jsonl(const Recipe& recipe) {
    json obj{{"recipe_id", recipe.recipe_id}, {"title", recipe.title}, {"steps", recipe.steps}};
    return obj.dump();
}

std::vector<VideoRecord> filter_source(std::span<const VideoRecord> videos, const SourceFilter& filter) {
    std::unordered_map<std::string, std::size_t> per_category;
    for (const auto& v : videos) {
        if (v.duration_s <= filter.max_duration_s) ++per_category[v.category];
    }
    std::vector<VideoRecord> out;
    for (const auto& v : videos) {
        if (v.duration_s <= filter.max_duration_s && per_category[v.category] >= filter.min_per_category) {
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace procurate::corpus
