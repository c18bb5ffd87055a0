// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "procurate/corpus.hpp"
#include "procurate/textnorm.hpp"

namespace procurate::sieve {

struct PairId {
    std::string video_id;
    std::string recipe_id;

    friend auto operator<=>(const PairId&, const PairId&) = default;
};

struct PairScore {
    std::string video_id;
    std::string recipe_id;
    double token_iou = 0.0;     // [0, 1]
    double token_recall = 0.0;  // [0, 1]

    friend bool operator==(const PairScore&, const PairScore&) = default;
};

enum class SplitTag { kTrain, kValidation };

std::string_view to_string(SplitTag tag) noexcept;
SplitTag parse_split(std::string_view name);

// Which content-word set normalizes token_recall.
enum class RecallDenominator { kRecipe, kTranscript };

std::string_view to_string(RecallDenominator d) noexcept;
RecallDenominator parse_recall_denominator(std::string_view name);

using IdSet = std::set<std::string>;

struct TitlePairing {
    std::vector<PairId> pairs;  // sorted by (video_id, recipe_id)
    IdSet videos;               // videos with at least one pair
    IdSet recipes;              // recipes with at least one pair
};

// Pairs every video with every recipe whose title shares a content word.
// Uses an inverted index over recipe-title lemmas, so the cross product is
// never materialized.
TitlePairing pair_by_title(std::span<const corpus::VideoRecord> videos,
                           std::span<const corpus::Recipe> recipes, const text::Stoplist& stoplist);

// Document-level content words of a transcript / of all recipe steps.
text::TokenSet transcript_words(const corpus::VideoRecord& video, const text::Stoplist& stoplist);
text::TokenSet recipe_words(const corpus::Recipe& recipe, const text::Stoplist& stoplist);

// token_iou = |A∩B| / |A∪B|, token_recall = |A∩B| / |denominator set|,
// with A the transcript words and B the recipe words. Empty denominators
// give 0.
PairScore score_sets(std::string video_id, std::string recipe_id, const text::TokenSet& transcript,
                     const text::TokenSet& recipe, RecallDenominator denominator = RecallDenominator::kRecipe);

PairScore score_pair(const corpus::VideoRecord& video, const corpus::Recipe& recipe,
                     const text::Stoplist& stoplist,
                     RecallDenominator denominator = RecallDenominator::kRecipe);

// Scores all pairs, computing each video's and recipe's token set once.
// Work is spread over `workers` threads; output order follows `pairs`.
std::vector<PairScore> score_pairs(std::span<const PairId> pairs, std::span<const corpus::VideoRecord> videos,
                                   std::span<const corpus::Recipe> recipes, const text::Stoplist& stoplist,
                                   RecallDenominator denominator, std::size_t workers);

struct ContentThresholds {
    double min_iou = 0.1;
    double min_recall = 0.3;
};

inline bool passes(const PairScore& s, const ContentThresholds& t) noexcept {
    return s.token_iou >= t.min_iou && s.token_recall >= t.min_recall;
}

struct ContentSieve {
    std::vector<PairScore> kept;  // input order
    IdSet videos;
    IdSet recipes;
};

ContentSieve sieve_content(std::span<const PairScore> scored, const ContentThresholds& thresholds);

// Per-video split: validation iff the best token_iou among the video's kept
// pairs reaches min_val_iou.
std::map<std::string, SplitTag> split_train_val(std::span<const PairScore> kept, double min_val_iou = 0.2);

}  // namespace procurate::sieve
