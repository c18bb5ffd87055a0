// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/sieve.hpp"

#include <algorithm>
#include <unordered_map>

#include "procurate/error.hpp"
#include "procurate/parallel.hpp"

namespace procurate::sieve {

std::string_view to_string(SplitTag tag) noexcept {
    return tag == SplitTag::kValidation ? "validation" : "train";
}

SplitTag parse_split(std::string_view name) {
    if (name == "train") return SplitTag::kTrain;
    if (name == "validation") return SplitTag::kValidation;
    throw Error("unknown split '" + std::string(name) + "'");
}

std::string_view to_string(RecallDenominator d) noexcept {
    return d == RecallDenominator::kTranscript ? "transcript" : "recipe";
}

RecallDenominator parse_recall_denominator(std::string_view name) {
    if (name == "recipe") return RecallDenominator::kRecipe;
    if (name == "transcript") return RecallDenominator::kTranscript;
    throw ConfigError("recall_denominator must be 'recipe' or 'transcript', got '" + std::string(name) + "'");
}

TitlePairing pair_by_title(std::span<const corpus::VideoRecord> videos, std::span<const corpus::Recipe> recipes,
                           const text::Stoplist& stoplist) {
    std::unordered_map<std::string, std::vector<std::size_t>> postings;
    for (std::size_t r = 0; r < recipes.size(); ++r) {
        for (const auto& lemma : text::content_words(recipes[r].title, stoplist)) postings[lemma].push_back(r);
    }

    TitlePairing out;
    std::vector<std::size_t> matches;
    for (const auto& video : videos) {
        matches.clear();
        for (const auto& lemma : text::content_words(video.title, stoplist)) {
            if (auto it = postings.find(lemma); it != postings.end()) {
                matches.insert(matches.end(), it->second.begin(), it->second.end());
            }
        }
        if (matches.empty()) continue;
        std::sort(matches.begin(), matches.end());
        matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
        out.videos.insert(video.video_id);
        for (std::size_t r : matches) {
            out.pairs.push_back({video.video_id, recipes[r].recipe_id});
            out.recipes.insert(recipes[r].recipe_id);
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

text::TokenSet transcript_words(const corpus::VideoRecord& video, const text::Stoplist& stoplist) {
    std::string all;
    for (const auto& seg : video.segments) {
        all += seg.text;
        all += ' ';
    }
    return text::content_words(all, stoplist);
}

text::TokenSet recipe_words(const corpus::Recipe& recipe, const text::Stoplist& stoplist) {
    std::string all;
    for (const auto& step : recipe.steps) {
        all += step;
        all += ' ';
    }
    return text::content_words(all, stoplist);
}

PairScore score_sets(std::string video_id, std::string recipe_id, const text::TokenSet& transcript,
                     const text::TokenSet& recipe, RecallDenominator denominator) {
    const std::size_t inter = transcript.intersection_size(recipe);
    const std::size_t uni = transcript.size() + recipe.size() - inter;
    const std::size_t denom = denominator == RecallDenominator::kRecipe ? recipe.size() : transcript.size();
    PairScore s{std::move(video_id), std::move(recipe_id), 0.0, 0.0};
    if (uni > 0) s.token_iou = static_cast<double>(inter) / static_cast<double>(uni);
    if (denom > 0) s.token_recall = static_cast<double>(inter) / static_cast<double>(denom);
    return s;
}

PairScore score_pair(const corpus::VideoRecord& video, const corpus::Recipe& recipe, const text::Stoplist& stoplist,
                     RecallDenominator denominator) {
    return score_sets(video.video_id, recipe.recipe_id, transcript_words(video, stoplist),
                      recipe_words(recipe, stoplist), denominator);
}

std::vector<PairScore> score_pairs(std::span<const PairId> pairs, std::span<const corpus::VideoRecord> videos,
                                   std::span<const corpus::Recipe> recipes, const text::Stoplist& stoplist,
                                   RecallDenominator denominator, std::size_t workers) {
    std::unordered_map<std::string_view, std::size_t> video_slot;
    std::unordered_map<std::string_view, std::size_t> recipe_slot;
    for (std::size_t i = 0; i < videos.size(); ++i) video_slot.emplace(videos[i].video_id, i);
    for (std::size_t i = 0; i < recipes.size(); ++i) recipe_slot.emplace(recipes[i].recipe_id, i);

    std::vector<char> need_video(videos.size(), 0), need_recipe(recipes.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> index(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto v = video_slot.find(pairs[p].video_id);
        auto r = recipe_slot.find(pairs[p].recipe_id);
        if (v == video_slot.end()) throw Error("pair references unknown video '" + pairs[p].video_id + "'");
        if (r == recipe_slot.end()) throw Error("pair references unknown recipe '" + pairs[p].recipe_id + "'");
        index[p] = {v->second, r->second};
        need_video[v->second] = 1;
        need_recipe[r->second] = 1;
    }

    std::vector<text::TokenSet> video_sets(videos.size()), recipe_sets(recipes.size());
    parallel_for(videos.size(), workers, [&](std::size_t i) {
        if (need_video[i]) video_sets[i] = transcript_words(videos[i], stoplist);
    });
    parallel_for(recipes.size(), workers, [&](std::size_t i) {
        if (need_recipe[i]) recipe_sets[i] = recipe_words(recipes[i], stoplist);
    });

    std::vector<PairScore> out(pairs.size());
    parallel_for(pairs.size(), workers, [&](std::size_t p) {
        const auto [v, r] = index[p];
        out[p] = score_sets(pairs[p].video_id, pairs[p].recipe_id, video_sets[v], recipe_sets[r], denominator);
    });
    return out;
}

ContentSieve sieve_content(std::span<const PairScore> scored, const ContentThresholds& thresholds) {
    ContentSieve out;
    for (const auto& s : scored) {
        if (!passes(s, thresholds)) continue;
        out.kept.push_back(s);
        out.videos.insert(s.video_id);
        out.recipes.insert(s.recipe_id);
    }
    return out;
}

std::map<std::string, SplitTag> split_train_val(std::span<const PairScore> kept, double min_val_iou) {
    std::map<std::string, double> best;
    for (const auto& s : kept) {
        auto [it, inserted] = best.emplace(s.video_id, s.token_iou);
        if (!inserted) it->second = std::max(it->second, s.token_iou);
    }
    std::map<std::string, SplitTag> out;
    for (const auto& [id, iou] : best) {
        out.emplace(id, iou >= min_val_iou ? SplitTag::kValidation : SplitTag::kTrain);
    }
    return out;
}

}  // namespace procurate::sieve
