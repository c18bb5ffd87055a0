// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <cstddef>
#include <filesystem>

#include "json.hpp"
#include "procurate/sieve.hpp"
#include "procurate/swap.hpp"

namespace procurate {

struct PipelineConfig {
    std::filesystem::path videos;
    std::filesystem::path recipes;
    std::filesystem::path step_emb;  // .sseb; ids read from the sibling .ids file
    std::filesystem::path seg_emb;
    std::filesystem::path out_dir = ".";
    std::filesystem::path function_words;  // empty: built-in list
    std::filesystem::path generic_words;   // empty: built-in list

    double max_duration_s = 600.0;
    std::size_t min_per_category = 5;
    double iou = 0.1;
    double recall = 0.3;
    double val_iou = 0.2;
    double sim = 0.75;
    double merge_max_dur_s = 8.0;
    double merge_max_gap_s = 4.0;
    swap::RetrievalPool pool = swap::RetrievalPool::kGlobal;
    sieve::RecallDenominator recall_denominator = sieve::RecallDenominator::kRecipe;
    bool strict = true;
    std::size_t workers = 1;

    // Throws ConfigError naming the first offending field.
    void validate() const;

    // Overlays the keys present in `obj`; unknown keys are rejected.
    void apply_json(const nlohmann::json& obj);
    static PipelineConfig load(const std::filesystem::path& path);

    // Parameters that shape the outputs. Paths and worker count are left out
    // because they never change output bytes.
    nlohmann::json echo() const;
};

}  // namespace procurate
