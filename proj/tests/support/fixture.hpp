// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "procurate/config.hpp"
#include "support/oracles.hpp"

namespace fixture {

inline std::filesystem::path dir() { return oracle::test_data("fixtures/shipped"); }

inline procurate::PipelineConfig config(const std::filesystem::path& out_dir) {
    procurate::PipelineConfig cfg;
    cfg.videos = dir() / "videos.jsonl";
    cfg.recipes = dir() / "recipes.jsonl";
    cfg.step_emb = dir() / "steps.sseb";
    cfg.seg_emb = dir() / "segments.sseb";
    cfg.out_dir = out_dir;
    return cfg;
}

inline std::vector<std::string> args(const std::string& subcommand, const std::filesystem::path& out_dir) {
    return {subcommand,
            "--videos",  (dir() / "videos.jsonl").string(),
            "--recipes", (dir() / "recipes.jsonl").string(),
            "--step-emb", (dir() / "steps.sseb").string(),
            "--seg-emb", (dir() / "segments.sseb").string(),
            "--out-dir", out_dir.string()};
}

// Every regular file in a directory, by name.
inline std::vector<std::string> listing(const std::filesystem::path& d) {
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(d)) {
        if (e.is_regular_file()) names.push_back(e.path().filename().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace fixture
