// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "procurate/config.hpp"

namespace procurate::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

// File names written under PipelineConfig::out_dir.
namespace files {
inline constexpr const char* kTitlePairs = "title_pairs.jsonl";
inline constexpr const char* kPairs = "pairs.jsonl";
inline constexpr const char* kSplit = "split.jsonl";
inline constexpr const char* kSegmentTexts = "segment_texts.jsonl";
inline constexpr const char* kStepTexts = "step_texts.jsonl";
inline constexpr const char* kDataset = "dataset.jsonl";
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kReport = "report.json";
inline constexpr const char* kWordDeltas = "word_deltas.csv";
inline constexpr const char* kSentenceCounts = "sentence_content_counts.csv";
}  // namespace files

// Stage entry points. Each validates its inputs, throws ConfigError for a
// missing input or bad parameter and returns the files it wrote.
std::vector<std::filesystem::path> run_sieve_titles(const PipelineConfig& cfg);
std::vector<std::filesystem::path> run_sieve_content(const PipelineConfig& cfg);
std::vector<std::filesystem::path> run_swap(const PipelineConfig& cfg);
std::vector<std::filesystem::path> run_stats(const PipelineConfig& cfg);
std::vector<std::filesystem::path> run_pipeline(const PipelineConfig& cfg);

// Returns the invariant violations found in out_dir/dataset.jsonl. Source
// videos and recipes are cross-checked when configured.
std::vector<std::string> run_validate(const PipelineConfig& cfg);

// Full command line: `procurate <subcommand> [flags]`.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args exclude the program name

}  // namespace procurate::cli
