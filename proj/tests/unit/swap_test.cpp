// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include <gtest/gtest.h>

#include "procurate/error.hpp"
#include "procurate/swap.hpp"
#include "support/oracles.hpp"

using namespace procurate;
using namespace procurate::swap;
using corpus::AsrSegment;

namespace {

std::vector<AsrSegment> spans(std::initializer_list<std::pair<double, double>> list) {
    std::vector<AsrSegment> out;
    int i = 0;
    for (auto [s, e] : list) out.push_back({"s" + std::to_string(i++), s, e});
    return out;
}

std::vector<std::pair<double, double>> extents(const std::vector<MergedSegment>& merged) {
    std::vector<std::pair<double, double>> out;
    for (const auto& m : merged) out.emplace_back(m.segment.start_s, m.segment.end_s);
    return out;
}

using Extents = std::vector<std::pair<double, double>>;

// Two recipes, unit-axis step vectors in 4 dimensions.
struct World {
    std::vector<corpus::Recipe> recipes{{"ra", "A", {"Chop the onion.", "Fry it."}}, {"rb", "B", {"Serve."}}};
    embed::EmbeddingMatrix steps{{"ra#0", "ra#1", "rb#0"}, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0}};
    StepIndex index{steps, recipes};
};

// Vector whose cosine with axis `axis` is exactly `sim` (remaining mass on axis 3).
std::vector<float> toward(int axis, double sim) {
    std::vector<float> v(4, 0.0f);
    v[axis] = static_cast<float>(sim);
    v[3] = static_cast<float>(std::sqrt(1 - sim * sim));
    return v;
}

}  // namespace

TEST(Merge, Examples) {
    EXPECT_EQ(extents(merge_segments(spans({{0, 5}, {7, 12}}), {})), (Extents{{0, 12}}));
    EXPECT_EQ(extents(merge_segments(spans({{0, 9}, {10, 13}}), {})), (Extents{{0, 9}, {10, 13}}));
    EXPECT_EQ(extents(merge_segments(spans({{0, 5}, {6, 10}, {11, 14}}), {})), (Extents{{0, 10}, {11, 14}}));
    EXPECT_TRUE(merge_segments({}, {}).empty());
}

TEST(Merge, TextAndSources) {
    const auto merged = merge_segments(spans({{0, 5}, {7, 12}, {30, 31}}), {});
    ASSERT_EQ(merged.size(), 2u);
    EXPECT_EQ(merged[0].segment.text, "s0 s1");
    EXPECT_EQ(merged[0].source_indices, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(merged[1].source_indices, (std::vector<std::size_t>{2}));
}

TEST(Merge, BoundariesAreStrict) {
    EXPECT_EQ(merge_segments(spans({{0, 8}, {8, 9}}), {}).size(), 2u);
    EXPECT_EQ(merge_segments(spans({{0, 1}, {5, 6}}), {}).size(), 2u);
    EXPECT_EQ(merge_segments(spans({{0, 1}, {4.999, 6}}), {}).size(), 1u);
}

TEST(Merge, OverlapGapFlooredAndEndIsMax) {
    const auto merged = merge_segments(spans({{0, 6}, {2, 4}}), {});
    ASSERT_EQ(merged.size(), 1u);
    EXPECT_EQ(merged[0].segment.end_s, 6);
}

TEST(Merge, AgreesWithPartitionOracle) {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> len(0.5, 10), gap(-1, 6);
    std::uniform_int_distribution<int> count(0, 9);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<AsrSegment> segs;
        std::vector<oracle::Span> plain;
        double t = 0;
        for (int i = count(rng); i > 0; --i) {
            t = std::max(0.0, t + gap(rng));
            const double e = t + len(rng);
            segs.push_back({"w", t, e});
            plain.push_back({t, e});
            t = e;
        }
        std::stable_sort(segs.begin(), segs.end(),
                         [](const auto& a, const auto& b) { return std::pair(a.start_s, a.end_s) < std::pair(b.start_s, b.end_s); });
        std::sort(plain.begin(), plain.end(),
                  [](const auto& a, const auto& b) { return std::pair(a.start, a.end) < std::pair(b.start, b.end); });
        const auto parts = oracle::consistent_partitions(plain, 8, 4);
        ASSERT_EQ(parts.size(), 1u);
        const auto merged = merge_segments(segs, {});
        ASSERT_EQ(merged.size(), parts[0].size());
        for (std::size_t g = 0; g < merged.size(); ++g) {
            EXPECT_EQ(merged[g].source_indices.front(), parts[0][g].first);
            EXPECT_EQ(merged[g].source_indices.back() + 1, parts[0][g].second);
        }
    }
}

TEST(Merge, IdempotentAndExtentPreserving) {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> len(0.2, 12), gap(0, 6);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<AsrSegment> segs;
        double t = 0;
        for (int i = 0; i < 20; ++i) {
            t += gap(rng);
            segs.push_back({"w" + std::to_string(i), t, t + len(rng)});
            t = segs.back().end_s;
        }
        std::vector<MergeStep> trace;
        const auto once = merged_text_segments(merge_segments(segs, {}, &trace));
        for (const auto& s : trace) {
            EXPECT_LT(s.current_duration, 8);
            EXPECT_LT(s.next_duration, 8);
            EXPECT_LT(s.gap, 4);
        }
        EXPECT_EQ(trace.size(), segs.size() - once.size());
        EXPECT_EQ(merged_text_segments(merge_segments(once, {})), once);
        EXPECT_EQ(once.front().start_s, segs.front().start_s);
        EXPECT_EQ(once.back().end_s, segs.back().end_s);
        std::string joined_in, joined_out;
        for (const auto& s : segs) joined_in += s.text + " ";
        for (const auto& s : once) joined_out += s.text + " ";
        EXPECT_EQ(joined_in, joined_out);
    }
}

TEST(Pool, Names) {
    EXPECT_EQ(parse_pool("global"), RetrievalPool::kGlobal);
    EXPECT_EQ(parse_pool(to_string(RetrievalPool::kPaired)), RetrievalPool::kPaired);
    EXPECT_THROW(parse_pool("local"), ConfigError);
}

TEST(StepIndexTest, FiltersToPool) {
    World w;
    const std::vector<corpus::Recipe> only_a{w.recipes[0]};
    StepIndex idx(w.steps, only_a);
    EXPECT_EQ(idx.matrix().size(), 2u);
    EXPECT_EQ(idx.step_text({"ra", 1}), "Fry it.");
    EXPECT_TRUE(idx.rows_for_recipe("rb").empty());
    EXPECT_EQ(idx.missing_steps(), 0u);
    const std::vector<corpus::Recipe> extra{{"rc", "C", {"x"}}};
    EXPECT_EQ(StepIndex(w.steps, extra).missing_steps(), 1u);
}

TEST(SwapVideo, ThresholdAndTimestamps) {
    World w;
    corpus::VideoRecord v{"v", "T", 100, "c", {{"chop", 0, 10}, {"noise", 20, 30}}};
    const auto a = toward(0, 0.80), b = toward(2, 0.70);
    const std::vector<std::span<const float>> vecs{a, b};
    const auto out = swap_video(v, sieve::SplitTag::kTrain, vecs, w.index, {});
    ASSERT_EQ(out.segments.size(), 1u);
    const auto& s = out.segments[0];
    EXPECT_EQ(s.step, (corpus::StepRef{"ra", 0}));
    EXPECT_EQ(s.text, "Chop the onion.");
    EXPECT_EQ(s.start_s, 0);
    EXPECT_EQ(s.end_s, 10);
    EXPECT_NEAR(s.similarity, 0.80, 1e-6);
    EXPECT_EQ(out.raw_segment_count, 2u);
    EXPECT_EQ(out.merged_segment_count, 2u);
}

TEST(SwapVideo, ConsecutiveRepeatsCollapse) {
    World w;
    corpus::VideoRecord v{"v", "T", 100, "c", {{"a", 2, 10}, {"b", 12, 20}}};
    const auto a = toward(2, 0.80), b = toward(2, 0.78);
    const std::vector<std::span<const float>> vecs{a, b};
    const auto out = swap_video(v, sieve::SplitTag::kTrain, vecs, w.index, {});
    ASSERT_EQ(out.segments.size(), 1u);
    EXPECT_EQ(out.segments[0].step, (corpus::StepRef{"rb", 0}));
    EXPECT_EQ(out.segments[0].start_s, 2);
    EXPECT_EQ(out.segments[0].end_s, 20);
    EXPECT_NEAR(out.segments[0].similarity, 0.80, 1e-6);
    EXPECT_EQ(out.segments[0].source_segment_indices, (std::vector<std::size_t>{0, 1}));
}

TEST(SwapVideo, NonConsecutiveRepeatsKept) {
    World w;
    corpus::VideoRecord v{"v", "T", 100, "c", {{"a", 0, 10}, {"b", 20, 30}, {"c", 40, 50}}};
    const auto a = toward(0, 0.9), b = toward(1, 0.9), c = toward(0, 0.9);
    const std::vector<std::span<const float>> vecs{a, b, c};
    const auto out = swap_video(v, sieve::SplitTag::kTrain, vecs, w.index, {});
    EXPECT_EQ(out.segments.size(), 3u);
}

TEST(SwapVideo, PairedPoolRestrictsCandidates) {
    World w;
    corpus::VideoRecord v{"v", "T", 100, "c", {{"a", 0, 10}}};
    std::vector<float> q{0.1f, 0, 0.995f, 0};
    const std::vector<std::span<const float>> vecs{q};
    SwapParams params;
    params.min_similarity = 0.0;
    const std::vector<std::string> paired{"ra"};
    EXPECT_EQ(swap_video(v, sieve::SplitTag::kTrain, vecs, w.index, params, paired).segments.at(0).step.recipe_id,
              "rb");
    params.pool = RetrievalPool::kPaired;
    EXPECT_EQ(swap_video(v, sieve::SplitTag::kTrain, vecs, w.index, params, paired).segments.at(0).step.recipe_id,
              "ra");
}

TEST(SwapVideo, EmbeddingCountMismatch) {
    World w;
    corpus::VideoRecord v{"v", "T", 100, "c", {{"a", 0, 10}, {"b", 20, 30}}};
    const auto a = toward(0, 0.9);
    const std::vector<std::span<const float>> vecs{a};
    EXPECT_THROW(swap_video(v, sieve::SplitTag::kTrain, vecs, w.index, {}), AlignmentError);
}

TEST(SegmentVectors, LookupByMergedIndex) {
    corpus::VideoRecord v{"vid#1", "T", 100, "c", {{"a", 0, 5}, {"b", 6, 8}, {"c", 30, 40}}};
    embed::EmbeddingMatrix m({"vid#1#0", "vid#1#1"}, 2, {1, 0, 0, 1});
    const auto vecs = segment_vectors_for(v, m, {});
    ASSERT_EQ(vecs.size(), 2u);
    EXPECT_EQ(vecs[1][1], 1.0f);
    embed::EmbeddingMatrix short_m({"vid#1#0"}, 2, {1, 0});
    EXPECT_THROW(segment_vectors_for(v, short_m, {}), AlignmentError);
    embed::EmbeddingMatrix long_m({"vid#1#0", "vid#1#1", "vid#1#2"}, 2, {1, 0, 0, 1, 1, 1});
    EXPECT_THROW(segment_vectors_for(v, long_m, {}), AlignmentError);
}

TEST(Emit, ManifestCounts) {
    oracle::TempDir dir("emit");
    std::vector<CuratedVideo> curated(2);
    curated[0].video_id = "b";
    curated[0].raw_segment_count = 7;
    curated[0].merged_segment_count = 5;
    curated[0].split = sieve::SplitTag::kValidation;
    for (int i = 0; i < 5; ++i) curated[0].segments.push_back({{"r", std::size_t(i)}, "t", double(i), i + 0.5, 0.9, {}});
    curated[1].video_id = "a";
    curated[1].raw_segment_count = 5;
    curated[1].merged_segment_count = 4;
    const auto m = emit_dataset(curated, dir / "d.jsonl", dir / "m.json", 1, {{"sim", 0.75}});
    EXPECT_EQ(m.videos, 2u);
    EXPECT_EQ(m.segments_before, 12u);
    EXPECT_EQ(m.segments_merged, 9u);
    EXPECT_EQ(m.segments_after, 5u);
    EXPECT_EQ(m.videos_without_segments, 1u);
    EXPECT_EQ(m.videos_failed, 1u);
    EXPECT_EQ(m.train_videos, 1u);
    EXPECT_EQ(m.validation_videos, 1u);
    const auto lines = oracle::slurp(dir / "d.jsonl");
    EXPECT_EQ(lines.substr(0, lines.find('\n')), R"({"segments":[],"split":"train","title":"","video_id":"a"})");
    const auto manifest = nlohmann::json::parse(oracle::slurp(dir / "m.json"));
    EXPECT_EQ(manifest.at("segments_after"), 5);
    EXPECT_EQ(manifest.at("config").at("sim"), 0.75);
    std::vector<CuratedVideo> dup(2);
    EXPECT_THROW(emit_dataset(dup, dir / "d.jsonl", dir / "m.json", 0, {}), Error);
}

TEST(Emit, EmptyInput) {
    oracle::TempDir dir("emit");
    const auto m = emit_dataset({}, dir / "d.jsonl", dir / "m.json", 0, {});
    EXPECT_EQ(m.videos, 0u);
    EXPECT_EQ(m.segments_before, 0u);
    EXPECT_EQ(oracle::slurp(dir / "d.jsonl"), "");
}

TEST(Emit, RoundTripThroughReader) {
    oracle::TempDir dir("emit");
    CuratedVideo v;
    v.video_id = "v1";
    v.title = "Crème brûlée";
    v.segments.push_back({{"r", 2}, "Torch \"the\" sugar.", 1.25, 9.5, 0.812345678, {}});
    emit_dataset({v}, dir / "d.jsonl", dir / "m.json", 0, {});
    const auto back = read_dataset(dir / "d.jsonl");
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].title, v.title);
    EXPECT_EQ(back[0].segments[0].text, v.segments[0].text);
    EXPECT_EQ(back[0].segments[0].similarity, 0.812346);
    EXPECT_EQ(back[0].segments[0].step, v.segments[0].step);
}

TEST(Validate, CatchesEachViolation) {
    std::map<std::string, corpus::VideoRecord> videos{{"v", {"v", "T", 100, "c", {{"a", 0, 10}, {"b", 20, 30}}}}};
    std::map<std::string, corpus::Recipe> recipes{{"r", {"r", "R", {"Step zero.", "Step one."}}}};
    CuratedVideo good;
    good.video_id = "v";
    good.segments = {{{"r", 0}, "Step zero.", 0, 10, 0.8, {}}, {{"r", 1}, "Step one.", 20, 30, 0.9, {}}};
    ValidationInputs in{0.75, &videos, &recipes};
    EXPECT_TRUE(validate_dataset(std::vector{good}, in).empty());

    auto broken = [&](auto mutate) {
        CuratedVideo v = good;
        mutate(v);
        return validate_dataset(std::vector{v}, in).size();
    };
    EXPECT_GT(broken([](CuratedVideo& v) { v.segments[0].similarity = 0.7; }), 0u);
    EXPECT_GT(broken([](CuratedVideo& v) { v.segments[1].step.step_index = 0; v.segments[1].text = "Step zero."; }), 0u);
    EXPECT_GT(broken([](CuratedVideo& v) { v.segments[0].text = "Step 0."; }), 0u);
    EXPECT_GT(broken([](CuratedVideo& v) { v.segments[0].end_s = 11; }), 0u);
    EXPECT_GT(broken([](CuratedVideo& v) { std::swap(v.segments[0], v.segments[1]); }), 0u);
    EXPECT_GT(broken([](CuratedVideo& v) { v.segments.push_back(v.segments[0]); v.segments.push_back(v.segments[1]); }), 0u);
    EXPECT_GT(broken([](CuratedVideo& v) { v.video_id = "w"; }), 0u);
    EXPECT_GT(broken([](CuratedVideo& v) { v.segments[1].step.step_index = 5; }), 0u);
}
