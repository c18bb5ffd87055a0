// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace procurate::embed {

// .sseb layout (all little-endian):
//   "SSEB" | u32 version (=1) | u32 dim | u64 count | count*dim f32, row-major
// The companion .ids file holds one id per line, line k naming row k.
inline constexpr char kMagic[4] = {'S', 'S', 'E', 'B'};
inline constexpr std::uint32_t kVersion = 1;
inline constexpr std::size_t kHeaderBytes = 20;

// Tolerance on stored row norms after normalization.
inline constexpr double kNormTolerance = 1e-4;

struct NeighborHit {
    std::string id;
    double similarity = 0.0;  // cosine, [-1, 1]

    friend bool operator==(const NeighborHit&, const NeighborHit&) = default;
};

// Immutable after construction; safe to query from many threads.
class EmbeddingMatrix {
public:
    EmbeddingMatrix() = default;
    // Rows are L2-normalized when `normalize` is set; zero rows throw.
    EmbeddingMatrix(std::vector<std::string> ids, std::size_t dim, std::vector<float> rows, bool normalize = true);

    std::size_t size() const noexcept { return ids_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    bool normalized() const noexcept { return normalized_; }
    bool empty() const noexcept { return ids_.empty(); }

    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::string& id(std::size_t row) const { return ids_.at(row); }
    std::span<const float> row(std::size_t i) const;
    std::optional<std::size_t> find(std::string_view id) const;

    // New matrix holding the selected rows, in the given order.
    EmbeddingMatrix subset(std::span<const std::size_t> rows) const;

private:
    std::vector<std::string> ids_;
    std::size_t dim_ = 0;
    std::vector<float> data_;
    bool normalized_ = false;
    std::unordered_map<std::string, std::size_t> lookup_;
};

EmbeddingMatrix load_embeddings(const std::filesystem::path& data_path, const std::filesystem::path& ids_path);

// Writes rows exactly as given (no normalization).
void write_embeddings(const std::filesystem::path& data_path, const std::filesystem::path& ids_path,
                      std::span<const std::string> ids, std::size_t dim, std::span<const float> rows);

// "emb.sseb" -> "emb.ids"
std::filesystem::path ids_path_for(const std::filesystem::path& data_path);

// Exact top-k cosine neighbors, similarity descending, ties by id ascending.
// Dot products accumulate in double over the stored float rows.
std::vector<NeighborHit> query(const EmbeddingMatrix& matrix, std::span<const float> vector, std::size_t k);

// Same, restricted to the listed rows.
std::vector<NeighborHit> query(const EmbeddingMatrix& matrix, std::span<const float> vector, std::size_t k,
                               std::span<const std::size_t> candidate_rows);

}  // namespace procurate::embed
