// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/embedindex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "procurate/error.hpp"

namespace procurate::embed {

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> ids, std::size_t dim, std::vector<float> rows,
                                 bool normalize)
    : ids_(std::move(ids)), dim_(dim), data_(std::move(rows)), normalized_(normalize) {
    if (dim_ == 0) throw FormatError("embedding dimension must be positive");
    if (data_.size() != ids_.size() * dim_) {
        throw FormatError("embedding data holds " + std::to_string(data_.size()) + " floats, expected " +
                          std::to_string(ids_.size() * dim_));
    }
    lookup_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!lookup_.emplace(ids_[i], i).second) throw FormatError("duplicate embedding id '" + ids_[i] + "'");
    }
    if (!normalize) return;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        float* r = data_.data() + i * dim_;
        double sq = 0.0;
        for (std::size_t d = 0; d < dim_; ++d) sq += static_cast<double>(r[d]) * static_cast<double>(r[d]);
        const double norm = std::sqrt(sq);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw FormatError("embedding row " + std::to_string(i) + " ('" + ids_[i] + "') has zero or non-finite norm");
        }
        for (std::size_t d = 0; d < dim_; ++d) r[d] = static_cast<float>(static_cast<double>(r[d]) / norm);
    }
}

std::span<const float> EmbeddingMatrix::row(std::size_t i) const {
    if (i >= ids_.size()) throw Error("embedding row " + std::to_string(i) + " out of range");
    return {data_.data() + i * dim_, dim_};
}

std::optional<std::size_t> EmbeddingMatrix::find(std::string_view id) const {
    auto it = lookup_.find(std::string(id));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

EmbeddingMatrix EmbeddingMatrix::subset(std::span<const std::size_t> rows) const {
    std::vector<std::string> ids;
    std::vector<float> data;
    ids.reserve(rows.size());
    data.reserve(rows.size() * dim_);
    for (std::size_t r : rows) {
        auto v = row(r);
        ids.push_back(ids_[r]);
        data.insert(data.end(), v.begin(), v.end());
    }
    EmbeddingMatrix out(std::move(ids), dim_, std::move(data), false);
    out.normalized_ = normalized_;
    return out;
}

namespace {

std::uint32_t read_u32(const unsigned char* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
           (std::uint32_t(p[3]) << 24);
}

std::uint64_t read_u64(const unsigned char* p) {
    return std::uint64_t(read_u32(p)) | (std::uint64_t(read_u32(p + 4)) << 32);
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v & 0xFFFFFFFFu));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

}  // namespace

std::filesystem::path ids_path_for(const std::filesystem::path& data_path) {
    auto p = data_path;
    p.replace_extension(".ids");
    return p;
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& data_path, const std::filesystem::path& ids_path) {
    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw IoError("cannot open embeddings " + data_path.string());
    unsigned char header[kHeaderBytes];
    if (!in.read(reinterpret_cast<char*>(header), kHeaderBytes)) {
        throw FormatError(data_path.string() + ": truncated header");
    }
    if (std::memcmp(header, kMagic, 4) != 0) throw FormatError(data_path.string() + ": bad magic, expected SSEB");
    const std::uint32_t version = read_u32(header + 4);
    if (version != kVersion) {
        throw FormatError(data_path.string() + ": unsupported version " + std::to_string(version));
    }
    const std::uint32_t dim = read_u32(header + 8);
    const std::uint64_t count = read_u64(header + 12);
    if (dim == 0) throw FormatError(data_path.string() + ": dim is zero");

    const auto file_size = std::filesystem::file_size(data_path);
    const std::uint64_t payload = file_size - kHeaderBytes;
    if (count > payload / 4 / dim || payload != count * dim * 4) {
        throw FormatError(data_path.string() + ": payload holds " + std::to_string(payload) + " bytes, header declares " +
                          std::to_string(count) + " rows of dim " + std::to_string(dim));
    }

    std::vector<float> data(count * dim);
    std::vector<unsigned char> raw(payload);
    if (payload > 0 && !in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(payload))) {
        throw IoError("read failure in " + data_path.string());
    }
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = std::bit_cast<float>(read_u32(raw.data() + 4 * i));

    std::ifstream id_in(ids_path, std::ios::binary);
    if (!id_in) throw IoError("cannot open embedding ids " + ids_path.string());
    std::vector<std::string> ids;
    ids.reserve(count);
    for (std::string line; std::getline(id_in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ids.push_back(std::move(line));
    }
    if (ids.size() != count) {
        throw FormatError(ids_path.string() + ": " + std::to_string(ids.size()) + " ids for " + std::to_string(count) +
                          " rows");
    }
    return EmbeddingMatrix(std::move(ids), dim, std::move(data), true);
}

void write_embeddings(const std::filesystem::path& data_path, const std::filesystem::path& ids_path,
                      std::span<const std::string> ids, std::size_t dim, std::span<const float> rows) {
    if (rows.size() != ids.size() * dim) throw FormatError("row data does not match id count and dim");
    std::string bytes(kMagic, 4);
    put_u32(bytes, kVersion);
    put_u32(bytes, static_cast<std::uint32_t>(dim));
    put_u64(bytes, ids.size());
    bytes.reserve(kHeaderBytes + rows.size() * 4);
    for (float f : rows) put_u32(bytes, std::bit_cast<std::uint32_t>(f));

    std::ofstream out(data_path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        throw IoError("cannot write " + data_path.string());
    }
    std::ofstream id_out(ids_path, std::ios::binary | std::ios::trunc);
    if (!id_out) throw IoError("cannot write " + ids_path.string());
    for (const auto& id : ids) {
        if (id.find('\n') != std::string::npos) throw FormatError("embedding id contains a newline");
        id_out << id << '\n';
    }
    if (!id_out) throw IoError("cannot write " + ids_path.string());
}

namespace {

struct Scored {
    double similarity;
    std::size_t row;
};

template <typename RowRange>
std::vector<NeighborHit> top_k(const EmbeddingMatrix& matrix, std::span<const float> vector, std::size_t k,
                               const RowRange& rows) {
    if (vector.size() != matrix.dim()) {
        throw Error("query dimension " + std::to_string(vector.size()) + " does not match index dimension " +
                    std::to_string(matrix.dim()));
    }
    double qsq = 0.0;
    for (float f : vector) qsq += static_cast<double>(f) * static_cast<double>(f);
    const double qnorm = std::sqrt(qsq);
    if (!(qnorm > 0.0) || !std::isfinite(qnorm)) throw Error("query vector has zero or non-finite norm");

    std::vector<Scored> scored;
    scored.reserve(rows.size());
    for (std::size_t r : rows) {
        const auto row = matrix.row(r);
        double dot = 0.0;
        double rsq = 0.0;
        for (std::size_t d = 0; d < row.size(); ++d) {
            dot += static_cast<double>(vector[d]) * static_cast<double>(row[d]);
            if (!matrix.normalized()) rsq += static_cast<double>(row[d]) * static_cast<double>(row[d]);
        }
        double sim = dot / qnorm;
        if (!matrix.normalized()) sim /= std::sqrt(rsq);
        scored.push_back({std::clamp(sim, -1.0, 1.0), r});
    }

    const auto& ids = matrix.ids();
    auto better = [&](const Scored& a, const Scored& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return ids[a.row] < ids[b.row];
    };
    const std::size_t n = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n), scored.end(), better);

    std::vector<NeighborHit> hits;
    hits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) hits.push_back({ids[scored[i].row], scored[i].similarity});
    return hits;
}

struct AllRows {
    std::size_t count;
    struct iterator {
        std::size_t i;
        std::size_t operator*() const { return i; }
        iterator& operator++() {
            ++i;
            return *this;
        }
        bool operator!=(const iterator& o) const { return i != o.i; }
    };
    std::size_t size() const { return count; }
    iterator begin() const { return {0}; }
    iterator end() const { return {count}; }
};

}  // namespace

std::vector<NeighborHit> query(const EmbeddingMatrix& matrix, std::span<const float> vector, std::size_t k) {
    return top_k(matrix, vector, k, AllRows{matrix.size()});
}

std::vector<NeighborHit> query(const EmbeddingMatrix& matrix, std::span<const float> vector, std::size_t k,
                               std::span<const std::size_t> candidate_rows) {
    return top_k(matrix, vector, k, candidate_rows);
}

}  // namespace procurate::embed
