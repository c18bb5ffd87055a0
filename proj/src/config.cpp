// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/config.hpp"

#include <cmath>
#include <fstream>
#include <utility>

#include "procurate/error.hpp"

namespace procurate {

using nlohmann::json;

namespace {

void require_unit_interval(double v, const char* field) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ConfigError(std::string(field) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string(field) + " must be positive, got " + std::to_string(v));
    }
}

template <typename T>
T get_as(const json& obj, const std::string& key) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

std::size_t get_count(const json& obj, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError("config field '" + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::string stoplist_echo(const std::filesystem::path& p) { return p.empty() ? "builtin" : p.string(); }

}  // namespace

void PipelineConfig::validate() const {
    require_unit_interval(iou, "iou");
    require_unit_interval(recall, "recall");
    require_unit_interval(val_iou, "val_iou");
    require_unit_interval(sim, "sim");
    require_positive(max_duration_s, "max_duration_s");
    require_positive(merge_max_dur_s, "merge_max_dur_s");
    require_positive(merge_max_gap_s, "merge_max_gap_s");
    if (val_iou < iou) throw ConfigError("val_iou must be >= iou");
    if (workers == 0) throw ConfigError("workers must be at least 1");
}

void PipelineConfig::apply_json(const json& obj) {
    if (!obj.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& item : obj.items()) {
        const std::string& key = item.key();
        if (key == "videos") videos = get_as<std::string>(obj, key);
        else if (key == "recipes") recipes = get_as<std::string>(obj, key);
        else if (key == "step_emb") step_emb = get_as<std::string>(obj, key);
        else if (key == "seg_emb") seg_emb = get_as<std::string>(obj, key);
        else if (key == "out_dir") out_dir = get_as<std::string>(obj, key);
        else if (key == "function_words") function_words = get_as<std::string>(obj, key);
        else if (key == "generic_words") generic_words = get_as<std::string>(obj, key);
        else if (key == "max_duration_s") max_duration_s = get_as<double>(obj, key);
        else if (key == "min_per_category") min_per_category = get_count(obj, key);
        else if (key == "iou") iou = get_as<double>(obj, key);
        else if (key == "recall") recall = get_as<double>(obj, key);
        else if (key == "val_iou") val_iou = get_as<double>(obj, key);
        else if (key == "sim") sim = get_as<double>(obj, key);
        else if (key == "merge_max_dur_s") merge_max_dur_s = get_as<double>(obj, key);
        else if (key == "merge_max_gap_s") merge_max_gap_s = get_as<double>(obj, key);
        else if (key == "pool") pool = swap::parse_pool(get_as<std::string>(obj, key));
        else if (key == "recall_denominator") recall_denominator = sieve::parse_recall_denominator(get_as<std::string>(obj, key));
        else if (key == "strict") strict = get_as<bool>(obj, key);
        else if (key == "workers") workers = get_count(obj, key);
        else throw ConfigError("unknown config field '" + key + "'");
    }
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json obj;
    try {
        obj = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    PipelineConfig cfg;
    cfg.apply_json(obj);
    // Relative paths in a config file are relative to the file itself.
    const auto base = path.parent_path();
    const std::pair<const char*, std::filesystem::path*> paths[] = {
        {"videos", &cfg.videos},   {"recipes", &cfg.recipes},   {"step_emb", &cfg.step_emb},
        {"seg_emb", &cfg.seg_emb}, {"out_dir", &cfg.out_dir}, {"function_words", &cfg.function_words},
        {"generic_words", &cfg.generic_words}};
    for (auto [key, p] : paths) {
        if (obj.contains(key) && !p->empty() && p->is_relative()) *p = base / *p;
    }
    return cfg;
}

json PipelineConfig::echo() const {
    return json{{"max_duration_s", max_duration_s},
                {"min_per_category", min_per_category},
                {"iou", iou},
                {"recall", recall},
                {"val_iou", val_iou},
                {"sim", sim},
                {"merge_max_dur_s", merge_max_dur_s},
                {"merge_max_gap_s", merge_max_gap_s},
                {"pool", swap::to_string(pool)},
                {"recall_denominator", sieve::to_string(recall_denominator)},
                {"strict", strict},
                {"function_words", stoplist_echo(function_words)},
                {"generic_words", stoplist_echo(generic_words)}};
}

}  // namespace procurate
