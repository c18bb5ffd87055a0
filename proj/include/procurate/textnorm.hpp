// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace procurate::text {

// Sorted, duplicate-free set of lemmas. Backed by a vector so intersections
// are linear merges.
class TokenSet {
public:
    TokenSet() = default;
    explicit TokenSet(std::vector<std::string> tokens);
    TokenSet(std::initializer_list<std::string> tokens);

    std::size_t size() const noexcept { return tokens_.size(); }
    bool empty() const noexcept { return tokens_.empty(); }
    bool contains(std::string_view token) const;

    auto begin() const noexcept { return tokens_.begin(); }
    auto end() const noexcept { return tokens_.end(); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

    std::size_t intersection_size(const TokenSet& other) const;
    std::size_t union_size(const TokenSet& other) const {
        return size() + other.size() - intersection_size(other);
    }
    bool intersects(const TokenSet& other) const;

    friend bool operator==(const TokenSet&, const TokenSet&) = default;

private:
    std::vector<std::string> tokens_;
};

using WordSet = std::unordered_set<std::string>;

// Reads a word list: UTF-8, one word per line, '#' starts a comment.
// Entries are trimmed and lowercased.
WordSet load_word_list(const std::filesystem::path& path);
WordSet parse_word_list(std::string_view contents);

struct Stoplist {
    WordSet function_words;
    WordSet generic_recipe_words;

    bool contains(std::string_view word) const;

    // Lists shipped under data/stoplists (compiled in).
    static Stoplist defaults();
    static Stoplist load(const std::filesystem::path& function_words_path,
                         const std::filesystem::path& generic_words_path);
};

// Units lexicon shipped under data/stoplists/units.txt.
const WordSet& default_units();

// Lowercased tokens. Splits on anything that is not a letter or digit; a
// hyphen or apostrophe survives only between two alphanumeric characters.
std::vector<std::string> tokenize(std::string_view text);

// Rule-based English lemma for a lowercase token. Unknown shapes come back
// unchanged.
std::string lemmatize(std::string_view token);

bool is_numeral(std::string_view token);

enum class PosTag { kNoun, kVerb, kAdjective, kAdverb, kNumeral, kUnit, kOther };

// Optional part-of-speech backend. When supplied, a token is content iff its
// tag is one of the content classes and it is not on the stoplist.
class PosTagger {
public:
    virtual ~PosTagger() = default;
    // Must return exactly one tag per token.
    virtual std::vector<PosTag> tag(std::span<const std::string> tokens) const = 0;
};

bool is_content_tag(PosTag tag) noexcept;

// Lemmas of content words in text order, duplicates kept.
std::vector<std::string> content_lemmas(std::string_view text, const Stoplist& stoplist);
std::vector<std::string> content_lemmas(std::string_view text, const Stoplist& stoplist,
                                        const PosTagger& tagger);

TokenSet content_words(std::string_view text, const Stoplist& stoplist);
TokenSet content_words(std::string_view text, const Stoplist& stoplist, const PosTagger& tagger);

}  // namespace procurate::text
