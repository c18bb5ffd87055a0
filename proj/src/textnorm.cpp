// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/textnorm.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "procurate/error.hpp"

namespace procurate::text {

namespace detail {
extern const std::string_view kDefaultFunctionWords;
extern const std::string_view kDefaultGenericRecipeWords;
extern const std::string_view kDefaultUnits;
}  // namespace detail

// ─── TokenSet ───────────────────────────────────────────────────────────────

TokenSet::TokenSet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    std::sort(tokens_.begin(), tokens_.end());
    tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
}

TokenSet::TokenSet(std::initializer_list<std::string> tokens)
    : TokenSet(std::vector<std::string>(tokens)) {}

bool TokenSet::contains(std::string_view token) const {
    return std::binary_search(tokens_.begin(), tokens_.end(), token);
}

std::size_t TokenSet::intersection_size(const TokenSet& other) const {
    std::size_t count = 0;
    auto a = tokens_.begin();
    auto b = other.tokens_.begin();
    while (a != tokens_.end() && b != other.tokens_.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            ++count;
            ++a;
            ++b;
        }
    }
    return count;
}

bool TokenSet::intersects(const TokenSet& other) const {
    auto a = tokens_.begin();
    auto b = other.tokens_.begin();
    while (a != tokens_.end() && b != other.tokens_.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            return true;
        }
    }
    return false;
}

// ─── Word lists ─────────────────────────────────────────────────────────────

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

WordSet parse_word_list(std::string_view contents) {
    WordSet words;
    std::size_t pos = 0;
    while (pos <= contents.size()) {
        auto eol = contents.find('\n', pos);
        if (eol == std::string_view::npos) eol = contents.size();
        std::string_view line = contents.substr(pos, eol - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) words.insert(ascii_lower(line));
        pos = eol + 1;
    }
    return words;
}

WordSet load_word_list(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open word list " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_word_list(buf.str());
}

bool Stoplist::contains(std::string_view word) const {
    const std::string key(word);
    return function_words.contains(key) || generic_recipe_words.contains(key);
}

Stoplist Stoplist::defaults() {
    static const Stoplist lists{parse_word_list(detail::kDefaultFunctionWords),
                                parse_word_list(detail::kDefaultGenericRecipeWords)};
    return lists;
}

Stoplist Stoplist::load(const std::filesystem::path& function_words_path,
                        const std::filesystem::path& generic_words_path) {
    return Stoplist{load_word_list(function_words_path), load_word_list(generic_words_path)};
}

const WordSet& default_units() {
    static const WordSet units = parse_word_list(detail::kDefaultUnits);
    return units;
}

// ─── Tokenizer ──────────────────────────────────────────────────────────────

namespace {

enum class CharClass { kAlnum, kJoiner, kSeparator };

// Decodes one code point; invalid sequences yield U+FFFD and consume a byte.
char32_t decode(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    auto cont = [&](std::size_t k) -> int {
        if (i + k >= s.size()) return -1;
        const auto b = static_cast<unsigned char>(s[i + k]);
        return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
    };
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    if ((b0 & 0xE0) == 0xC0) {
        const int c1 = cont(1);
        if (c1 >= 0 && b0 >= 0xC2) {
            i += 2;
            return (char32_t(b0 & 0x1F) << 6) | char32_t(c1);
        }
    } else if ((b0 & 0xF0) == 0xE0) {
        const int c1 = cont(1), c2 = cont(2);
        if (c1 >= 0 && c2 >= 0) {
            const char32_t cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(c1) << 6) | char32_t(c2);
            if (cp >= 0x800 && (cp < 0xD800 || cp > 0xDFFF)) {
                i += 3;
                return cp;
            }
        }
    } else if ((b0 & 0xF8) == 0xF0) {
        const int c1 = cont(1), c2 = cont(2), c3 = cont(3);
        if (c1 >= 0 && c2 >= 0 && c3 >= 0) {
            const char32_t cp = (char32_t(b0 & 0x07) << 18) | (char32_t(c1) << 12) |
                                (char32_t(c2) << 6) | char32_t(c3);
            if (cp >= 0x10000 && cp <= 0x10FFFF) {
                i += 4;
                return cp;
            }
        }
    }
    ++i;
    return 0xFFFD;
}

void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Non-ASCII code points default to letters; the listed blocks are
// punctuation, symbols, spaces, and emoji.
CharClass classify(char32_t cp) {
    if (cp < 0x80) {
        if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9')) {
            return CharClass::kAlnum;
        }
        return cp == '-' || cp == '\'' ? CharClass::kJoiner : CharClass::kSeparator;
    }
    if (cp == 0x2019 || cp == 0x2010 || cp == 0x2011) return CharClass::kJoiner;
    if (cp <= 0xBF) {
        // ª µ º, superscript digits, vulgar fractions
        switch (cp) {
            case 0xAA: case 0xB2: case 0xB3: case 0xB5: case 0xB9: case 0xBA:
            case 0xBC: case 0xBD: case 0xBE:
                return CharClass::kAlnum;
            default:
                return CharClass::kSeparator;
        }
    }
    if (cp == 0xD7 || cp == 0xF7) return CharClass::kSeparator;
    if (cp >= 0x2000 && cp <= 0x2BFF) {
        if ((cp >= 0x2070 && cp <= 0x209F) || (cp >= 0x2150 && cp <= 0x218F)) return CharClass::kAlnum;
        return CharClass::kSeparator;
    }
    if ((cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFE00 && cp <= 0xFE0F) ||
        (cp >= 0xFE30 && cp <= 0xFE4F) || (cp >= 0xFF00 && cp <= 0xFF0F) ||
        (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
        (cp >= 0xFF5B && cp <= 0xFF65) || (cp >= 0x1F000 && cp <= 0x1FAFF) || cp == 0xFFFD ||
        cp == 0xFEFF) {
        return CharClass::kSeparator;
    }
    return CharClass::kAlnum;
}

// Simple case folding for Latin, Greek and Cyrillic.
char32_t fold(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp < 0xC0) return cp;
    if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 32;
    if (cp >= 0x100 && cp <= 0x17F) {
        if (cp == 0x130) return 'i';
        if (cp == 0x178) return 0xFF;
        const bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
        if (odd_upper) return cp % 2 == 1 ? cp + 1 : cp;
        if (cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
        return cp % 2 == 0 ? cp + 1 : cp;
    }
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
    if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
    return cp;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<char32_t> cps;
    cps.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) cps.push_back(decode(text, i));

    std::vector<std::string> tokens;
    std::string current;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const CharClass cls = classify(cps[i]);
        if (cls == CharClass::kAlnum) {
            encode(fold(cps[i]), current);
            continue;
        }
        if (cls == CharClass::kJoiner && !current.empty() && i + 1 < cps.size() &&
            classify(cps[i + 1]) == CharClass::kAlnum) {
            current.push_back(cps[i] == 0x2010 || cps[i] == 0x2011 || cps[i] == '-' ? '-' : '\'');
            continue;
        }
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

bool is_numeral(std::string_view token) {
    // Vulgar fractions: ¼ ½ ¾ and U+2150..U+215E.
    static constexpr std::string_view kFractions[] = {"\u00bc", "\u00bd", "\u00be", "\u2150", "\u2151", "\u2152",
                                                      "\u2153", "\u2154", "\u2155", "\u2156", "\u2157", "\u2158",
                                                      "\u2159", "\u215a", "\u215b", "\u215c", "\u215d", "\u215e"};
    bool digit = false;
    std::size_t i = 0;
    while (i < token.size()) {
        const char c = token[i];
        if (c >= '0' && c <= '9') {
            digit = true;
            ++i;
            continue;
        }
        if (c == '.' || c == ',' || c == '/' || c == '-') {
            ++i;
            continue;
        }
        bool fraction = false;
        for (auto f : kFractions) {
            if (token.substr(i, f.size()) == f) {
                fraction = true;
                digit = true;
                i += f.size();
                break;
            }
        }
        if (!fraction) return false;
    }
    return digit;
}

// ─── Content words ──────────────────────────────────────────────────────────

bool is_content_tag(PosTag tag) noexcept { return tag != PosTag::kOther; }

std::vector<std::string> content_lemmas(std::string_view text, const Stoplist& stoplist) {
    std::vector<std::string> out;
    for (const auto& token : tokenize(text)) {
        if (stoplist.contains(token)) continue;
        std::string lemma = lemmatize(token);
        if (stoplist.contains(lemma)) continue;
        out.push_back(std::move(lemma));
    }
    return out;
}

std::vector<std::string> content_lemmas(std::string_view text, const Stoplist& stoplist,
                                        const PosTagger& tagger) {
    const auto tokens = tokenize(text);
    const auto tags = tagger.tag(tokens);
    if (tags.size() != tokens.size()) throw Error("pos tagger returned a tag count that differs from the token count");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!is_content_tag(tags[i]) || stoplist.contains(tokens[i])) continue;
        std::string lemma = lemmatize(tokens[i]);
        if (stoplist.contains(lemma)) continue;
        out.push_back(std::move(lemma));
    }
    return out;
}

TokenSet content_words(std::string_view text, const Stoplist& stoplist) {
    return TokenSet(content_lemmas(text, stoplist));
}

TokenSet content_words(std::string_view text, const Stoplist& stoplist, const PosTagger& tagger) {
    return TokenSet(content_lemmas(text, stoplist, tagger));
}

}  // namespace procurate::text
