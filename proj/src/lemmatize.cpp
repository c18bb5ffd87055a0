// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

// Suffix-stripping lemmatizer for English cooking text. Covers regular
// plural nouns and -s/-ed/-ing verb inflections; irregular forms live in
// the exception table. There is no dictionary, so whether a stripped verb
// stem takes a silent 'e' is decided from its spelling.

#include "procurate/textnorm.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace procurate::text {
namespace {

const std::unordered_map<std::string_view, std::string_view>& irregular() {
    static const std::unordered_map<std::string_view, std::string_view> table{
        // be / have / do / go
        {"is", "be"}, {"are", "be"}, {"was", "be"}, {"were", "be"}, {"been", "be"},
        {"being", "be"}, {"am", "be"}, {"has", "have"}, {"had", "have"}, {"having", "have"},
        {"does", "do"}, {"did", "do"}, {"done", "do"}, {"doing", "do"}, {"goes", "go"},
        {"went", "go"}, {"gone", "go"},
        // strong verbs common in recipes
        {"ate", "eat"}, {"eaten", "eat"}, {"took", "take"}, {"taken", "take"},
        {"made", "make"}, {"put", "put"}, {"cut", "cut"}, {"set", "set"}, {"let", "let"},
        {"left", "leave"}, {"kept", "keep"}, {"held", "hold"}, {"got", "get"},
        {"gotten", "get"}, {"froze", "freeze"}, {"frozen", "freeze"}, {"beaten", "beat"},
        {"ground", "grind"}, {"drank", "drink"}, {"drunk", "drink"}, {"brought", "bring"},
        {"bought", "buy"}, {"thought", "think"}, {"fell", "fall"}, {"fallen", "fall"},
        {"rose", "rise"}, {"risen", "rise"}, {"shook", "shake"}, {"shaken", "shake"},
        {"chose", "choose"}, {"chosen", "choose"}, {"broke", "break"}, {"broken", "break"},
        {"ran", "run"}, {"began", "begin"}, {"begun", "begin"}, {"stuck", "stick"},
        {"spun", "spin"}, {"threw", "throw"}, {"thrown", "throw"}, {"wrote", "write"},
        {"written", "write"}, {"slid", "slide"}, {"split", "split"}, {"spread", "spread"},
        {"fed", "feed"}, {"gave", "give"}, {"given", "give"}, {"saw", "see"}, {"seen", "see"},
        {"said", "say"}, {"told", "tell"}, {"found", "find"}, {"came", "come"},
        {"became", "become"}, {"sat", "sit"}, {"stood", "stand"}, {"hung", "hang"},
        {"laid", "lay"}, {"paid", "pay"}, {"sold", "sell"}, {"felt", "feel"},
        {"meant", "mean"}, {"knew", "know"}, {"known", "know"}, {"grew", "grow"},
        {"grown", "grow"}, {"blew", "blow"}, {"blown", "blow"}, {"bit", "bite"},
        {"bitten", "bite"}, {"hid", "hide"}, {"hidden", "hide"}, {"swam", "swim"},
        {"dug", "dig"}, {"won", "win"}, {"lost", "lose"}, {"sent", "send"}, {"spent", "spend"},
        {"built", "build"}, {"lent", "lend"}, {"bent", "bend"}, {"burnt", "burn"},
        {"dealt", "deal"}, {"leapt", "leap"}, {"slept", "sleep"}, {"swept", "sweep"},
        {"wept", "weep"}, {"caught", "catch"}, {"taught", "teach"}, {"sought", "seek"},
        {"fought", "fight"}, {"heard", "hear"}, {"understood", "understand"},
        // spelling patterns the suffix rules get wrong
        {"freed", "free"}, {"agreed", "agree"}, {"pureed", "puree"}, {"sauteed", "saute"},
        {"flambeed", "flambe"}, {"dyed", "dye"}, {"dyes", "dye"}, {"dyeing", "dye"},
        {"eyed", "eye"}, {"eyeing", "eye"}, {"hoed", "hoe"}, {"hoeing", "hoe"}, {"toed", "toe"},
        {"tied", "tie"}, {"tying", "tie"}, {"died", "die"}, {"dying", "die"}, {"lied", "lie"},
        {"lying", "lie"}, {"changed", "change"}, {"changing", "change"},
        {"arranged", "arrange"}, {"arranging", "arrange"}, {"exchanged", "exchange"},
        {"exchanging", "exchange"}, {"plunged", "plunge"}, {"plunging", "plunge"},
        {"sponged", "sponge"}, {"sponging", "sponge"}, {"singed", "singe"},
        {"singeing", "singe"}, {"hinged", "hinge"}, {"lunged", "lunge"}, {"ranged", "range"},
        {"ranging", "range"}, {"challenged", "challenge"}, {"challenging", "challenge"},
        {"tasted", "taste"}, {"tasting", "taste"}, {"pasted", "paste"}, {"pasting", "paste"},
        {"wasted", "waste"}, {"wasting", "waste"}, {"basted", "baste"}, {"basting", "baste"},
        {"bathed", "bathe"}, {"bathing", "bathe"}, {"breathed", "breathe"},
        {"breathing", "breathe"}, {"soothed", "soothe"}, {"clothed", "clothe"},
        // nouns
        {"leaves", "leaf"}, {"knives", "knife"}, {"halves", "half"}, {"loaves", "loaf"},
        {"shelves", "shelf"}, {"wolves", "wolf"}, {"calves", "calf"}, {"wives", "wife"},
        {"lives", "life"}, {"selves", "self"}, {"thieves", "thief"}, {"scarves", "scarf"},
        {"children", "child"}, {"men", "man"}, {"women", "woman"}, {"feet", "foot"},
        {"teeth", "tooth"}, {"mice", "mouse"}, {"geese", "goose"}, {"oxen", "ox"},
        {"cookies", "cookie"}, {"brownies", "brownie"}, {"smoothies", "smoothie"},
        {"veggies", "veggie"}, {"calories", "calorie"}, {"movies", "movie"},
        {"goodies", "goodie"}, {"zombies", "zombie"}, {"hoagies", "hoagie"},
        {"quiches", "quiche"}, {"ganaches", "ganache"}, {"headaches", "headache"},
        {"caches", "cache"}, {"niches", "niche"}, {"cliches", "cliche"},
        {"shoes", "shoe"}, {"toes", "toe"}, {"hoes", "hoe"}, {"canoes", "canoe"},
        {"oboes", "oboe"}, {"avocadoes", "avocado"}, {"beeves", "beef"}, {"spatulae", "spatula"},
        {"zucchinis", "zucchini"}, {"blent", "blend"}, {"quoted", "quote"}, {"quoting", "quote"},
        {"sauted", "saute"}, {"sauteed", "saute"}, {"sauteing", "saute"}, {"puréed", "puree"},
        {"puréeing", "puree"}, {"purées", "puree"}, {"pureed", "puree"}, {"pureeing", "puree"},
    };
    return table;
}

// Tokens that look inflected but are base forms.
const std::unordered_set<std::string_view>& invariant() {
    static const std::unordered_set<std::string_view> words{
        "molasses", "series", "species", "swiss", "couscous", "hummus", "asparagus",
        "citrus", "octopus", "lens", "always", "perhaps", "whereas", "towards",
        "afterwards", "sometimes", "anyways", "yes", "this", "its", "his", "hers", "ours",
        "yours", "theirs", "less", "unless", "across", "christmas", "pancreas", "chaos",
        "bias", "atlas", "canvas", "news", "gas", "plus", "thus", "bus", "us", "was",
        "hundred", "sacred", "naked", "wicked", "kindred", "rugged", "ragged", "jagged",
        "beloved", "bread", "shred", "sled", "seed", "need", "speed", "weed", "breed",
        "steed", "tweed", "proceed", "succeed", "exceed", "bleed", "feed", "heed",
        "pudding", "dumpling", "herring", "sterling", "shilling", "dressing", "stuffing",
        "filling", "frosting", "icing", "morning", "evening", "nothing",
        "something", "anything", "everything", "during", "ceiling", "wedding", "king",
        "ring", "thing", "string", "spring", "sing", "bring", "wing", "sling", "swing",
        "sting", "cling", "ding", "ping", "bling",
    };
    return words;
}

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// 'y' counts as a vowel after a consonant ("dry", "fry").
bool is_vowel_at(std::string_view w, std::size_t i) {
    if (is_vowel(w[i])) return true;
    return w[i] == 'y' && i > 0 && !is_vowel(w[i - 1]);
}

bool is_consonant_at(std::string_view w, std::size_t i) { return !is_vowel_at(w, i); }

bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

bool has_vowel(std::string_view w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (is_vowel_at(w, i)) return true;
    }
    return false;
}

std::size_t vowel_groups(std::string_view w) {
    std::size_t groups = 0;
    bool in_group = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const bool v = is_vowel_at(w, i);
        if (v && !in_group) ++groups;
        in_group = v;
    }
    return groups;
}

// consonant, single vowel, consonant at the end of w
bool ends_cvc(std::string_view w) {
    const std::size_t n = w.size();
    if (n < 3) return false;
    return is_consonant_at(w, n - 3) && is_vowel_at(w, n - 2) && is_consonant_at(w, n - 1);
}

// Decides whether a stem left after removing -ed/-ing needs its final 'e'
// back ("bak" -> "bake", "heat" stays).
std::string restore_e(std::string stem) {
    const std::size_t n = stem.size();
    if (n == 0) return stem;
    const char last = stem[n - 1];

    // Doubled final consonant: "chopp" -> "chop", but not "add" or "grill".
    if (n >= 3 && last == stem[n - 2] && is_consonant_at(stem, n - 1) &&
        last != 'l' && last != 's' && last != 'z' && last != 'f') {
        std::string_view undoubled(stem.data(), n - 1);
        if (ends_cvc(undoubled)) return std::string(undoubled);
        return stem;
    }

    if (last == 'u' || last == 'v') return stem + 'e';
    if (last == 'c' || last == 'z') return last == 'z' && n >= 2 && stem[n - 2] == 'z' ? stem : stem + 'e';
    if (last == 's') return n >= 2 && stem[n - 2] == 's' ? stem : stem + 'e';
    if (last == 'g') {  // merg, damag; not bang, long
        return n >= 2 && (stem[n - 2] == 'n' || stem[n - 2] == 'g') ? stem : stem + 'e';
    }
    if (n < 2) return stem;
    const char prev = stem[n - 2];

    // sprinkl, drizzl, crumbl, but not curl/swirl/boil/peel
    if (last == 'l' && is_consonant_at(stem, n - 2) && prev != 'l' && prev != 'r' && prev != 'w') {
        return stem + 'e';
    }
    if (!ends_cvc(stem) || last == 'w' || last == 'x' || last == 'y') return stem;

    const bool single_syllable = vowel_groups(stem) == 1;
    if (single_syllable) return stem + 'e';

    // Multi-syllable consonant-vowel-consonant endings.
    switch (last) {
        case 't':  // marinat, diluting; not visit/limit/pivot
            return prev == 'a' || prev == 'u' ? stem + 'e' : stem;
        case 'n':  // combin, determin; not season, open
            return prev == 'i' ? stem + 'e' : stem;
        case 'r':  // measur, prepar, desir; not simmer, cover, flavor
            return prev == 'u' || prev == 'a' || prev == 'i' ? stem + 'e' : stem;
        case 'd':  // divid, includ, decid
            return stem + 'e';
        case 'k':
        case 'p':
        case 'm':
            return prev == 'e' || prev == 'o' ? stem : stem + 'e';
        default:
            return stem;
    }
}

std::string strip_plural(std::string_view w) {
    const std::size_t n = w.size();
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return std::string(w);
    if (ends_with(w, "ies")) {
        if (n <= 4) return std::string(w.substr(0, n - 1));  // pies -> pie
        return std::string(w.substr(0, n - 3)) + 'y';
    }
    if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "zzes") ||
        ends_with(w, "ches") || ends_with(w, "shes")) {
        return std::string(w.substr(0, n - 2));
    }
    if (ends_with(w, "oes") && n > 5) return std::string(w.substr(0, n - 2));
    return std::string(w.substr(0, n - 1));
}

std::string lemmatize_word(std::string_view w) {
    if (w.size() <= 3) {
        auto it = irregular().find(w);
        return it != irregular().end() ? std::string(it->second) : std::string(w);
    }
    if (auto it = irregular().find(w); it != irregular().end()) return std::string(it->second);
    if (invariant().contains(w)) return std::string(w);

    const std::size_t n = w.size();
    if (ends_with(w, "ing")) {
        std::string_view stem = w.substr(0, n - 3);
        if (stem.size() >= 2 && has_vowel(stem)) return restore_e(std::string(stem));
        return std::string(w);
    }
    if (ends_with(w, "ied") && n > 4) return std::string(w.substr(0, n - 3)) + 'y';
    if (ends_with(w, "ed")) {
        std::string_view stem = w.substr(0, n - 2);
        if (stem.size() >= 2 && has_vowel(stem) && stem.back() != 'e') {
            return restore_e(std::string(stem));
        }
        return std::string(w);
    }
    if (w.back() == 's' && !ends_with(w, "'s")) return strip_plural(w);
    return std::string(w);
}

bool is_ascii_word(std::string_view w) {
    return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || c == '\'';
    });
}

}  // namespace

std::string lemmatize(std::string_view token) {
    // Possessive: "chef's" -> "chef".
    if (token.size() > 2 && ends_with(token, "'s")) token.remove_suffix(2);

    // Only the last component of a hyphenated compound inflects.
    const auto hyphen = token.rfind('-');
    const std::string_view head = hyphen == std::string_view::npos ? std::string_view{} : token.substr(0, hyphen + 1);
    const std::string_view tail = hyphen == std::string_view::npos ? token : token.substr(hyphen + 1);
    if (auto it = irregular().find(tail); it != irregular().end()) return std::string(head) + std::string(it->second);
    if (!is_ascii_word(tail) || tail.find('\'') != std::string_view::npos) return std::string(token);
    return std::string(head) + lemmatize_word(tail);
}

}  // namespace procurate::text
