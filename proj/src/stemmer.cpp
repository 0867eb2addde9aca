// Snowball English (Porter2) stemmer, implemented from the published
// algorithm description. Word regions R1/R2 are fixed after the initial
// y-marking; suffix rules follow longest-match-wins semantics: within a step
// the longest listed suffix that matches is the only one considered, whether
// or not its condition lets the rewrite fire.

#include "surprise/stemmer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace surprise::repr {

namespace {

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_double(std::string_view w) {
    if (w.size() < 2) return false;
    char a = w[w.size() - 2], b = w[w.size() - 1];
    if (a != b) return false;
    return a == 'b' || a == 'd' || a == 'f' || a == 'g' || a == 'm' || a == 'n' || a == 'p' ||
           a == 'r' || a == 't';
}

bool valid_li_ending(char c) {
    return c == 'c' || c == 'd' || c == 'e' || c == 'g' || c == 'h' || c == 'k' || c == 'm' ||
           c == 'n' || c == 'r' || c == 't';
}

bool ends_with(std::string_view w, std::string_view suf) {
    return w.size() >= suf.size() && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

// vowel + non-vowel (not w, x, Y) preceded by a non-vowel, or a vowel at the
// start of the word followed by a non-vowel.
bool ends_in_short_syllable(std::string_view w) {
    std::size_t n = w.size();
    if (n == 2 && is_vowel(w[0]) && !is_vowel(w[1])) return true;
    if (n >= 3) {
        char pre = w[n - 3], v = w[n - 2], c = w[n - 1];
        return !is_vowel(pre) && is_vowel(v) && !is_vowel(c) && c != 'w' && c != 'x' && c != 'Y';
    }
    return false;
}

bool contains_vowel(std::string_view w) {
    return std::any_of(w.begin(), w.end(), is_vowel);
}

struct Ctx {
    std::string w;
    std::size_t r1 = 0;
    std::size_t r2 = 0;

    bool in_r1(std::size_t suffix_len) const { return w.size() - suffix_len >= r1; }
    bool in_r2(std::size_t suffix_len) const { return w.size() - suffix_len >= r2; }
    bool r1_null() const { return r1 >= w.size(); }
};

std::size_t region_after(std::string_view w, std::size_t from) {
    for (std::size_t i = from + 1; i < w.size(); ++i)
        if (!is_vowel(w[i]) && is_vowel(w[i - 1])) return i + 1;
    return w.size();
}

void compute_regions(Ctx& c) {
    bool prefixed = false;
    for (const char* prefix : {"gener", "commun", "arsen"}) {
        std::string_view p(prefix);
        if (c.w.size() >= p.size() && c.w.compare(0, p.size(), p) == 0) {
            c.r1 = p.size();
            prefixed = true;
            break;
        }
    }
    if (!prefixed) c.r1 = region_after(c.w, 0);
    c.r2 = c.r1 < c.w.size() ? region_after(c.w, c.r1) : c.w.size();
}

void step0(Ctx& c) {
    for (std::string_view suf : {"'s'", "'s", "'"}) {
        if (ends_with(c.w, suf)) {
            c.w.resize(c.w.size() - suf.size());
            return;
        }
    }
}

void step1a(Ctx& c) {
    if (ends_with(c.w, "sses")) {
        c.w.resize(c.w.size() - 2);
        return;
    }
    if (ends_with(c.w, "ied") || ends_with(c.w, "ies")) {
        c.w.resize(c.w.size() - (c.w.size() > 4 ? 2 : 1));
        return;
    }
    if (ends_with(c.w, "us") || ends_with(c.w, "ss")) return;
    if (ends_with(c.w, "s")) {
        // delete if a vowel occurs before the letter preceding the s
        for (std::size_t i = 0; i + 2 < c.w.size(); ++i) {
            if (is_vowel(c.w[i])) {
                c.w.pop_back();
                return;
            }
        }
    }
}

void step1b(Ctx& c) {
    for (std::string_view suf : {"eedly", "eed"}) {
        if (ends_with(c.w, suf)) {
            if (c.in_r1(suf.size())) c.w.replace(c.w.size() - suf.size(), suf.size(), "ee");
            return;
        }
    }
    for (std::string_view suf : {"ingly", "edly", "ing", "ed"}) {
        if (!ends_with(c.w, suf)) continue;
        if (!contains_vowel(std::string_view(c.w).substr(0, c.w.size() - suf.size()))) return;
        c.w.resize(c.w.size() - suf.size());
        if (ends_with(c.w, "at") || ends_with(c.w, "bl") || ends_with(c.w, "iz")) {
            c.w += 'e';
        } else if (is_double(c.w)) {
            c.w.pop_back();
        } else if (c.r1_null() && ends_in_short_syllable(c.w)) {
            c.w += 'e';
        }
        return;
    }
}

void step1c(Ctx& c) {
    std::size_t n = c.w.size();
    if (n >= 3 && (c.w[n - 1] == 'y' || c.w[n - 1] == 'Y') && !is_vowel(c.w[n - 2]))
        c.w[n - 1] = 'i';
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// longest matching suffix wins; the rewrite fires only when it lies in R1.
bool apply_longest_in_r1(Ctx& c, std::initializer_list<Rule> rules) {
    const Rule* best = nullptr;
    for (const Rule& r : rules)
        if (ends_with(c.w, r.suffix) && (!best || r.suffix.size() > best->suffix.size()))
            best = &r;
    if (!best) return false;
    if (c.in_r1(best->suffix.size()))
        c.w.replace(c.w.size() - best->suffix.size(), best->suffix.size(), best->replacement);
    return true;
}

void step2(Ctx& c) {
    const Rule* best = nullptr;
    static constexpr std::array<Rule, 24> rules = {{
        {"ization", "ize"}, {"ational", "ate"}, {"fulness", "ful"}, {"ousness", "ous"},
        {"iveness", "ive"}, {"tional", "tion"}, {"biliti", "ble"},  {"lessli", "less"},
        {"entli", "ent"},   {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
        {"ousli", "ous"},   {"iviti", "ive"},   {"fulli", "ful"},   {"enci", "ence"},
        {"anci", "ance"},   {"abli", "able"},   {"izer", "ize"},    {"ator", "ate"},
        {"alli", "al"},     {"bli", "ble"},     {"ogi", "og"},      {"li", ""},
    }};
    for (const Rule& r : rules)
        if (ends_with(c.w, r.suffix) && (!best || r.suffix.size() > best->suffix.size()))
            best = &r;
    if (!best || !c.in_r1(best->suffix.size())) return;
    if (best->suffix == "ogi") {
        if (c.w.size() > 3 && c.w[c.w.size() - 4] == 'l')
            c.w.replace(c.w.size() - 3, 3, "og");
        return;
    }
    if (best->suffix == "li") {
        if (c.w.size() > 2 && valid_li_ending(c.w[c.w.size() - 3])) c.w.resize(c.w.size() - 2);
        return;
    }
    c.w.replace(c.w.size() - best->suffix.size(), best->suffix.size(), best->replacement);
}

void step3(Ctx& c) {
    if (ends_with(c.w, "ational")) {
        if (c.in_r1(7)) c.w.replace(c.w.size() - 7, 7, "ate");
        return;
    }
    if (ends_with(c.w, "tional")) {
        if (c.in_r1(6)) c.w.replace(c.w.size() - 6, 6, "tion");
        return;
    }
    if (ends_with(c.w, "ative")) {
        if (c.in_r1(5) && c.in_r2(5)) c.w.resize(c.w.size() - 5);
        return;
    }
    if (apply_longest_in_r1(c, {{"alize", "al"}, {"icate", "ic"}, {"iciti", "ic"}})) return;
    if (apply_longest_in_r1(c, {{"ical", "ic"}, {"ness", ""}})) return;
    if (ends_with(c.w, "ful")) {
        if (c.in_r1(3)) c.w.resize(c.w.size() - 3);
    }
}

void step4(Ctx& c) {
    static constexpr std::array<std::string_view, 18> sufs = {
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
        "ate",   "iti",  "ous",  "ive",  "ize",  "ion",  "al",  "er",  "ic"};
    std::string_view best;
    for (std::string_view s : sufs)
        if (ends_with(c.w, s) && s.size() > best.size()) best = s;
    if (best.empty() || !c.in_r2(best.size())) return;
    if (best == "ion") {
        char pre = c.w.size() > 3 ? c.w[c.w.size() - 4] : '\0';
        if (pre != 's' && pre != 't') return;
    }
    c.w.resize(c.w.size() - best.size());
}

void step5(Ctx& c) {
    if (ends_with(c.w, "e")) {
        std::string_view stem(c.w.data(), c.w.size() - 1);
        if (c.in_r2(1) || (c.in_r1(1) && !ends_in_short_syllable(stem))) c.w.pop_back();
        return;
    }
    if (ends_with(c.w, "ll") && c.in_r2(1)) c.w.pop_back();
}

struct Special {
    std::string_view word;
    std::string_view stem;
};

constexpr std::array<Special, 18> kSpecial = {{
    {"skis", "ski"},     {"skies", "sky"},   {"dying", "die"},   {"lying", "lie"},
    {"tying", "tie"},    {"idly", "idl"},    {"gently", "gentl"}, {"ugly", "ugli"},
    {"early", "earli"},  {"only", "onli"},   {"singly", "singl"}, {"sky", "sky"},
    {"news", "news"},    {"howe", "howe"},   {"atlas", "atlas"},  {"cosmos", "cosmos"},
    {"bias", "bias"},    {"andes", "andes"},
}};

constexpr std::array<std::string_view, 8> kStopAfter1a = {
    "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"};

}  // namespace

std::string stem_english(std::string_view word) {
    std::string w(word);
    for (char& ch : w) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (w.size() <= 2) return w;

    for (const Special& s : kSpecial)
        if (w == s.word) return std::string(s.stem);

    if (w.front() == '\'') w.erase(0, 1);
    if (w.size() <= 2) return w;

    // mark consonant-usage y as Y
    if (w[0] == 'y') w[0] = 'Y';
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == 'y' && is_vowel(w[i - 1])) w[i] = 'Y';

    Ctx c{std::move(w), 0, 0};
    compute_regions(c);

    step0(c);
    step1a(c);
    for (std::string_view stop : kStopAfter1a) {
        if (c.w == stop) {
            return c.w;
        }
    }
    step1b(c);
    step1c(c);
    step2(c);
    step3(c);
    step4(c);
    step5(c);

    for (char& ch : c.w)
        if (ch == 'Y') ch = 'y';
    return c.w;
}

}  // namespace surprise::repr
