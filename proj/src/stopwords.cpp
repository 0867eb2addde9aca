// Bundled English stopword list. Only pure-alphabetic forms appear because
// the tokenizer splits on non-letters; data/stopwords_en.txt mirrors this
// list for use through the --stopwords flag.

#include "surprise/representations.hpp"

namespace surprise::repr {

namespace {

constexpr const char* kWords[] = {
    "i",       "me",      "my",      "myself",  "we",       "our",      "ours",    "ourselves",
    "you",     "your",    "yours",   "yourself", "yourselves", "he",    "him",     "his",
    "himself", "she",     "her",     "hers",    "herself",  "it",       "its",     "itself",
    "they",    "them",    "their",   "theirs",  "themselves", "what",   "which",   "who",
    "whom",    "this",    "that",    "these",   "those",    "am",       "is",      "are",
    "was",     "were",    "be",      "been",    "being",    "have",     "has",     "had",
    "having",  "do",      "does",    "did",     "doing",    "a",        "an",      "the",
    "and",     "but",     "if",      "or",      "because",  "as",       "until",   "while",
    "of",      "at",      "by",      "for",     "with",     "about",    "against", "between",
    "into",    "through", "during",  "before",  "after",    "above",    "below",   "to",
    "from",    "up",      "down",    "in",      "out",      "on",       "off",     "over",
    "under",   "again",   "further", "then",    "once",     "here",     "there",   "when",
    "where",   "why",     "how",     "all",     "any",      "both",     "each",    "few",
    "more",    "most",    "other",   "some",    "such",     "no",       "nor",     "not",
    "only",    "own",     "same",    "so",      "than",     "too",      "very",    "s",
    "t",       "can",     "will",    "just",    "don",      "should",   "now",     "d",
    "ll",      "m",       "o",       "re",      "ve",       "y",        "ain",     "aren",
    "couldn",  "didn",    "doesn",   "hadn",    "hasn",     "haven",    "isn",     "ma",
    "mightn",  "mustn",   "needn",   "shan",    "shouldn",  "wasn",     "weren",   "won",
    "wouldn",
};

}  // namespace

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words(std::begin(kWords), std::end(kWords));
    return words;
}

}  // namespace surprise::repr
