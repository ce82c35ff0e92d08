#pragma once

// Bundled word lists. These are versioned artifacts: scoring output depends on
// them, so they only change together with a release. Each list can be
// overridden at runtime from a plain text file (one lowercase entry per line).

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "egret/errors.hpp"
#include "egret/text.hpp"

namespace egret {

inline constexpr std::string_view kDefaultStopwords[] = {
    "a",       "about",   "above",   "after",   "again",    "against", "all",
    "am",      "an",      "and",     "any",     "are",      "aren",    "as",
    "at",      "be",      "because", "been",    "before",   "being",   "below",
    "between", "both",    "but",     "by",      "can",      "cannot",  "could",
    "couldn",  "did",     "didn",    "do",      "does",     "doesn",   "doing",
    "don",     "down",    "during",  "each",    "few",      "for",     "from",
    "further", "had",     "hadn",    "has",     "hasn",     "have",    "haven",
    "having",  "he",      "her",     "here",    "hers",     "herself", "him",
    "himself", "his",     "how",     "i",       "if",       "in",      "into",
    "is",      "isn",     "it",      "its",     "itself",   "just",    "me",
    "more",    "most",    "mustn",   "my",      "myself",   "no",      "nor",
    "not",     "now",     "of",      "off",     "on",       "once",    "only",
    "or",      "other",   "ought",   "our",     "ours",     "ourselves",
    "out",     "over",    "own",     "same",    "shan",     "she",     "should",
    "shouldn", "so",      "some",    "such",    "than",     "that",    "the",
    "their",   "theirs",  "them",    "themselves",          "then",    "there",
    "these",   "they",    "this",    "those",   "through",  "to",      "too",
    "under",   "until",   "up",      "very",    "was",      "wasn",    "we",
    "were",    "weren",   "what",    "when",    "where",    "which",   "while",
    "who",     "whom",    "why",     "will",    "with",     "won",     "would",
    "wouldn",  "you",     "your",    "yours",   "yourself", "yourselves",
};

// Query-scaffold words: tokens that frame a question without carrying content.
inline constexpr std::string_view kDefaultScaffold[] = {
    "define", "explain", "describe", "what", "who",   "when",  "where",
    "why",    "how",     "does",     "do",   "under", "about", "information",
};

// High-risk phrases checked by the evidence gate (each entry has >= 2 tokens).
inline constexpr std::string_view kDefaultPhrases[] = {
    "fourteenth amendment", "equal protection", "due process", "habeas corpus",
    "human rights",         "natural rights",   "civil rights",
};

// Abbreviations whose trailing period never ends a sentence.
inline constexpr std::string_view kDefaultAbbreviations[] = {
    "u.s.",  "u.k.",  "u.n.",  "e.g.",   "i.e.",  "etc.",  "vs.",   "v.",
    "cf.",   "al.",   "mr.",   "mrs.",   "ms.",   "dr.",   "prof.", "rev.",
    "hon.",  "gen.",  "sen.",  "rep.",   "gov.",  "st.",   "mt.",   "no.",
    "nos.",  "art.",  "arts.", "sec.",   "secs.", "amend.", "approx.",
    "dept.", "div.",  "est.",  "fig.",   "figs.", "vol.",  "vols.", "ch.",
    "chs.",  "pp.",   "p.",    "para.",  "jan.",  "feb.",  "mar.",  "apr.",
    "jun.",  "jul.",  "aug.",  "sep.",   "sept.", "oct.",  "nov.",  "dec.",
};

inline std::vector<std::string> load_wordlist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open word list: " + path.string());
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    entries.push_back(lowercase(t));
  }
  return entries;
}

template <std::size_t N>
std::unordered_set<std::string> to_set(const std::string_view (&arr)[N]) {
  std::unordered_set<std::string> s;
  s.reserve(N);
  for (std::string_view e : arr) s.emplace(e);
  return s;
}

inline const std::unordered_set<std::string>& default_stopword_set() {
  static const std::unordered_set<std::string> s = to_set(kDefaultStopwords);
  return s;
}

inline const std::unordered_set<std::string>& default_scaffold_set() {
  static const std::unordered_set<std::string> s = to_set(kDefaultScaffold);
  return s;
}

inline const std::unordered_set<std::string>& default_abbreviation_set() {
  static const std::unordered_set<std::string> s = to_set(kDefaultAbbreviations);
  return s;
}

}  // namespace egret
