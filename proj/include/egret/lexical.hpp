#pragma once

// Deterministic tokenization, query content-term extraction, lexical coverage
// scoring, and high-risk phrase matching. Everything here is a pure function
// of its inputs plus the configured word lists.

#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "egret/errors.hpp"
#include "egret/text.hpp"
#include "egret/wordlists.hpp"

namespace egret {

// Tokens are maximal runs of ASCII letters/digits, lowercased. Punctuation and
// any non-ASCII bytes separate tokens; multilingual tokenization is out of
// scope.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (is_alnum(c)) {
      cur.push_back(to_lower_ascii(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

struct ContentTermSet {
  std::set<std::string> terms;  // ordered for deterministic iteration
  std::string source_query;
};

// Tokenization + list configuration shared by query analysis and corpus
// statistics.
struct Lexicon {
  std::unordered_set<std::string> stopwords = default_stopword_set();
  std::unordered_set<std::string> scaffold = default_scaffold_set();
  std::size_t min_term_len = 3;
  double fuzzy_threshold = 0.85;
};

// Content-bearing tokens of a query: everything except stopwords, question
// scaffolding, and very short tokens. An empty result is legal; downstream
// scoring treats it as zero lexical coverage.
inline ContentTermSet content_terms(std::string_view query, const Lexicon& lex) {
  ContentTermSet out;
  out.source_query.assign(query);
  for (auto& tok : tokenize(query)) {
    if (tok.size() < lex.min_term_len) continue;
    if (lex.stopwords.count(tok) || lex.scaffold.count(tok)) continue;
    out.terms.insert(std::move(tok));
  }
  return out;
}

// Fraction of content terms covered by the unit's tokens. A term counts as
// covered on an exact token match, or (fuzzy enabled) when some unit token is
// within the edit-similarity threshold. Coverage is set-based: repeating a
// covered term inside the unit changes nothing.
inline double rel(std::string_view unit_text, const ContentTermSet& terms, bool fuzzy,
                  double fuzzy_threshold = 0.85) {
  if (terms.terms.empty()) return 0.0;
  const std::vector<std::string> tokens = tokenize(unit_text);
  std::unordered_set<std::string_view> token_set(tokens.begin(), tokens.end());
  std::size_t covered = 0;
  for (const std::string& term : terms.terms) {
    if (token_set.count(term)) {
      ++covered;
      continue;
    }
    if (fuzzy) {
      for (const std::string& tok : tokens) {
        if (edit_similarity(term, tok) >= fuzzy_threshold) {
          ++covered;
          break;
        }
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(terms.terms.size());
}

struct PhraseList {
  std::vector<std::string> phrases;  // lowercase, each >= 2 tokens, fixed order

  static PhraseList bundled() {
    PhraseList list;
    for (std::string_view p : kDefaultPhrases) list.phrases.emplace_back(p);
    return list;
  }

  static PhraseList from_entries(std::vector<std::string> entries) {
    for (const std::string& p : entries) {
      if (tokenize(p).size() < 2) {
        throw ConfigError("phrase must have at least two tokens: '" + p + "'");
      }
    }
    PhraseList list;
    list.phrases = std::move(entries);
    return list;
  }
};

namespace detail {

inline bool token_subsequence(const std::vector<std::string>& haystack,
                              const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool all = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (haystack[i + j] != needle[j]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace detail

// Case-insensitive whole-token-sequence containment, in list order.
inline std::vector<std::string> match_phrases(std::string_view query,
                                              const PhraseList& list) {
  const std::vector<std::string> query_tokens = tokenize(query);
  std::vector<std::string> matched;
  for (const std::string& phrase : list.phrases) {
    if (detail::token_subsequence(query_tokens, tokenize(phrase))) {
      matched.push_back(phrase);
    }
  }
  return matched;
}

inline bool contains_phrase(std::string_view text, std::string_view phrase) {
  return detail::token_subsequence(tokenize(text), tokenize(std::string(phrase)));
}

}  // namespace egret
