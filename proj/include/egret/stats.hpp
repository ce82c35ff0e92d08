#pragma once

// Corpus-level term statistics and the conceptual-importance signal CI.
//
// CI measures how distinctive a unit's vocabulary is within the corpus: the
// mean, over the unit's distinct non-stopword terms, of idf(t) normalized by
// the corpus-wide maximum idf. Presence is what counts: repeating a term
// inside a unit never changes its CI.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "egret/corpus.hpp"
#include "egret/lexical.hpp"

namespace egret {

struct CorpusStats {
  std::size_t n_units = 0;
  std::map<std::string, std::uint32_t> df;  // term -> distinct units containing it
  double idf_max = 0.0;

  // Raw idf; terms absent from the table are scored as if df = 1.
  double idf(const std::string& term) const {
    if (n_units == 0) return 0.0;
    const auto it = df.find(term);
    const double d = (it == df.end()) ? 1.0 : static_cast<double>(it->second);
    return std::log(static_cast<double>(n_units) / d);
  }
};

inline CorpusStats build_stats(const Corpus& corpus,
                               const std::unordered_set<std::string>& stopwords) {
  CorpusStats stats;
  stats.n_units = corpus.size();
  for (const EvidenceUnit& u : corpus.units()) {
    std::unordered_set<std::string> seen;
    for (std::string& tok : tokenize(u.text)) {
      if (stopwords.count(tok)) continue;
      if (seen.insert(tok).second) ++stats.df[std::move(tok)];
    }
  }
  for (const auto& [term, d] : stats.df) {
    stats.idf_max = std::max(stats.idf_max, stats.idf(term));
  }
  return stats;
}

// CI in [0, 1]. Zero when the corpus carries no distinctiveness signal
// (idf_max == 0) or the unit has no eligible terms. The distinct-term set is
// ordered so the floating-point accumulation order is fixed.
inline double ci(std::string_view unit_text, const CorpusStats& stats,
                 const std::unordered_set<std::string>& stopwords) {
  if (stats.idf_max <= 0.0) return 0.0;
  std::set<std::string> distinct;
  for (std::string& tok : tokenize(unit_text)) {
    if (!stopwords.count(tok)) distinct.insert(std::move(tok));
  }
  if (distinct.empty()) return 0.0;
  double sum = 0.0;
  for (const std::string& term : distinct) sum += stats.idf(term);
  return sum / static_cast<double>(distinct.size()) / stats.idf_max;
}

}  // namespace egret
