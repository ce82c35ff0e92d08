#pragma once

// Per-unit utility scoring (MUE) and redundancy-controlled greedy selection
// (DUE).
//
// MUE is a fixed convex combination of three bounded signals:
//   mue = lambda * ci + mu * sim + nu * rel
// The weights are configuration constants; nothing here is learned or
// query-adaptive, so identical inputs always score identically.
//
// DUE picks evidence one unit at a time. The first pick is the utility
// argmax. Before each later pick, remaining candidates whose similarity to
// any selected unit reaches delta_dup are suppressed outright (restatements
// add no support); survivors compete on mue - gamma * maxSimToSelected. All
// ties break toward the lower unit_id. Units are never merged or reordered
// once selected.

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "egret/corpus.hpp"
#include "egret/errors.hpp"
#include "egret/index.hpp"
#include "egret/lexical.hpp"
#include "egret/stats.hpp"

namespace egret {

struct MueWeights {
  double lambda = 0.50;  // conceptual importance
  double mu = 0.30;      // semantic similarity
  double nu = 0.20;      // lexical relevance

  double combine(double ci_v, double sim_v, double rel_v) const {
    return lambda * ci_v + mu * sim_v + nu * rel_v;
  }

  void validate() const {
    if (lambda < 0 || mu < 0 || nu < 0) {
      throw ConfigError("mue weights must be non-negative");
    }
    if (std::abs(lambda + mu + nu - 1.0) > 1e-9) {
      throw ConfigError("mue weights must sum to 1");
    }
  }
};

struct ScoredCandidate {
  std::uint32_t unit_id = 0;
  double sim = 0.0;
  double rel = 0.0;
  double ci = 0.0;
  double mue = 0.0;
};

struct DueParams {
  std::size_t top_k = 6;
  double gamma = 0.5;      // redundancy penalty weight
  double delta_dup = 0.9;  // near-duplicate suppression threshold

  void validate() const {
    if (top_k < 1) throw ConfigError("top_k must be >= 1");
    if (gamma < 0) throw ConfigError("gamma must be >= 0");
    if (delta_dup <= 0 || delta_dup > 1) throw ConfigError("delta_dup must be in (0, 1]");
  }
};

struct EvidenceSet {
  std::vector<ScoredCandidate> selected;  // selection order
  bool exhausted = false;  // stopped before top_k for lack of candidates
};

// One step of the greedy loop, recorded for the explain output. A step with
// picked == false means suppression emptied the pool and selection stopped.
struct DueStep {
  std::size_t step = 0;
  bool picked = false;
  std::uint32_t chosen = 0;
  double adjusted = 0.0;
  double max_sim_to_selected = 0.0;
  std::vector<std::uint32_t> suppressed;  // dropped before this pick
};

// Scores each retrieved candidate independently; output order equals input
// order.
inline std::vector<ScoredCandidate> score_candidates(
    const std::vector<Candidate>& candidates, const ContentTermSet& terms,
    const Corpus& corpus, const CorpusStats& stats, const Lexicon& lexicon,
    const MueWeights& weights, bool fuzzy) {
  std::vector<ScoredCandidate> scored;
  scored.reserve(candidates.size());
  for (const Candidate& c : candidates) {
    const EvidenceUnit& unit = corpus.unit(c.unit_id);
    ScoredCandidate s;
    s.unit_id = c.unit_id;
    s.sim = c.sim;
    s.rel = rel(unit.text, terms, fuzzy, lexicon.fuzzy_threshold);
    s.ci = ci(unit.text, stats, lexicon.stopwords);
    s.mue = weights.combine(s.ci, s.sim, s.rel);
    scored.push_back(s);
  }
  return scored;
}

template <class SimFn>
EvidenceSet due_select(const std::vector<ScoredCandidate>& scored, SimFn&& sim_between,
                       const DueParams& params, std::vector<DueStep>* trace = nullptr) {
  params.validate();
  EvidenceSet out;
  std::vector<ScoredCandidate> remaining = scored;

  while (out.selected.size() < params.top_k) {
    std::vector<std::uint32_t> suppressed;
    std::vector<double> max_sim(remaining.size(), 0.0);
    if (!out.selected.empty()) {
      std::vector<ScoredCandidate> survivors;
      std::vector<double> survivor_sim;
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        double m = 0.0;
        for (const ScoredCandidate& sel : out.selected) {
          m = std::max(m, static_cast<double>(sim_between(remaining[i].unit_id, sel.unit_id)));
        }
        if (m >= params.delta_dup) {
          suppressed.push_back(remaining[i].unit_id);
        } else {
          survivors.push_back(remaining[i]);
          survivor_sim.push_back(m);
        }
      }
      remaining = std::move(survivors);
      max_sim = std::move(survivor_sim);
    }

    if (remaining.empty()) {
      out.exhausted = true;
      if (trace && !suppressed.empty()) {
        trace->push_back(
            {out.selected.size() + 1, false, 0, 0.0, 0.0, std::move(suppressed)});
      }
      return out;
    }

    std::size_t best = 0;
    double best_adjusted = remaining[0].mue - params.gamma * max_sim[0];
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      const double adjusted = remaining[i].mue - params.gamma * max_sim[i];
      if (adjusted > best_adjusted ||
          (adjusted == best_adjusted && remaining[i].unit_id < remaining[best].unit_id)) {
        best = i;
        best_adjusted = adjusted;
      }
    }
    if (trace) {
      trace->push_back({out.selected.size() + 1, true, remaining[best].unit_id,
                        best_adjusted, max_sim[best], std::move(suppressed)});
    }
    out.selected.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

}  // namespace egret
