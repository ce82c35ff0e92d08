#pragma once

// The evidence gate: the deterministic go/no-go decision between evidence
// selection and answer assembly. PASS requires ALL of:
//
//   COUNT     |E| >= k_min
//   MEAN_REL  mean lexical relevance over E >= mean_rel_min
//   MEAN_MUE  mean utility score over E >= mean_mue_min
//   ANCHOR    some unit has rel >= tau_rel and sim >= tau_sim
//   PHRASE    if phrase anchoring is on and the query matched a high-risk
//             phrase, some selected unit contains a matched phrase verbatim;
//             vacuously satisfied otherwise
//
// The gate never throws; it fails. Failed checks are reported as reason codes
// in the fixed order above. Means over an empty set are 0.

#include <cstdint>
#include <string>
#include <vector>

#include "egret/corpus.hpp"
#include "egret/lexical.hpp"
#include "egret/select.hpp"

namespace egret {

struct GateConfig {
  std::size_t k_min = 1;
  double tau_rel = 0.30;       // anchor: minimum lexical relevance
  double tau_sim = 0.35;       // anchor: minimum semantic similarity
  double mean_rel_min = 0.60;
  double mean_mue_min = 0.65;
  bool phrase_anchoring = true;

  void validate() const {
    for (double t : {tau_rel, tau_sim, mean_rel_min, mean_mue_min}) {
      if (t < 0.0 || t > 1.0) throw ConfigError("gate thresholds must be in [0, 1]");
    }
  }
};

enum class GateReason { count, mean_rel, mean_mue, anchor, phrase };

inline const char* reason_code(GateReason r) {
  switch (r) {
    case GateReason::count: return "COUNT";
    case GateReason::mean_rel: return "MEAN_REL";
    case GateReason::mean_mue: return "MEAN_MUE";
    case GateReason::anchor: return "ANCHOR";
    case GateReason::phrase: return "PHRASE";
  }
  return "?";
}

// Aggregates the decision inputs. Kept separate from the decision itself so
// externally transcribed statistics can be fed through the same rule.
struct GateStats {
  std::size_t n = 0;
  double mean_rel = 0.0;
  double mean_mue = 0.0;
  double max_sim = 0.0;
  double max_rel = 0.0;
  bool anchor_ok = false;
  bool phrase_applicable = false;  // anchoring on AND query matched a phrase
  bool phrase_found = false;       // some selected unit contains a matched phrase
};

struct GateTrace {
  std::size_t n = 0;
  double max_sim = 0.0;
  double max_rel = 0.0;
  double mean_rel = 0.0;
  double mean_mue = 0.0;
  int anchor_ok = 0;
  int phrase_ok = 0;
  bool pass = false;
  std::vector<GateReason> reasons;  // empty iff pass

  const char* decision() const { return pass ? "PASS" : "FAIL"; }
};

inline GateStats compute_gate_stats(const EvidenceSet& evidence,
                                    const std::vector<std::string>& matched_phrases,
                                    const Corpus& corpus, const GateConfig& config) {
  GateStats s;
  s.n = evidence.selected.size();
  for (const ScoredCandidate& c : evidence.selected) {
    s.mean_rel += c.rel;
    s.mean_mue += c.mue;
    s.max_sim = std::max(s.max_sim, c.sim);
    s.max_rel = std::max(s.max_rel, c.rel);
    if (c.rel >= config.tau_rel && c.sim >= config.tau_sim) s.anchor_ok = true;
  }
  if (s.n > 0) {
    s.mean_rel /= static_cast<double>(s.n);
    s.mean_mue /= static_cast<double>(s.n);
  }
  s.phrase_applicable = config.phrase_anchoring && !matched_phrases.empty();
  if (s.phrase_applicable) {
    for (const ScoredCandidate& c : evidence.selected) {
      for (const std::string& phrase : matched_phrases) {
        if (contains_phrase(corpus.unit(c.unit_id).text, phrase)) {
          s.phrase_found = true;
          break;
        }
      }
      if (s.phrase_found) break;
    }
  }
  return s;
}

inline GateTrace decide_gate(const GateStats& s, const GateConfig& config) {
  GateTrace t;
  t.n = s.n;
  t.max_sim = s.max_sim;
  t.max_rel = s.max_rel;
  t.mean_rel = s.mean_rel;
  t.mean_mue = s.mean_mue;
  t.anchor_ok = s.anchor_ok ? 1 : 0;
  t.phrase_ok = (!s.phrase_applicable || s.phrase_found) ? 1 : 0;

  if (s.n < config.k_min) t.reasons.push_back(GateReason::count);
  if (s.mean_rel < config.mean_rel_min) t.reasons.push_back(GateReason::mean_rel);
  if (s.mean_mue < config.mean_mue_min) t.reasons.push_back(GateReason::mean_mue);
  if (!s.anchor_ok) t.reasons.push_back(GateReason::anchor);
  if (s.phrase_applicable && !s.phrase_found) t.reasons.push_back(GateReason::phrase);
  t.pass = t.reasons.empty();
  return t;
}

inline GateTrace evaluate_gate(const EvidenceSet& evidence,
                               const std::vector<std::string>& matched_phrases,
                               const Corpus& corpus, const GateConfig& config) {
  return decide_gate(compute_gate_stats(evidence, matched_phrases, corpus, config),
                     config);
}

}  // namespace egret
