#pragma once

// End-to-end query orchestration:
//
//   query -> embed -> candidate retrieval -> utility scoring -> diverse
//   selection -> evidence gate -> extractive answer or abstention
//
// On gate FAIL the outcome carries the trace and the (rejected) evidence but
// no answer, and no generator is ever invoked. Answers quote selected units
// verbatim with their provenance; this layer never rewrites evidence text.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egret/corpus.hpp"
#include "egret/embed.hpp"
#include "egret/errors.hpp"
#include "egret/gate.hpp"
#include "egret/index.hpp"
#include "egret/jsonw.hpp"
#include "egret/lexical.hpp"
#include "egret/select.hpp"
#include "egret/stats.hpp"

namespace egret {

struct QueryAnalysis {
  std::string raw;
  ContentTermSet terms;
  std::vector<std::string> matched_phrases;
  Vector query_vec;
};

struct GeneratorConfig {
  bool enabled = false;
  std::string endpoint;
  int timeout_ms = 10000;
};

struct PipelineConfig {
  MueWeights weights;
  DueParams due;
  GateConfig gate;
  std::size_t cand_k = 30;
  bool fuzzy = false;
  Lexicon lexicon;
  PhraseList phrases = PhraseList::bundled();
  EmbeddingProviderConfig provider;
  GeneratorConfig generator;

  void validate() const {
    weights.validate();
    due.validate();
    gate.validate();
    if (cand_k < due.top_k) throw ConfigError("cand_k must be >= top_k");
  }
};

struct QueryOutcome {
  GateTrace trace;
  EvidenceSet evidence;
  std::optional<std::string> answer;  // present iff trace.pass
};

// Serialized handoff for an external generator: the query plus the admitted
// units, verbatim, with provenance. Nothing else is ever sent.
class GeneratorClient {
 public:
  virtual ~GeneratorClient() = default;
  virtual std::string generate(const std::string& handoff_json) = 0;
};

inline QueryAnalysis analyze_query(const std::string& query, const PipelineConfig& config,
                                   EmbeddingProvider& provider) {
  QueryAnalysis qa;
  qa.raw = query;
  qa.terms = content_terms(query, config.lexicon);
  qa.matched_phrases = match_phrases(query, config.phrases);
  qa.query_vec = provider.embed(query);
  return qa;
}

// Default answer mode: each selected unit on its own line, prefixed with its
// [doc_id:ordinal] citation, in selection order.
inline std::string assemble_answer(const EvidenceSet& evidence, const Corpus& corpus) {
  std::string out;
  for (const ScoredCandidate& c : evidence.selected) {
    const EvidenceUnit& u = corpus.unit(c.unit_id);
    if (!out.empty()) out += '\n';
    out += "[" + u.doc_id + ":" + std::to_string(u.ordinal) + "] " + u.text;
  }
  return out;
}

inline std::string generator_handoff_json(const std::string& query,
                                          const EvidenceSet& evidence,
                                          const Corpus& corpus) {
  std::string j = "{\"query\":" + json_str(query) + ",\"evidence\":[";
  bool first = true;
  for (const ScoredCandidate& c : evidence.selected) {
    const EvidenceUnit& u = corpus.unit(c.unit_id);
    if (!first) j += ",";
    first = false;
    j += "{\"text\":" + json_str(u.text) + ",\"provenance\":" +
         json_str(u.doc_id + ":" + std::to_string(u.ordinal)) + "}";
  }
  j += "]}";
  return j;
}

struct RunDetail {
  std::vector<ScoredCandidate> scored;  // all candidates, retrieval order
  std::vector<DueStep> due_steps;
};

inline QueryOutcome run_query(const std::string& query, const Corpus& corpus,
                              const CorpusStats& stats, const VectorIndex& index,
                              const PipelineConfig& config, EmbeddingProvider& provider,
                              GeneratorClient* generator = nullptr,
                              RunDetail* detail = nullptr) {
  config.validate();
  const QueryAnalysis qa = analyze_query(query, config, provider);
  const std::vector<Candidate> candidates =
      index.top_candidates(qa.query_vec, config.cand_k);
  const std::vector<ScoredCandidate> scored =
      score_candidates(candidates, qa.terms, corpus, stats, config.lexicon,
                       config.weights, config.fuzzy);
  EvidenceSet evidence = due_select(
      scored, [&](std::uint32_t a, std::uint32_t b) { return index.sim_between(a, b); },
      config.due, detail ? &detail->due_steps : nullptr);
  if (detail) detail->scored = scored;

  QueryOutcome outcome;
  outcome.trace = evaluate_gate(evidence, qa.matched_phrases, corpus, config.gate);
  outcome.evidence = std::move(evidence);
  if (outcome.trace.pass) {
    if (config.generator.enabled) {
      if (!generator) throw GeneratorUnavailableError("no generator client configured");
      outcome.answer =
          generator->generate(generator_handoff_json(query, outcome.evidence, corpus));
    } else {
      outcome.answer = assemble_answer(outcome.evidence, corpus);
    }
  }
  return outcome;
}

inline int retrieval_pct(double max_sim) {
  return static_cast<int>(std::lround(max_sim * 100.0));
}

// Audit trace, stable key order, reals at 6 decimals. FAIL outcomes carry no
// "answer" key at all.
inline std::string serialize_outcome(const std::string& question,
                                     const MueWeights& weights,
                                     const QueryOutcome& outcome, const Corpus& corpus) {
  const GateTrace& t = outcome.trace;
  std::string j = "{";
  j += "\"question\":" + json_str(question);
  j += ",\"weights\":[" + fmt6(weights.lambda) + "," + fmt6(weights.mu) + "," +
       fmt6(weights.nu) + "]";
  j += ",\"n\":" + std::to_string(t.n);
  j += ",\"mean_rel\":" + fmt6(t.mean_rel);
  j += ",\"mean_mue\":" + fmt6(t.mean_mue);
  j += ",\"max_sim\":" + fmt6(t.max_sim);
  j += ",\"max_rel\":" + fmt6(t.max_rel);
  j += ",\"retrieval_pct\":" + std::to_string(retrieval_pct(t.max_sim));
  j += ",\"anchor_ok\":" + std::to_string(t.anchor_ok);
  j += ",\"phrase_ok\":" + std::to_string(t.phrase_ok);
  j += ",\"gate\":" + json_str(t.decision());
  j += ",\"reasons\":[";
  for (std::size_t i = 0; i < t.reasons.size(); ++i) {
    if (i) j += ",";
    j += json_str(reason_code(t.reasons[i]));
  }
  j += "],\"evidence\":[";
  for (std::size_t i = 0; i < outcome.evidence.selected.size(); ++i) {
    const ScoredCandidate& c = outcome.evidence.selected[i];
    const EvidenceUnit& u = corpus.unit(c.unit_id);
    if (i) j += ",";
    j += "{\"doc\":" + json_str(u.doc_id);
    j += ",\"ordinal\":" + std::to_string(u.ordinal);
    j += ",\"text\":" + json_str(u.text);
    j += ",\"sim\":" + fmt6(c.sim);
    j += ",\"rel\":" + fmt6(c.rel);
    j += ",\"ci\":" + fmt6(c.ci);
    j += ",\"mue\":" + fmt6(c.mue);
    j += "}";
  }
  j += "]";
  if (outcome.answer) j += ",\"answer\":" + json_str(*outcome.answer);
  j += "}";
  return j;
}

struct SweepRow {
  std::string question;
  MueWeights weights;
  GateTrace trace;
  std::string error;  // non-empty when this row failed to evaluate

  bool ok() const { return error.empty(); }
};

// One row per (question, weights). Per-question failures (e.g. the embedding
// service going away) mark their rows and the sweep carries on.
inline std::vector<SweepRow> sweep(const std::vector<std::string>& questions,
                                   const std::vector<MueWeights>& grid,
                                   const Corpus& corpus, const CorpusStats& stats,
                                   const VectorIndex& index, const PipelineConfig& base,
                                   EmbeddingProvider& provider) {
  std::vector<SweepRow> rows;
  rows.reserve(questions.size() * grid.size());
  for (const std::string& q : questions) {
    for (const MueWeights& w : grid) {
      SweepRow row;
      row.question = q;
      row.weights = w;
      PipelineConfig config = base;
      config.weights = w;
      try {
        row.trace = run_query(q, corpus, stats, index, config, provider).trace;
      } catch (const Error& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::string sweep_header_tsv() {
  return "question\tweights\tretrieval_pct\tn\tmean_rel\tmean_mue\tmax_sim\tmax_rel\t"
         "anchor_ok\tphrase_ok\tgate";
}

inline std::string sweep_row_tsv(const SweepRow& r) {
  std::string line = r.question + "\t(" + fmt6(r.weights.lambda) + "," +
                     fmt6(r.weights.mu) + "," + fmt6(r.weights.nu) + ")\t";
  if (!r.ok()) {
    line += "-\t-\t-\t-\t-\t-\t-\t-\tERROR: " + r.error;
    return line;
  }
  const GateTrace& t = r.trace;
  line += std::to_string(retrieval_pct(t.max_sim)) + "\t" + std::to_string(t.n) + "\t" +
          fmt6(t.mean_rel) + "\t" + fmt6(t.mean_mue) + "\t" + fmt6(t.max_sim) + "\t" +
          fmt6(t.max_rel) + "\t" + std::to_string(t.anchor_ok) + "\t" +
          std::to_string(t.phrase_ok) + "\t" + t.decision();
  return line;
}

inline std::string sweep_tsv(const std::vector<SweepRow>& rows) {
  std::string out = sweep_header_tsv();
  for (const SweepRow& r : rows) {
    out += '\n';
    out += sweep_row_tsv(r);
  }
  out += '\n';
  return out;
}

inline std::string sweep_json(const std::vector<SweepRow>& rows) {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    if (i) out += ",";
    out += "{\"question\":" + json_str(r.question);
    out += ",\"weights\":[" + fmt6(r.weights.lambda) + "," + fmt6(r.weights.mu) + "," +
           fmt6(r.weights.nu) + "]";
    if (!r.ok()) {
      out += ",\"error\":" + json_str(r.error) + "}";
      continue;
    }
    const GateTrace& t = r.trace;
    out += ",\"retrieval_pct\":" + std::to_string(retrieval_pct(t.max_sim));
    out += ",\"n\":" + std::to_string(t.n);
    out += ",\"mean_rel\":" + fmt6(t.mean_rel);
    out += ",\"mean_mue\":" + fmt6(t.mean_mue);
    out += ",\"max_sim\":" + fmt6(t.max_sim);
    out += ",\"max_rel\":" + fmt6(t.max_rel);
    out += ",\"anchor_ok\":" + std::to_string(t.anchor_ok);
    out += ",\"phrase_ok\":" + std::to_string(t.phrase_ok);
    out += ",\"gate\":" + json_str(t.decision());
    out += "}";
  }
  out += "]";
  return out;
}

}  // namespace egret
