// egret: evidence-gated retrieval CLI.
//
//   egret ingest --docs <dir> [--records <file.jsonl>] --out <bundle>
//   egret query --index <bundle> --q "<text>" [--json]
//   egret explain --index <bundle> --q "<text>" [--dump-idf]
//   egret sweep --index <bundle> --questions <file> --grid <file> [--json]
//
// Every scoring parameter can come from a flat key=value config file
// (--config); individual flags override single keys.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egret/egret.hpp"
#include "egret/remote.hpp"

namespace {

egret::MueWeights parse_weights(const std::string& triple) {
  egret::MueWeights w;
  if (std::sscanf(triple.c_str(), "%lf,%lf,%lf", &w.lambda, &w.mu, &w.nu) != 3) {
    throw egret::ConfigError("expected --weights l,m,n: '" + triple + "'");
  }
  return w;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw egret::IoError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string_view t = egret::trim(raw);
    if (!t.empty()) lines.emplace_back(t);
  }
  return lines;
}

// Flags shared by query/explain/sweep. Applied on top of the config file,
// which is applied on top of the built-in defaults.
struct ScoringFlags {
  std::string config_file;
  std::string weights;
  std::string stopwords, scaffold, phrases;
  std::string provider, endpoint;
  std::size_t dimension = 0;
  int timeout_ms = -1;
  std::size_t cand_k = 0;
  std::size_t top_k = 0;
  double gamma = -1, delta_dup = -1;
  double tau_rel = -1, tau_sim = -1, mean_rel_min = -1, mean_mue_min = -1;
  std::size_t k_min = 0;
  int fuzzy = -1;             // -1 unset, 0 off, 1 on
  int phrase_anchoring = -1;  // -1 unset
  std::string generator_endpoint;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--config", config_file, "key=value config file");
    cmd.add_option("--weights", weights, "mue weights as l,m,n (default 0.5,0.3,0.2)");
    cmd.add_option("--stopwords", stopwords, "stopword list file (one entry per line)");
    cmd.add_option("--scaffold", scaffold, "query-scaffold list file");
    cmd.add_option("--phrases", phrases, "high-risk phrase list file");
    cmd.add_option("--provider", provider, "embedding provider: local_hash or remote");
    cmd.add_option("--endpoint", endpoint, "remote embedding endpoint URL");
    cmd.add_option("--dim", dimension, "local_hash embedding dimension");
    cmd.add_option("--timeout-ms", timeout_ms, "remote embedding timeout");
    cmd.add_option("--cand-k", cand_k, "candidate pool size (default 30)");
    cmd.add_option("--top-k", top_k, "maximum evidence units (default 6)");
    cmd.add_option("--gamma", gamma, "redundancy penalty weight (default 0.5)");
    cmd.add_option("--delta-dup", delta_dup, "near-duplicate threshold (default 0.9)");
    cmd.add_option("--tau-rel", tau_rel, "anchor relevance threshold (default 0.30)");
    cmd.add_option("--tau-sim", tau_sim, "anchor similarity threshold (default 0.35)");
    cmd.add_option("--mean-rel-min", mean_rel_min, "gate mean relevance threshold");
    cmd.add_option("--mean-mue-min", mean_mue_min, "gate mean utility threshold");
    cmd.add_option("--k-min", k_min, "gate minimum evidence count (default 1)");
    cmd.add_option("--fuzzy", fuzzy, "fuzzy term matching: 0 off, 1 on (default 0)");
    cmd.add_option("--phrase-anchoring", phrase_anchoring,
                   "phrase anchoring check: 0 off, 1 on (default 1)");
    cmd.add_option("--generator-endpoint", generator_endpoint,
                   "external generator URL (default: extractive answers)");
  }

  void apply(egret::PipelineConfig& config) const {
    if (!config_file.empty()) {
      egret::apply_config(egret::parse_config_file(config_file), config);
    }
    if (!weights.empty()) config.weights = parse_weights(weights);
    if (!stopwords.empty()) {
      const auto entries = egret::load_wordlist(stopwords);
      config.lexicon.stopwords = {entries.begin(), entries.end()};
    }
    if (!scaffold.empty()) {
      const auto entries = egret::load_wordlist(scaffold);
      config.lexicon.scaffold = {entries.begin(), entries.end()};
    }
    if (!phrases.empty()) {
      config.phrases = egret::PhraseList::from_entries(egret::load_wordlist(phrases));
    }
    if (!provider.empty()) {
      if (provider == "local_hash") config.provider.mode = egret::ProviderMode::local_hash;
      else if (provider == "remote") config.provider.mode = egret::ProviderMode::remote;
      else throw egret::ConfigError("unknown provider: '" + provider + "'");
    }
    if (!endpoint.empty()) config.provider.endpoint = endpoint;
    if (dimension > 0) config.provider.dimension = dimension;
    if (timeout_ms >= 0) config.provider.timeout_ms = timeout_ms;
    if (cand_k > 0) config.cand_k = cand_k;
    if (top_k > 0) config.due.top_k = top_k;
    if (gamma >= 0) config.due.gamma = gamma;
    if (delta_dup >= 0) config.due.delta_dup = delta_dup;
    if (tau_rel >= 0) config.gate.tau_rel = tau_rel;
    if (tau_sim >= 0) config.gate.tau_sim = tau_sim;
    if (mean_rel_min >= 0) config.gate.mean_rel_min = mean_rel_min;
    if (mean_mue_min >= 0) config.gate.mean_mue_min = mean_mue_min;
    if (k_min > 0) config.gate.k_min = k_min;
    if (fuzzy >= 0) config.fuzzy = fuzzy != 0;
    if (phrase_anchoring >= 0) config.gate.phrase_anchoring = phrase_anchoring != 0;
    if (!generator_endpoint.empty()) {
      config.generator.endpoint = generator_endpoint;
      config.generator.enabled = true;
    }
  }
};

struct LoadedBundle {
  egret::Bundle bundle;
  egret::CorpusStats stats;
  std::unique_ptr<egret::EmbeddingProvider> provider;
};

LoadedBundle open_bundle(const std::string& path, egret::PipelineConfig& config,
                         const ScoringFlags& flags) {
  LoadedBundle lb;
  lb.bundle = egret::load_bundle(path);
  // Bundle metadata fixes the provider unless flags override it.
  if (flags.provider.empty()) config.provider.mode = lb.bundle.provider.mode;
  if (flags.dimension == 0) config.provider.dimension = lb.bundle.provider.dimension;
  lb.stats = egret::build_stats(lb.bundle.corpus, config.lexicon.stopwords);
  lb.provider = egret::make_provider(config.provider);
  return lb;
}

void print_trace_human(const egret::GateTrace& t) {
  std::string reasons;
  for (std::size_t i = 0; i < t.reasons.size(); ++i) {
    if (i) reasons += ", ";
    reasons += egret::reason_code(t.reasons[i]);
  }
  std::cout << "gate: " << t.decision();
  if (!t.pass) std::cout << " (" << reasons << ")";
  std::cout << "\nn: " << t.n << "  mean_rel: " << egret::fmt6(t.mean_rel)
            << "  mean_mue: " << egret::fmt6(t.mean_mue)
            << "  max_sim: " << egret::fmt6(t.max_sim)
            << "  max_rel: " << egret::fmt6(t.max_rel)
            << "  anchor_ok: " << t.anchor_ok << "  phrase_ok: " << t.phrase_ok << "\n";
}

int cmd_query(const std::string& index_path, const std::string& question, bool as_json,
              const ScoringFlags& flags) {
  egret::PipelineConfig config;
  flags.apply(config);
  LoadedBundle lb = open_bundle(index_path, config, flags);

  std::unique_ptr<egret::GeneratorClient> generator;
  if (config.generator.enabled) {
    generator = std::make_unique<egret::HttpGeneratorClient>(config.generator);
  }
  const egret::QueryOutcome outcome =
      egret::run_query(question, lb.bundle.corpus, lb.stats, lb.bundle.index, config,
                       *lb.provider, generator.get());

  if (as_json) {
    std::cout << egret::serialize_outcome(question, config.weights, outcome,
                                          lb.bundle.corpus)
              << "\n";
    return 0;
  }
  print_trace_human(outcome.trace);
  std::cout << "evidence:\n";
  for (const egret::ScoredCandidate& c : outcome.evidence.selected) {
    const egret::EvidenceUnit& u = lb.bundle.corpus.unit(c.unit_id);
    std::cout << "  [" << u.doc_id << ":" << u.ordinal << "] sim=" << egret::fmt6(c.sim)
              << " rel=" << egret::fmt6(c.rel) << " ci=" << egret::fmt6(c.ci)
              << " mue=" << egret::fmt6(c.mue) << " | " << u.text << "\n";
  }
  if (outcome.answer) {
    std::cout << "answer:\n" << *outcome.answer << "\n";
  } else {
    std::cout << "no answer: evidence gate failed\n";
  }
  return 0;
}

int cmd_explain(const std::string& index_path, const std::string& question,
                bool dump_idf, const ScoringFlags& flags) {
  egret::PipelineConfig config;
  flags.apply(config);
  LoadedBundle lb = open_bundle(index_path, config, flags);

  egret::RunDetail detail;
  const egret::QueryOutcome outcome =
      egret::run_query(question, lb.bundle.corpus, lb.stats, lb.bundle.index, config,
                       *lb.provider, nullptr, &detail);

  std::cout << "query: " << question << "\n";
  const egret::QueryAnalysis qa = egret::analyze_query(question, config, *lb.provider);
  std::cout << "terms:";
  for (const std::string& t : qa.terms.terms) std::cout << " " << t;
  std::cout << "\nphrases:";
  for (const std::string& p : qa.matched_phrases) std::cout << " [" << p << "]";
  std::cout << "\ncandidates:\n";
  std::cout << "unit_id\tdoc\tordinal\tsim\trel\tci\tmue\n";
  for (const egret::ScoredCandidate& c : detail.scored) {
    const egret::EvidenceUnit& u = lb.bundle.corpus.unit(c.unit_id);
    std::cout << c.unit_id << "\t" << u.doc_id << "\t" << u.ordinal << "\t"
              << egret::fmt6(c.sim) << "\t" << egret::fmt6(c.rel) << "\t"
              << egret::fmt6(c.ci) << "\t" << egret::fmt6(c.mue) << "\n";
  }
  std::cout << "selection:\n";
  for (const egret::DueStep& s : detail.due_steps) {
    std::cout << "step " << s.step << ":";
    if (!s.suppressed.empty()) {
      std::cout << " suppressed";
      for (std::uint32_t id : s.suppressed) std::cout << " " << id;
      std::cout << ";";
    }
    if (s.picked) {
      std::cout << " picked " << s.chosen << " adjusted=" << egret::fmt6(s.adjusted)
                << " max_sim_to_selected=" << egret::fmt6(s.max_sim_to_selected);
    } else {
      std::cout << " pool exhausted";
    }
    std::cout << "\n";
  }
  print_trace_human(outcome.trace);

  if (dump_idf) {
    std::cout << "idf:\nterm\tdf\tidf\n";
    for (const auto& [term, df] : lb.stats.df) {
      std::cout << term << "\t" << df << "\t" << egret::fmt6(lb.stats.idf(term)) << "\n";
    }
  }
  return 0;
}

int cmd_sweep(const std::string& index_path, const std::string& questions_path,
              const std::string& grid_path, bool as_json, const ScoringFlags& flags) {
  egret::PipelineConfig config;
  flags.apply(config);
  LoadedBundle lb = open_bundle(index_path, config, flags);

  const std::vector<std::string> questions = read_lines(questions_path);
  std::vector<egret::MueWeights> grid;
  for (const std::string& line : read_lines(grid_path)) {
    if (line.front() == '#') continue;
    grid.push_back(parse_weights(line));
  }
  if (grid.empty()) throw egret::ConfigError("weight grid is empty: " + grid_path);

  const std::vector<egret::SweepRow> rows = egret::sweep(
      questions, grid, lb.bundle.corpus, lb.stats, lb.bundle.index, config, *lb.provider);
  std::cout << (as_json ? egret::sweep_json(rows) + "\n" : egret::sweep_tsv(rows));
  return 0;
}

int cmd_ingest(const std::string& docs_dir, const std::vector<std::string>& records,
               const std::string& records_field, const std::string& out_path,
               const std::string& abbrev_path, const ScoringFlags& flags) {
  egret::PipelineConfig config;
  flags.apply(config);

  auto abbreviations = egret::default_abbreviation_set();
  if (!abbrev_path.empty()) {
    const auto entries = egret::load_wordlist(abbrev_path);
    abbreviations = {entries.begin(), entries.end()};
  }

  egret::Corpus corpus;
  if (!docs_dir.empty()) egret::ingest_directory(corpus, docs_dir, abbreviations);
  for (const std::string& path : records) {
    egret::ingest_records_file(corpus, path, records_field);
  }

  const std::unique_ptr<egret::EmbeddingProvider> provider =
      egret::make_provider(config.provider);
  const egret::VectorIndex index = egret::build_index(corpus, *provider);
  egret::save_bundle(out_path, corpus, index, config.provider);
  std::cout << "ingested " << corpus.size() << " units from "
            << corpus.doc_index().size() << " documents; dimension "
            << index.dimension() << "; bundle at " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evidence-gated retrieval pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", egret::kVersion);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "build a corpus bundle from source files");
  std::string docs_dir, out_path, abbrev_path;
  std::string records_field = "text";
  std::vector<std::string> records;
  ingest->add_option("--docs", docs_dir, "directory of *.txt documents");
  ingest->add_option("--records", records, "JSON-Lines record file(s)");
  ingest->add_option("--records-field", records_field,
                     "record field holding the unit text (default: text)");
  ingest->add_option("--abbrev", abbrev_path, "abbreviation list for segmentation");
  ingest->add_option("--out", out_path, "output bundle directory")->required();
  ScoringFlags ingest_flags;
  ingest_flags.add_to(*ingest);

  // query
  auto* query = app.add_subcommand("query", "answer a question or abstain");
  std::string q_index, q_text;
  bool q_json = false;
  query->add_option("--index", q_index, "bundle directory")->required();
  query->add_option("--q", q_text, "query text")->required();
  query->add_flag("--json", q_json, "emit the JSON audit trace");
  ScoringFlags query_flags;
  query_flags.add_to(*query);

  // explain
  auto* explain = app.add_subcommand("explain", "per-candidate signals and selection trace");
  std::string e_index, e_text;
  bool e_idf = false;
  explain->add_option("--index", e_index, "bundle directory")->required();
  explain->add_option("--q", e_text, "query text")->required();
  explain->add_flag("--dump-idf", e_idf, "also dump the df/idf table");
  ScoringFlags explain_flags;
  explain_flags.add_to(*explain);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run a question set over a weight grid");
  std::string s_index, s_questions, s_grid;
  bool s_json = false;
  sweep_cmd->add_option("--index", s_index, "bundle directory")->required();
  sweep_cmd->add_option("--questions", s_questions, "question file, one per line")->required();
  sweep_cmd->add_option("--grid", s_grid, "weight grid file, one l,m,n per line")->required();
  sweep_cmd->add_flag("--json", s_json, "emit rows as JSON");
  ScoringFlags sweep_flags;
  sweep_flags.add_to(*sweep_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      if (docs_dir.empty() && records.empty()) {
        throw egret::ConfigError("ingest needs --docs and/or --records");
      }
      return cmd_ingest(docs_dir, records, records_field, out_path, abbrev_path,
                        ingest_flags);
    }
    if (*query) return cmd_query(q_index, q_text, q_json, query_flags);
    if (*explain) return cmd_explain(e_index, e_text, e_idf, explain_flags);
    if (*sweep_cmd) return cmd_sweep(s_index, s_questions, s_grid, s_json, sweep_flags);
  } catch (const egret::RemoteUnavailableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const egret::GeneratorUnavailableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const egret::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
