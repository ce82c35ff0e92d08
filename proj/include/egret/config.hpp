#pragma once

// Flat key = value configuration files. Every key maps to exactly one CLI
// flag; the CLI applies the file first and flags on top, so a run can be
// reproduced from the file alone.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>

#include "egret/errors.hpp"
#include "egret/pipeline.hpp"
#include "egret/text.hpp"
#include "egret/wordlists.hpp"

namespace egret {

inline std::map<std::string, std::string> parse_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key(trim(s.substr(0, eq)));
    const std::string value(trim(s.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": empty key");
    }
    kv[key] = value;
  }
  return kv;
}

namespace detail {

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  }
}

inline std::size_t to_size(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
    throw ConfigError("key '" + key + "': not a non-negative integer: '" + v + "'");
  }
  return static_cast<std::size_t>(d);
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected on/off: '" + v + "'");
}

}  // namespace detail

// Applies parsed keys onto a config. Unknown keys are errors: a typo in a
// reproducibility artifact must not pass silently.
inline void apply_config(const std::map<std::string, std::string>& kv,
                         PipelineConfig& config) {
  using detail::to_bool;
  using detail::to_double;
  using detail::to_size;
  for (const auto& [key, value] : kv) {
    if (key == "lambda") config.weights.lambda = to_double(key, value);
    else if (key == "mu") config.weights.mu = to_double(key, value);
    else if (key == "nu") config.weights.nu = to_double(key, value);
    else if (key == "top_k") config.due.top_k = to_size(key, value);
    else if (key == "gamma") config.due.gamma = to_double(key, value);
    else if (key == "delta_dup") config.due.delta_dup = to_double(key, value);
    else if (key == "cand_k") config.cand_k = to_size(key, value);
    else if (key == "fuzzy") config.fuzzy = to_bool(key, value);
    else if (key == "fuzzy_threshold") config.lexicon.fuzzy_threshold = to_double(key, value);
    else if (key == "min_term_len") config.lexicon.min_term_len = to_size(key, value);
    else if (key == "k_min") config.gate.k_min = to_size(key, value);
    else if (key == "tau_rel") config.gate.tau_rel = to_double(key, value);
    else if (key == "tau_sim") config.gate.tau_sim = to_double(key, value);
    else if (key == "mean_rel_min") config.gate.mean_rel_min = to_double(key, value);
    else if (key == "mean_mue_min") config.gate.mean_mue_min = to_double(key, value);
    else if (key == "phrase_anchoring") config.gate.phrase_anchoring = to_bool(key, value);
    else if (key == "stopwords") {
      const auto entries = load_wordlist(value);
      config.lexicon.stopwords.clear();
      config.lexicon.stopwords.insert(entries.begin(), entries.end());
    } else if (key == "scaffold") {
      const auto entries = load_wordlist(value);
      config.lexicon.scaffold.clear();
      config.lexicon.scaffold.insert(entries.begin(), entries.end());
    } else if (key == "phrases") {
      config.phrases = PhraseList::from_entries(load_wordlist(value));
    } else if (key == "provider") {
      if (value == "local_hash") config.provider.mode = ProviderMode::local_hash;
      else if (value == "remote") config.provider.mode = ProviderMode::remote;
      else throw ConfigError("key 'provider': expected local_hash or remote: '" + value + "'");
    } else if (key == "dimension") {
      config.provider.dimension = to_size(key, value);
    } else if (key == "endpoint") {
      config.provider.endpoint = value;
    } else if (key == "timeout_ms") {
      config.provider.timeout_ms = static_cast<int>(to_size(key, value));
    } else if (key == "generator_endpoint") {
      config.generator.endpoint = value;
      config.generator.enabled = !value.empty();
    } else if (key == "generator_timeout_ms") {
      config.generator.timeout_ms = static_cast<int>(to_size(key, value));
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
}

}  // namespace egret
