#pragma once

// File-level ingestion and the on-disk bundle produced by `ingest`:
//
//   <bundle>/corpus.jsonl   one unit per line (unit_id order)
//   <bundle>/index.bin      vector index (see index.hpp)
//   <bundle>/meta.json      bundle version + embedding provider settings
//
// Corpus statistics are derived data and are rebuilt on load.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "egret/corpus.hpp"
#include "egret/embed.hpp"
#include "egret/errors.hpp"
#include "egret/index.hpp"
#include "egret/jsonw.hpp"

namespace egret {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("short write: " + path.string());
}

// Ingests every *.txt file of a directory as one document each, doc_id =
// file stem. Files are taken in sorted name order so ingestion (and thus
// unit_ids) cannot depend on directory enumeration order.
inline void ingest_directory(
    Corpus& corpus, const std::filesystem::path& dir,
    const std::unordered_set<std::string>& abbreviations = default_abbreviation_set()) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    corpus.ingest_document(path.stem().string(), read_file(path), abbreviations);
  }
}

// One JSON-Lines file = one document of record units; the designated field of
// each line becomes one record.
inline void ingest_records_file(Corpus& corpus, const std::filesystem::path& path,
                                const std::string& field = "text") {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open records file: " + path.string());
  std::vector<std::string> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": invalid JSON object");
    }
    if (!j.contains(field) || !j[field].is_string()) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": missing string field '" +
                    field + "'");
    }
    records.push_back(j[field].get<std::string>());
  }
  corpus.ingest_records(path.stem().string(), records);
}

inline constexpr int kBundleVersion = 1;

inline void save_bundle(const std::filesystem::path& dir, const Corpus& corpus,
                        const VectorIndex& index,
                        const EmbeddingProviderConfig& provider) {
  std::filesystem::create_directories(dir);

  std::string jsonl;
  for (const EvidenceUnit& u : corpus.units()) {
    jsonl += "{\"unit_id\":" + std::to_string(u.unit_id);
    jsonl += ",\"doc\":" + json_str(u.doc_id);
    jsonl += ",\"ordinal\":" + std::to_string(u.ordinal);
    jsonl += ",\"kind\":" + json_str(unit_kind_name(u.kind));
    jsonl += ",\"text\":" + json_str(u.text);
    jsonl += "}\n";
  }
  write_file(dir / "corpus.jsonl", jsonl);

  std::string meta = "{\"bundle_version\":" + std::to_string(kBundleVersion);
  meta += ",\"provider\":";
  meta += provider.mode == ProviderMode::local_hash ? "\"local_hash\"" : "\"remote\"";
  meta += ",\"dimension\":" + std::to_string(index.dimension());
  meta += ",\"units\":" + std::to_string(corpus.size());
  meta += "}\n";
  write_file(dir / "meta.json", meta);

  save_index(index, dir / "index.bin");
}

struct Bundle {
  Corpus corpus;
  VectorIndex index;
  EmbeddingProviderConfig provider;
};

inline Bundle load_bundle(const std::filesystem::path& dir) {
  Bundle b;

  const nlohmann::json meta =
      nlohmann::json::parse(read_file(dir / "meta.json"), nullptr, false);
  if (meta.is_discarded() || !meta.is_object()) {
    throw IoError("invalid bundle metadata: " + (dir / "meta.json").string());
  }
  if (meta.value("bundle_version", -1) != kBundleVersion) {
    throw VersionMismatchError(kBundleVersion,
                               static_cast<unsigned>(meta.value("bundle_version", 0)));
  }
  const std::string provider = meta.value("provider", "local_hash");
  b.provider.mode =
      provider == "remote" ? ProviderMode::remote : ProviderMode::local_hash;
  b.provider.dimension = meta.value("dimension", std::size_t{256});

  std::ifstream in(dir / "corpus.jsonl");
  if (!in) throw IoError("cannot open corpus file: " + (dir / "corpus.jsonl").string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw IoError("corpus.jsonl:" + std::to_string(lineno) + ": invalid JSON");
    }
    try {
      EvidenceUnit u;
      u.unit_id = j.at("unit_id").get<std::uint32_t>();
      u.doc_id = j.at("doc").get<std::string>();
      u.ordinal = j.at("ordinal").get<std::uint32_t>();
      u.kind = j.at("kind").get<std::string>() == "record" ? UnitKind::record
                                                           : UnitKind::sentence;
      u.text = j.at("text").get<std::string>();
      b.corpus.restore_unit(u);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("corpus.jsonl:" + std::to_string(lineno) + ": " + e.what());
    }
  }

  b.index = load_index(dir / "index.bin");
  if (b.index.size() != b.corpus.size()) {
    throw IoError("bundle inconsistent: index has " + std::to_string(b.index.size()) +
                  " entries for " + std::to_string(b.corpus.size()) + " units");
  }
  return b;
}

}  // namespace egret
