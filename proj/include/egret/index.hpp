#pragma once

// Exact top-k retrieval by clamped cosine over unit embeddings. This is the
// candidate-generation stage only: an exhaustive inner-product scan with a
// total tie order (descending similarity, then ascending unit_id), so results
// are fully deterministic. No approximate structures.
//
// Persistence is little-endian binary:
//   "EGIX" | u32 version | u32 dimension | u64 count
//   count x { u32 unit_id | dimension x f32 }
//   u64 fnv1a64 checksum over all preceding bytes

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "egret/corpus.hpp"
#include "egret/embed.hpp"
#include "egret/errors.hpp"
#include "egret/hash.hpp"

namespace egret {

struct Candidate {
  std::uint32_t unit_id = 0;
  double sim = 0.0;
};

struct IndexEntry {
  std::uint32_t unit_id = 0;
  Vector vec;
};

class VectorIndex {
 public:
  VectorIndex() = default;
  explicit VectorIndex(std::size_t dimension) : dim_(dimension) {}

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<IndexEntry>& entries() const { return entries_; }

  // Entries must be appended in ascending unit_id order.
  void add(std::uint32_t unit_id, Vector vec) {
    if (vec.size() != dim_) throw DimensionMismatchError(dim_, vec.size());
    if (!entries_.empty() && unit_id <= entries_.back().unit_id) {
      throw IoError("index entries must be in ascending unit_id order");
    }
    entries_.push_back({unit_id, std::move(vec)});
  }

  const Vector& vector_of(std::uint32_t unit_id) const {
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), unit_id,
        [](const IndexEntry& e, std::uint32_t id) { return e.unit_id < id; });
    if (it == entries_.end() || it->unit_id != unit_id) {
      throw IoError("unit_id not in index: " + std::to_string(unit_id));
    }
    return it->vec;
  }

  double sim_between(std::uint32_t a, std::uint32_t b) const {
    return sim(vector_of(a), vector_of(b));
  }

  // The cand_k highest-similarity entries, descending, ties broken by
  // ascending unit_id. Equals a full sort truncated to cand_k.
  std::vector<Candidate> top_candidates(const Vector& query_vec,
                                        std::size_t cand_k) const {
    if (!entries_.empty() && query_vec.size() != dim_) {
      throw DimensionMismatchError(dim_, query_vec.size());
    }
    std::vector<Candidate> all;
    all.reserve(entries_.size());
    for (const IndexEntry& e : entries_) {
      all.push_back({e.unit_id, sim(e.vec, query_vec)});
    }
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
      if (a.sim != b.sim) return a.sim > b.sim;
      return a.unit_id < b.unit_id;
    });
    if (all.size() > cand_k) all.resize(cand_k);
    return all;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<IndexEntry> entries_;
};

inline VectorIndex build_index(const Corpus& corpus, EmbeddingProvider& provider) {
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const EvidenceUnit& u : corpus.units()) texts.push_back(u.text);
  std::vector<Vector> vecs = provider.embed_batch(texts);
  std::size_t dim = provider.dimension();
  if (dim == 0 && !vecs.empty()) dim = vecs.front().size();
  VectorIndex index(dim);
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    index.add(corpus.units()[i].unit_id, std::move(vecs[i]));
  }
  return index;
}

namespace detail {

inline constexpr char kIndexMagic[4] = {'E', 'G', 'I', 'X'};
inline constexpr std::uint32_t kIndexVersion = 1;

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void put_f32(std::string& out, float f) {
  std::uint32_t bits;
  std::memcpy(&bits, &f, 4);
  put_u32(out, bits);
}

struct ByteReader {
  std::string_view data;
  std::size_t pos = 0;

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos++])) << (8 * i);
    }
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos++])) << (8 * i);
    }
    return v;
  }
  float f32() {
    const std::uint32_t bits = u32();
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
  }
};

// Payload bytes for an index image; version is a parameter so tests can forge
// future versions with a valid checksum.
inline std::string index_payload(const VectorIndex& index, std::uint32_t version) {
  std::string payload;
  payload.append(kIndexMagic, 4);
  put_u32(payload, version);
  put_u32(payload, static_cast<std::uint32_t>(index.dimension()));
  put_u64(payload, static_cast<std::uint64_t>(index.size()));
  for (const IndexEntry& e : index.entries()) {
    put_u32(payload, e.unit_id);
    for (float f : e.vec) put_f32(payload, f);
  }
  return payload;
}

}  // namespace detail

inline void save_index(const VectorIndex& index, const std::filesystem::path& path) {
  std::string payload = detail::index_payload(index, detail::kIndexVersion);
  detail::put_u64(payload, fnv1a64(payload));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open index file for writing: " + path.string());
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("short write to index file: " + path.string());
}

inline VectorIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open index file: " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  constexpr std::size_t kMinSize = 4 + 4 + 4 + 8 + 8;  // header + checksum
  if (bytes.size() < kMinSize) throw ChecksumMismatchError("file truncated");
  const std::string_view payload(bytes.data(), bytes.size() - 8);
  detail::ByteReader trailer{std::string_view(bytes).substr(bytes.size() - 8)};
  if (fnv1a64(payload) != trailer.u64()) {
    throw ChecksumMismatchError("stored checksum does not match payload");
  }

  detail::ByteReader r{payload};
  if (std::memcmp(payload.data(), detail::kIndexMagic, 4) != 0) {
    throw IoError("not an index file: " + path.string());
  }
  r.pos = 4;
  const std::uint32_t version = r.u32();
  if (version != detail::kIndexVersion) {
    throw VersionMismatchError(detail::kIndexVersion, version);
  }
  const std::uint32_t dim = r.u32();
  const std::uint64_t count = r.u64();
  const std::uint64_t expect = r.pos + count * (4ull + 4ull * dim);
  if (expect != payload.size()) throw ChecksumMismatchError("payload size inconsistent");

  VectorIndex index(dim);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint32_t unit_id = r.u32();
    Vector v(dim);
    for (std::uint32_t j = 0; j < dim; ++j) v[j] = r.f32();
    index.add(unit_id, std::move(v));
  }
  return index;
}

}  // namespace egret
