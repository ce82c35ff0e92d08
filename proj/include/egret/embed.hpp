#pragma once

// Embedding provider contract and the clamped-cosine similarity used across
// the pipeline. Every provider returns unit-norm vectors (or the zero vector
// for empty text), so similarity reduces to a dot product.

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "egret/errors.hpp"
#include "egret/hash.hpp"
#include "egret/lexical.hpp"

namespace egret {

using Vector = std::vector<float>;

inline double l2_norm(const Vector& v) {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(sum);
}

inline void l2_normalize(Vector& v) {
  const double norm = l2_norm(v);
  if (norm <= 0.0) return;  // zero vector stays zero
  for (float& x : v) x = static_cast<float>(static_cast<double>(x) / norm);
}

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatchError(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

// Cosine between unit-norm vectors, clamped into [0, 1]. Negative cosines are
// floored rather than remapped so raw similarity magnitudes stay meaningful.
inline double sim(const Vector& a, const Vector& b) {
  const double d = dot(a, b);
  if (d <= 0.0) return 0.0;
  if (d >= 1.0) return 1.0;
  return d;
}

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dimension() const = 0;
  virtual Vector embed(std::string_view text) = 0;
  virtual std::vector<Vector> embed_batch(const std::vector<std::string>& texts) {
    std::vector<Vector> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(embed(t));
    return out;
  }
};

// Deterministic local fallback: signed feature hashing of the token stream
// into a fixed number of buckets, then L2 normalization. A pure function of
// (text, dimension); no state, no randomness.
class HashEmbedder : public EmbeddingProvider {
 public:
  explicit HashEmbedder(std::size_t dimension = 256) : dim_(dimension) {
    if (dim_ == 0) throw ConfigError("embedding dimension must be positive");
  }

  std::size_t dimension() const override { return dim_; }

  Vector embed(std::string_view text) override {
    Vector v(dim_, 0.0f);
    bool any = false;
    for (const std::string& tok : tokenize(text)) {
      const std::uint64_t h = fnv1a64(tok);
      const std::size_t bucket = static_cast<std::size_t>(h % dim_);
      const float sign = (h >> 63) ? -1.0f : 1.0f;
      v[bucket] += sign;
      any = true;
    }
    if (!any) return v;  // empty/whitespace text -> zero vector
    if (l2_norm(v) == 0.0) {
      // Signs cancelled exactly; fall back to a deterministic unit vector so
      // the zero vector stays reserved for empty text.
      v[static_cast<std::size_t>(fnv1a64(text) % dim_)] = 1.0f;
    }
    l2_normalize(v);
    return v;
  }

 private:
  std::size_t dim_;
};

enum class ProviderMode { local_hash, remote };

struct EmbeddingProviderConfig {
  ProviderMode mode = ProviderMode::local_hash;
  std::size_t dimension = 256;  // local_hash only
  std::string endpoint;         // remote only, e.g. http://127.0.0.1:8406/embed
  int timeout_ms = 5000;        // remote only
};

}  // namespace egret
