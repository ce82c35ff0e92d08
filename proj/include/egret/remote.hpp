#pragma once

// HTTP clients: the remote embedding provider and the optional answer
// generator. Kept in their own header so the core pipeline does not pull in
// the HTTP stack.
//
// Embedding wire format (single POST):
//   request   {"texts": ["...", ...]}
//   response  {"vectors": [[...], ...]}   one vector per text, same order
//
// Generator wire format (single POST):
//   request   {"query": "...", "evidence": [{"text": "...", "provenance": "..."}]}
//   response  {"answer": "..."}
//
// Vectors are L2-normalized client-side no matter what the server returns,
// so similarity stays a plain dot product. Responses are cached by exact
// request text for the lifetime of the client.

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "egret/embed.hpp"
#include "egret/errors.hpp"
#include "egret/jsonw.hpp"
#include "egret/pipeline.hpp"

namespace egret {

namespace detail {

struct ParsedUrl {
  std::string base;  // scheme://host:port
  std::string path;  // /... (defaults to /)
};

inline ParsedUrl parse_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint must be an http(s) URL: '" + url + "'");
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace detail

class RemoteEmbedder : public EmbeddingProvider {
 public:
  explicit RemoteEmbedder(std::string endpoint, int timeout_ms = 5000)
      : url_(detail::parse_url(endpoint)), client_(url_.base) {
    client_.set_connection_timeout(0, timeout_ms * 1000);
    client_.set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
    client_.set_write_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
  }

  explicit RemoteEmbedder(const EmbeddingProviderConfig& config)
      : RemoteEmbedder(config.endpoint, config.timeout_ms) {}

  // 0 until the first response reveals the server's dimension.
  std::size_t dimension() const override {
    std::lock_guard<std::mutex> lock(mutex_);
    return dim_;
  }

  Vector embed(std::string_view text) override {
    return embed_batch({std::string(text)}).front();
  }

  // Requests are serialized: one mutex covers cache and transport, so
  // concurrent callers never race on the underlying HTTP client.
  std::vector<Vector> embed_batch(const std::vector<std::string>& texts) override {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<Vector> out(texts.size());
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const auto it = cache_.find(texts[i]);
      if (it != cache_.end()) out[i] = it->second;
      else missing.push_back(i);
    }
    if (missing.empty()) return out;

    std::string body = "{\"texts\":[";
    for (std::size_t k = 0; k < missing.size(); ++k) {
      if (k) body += ",";
      body += json_str(texts[missing[k]]);
    }
    body += "]}";

    const httplib::Result res = client_.Post(url_.path, body, "application/json");
    if (!res) throw RemoteUnavailableError(httplib::to_string(res.error()));
    if (res->status != 200) {
      throw RemoteUnavailableError("http status " + std::to_string(res->status));
    }
    const nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded() || !j.contains("vectors") || !j["vectors"].is_array()) {
      throw ProtocolError("embedding response is not {\"vectors\": [...]}");
    }
    const auto& vectors = j["vectors"];
    if (vectors.size() != missing.size()) {
      throw ProtocolError("requested " + std::to_string(missing.size()) +
                          " embeddings, got " + std::to_string(vectors.size()));
    }

    for (std::size_t k = 0; k < missing.size(); ++k) {
      Vector v;
      for (const auto& x : vectors[k]) v.push_back(x.get<float>());
      if (dim_ == 0) dim_ = v.size();
      if (v.size() != dim_) throw DimensionMismatchError(dim_, v.size());
      l2_normalize(v);
      cache_[texts[missing[k]]] = v;
      out[missing[k]] = std::move(v);
    }
    return out;
  }

 private:
  detail::ParsedUrl url_;
  httplib::Client client_;
  mutable std::mutex mutex_;
  std::size_t dim_ = 0;
  std::unordered_map<std::string, Vector> cache_;
};

class HttpGeneratorClient : public GeneratorClient {
 public:
  explicit HttpGeneratorClient(const GeneratorConfig& config)
      : url_(detail::parse_url(config.endpoint)), client_(url_.base) {
    client_.set_connection_timeout(0, config.timeout_ms * 1000);
    client_.set_read_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);
  }

  std::string generate(const std::string& handoff_json) override {
    const httplib::Result res = client_.Post(url_.path, handoff_json, "application/json");
    if (!res) throw GeneratorUnavailableError(httplib::to_string(res.error()));
    if (res->status != 200) {
      throw GeneratorUnavailableError("http status " + std::to_string(res->status));
    }
    const nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded() || !j.contains("answer") || !j["answer"].is_string()) {
      throw ProtocolError("generator response is not {\"answer\": \"...\"}");
    }
    return j["answer"].get<std::string>();
  }

 private:
  detail::ParsedUrl url_;
  httplib::Client client_;
};

inline std::unique_ptr<EmbeddingProvider> make_provider(
    const EmbeddingProviderConfig& config) {
  if (config.mode == ProviderMode::remote) {
    if (config.endpoint.empty()) throw ConfigError("remote provider needs an endpoint");
    return std::make_unique<RemoteEmbedder>(config);
  }
  if (config.dimension == 0) throw ConfigError("embedding dimension must be positive");
  return std::make_unique<HashEmbedder>(config.dimension);
}

}  // namespace egret
