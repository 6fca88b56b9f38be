#include "rlap/embedding.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>

#include <httplib.h>

#include "rlap/errors.hpp"
#include "rlap/text.hpp"

namespace rlap {

HashingFeaturizer::HashingFeaturizer(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) throw DimensionMismatch("featurizer dimension must be positive");
}

std::size_t HashingFeaturizer::token_bucket(std::string_view token, std::size_t dimension) {
  // FNV-1a, 64-bit.
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : token) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h % dimension);
}

std::vector<double> HashingFeaturizer::embed(const std::string& text) {
  std::vector<double> v(dimension_, 0.0);
  for (const std::string_view token : tokenize(text)) {
    v[token_bucket(token, dimension_)] += 1.0;
  }
  double norm_sq = 0.0;
  for (const double x : v) norm_sq += x * x;
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
  }
  return v;
}

nlohmann::json HashingFeaturizer::descriptor() const {
  return {{"provider", "hashing_featurizer"}, {"dimension", dimension_}};
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(RemoteEmbeddingConfig config)
    : config_(std::move(config)) {
  if (config_.dimension == 0) {
    throw DimensionMismatch("remote embedding dimension must be configured");
  }
  if (config_.endpoint_url.empty()) {
    throw EmbeddingTransport("embedding endpoint url is empty");
  }
}

std::vector<double> RemoteEmbeddingProvider::embed(const std::string& text) {
  const std::size_t scheme_end = config_.endpoint_url.find("://");
  if (scheme_end == std::string::npos) {
    throw EmbeddingTransport("embedding endpoint url has no scheme");
  }
  const std::size_t path_start = config_.endpoint_url.find('/', scheme_end + 3);
  const std::string origin = path_start == std::string::npos
                                 ? config_.endpoint_url
                                 : config_.endpoint_url.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/" : config_.endpoint_url.substr(path_start);

  httplib::Client client(origin);
  const auto ms =
      std::chrono::milliseconds(static_cast<long>(config_.timeout_seconds * 1000.0));
  client.set_connection_timeout(ms);
  client.set_read_timeout(ms);
  client.set_write_timeout(ms);

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }

  const nlohmann::json body{{"model", config_.model_name},
                            {"input", nlohmann::json::array({text})}};
  const httplib::Result res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw EmbeddingTransport("embedding request failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw EmbeddingTransport("embedding http status " + std::to_string(res->status));
  }
  std::vector<double> v;
  try {
    const nlohmann::json reply = nlohmann::json::parse(res->body);
    v = reply.at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw EmbeddingTransport(std::string("bad embedding payload: ") + e.what());
  }
  if (v.size() != config_.dimension) {
    throw DimensionMismatch("embedding has " + std::to_string(v.size()) +
                            " components, expected " + std::to_string(config_.dimension));
  }
  return v;
}

nlohmann::json RemoteEmbeddingProvider::descriptor() const {
  return {{"provider", "remote_embedding_endpoint"},
          {"dimension", config_.dimension},
          {"endpoint_url", config_.endpoint_url},
          {"model_name", config_.model_name},
          {"api_key_env", config_.api_key_env},
          {"timeout_seconds", config_.timeout_seconds}};
}

CachingEmbeddingProvider::CachingEmbeddingProvider(std::shared_ptr<EmbeddingProvider> inner,
                                                   std::size_t capacity)
    : inner_(std::move(inner)), capacity_(capacity) {
  if (!inner_) throw Error("caching provider needs an inner provider");
  if (capacity_ == 0) throw Error("cache capacity must be positive");
}

std::vector<double> CachingEmbeddingProvider::embed(const std::string& text) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = cache_.find(text);
    if (it != cache_.end()) {
      order_.splice(order_.begin(), order_, it->second.first);
      return it->second.second;
    }
  }
  std::vector<double> v = inner_->embed(text);
  std::lock_guard<std::mutex> lock(mutex_);
  ++misses_;
  if (cache_.find(text) == cache_.end()) {
    order_.push_front(text);
    cache_.emplace(text, std::make_pair(order_.begin(), v));
    if (cache_.size() > capacity_) {
      cache_.erase(order_.back());
      order_.pop_back();
    }
  }
  return v;
}

std::size_t CachingEmbeddingProvider::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

}  // namespace rlap
