#pragma once

#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace rlap {

// Maps text to a fixed-dimension real vector. Implementations must be
// deterministic for a given input.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<double> embed(const std::string& text) = 0;
  virtual std::size_t dimension() const = 0;
  virtual nlohmann::json descriptor() const = 0;  // enough to rebuild the provider
};

// Bag-of-tokens with a fixed 64-bit multiplicative hash into [0, dimension),
// scaled to unit L2 norm (the all-zero vector stays zero). No fitted state,
// so checkpoints restore bit-for-bit anywhere.
class HashingFeaturizer final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultDimension = 256;

  explicit HashingFeaturizer(std::size_t dimension = kDefaultDimension);

  static std::size_t token_bucket(std::string_view token, std::size_t dimension);

  std::vector<double> embed(const std::string& text) override;
  std::size_t dimension() const override { return dimension_; }
  nlohmann::json descriptor() const override;

 private:
  std::size_t dimension_;
};

struct RemoteEmbeddingConfig {
  std::string endpoint_url;
  std::string model_name;
  std::string api_key_env;
  std::size_t dimension = 0;
  double timeout_seconds = 6.0;
};

// POSTs {model, input: [text]} and reads data[0].embedding. Throws
// EmbeddingTransport on failure and DimensionMismatch when the reply size
// disagrees with the configured dimension.
class RemoteEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit RemoteEmbeddingProvider(RemoteEmbeddingConfig config);

  std::vector<double> embed(const std::string& text) override;
  std::size_t dimension() const override { return config_.dimension; }
  nlohmann::json descriptor() const override;

 private:
  RemoteEmbeddingConfig config_;
};

// LRU cache keyed by the exact input text. Scoring revisits the same
// sequences constantly, so this sits in front of every provider.
class CachingEmbeddingProvider final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultCapacity = 10000;

  explicit CachingEmbeddingProvider(std::shared_ptr<EmbeddingProvider> inner,
                                    std::size_t capacity = kDefaultCapacity);

  std::vector<double> embed(const std::string& text) override;
  std::size_t dimension() const override { return inner_->dimension(); }
  nlohmann::json descriptor() const override { return inner_->descriptor(); }

  std::size_t size() const;
  std::size_t misses() const { return misses_; }

 private:
  std::shared_ptr<EmbeddingProvider> inner_;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<std::string> order_;  // most recent first
  std::unordered_map<std::string,
                     std::pair<std::list<std::string>::iterator, std::vector<double>>>
      cache_;
  std::size_t misses_ = 0;
};

}  // namespace rlap
