#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "rlap/actor.hpp"
#include "rlap/embedding.hpp"
#include "rlap/trainer.hpp"

namespace rlap {

nlohmann::json checkpoint_to_json(const Checkpoint& checkpoint);

// Throws ConfigError on an unknown format and DimensionMismatch when the
// weight vectors disagree with the recorded dimension.
Checkpoint checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::string& path);

// Rebuilds the embedding provider named by a checkpoint descriptor, wrapped
// in the usual LRU cache.
std::shared_ptr<EmbeddingProvider> provider_from_descriptor(
    const nlohmann::json& descriptor,
    std::size_t cache_capacity = CachingEmbeddingProvider::kDefaultCapacity);

ActorModel restore_actor(const Checkpoint& checkpoint);

// The canonical training report; identical runs must serialize identically,
// so wall time is kept out and written to the run metadata file instead.
nlohmann::json train_report_to_json(const TrainReport& report);
void save_train_report(const std::string& path, const TrainReport& report);
void save_run_meta(const std::string& path, const TrainReport& report);

}  // namespace rlap
