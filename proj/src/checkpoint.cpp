#include "rlap/checkpoint.hpp"

#include <fstream>

#include "rlap/errors.hpp"

namespace rlap {

nlohmann::json checkpoint_to_json(const Checkpoint& checkpoint) {
  return {{"format_version", checkpoint.format_version},
          {"kind", to_string(checkpoint.kind)},
          {"dimension", checkpoint.dimension},
          {"w", checkpoint.w},
          {"b", checkpoint.b},
          {"target_w", checkpoint.target_w},
          {"target_b", checkpoint.target_b},
          {"learn_steps", checkpoint.learn_steps},
          {"env_steps", checkpoint.env_steps},
          {"epsilon_steps", checkpoint.epsilon_steps},
          {"seed", checkpoint.seed},
          {"provider", checkpoint.provider}};
}

Checkpoint checkpoint_from_json(const nlohmann::json& j) {
  Checkpoint cp;
  try {
    cp.format_version = j.at("format_version").get<int>();
    if (cp.format_version != 1) {
      throw ConfigError("unsupported checkpoint format_version " +
                        std::to_string(cp.format_version));
    }
    cp.kind = task_kind_from_string(j.at("kind").get<std::string>());
    cp.dimension = j.at("dimension").get<std::size_t>();
    cp.w = j.at("w").get<std::vector<double>>();
    cp.b = j.at("b").get<double>();
    cp.target_w = j.at("target_w").get<std::vector<double>>();
    cp.target_b = j.at("target_b").get<double>();
    cp.learn_steps = j.at("learn_steps").get<long>();
    cp.env_steps = j.at("env_steps").get<long>();
    cp.epsilon_steps = j.at("epsilon_steps").get<long>();
    cp.seed = j.at("seed").get<std::uint64_t>();
    cp.provider = j.at("provider");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  }
  if (cp.w.size() != cp.dimension || cp.target_w.size() != cp.dimension) {
    throw DimensionMismatch("checkpoint weights have " + std::to_string(cp.w.size()) +
                            "/" + std::to_string(cp.target_w.size()) +
                            " components, dimension says " + std::to_string(cp.dimension));
  }
  return cp;
}

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write checkpoint: " + path);
  out << checkpoint_to_json(checkpoint).dump(2) << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open checkpoint: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad checkpoint JSON: ") + e.what());
  }
  return checkpoint_from_json(j);
}

std::shared_ptr<EmbeddingProvider> provider_from_descriptor(const nlohmann::json& descriptor,
                                                            std::size_t cache_capacity) {
  std::string name;
  std::size_t dimension = 0;
  try {
    name = descriptor.at("provider").get<std::string>();
    dimension = descriptor.at("dimension").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed provider descriptor: ") + e.what());
  }

  std::shared_ptr<EmbeddingProvider> inner;
  if (name == "hashing_featurizer") {
    inner = std::make_shared<HashingFeaturizer>(dimension);
  } else if (name == "remote_embedding_endpoint") {
    RemoteEmbeddingConfig config;
    config.dimension = dimension;
    try {
      config.endpoint_url = descriptor.at("endpoint_url").get<std::string>();
      config.model_name = descriptor.at("model_name").get<std::string>();
      config.api_key_env = descriptor.value("api_key_env", std::string{});
      config.timeout_seconds = descriptor.value("timeout_seconds", 6.0);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed provider descriptor: ") + e.what());
    }
    inner = std::make_shared<RemoteEmbeddingProvider>(std::move(config));
  } else {
    throw ConfigError("unknown embedding provider '" + name + "'");
  }
  return std::make_shared<CachingEmbeddingProvider>(std::move(inner), cache_capacity);
}

ActorModel restore_actor(const Checkpoint& checkpoint) {
  ActorModel actor;
  actor.provider = provider_from_descriptor(checkpoint.provider);
  if (actor.provider->dimension() != checkpoint.dimension) {
    throw DimensionMismatch("provider dimension " +
                            std::to_string(actor.provider->dimension()) +
                            " does not match checkpoint dimension " +
                            std::to_string(checkpoint.dimension));
  }
  actor.head = QHead{checkpoint.w, checkpoint.b};
  actor.target_head = QHead{checkpoint.target_w, checkpoint.target_b};
  return actor;
}

nlohmann::json train_report_to_json(const TrainReport& report) {
  nlohmann::json epochs = nlohmann::json::array();
  for (const EpochStats& e : report.epochs) {
    epochs.push_back({{"mean_loss", e.mean_loss},
                      {"mean_return", e.mean_return},
                      {"epsilon_end", e.epsilon_end},
                      {"learn_steps", e.learn_steps},
                      {"episodes", e.episodes},
                      {"skipped_episodes", e.skipped_episodes}});
  }
  return {{"epochs", std::move(epochs)},
          {"learn_steps", report.learn_steps},
          {"env_steps", report.env_steps}};
}

void save_train_report(const std::string& path, const TrainReport& report) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write report: " + path);
  out << train_report_to_json(report).dump(2) << "\n";
}

void save_run_meta(const std::string& path, const TrainReport& report) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write run metadata: " + path);
  const nlohmann::json meta{{"wall_seconds", report.wall_seconds}};
  out << meta.dump(2) << "\n";
}

}  // namespace rlap
