#include "rlap/run_config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "rlap/errors.hpp"

namespace rlap {

std::string interpolate_env(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] == '$' && i + 1 < raw.size() && raw[i + 1] == '{') {
      const std::size_t close = raw.find('}', i + 2);
      if (close == std::string::npos) {
        throw ConfigError("unterminated ${ in config value: " + raw);
      }
      const std::string name = raw.substr(i + 2, close - i - 2);
      if (const char* value = std::getenv(name.c_str())) out += value;
      i = close + 1;
    } else {
      out += raw[i++];
    }
  }
  return out;
}

namespace {

std::string get_string(const nlohmann::json& j, const char* field,
                       const std::string& fallback = {}) {
  const auto it = j.find(field);
  if (it == j.end()) return fallback;
  if (!it->is_string()) {
    throw ConfigError(std::string("config field '") + field + "' must be a string");
  }
  return interpolate_env(it->get<std::string>());
}

template <typename T>
T get_number(const nlohmann::json& j, const char* field, T fallback) {
  const auto it = j.find(field);
  if (it == j.end()) return fallback;
  if (!it->is_number()) {
    throw ConfigError(std::string("config field '") + field + "' must be a number");
  }
  return it->get<T>();
}

ExecutorConfig parse_remote(const nlohmann::json& j) {
  ExecutorConfig c;
  c.endpoint_url = get_string(j, "endpoint_url");
  c.model_name = get_string(j, "model_name");
  c.api_key_env = get_string(j, "api_key_env");
  c.timeout_seconds = get_number(j, "timeout_seconds", c.timeout_seconds);
  c.max_retries = get_number(j, "max_retries", c.max_retries);
  c.temperature = get_number(j, "temperature", c.temperature);
  c.max_tokens = get_number(j, "max_tokens", c.max_tokens);
  c.backoff_seconds = get_number(j, "backoff_seconds", c.backoff_seconds);
  return c;
}

ExecutorSetup parse_executor(const nlohmann::json& j) {
  ExecutorSetup setup;
  setup.mode = get_string(j, "mode", setup.mode);
  if (setup.mode != "scripted" && setup.mode != "remote" && setup.mode != "none") {
    throw ConfigError("executor mode must be scripted, remote, or none");
  }
  if (const auto remote = j.find("remote"); remote != j.end()) {
    setup.remote = parse_remote(*remote);
  }
  setup.default_response = get_string(j, "default_response");
  if (const auto rules = j.find("rules"); rules != j.end()) {
    if (!rules->is_array()) throw ConfigError("executor rules must be an array");
    for (const auto& entry : *rules) {
      ScriptedExecutor::Rule rule;
      const std::string kind = get_string(entry, "kind");
      if (!kind.empty()) rule.kind = task_kind_from_string(kind);
      rule.contains = get_string(entry, "contains");
      rule.response = get_string(entry, "response");
      setup.rules.push_back(std::move(rule));
    }
  }
  return setup;
}

EmbeddingSetup parse_embedding(const nlohmann::json& j) {
  EmbeddingSetup setup;
  setup.provider = get_string(j, "provider", setup.provider);
  if (setup.provider != "hashing_featurizer" && setup.provider != "remote_embedding_endpoint") {
    throw ConfigError("unknown embedding provider '" + setup.provider + "'");
  }
  setup.dimension = get_number(j, "dimension", setup.dimension);
  setup.endpoint_url = get_string(j, "endpoint_url");
  setup.model_name = get_string(j, "model_name");
  setup.api_key_env = get_string(j, "api_key_env");
  setup.cache_capacity = get_number(j, "cache_capacity", setup.cache_capacity);
  return setup;
}

TrainConfig parse_train(const nlohmann::json& j) {
  TrainConfig c;
  c.epochs = get_number(j, "epochs", c.epochs);
  c.episodes_per_epoch = get_number(j, "episodes_per_epoch", c.episodes_per_epoch);
  c.batch_size = get_number(j, "batch_size", c.batch_size);
  c.gamma = get_number(j, "gamma", c.gamma);
  c.target_sync = get_number(j, "target_sync", c.target_sync);
  c.learning_rate = get_number(j, "learning_rate", c.learning_rate);
  c.min_fill = get_number(j, "min_fill", c.min_fill);
  c.buffer_capacity = get_number(j, "buffer_capacity", c.buffer_capacity);
  if (const auto it = j.find("double_q"); it != j.end()) {
    if (!it->is_boolean()) throw ConfigError("double_q must be a boolean");
    c.double_q = it->get<bool>();
  }
  return c;
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig config;
  config.seed = get_number<std::uint64_t>(j, "seed", 0);
  config.out_dir = get_string(j, "out_dir");
  config.kind = task_kind_from_string(get_string(j, "kind", "synthetic"));
  config.language = get_string(j, "language", "en");
  if (const auto datasets = j.find("datasets"); datasets != j.end()) {
    if (!datasets->is_array()) throw ConfigError("datasets must be an array of paths");
    for (const auto& p : *datasets) {
      if (!p.is_string()) throw ConfigError("dataset paths must be strings");
      config.dataset_paths.push_back(interpolate_env(p.get<std::string>()));
    }
  }
  config.template_path = get_string(j, "template_path");
  config.synthetic_reward = get_string(j, "synthetic_reward", config.synthetic_reward);
  if (config.synthetic_reward != "stepwise" && config.synthetic_reward != "episodic" &&
      config.synthetic_reward != "both") {
    throw ConfigError("synthetic_reward must be stepwise, episodic, or both");
  }
  if (const auto it = j.find("train"); it != j.end()) config.train = parse_train(*it);
  if (const auto it = j.find("executor"); it != j.end()) {
    config.executor = parse_executor(*it);
  }
  if (const auto it = j.find("embedding"); it != j.end()) {
    config.embedding = parse_embedding(*it);
  }
  config.train.seed = config.seed;
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config JSON: ") + e.what());
  }
  RunConfig config = run_config_from_json(j);
  for (const std::string& p : config.dataset_paths) {
    if (!std::filesystem::exists(p)) throw ConfigError("dataset path not found: " + p);
  }
  if (!config.template_path.empty() && !std::filesystem::exists(config.template_path)) {
    throw ConfigError("template path not found: " + config.template_path);
  }
  return config;
}

nlohmann::json embedding_descriptor(const EmbeddingSetup& setup) {
  if (setup.provider == "hashing_featurizer") {
    return {{"provider", "hashing_featurizer"}, {"dimension", setup.dimension}};
  }
  return {{"provider", "remote_embedding_endpoint"},
          {"dimension", setup.dimension},
          {"endpoint_url", setup.endpoint_url},
          {"model_name", setup.model_name},
          {"api_key_env", setup.api_key_env},
          {"timeout_seconds", 6.0}};
}

}  // namespace rlap
