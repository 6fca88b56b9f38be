#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rlap/executor.hpp"
#include "rlap/trainer.hpp"

namespace rlap {

// Expands ${VAR} references from the process environment. Unset variables
// expand to the empty string. Throws ConfigError on an unterminated ${.
std::string interpolate_env(const std::string& raw);

struct ExecutorSetup {
  std::string mode = "scripted";  // "scripted" | "remote" | "none"
  ExecutorConfig remote;
  std::vector<ScriptedExecutor::Rule> rules;
  std::string default_response;
};

struct EmbeddingSetup {
  std::string provider = "hashing_featurizer";
  std::size_t dimension = 256;
  std::string endpoint_url;
  std::string model_name;
  std::string api_key_env;
  std::size_t cache_capacity = 10000;
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::string out_dir;
  TaskKind kind = TaskKind::synthetic;
  std::string language = "en";
  std::vector<std::string> dataset_paths;
  std::string template_path;  // empty: built-in templates
  std::string synthetic_reward = "stepwise";  // "stepwise" | "episodic" | "both"
  TrainConfig train;
  ExecutorSetup executor;
  EmbeddingSetup embedding;
};

RunConfig run_config_from_json(const nlohmann::json& j);

// Parses the file, interpolates ${VAR}, and checks that every referenced
// dataset and template path exists. Throws ConfigError.
RunConfig load_run_config(const std::string& path);

nlohmann::json embedding_descriptor(const EmbeddingSetup& setup);

}  // namespace rlap
