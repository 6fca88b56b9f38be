// Command-line front end: train, eval, infer, gen-synthetic, inspect.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlap/checkpoint.hpp"
#include "rlap/dataset.hpp"
#include "rlap/environment.hpp"
#include "rlap/episode.hpp"
#include "rlap/errors.hpp"
#include "rlap/evaluate.hpp"
#include "rlap/run_config.hpp"
#include "rlap/synthetic.hpp"
#include "rlap/trainer.hpp"

namespace {

using namespace rlap;

RewardMode reward_mode_from_name(const std::string& name) {
  if (name == "stepwise") return RewardMode::stepwise;
  if (name == "episodic") return RewardMode::episodic;
  if (name == "both") return RewardMode::both;
  throw ConfigError("unknown reward mode '" + name + "'");
}

std::unique_ptr<Executor> build_executor(const ExecutorSetup& setup) {
  if (setup.mode == "remote") return std::make_unique<RemoteExecutor>(setup.remote);
  if (setup.mode == "scripted") {
    return std::make_unique<ScriptedExecutor>(setup.rules, setup.default_response);
  }
  return nullptr;  // "none"
}

Environment build_environment(const RunConfig& config) {
  TemplateSet templates = config.template_path.empty()
                              ? TemplateSet::builtin()
                              : TemplateSet::load(config.template_path);
  return Environment(std::move(templates), reward_mode_from_name(config.synthetic_reward));
}

int cmd_train(const std::string& config_path, const std::string& out_override) {
  RunConfig config = load_run_config(config_path);
  if (!out_override.empty()) config.out_dir = out_override;
  if (config.out_dir.empty()) throw ConfigError("train needs an output directory");
  if (config.dataset_paths.empty()) throw ConfigError("train needs at least one dataset");
  std::filesystem::create_directories(config.out_dir);

  std::vector<Dataset> train_sets;
  for (const std::string& path : config.dataset_paths) {
    train_sets.push_back(ingest(path, config.kind, config.language));
  }

  const Environment env = build_environment(config);
  const std::unique_ptr<Executor> executor = build_executor(config.executor);

  auto provider = provider_from_descriptor(embedding_descriptor(config.embedding),
                                           config.embedding.cache_capacity);
  ActorModel actor = make_actor(std::move(provider));

  auto [checkpoint, report] = run_training(train_sets, env, executor.get(), actor, config.train);

  const std::filesystem::path out(config.out_dir);
  save_checkpoint((out / "checkpoint.json").string(), checkpoint);
  save_train_report((out / "report.json").string(), report);
  save_run_meta((out / "run_meta.json").string(), report);

  std::cout << "trained " << to_string(checkpoint.kind) << ": " << report.env_steps
            << " env steps, " << report.learn_steps << " learn steps, wrote "
            << (out / "checkpoint.json").string() << "\n";
  return 0;
}

int cmd_eval(const std::string& checkpoint_path, const std::string& dataset_path,
             const std::string& policy_name, const std::string& kind_name,
             const std::string& language, std::uint64_t seed, const std::string& filter_name,
             const std::string& config_path, const std::string& out_dir) {
  std::optional<Checkpoint> checkpoint;
  if (!checkpoint_path.empty()) checkpoint = load_checkpoint(checkpoint_path);

  TaskKind kind;
  if (!kind_name.empty()) {
    kind = task_kind_from_string(kind_name);
  } else if (checkpoint) {
    kind = checkpoint->kind;
  } else {
    throw ConfigError("eval needs --kind or --checkpoint to fix the task kind");
  }

  RunConfig config;
  if (!config_path.empty()) config = load_run_config(config_path);
  const Environment env = build_environment(config);
  const std::unique_ptr<Executor> executor = build_executor(config.executor);

  Policy policy = [&]() {
    if (policy_name == "random") return Policy::random(seed);
    if (policy_name == "fixed") return Policy::fixed_sequence();
    if (policy_name == "learned") {
      if (!checkpoint) throw ConfigError("--policy learned needs --checkpoint");
      return Policy::learned(std::make_shared<ActorModel>(restore_actor(*checkpoint)));
    }
    throw ConfigError("unknown policy '" + policy_name + "'");
  }();

  std::optional<ComplexityFilter> filter;
  if (!filter_name.empty()) filter = filter_preset(filter_name);

  const Dataset dataset = ingest(dataset_path, kind, language);
  const MetricsReport report = evaluate_policy(policy, dataset, env, executor.get(), filter);

  const std::string rendered = to_json(report).dump(2);
  std::cout << rendered << "\n";
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);
    std::ofstream js(out / "metrics.json");
    js << rendered << "\n";
    std::ofstream csv(out / "metrics.csv");
    csv << to_csv(report);
  }
  return 0;
}

int cmd_infer(const std::string& checkpoint_path, const std::string& sample_path,
              const std::string& config_path, const std::string& language) {
  const Checkpoint checkpoint = load_checkpoint(checkpoint_path);

  std::ifstream in(sample_path);
  if (!in) throw ConfigError("cannot open sample: " + sample_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(0, std::string("bad sample JSON: ") + e.what());
  }
  const TaskSample sample = parse_sample(j, checkpoint.kind, language);

  RunConfig config;
  if (!config_path.empty()) config = load_run_config(config_path);
  const Environment env = build_environment(config);
  const std::unique_ptr<Executor> executor = build_executor(config.executor);

  auto actor = std::make_shared<ActorModel>(restore_actor(checkpoint));
  const ActionChooser choose = [&](const StateRecord& s, const ActionSpace& space) {
    return select_greedy(*actor, s, space);
  };
  const EpisodeResult episode = run_episode(env, sample, choose, executor.get());
  if (episode.failed) throw Error("episode failed: " + episode.error);

  nlohmann::json order = nlohmann::json::array();
  nlohmann::json surfaces = nlohmann::json::array();
  for (const SubtaskAction& a : episode.chosen) {
    order.push_back(a.action_id);
    surfaces.push_back(a.surface);
  }
  const FinalPrediction prediction = extract_final(env, sample, episode);
  const nlohmann::json out{{"sample_id", sample.sample_id},
                           {"order", std::move(order)},
                           {"surfaces", std::move(surfaces)},
                           {"final", prediction.final_text}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_gen_synthetic(int k, int n, std::uint64_t seed, const std::string& out_path) {
  Dataset dataset;
  dataset.path = out_path;
  dataset.kind = TaskKind::synthetic;
  dataset.language = "en";
  dataset.samples = gen_synthetic({.k = k, .n_samples = n, .seed = seed});
  write_dataset(out_path, dataset);
  std::cout << "wrote " << dataset.samples.size() << " samples to " << out_path << "\n";
  return 0;
}

int cmd_inspect(const std::string& checkpoint_path) {
  const Checkpoint c = load_checkpoint(checkpoint_path);
  double norm_sq = 0.0;
  for (const double x : c.w) norm_sq += x * x;
  std::cout << "checkpoint " << checkpoint_path << "\n"
            << "  kind:          " << to_string(c.kind) << "\n"
            << "  dimension:     " << c.dimension << "\n"
            << "  |w|:           " << std::sqrt(norm_sq) << "\n"
            << "  b:             " << c.b << "\n"
            << "  learn steps:   " << c.learn_steps << "\n"
            << "  env steps:     " << c.env_steps << "\n"
            << "  epsilon steps: " << c.epsilon_steps << "\n"
            << "  seed:          " << c.seed << "\n"
            << "  provider:      " << c.provider.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive subtask-order planner: train, evaluate, and run learned plans"};
  app.require_subcommand(1);

  std::string config_path, out_dir, checkpoint_path, dataset_path, sample_path;
  std::string policy_name = "learned";
  std::string kind_name, language = "en", filter_name;
  std::uint64_t seed = 0;
  int k = 4, n = 100;

  CLI::App* train = app.add_subcommand("train", "Train a planner head on one or more datasets");
  train->add_option("--config", config_path, "Run config JSON")->required();
  train->add_option("--out", out_dir, "Output directory (overrides the config)");

  CLI::App* eval = app.add_subcommand("eval", "Score a policy against a dataset");
  eval->add_option("--checkpoint", checkpoint_path, "Trained checkpoint JSON");
  eval->add_option("--dataset", dataset_path, "Dataset (JSON lines)")->required();
  eval->add_option("--policy", policy_name, "learned | random | fixed");
  eval->add_option("--kind", kind_name, "Task kind (defaults to the checkpoint's)");
  eval->add_option("--language", language, "Language tag");
  eval->add_option("--seed", seed, "Random-policy seed");
  eval->add_option("--filter", filter_name, "Complexity filter preset");
  eval->add_option("--config", config_path, "Run config JSON for executor/templates");
  eval->add_option("--out", out_dir, "Directory for metrics.json / metrics.csv");

  CLI::App* infer = app.add_subcommand("infer", "Plan and solve one sample");
  infer->add_option("--checkpoint", checkpoint_path, "Trained checkpoint JSON")->required();
  infer->add_option("--sample", sample_path, "Single-sample JSON file")->required();
  infer->add_option("--config", config_path, "Run config JSON for executor/templates");
  infer->add_option("--language", language, "Language tag");

  CLI::App* gen = app.add_subcommand("gen-synthetic", "Write a planted-order dataset");
  gen->add_option("--k", k, "Candidates per sample (2..8)");
  gen->add_option("--n", n, "Sample count");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--out", out_dir, "Output dataset path")->required();

  CLI::App* inspect = app.add_subcommand("inspect", "Summarize a checkpoint");
  inspect->add_option("--checkpoint", checkpoint_path, "Checkpoint JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (train->parsed()) return cmd_train(config_path, out_dir);
    if (eval->parsed()) {
      return cmd_eval(checkpoint_path, dataset_path, policy_name, kind_name, language, seed,
                      filter_name, config_path, out_dir);
    }
    if (infer->parsed()) return cmd_infer(checkpoint_path, sample_path, config_path, language);
    if (gen->parsed()) return cmd_gen_synthetic(k, n, seed, out_dir);
    if (inspect->parsed()) return cmd_inspect(checkpoint_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
