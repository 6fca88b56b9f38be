#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rlap/environment.hpp"
#include "rlap/executor.hpp"
#include "rlap/metrics.hpp"
#include "rlap/policy.hpp"
#include "rlap/sample.hpp"

namespace rlap {

// Keeps only samples at or above the configured sizes. min_candidates gates
// on the action-space size (sentences, roles, ...); min_complexity_hint gates
// on the dataset-supplied difficulty count.
struct ComplexityFilter {
  std::string name = "custom";
  std::size_t min_candidates = 0;
  int min_complexity_hint = 0;

  bool keeps(const TaskSample& sample) const {
    return sample.candidates.size() >= min_candidates &&
           sample.complexity_hint >= min_complexity_hint;
  }
};

// Named presets; unknown names throw ConfigError.
ComplexityFilter filter_preset(const std::string& name);

struct MetricsReport {
  TaskKind kind{};
  std::size_t n_samples = 0;    // scored samples (after filtering)
  std::size_t n_filtered = 0;   // dropped by the filter
  std::size_t n_failed = 0;     // executor gave up; scored as incorrect
  std::string filter_name;
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> cac;
  std::optional<double> soc;
  std::optional<double> bac;
  bool f1_degenerate = false;
};

nlohmann::json to_json(const MetricsReport& report);
std::string to_csv(const MetricsReport& report);

// Runs the policy greedily over every kept sample and scores the kind's
// metrics. Executor failures mark the sample incorrect but keep it counted.
MetricsReport evaluate_policy(Policy& policy, const Dataset& dataset, const Environment& env,
                              Executor* executor,
                              const std::optional<ComplexityFilter>& filter = std::nullopt);

}  // namespace rlap
