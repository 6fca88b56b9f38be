#include "rlap/evaluate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rlap/episode.hpp"
#include "rlap/errors.hpp"

namespace rlap {

Policy Policy::learned(std::shared_ptr<ActorModel> actor) {
  if (!actor) throw Error("learned policy needs an actor");
  return Policy(Kind::learned, std::move(actor), 0);
}

Policy Policy::random(std::uint64_t seed) { return Policy(Kind::random, nullptr, seed); }

Policy Policy::fixed_sequence() { return Policy(Kind::fixed_sequence, nullptr, 0); }

SubtaskAction Policy::choose(const StateRecord& state, const ActionSpace& space) {
  if (space.remaining.empty()) throw EmptyActionSpace("no actions left to select");
  switch (kind_) {
    case Kind::learned:
      return select_greedy(*actor_, state, space);
    case Kind::random:
      return space.remaining[uniform_index(rng_, space.remaining.size())];
    case Kind::fixed_sequence:
      return *std::min_element(space.remaining.begin(), space.remaining.end(),
                               [](const SubtaskAction& a, const SubtaskAction& b) {
                                 return a.action_id < b.action_id;
                               });
  }
  throw Error("unknown policy kind");
}

ComplexityFilter filter_preset(const std::string& name) {
  if (name == "none") return {.name = "none"};
  if (name == "mrc_complex") return {.name = "mrc_complex", .min_candidates = 6};
  if (name == "ee_complex") return {.name = "ee_complex", .min_candidates = 5};
  if (name == "re_complex_hacred") return {.name = "re_complex_hacred", .min_complexity_hint = 11};
  if (name == "re_complex_nyt10") return {.name = "re_complex_nyt10", .min_complexity_hint = 4};
  throw ConfigError("unknown complexity filter preset: " + name);
}

nlohmann::json to_json(const MetricsReport& report) {
  nlohmann::json j{
      {"kind", std::string(to_string(report.kind))},
      {"n_samples", report.n_samples},
      {"n_filtered", report.n_filtered},
      {"n_failed", report.n_failed},
  };
  if (!report.filter_name.empty()) j["filter"] = report.filter_name;
  if (report.accuracy) j["accuracy"] = *report.accuracy;
  if (report.precision) j["precision"] = *report.precision;
  if (report.recall) j["recall"] = *report.recall;
  if (report.f1) {
    j["f1"] = *report.f1;
    j["f1_degenerate"] = report.f1_degenerate;
  }
  if (report.cac) j["cac"] = *report.cac;
  if (report.soc) j["soc"] = *report.soc;
  if (report.bac) j["bac"] = *report.bac;
  return j;
}

std::string to_csv(const MetricsReport& report) {
  std::ostringstream header;
  std::ostringstream row;
  header << "kind,n_samples,n_filtered,n_failed,filter";
  row << to_string(report.kind) << ',' << report.n_samples << ',' << report.n_filtered << ','
      << report.n_failed << ',' << report.filter_name;
  const auto emit = [&](const char* name, const std::optional<double>& value) {
    header << ',' << name;
    row << ',';
    if (value) row << *value;
  };
  emit("accuracy", report.accuracy);
  emit("precision", report.precision);
  emit("recall", report.recall);
  emit("f1", report.f1);
  emit("cac", report.cac);
  emit("soc", report.soc);
  emit("bac", report.bac);
  return header.str() + "\n" + row.str() + "\n";
}

MetricsReport evaluate_policy(Policy& policy, const Dataset& dataset, const Environment& env,
                              Executor* executor,
                              const std::optional<ComplexityFilter>& filter) {
  MetricsReport report;
  report.kind = dataset.kind;
  if (filter) report.filter_name = filter->name;

  long answer_hits = 0;
  long order_hits = 0;
  std::vector<std::map<std::string, std::string>> pred_slots, gold_slots;
  std::vector<std::string> pred_texts, gold_texts;
  std::vector<std::map<int, std::string>> pred_blanks, gold_blanks;
  double soc_sum = 0.0;

  for (const TaskSample& sample : dataset.samples) {
    if (filter && !filter->keeps(sample)) {
      ++report.n_filtered;
      continue;
    }
    ++report.n_samples;

    const ActionChooser choose = [&](const StateRecord& state, const ActionSpace& space) {
      return policy.choose(state, space);
    };
    const EpisodeResult episode = run_episode(env, sample, choose, executor);
    if (episode.failed) ++report.n_failed;
    const FinalPrediction pred =
        episode.failed ? FinalPrediction{} : extract_final(env, sample, episode);

    switch (sample.kind) {
      case TaskKind::mrc_extractive:
      case TaskKind::mrc_multichoice:
        if (!episode.failed && answer_correct(sample, pred.final_text)) ++answer_hits;
        break;
      case TaskKind::re_triple:
      case TaskKind::ee_event:
        pred_slots.push_back(pred.slots);
        gold_slots.push_back(sample.ground_truth.slot_args);
        break;
      case TaskKind::stc_s2p: {
        pred_texts.push_back(pred.final_text);
        gold_texts.push_back(gold_final_text(sample));
        std::vector<int> gold_order(sample.candidates.size());
        std::iota(gold_order.begin(), gold_order.end(), 0);
        soc_sum += episode.failed ? 0.0 : soc_single(pred.order, gold_order);
        break;
      }
      case TaskKind::synthetic:
        pred_texts.push_back(pred.final_text);
        gold_texts.push_back(gold_final_text(sample));
        if (!episode.failed && pred.order == sample.ground_truth.gold_order) ++order_hits;
        soc_sum +=
            episode.failed ? 0.0 : soc_single(pred.order, sample.ground_truth.gold_order);
        break;
      case TaskKind::stc_sfb:
        pred_blanks.push_back(pred.blanks);
        gold_blanks.push_back(sample.ground_truth.blank_map);
        pred_texts.push_back(pred.final_text);
        gold_texts.push_back(gold_final_text(sample));
        break;
    }
  }

  const double n = static_cast<double>(report.n_samples);
  switch (dataset.kind) {
    case TaskKind::mrc_extractive:
    case TaskKind::mrc_multichoice:
      report.accuracy = n > 0 ? answer_hits / n : 0.0;
      break;
    case TaskKind::re_triple:
    case TaskKind::ee_event: {
      const SlotF1 scores = slot_f1(pred_slots, gold_slots);
      report.precision = scores.precision;
      report.recall = scores.recall;
      report.f1 = scores.f1;
      report.f1_degenerate = scores.degenerate;
      break;
    }
    case TaskKind::stc_s2p:
      report.cac = cac(pred_texts, gold_texts);
      report.soc = n > 0 ? soc_sum / n : 0.0;
      break;
    case TaskKind::synthetic:
      report.accuracy = n > 0 ? order_hits / n : 0.0;
      report.cac = cac(pred_texts, gold_texts);
      report.soc = n > 0 ? soc_sum / n : 0.0;
      break;
    case TaskKind::stc_sfb:
      report.bac = bac(pred_blanks, gold_blanks);
      report.cac = cac(pred_texts, gold_texts);
      break;
  }
  return report;
}

}  // namespace rlap
