#include "rlap/dataset.hpp"

#include <fstream>
#include <map>
#include <set>

#include "rlap/errors.hpp"
#include "rlap/text.hpp"

namespace rlap {

namespace {

std::string require_string(const nlohmann::json& j, const char* field, long line) {
  const auto it = j.find(field);
  if (it == j.end() || !it->is_string()) {
    throw SchemaError(line, std::string("missing or non-string field '") + field + "'");
  }
  return it->get<std::string>();
}

std::string require_nonempty(const nlohmann::json& j, const char* field, long line) {
  std::string value = require_string(j, field, line);
  if (canonical_text(value).empty()) {
    throw SchemaError(line, std::string("field '") + field + "' is empty");
  }
  return value;
}

int optional_hint(const nlohmann::json& j, long line) {
  const auto it = j.find("complexity_hint");
  if (it == j.end()) return 0;
  if (!it->is_number_integer()) {
    throw SchemaError(line, "complexity_hint must be an integer");
  }
  return it->get<int>();
}

void segment_mrc(TaskSample& s, long line) {
  s.candidates = split_sentences(s.context);
  if (s.candidates.size() < 3) {
    throw TooShortContext("line " + std::to_string(line) + ": context has " +
                          std::to_string(s.candidates.size()) +
                          " sentences, need at least 3");
  }
}

}  // namespace

TaskSample parse_sample(const nlohmann::json& j, TaskKind kind, const std::string& language,
                        long line) {
  if (!j.is_object()) throw SchemaError(line, "record is not a JSON object");
  TaskSample s;
  s.kind = kind;
  s.language = language;
  s.sample_id = require_nonempty(j, "id", line);
  s.complexity_hint = optional_hint(j, line);

  switch (kind) {
    case TaskKind::mrc_extractive: {
      s.context = require_nonempty(j, "context", line);
      s.question_or_schema = require_nonempty(j, "question", line);
      s.ground_truth.answer = require_string(j, "answer", line);
      segment_mrc(s, line);
      break;
    }
    case TaskKind::mrc_multichoice: {
      s.context = require_nonempty(j, "context", line);
      s.question_or_schema = require_nonempty(j, "question", line);
      const auto options = j.find("options");
      if (options == j.end() || !options->is_array() || options->size() < 2) {
        throw SchemaError(line, "multichoice needs an 'options' array of at least 2");
      }
      for (const auto& opt : *options) {
        if (!opt.is_string()) throw SchemaError(line, "options must be strings");
        s.options.push_back(opt.get<std::string>());
      }
      if (s.options.size() > 26) throw SchemaError(line, "more than 26 options");
      const std::string letter = require_nonempty(j, "answer_letter", line);
      const auto parsed = first_letter_upper(letter);
      if (!parsed || *parsed >= static_cast<char>('A' + s.options.size())) {
        throw SchemaError(line, "answer_letter '" + letter + "' does not name an option");
      }
      s.ground_truth.answer = std::string(1, *parsed);
      segment_mrc(s, line);
      break;
    }
    case TaskKind::re_triple: {
      s.context = require_nonempty(j, "context", line);
      s.question_or_schema = require_nonempty(j, "relation", line);
      s.candidates = {"subject", "object"};
      s.ground_truth.slot_args["subject"] = require_nonempty(j, "subject", line);
      s.ground_truth.slot_args["object"] = require_nonempty(j, "object", line);
      break;
    }
    case TaskKind::ee_event: {
      s.context = require_nonempty(j, "context", line);
      s.question_or_schema = require_nonempty(j, "event_type", line);
      const auto roles = j.find("roles");
      if (roles == j.end() || !roles->is_array() || roles->empty()) {
        throw SchemaError(line, "event needs a non-empty 'roles' array");
      }
      for (const auto& entry : *roles) {
        if (!entry.is_object()) throw SchemaError(line, "each role must be an object");
        const std::string role = require_nonempty(entry, "role", line);
        const std::string argument = require_nonempty(entry, "argument", line);
        if (s.ground_truth.slot_args.count(role) > 0) {
          throw SchemaError(line, "duplicate role '" + role + "'");
        }
        s.candidates.push_back(role);
        s.ground_truth.slot_args[role] = argument;
      }
      break;
    }
    case TaskKind::stc_s2p: {
      const auto sentences = j.find("sentences_gold_order");
      if (sentences == j.end() || !sentences->is_array() || sentences->size() < 2) {
        throw SchemaError(line, "need a 'sentences_gold_order' array of at least 2");
      }
      for (const auto& sentence : *sentences) {
        if (!sentence.is_string() || sentence.get<std::string>().empty()) {
          throw SchemaError(line, "sentences must be non-empty strings");
        }
        s.ground_truth.sentences.push_back(sentence.get<std::string>());
      }
      s.candidates = s.ground_truth.sentences;
      s.context = join(s.ground_truth.sentences, " ");
      break;
    }
    case TaskKind::stc_sfb: {
      s.context = require_nonempty(j, "blanked_context", line);
      s.question_or_schema = s.context;
      const auto blanks = j.find("blanks");
      if (blanks == j.end() || !blanks->is_object() || blanks->empty()) {
        throw SchemaError(line, "need a non-empty 'blanks' object");
      }
      for (const auto& [key, value] : blanks->items()) {
        const auto idx = first_integer(key);
        if (!idx || *idx <= 0 || std::to_string(*idx) != key) {
          throw SchemaError(line, "blank index '" + key + "' is not a positive integer");
        }
        if (!value.is_string() || value.get<std::string>().empty()) {
          throw SchemaError(line, "blank sentences must be non-empty strings");
        }
        s.ground_truth.blank_map[*idx] = value.get<std::string>();
      }
      const auto candidates = j.find("candidates");
      if (candidates == j.end() || !candidates->is_array()) {
        throw SchemaError(line, "need a 'candidates' array");
      }
      for (const auto& c : *candidates) {
        if (!c.is_string() || c.get<std::string>().empty()) {
          throw SchemaError(line, "candidates must be non-empty strings");
        }
        s.candidates.push_back(c.get<std::string>());
      }
      if (s.candidates.size() != s.ground_truth.blank_map.size()) {
        throw SchemaError(line, "candidate count does not match blank count");
      }
      std::multiset<std::string> from_blanks, from_candidates(s.candidates.begin(),
                                                              s.candidates.end());
      for (const auto& [idx, sentence] : s.ground_truth.blank_map) {
        from_blanks.insert(sentence);
        const std::string marker = "[blank" + std::to_string(idx) + "]";
        if (s.context.find(marker) == std::string::npos) {
          throw SchemaError(line, "blanked_context lacks marker " + marker);
        }
      }
      if (from_blanks != from_candidates) {
        throw SchemaError(line, "candidates and blank sentences disagree");
      }
      break;
    }
    case TaskKind::synthetic: {
      const auto candidates = j.find("candidates");
      if (candidates == j.end() || !candidates->is_array() || candidates->size() < 2) {
        throw SchemaError(line, "need a 'candidates' array of at least 2");
      }
      for (const auto& c : *candidates) {
        if (!c.is_string() || c.get<std::string>().empty()) {
          throw SchemaError(line, "candidates must be non-empty strings");
        }
        s.candidates.push_back(c.get<std::string>());
      }
      const auto order = j.find("gold_order");
      if (order == j.end() || !order->is_array() ||
          order->size() != s.candidates.size()) {
        throw SchemaError(line, "need a 'gold_order' array matching the candidates");
      }
      std::set<int> seen;
      for (const auto& idx : *order) {
        if (!idx.is_number_integer()) throw SchemaError(line, "gold_order must hold integers");
        const int id = idx.get<int>();
        if (id < 0 || id >= static_cast<int>(s.candidates.size()) || !seen.insert(id).second) {
          throw SchemaError(line, "gold_order is not a permutation of candidate ids");
        }
        s.ground_truth.gold_order.push_back(id);
      }
      s.context = join(s.candidates, " ");
      break;
    }
  }
  return s;
}

Dataset ingest(const std::string& path, TaskKind kind, const std::string& language) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset: " + path);

  Dataset dataset;
  dataset.path = path;
  dataset.kind = kind;
  dataset.language = language;

  std::set<std::string> ids;
  std::string raw;
  long line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (canonical_text(raw).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(line, std::string("bad JSON: ") + e.what());
    }
    TaskSample sample = parse_sample(j, kind, language, line);
    if (!ids.insert(sample.sample_id).second) {
      throw SchemaError(line, "duplicate sample id '" + sample.sample_id + "'");
    }
    dataset.samples.push_back(std::move(sample));
  }
  return dataset;
}

nlohmann::json sample_to_json(const TaskSample& sample) {
  nlohmann::json j{{"id", sample.sample_id}};
  if (sample.complexity_hint != 0) j["complexity_hint"] = sample.complexity_hint;
  switch (sample.kind) {
    case TaskKind::mrc_extractive:
      j["context"] = sample.context;
      j["question"] = sample.question_or_schema;
      j["answer"] = sample.ground_truth.answer;
      break;
    case TaskKind::mrc_multichoice:
      j["context"] = sample.context;
      j["question"] = sample.question_or_schema;
      j["options"] = sample.options;
      j["answer_letter"] = sample.ground_truth.answer;
      break;
    case TaskKind::re_triple:
      j["context"] = sample.context;
      j["relation"] = sample.question_or_schema;
      j["subject"] = sample.ground_truth.slot_args.at("subject");
      j["object"] = sample.ground_truth.slot_args.at("object");
      break;
    case TaskKind::ee_event: {
      j["context"] = sample.context;
      j["event_type"] = sample.question_or_schema;
      nlohmann::json roles = nlohmann::json::array();
      for (const std::string& role : sample.candidates) {
        roles.push_back({{"role", role},
                         {"argument", sample.ground_truth.slot_args.at(role)}});
      }
      j["roles"] = std::move(roles);
      break;
    }
    case TaskKind::stc_s2p:
      j["sentences_gold_order"] = sample.ground_truth.sentences;
      break;
    case TaskKind::stc_sfb: {
      j["blanked_context"] = sample.context;
      nlohmann::json blanks = nlohmann::json::object();
      for (const auto& [idx, sentence] : sample.ground_truth.blank_map) {
        blanks[std::to_string(idx)] = sentence;
      }
      j["blanks"] = std::move(blanks);
      j["candidates"] = sample.candidates;
      break;
    }
    case TaskKind::synthetic:
      j["candidates"] = sample.candidates;
      j["gold_order"] = sample.ground_truth.gold_order;
      break;
  }
  return j;
}

void write_dataset(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write dataset: " + path);
  for (const TaskSample& sample : dataset.samples) {
    out << sample_to_json(sample).dump() << "\n";
  }
}

}  // namespace rlap
