#include "rlap/templates.hpp"

#include <fstream>

#include <json.hpp>

#include "rlap/errors.hpp"

namespace rlap {

namespace {

std::map<std::string, std::string> builtin_map() {
  return {
      {"mrc_extractive",
       "Work through the passage one sentence at a time.\n"
       "Task: {task}\n"
       "Requirements: {requirements}\n"
       "Passage: {context}\n"
       "Notes so far: {results}\n"
       "Current subtask: read and note this sentence: {action}\n"
       "Reply with a one-line note about this sentence."},
      {"mrc_extractive_final",
       "\nAll sentences have been read.\n"
       "Question: {question}\n"
       "Answer the question using the notes and the passage. Give the answer "
       "span on a final line in the form 'Answer: <span>'."},
      {"mrc_multichoice",
       "Work through the passage one sentence at a time.\n"
       "Task: {task}\n"
       "Requirements: {requirements}\n"
       "Passage: {context}\n"
       "Notes so far: {results}\n"
       "Current subtask: read and note this sentence: {action}\n"
       "Reply with a one-line note about this sentence."},
      {"mrc_multichoice_final",
       "\nAll sentences have been read.\n"
       "Question: {question}\n"
       "Choose the best option. Give the option letter on a final line in the "
       "form 'Answer: <letter>'."},
      {"re_triple",
       "Extract structured information from the context.\n"
       "Task: {task}\n"
       "Context: {context}\n"
       "Requirements: {requirements}\n"
       "Extracted so far: {results}\n"
       "Current subtask: {action}.\n"
       "Output exactly one entity span copied from the context on a final "
       "line in the form 'Answer: <entity>'."},
      {"ee_event",
       "Extract event arguments from the context.\n"
       "Task: {task}\n"
       "Context: {context}\n"
       "Requirements: {requirements}\n"
       "Extracted so far: {results}\n"
       "Current subtask: {action}.\n"
       "Output exactly one argument span copied from the context on a final "
       "line in the form 'Answer: <argument>'."},
      {"stc_sfb",
       "Complete the passage by filling in blanks.\n"
       "Task: {task}\n"
       "Passage: {context}\n"
       "Requirements: {requirements}\n"
       "Filled so far: {results}\n"
       "Sentence to place: {action}\n"
       "Pick the blank where this sentence belongs. Give the blank number on "
       "a final line in the form 'Answer: <number>'."},
  };
}

}  // namespace

TemplateSet TemplateSet::builtin() {
  TemplateSet set;
  set.templates_ = builtin_map();
  return set;
}

TemplateSet TemplateSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open template file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad template file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("template file must hold a JSON object: " + path);
  TemplateSet set;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) {
      throw ConfigError("template '" + key + "' in " + path + " is not a string");
    }
    set.templates_[key] = value.get<std::string>();
  }
  return set;
}

const std::string& TemplateSet::get(const std::string& key) const {
  const auto it = templates_.find(key);
  if (it == templates_.end()) throw MissingTemplate("no template for key: " + key);
  return it->second;
}

bool TemplateSet::has(const std::string& key) const { return templates_.count(key) > 0; }

std::string render_template(const std::string& tpl,
                            const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(tpl.size());
  std::size_t i = 0;
  while (i < tpl.size()) {
    const std::size_t open = tpl.find('{', i);
    if (open == std::string::npos) {
      out.append(tpl, i, std::string::npos);
      break;
    }
    const std::size_t close = tpl.find('}', open);
    if (close == std::string::npos) {
      out.append(tpl, i, std::string::npos);
      break;
    }
    out.append(tpl, i, open - i);
    const std::string name = tpl.substr(open + 1, close - open - 1);
    const auto it = slots.find(name);
    if (it != slots.end()) {
      out.append(it->second);
    } else {
      out.append(tpl, open, close - open + 1);  // unknown placeholders stay literal
    }
    i = close + 1;
  }
  return out;
}

}  // namespace rlap
