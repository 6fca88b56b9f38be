#pragma once

#include <map>
#include <string>

namespace rlap {

// Prompt templates keyed by task kind (plus "<kind>_final" suffix templates
// for the reading-comprehension answer step). Placeholders: {task} {context}
// {results} {requirements} {action} {question}.
class TemplateSet {
 public:
  static TemplateSet builtin();
  static TemplateSet load(const std::string& path);  // JSON object of key -> template

  const std::string& get(const std::string& key) const;  // throws MissingTemplate
  bool has(const std::string& key) const;

  bool operator==(const TemplateSet&) const = default;

 private:
  std::map<std::string, std::string> templates_;
};

std::string render_template(const std::string& tpl,
                            const std::map<std::string, std::string>& slots);

}  // namespace rlap
