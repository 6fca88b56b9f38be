#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rlap/mdp.hpp"

namespace rlap {

// Remote chat-completion settings. The API key is read from the environment
// variable named by api_key_env at call time; it is never stored.
struct ExecutorConfig {
  std::string endpoint_url;
  std::string model_name;
  std::string api_key_env;
  double timeout_seconds = 6.0;
  int max_retries = 2;
  double temperature = 0.0;
  int max_tokens = 256;
  double backoff_seconds = 0.5;
};

class Executor {
 public:
  virtual ~Executor() = default;
  virtual std::string execute(TaskKind kind, const std::string& prompt) = 0;
};

// POSTs {model, messages, temperature, max_tokens} and returns
// choices[0].message.content. Retries timeouts and transport failures up to
// max_retries with a fixed backoff; total blocking time stays within
// (max_retries + 1) * timeout plus the backoffs. Throws ExecutorTimeout,
// ExecutorTransport, or ExecutorMalformed.
std::string execute_remote(const std::string& prompt, const ExecutorConfig& config);

class RemoteExecutor final : public Executor {
 public:
  explicit RemoteExecutor(ExecutorConfig config) : config_(std::move(config)) {}
  std::string execute(TaskKind, const std::string& prompt) override {
    return execute_remote(prompt, config_);
  }
  const ExecutorConfig& config() const { return config_; }

 private:
  ExecutorConfig config_;
};

// Deterministic stand-in: first matching (kind, substring) rule wins, else
// the default response.
class ScriptedExecutor final : public Executor {
 public:
  struct Rule {
    std::optional<TaskKind> kind;  // empty matches any kind
    std::string contains;          // empty matches any prompt
    std::string response;
  };

  ScriptedExecutor() = default;
  ScriptedExecutor(std::vector<Rule> rules, std::string default_response)
      : rules_(std::move(rules)), default_response_(std::move(default_response)) {}

  std::string execute(TaskKind kind, const std::string& prompt) override;

  const std::vector<Rule>& rules() const { return rules_; }
  const std::string& default_response() const { return default_response_; }

 private:
  std::vector<Rule> rules_;
  std::string default_response_;
};

std::string execute_scripted(TaskKind kind, const std::string& prompt,
                             const ScriptedExecutor& script);

}  // namespace rlap
