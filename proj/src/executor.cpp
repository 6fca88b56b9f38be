#include "rlap/executor.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "rlap/errors.hpp"

namespace rlap {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ExecutorTransport("endpoint url has no scheme: " + url);
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

void validate(const ExecutorConfig& config) {
  if (config.endpoint_url.empty()) throw ExecutorTransport("endpoint url is empty");
  if (config.timeout_seconds <= 0) throw Error("timeout must be positive");
  if (config.max_retries < 0) throw Error("max_retries must be >= 0");
  if (config.temperature < 0) throw Error("temperature must be >= 0");
  if (config.max_tokens <= 0) throw Error("max_tokens must be positive");
}

bool is_timeout(httplib::Error err) {
  // A stalled peer surfaces as a read/write failure once the socket timeout
  // fires, so those count as timeouts here.
  return err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
         err == httplib::Error::Write;
}

httplib::Headers auth_headers(const std::string& api_key_env) {
  httplib::Headers headers;
  if (!api_key_env.empty()) {
    if (const char* key = std::getenv(api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }
  return headers;
}

void apply_timeouts(httplib::Client& client, double seconds) {
  const auto ms = std::chrono::milliseconds(static_cast<long>(seconds * 1000.0));
  client.set_connection_timeout(ms);
  client.set_read_timeout(ms);
  client.set_write_timeout(ms);
}

}  // namespace

std::string execute_remote(const std::string& prompt, const ExecutorConfig& config) {
  validate(config);
  const SplitUrl url = split_url(config.endpoint_url);

  const nlohmann::json body{
      {"model", config.model_name},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
      {"temperature", config.temperature},
      {"max_tokens", config.max_tokens},
  };
  const std::string payload = body.dump();
  const httplib::Headers headers = auth_headers(config.api_key_env);

  bool timed_out = false;
  std::string last_failure = "no attempt made";
  const int attempts = config.max_retries + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(static_cast<long>(config.backoff_seconds * 1000.0)));
    }
    httplib::Client client(url.origin);
    apply_timeouts(client, config.timeout_seconds);
    const httplib::Result res = client.Post(url.path, headers, payload, "application/json");
    if (!res) {
      timed_out = is_timeout(res.error());
      last_failure = httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      timed_out = false;
      last_failure = "http status " + std::to_string(res->status);
      continue;
    }
    try {
      const nlohmann::json reply = nlohmann::json::parse(res->body);
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ExecutorMalformed(std::string("bad completion payload: ") + e.what());
    }
  }
  if (timed_out) {
    throw ExecutorTimeout("executor timed out after " + std::to_string(attempts) +
                          " attempt(s): " + last_failure);
  }
  throw ExecutorTransport("executor failed after " + std::to_string(attempts) +
                          " attempt(s): " + last_failure);
}

std::string ScriptedExecutor::execute(TaskKind kind, const std::string& prompt) {
  return execute_scripted(kind, prompt, *this);
}

std::string execute_scripted(TaskKind kind, const std::string& prompt,
                             const ScriptedExecutor& script) {
  for (const ScriptedExecutor::Rule& rule : script.rules()) {
    if (rule.kind && *rule.kind != kind) continue;
    if (!rule.contains.empty() && prompt.find(rule.contains) == std::string::npos) continue;
    return rule.response;
  }
  return script.default_response();
}

}  // namespace rlap
