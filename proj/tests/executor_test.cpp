#include <doctest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "rlap/errors.hpp"
#include "rlap/executor.hpp"

using namespace rlap;
using nlohmann::json;

namespace {

// Loopback stub bound to an ephemeral port, torn down with the test.
struct StubServer {
  httplib::Server server;
  int port = 0;
  std::thread thread;

  StubServer() {
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~StubServer() {
    server.stop();
    thread.join();
  }

  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  }
};

std::string completion_body(const std::string& content) {
  return json{{"choices", {{{"message", {{"content", content}}}}}}}.dump();
}

ExecutorConfig quick_config(const std::string& url) {
  ExecutorConfig config;
  config.endpoint_url = url;
  config.model_name = "stub-model";
  config.timeout_seconds = 0.25;
  config.max_retries = 1;
  config.backoff_seconds = 0.05;
  return config;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

TEST_CASE("scripted rules match on kind and substring, first hit wins") {
  ScriptedExecutor script(
      {{TaskKind::re_triple, "extract subject", "Answer: Maria"},
       {TaskKind::re_triple, "", "Answer: something"},
       {std::nullopt, "blank", "Answer: 2"}},
      "pass");

  CHECK(script.execute(TaskKind::re_triple, "Current subtask: extract subject.") ==
        "Answer: Maria");
  // Kind mismatch skips the first two rules even though the text matches.
  CHECK(script.execute(TaskKind::ee_event, "extract subject") == "pass");
  // Empty `contains` matches any prompt of the right kind.
  CHECK(script.execute(TaskKind::re_triple, "anything else") == "Answer: something");
  // Empty kind matches every kind.
  CHECK(script.execute(TaskKind::stc_sfb, "pick a blank") == "Answer: 2");
  CHECK(script.execute(TaskKind::stc_sfb, "no rule for this") == "pass");

  ScriptedExecutor empty;
  CHECK(empty.execute(TaskKind::synthetic, "whatever") == "");
}

TEST_CASE("remote success returns the completion and posts the chat payload") {
  StubServer stub;
  json seen_body;
  std::string seen_auth = "unset";
  std::string seen_type;
  stub.server.Post("/v1/chat/completions",
                   [&](const httplib::Request& req, httplib::Response& res) {
                     seen_body = json::parse(req.body);
                     seen_auth = req.has_header("Authorization")
                                     ? req.get_header_value("Authorization")
                                     : "";
                     seen_type = req.get_header_value("Content-Type");
                     res.set_content(completion_body("Answer: 42"), "application/json");
                   });

  setenv("STUB_EXECUTOR_KEY", "sk-test-123", 1);
  ExecutorConfig config = quick_config(stub.url());
  config.api_key_env = "STUB_EXECUTOR_KEY";

  CHECK(execute_remote("what is six times seven?", config) == "Answer: 42");
  CHECK(seen_body.at("model") == "stub-model");
  CHECK(seen_body.at("temperature") == 0.0);
  CHECK(seen_body.at("max_tokens") == 256);
  REQUIRE(seen_body.at("messages").size() == 1);
  CHECK(seen_body.at("messages").at(0).at("role") == "user");
  CHECK(seen_body.at("messages").at(0).at("content") == "what is six times seven?");
  CHECK(seen_auth == "Bearer sk-test-123");
  CHECK(seen_type == "application/json");
}

TEST_CASE("the api key is read from the environment at call time") {
  StubServer stub;
  std::vector<std::string> auths;
  stub.server.Post("/v1/chat/completions",
                   [&](const httplib::Request& req, httplib::Response& res) {
                     auths.push_back(req.has_header("Authorization")
                                         ? req.get_header_value("Authorization")
                                         : "<none>");
                     res.set_content(completion_body("ok"), "application/json");
                   });

  ExecutorConfig config = quick_config(stub.url());
  config.api_key_env = "STUB_EXECUTOR_LATE_KEY";

  unsetenv("STUB_EXECUTOR_LATE_KEY");
  CHECK(execute_remote("p1", config) == "ok");
  setenv("STUB_EXECUTOR_LATE_KEY", "sk-late", 1);
  CHECK(execute_remote("p2", config) == "ok");

  REQUIRE(auths.size() == 2);
  CHECK(auths[0] == "<none>");
  CHECK(auths[1] == "Bearer sk-late");
}

TEST_CASE("a failing status is retried; the next attempt can succeed") {
  StubServer stub;
  std::atomic<int> hits{0};
  stub.server.Post("/v1/chat/completions",
                   [&](const httplib::Request&, httplib::Response& res) {
                     if (hits.fetch_add(1) == 0) {
                       res.status = 500;
                       res.set_content("overloaded", "text/plain");
                     } else {
                       res.set_content(completion_body("recovered"), "application/json");
                     }
                   });

  const auto start = std::chrono::steady_clock::now();
  CHECK(execute_remote("p", quick_config(stub.url())) == "recovered");
  CHECK(hits.load() == 2);
  // The second attempt waits out the backoff first.
  CHECK(seconds_since(start) >= 0.05);
}

TEST_CASE("a status failure on every attempt is a transport error") {
  StubServer stub;
  std::atomic<int> hits{0};
  stub.server.Post("/v1/chat/completions",
                   [&](const httplib::Request&, httplib::Response& res) {
                     hits.fetch_add(1);
                     res.status = 404;
                   });

  CHECK_THROWS_AS(execute_remote("p", quick_config(stub.url())), ExecutorTransport);
  CHECK(hits.load() == 2);  // max_retries = 1
}

TEST_CASE("malformed completions are fatal and never retried") {
  StubServer stub;
  std::atomic<int> hits{0};
  std::string body = "this is not json";
  stub.server.Post("/v1/chat/completions",
                   [&](const httplib::Request&, httplib::Response& res) {
                     hits.fetch_add(1);
                     res.set_content(body, "application/json");
                   });

  const ExecutorConfig config = quick_config(stub.url());
  CHECK_THROWS_AS(execute_remote("p", config), ExecutorMalformed);
  CHECK(hits.load() == 1);

  // Valid JSON with the wrong shape counts the same.
  body = R"({"choices": []})";
  CHECK_THROWS_AS(execute_remote("p", config), ExecutorMalformed);
  CHECK(hits.load() == 2);
}

TEST_CASE("a stalled endpoint times out instead of blocking") {
  StubServer stub;
  stub.server.Post("/v1/chat/completions",
                   [&](const httplib::Request&, httplib::Response& res) {
                     std::this_thread::sleep_for(std::chrono::milliseconds(800));
                     res.set_content(completion_body("too late"), "application/json");
                   });

  const ExecutorConfig config = quick_config(stub.url());  // 0.25 s budget per attempt
  const auto start = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(execute_remote("p", config), ExecutorTimeout);
  const double elapsed = seconds_since(start);
  // Two attempts plus one backoff, with headroom; far less than the stall.
  CHECK(elapsed < 1.3);
}

TEST_CASE("a refused connection is a transport error") {
  ExecutorConfig config = quick_config("http://127.0.0.1:1/v1/chat/completions");
  config.max_retries = 0;
  CHECK_THROWS_AS(execute_remote("p", config), ExecutorTransport);
}

TEST_CASE("config validation rejects unusable settings") {
  ExecutorConfig config = quick_config("http://127.0.0.1:9/x");

  config.endpoint_url = "";
  CHECK_THROWS_AS(execute_remote("p", config), ExecutorTransport);
  config.endpoint_url = "no-scheme-here";
  CHECK_THROWS_AS(execute_remote("p", config), ExecutorTransport);

  config = quick_config("http://127.0.0.1:9/x");
  config.timeout_seconds = 0.0;
  CHECK_THROWS_AS(execute_remote("p", config), Error);

  config = quick_config("http://127.0.0.1:9/x");
  config.max_retries = -1;
  CHECK_THROWS_AS(execute_remote("p", config), Error);

  config = quick_config("http://127.0.0.1:9/x");
  config.max_tokens = 0;
  CHECK_THROWS_AS(execute_remote("p", config), Error);
}

TEST_CASE("the remote executor wrapper delegates with its stored config") {
  StubServer stub;
  stub.server.Post("/v1/chat/completions",
                   [&](const httplib::Request&, httplib::Response& res) {
                     res.set_content(completion_body("wrapped"), "application/json");
                   });

  RemoteExecutor executor(quick_config(stub.url()));
  CHECK(executor.execute(TaskKind::re_triple, "prompt") == "wrapped");
  CHECK(executor.config().model_name == "stub-model");
}
