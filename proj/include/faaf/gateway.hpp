#pragma once

// Uniform interface to model backends: structured tool-call requests and
// plain prompt requests against HTTP chat-completion endpoints, plus three
// deterministic mock backends for offline work. The gateway wraps every
// backend with a content-addressed response cache, a call/token budget
// guard, a per-backend concurrency limit and bounded transport retries.
//
// Transport retries are distinct from format retries: a response that
// arrives but fails validation is never re-requested. Each logical request
// gets exactly one upstream attempt for response-format purposes.

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "faaf/core.hpp"
#include "faaf/dataset.hpp"
#include "faaf/detail/sha256.hpp"
#include "faaf/detail/xml.hpp"
#include "faaf/function_builder.hpp"
#include "faaf/prompts.hpp"
#include "faaf/response_parser.hpp"
#include "faaf/usage.hpp"

namespace faaf {

enum class RequestMode { ToolCall, Prompt };

inline std::string_view to_string(RequestMode mode) {
  return mode == RequestMode::ToolCall ? "tool_call" : "prompt";
}

struct ModelRequest {
  RequestMode mode = RequestMode::Prompt;
  std::string system_prompt;
  std::string user_prompt;
  std::optional<WireSchema> tool_schema;
  std::string model_id = "mock";
  double temperature = 0.0;
  int max_output_tokens = 1024;

  void validate() const {
    if ((mode == RequestMode::ToolCall) != tool_schema.has_value()) {
      throw Error(ErrorCode::InvalidConfig,
                  "tool_schema must be present iff mode is ToolCall");
    }
    if (max_output_tokens <= 0) {
      throw Error(ErrorCode::InvalidConfig, "max_output_tokens must be positive");
    }
  }
};

enum class BackendKind {
  HttpJsonTools,
  HttpXmlTools,
  MockOracle,
  MockScripted,
  MockAdversarial,
};

inline std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::HttpJsonTools: return "http-json";
    case BackendKind::HttpXmlTools: return "http-xml";
    case BackendKind::MockOracle: return "mock-oracle";
    case BackendKind::MockScripted: return "mock-scripted";
    case BackendKind::MockAdversarial: return "mock-adversarial";
  }
  return "mock-oracle";
}

inline std::optional<BackendKind> backend_kind_from_string(std::string_view s) {
  if (s == "http-json") return BackendKind::HttpJsonTools;
  if (s == "http-xml") return BackendKind::HttpXmlTools;
  if (s == "mock-oracle") return BackendKind::MockOracle;
  if (s == "mock-scripted") return BackendKind::MockScripted;
  if (s == "mock-adversarial") return BackendKind::MockAdversarial;
  return std::nullopt;
}

inline bool is_mock(BackendKind kind) {
  return kind == BackendKind::MockOracle || kind == BackendKind::MockScripted ||
         kind == BackendKind::MockAdversarial;
}

/// Where and how to reach one backend. Credentials are referenced by
/// environment-variable name and never stored in run artifacts.
struct BackendDescriptor {
  BackendKind kind = BackendKind::MockOracle;
  std::string name = "mock-oracle";  // identity for cache keys and reports
  std::string endpoint;              // http(s)://host[:port]/path (live kinds)
  std::string model_id = "mock";
  std::string credential_env;        // env var holding the API key
  WireDialect dialect = WireDialect::JsonTool;  // tool dialect for mocks
  std::string dataset_path;          // MockOracle: gold labels source
  std::string fixture_path;          // MockScripted: recorded responses
  int max_concurrency = 4;
  int min_interval_ms = 0;

  void validate() const {
    if (trim(name).empty()) {
      throw Error(ErrorCode::InvalidConfig, "backend name must be non-empty");
    }
    if (is_mock(kind) && !credential_env.empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "mock backends require no credentials");
    }
    if (!is_mock(kind) && trim(endpoint).empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "backend '" + name + "' needs an endpoint URL");
    }
    if (kind == BackendKind::MockOracle && dataset_path.empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "mock-oracle needs a dataset_path for gold labels");
    }
    if (kind == BackendKind::MockScripted && fixture_path.empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "mock-scripted needs a fixture_path");
    }
    if (max_concurrency <= 0) {
      throw Error(ErrorCode::InvalidConfig, "max_concurrency must be positive");
    }
  }

  WireDialect tool_dialect() const {
    switch (kind) {
      case BackendKind::HttpJsonTools: return WireDialect::JsonTool;
      case BackendKind::HttpXmlTools: return WireDialect::XmlTool;
      default: return dialect;
    }
  }
};

/// Default system prompt per backend family: JSON-tool backends keep a
/// minimal prompt, XML-tool backends get a 1-shot function-calling example,
/// mocks ignore prompts entirely. Overridable by run configuration.
inline std::string default_system_prompt(const BackendDescriptor& backend,
                                         RequestMode mode) {
  if (is_mock(backend.kind)) return "";
  if (mode == RequestMode::ToolCall &&
      backend.tool_dialect() == WireDialect::XmlTool) {
    return std::string(prompts::kXmlToolSystemPrompt);
  }
  return std::string(prompts::kJsonToolSystemPrompt);
}

namespace detail {

/// ceil(len / 4): the documented character-based token estimate used when a
/// backend does not report usage (all mocks, and permissive HTTP servers).
inline std::int64_t estimate_tokens(std::size_t chars) {
  return static_cast<std::int64_t>((chars + 3) / 4);
}

inline UsageRecord synthesize_usage(const ModelRequest& request,
                                    std::string_view body) {
  UsageRecord usage;
  std::size_t prompt_chars =
      request.system_prompt.size() + request.user_prompt.size();
  if (request.tool_schema) prompt_chars += request.tool_schema->payload.size();
  usage.prompt_tokens = estimate_tokens(prompt_chars);
  usage.completion_tokens = estimate_tokens(body.size());
  usage.latency_ms = 0;
  usage.call_count = 1;
  return usage;
}

struct ToolArgument {
  std::string name;
  ArgumentRole role = ArgumentRole::Verdict;
  int fact_index = 0;
};

struct ParsedToolSchema {
  std::string title;
  std::vector<ToolArgument> arguments;
};

inline std::optional<int> index_after_prefix(std::string_view name,
                                             std::string_view prefix) {
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  auto digits = name.substr(prefix.size());
  if (digits.empty()) return std::nullopt;
  int value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

inline std::optional<ToolArgument> classify_argument(std::string_view name) {
  if (auto idx = index_after_prefix(name, "fact_")) {
    return ToolArgument{std::string(name), ArgumentRole::Verdict, *idx};
  }
  if (auto idx = index_after_prefix(name, "citation_")) {
    return ToolArgument{std::string(name), ArgumentRole::Citation, *idx};
  }
  return std::nullopt;
}

/// Reads argument names (in declared order) and the tool title back out of
/// a serialized tool description. Used by mock backends, which see only the
/// wire payload like a real model would.
inline ParsedToolSchema parse_tool_schema(const WireSchema& schema) {
  ParsedToolSchema parsed;
  if (schema.dialect == WireDialect::JsonTool) {
    auto j = nlohmann::ordered_json::parse(schema.payload, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::ValidationError,
                  "tool payload is not a JSON object");
    }
    parsed.title = j.value("title", "");
    for (const auto& [name, prop] : j.at("properties").items()) {
      if (auto arg = classify_argument(name)) parsed.arguments.push_back(*arg);
    }
    return parsed;
  }
  if (schema.dialect == WireDialect::XmlTool) {
    auto title = find_element(schema.payload, "tool_name");
    auto params = find_element(schema.payload, "parameters");
    if (!title || !params) {
      throw Error(ErrorCode::ValidationError, "malformed XML tool payload");
    }
    parsed.title = xml_unescape(trim(*title));
    std::size_t pos = 0;
    while (true) {
      auto block = find_element(*params, "parameter", pos);
      if (!block) break;
      auto name = find_element(*block, "name");
      if (name) {
        if (auto arg = classify_argument(xml_unescape(trim(*name)))) {
          parsed.arguments.push_back(*arg);
        }
      }
      pos = static_cast<std::size_t>(block->data() - params->data()) +
            block->size() + std::string_view("</parameter>").size();
    }
    return parsed;
  }
  throw Error(ErrorCode::UnsupportedDialect, "unsupported tool payload dialect");
}

struct ToolValue {
  std::string name;
  std::optional<std::string> value;  // nullopt encodes null / no value
};

inline std::string render_tool_body(const std::vector<ToolValue>& values,
                                    std::string_view title,
                                    WireDialect dialect) {
  if (dialect == WireDialect::JsonTool) {
    nlohmann::ordered_json body = nlohmann::ordered_json::object();
    for (const auto& entry : values) {
      if (entry.value) {
        body[entry.name] = *entry.value;
      } else {
        body[entry.name] = nullptr;
      }
    }
    return body.dump();
  }
  std::string out = "<invoke>\n<tool_name>" + xml_escape(title) +
                    "</tool_name>\n<parameters>\n";
  for (const auto& entry : values) {
    out += "<" + entry.name + ">";
    if (entry.value) out += xml_escape(*entry.value);
    out += "</" + entry.name + ">\n";
  }
  out += "</parameters>\n</invoke>";
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Backends
// ---------------------------------------------------------------------------

class Backend {
 public:
  virtual ~Backend() = default;
  virtual RawModelOutput invoke(const ModelRequest& request) = 0;
  /// Transport retries only make sense where a transport exists.
  virtual bool retryable() const { return false; }
};

/// Answers every request from a dataset's gold labels. Matches the passage
/// (and claim or question) embedded in the standard prompt templates, so an
/// end-to-end run against it must reproduce the gold labels exactly.
class OracleBackend : public Backend {
 public:
  explicit OracleBackend(BackendDescriptor descriptor)
      : descriptor_(std::move(descriptor)) {}

  RawModelOutput invoke(const ModelRequest& request) override {
    ensure_loaded();
    RawModelOutput out;
    if (request.mode == RequestMode::ToolCall) {
      out.dialect = request.tool_schema->dialect;
      out.body = answer_tool_call(request);
    } else {
      out.dialect = WireDialect::PlainText;
      out.body = answer_prompt(request.user_prompt);
    }
    out.usage = detail::synthesize_usage(request, out.body);
    return out;
  }

 private:
  struct PassageRef {
    const QARecord* record = nullptr;
    VariantKind variant = VariantKind::GroundTruth;
  };

  void ensure_loaded() {
    std::call_once(loaded_, [this] {
      dataset_ = load_dataset(descriptor_.dataset_path);
      for (const auto& record : dataset_.records) {
        for (VariantKind kind : kAllVariants) {
          auto it = record.answers.find(kind);
          if (it != record.answers.end()) {
            passages_[it->second] = {&record, kind};
          }
        }
      }
    });
  }

  const PassageRef& passage_ref(const std::string& passage) const {
    auto it = passages_.find(passage);
    if (it == passages_.end()) {
      throw Error(ErrorCode::ValidationError,
                  "oracle: passage does not match any dataset answer");
    }
    return it->second;
  }

  bool label_for(const PassageRef& ref, int fact_index) const {
    auto label = ref.record->gold_label(ref.variant, fact_index);
    if (!label) {
      throw Error(ErrorCode::ValidationError,
                  "oracle: no gold label for fact " +
                      std::to_string(fact_index) + " of record '" +
                      ref.record->id + "'");
    }
    return *label;
  }

  std::string answer_tool_call(const ModelRequest& request) const {
    auto passage = prompts::split_faaf_prompt(request.user_prompt);
    if (!passage) {
      throw Error(ErrorCode::ValidationError,
                  "oracle: tool-call prompt does not follow the standard "
                  "template");
    }
    const auto& ref = passage_ref(*passage);
    auto schema = detail::parse_tool_schema(*request.tool_schema);

    std::vector<detail::ToolValue> values;
    for (const auto& arg : schema.arguments) {
      bool label = label_for(ref, arg.fact_index);
      if (arg.role == ArgumentRole::Verdict) {
        values.push_back({arg.name, label ? "True" : "False"});
      } else {
        // Supported facts get the fact text itself as the excerpt.
        if (label && static_cast<std::size_t>(arg.fact_index) <
                         ref.record->facts.size()) {
          values.push_back(
              {arg.name, ref.record->facts[arg.fact_index].text});
        } else {
          values.push_back({arg.name, std::nullopt});
        }
      }
    }
    return detail::render_tool_body(values, schema.title,
                                    request.tool_schema->dialect);
  }

  std::string answer_prompt(const std::string& user_prompt) const {
    if (auto parts = prompts::split_fact_generation_prompt(user_prompt)) {
      for (const auto& record : dataset_.records) {
        if (record.question == parts->second) {
          std::string body;
          for (const auto& fact : record.facts) {
            body += "- " + fact.text + "\n";
          }
          return body;
        }
      }
      throw Error(ErrorCode::ValidationError,
                  "oracle: question does not match any dataset record");
    }
    auto parts = prompts::split_claim_prompt(user_prompt);
    if (!parts) {
      throw Error(ErrorCode::ValidationError,
                  "oracle: prompt does not follow a standard template");
    }
    const auto& ref = passage_ref(parts->first);
    for (const auto& fact : ref.record->facts) {
      if (fact.text == parts->second) {
        return label_for(ref, fact.index) ? "True" : "False";
      }
    }
    throw Error(ErrorCode::ValidationError,
                "oracle: claim does not match any fact of record '" +
                    ref.record->id + "'");
  }

  BackendDescriptor descriptor_;
  std::once_flag loaded_;
  DatasetFile dataset_;
  std::map<std::string, PassageRef> passages_;
};

/// Replays recorded responses from a fixture file, in order, byte-exactly.
class ScriptedBackend : public Backend {
 public:
  explicit ScriptedBackend(BackendDescriptor descriptor)
      : descriptor_(std::move(descriptor)) {}

  RawModelOutput invoke(const ModelRequest& request) override {
    std::call_once(loaded_, [this] { load_fixture(); });
    std::size_t index = next_.fetch_add(1);
    if (index >= entries_.size()) {
      throw Error(ErrorCode::TransportError,
                  "scripted fixture exhausted after " +
                      std::to_string(entries_.size()) + " responses");
    }
    const Entry& entry = entries_[index];
    RawModelOutput out;
    out.dialect = request.mode == RequestMode::ToolCall
                      ? request.tool_schema->dialect
                      : WireDialect::PlainText;
    out.body = entry.body;
    out.usage = detail::synthesize_usage(request, out.body);
    if (entry.prompt_tokens >= 0) out.usage.prompt_tokens = entry.prompt_tokens;
    if (entry.completion_tokens >= 0) {
      out.usage.completion_tokens = entry.completion_tokens;
    }
    if (entry.latency_ms >= 0) out.usage.latency_ms = entry.latency_ms;
    return out;
  }

 private:
  struct Entry {
    std::string body;
    std::int64_t prompt_tokens = -1;
    std::int64_t completion_tokens = -1;
    std::int64_t latency_ms = -1;
  };

  void load_fixture() {
    std::ifstream in(descriptor_.fixture_path);
    if (!in) {
      throw Error(ErrorCode::IoError,
                  "cannot open fixture " + descriptor_.fixture_path);
    }
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) {
      throw ParseError("fixture " + descriptor_.fixture_path +
                       " is not valid JSON");
    }
    const nlohmann::json& responses =
        j.is_array() ? j : j.at("responses");
    for (const auto& item : responses) {
      Entry entry;
      if (item.is_string()) {
        entry.body = item.get<std::string>();
      } else {
        entry.body = item.at("body").get<std::string>();
        entry.prompt_tokens = item.value("prompt_tokens", -1);
        entry.completion_tokens = item.value("completion_tokens", -1);
        entry.latency_ms = item.value("latency_ms", -1);
      }
      entries_.push_back(std::move(entry));
    }
  }

  BackendDescriptor descriptor_;
  std::once_flag loaded_;
  std::vector<Entry> entries_;
  std::atomic<std::size_t> next_{0};
};

/// Deterministic worst-case responder exercising the documented failure
/// modes: prose containing both verdict words in prompt mode, null-cascade
/// (with citations) or lowercase enum values (without) in tool mode.
class AdversarialBackend : public Backend {
 public:
  explicit AdversarialBackend(BackendDescriptor descriptor)
      : descriptor_(std::move(descriptor)) {}

  RawModelOutput invoke(const ModelRequest& request) override {
    RawModelOutput out;
    if (request.mode == RequestMode::Prompt) {
      out.dialect = WireDialect::PlainText;
      out.body =
          "To determine if the claim is true or false based on the given "
          "passage, the answer is False.";
    } else {
      out.dialect = request.tool_schema->dialect;
      auto schema = detail::parse_tool_schema(*request.tool_schema);
      bool has_citations = false;
      for (const auto& arg : schema.arguments) {
        if (arg.role == ArgumentRole::Citation) has_citations = true;
      }
      std::vector<detail::ToolValue> values;
      for (const auto& arg : schema.arguments) {
        if (has_citations) {
          values.push_back({arg.name, std::nullopt});
        } else if (arg.role == ArgumentRole::Verdict) {
          values.push_back({arg.name, "true"});
        } else {
          values.push_back({arg.name, std::nullopt});
        }
      }
      out.body = detail::render_tool_body(values, schema.title, out.dialect);
    }
    out.usage = detail::synthesize_usage(request, out.body);
    return out;
  }

 private:
  BackendDescriptor descriptor_;
};

namespace detail {

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // /path, "/" when absent
};

inline SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::InvalidConfig, "endpoint URL needs a scheme: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace detail

/// Chat-completion endpoint speaking the JSON tools dialect: the tool
/// description travels in the request's `tools` field and the arguments
/// come back as a JSON object.
class HttpJsonBackend : public Backend {
 public:
  explicit HttpJsonBackend(BackendDescriptor descriptor)
      : descriptor_(std::move(descriptor)) {}

  bool retryable() const override { return true; }

  RawModelOutput invoke(const ModelRequest& request) override {
    nlohmann::ordered_json body;
    body["model"] = request.model_id;
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_output_tokens;
    nlohmann::ordered_json messages = nlohmann::ordered_json::array();
    if (!request.system_prompt.empty()) {
      messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
    }
    messages.push_back({{"role", "user"}, {"content", request.user_prompt}});
    body["messages"] = std::move(messages);
    if (request.mode == RequestMode::ToolCall) {
      auto parameters = nlohmann::ordered_json::parse(
          request.tool_schema->payload);
      std::string title = parameters.value("title", "");
      body["tools"] = nlohmann::ordered_json::array(
          {{{"type", "function"},
            {"function",
             {{"name", title}, {"parameters", std::move(parameters)}}}}});
      body["tool_choice"] = {{"type", "function"},
                             {"function", {{"name", title}}}};
    }

    nlohmann::json response = detail_post(body.dump());

    RawModelOutput out;
    out.dialect = request.mode == RequestMode::ToolCall
                      ? request.tool_schema->dialect
                      : WireDialect::PlainText;
    out.body = extract_body(response, request);
    out.usage = detail::synthesize_usage(request, out.body);
    if (response.contains("usage")) {
      const auto& usage = response.at("usage");
      out.usage.prompt_tokens =
          usage.value("prompt_tokens", out.usage.prompt_tokens);
      out.usage.completion_tokens =
          usage.value("completion_tokens", out.usage.completion_tokens);
    }
    out.usage.latency_ms = last_latency_ms_;
    return out;
  }

 private:
  static std::string extract_body(const nlohmann::json& response,
                                  const ModelRequest& request) {
    if (!response.contains("choices") || response.at("choices").empty()) {
      return "";
    }
    const auto& message = response.at("choices").at(0).value(
        "message", nlohmann::json::object());
    if (request.mode == RequestMode::ToolCall) {
      if (message.contains("tool_calls") && !message.at("tool_calls").empty()) {
        const auto& fn = message.at("tool_calls").at(0).value(
            "function", nlohmann::json::object());
        if (fn.contains("arguments") && fn.at("arguments").is_string()) {
          return fn.at("arguments").get<std::string>();
        }
      }
      // No tool call in the response: surface whatever text came back so the
      // parser records the format failure.
    }
    if (message.contains("content") && message.at("content").is_string()) {
      return message.at("content").get<std::string>();
    }
    return "";
  }

  nlohmann::json detail_post(const std::string& payload) {
    auto url = detail::split_url(descriptor_.endpoint);
    httplib::Client client(url.base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(120, 0);

    httplib::Headers headers;
    if (!descriptor_.credential_env.empty()) {
      const char* key = std::getenv(descriptor_.credential_env.c_str());
      if (!key || !*key) {
        throw Error(ErrorCode::AuthError,
                    "environment variable " + descriptor_.credential_env +
                        " is not set");
      }
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    auto start = std::chrono::steady_clock::now();
    auto result = client.Post(url.path, headers, payload, "application/json");
    last_latency_ms_ = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();

    if (!result) {
      throw Error(ErrorCode::TransportError,
                  "request to " + descriptor_.endpoint + " failed: " +
                      httplib::to_string(result.error()));
    }
    if (result->status == 401 || result->status == 403) {
      throw Error(ErrorCode::AuthError,
                  "backend '" + descriptor_.name + "' rejected credentials (" +
                      std::to_string(result->status) + ")");
    }
    if (result->status != 200) {
      throw Error(ErrorCode::TransportError,
                  "backend '" + descriptor_.name + "' returned HTTP " +
                      std::to_string(result->status));
    }
    nlohmann::json parsed = nlohmann::json::parse(result->body, nullptr, false);
    if (parsed.is_discarded()) {
      throw Error(ErrorCode::TransportError,
                  "backend '" + descriptor_.name +
                      "' returned a non-JSON envelope");
    }
    return parsed;
  }

  BackendDescriptor descriptor_;
  std::int64_t last_latency_ms_ = 0;
};

/// Message endpoint speaking the XML tools dialect: the tool description is
/// embedded in the system prompt and the invoke block comes back as text.
class HttpXmlBackend : public Backend {
 public:
  explicit HttpXmlBackend(BackendDescriptor descriptor)
      : descriptor_(std::move(descriptor)) {}

  bool retryable() const override { return true; }

  static std::string compose_system_prompt(const std::string& system_prompt,
                                           const WireSchema& schema) {
    return system_prompt + "\n\nHere is the tool available:\n<tools>\n" +
           schema.payload + "\n</tools>";
  }

  RawModelOutput invoke(const ModelRequest& request) override {
    nlohmann::ordered_json body;
    body["model"] = request.model_id;
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_output_tokens;
    std::string system = request.system_prompt;
    if (request.mode == RequestMode::ToolCall) {
      system = compose_system_prompt(system, *request.tool_schema);
    }
    if (!system.empty()) body["system"] = system;
    body["messages"] = nlohmann::ordered_json::array(
        {{{"role", "user"}, {"content", request.user_prompt}}});

    auto url = detail::split_url(descriptor_.endpoint);
    httplib::Client client(url.base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(120, 0);

    httplib::Headers headers;
    if (!descriptor_.credential_env.empty()) {
      const char* key = std::getenv(descriptor_.credential_env.c_str());
      if (!key || !*key) {
        throw Error(ErrorCode::AuthError,
                    "environment variable " + descriptor_.credential_env +
                        " is not set");
      }
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    auto start = std::chrono::steady_clock::now();
    auto result = client.Post(url.path, headers, body.dump(), "application/json");
    auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    if (!result) {
      throw Error(ErrorCode::TransportError,
                  "request to " + descriptor_.endpoint + " failed: " +
                      httplib::to_string(result.error()));
    }
    if (result->status == 401 || result->status == 403) {
      throw Error(ErrorCode::AuthError,
                  "backend '" + descriptor_.name + "' rejected credentials (" +
                      std::to_string(result->status) + ")");
    }
    if (result->status != 200) {
      throw Error(ErrorCode::TransportError,
                  "backend '" + descriptor_.name + "' returned HTTP " +
                      std::to_string(result->status));
    }
    nlohmann::json parsed = nlohmann::json::parse(result->body, nullptr, false);
    if (parsed.is_discarded()) {
      throw Error(ErrorCode::TransportError,
                  "backend '" + descriptor_.name +
                      "' returned a non-JSON envelope");
    }

    RawModelOutput out;
    out.dialect = request.mode == RequestMode::ToolCall
                      ? request.tool_schema->dialect
                      : WireDialect::PlainText;
    for (const auto& block : parsed.value("content", nlohmann::json::array())) {
      if (block.value("type", "") == "text") {
        out.body += block.value("text", "");
      }
    }
    out.usage = detail::synthesize_usage(request, out.body);
    if (parsed.contains("usage")) {
      const auto& usage = parsed.at("usage");
      out.usage.prompt_tokens =
          usage.value("input_tokens", out.usage.prompt_tokens);
      out.usage.completion_tokens =
          usage.value("output_tokens", out.usage.completion_tokens);
    }
    out.usage.latency_ms = latency;
    return out;
  }

 private:
  BackendDescriptor descriptor_;
};

inline std::unique_ptr<Backend> make_backend(const BackendDescriptor& descriptor) {
  descriptor.validate();
  switch (descriptor.kind) {
    case BackendKind::HttpJsonTools:
      return std::make_unique<HttpJsonBackend>(descriptor);
    case BackendKind::HttpXmlTools:
      return std::make_unique<HttpXmlBackend>(descriptor);
    case BackendKind::MockOracle:
      return std::make_unique<OracleBackend>(descriptor);
    case BackendKind::MockScripted:
      return std::make_unique<ScriptedBackend>(descriptor);
    case BackendKind::MockAdversarial:
      return std::make_unique<AdversarialBackend>(descriptor);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown backend kind");
}

// ---------------------------------------------------------------------------
// Gateway
// ---------------------------------------------------------------------------

struct GatewayOptions {
  /// Content-addressed response cache directory; no caching when unset.
  std::optional<std::filesystem::path> cache_dir;
  /// Budget guards; negative means unlimited.
  std::int64_t max_calls = -1;
  std::int64_t max_total_tokens = -1;
  /// Bounded retry for transport failures only (never for format failures).
  int transport_retries = 3;
  int backoff_base_ms = 100;
};

struct GatewayTotals {
  std::int64_t upstream_calls = 0;
  std::int64_t cache_hits = 0;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

class Gateway {
 public:
  explicit Gateway(GatewayOptions options = {}) : options_(std::move(options)) {
    if (options_.cache_dir) {
      std::filesystem::create_directories(*options_.cache_dir);
    }
  }

  /// One logical request: cache lookup, budget check, rate-limited upstream
  /// call with bounded transport retries, cache insert. The response is
  /// returned exactly as received; format validation happens downstream and
  /// is never retried. With the cache enabled, identical concurrent
  /// requests coalesce onto a single upstream call (single writer per key).
  RawModelOutput complete(const ModelRequest& request,
                          const BackendDescriptor& backend) {
    request.validate();
    backend.validate();
    if (request.mode == RequestMode::ToolCall &&
        request.tool_schema->dialect != backend.tool_dialect()) {
      throw Error(ErrorCode::InvalidConfig,
                  "request tool dialect does not match backend '" +
                      backend.name + "'");
    }

    std::string canonical = canonical_request(request, backend);
    std::string key = detail::sha256_hex(canonical);

    while (true) {
      if (auto cached = cache_read(key)) {
        totals_cache_hits_.fetch_add(1);
        return *cached;
      }

      std::shared_ptr<InFlight> flight;
      bool leader = false;
      if (options_.cache_dir) {
        std::lock_guard lock(inflight_mutex_);
        auto it = inflight_.find(key);
        if (it == inflight_.end()) {
          flight = std::make_shared<InFlight>();
          inflight_[key] = flight;
          leader = true;
        } else {
          flight = it->second;
        }
      } else {
        leader = true;
      }

      if (!leader) {
        std::unique_lock lock(flight->mutex);
        flight->cv.wait(lock, [&] { return flight->done; });
        if (flight->result) {
          totals_cache_hits_.fetch_add(1);
          RawModelOutput out = *flight->result;
          out.usage.call_count = 0;
          out.usage.latency_ms = 0;
          return out;
        }
        continue;  // the leader failed; take over and try again
      }

      try {
        check_budget();
        BackendState& state = backend_state(backend);
        RawModelOutput out;
        {
          SlotGuard guard(state);
          out = invoke_with_retries(*state.backend, request);
        }
        totals_upstream_calls_.fetch_add(1);
        totals_prompt_tokens_.fetch_add(out.usage.prompt_tokens);
        totals_completion_tokens_.fetch_add(out.usage.completion_tokens);
        cache_write(key, canonical, out);
        if (flight) settle_flight(key, flight, out);
        return out;
      } catch (...) {
        if (flight) settle_flight(key, flight, std::nullopt);
        throw;
      }
    }
  }

  GatewayTotals totals() const {
    GatewayTotals t;
    t.upstream_calls = totals_upstream_calls_.load();
    t.cache_hits = totals_cache_hits_.load();
    t.prompt_tokens = totals_prompt_tokens_.load();
    t.completion_tokens = totals_completion_tokens_.load();
    return t;
  }

  const GatewayOptions& options() const { return options_; }

  /// Canonical form hashed into the cache key; also used by cache listings.
  static std::string canonical_request(const ModelRequest& request,
                                       const BackendDescriptor& backend) {
    nlohmann::ordered_json j;
    j["backend"] = backend.name;
    j["kind"] = std::string(to_string(backend.kind));
    j["model"] = request.model_id;
    j["mode"] = std::string(to_string(request.mode));
    j["system_prompt"] = request.system_prompt;
    j["user_prompt"] = request.user_prompt;
    j["temperature"] = request.temperature;
    j["max_output_tokens"] = request.max_output_tokens;
    if (request.tool_schema) {
      j["tool_dialect"] = std::string(to_string(request.tool_schema->dialect));
      j["tool_payload"] = request.tool_schema->payload;
    }
    return j.dump();
  }

 private:
  struct InFlight {
    std::mutex mutex;
    std::condition_variable cv;
    bool done = false;
    std::optional<RawModelOutput> result;
  };

  void settle_flight(const std::string& key,
                     const std::shared_ptr<InFlight>& flight,
                     std::optional<RawModelOutput> result) {
    {
      std::lock_guard lock(flight->mutex);
      flight->result = std::move(result);
      flight->done = true;
    }
    flight->cv.notify_all();
    std::lock_guard lock(inflight_mutex_);
    inflight_.erase(key);
  }

  struct BackendState {
    std::unique_ptr<Backend> backend;
    std::unique_ptr<std::counting_semaphore<>> slots;
    int min_interval_ms = 0;
    std::mutex rate_mutex;
    std::chrono::steady_clock::time_point next_slot =
        std::chrono::steady_clock::now();
  };

  /// Concurrency slot + minimum spacing between dispatches.
  class SlotGuard {
   public:
    explicit SlotGuard(BackendState& state) : state_(state) {
      state_.slots->acquire();
      if (state_.min_interval_ms > 0) {
        std::chrono::steady_clock::time_point wake;
        {
          std::lock_guard lock(state_.rate_mutex);
          auto now = std::chrono::steady_clock::now();
          wake = std::max(now, state_.next_slot);
          state_.next_slot =
              wake + std::chrono::milliseconds(state_.min_interval_ms);
        }
        std::this_thread::sleep_until(wake);
      }
    }
    ~SlotGuard() { state_.slots->release(); }

   private:
    BackendState& state_;
  };

  BackendState& backend_state(const BackendDescriptor& descriptor) {
    std::lock_guard lock(backends_mutex_);
    auto it = backends_.find(descriptor.name);
    if (it == backends_.end()) {
      auto state = std::make_unique<BackendState>();
      state->backend = make_backend(descriptor);
      state->slots = std::make_unique<std::counting_semaphore<>>(
          descriptor.max_concurrency);
      state->min_interval_ms = descriptor.min_interval_ms;
      it = backends_.emplace(descriptor.name, std::move(state)).first;
    }
    return *it->second;
  }

  void check_budget() {
    if (options_.max_calls >= 0 &&
        totals_upstream_calls_.load() >= options_.max_calls) {
      throw Error(ErrorCode::BudgetExceeded,
                  "call budget of " + std::to_string(options_.max_calls) +
                      " upstream calls reached");
    }
    if (options_.max_total_tokens >= 0 &&
        totals_prompt_tokens_.load() + totals_completion_tokens_.load() >=
            options_.max_total_tokens) {
      throw Error(ErrorCode::BudgetExceeded,
                  "token budget of " +
                      std::to_string(options_.max_total_tokens) + " reached");
    }
  }

  RawModelOutput invoke_with_retries(Backend& backend,
                                     const ModelRequest& request) {
    int attempts = backend.retryable() ? options_.transport_retries + 1 : 1;
    for (int attempt = 0;; ++attempt) {
      try {
        return backend.invoke(request);
      } catch (const Error& e) {
        bool transport = e.code() == ErrorCode::TransportError;
        if (!transport || attempt + 1 >= attempts) throw;
        auto delay = std::chrono::milliseconds(
            static_cast<std::int64_t>(options_.backoff_base_ms) << attempt);
        std::this_thread::sleep_for(delay);
      }
    }
  }

  std::filesystem::path cache_path(const std::string& key) const {
    return *options_.cache_dir / (key + ".json");
  }

  std::optional<RawModelOutput> cache_read(const std::string& key) {
    if (!options_.cache_dir) return std::nullopt;
    std::ifstream in(cache_path(key));
    if (!in) return std::nullopt;
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) {
      warn("cache entry " + key + " is corrupt; ignoring");
      return std::nullopt;
    }
    RawModelOutput out;
    auto dialect =
        wire_dialect_from_string(j.at("response").value("dialect", ""));
    if (!dialect) return std::nullopt;
    out.dialect = *dialect;
    out.body = j.at("response").at("body").get<std::string>();
    out.usage.prompt_tokens = j.at("usage").value("prompt_tokens", 0);
    out.usage.completion_tokens = j.at("usage").value("completion_tokens", 0);
    out.usage.latency_ms = 0;
    out.usage.call_count = 0;  // replay: no upstream call
    return out;
  }

  void cache_write(const std::string& key, const std::string& canonical,
                   const RawModelOutput& out) {
    if (!options_.cache_dir) return;
    nlohmann::ordered_json j;
    j["key"] = key;
    j["request"] = nlohmann::ordered_json::parse(canonical);
    j["response"] = {{"dialect", std::string(to_string(out.dialect))},
                     {"body", out.body}};
    j["usage"] = {{"prompt_tokens", out.usage.prompt_tokens},
                  {"completion_tokens", out.usage.completion_tokens},
                  {"latency_ms", out.usage.latency_ms}};

    // Single writer per key: write to a temp file, atomically rename.
    std::lock_guard lock(cache_write_mutex_);
    auto path = cache_path(key);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream outfile(tmp, std::ios::trunc);
      if (!outfile) {
        warn("cannot write cache entry " + tmp.string());
        return;
      }
      outfile << j.dump(2) << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) warn("cache rename failed: " + ec.message());
  }

  GatewayOptions options_;
  std::mutex backends_mutex_;
  std::map<std::string, std::unique_ptr<BackendState>> backends_;
  std::mutex inflight_mutex_;
  std::map<std::string, std::shared_ptr<InFlight>> inflight_;
  std::mutex cache_write_mutex_;
  std::atomic<std::int64_t> totals_upstream_calls_{0};
  std::atomic<std::int64_t> totals_cache_hits_{0};
  std::atomic<std::int64_t> totals_prompt_tokens_{0};
  std::atomic<std::int64_t> totals_completion_tokens_{0};
};

}  // namespace faaf
