#pragma once

// Orchestration of verifications: builds the request for the chosen
// formulation (facts-as-a-function or the per-fact prompt baseline), calls
// the gateway, parses, and sweeps a dataset into an EvaluationRun.

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "faaf/core.hpp"
#include "faaf/dataset.hpp"
#include "faaf/function_builder.hpp"
#include "faaf/gateway.hpp"
#include "faaf/prompts.hpp"
#include "faaf/response_parser.hpp"
#include "faaf/usage.hpp"

namespace faaf {

enum class VerificationMethod { Prompt, Faaf };

inline std::string_view to_string(VerificationMethod method) {
  return method == VerificationMethod::Prompt ? "prompt" : "faaf";
}

/// One of the five supported verification formulations. `config` applies to
/// the faaf method; the prompt baseline has no function object.
struct Formulation {
  std::string id;
  VerificationMethod method = VerificationMethod::Faaf;
  FormulationConfig config;
};

constexpr std::string_view kFormulationIds[] = {
    "prompt-tf", "faaf-tf", "faaf-tfn", "faaf-tf-cit", "faaf-tfn-cit"};

inline Formulation formulation_from_id(std::string_view id) {
  Formulation f;
  f.id = std::string(id);
  if (id == "prompt-tf") {
    f.method = VerificationMethod::Prompt;
    return f;
  }
  f.method = VerificationMethod::Faaf;
  if (id == "faaf-tf") {
    return f;
  }
  if (id == "faaf-tfn") {
    f.config.response_domain = ResponseDomain::TFN;
    return f;
  }
  if (id == "faaf-tf-cit") {
    f.config.with_citation = true;
    return f;
  }
  if (id == "faaf-tfn-cit") {
    f.config.response_domain = ResponseDomain::TFN;
    f.config.with_citation = true;
    return f;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown formulation id '" +
                                            std::string(id) +
                                            "' (expected one of prompt-tf, "
                                            "faaf-tf, faaf-tfn, faaf-tf-cit, "
                                            "faaf-tfn-cit)");
}

/// Result of verifying one answer variant against its record's facts.
struct AnswerVerification {
  std::string qa_id;
  VariantKind variant = VariantKind::GroundTruth;
  std::string formulation_id;
  InvocationResult result;
  UsageRecord usage;
};

struct RunConfig {
  std::string formulation_id;
  std::string backend_name;
  std::string backend_kind;
  std::string model_id;
  std::string dataset_path;
  std::vector<VariantKind> variants;
  std::string system_prompt;  // the system prompt the run used
  int parallelism = 4;
};

constexpr int kRunSchemaVersion = 1;

struct EvaluationRun {
  RunConfig config;
  std::vector<AnswerVerification> results;
  std::string started_at;
  std::string finished_at;

  UsageRecord total_usage() const {
    UsageRecord total;
    for (const auto& r : results) total += r.usage;
    return total;
  }
};

struct EngineOptions {
  int parallelism = 4;
  /// Optional override for the backend's default system prompt.
  std::optional<std::string> system_prompt;
  /// When set, every finished AnswerVerification is appended here as one
  /// JSON line, so an interrupted sweep loses at most in-flight answers.
  std::optional<std::filesystem::path> partial_path;
};

namespace detail {

inline std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

inline std::string engine_system_prompt(const BackendDescriptor& backend,
                                        RequestMode mode,
                                        const EngineOptions& options) {
  if (options.system_prompt) return *options.system_prompt;
  return default_system_prompt(backend, mode);
}

/// The single facts-as-a-function request for one answer: serialized spec
/// plus the standard instruction prompt carrying the passage.
inline ModelRequest build_faaf_request(const QARecord& qa, VariantKind variant,
                                       const Formulation& formulation,
                                       const BackendDescriptor& backend,
                                       const EngineOptions& options = {}) {
  FactFunctionSpec spec = build_fact_function(qa.facts, formulation.config);
  ModelRequest request;
  request.mode = RequestMode::ToolCall;
  request.tool_schema = serialize_spec(spec, backend.tool_dialect());
  request.system_prompt =
      engine_system_prompt(backend, RequestMode::ToolCall, options);
  request.user_prompt = prompts::faaf_prompt(qa.answer(variant));
  request.model_id = backend.model_id;
  return request;
}

/// The per-fact baseline requests for one answer, in fact-index order.
inline std::vector<ModelRequest> build_prompt_requests(
    const QARecord& qa, VariantKind variant, const BackendDescriptor& backend,
    const EngineOptions& options = {}) {
  validate_fact_set(qa.facts);
  std::vector<ModelRequest> requests(qa.facts.size());
  for (const auto& fact : qa.facts) {
    ModelRequest request;
    request.mode = RequestMode::Prompt;
    request.system_prompt =
        engine_system_prompt(backend, RequestMode::Prompt, options);
    request.user_prompt = prompts::claim_prompt(qa.answer(variant), fact.text);
    request.model_id = backend.model_id;
    requests[static_cast<std::size_t>(fact.index)] = std::move(request);
  }
  return requests;
}

/// Verifies one answer variant. The faaf path makes exactly one gateway
/// call for the whole fact set; the prompt baseline makes one call per
/// fact. A failed faaf call yields all-NotAnswered for the answer; a failed
/// per-fact prompt call yields NotAnswered for that fact only.
inline AnswerVerification verify_answer(const QARecord& qa, VariantKind variant,
                                        const Formulation& formulation,
                                        const BackendDescriptor& backend,
                                        Gateway& gateway,
                                        const EngineOptions& options = {}) {
  AnswerVerification verification;
  verification.qa_id = qa.id;
  verification.variant = variant;
  verification.formulation_id = formulation.id;

  if (formulation.method == VerificationMethod::Faaf) {
    FactFunctionSpec spec = build_fact_function(qa.facts, formulation.config);
    ModelRequest request =
        build_faaf_request(qa, variant, formulation, backend, options);
    try {
      RawModelOutput out = gateway.complete(request, backend);
      verification.result = parse_tool_response(out, spec);
      verification.usage = out.usage;
    } catch (const Error& e) {
      verification.result =
          all_facts_failed(spec, FailureReason::CallFailed, e.what());
    }
    return verification;
  }

  std::vector<ModelRequest> requests =
      build_prompt_requests(qa, variant, backend, options);
  for (const auto& fact : qa.facts) {
    try {
      RawModelOutput out = gateway.complete(
          requests[static_cast<std::size_t>(fact.index)], backend);
      verification.usage += out.usage;
      Verdict verdict = parse_prompt_response(out.body);
      verification.result.verdicts[fact.index] = verdict;
      if (verdict == Verdict::NotAnswered) {
        verification.result.failures.push_back(
            {fact.index, FailureReason::NoVerdictToken,
             "response contains neither verdict word"});
      }
    } catch (const Error& e) {
      verification.result.verdicts[fact.index] = Verdict::NotAnswered;
      verification.result.failures.push_back(
          {fact.index, FailureReason::CallFailed, e.what()});
    }
  }
  return verification;
}

namespace detail {

inline nlohmann::ordered_json verification_to_json(
    const AnswerVerification& v) {
  nlohmann::ordered_json j;
  j["qa_id"] = v.qa_id;
  j["variant"] = std::string(to_string(v.variant));
  j["formulation"] = v.formulation_id;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
  for (const auto& [index, verdict] : v.result.verdicts) {
    verdicts[std::to_string(index)] = std::string(to_string(verdict));
  }
  j["verdicts"] = std::move(verdicts);
  nlohmann::ordered_json citations = nlohmann::ordered_json::object();
  for (const auto& [index, citation] : v.result.citations) {
    citations[std::to_string(index)] = citation;
  }
  j["citations"] = std::move(citations);
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& failure : v.result.failures) {
    failures.push_back({{"fact", failure.fact_index},
                        {"reason", std::string(to_string(failure.reason))},
                        {"detail", failure.detail}});
  }
  j["failures"] = std::move(failures);
  j["usage"] = {{"prompt_tokens", v.usage.prompt_tokens},
                {"completion_tokens", v.usage.completion_tokens},
                {"latency_ms", v.usage.latency_ms},
                {"call_count", v.usage.call_count}};
  return j;
}

inline AnswerVerification verification_from_json(const nlohmann::json& j) {
  AnswerVerification v;
  v.qa_id = j.at("qa_id").get<std::string>();
  auto variant = variant_from_string(j.at("variant").get<std::string>());
  if (!variant) {
    throw ParseError("unknown variant in run artifact");
  }
  v.variant = *variant;
  v.formulation_id = j.at("formulation").get<std::string>();
  for (const auto& [key, value] : j.at("verdicts").items()) {
    auto verdict = verdict_from_string(value.get<std::string>());
    if (!verdict) throw ParseError("unknown verdict in run artifact");
    v.result.verdicts[std::stoi(key)] = *verdict;
  }
  for (const auto& [key, value] : j.at("citations").items()) {
    v.result.citations[std::stoi(key)] = value.get<std::string>();
  }
  for (const auto& failure : j.at("failures")) {
    auto reason =
        failure_reason_from_string(failure.at("reason").get<std::string>());
    if (!reason) throw ParseError("unknown failure reason in run artifact");
    v.result.failures.push_back({failure.at("fact").get<int>(), *reason,
                                 failure.value("detail", "")});
  }
  const auto& usage = j.at("usage");
  v.usage.prompt_tokens = usage.value("prompt_tokens", 0);
  v.usage.completion_tokens = usage.value("completion_tokens", 0);
  v.usage.latency_ms = usage.value("latency_ms", 0);
  v.usage.call_count = usage.value("call_count", 0);
  return v;
}

}  // namespace detail

/// Sweeps dataset × variants with bounded parallelism. Iteration order is
/// deterministic (dataset order, then the fixed GroundTruth, Ungrounded,
/// Poor variant order); workers fill pre-assigned slots so the artifact
/// layout does not depend on scheduling. Per-answer failures are recorded
/// in place, never fatal; only configuration errors abort.
inline EvaluationRun run_evaluation(const DatasetFile& dataset,
                                    const std::vector<VariantKind>& variants,
                                    const Formulation& formulation,
                                    const BackendDescriptor& backend,
                                    Gateway& gateway,
                                    const EngineOptions& options = {}) {
  if (dataset.records.empty()) {
    throw Error(ErrorCode::InvalidConfig, "dataset has no records");
  }
  if (variants.empty()) {
    throw Error(ErrorCode::InvalidConfig, "no variants requested");
  }
  if (options.parallelism <= 0) {
    throw Error(ErrorCode::InvalidConfig, "parallelism must be positive");
  }

  EvaluationRun run;
  run.config.formulation_id = formulation.id;
  run.config.backend_name = backend.name;
  run.config.backend_kind = std::string(to_string(backend.kind));
  run.config.model_id = backend.model_id;
  run.config.variants = variants;
  run.config.parallelism = options.parallelism;
  run.config.system_prompt = engine_system_prompt(
      backend,
      formulation.method == VerificationMethod::Faaf ? RequestMode::ToolCall
                                                     : RequestMode::Prompt,
      options);
  run.started_at = detail::iso8601_utc_now();

  struct Task {
    const QARecord* record;
    VariantKind variant;
  };
  std::vector<Task> tasks;
  for (const auto& record : dataset.records) {
    for (VariantKind variant : variants) {
      tasks.push_back({&record, variant});
    }
  }

  run.results.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex partial_mutex;
  std::optional<std::ofstream> partial;
  if (options.partial_path) {
    partial.emplace(*options.partial_path, std::ios::trunc);
  }

  auto worker = [&] {
    while (true) {
      std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      const Task& task = tasks[index];
      AnswerVerification v = verify_answer(*task.record, task.variant,
                                           formulation, backend, gateway,
                                           options);
      if (partial) {
        std::lock_guard lock(partial_mutex);
        *partial << detail::verification_to_json(v).dump() << "\n";
        partial->flush();
      }
      run.results[index] = std::move(v);
    }
  };

  std::size_t thread_count = std::min<std::size_t>(
      static_cast<std::size_t>(options.parallelism), tasks.size());
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (std::size_t i = 0; i < thread_count; ++i) {
      threads.emplace_back(worker);
    }
    for (auto& thread : threads) thread.join();
  }

  run.finished_at = detail::iso8601_utc_now();
  return run;
}

}  // namespace faaf
