#pragma once

// Persistence of evaluation runs: one self-describing JSON artifact per
// run, versioned, written atomically, lossless on round-trip.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "faaf/engine.hpp"

namespace faaf {

namespace detail {

inline nlohmann::ordered_json run_to_json(const EvaluationRun& run) {
  nlohmann::ordered_json j;
  j["schema"] = "faaf.run";
  j["version"] = kRunSchemaVersion;
  nlohmann::ordered_json config;
  config["formulation"] = run.config.formulation_id;
  config["backend"] = run.config.backend_name;
  config["backend_kind"] = run.config.backend_kind;
  config["model"] = run.config.model_id;
  config["dataset"] = run.config.dataset_path;
  nlohmann::ordered_json variants = nlohmann::ordered_json::array();
  for (VariantKind variant : run.config.variants) {
    variants.push_back(std::string(to_string(variant)));
  }
  config["variants"] = std::move(variants);
  config["system_prompt"] = run.config.system_prompt;
  config["parallelism"] = run.config.parallelism;
  j["config"] = std::move(config);
  j["started_at"] = run.started_at;
  j["finished_at"] = run.finished_at;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& verification : run.results) {
    results.push_back(verification_to_json(verification));
  }
  j["results"] = std::move(results);
  return j;
}

inline EvaluationRun run_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "faaf.run") {
    throw ParseError("not a faaf.run artifact");
  }
  int version = j.value("version", 0);
  if (version > kRunSchemaVersion) {
    throw Error(ErrorCode::SchemaVersionMismatch,
                "run schema version " + std::to_string(version) +
                    " is newer than supported version " +
                    std::to_string(kRunSchemaVersion));
  }
  EvaluationRun run;
  const auto& config = j.at("config");
  run.config.formulation_id = config.value("formulation", "");
  run.config.backend_name = config.value("backend", "");
  run.config.backend_kind = config.value("backend_kind", "");
  run.config.model_id = config.value("model", "");
  run.config.dataset_path = config.value("dataset", "");
  for (const auto& name : config.value("variants", nlohmann::json::array())) {
    auto variant = variant_from_string(name.get<std::string>());
    if (!variant) throw ParseError("unknown variant in run config");
    run.config.variants.push_back(*variant);
  }
  run.config.system_prompt = config.value("system_prompt", "");
  run.config.parallelism = config.value("parallelism", 4);
  run.started_at = j.value("started_at", "");
  run.finished_at = j.value("finished_at", "");
  for (const auto& result : j.at("results")) {
    run.results.push_back(verification_from_json(result));
  }
  return run;
}

}  // namespace detail

inline void save_run(const EvaluationRun& run,
                     const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    }
    out << detail::run_to_json(run).dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

inline EvaluationRun load_run(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open run artifact " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    return detail::run_from_json(j);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("run artifact ") + path.string() + ": " +
                         e.what(),
                     /*line=*/0, /*byte_offset=*/e.byte);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("run artifact ") + path.string() + ": " +
                     e.what());
  }
}

}  // namespace faaf
