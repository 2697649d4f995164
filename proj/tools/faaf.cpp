// faaf command-line interface: fact generation, single verifications,
// dataset sweeps, reporting and cache management.
//
// Exit codes: 0 success, 2 usage/configuration error, 1 runtime error.
// Failures print a machine-parseable JSON object to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <faaf/faaf.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct CliOptions {
  std::string config_path;
  std::string dataset_path;
  std::string backend_name = "mock-oracle";
  std::string formulation_id = "faaf-tf";
  std::string variants_csv = "ground_truth,ungrounded,poor";
  std::string out_dir = "out";
  std::string cache_dir;  // default: <out>/cache
  bool no_cache = false;
  int parallelism = 4;
  std::int64_t max_calls = -1;
  std::int64_t max_tokens = -1;
  bool dry_run = false;
  std::string fixture_path;
  std::string oracle_dataset;
  std::string model_id;
  std::string dialect = "json";
  std::string system_prompt;
  bool has_system_prompt = false;

  // loaded from --config
  json config = json::object();
};

int fail(faaf::ErrorCode code, const std::string& message) {
  json err;
  err["error"] = {{"code", std::string(faaf::to_string(code))},
                  {"message", message}};
  std::cerr << err.dump() << "\n";
  bool usage = code == faaf::ErrorCode::InvalidConfig;
  return usage ? 2 : 1;
}

void load_config_file(CliOptions& options) {
  if (options.config_path.empty()) return;
  std::ifstream in(options.config_path);
  if (!in) {
    throw faaf::Error(faaf::ErrorCode::InvalidConfig,
                      "cannot open config file " + options.config_path);
  }
  json config = json::parse(in, nullptr, false);
  if (config.is_discarded()) {
    throw faaf::Error(faaf::ErrorCode::InvalidConfig,
                      "config file is not valid JSON: " + options.config_path);
  }
  options.config = std::move(config);

  // Config supplies defaults; explicit flags already hold their values and
  // win because we only fill fields still at their defaults.
  const json defaults = options.config.value("defaults", json::object());
  if (options.dataset_path.empty()) {
    options.dataset_path = defaults.value("dataset", "");
  }
  if (options.out_dir == "out") {
    options.out_dir = defaults.value("out", "out");
  }
  if (options.cache_dir.empty()) {
    options.cache_dir = defaults.value("cache_dir", "");
  }
  if (options.parallelism == 4) {
    options.parallelism = defaults.value("parallel", 4);
  }
  if (options.max_calls < 0) {
    options.max_calls = defaults.value<std::int64_t>("max_calls", -1);
  }
  if (options.max_tokens < 0) {
    options.max_tokens = defaults.value<std::int64_t>("max_tokens", -1);
  }
  if (!options.has_system_prompt && defaults.contains("system_prompt")) {
    options.system_prompt = defaults.value("system_prompt", "");
    options.has_system_prompt = true;
  }
}

faaf::WireDialect parse_dialect(const std::string& name) {
  if (name == "json") return faaf::WireDialect::JsonTool;
  if (name == "xml") return faaf::WireDialect::XmlTool;
  throw faaf::Error(faaf::ErrorCode::InvalidConfig,
                    "unknown dialect '" + name + "' (expected json or xml)");
}

faaf::BackendDescriptor resolve_backend(const CliOptions& options) {
  faaf::BackendDescriptor backend;
  const json backends = options.config.value("backends", json::object());
  if (backends.contains(options.backend_name)) {
    const json& spec = backends.at(options.backend_name);
    auto kind = faaf::backend_kind_from_string(spec.value("kind", ""));
    if (!kind) {
      throw faaf::Error(faaf::ErrorCode::InvalidConfig,
                        "backend '" + options.backend_name +
                            "' has unknown kind '" + spec.value("kind", "") +
                            "'");
    }
    backend.kind = *kind;
    backend.name = options.backend_name;
    backend.endpoint = spec.value("endpoint", "");
    backend.model_id = spec.value("model", "mock");
    backend.credential_env = spec.value("credential_env", "");
    backend.dataset_path = spec.value("dataset", "");
    backend.fixture_path = spec.value("fixture", "");
    backend.max_concurrency = spec.value("max_concurrency", 4);
    backend.min_interval_ms = spec.value("min_interval_ms", 0);
    if (spec.contains("dialect")) {
      backend.dialect = parse_dialect(spec.at("dialect").get<std::string>());
    }
  } else if (options.backend_name == "mock-oracle") {
    backend.kind = faaf::BackendKind::MockOracle;
    backend.name = "mock-oracle";
    backend.dataset_path = options.oracle_dataset.empty()
                               ? options.dataset_path
                               : options.oracle_dataset;
    backend.dialect = parse_dialect(options.dialect);
  } else if (options.backend_name == "mock-scripted") {
    backend.kind = faaf::BackendKind::MockScripted;
    backend.name = "mock-scripted";
    backend.fixture_path = options.fixture_path;
    backend.dialect = parse_dialect(options.dialect);
  } else if (options.backend_name == "mock-adversarial") {
    backend.kind = faaf::BackendKind::MockAdversarial;
    backend.name = "mock-adversarial";
    backend.dialect = parse_dialect(options.dialect);
  } else {
    throw faaf::Error(faaf::ErrorCode::InvalidConfig,
                      "unknown backend '" + options.backend_name +
                          "' (built-ins: mock-oracle, mock-scripted, "
                          "mock-adversarial; others come from --config)");
  }
  if (!options.model_id.empty()) backend.model_id = options.model_id;
  backend.validate();
  return backend;
}

std::vector<faaf::VariantKind> resolve_variants(const std::string& csv) {
  std::set<faaf::VariantKind> requested;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    auto comma = csv.find(',', pos);
    std::string token = faaf::trim(
        csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                   : comma - pos));
    if (!token.empty()) {
      auto kind = faaf::variant_from_string(token);
      if (!kind) {
        throw faaf::Error(faaf::ErrorCode::InvalidConfig,
                          "unknown variant '" + token +
                              "' (expected ground_truth, ungrounded, poor)");
      }
      requested.insert(*kind);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (requested.empty()) {
    throw faaf::Error(faaf::ErrorCode::InvalidConfig, "no variants requested");
  }
  // Run artifacts always iterate variants in the fixed canonical order.
  std::vector<faaf::VariantKind> variants;
  for (faaf::VariantKind kind : faaf::kAllVariants) {
    if (requested.count(kind)) variants.push_back(kind);
  }
  return variants;
}

faaf::Gateway make_gateway(const CliOptions& options,
                           const faaf::BackendDescriptor& backend) {
  faaf::GatewayOptions gw;
  if (!options.no_cache) {
    fs::path cache = options.cache_dir.empty()
                         ? fs::path(options.out_dir) / "cache"
                         : fs::path(options.cache_dir);
    gw.cache_dir = cache;
  }
  gw.max_calls = options.max_calls;
  gw.max_total_tokens = options.max_tokens;
  // Budget guard on by default for live backends to stop runaway spend.
  if (!faaf::is_mock(backend.kind)) {
    if (gw.max_calls < 0) gw.max_calls = 2000;
    if (gw.max_total_tokens < 0) gw.max_total_tokens = 2'000'000;
  }
  return faaf::Gateway(gw);
}

faaf::EngineOptions make_engine_options(const CliOptions& options) {
  faaf::EngineOptions engine;
  engine.parallelism = options.parallelism;
  if (options.has_system_prompt) engine.system_prompt = options.system_prompt;
  return engine;
}

void print_dry_run_request(const faaf::ModelRequest& request,
                           const faaf::BackendDescriptor& backend) {
  std::cout << faaf::Gateway::canonical_request(request, backend) << "\n";
}

ordered_json verification_summary(const faaf::AnswerVerification& v) {
  return faaf::detail::verification_to_json(v);
}

// --- subcommands -----------------------------------------------------------

int cmd_generate_facts(CliOptions& options, bool force,
                       const std::string& out_file) {
  faaf::DatasetLoadOptions relaxed;
  relaxed.require_complete_annotations = false;
  faaf::DatasetFile dataset = faaf::load_dataset(options.dataset_path, relaxed);
  faaf::BackendDescriptor backend = resolve_backend(options);
  faaf::Gateway gateway = make_gateway(options, backend);

  int generated = 0;
  for (auto& record : dataset.records) {
    if (!record.facts.empty() && !force) continue;
    faaf::FactGenRequest req{record.question,
                             record.answer(faaf::VariantKind::GroundTruth),
                             backend};
    if (options.dry_run) {
      faaf::ModelRequest request;
      request.mode = faaf::RequestMode::Prompt;
      request.system_prompt =
          faaf::default_system_prompt(backend, faaf::RequestMode::Prompt);
      request.user_prompt =
          faaf::prompts::fact_generation_prompt(req.passage, req.question);
      request.model_id = backend.model_id;
      print_dry_run_request(request, backend);
      continue;
    }
    auto facts = faaf::generate_facts(req, gateway);
    if (!record.facts.empty()) {
      faaf::warn("record '" + record.id +
                 "': dropping stale annotations after fact regeneration");
      record.gold_labels.clear();
    }
    record.facts = std::move(facts);
    ++generated;
  }
  if (options.dry_run) return 0;

  fs::path target = out_file.empty() ? fs::path(options.dataset_path)
                                     : fs::path(out_file);
  faaf::save_dataset(dataset, target);
  auto counts = dataset.counts();
  std::cout << "generated facts for " << generated << " records; dataset now "
            << counts.pairs << " pairs / " << counts.facts << " facts -> "
            << target.string() << "\n";
  return 0;
}

int cmd_verify(CliOptions& options, const std::string& qa_id,
               const std::string& variant_name) {
  faaf::DatasetFile dataset = faaf::load_dataset(options.dataset_path);
  auto variant = faaf::variant_from_string(variant_name);
  if (!variant) {
    throw faaf::Error(faaf::ErrorCode::InvalidConfig,
                      "unknown variant '" + variant_name + "'");
  }
  const faaf::QARecord& record = dataset.record_by_id(qa_id);
  faaf::Formulation formulation =
      faaf::formulation_from_id(options.formulation_id);
  faaf::BackendDescriptor backend = resolve_backend(options);
  faaf::EngineOptions engine = make_engine_options(options);

  if (options.dry_run) {
    if (formulation.method == faaf::VerificationMethod::Faaf) {
      print_dry_run_request(
          faaf::build_faaf_request(record, *variant, formulation, backend,
                                   engine),
          backend);
    } else {
      for (const auto& request :
           faaf::build_prompt_requests(record, *variant, backend, engine)) {
        print_dry_run_request(request, backend);
      }
    }
    return 0;
  }

  faaf::Gateway gateway = make_gateway(options, backend);
  faaf::AnswerVerification verification = faaf::verify_answer(
      record, *variant, formulation, backend, gateway, engine);
  std::cout << verification_summary(verification).dump(2) << "\n";
  return 0;
}

int cmd_evaluate(CliOptions& options) {
  faaf::DatasetFile dataset = faaf::load_dataset(options.dataset_path);
  faaf::Formulation formulation =
      faaf::formulation_from_id(options.formulation_id);
  faaf::BackendDescriptor backend = resolve_backend(options);
  std::vector<faaf::VariantKind> variants =
      resolve_variants(options.variants_csv);
  faaf::EngineOptions engine = make_engine_options(options);

  if (options.dry_run) {
    for (const auto& record : dataset.records) {
      for (faaf::VariantKind variant : variants) {
        if (formulation.method == faaf::VerificationMethod::Faaf) {
          print_dry_run_request(
              faaf::build_faaf_request(record, variant, formulation, backend,
                                       engine),
              backend);
        } else {
          for (const auto& request : faaf::build_prompt_requests(
                   record, variant, backend, engine)) {
            print_dry_run_request(request, backend);
          }
        }
      }
    }
    return 0;
  }

  fs::create_directories(options.out_dir);
  fs::path run_path = fs::path(options.out_dir) /
                      ("run-" + formulation.id + "-" + backend.name + ".json");
  engine.partial_path = run_path;
  engine.partial_path->replace_extension(".partial.jsonl");

  faaf::Gateway gateway = make_gateway(options, backend);
  faaf::EvaluationRun run = faaf::run_evaluation(dataset, variants, formulation,
                                                 backend, gateway, engine);
  run.config.dataset_path = options.dataset_path;
  faaf::save_run(run, run_path);
  std::error_code ec;
  fs::remove(*engine.partial_path, ec);  // superseded by the final artifact

  auto totals = gateway.totals();
  std::cout << "run saved to " << run_path.string() << "\n"
            << "answers: " << run.results.size()
            << ", upstream calls: " << totals.upstream_calls
            << ", cache hits: " << totals.cache_hits
            << ", tokens: " << totals.prompt_tokens + totals.completion_tokens
            << "\n";
  return 0;
}

int cmd_report(CliOptions& options, const std::vector<std::string>& run_paths) {
  std::vector<faaf::EvaluationRun> runs;
  std::string dataset_path = options.dataset_path;
  for (const auto& path : run_paths) {
    runs.push_back(faaf::load_run(path));
    if (dataset_path.empty()) dataset_path = runs.back().config.dataset_path;
  }
  if (dataset_path.empty()) {
    throw faaf::Error(faaf::ErrorCode::InvalidConfig,
                      "no dataset path: pass --dataset or use runs that "
                      "recorded one");
  }
  faaf::DatasetFile dataset = faaf::load_dataset(dataset_path);
  faaf::ReportTable table = faaf::build_report(runs, dataset);

  std::cout << faaf::render_text(table);
  fs::create_directories(options.out_dir);
  fs::path report_csv = fs::path(options.out_dir) / "report.csv";
  fs::path cost_csv = fs::path(options.out_dir) / "cost.csv";
  fs::path summary_json = fs::path(options.out_dir) / "summary.json";
  std::ofstream(report_csv, std::ios::trunc) << faaf::render_csv(table);
  std::ofstream(cost_csv, std::ios::trunc) << faaf::render_cost_csv(table);

  // Full-precision machine-readable summary; the CSVs round for display.
  ordered_json summary;
  summary["rows"] = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json cell;
    cell["variant"] = std::string(faaf::to_string(row.variant));
    cell["formulation"] = row.formulation;
    cell["backend"] = row.backend;
    cell["na"] = row.cell.na;
    cell["total"] = row.cell.total;
    if (row.cell.er) cell["er"] = *row.cell.er;
    if (row.cell.f1m) cell["f1m"] = *row.cell.f1m;
    summary["rows"].push_back(std::move(cell));
  }
  summary["costs"] = ordered_json::array();
  for (const auto& row : table.costs) {
    summary["costs"].push_back({{"formulation", row.formulation},
                                {"backend", row.backend},
                                {"prompt_tokens", row.prompt_tokens},
                                {"completion_tokens", row.completion_tokens},
                                {"total_tokens", row.total_tokens},
                                {"calls", row.calls}});
  }
  std::ofstream(summary_json, std::ios::trunc) << summary.dump(2) << "\n";
  std::cout << "\nwrote " << report_csv.string() << ", " << cost_csv.string()
            << " and " << summary_json.string() << "\n";
  return 0;
}

int cmd_cache(CliOptions& options, const std::string& action) {
  fs::path cache = options.cache_dir.empty()
                       ? fs::path(options.out_dir) / "cache"
                       : fs::path(options.cache_dir);
  if (action == "stats" || action == "list") {
    std::size_t entries = 0;
    std::uintmax_t bytes = 0;
    if (fs::exists(cache)) {
      for (const auto& entry : fs::directory_iterator(cache)) {
        if (entry.path().extension() != ".json") continue;
        ++entries;
        bytes += entry.file_size();
        if (action == "list") {
          std::cout << entry.path().stem().string() << "\n";
        }
      }
    }
    if (action == "stats") {
      std::cout << "cache dir: " << cache.string() << "\n"
                << "entries: " << entries << "\n"
                << "bytes: " << bytes << "\n";
    }
    return 0;
  }
  if (action == "clear") {
    std::size_t removed = 0;
    if (fs::exists(cache)) {
      for (const auto& entry : fs::directory_iterator(cache)) {
        if (entry.path().extension() == ".json") {
          fs::remove(entry.path());
          ++removed;
        }
      }
    }
    std::cout << "removed " << removed << " entries\n";
    return 0;
  }
  throw faaf::Error(faaf::ErrorCode::InvalidConfig,
                    "unknown cache action '" + action +
                        "' (expected list, clear or stats)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fact verification via function calling"};
  app.require_subcommand(1);

  CliOptions options;
  bool force = false;
  std::string out_file;
  std::string qa_id;
  std::string variant_name = "ground_truth";
  std::string cache_action = "stats";
  std::vector<std::string> run_paths;

  auto add_common = [&](CLI::App* cmd, bool needs_dataset) {
    cmd->add_option("--config", options.config_path, "JSON config file");
    auto* ds = cmd->add_option("--dataset", options.dataset_path,
                               "canonical dataset file");
    if (needs_dataset) ds->check(CLI::ExistingFile);
    cmd->add_option("--backend", options.backend_name,
                    "backend name (built-in mock or from config)");
    cmd->add_option("--out", options.out_dir, "output directory");
    cmd->add_option("--cache-dir", options.cache_dir,
                    "response cache directory (default <out>/cache)");
    cmd->add_flag("--no-cache", options.no_cache, "disable the response cache");
    cmd->add_option("--parallel", options.parallelism, "worker count");
    cmd->add_option("--max-calls", options.max_calls, "upstream call budget");
    cmd->add_option("--max-tokens", options.max_tokens, "total token budget");
    cmd->add_option("--fixture", options.fixture_path,
                    "fixture file for mock-scripted");
    cmd->add_option("--oracle-dataset", options.oracle_dataset,
                    "gold-label dataset for mock-oracle (default --dataset)");
    cmd->add_option("--model", options.model_id, "override backend model id");
    cmd->add_option("--dialect", options.dialect,
                    "tool dialect for mock backends (json|xml)");
    cmd->add_option("--system-prompt", options.system_prompt,
                    "override the default system prompt")
        ->each([&](const std::string&) { options.has_system_prompt = true; });
    cmd->add_flag("--dry-run", options.dry_run,
                  "print exact request payloads, call nothing");
  };

  CLI::App* generate = app.add_subcommand(
      "generate-facts", "derive facts from ground-truth answers");
  add_common(generate, true);
  generate->add_flag("--force", force, "regenerate facts even when present");
  generate->add_option("--out-file", out_file,
                       "write the updated dataset here instead of in place");

  CLI::App* verify =
      app.add_subcommand("verify", "verify one answer variant of one record");
  add_common(verify, true);
  verify->add_option("--qa", qa_id, "record id")->required();
  verify->add_option("--variant", variant_name,
                     "answer variant (ground_truth|ungrounded|poor)");
  verify->add_option("--formulation", options.formulation_id,
                     "formulation id");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "sweep the dataset into a run artifact");
  add_common(evaluate, true);
  evaluate->add_option("--formulation", options.formulation_id,
                       "formulation id");
  evaluate->add_option("--variants", options.variants_csv,
                       "comma-separated variants");

  CLI::App* report =
      app.add_subcommand("report", "render tables and CSVs from run artifacts");
  add_common(report, false);
  report->add_option("runs", run_paths, "run artifact paths")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* cache = app.add_subcommand("cache", "inspect or clear the cache");
  add_common(cache, false);
  cache->add_option("action", cache_action, "list|clear|stats");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::ostringstream msg;
    msg << e.what();
    return fail(faaf::ErrorCode::InvalidConfig, msg.str());
  }

  try {
    load_config_file(options);
    // Validate the formulation id up front so typos exit with usage errors.
    if (verify->parsed() || evaluate->parsed()) {
      faaf::formulation_from_id(options.formulation_id);
    }
    if (generate->parsed()) return cmd_generate_facts(options, force, out_file);
    if (verify->parsed()) return cmd_verify(options, qa_id, variant_name);
    if (evaluate->parsed()) return cmd_evaluate(options);
    if (report->parsed()) return cmd_report(options, run_paths);
    if (cache->parsed()) return cmd_cache(options, cache_action);
    return fail(faaf::ErrorCode::InvalidConfig, "no subcommand given");
  } catch (const faaf::Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::exception& e) {
    return fail(faaf::ErrorCode::IoError, e.what());
  }
}
