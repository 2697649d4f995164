#pragma once

// Ingestion and persistence of evaluation datasets. The canonical format is
// line-delimited JSON: the first line is a self-describing header, each
// following line one QA record. Annotations are explicit
// (variant, fact index, label) triples so they survive fact re-generation.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "faaf/core.hpp"

namespace faaf {

constexpr int kDatasetSchemaVersion = 1;
constexpr std::string_view kDatasetSchemaName = "faaf.dataset";

struct DatasetCounts {
  std::size_t pairs = 0;
  std::size_t facts = 0;
  std::size_t annotations = 0;
};

struct DatasetFile {
  std::string source;
  std::string dataset_version;
  std::vector<QARecord> records;

  DatasetCounts counts() const {
    DatasetCounts c;
    c.pairs = records.size();
    for (const auto& record : records) {
      c.facts += record.facts.size();
      for (const auto& [kind, labels] : record.gold_labels) {
        c.annotations += labels.size();
      }
    }
    return c;
  }

  const QARecord& record_by_id(const std::string& id) const {
    for (const auto& record : records) {
      if (record.id == id) return record;
    }
    throw Error(ErrorCode::ValidationError, "no record with id '" + id + "'");
  }
};

struct DatasetLoadOptions {
  /// When false, records whose facts are not (fully) annotated still load;
  /// used by fact generation, which produces facts before any human labels
  /// exist. Metric paths stay strict.
  bool require_complete_annotations = true;
};

namespace detail {

inline nlohmann::ordered_json record_to_json(const QARecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["question"] = record.question;
  nlohmann::ordered_json answers;
  for (VariantKind kind : kAllVariants) {
    auto it = record.answers.find(kind);
    if (it != record.answers.end()) {
      answers[std::string(to_string(kind))] = it->second;
    }
  }
  j["answers"] = std::move(answers);
  nlohmann::ordered_json facts = nlohmann::ordered_json::array();
  for (const auto& fact : record.facts) {
    facts.push_back({{"index", fact.index}, {"text", fact.text}});
  }
  j["facts"] = std::move(facts);
  nlohmann::ordered_json annotations = nlohmann::ordered_json::array();
  for (VariantKind kind : kAllVariants) {
    auto vit = record.gold_labels.find(kind);
    if (vit == record.gold_labels.end()) continue;
    for (const auto& [fact_index, label] : vit->second) {
      annotations.push_back({{"variant", std::string(to_string(kind))},
                             {"fact", fact_index},
                             {"label", label}});
    }
  }
  j["annotations"] = std::move(annotations);
  return j;
}

inline QARecord record_from_json(const nlohmann::json& j, std::size_t line) {
  QARecord record;
  try {
    record.id = j.at("id").get<std::string>();
    record.question = j.at("question").get<std::string>();
    for (const auto& [key, value] : j.at("answers").items()) {
      auto kind = variant_from_string(key);
      if (!kind) {
        throw ParseError("unknown answer variant '" + key + "'", line);
      }
      record.answers[*kind] = value.get<std::string>();
    }
    for (const auto& fact : j.at("facts")) {
      record.facts.push_back(
          {fact.at("index").get<int>(), fact.at("text").get<std::string>()});
    }
    if (j.contains("annotations")) {
      for (const auto& annotation : j.at("annotations")) {
        auto kind =
            variant_from_string(annotation.at("variant").get<std::string>());
        if (!kind) {
          throw ParseError("unknown annotation variant in record '" +
                               record.id + "'",
                           line);
        }
        int fact_index = annotation.at("fact").get<int>();
        bool label = annotation.at("label").get<bool>();
        auto& labels = record.gold_labels[*kind];
        if (labels.count(fact_index)) {
          throw Error(ErrorCode::ValidationError,
                      "record '" + record.id + "' annotates (" +
                          std::string(to_string(*kind)) + ", " +
                          std::to_string(fact_index) + ") twice");
        }
        labels[fact_index] = label;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("record on line " + std::to_string(line) + ": " + e.what(),
                     line);
  }
  return record;
}

}  // namespace detail

/// Loads and validates a canonical dataset file. Parse failures carry the
/// line number; validation failures name the offending record and
/// invariant.
inline DatasetFile load_dataset(const std::filesystem::path& path,
                                const DatasetLoadOptions& options = {}) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open dataset file " + path.string());
  }

  DatasetFile dataset;
  std::string line;
  std::size_t line_number = 0;
  bool header_seen = false;
  std::map<std::string, std::size_t> id_lines;

  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    nlohmann::json j =
        nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      throw ParseError("line " + std::to_string(line_number) +
                           " is not valid JSON",
                       line_number);
    }
    if (!header_seen) {
      if (!j.is_object() || j.value("schema", "") != kDatasetSchemaName) {
        throw ParseError("first line must be a '" +
                             std::string(kDatasetSchemaName) + "' header",
                         line_number);
      }
      int version = j.value("version", 0);
      if (version > kDatasetSchemaVersion) {
        throw Error(ErrorCode::SchemaVersionMismatch,
                    "dataset schema version " + std::to_string(version) +
                        " is newer than supported version " +
                        std::to_string(kDatasetSchemaVersion));
      }
      dataset.source = j.value("source", "");
      dataset.dataset_version = j.value("dataset_version", "");
      header_seen = true;
      continue;
    }
    QARecord record = detail::record_from_json(j, line_number);
    if (auto it = id_lines.find(record.id); it != id_lines.end()) {
      throw Error(ErrorCode::ValidationError,
                  "duplicate record id '" + record.id + "' (lines " +
                      std::to_string(it->second) + " and " +
                      std::to_string(line_number) + ")");
    }
    id_lines[record.id] = line_number;
    record.validate(options.require_complete_annotations);
    dataset.records.push_back(std::move(record));
  }
  if (!header_seen) {
    throw ParseError("dataset file is empty", line_number);
  }
  return dataset;
}

/// Writes the canonical line-delimited form atomically (temp file + rename).
inline void save_dataset(const DatasetFile& dataset,
                         const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    }
    nlohmann::ordered_json header;
    header["schema"] = kDatasetSchemaName;
    header["version"] = kDatasetSchemaVersion;
    header["source"] = dataset.source;
    header["dataset_version"] = dataset.dataset_version;
    out << header.dump() << "\n";
    for (const auto& record : dataset.records) {
      out << detail::record_to_json(record).dump() << "\n";
    }
  }
  std::filesystem::rename(tmp, path);
}

/// Percentage of gold-True facts for one answer variant, over all records.
/// This is the dataset's human factual-accuracy figure; for the
/// ground-truth variant it is 100 by construction.
inline double human_accuracy(const DatasetFile& dataset, VariantKind variant) {
  std::int64_t facts = 0;
  std::int64_t gold_true = 0;
  for (const auto& record : dataset.records) {
    auto vit = record.gold_labels.find(variant);
    if (vit == record.gold_labels.end() ||
        vit->second.size() != record.facts.size()) {
      throw Error(ErrorCode::MissingAnnotations,
                  "record '" + record.id + "' lacks complete " +
                      std::string(to_string(variant)) + " annotations");
    }
    for (const auto& [fact_index, label] : vit->second) {
      ++facts;
      if (label) ++gold_true;
    }
  }
  if (facts == 0) {
    throw Error(ErrorCode::MissingAnnotations, "dataset has no annotated facts");
  }
  return 100.0 * static_cast<double>(gold_true) / static_cast<double>(facts);
}

}  // namespace faaf
