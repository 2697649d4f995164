#pragma once

// Error Rate, F1micro (False as the positive class), N/A accounting and
// call/token cost summaries over evaluation runs, plus table/CSV rendering.
//
// Verification accuracy is computed over answered facts only: NotAnswered
// facts are excluded from both the numerator and denominator of ER and F1m,
// and reported separately in the N/A column so nothing is hidden.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "faaf/core.hpp"
#include "faaf/dataset.hpp"
#include "faaf/engine.hpp"
#include "faaf/usage.hpp"

namespace faaf {

/// Confusion counts over answered facts with "False" as the positive class.
struct ConfusionCounts {
  std::int64_t tp = 0;  // predicted False, gold False
  std::int64_t fp = 0;  // predicted False, gold True
  std::int64_t tn = 0;  // predicted True, gold True
  std::int64_t fn = 0;  // predicted True, gold False
  std::int64_t na = 0;  // NotAnswered, excluded from the metrics

  std::int64_t answered() const { return tp + fp + tn + fn; }
  std::int64_t total() const { return answered() + na; }
};

/// Tallies one verdict map against its gold labels. Gold must cover every
/// predicted fact index. A NotClear verdict (possible when the mapping is
/// configured off) counts as a rejection, i.e. as False.
inline ConfusionCounts confusion_counts(
    const std::map<int, Verdict>& pred, const std::map<int, bool>& gold) {
  ConfusionCounts counts;
  for (const auto& [index, verdict] : pred) {
    if (verdict == Verdict::NotAnswered) {
      ++counts.na;
      continue;
    }
    auto it = gold.find(index);
    if (it == gold.end()) {
      throw Error(ErrorCode::MissingAnnotations,
                  "no gold label for fact index " + std::to_string(index));
    }
    bool predicted_false =
        verdict == Verdict::False || verdict == Verdict::NotClear;
    if (predicted_false) {
      it->second ? ++counts.fp : ++counts.tp;
    } else {
      it->second ? ++counts.tn : ++counts.fn;
    }
  }
  return counts;
}

inline double error_rate(const ConfusionCounts& counts) {
  if (counts.answered() == 0) {
    throw Error(ErrorCode::NoAnsweredFacts,
                "error rate is undefined when every fact is NotAnswered");
  }
  return 100.0 * static_cast<double>(counts.fp + counts.fn) /
         static_cast<double>(counts.answered());
}

/// Percentage disagreement with the gold labels over answered facts.
inline double error_rate(const std::map<int, Verdict>& pred,
                         const std::map<int, bool>& gold) {
  return error_rate(confusion_counts(pred, gold));
}

inline double f1_micro_false(const ConfusionCounts& counts) {
  if (counts.answered() == 0) {
    throw Error(ErrorCode::NoAnsweredFacts,
                "F1micro is undefined when every fact is NotAnswered");
  }
  // No positive predictions or no positive gold facts: score is 0. The
  // latter covers ground-truth answer columns, where every fact is True.
  if (counts.tp + counts.fp == 0 || counts.tp + counts.fn == 0) return 0.0;
  double precision = static_cast<double>(counts.tp) /
                     static_cast<double>(counts.tp + counts.fp);
  double recall = static_cast<double>(counts.tp) /
                  static_cast<double>(counts.tp + counts.fn);
  if (precision + recall == 0.0) return 0.0;
  return 200.0 * precision * recall / (precision + recall);
}

/// F1 with "False" as the positive class, micro-aggregated over the given
/// facts; measures the identification of unsupported facts.
inline double f1_micro_false(const std::map<int, Verdict>& pred,
                             const std::map<int, bool>& gold) {
  return f1_micro_false(confusion_counts(pred, gold));
}

/// Display rounding: half-up to one decimal. Full precision is kept in
/// machine-readable output.
inline double round_half_up_1dp(double value) {
  return std::floor(value * 10.0 + 0.5) / 10.0;
}

inline std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", round_half_up_1dp(value));
  return buf;
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

struct MetricCell {
  std::int64_t na = 0;
  std::int64_t total = 0;
  std::optional<double> er;   // absent when every fact is NotAnswered
  std::optional<double> f1m;

  std::string na_string() const {
    return std::to_string(na) + "/" + std::to_string(total);
  }
};

struct ReportRow {
  VariantKind variant = VariantKind::GroundTruth;
  std::string formulation;
  std::string backend;
  MetricCell cell;
};

struct CostRow {
  std::string formulation;
  std::string backend;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::int64_t total_tokens = 0;
  std::int64_t calls = 0;
};

struct ReportTable {
  std::vector<ReportRow> rows;
  std::vector<CostRow> costs;
};

/// Token and call totals for one run.
inline CostRow cost_summary(const EvaluationRun& run) {
  CostRow row;
  row.formulation = run.config.formulation_id;
  row.backend = run.config.backend_name;
  UsageRecord total = run.total_usage();
  row.prompt_tokens = total.prompt_tokens;
  row.completion_tokens = total.completion_tokens;
  row.total_tokens = total.total_tokens();
  row.calls = total.call_count;
  return row;
}

/// Pools verdicts per (variant, formulation, backend) across all records of
/// each run and computes the metric cells against the dataset's gold
/// labels. Row order is deterministic: formulation, then backend, then the
/// fixed variant order.
inline ReportTable build_report(const std::vector<EvaluationRun>& runs,
                                const DatasetFile& dataset) {
  if (runs.empty()) {
    throw Error(ErrorCode::InvalidConfig, "report needs at least one run");
  }
  ReportTable table;
  std::map<std::tuple<std::string, std::string, int>, ConfusionCounts> cells;

  for (const auto& run : runs) {
    for (const auto& verification : run.results) {
      const QARecord& record = dataset.record_by_id(verification.qa_id);
      auto git = record.gold_labels.find(verification.variant);
      if (git == record.gold_labels.end()) {
        throw Error(ErrorCode::MissingAnnotations,
                    "record '" + record.id + "' lacks " +
                        std::string(to_string(verification.variant)) +
                        " annotations");
      }
      ConfusionCounts counts =
          confusion_counts(verification.result.verdicts, git->second);
      auto key = std::make_tuple(run.config.formulation_id,
                                 run.config.backend_name,
                                 static_cast<int>(verification.variant));
      auto& cell = cells[key];
      cell.tp += counts.tp;
      cell.fp += counts.fp;
      cell.tn += counts.tn;
      cell.fn += counts.fn;
      cell.na += counts.na;
    }
    table.costs.push_back(cost_summary(run));
  }

  for (const auto& [key, counts] : cells) {
    ReportRow row;
    row.formulation = std::get<0>(key);
    row.backend = std::get<1>(key);
    row.variant = static_cast<VariantKind>(std::get<2>(key));
    row.cell.na = counts.na;
    row.cell.total = counts.total();
    if (counts.answered() > 0) {
      row.cell.er = error_rate(counts);
      row.cell.f1m = f1_micro_false(counts);
    }
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ReportRow& a, const ReportRow& b) {
              return std::tie(a.formulation, a.backend, a.variant) <
                     std::tie(b.formulation, b.backend, b.variant);
            });
  std::sort(table.costs.begin(), table.costs.end(),
            [](const CostRow& a, const CostRow& b) {
              return std::tie(a.formulation, a.backend) <
                     std::tie(b.formulation, b.backend);
            });
  return table;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Plain-text table. Cells whose facts were all NotAnswered render an em
/// dash with a footnote.
inline std::string render_text(const ReportTable& table) {
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s += std::string(width - s.size(), ' ');
    return s;
  };
  std::string out;
  bool undefined_cell = false;
  out += pad("variant", 14) + pad("formulation", 14) + pad("backend", 18) +
         pad("N/A", 10) + pad("ER", 8) + "F1m\n";
  out += std::string(68, '-') + "\n";
  for (const auto& row : table.rows) {
    std::string er = row.cell.er ? format_percent(*row.cell.er) : "—";
    std::string f1m = row.cell.f1m ? format_percent(*row.cell.f1m) : "—";
    if (!row.cell.er) undefined_cell = true;
    out += pad(std::string(to_string(row.variant)), 14) +
           pad(row.formulation, 14) + pad(row.backend, 18) +
           pad(row.cell.na_string(), 10) + pad(er, 8) + f1m + "\n";
  }
  out += "\ncost\n";
  out += pad("formulation", 14) + pad("backend", 18) + pad("prompt", 10) +
         pad("completion", 12) + pad("total", 10) + "calls\n";
  out += std::string(68, '-') + "\n";
  for (const auto& row : table.costs) {
    out += pad(row.formulation, 14) + pad(row.backend, 18) +
           pad(std::to_string(row.prompt_tokens), 10) +
           pad(std::to_string(row.completion_tokens), 12) +
           pad(std::to_string(row.total_tokens), 10) +
           std::to_string(row.calls) + "\n";
  }
  if (undefined_cell) {
    out += "\n—: no correctly formatted responses in this cell\n";
  }
  return out;
}

inline std::string render_csv(const ReportTable& table) {
  std::string out = "variant,formulation,backend,na,er,f1m\n";
  for (const auto& row : table.rows) {
    out += std::string(to_string(row.variant)) + "," + row.formulation + "," +
           row.backend + "," + row.cell.na_string() + ",";
    out += row.cell.er ? format_percent(*row.cell.er) : "";
    out += ",";
    out += row.cell.f1m ? format_percent(*row.cell.f1m) : "";
    out += "\n";
  }
  return out;
}

inline std::string render_cost_csv(const ReportTable& table) {
  std::string out =
      "formulation,backend,prompt_tokens,completion_tokens,total_tokens,"
      "calls\n";
  for (const auto& row : table.costs) {
    out += row.formulation + "," + row.backend + "," +
           std::to_string(row.prompt_tokens) + "," +
           std::to_string(row.completion_tokens) + "," +
           std::to_string(row.total_tokens) + "," + std::to_string(row.calls) +
           "\n";
  }
  return out;
}

}  // namespace faaf
