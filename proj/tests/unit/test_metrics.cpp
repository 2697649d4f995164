#include <catch2/catch_amalgamated.hpp>

#include <faaf/metrics.hpp>

#include <cmath>
#include <random>

#include "test_helpers.hpp"

using namespace faaf;

namespace {

// Brute-force recount, independent of the ConfusionCounts accumulation
// path: walks the pairs, counts each cell from scratch, applies the metric
// formulas directly.
struct BruteForce {
  bool defined = false;
  double er = 0.0;
  double f1 = 0.0;
};

BruteForce brute_force(const std::map<int, Verdict>& pred,
                       const std::map<int, bool>& gold) {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  long answered = 0, disagreements = 0;
  for (const auto& [index, verdict] : pred) {
    if (verdict == Verdict::NotAnswered) continue;
    ++answered;
    bool says_false = verdict != Verdict::True;
    bool is_false = !gold.at(index);
    if (says_false != is_false) ++disagreements;
    if (says_false && is_false) ++tp;
    if (says_false && !is_false) ++fp;
    if (!says_false && is_false) ++fn;
    if (!says_false && !is_false) ++tn;
  }
  BruteForce result;
  if (answered == 0) return result;
  result.defined = true;
  result.er = 100.0 * static_cast<double>(disagreements) /
              static_cast<double>(answered);
  if (tp + fp == 0 || tp + fn == 0) {
    result.f1 = 0.0;
  } else {
    double p = static_cast<double>(tp) / static_cast<double>(tp + fp);
    double r = static_cast<double>(tp) / static_cast<double>(tp + fn);
    result.f1 = (p + r) == 0.0 ? 0.0 : 200.0 * p * r / (p + r);
  }
  return result;
}

std::map<int, Verdict> to_pred(const std::vector<Verdict>& verdicts) {
  std::map<int, Verdict> pred;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    pred[static_cast<int>(i)] = verdicts[i];
  }
  return pred;
}

std::map<int, bool> to_gold(const std::vector<bool>& labels) {
  std::map<int, bool> gold;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    gold[static_cast<int>(i)] = labels[i];
  }
  return gold;
}

}  // namespace

TEST_CASE("perfect agreement has zero error rate") {
  auto gold = to_gold({true, false, true, false});
  auto pred = to_pred({Verdict::True, Verdict::False, Verdict::True,
                       Verdict::False});
  CHECK(error_rate(pred, gold) == Catch::Approx(0.0));
  CHECK(f1_micro_false(pred, gold) == Catch::Approx(100.0));
}

TEST_CASE("hand-enumerated confusion matrix: gold FFTT vs pred FTTT") {
  // idx0: pred F gold F -> tp; idx1: pred T gold F -> fn;
  // idx2, idx3: pred T gold T -> tn. ER = 1/4, P = 1, R = 1/2.
  auto gold = to_gold({false, false, true, true});
  auto pred = to_pred({Verdict::False, Verdict::True, Verdict::True,
                       Verdict::True});
  auto counts = confusion_counts(pred, gold);
  CHECK(counts.tp == 1);
  CHECK(counts.fp == 0);
  CHECK(counts.fn == 1);
  CHECK(counts.tn == 2);
  CHECK(error_rate(pred, gold) == Catch::Approx(25.0));
  CHECK(f1_micro_false(pred, gold) == Catch::Approx(200.0 / 3.0));
  CHECK(format_percent(f1_micro_false(pred, gold)) == "66.7");
}

TEST_CASE("all-True gold yields F1m of zero regardless of predictions") {
  auto gold = to_gold({true, true, true});
  for (auto pred : {to_pred({Verdict::True, Verdict::True, Verdict::True}),
                    to_pred({Verdict::False, Verdict::True, Verdict::False})}) {
    CHECK(f1_micro_false(pred, gold) == Catch::Approx(0.0));
  }
}

TEST_CASE("NotAnswered facts are excluded from both metrics") {
  auto gold = to_gold({false, true, true});
  auto pred = to_pred({Verdict::False, Verdict::NotAnswered, Verdict::True});
  auto counts = confusion_counts(pred, gold);
  CHECK(counts.na == 1);
  CHECK(counts.answered() == 2);
  CHECK(error_rate(pred, gold) == Catch::Approx(0.0));
}

TEST_CASE("all-NotAnswered raises NoAnsweredFacts") {
  auto gold = to_gold({true, false});
  auto pred = to_pred({Verdict::NotAnswered, Verdict::NotAnswered});
  try {
    error_rate(pred, gold);
    FAIL("expected NoAnsweredFacts");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoAnsweredFacts);
  }
  CHECK_THROWS_AS(f1_micro_false(pred, gold), Error);
}

TEST_CASE("missing gold label is an error") {
  std::map<int, Verdict> pred{{0, Verdict::True}, {5, Verdict::False}};
  std::map<int, bool> gold{{0, true}};
  CHECK_THROWS_AS(error_rate(pred, gold), Error);
}

TEST_CASE("error rate plus accuracy is 100 over answered facts") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 50;
    std::vector<Verdict> verdicts;
    std::vector<bool> labels;
    bool any_answered = false;
    for (std::size_t i = 0; i < n; ++i) {
      int r = static_cast<int>(rng() % 3);
      verdicts.push_back(r == 0   ? Verdict::True
                         : r == 1 ? Verdict::False
                                  : Verdict::NotAnswered);
      if (r != 2) any_answered = true;
      labels.push_back(rng() % 2 == 0);
    }
    if (!any_answered) continue;
    auto pred = to_pred(verdicts);
    auto gold = to_gold(labels);
    auto counts = confusion_counts(pred, gold);
    double accuracy = 100.0 *
                      static_cast<double>(counts.tp + counts.tn) /
                      static_cast<double>(counts.answered());
    CHECK(error_rate(pred, gold) + accuracy == Catch::Approx(100.0));
  }
}

TEST_CASE("metrics match the brute-force oracle on random vectors") {
  std::mt19937 rng(31337);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 200;
    std::vector<Verdict> verdicts;
    std::vector<bool> labels;
    for (std::size_t i = 0; i < n; ++i) {
      int r = static_cast<int>(rng() % 4);
      verdicts.push_back(r == 0   ? Verdict::True
                         : r <= 2 ? Verdict::False
                                  : Verdict::NotAnswered);
      labels.push_back(rng() % 2 == 0);
    }
    auto pred = to_pred(verdicts);
    auto gold = to_gold(labels);
    auto oracle = brute_force(pred, gold);
    if (!oracle.defined) {
      CHECK_THROWS_AS(error_rate(pred, gold), Error);
      continue;
    }
    CHECK(std::abs(error_rate(pred, gold) - oracle.er) < 1e-9);
    CHECK(std::abs(f1_micro_false(pred, gold) - oracle.f1) < 1e-9);
    ++checked;
  }
  CHECK(checked > 250);
}

TEST_CASE("credulous all-True predictions vs shipped poor-answer gold") {
  // Arithmetic oracle: the poor variant has 8.54% gold-True facts, so a
  // verifier that accepts everything disagrees on the remaining 91.5%.
  DatasetFile dataset = load_dataset(faaf_test::shipped_dataset_path());
  std::map<int, Verdict> pred;
  std::map<int, bool> gold;
  int next = 0;
  for (const auto& record : dataset.records) {
    for (const auto& [index, label] : record.gold_labels.at(VariantKind::Poor)) {
      pred[next] = Verdict::True;
      gold[next] = label;
      ++next;
    }
  }
  REQUIRE(next == 281);
  CHECK(error_rate(pred, gold) == Catch::Approx(91.5).margin(0.1));
  CHECK(format_percent(error_rate(pred, gold)) == "91.5");
  CHECK(f1_micro_false(pred, gold) == Catch::Approx(0.0));  // no False preds
}

TEST_CASE("f1 is invariant under permutation of fact order") {
  std::mt19937 rng(555);
  std::vector<Verdict> verdicts = {Verdict::False, Verdict::True,
                                   Verdict::False, Verdict::NotAnswered,
                                   Verdict::True, Verdict::False};
  std::vector<bool> labels = {false, false, true, true, true, false};
  double baseline = f1_micro_false(to_pred(verdicts), to_gold(labels));
  std::vector<std::size_t> order(verdicts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    std::map<int, Verdict> pred;
    std::map<int, bool> gold;
    for (std::size_t i = 0; i < order.size(); ++i) {
      pred[static_cast<int>(i)] = verdicts[order[i]];
      gold[static_cast<int>(i)] = labels[order[i]];
    }
    CHECK(f1_micro_false(pred, gold) == Catch::Approx(baseline));
  }
}

TEST_CASE("cost summary sums usage records") {
  EvaluationRun run;
  run.config.formulation_id = "faaf-tf";
  run.config.backend_name = "oracle";
  AnswerVerification a;
  a.usage = {100, 20, 5, 1};
  AnswerVerification b;
  b.usage = {50, 10, 7, 1};
  run.results = {a, b};
  auto row = cost_summary(run);
  CHECK(row.prompt_tokens == 150);
  CHECK(row.completion_tokens == 30);
  CHECK(row.total_tokens == 180);
  CHECK(row.calls == 2);

  EvaluationRun empty;
  auto zero = cost_summary(empty);
  CHECK(zero.total_tokens == 0);
  CHECK(zero.calls == 0);
}

TEST_CASE("rounding is half-up to one decimal") {
  CHECK(format_percent(91.459) == "91.5");
  CHECK(format_percent(66.6666) == "66.7");
  CHECK(format_percent(0.05) == "0.1");
  CHECK(format_percent(0.04) == "0.0");
  CHECK(format_percent(100.0) == "100.0");
}

TEST_CASE("report over a mock oracle run") {
  DatasetFile dataset = faaf_test::small_dataset();

  EvaluationRun run;
  run.config.formulation_id = "faaf-tf";
  run.config.backend_name = "oracle";
  for (const auto& record : dataset.records) {
    for (VariantKind variant : kAllVariants) {
      AnswerVerification v;
      v.qa_id = record.id;
      v.variant = variant;
      v.formulation_id = "faaf-tf";
      for (const auto& [index, label] : record.gold_labels.at(variant)) {
        v.result.verdicts[index] = label ? Verdict::True : Verdict::False;
      }
      v.usage = {10, 2, 1, 1};
      run.results.push_back(std::move(v));
    }
  }

  auto table = build_report({run}, dataset);
  REQUIRE(table.rows.size() == 3);  // one row per variant
  for (const auto& row : table.rows) {
    CHECK(row.cell.na == 0);
    CHECK(row.cell.total == 5);
    REQUIRE(row.cell.er.has_value());
    CHECK(*row.cell.er == Catch::Approx(0.0));
    if (row.variant == VariantKind::GroundTruth) {
      CHECK(*row.cell.f1m == Catch::Approx(0.0));  // no gold-False facts
    } else {
      CHECK(*row.cell.f1m == Catch::Approx(100.0));
    }
  }

  auto csv = render_csv(table);
  CHECK(csv.rfind("variant,formulation,backend,na,er,f1m\n", 0) == 0);
  CHECK(csv.find("ground_truth,faaf-tf,oracle,0/5,0.0,0.0") !=
        std::string::npos);
  auto cost_csv = render_cost_csv(table);
  CHECK(cost_csv.find("faaf-tf,oracle,60,12,72,6") != std::string::npos);
}

TEST_CASE("all-NA cells render an em dash with a footnote") {
  DatasetFile dataset = faaf_test::small_dataset();
  EvaluationRun run;
  run.config.formulation_id = "faaf-tf";
  run.config.backend_name = "broken";
  AnswerVerification v;
  v.qa_id = "alpha";
  v.variant = VariantKind::Poor;
  v.formulation_id = "faaf-tf";
  for (int i = 0; i < 3; ++i) {
    v.result.verdicts[i] = Verdict::NotAnswered;
    v.result.failures.push_back({i, FailureReason::CallFailed, "down"});
  }
  run.results.push_back(v);

  auto table = build_report({run}, dataset);
  REQUIRE(table.rows.size() == 1);
  CHECK(!table.rows[0].cell.er.has_value());
  CHECK(table.rows[0].cell.na_string() == "3/3");
  auto text = render_text(table);
  CHECK(text.find("—") != std::string::npos);
  CHECK(text.find("no correctly formatted responses") != std::string::npos);
  auto csv = render_csv(table);
  CHECK(csv.find("poor,faaf-tf,broken,3/3,,") != std::string::npos);
}

TEST_CASE("rows group by formulation for multi-run reports") {
  DatasetFile dataset = faaf_test::small_dataset();
  auto make_run = [&](const std::string& formulation) {
    EvaluationRun run;
    run.config.formulation_id = formulation;
    run.config.backend_name = "oracle";
    AnswerVerification v;
    v.qa_id = "beta";
    v.variant = VariantKind::GroundTruth;
    v.formulation_id = formulation;
    v.result.verdicts = {{0, Verdict::True}, {1, Verdict::True}};
    run.results.push_back(v);
    return run;
  };
  auto table = build_report({make_run("prompt-tf"), make_run("faaf-tf")},
                            dataset);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].formulation == "faaf-tf");  // sorted by formulation
  CHECK(table.rows[1].formulation == "prompt-tf");
}
