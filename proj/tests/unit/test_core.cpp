#include <catch2/catch_amalgamated.hpp>

#include <faaf/core.hpp>

#include "test_helpers.hpp"

using namespace faaf;

TEST_CASE("verdict mapping sends NotClear to False and is idempotent") {
  CHECK(apply_mapping(Verdict::NotClear, NotClearMapping::ToFalse) ==
        Verdict::False);
  CHECK(apply_mapping(Verdict::NotClear, NotClearMapping::Keep) ==
        Verdict::NotClear);

  for (Verdict v : {Verdict::True, Verdict::False, Verdict::NotClear,
                    Verdict::NotAnswered}) {
    for (NotClearMapping m : {NotClearMapping::ToFalse, NotClearMapping::Keep}) {
      Verdict once = apply_mapping(v, m);
      CHECK(apply_mapping(once, m) == once);
    }
  }
}

TEST_CASE("fact set validation") {
  SECTION("accepts contiguous indices") {
    CHECK_NOTHROW(validate_fact_set({{0, "A."}, {1, "B."}}));
  }
  SECTION("rejects empty text") {
    try {
      validate_fact_set({{0, "  \t"}});
      FAIL("expected ValidationError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ValidationError);
    }
  }
  SECTION("rejects duplicate indices") {
    try {
      validate_fact_set({{0, "A."}, {0, "B."}});
      FAIL("expected DuplicateIndex");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DuplicateIndex);
    }
  }
  SECTION("rejects gaps") {
    try {
      validate_fact_set({{0, "A."}, {2, "B."}});
      FAIL("expected ValidationError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ValidationError);
    }
  }
}

TEST_CASE("formulation config validation") {
  FormulationConfig config;
  CHECK_NOTHROW(config.validate());

  SECTION("template must contain exactly one {fact} placeholder") {
    config.description_template = "no placeholder";
    CHECK_THROWS_AS(config.validate(), Error);
    config.description_template = "{fact} and {fact}";
    CHECK_THROWS_AS(config.validate(), Error);
  }

  SECTION("TFN needs a not-clear label") {
    config.response_domain = ResponseDomain::TFN;
    config.not_clear_label = " ";
    CHECK_THROWS_AS(config.validate(), Error);
  }
}

TEST_CASE("QARecord validation enforces gold label invariants") {
  faaf::DatasetFile dataset = faaf_test::small_dataset();
  QARecord record = dataset.records[0];
  CHECK_NOTHROW(record.validate());

  SECTION("ground-truth labels must all be True") {
    record.gold_labels[VariantKind::GroundTruth][1] = false;
    CHECK_THROWS_AS(record.validate(), Error);
  }

  SECTION("annotations must reference known facts") {
    record.gold_labels[VariantKind::Poor][9] = true;
    CHECK_THROWS_AS(record.validate(), Error);
  }

  SECTION("complete annotations required in strict mode only") {
    record.gold_labels.erase(VariantKind::Poor);
    CHECK_THROWS_AS(record.validate(true), Error);
    CHECK_NOTHROW(record.validate(false));
  }

  SECTION("all three answers are required") {
    record.answers.erase(VariantKind::Poor);
    CHECK_THROWS_AS(record.validate(), Error);
  }
}

TEST_CASE("trim and helpers") {
  CHECK(trim("  x \r\n") == "x");
  CHECK(trim("\t") == "");
  CHECK(count_occurrences("{fact} {fact}", "{fact}") == 2);
  std::string s = "a {fact} b";
  CHECK(replace_first(s, "{fact}", "X"));
  CHECK(s == "a X b");
}
