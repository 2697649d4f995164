#include <catch2/catch_amalgamated.hpp>

#include <faaf/dataset.hpp>

#include "test_helpers.hpp"

using namespace faaf;

TEST_CASE("dataset round-trips losslessly") {
  faaf_test::TempDir tmp;
  auto path = tmp.path() / "dataset.jsonl";
  DatasetFile original = faaf_test::small_dataset();
  save_dataset(original, path);
  DatasetFile loaded = load_dataset(path);

  CHECK(loaded.source == original.source);
  CHECK(loaded.dataset_version == original.dataset_version);
  REQUIRE(loaded.records.size() == original.records.size());
  for (std::size_t i = 0; i < loaded.records.size(); ++i) {
    const auto& a = original.records[i];
    const auto& b = loaded.records[i];
    CHECK(a.id == b.id);
    CHECK(a.question == b.question);
    CHECK(a.answers == b.answers);
    REQUIRE(a.facts.size() == b.facts.size());
    for (std::size_t j = 0; j < a.facts.size(); ++j) {
      CHECK(a.facts[j].index == b.facts[j].index);
      CHECK(a.facts[j].text == b.facts[j].text);
    }
    CHECK(a.gold_labels == b.gold_labels);
  }
}

TEST_CASE("duplicate record ids are rejected") {
  faaf_test::TempDir tmp;
  auto path = tmp.path() / "dup.jsonl";
  DatasetFile dataset = faaf_test::small_dataset();
  dataset.records.push_back(dataset.records[0]);
  save_dataset(dataset, path);
  try {
    load_dataset(path);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("alpha") != std::string::npos);
  }
}

TEST_CASE("record missing an answer variant names the record") {
  faaf_test::TempDir tmp;
  auto path = tmp.path() / "missing.jsonl";
  DatasetFile dataset = faaf_test::small_dataset();
  dataset.records[1].answers.erase(VariantKind::Poor);
  save_dataset(dataset, path);
  try {
    load_dataset(path);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("beta") != std::string::npos);
    CHECK(std::string(e.what()).find("poor") != std::string::npos);
  }
}

TEST_CASE("parse errors carry the line number") {
  faaf_test::TempDir tmp;
  auto path = tmp.path() / "broken.jsonl";
  {
    std::ofstream out(path);
    out << R"({"schema":"faaf.dataset","version":1,"source":"x"})" << "\n";
    out << "{not json\n";
  }
  try {
    load_dataset(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("future dataset schema version is rejected") {
  faaf_test::TempDir tmp;
  auto path = tmp.path() / "future.jsonl";
  {
    std::ofstream out(path);
    out << R"({"schema":"faaf.dataset","version":99,"source":"x"})" << "\n";
  }
  try {
    load_dataset(path);
    FAIL("expected SchemaVersionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaVersionMismatch);
  }
}

TEST_CASE("incomplete annotations load only in relaxed mode") {
  faaf_test::TempDir tmp;
  auto path = tmp.path() / "partial.jsonl";
  DatasetFile dataset = faaf_test::small_dataset();
  dataset.records[0].gold_labels[VariantKind::Ungrounded].erase(1);
  save_dataset(dataset, path);
  CHECK_THROWS_AS(load_dataset(path), Error);
  DatasetLoadOptions relaxed;
  relaxed.require_complete_annotations = false;
  CHECK_NOTHROW(load_dataset(path, relaxed));
}

TEST_CASE("human accuracy over the small fixture") {
  DatasetFile dataset = faaf_test::small_dataset();
  CHECK(human_accuracy(dataset, VariantKind::GroundTruth) ==
        Catch::Approx(100.0));
  // 1 of 5 facts is supported by the ungrounded answers.
  CHECK(human_accuracy(dataset, VariantKind::Ungrounded) ==
        Catch::Approx(20.0));
  CHECK(human_accuracy(dataset, VariantKind::Poor) == Catch::Approx(0.0));
}

TEST_CASE("human accuracy demands complete annotations") {
  DatasetFile dataset = faaf_test::small_dataset();
  dataset.records[0].gold_labels[VariantKind::Poor].erase(0);
  try {
    human_accuracy(dataset, VariantKind::Poor);
    FAIL("expected MissingAnnotations");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingAnnotations);
  }
}

TEST_CASE("shipped dataset matches the documented shape") {
  DatasetFile dataset = load_dataset(faaf_test::shipped_dataset_path());
  auto counts = dataset.counts();
  CHECK(counts.pairs == 50);
  CHECK(counts.facts == 281);
  CHECK(counts.annotations == 843);

  CHECK(human_accuracy(dataset, VariantKind::GroundTruth) ==
        Catch::Approx(100.0));
  CHECK(human_accuracy(dataset, VariantKind::Ungrounded) ==
        Catch::Approx(30.6).margin(0.1));
  CHECK(human_accuracy(dataset, VariantKind::Poor) ==
        Catch::Approx(8.5).margin(0.1));
}
