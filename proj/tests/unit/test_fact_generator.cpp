#include <catch2/catch_amalgamated.hpp>

#include <faaf/fact_generator.hpp>

#include "test_helpers.hpp"

using namespace faaf;

TEST_CASE("parse_dash_list basics") {
  CHECK(parse_dash_list("- X\n- Y") == std::vector<std::string>{"X", "Y"});
  CHECK(parse_dash_list("Here are facts:\n- X\n\nnotes") ==
        std::vector<std::string>{"X"});
  CHECK(parse_dash_list("-X\n - Y ") == std::vector<std::string>{"X", "Y"});
  CHECK(parse_dash_list("").empty());
  CHECK(parse_dash_list("1. numbered\n2. lines").empty());
}

TEST_CASE("parse_dash_list preserves order and duplicates") {
  auto facts = parse_dash_list("- B\n- A\n- B");
  CHECK(facts == std::vector<std::string>{"B", "A", "B"});
}

TEST_CASE("parse_dash_list output length equals dash-line count") {
  std::string body;
  int dash_lines = 0;
  for (int i = 0; i < 20; ++i) {
    if (i % 3 == 0) {
      body += "note " + std::to_string(i) + "\n";
    } else {
      body += "- fact " + std::to_string(i) + "\n";
      ++dash_lines;
    }
  }
  CHECK(parse_dash_list(body).size() == static_cast<std::size_t>(dash_lines));
}

TEST_CASE("generate_facts parses a scripted two-line response") {
  BackendDescriptor backend;
  backend.kind = BackendKind::MockScripted;
  backend.name = "scripted";
  backend.fixture_path =
      faaf_test::fixture_path("scripted_dashlist.json").string();

  Gateway gateway;
  FactGenRequest req{"What is A?", "A. B.", backend};
  auto facts = generate_facts(req, gateway);
  REQUIRE(facts.size() == 2);
  CHECK(facts[0].index == 0);
  CHECK(facts[0].text == "A.");
  CHECK(facts[1].index == 1);
  CHECK(facts[1].text == "B.");
}

TEST_CASE("generate_facts rejects responses without dash lines") {
  faaf_test::TempDir tmp;
  auto fixture = tmp.path() / "empty.json";
  {
    std::ofstream out(fixture);
    out << R"(["no list here, sorry"])";
  }
  BackendDescriptor backend;
  backend.kind = BackendKind::MockScripted;
  backend.name = "scripted-empty";
  backend.fixture_path = fixture.string();

  Gateway gateway;
  set_warn_handler([](std::string_view) {});
  try {
    generate_facts({"Q?", "P.", backend}, gateway);
    FAIL("expected GenerationEmpty");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GenerationEmpty);
  }
  set_warn_handler({});
}

TEST_CASE("generate_facts validates its request") {
  BackendDescriptor backend;
  backend.kind = BackendKind::MockAdversarial;
  backend.name = "adv";
  Gateway gateway;
  CHECK_THROWS_AS(generate_facts({"", "P.", backend}, gateway), Error);
  CHECK_THROWS_AS(generate_facts({"Q?", "  ", backend}, gateway), Error);
}

TEST_CASE("shipped dataset: sri lanka pair yields its six facts") {
  BackendDescriptor backend;
  backend.kind = BackendKind::MockOracle;
  backend.name = "oracle";
  backend.dataset_path = faaf_test::shipped_dataset_path().string();

  Gateway gateway;
  DatasetFile dataset = load_dataset(faaf_test::shipped_dataset_path());
  const QARecord& record = dataset.record_by_id("sri-lanka-economic-crisis");
  FactGenRequest req{record.question,
                     record.answer(VariantKind::GroundTruth), backend};
  auto facts = generate_facts(req, gateway);
  REQUIRE(facts.size() == 6);
  bool found = false;
  for (const auto& fact : facts) {
    if (fact.text ==
        "Tax cuts and money creation by the government contributed to the "
        "Sri Lankan economic crisis.") {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("shipped dataset: regeneration totals 281 facts, mean 5.62") {
  BackendDescriptor backend;
  backend.kind = BackendKind::MockOracle;
  backend.name = "oracle";
  backend.dataset_path = faaf_test::shipped_dataset_path().string();

  Gateway gateway;
  DatasetFile dataset = load_dataset(faaf_test::shipped_dataset_path());
  std::size_t total = 0;
  for (const auto& record : dataset.records) {
    FactGenRequest req{record.question,
                       record.answer(VariantKind::GroundTruth), backend};
    total += generate_facts(req, gateway).size();
  }
  CHECK(total == 281);
  CHECK(static_cast<double>(total) / dataset.records.size() ==
        Catch::Approx(5.62));
}

TEST_CASE("oracle backend replays stored facts for a known question") {
  faaf_test::TempDir tmp;
  auto dataset_path = tmp.path() / "dataset.jsonl";
  save_dataset(faaf_test::small_dataset(), dataset_path);

  BackendDescriptor backend;
  backend.kind = BackendKind::MockOracle;
  backend.name = "oracle";
  backend.dataset_path = dataset_path.string();

  Gateway gateway;
  FactGenRequest req{"Who designed the beta bridge?",
                     "The beta bridge was designed by Mara Voss. Construction "
                     "finished in 1931.",
                     backend};
  auto facts = generate_facts(req, gateway);
  REQUIRE(facts.size() == 2);
  CHECK(facts[0].text == "The beta bridge was designed by Mara Voss.");
  CHECK(facts[1].index == 1);
}
