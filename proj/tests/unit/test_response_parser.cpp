#include <catch2/catch_amalgamated.hpp>

#include <faaf/response_parser.hpp>

#include <random>

#include "test_helpers.hpp"

using namespace faaf;

namespace {

FactFunctionSpec make_spec(int n_facts, ResponseDomain domain,
                           bool with_citation) {
  FormulationConfig config;
  config.response_domain = domain;
  config.with_citation = with_citation;
  std::vector<FactStatement> facts;
  for (int i = 0; i < n_facts; ++i) {
    facts.push_back({i, "Fact " + std::to_string(i) + "."});
  }
  return build_fact_function(facts, config);
}

RawModelOutput json_body(std::string body) {
  return {WireDialect::JsonTool, std::move(body), {}};
}

bool has_failure(const InvocationResult& result, int index,
                 FailureReason reason) {
  for (const auto& failure : result.failures) {
    if (failure.fact_index == index && failure.reason == reason) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("minimal valid json response") {
  auto spec = make_spec(1, ResponseDomain::TF, false);
  auto result = parse_tool_response(json_body(R"({"fact_0":"True"})"), spec);
  CHECK(result.verdicts.at(0) == Verdict::True);
  CHECK(result.failures.empty());
  CHECK(result.answered_count() == 1);
}

TEST_CASE("not-clear value maps to False under the default mapping") {
  auto spec = make_spec(3, ResponseDomain::TFN, false);
  auto result = parse_tool_response(
      json_body(R"({"fact_0":"True","fact_1":"False","fact_2":"Not clear from the given passage"})"),
      spec);
  CHECK(result.verdicts.at(2) == Verdict::False);
  CHECK(result.failures.empty());
}

TEST_CASE("not-clear value survives when the mapping is off") {
  FormulationConfig config;
  config.response_domain = ResponseDomain::TFN;
  config.mapping = NotClearMapping::Keep;
  auto spec = build_fact_function({{0, "A."}}, config);
  auto result = parse_tool_response(
      json_body(R"({"fact_0":"Not clear from the given passage"})"), spec);
  CHECK(result.verdicts.at(0) == Verdict::NotClear);
}

TEST_CASE("null verdict poisons only its own fact") {
  auto spec = make_spec(2, ResponseDomain::TF, true);
  auto result = parse_tool_response(
      json_body(R"({"citation_0":"Fact 0.","fact_0":"True","citation_1":null,"fact_1":null})"),
      spec);
  CHECK(result.verdicts.at(0) == Verdict::True);
  CHECK(result.verdicts.at(1) == Verdict::NotAnswered);
  CHECK(has_failure(result, 1, FailureReason::NullVerdict));
  CHECK(result.citations.at(0) == "Fact 0.");
  CHECK(result.citations.count(1) == 0);
}

TEST_CASE("lowercase enum value is an EnumMismatch") {
  auto spec = make_spec(1, ResponseDomain::TF, false);
  auto result = parse_tool_response(json_body(R"({"fact_0":"true"})"), spec);
  CHECK(result.verdicts.at(0) == Verdict::NotAnswered);
  CHECK(has_failure(result, 0, FailureReason::EnumMismatch));
}

TEST_CASE("missing argument is recorded per fact") {
  auto spec = make_spec(2, ResponseDomain::TF, false);
  auto result = parse_tool_response(json_body(R"({"fact_0":"False"})"), spec);
  CHECK(result.verdicts.at(0) == Verdict::False);
  CHECK(has_failure(result, 1, FailureReason::MissingArgument));
}

TEST_CASE("unparseable body fails every fact") {
  auto spec = make_spec(3, ResponseDomain::TF, false);
  for (const std::string body : {"not json at all", "[1,2,3]", ""}) {
    auto result = parse_tool_response(json_body(body), spec);
    CHECK(result.verdicts.size() == 3);
    CHECK(result.answered_count() == 0);
    for (int i = 0; i < 3; ++i) {
      CHECK(has_failure(result, i, FailureReason::WholeResponseUnparseable));
    }
  }
}

TEST_CASE("unknown extra keys warn but do not fail the call") {
  auto spec = make_spec(1, ResponseDomain::TF, false);
  int warnings = 0;
  set_warn_handler([&](std::string_view) { ++warnings; });
  auto result = parse_tool_response(
      json_body(R"({"fact_0":"True","confidence":"high"})"), spec);
  set_warn_handler({});
  CHECK(result.verdicts.at(0) == Verdict::True);
  CHECK(result.failures.empty());
  CHECK(warnings == 1);
}

TEST_CASE("empty citation strings are treated as absent") {
  auto spec = make_spec(1, ResponseDomain::TF, true);
  auto result = parse_tool_response(
      json_body(R"({"citation_0":"","fact_0":"False"})"), spec);
  CHECK(result.citations.empty());
  CHECK(result.verdicts.at(0) == Verdict::False);
}

TEST_CASE("xml invoke bodies parse with whitespace-tolerant values") {
  auto spec = make_spec(2, ResponseDomain::TF, false);
  RawModelOutput raw{WireDialect::XmlTool,
                     "<invoke>\n<tool_name>FactChecker</tool_name>\n"
                     "<parameters>\n<fact_0>\n  True\n</fact_0>\n"
                     "<fact_1>False</fact_1>\n</parameters>\n</invoke>",
                     {}};
  auto result = parse_tool_response(raw, spec);
  CHECK(result.verdicts.at(0) == Verdict::True);
  CHECK(result.verdicts.at(1) == Verdict::False);
  CHECK(result.failures.empty());
}

TEST_CASE("xml empty element is a null verdict") {
  auto spec = make_spec(1, ResponseDomain::TF, false);
  RawModelOutput raw{WireDialect::XmlTool,
                     "<invoke><tool_name>FactChecker</tool_name><parameters>"
                     "<fact_0></fact_0></parameters></invoke>",
                     {}};
  auto result = parse_tool_response(raw, spec);
  CHECK(result.verdicts.at(0) == Verdict::NotAnswered);
  CHECK(has_failure(result, 0, FailureReason::NullVerdict));
}

TEST_CASE("xml body without a matching tool name fails everything") {
  auto spec = make_spec(2, ResponseDomain::TF, false);
  RawModelOutput raw{WireDialect::XmlTool,
                     "<invoke><tool_name>OtherTool</tool_name><parameters>"
                     "<fact_0>True</fact_0><fact_1>True</fact_1></parameters>"
                     "</invoke>",
                     {}};
  auto result = parse_tool_response(raw, spec);
  CHECK(result.answered_count() == 0);
}

TEST_CASE("xml entities in values are unescaped before validation") {
  FormulationConfig config;
  config.response_domain = ResponseDomain::TFN;
  config.not_clear_label = "A & B";
  auto spec = build_fact_function({{0, "A."}}, config);
  RawModelOutput raw{WireDialect::XmlTool,
                     "<invoke><tool_name>FactChecker</tool_name><parameters>"
                     "<fact_0>A &amp; B</fact_0></parameters></invoke>",
                     {}};
  auto result = parse_tool_response(raw, spec);
  CHECK(result.verdicts.at(0) == Verdict::False);  // mapped from not-clear
}

TEST_CASE("plain text dialect rejected for tool parsing") {
  auto spec = make_spec(1, ResponseDomain::TF, false);
  RawModelOutput raw{WireDialect::PlainText, "True", {}};
  CHECK_THROWS_AS(parse_tool_response(raw, spec), Error);
}

TEST_CASE("validate_enum is exact and case sensitive") {
  std::vector<std::string> tf = {"True", "False"};
  CHECK(validate_enum("False", tf) == "False");
  CHECK(!validate_enum("FALSE", tf).has_value());
  std::vector<std::string> tfn = {"True", "False",
                                  "Not clear from the given passage"};
  CHECK(validate_enum("Not clear from the given passage", tfn).has_value());
  CHECK(!validate_enum("Not clear", tfn).has_value());
}

TEST_CASE("word-match parser on the documented cases") {
  CHECK(parse_prompt_response("True") == Verdict::True);
  CHECK(parse_prompt_response("False.") == Verdict::False);
  CHECK(parse_prompt_response(
            "To determine if the claim is true or false based on the given "
            "passage, we...") == Verdict::True);
  CHECK(parse_prompt_response("I cannot assess this.") == Verdict::NotAnswered);
  CHECK(parse_prompt_response("") == Verdict::NotAnswered);
}

TEST_CASE("word-match parser uses word boundaries") {
  CHECK(parse_prompt_response("untrue claims abound") == Verdict::NotAnswered);
  CHECK(parse_prompt_response("falsehood") == Verdict::NotAnswered);
  CHECK(parse_prompt_response("the claim is FALSE") == Verdict::False);
  CHECK(parse_prompt_response("true-ish") == Verdict::True);
}

TEST_CASE("word-match parser is total over random strings") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> len(0, 60);
  std::uniform_int_distribution<int> chr(32, 126);
  for (int i = 0; i < 500; ++i) {
    std::string s;
    int n = len(rng);
    for (int j = 0; j < n; ++j) s += static_cast<char>(chr(rng));
    Verdict v = parse_prompt_response(s);
    CHECK((v == Verdict::True || v == Verdict::False ||
           v == Verdict::NotAnswered));
  }
}

TEST_CASE("completeness: answered plus not-answered covers the spec") {
  // Property: corrupting one argument in an otherwise valid body changes
  // exactly that fact, and the verdict partition always covers all facts.
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    bool citation = rng() % 2 == 0;
    auto spec = make_spec(n, ResponseDomain::TF, citation);

    nlohmann::ordered_json body = nlohmann::ordered_json::object();
    for (const auto& arg : spec.arguments) {
      if (arg.role == ArgumentRole::Verdict) {
        body[arg.name] = (rng() % 2 == 0) ? "True" : "False";
      } else {
        body[arg.name] = "excerpt";
      }
    }
    auto clean = parse_tool_response(json_body(body.dump()), spec);
    CHECK(clean.answered_count() == n);
    CHECK(clean.verdicts.size() == static_cast<std::size_t>(n));

    int corrupt_index = static_cast<int>(rng() % static_cast<std::size_t>(n));
    body[verdict_argument_name(corrupt_index)] = "maybe";
    auto corrupted = parse_tool_response(json_body(body.dump()), spec);
    CHECK(corrupted.answered_count() == n - 1);
    CHECK(corrupted.verdicts.at(corrupt_index) == Verdict::NotAnswered);
    for (const auto& [index, verdict] : corrupted.verdicts) {
      if (index != corrupt_index) {
        CHECK(verdict == clean.verdicts.at(index));
      }
    }
    // NotAnswered iff listed in failures, exactly once.
    for (const auto& [index, verdict] : corrupted.verdicts) {
      int listed = 0;
      for (const auto& failure : corrupted.failures) {
        if (failure.fact_index == index) ++listed;
      }
      CHECK(listed == (verdict == Verdict::NotAnswered ? 1 : 0));
    }
  }
}

TEST_CASE("TFN output alphabet under the default mapping") {
  std::mt19937 rng(7);
  auto spec = make_spec(5, ResponseDomain::TFN, false);
  const char* choices[] = {"True", "False", "Not clear from the given passage",
                           "bogus"};
  for (int trial = 0; trial < 40; ++trial) {
    nlohmann::ordered_json body = nlohmann::ordered_json::object();
    for (const auto& arg : spec.arguments) {
      body[arg.name] = choices[rng() % 4];
    }
    auto result = parse_tool_response(json_body(body.dump()), spec);
    for (const auto& [index, verdict] : result.verdicts) {
      CHECK((verdict == Verdict::True || verdict == Verdict::False ||
             verdict == Verdict::NotAnswered));
    }
  }
}
