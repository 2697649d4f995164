#pragma once

// Parsing and invocation of model responses. A response gets exactly one
// parse attempt: per-argument problems fail only the affected fact, a body
// that does not parse under its dialect grammar fails every fact. Verdict
// values are validated by exact, case-sensitive string equality against the
// argument's enum domain; looseness here would mask the formatting failures
// the N/A accounting is meant to surface.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "faaf/core.hpp"
#include "faaf/detail/xml.hpp"
#include "faaf/function_builder.hpp"
#include "faaf/usage.hpp"

namespace faaf {

/// A model response exactly as received, plus its usage accounting. The
/// body is kept byte-exact for auditing and caching.
struct RawModelOutput {
  WireDialect dialect = WireDialect::PlainText;
  std::string body;
  UsageRecord usage;
};

enum class FailureReason {
  EnumMismatch,
  NullVerdict,
  MissingArgument,
  WholeResponseUnparseable,
  NoVerdictToken,
  CallFailed,
};

inline std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::EnumMismatch: return "EnumMismatch";
    case FailureReason::NullVerdict: return "NullVerdict";
    case FailureReason::MissingArgument: return "MissingArgument";
    case FailureReason::WholeResponseUnparseable:
      return "WholeResponseUnparseable";
    case FailureReason::NoVerdictToken: return "NoVerdictToken";
    case FailureReason::CallFailed: return "CallFailed";
  }
  return "CallFailed";
}

inline std::optional<FailureReason> failure_reason_from_string(
    std::string_view s) {
  if (s == "EnumMismatch") return FailureReason::EnumMismatch;
  if (s == "NullVerdict") return FailureReason::NullVerdict;
  if (s == "MissingArgument") return FailureReason::MissingArgument;
  if (s == "WholeResponseUnparseable")
    return FailureReason::WholeResponseUnparseable;
  if (s == "NoVerdictToken") return FailureReason::NoVerdictToken;
  if (s == "CallFailed") return FailureReason::CallFailed;
  return std::nullopt;
}

struct InvocationFailure {
  int fact_index = 0;
  FailureReason reason = FailureReason::CallFailed;
  std::string detail;
};

/// The invoked function object: one verdict per fact index (NotAnswered for
/// facts whose value failed validation, with the reason listed in
/// `failures`), plus any captured citations.
struct InvocationResult {
  std::map<int, Verdict> verdicts;
  std::map<int, std::string> citations;
  std::vector<InvocationFailure> failures;

  std::int64_t answered_count() const {
    std::int64_t n = 0;
    for (const auto& [index, verdict] : verdicts) {
      if (verdict != Verdict::NotAnswered) ++n;
    }
    return n;
  }

  std::int64_t not_answered_count() const {
    return static_cast<std::int64_t>(verdicts.size()) - answered_count();
  }
};

/// Exact, case-sensitive membership check. Returns the accepted domain
/// entry, or nullopt on mismatch.
inline std::optional<std::string_view> validate_enum(
    std::string_view value, const std::vector<std::string>& domain) {
  for (const auto& entry : domain) {
    if (value == entry) return std::string_view(entry);
  }
  return std::nullopt;
}

/// Marks every fact in the spec NotAnswered for the given reason.
inline InvocationResult all_facts_failed(const FactFunctionSpec& spec,
                                         FailureReason reason,
                                         const std::string& detail) {
  InvocationResult result;
  for (const auto& arg : spec.arguments) {
    if (arg.role != ArgumentRole::Verdict) continue;
    result.verdicts[arg.fact_index] = Verdict::NotAnswered;
    result.failures.push_back({arg.fact_index, reason, detail});
  }
  return result;
}

namespace detail {

struct ExtractedValue {
  bool present = false;
  bool is_null = false;
  bool is_string = false;
  std::string text;
};

/// Validates one verdict value and applies the post-generation mapping.
inline void assign_verdict(InvocationResult& result,
                           const FactFunctionSpec& spec,
                           const ArgumentSpec& arg,
                           const ExtractedValue& value) {
  if (!value.present) {
    result.verdicts[arg.fact_index] = Verdict::NotAnswered;
    result.failures.push_back({arg.fact_index, FailureReason::MissingArgument,
                               "argument '" + arg.name + "' missing"});
    return;
  }
  if (value.is_null) {
    result.verdicts[arg.fact_index] = Verdict::NotAnswered;
    result.failures.push_back({arg.fact_index, FailureReason::NullVerdict,
                               "argument '" + arg.name + "' is null"});
    return;
  }
  if (!value.is_string || !validate_enum(value.text, arg.enum_values)) {
    result.verdicts[arg.fact_index] = Verdict::NotAnswered;
    result.failures.push_back(
        {arg.fact_index, FailureReason::EnumMismatch,
         "argument '" + arg.name + "' value '" + value.text +
             "' is not an accepted Enum type"});
    return;
  }
  Verdict verdict;
  if (value.text == "True") {
    verdict = Verdict::True;
  } else if (value.text == "False") {
    verdict = Verdict::False;
  } else {
    verdict = Verdict::NotClear;  // the configured not-clear label
  }
  result.verdicts[arg.fact_index] = apply_mapping(verdict, spec.post_mapping);
}

inline void assign_citation(InvocationResult& result, const ArgumentSpec& arg,
                            const ExtractedValue& value) {
  if (!value.present || value.is_null) return;
  if (!value.is_string) {
    warn("citation argument '" + arg.name + "' has a non-string value; ignored");
    return;
  }
  if (value.text.empty()) return;  // empty string means no supporting excerpt
  result.citations[arg.fact_index] = value.text;
}

inline InvocationResult parse_json_tool_body(const std::string& body,
                                             const FactFunctionSpec& spec) {
  nlohmann::json parsed =
      nlohmann::json::parse(body, /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    return all_facts_failed(spec, FailureReason::WholeResponseUnparseable,
                            "body is not a JSON object");
  }

  for (const auto& [key, value] : parsed.items()) {
    bool known = std::any_of(
        spec.arguments.begin(), spec.arguments.end(),
        [&key = key](const ArgumentSpec& arg) { return arg.name == key; });
    if (!known) {
      warn("response contains unknown argument '" + key + "'; ignored");
    }
  }

  InvocationResult result;
  for (const auto& arg : spec.arguments) {
    ExtractedValue value;
    if (auto it = parsed.find(arg.name); it != parsed.end()) {
      value.present = true;
      value.is_null = it->is_null();
      value.is_string = it->is_string();
      if (value.is_string) {
        value.text = it->get<std::string>();
      } else if (!value.is_null) {
        value.text = it->dump();
      }
    }
    if (arg.role == ArgumentRole::Verdict) {
      assign_verdict(result, spec, arg, value);
    } else {
      assign_citation(result, arg, value);
    }
  }
  return result;
}

inline InvocationResult parse_xml_tool_body(const std::string& body,
                                            const FactFunctionSpec& spec) {
  auto invoke = find_element(body, "invoke");
  if (!invoke) {
    return all_facts_failed(spec, FailureReason::WholeResponseUnparseable,
                            "no <invoke> block in body");
  }
  auto tool_name = find_element(*invoke, "tool_name");
  if (!tool_name || xml_unescape(trim(*tool_name)) != spec.title) {
    return all_facts_failed(
        spec, FailureReason::WholeResponseUnparseable,
        "invoke does not name the tool '" + spec.title + "'");
  }
  auto parameters = find_element(*invoke, "parameters");
  if (!parameters) {
    return all_facts_failed(spec, FailureReason::WholeResponseUnparseable,
                            "no <parameters> block in invoke");
  }
  auto children = scan_children(*parameters);
  if (!children) {
    return all_facts_failed(spec, FailureReason::WholeResponseUnparseable,
                            "malformed <parameters> block");
  }

  // XML has no null: element text is trimmed of framing whitespace and an
  // empty element is treated as a null value.
  std::map<std::string, std::string> values;
  for (const auto& child : *children) {
    if (values.count(child.name)) {
      warn("response repeats argument '" + child.name + "'; first value kept");
      continue;
    }
    bool known = std::any_of(
        spec.arguments.begin(), spec.arguments.end(),
        [&child](const ArgumentSpec& arg) { return arg.name == child.name; });
    if (!known) {
      warn("response contains unknown argument '" + child.name + "'; ignored");
      continue;
    }
    values[child.name] = trim(xml_unescape(child.text));
  }

  InvocationResult result;
  for (const auto& arg : spec.arguments) {
    ExtractedValue value;
    if (auto it = values.find(arg.name); it != values.end()) {
      value.present = true;
      value.is_null = it->second.empty();
      value.is_string = !value.is_null;
      value.text = it->second;
    }
    if (arg.role == ArgumentRole::Verdict) {
      assign_verdict(result, spec, arg, value);
    } else {
      assign_citation(result, arg, value);
    }
  }
  return result;
}

}  // namespace detail

/// Invokes the function object against a raw tool response. Exactly one
/// parse attempt, never a retry. Per-argument failures are isolated; only a
/// body that is malformed under the dialect grammar fails every fact.
inline InvocationResult parse_tool_response(const RawModelOutput& raw,
                                            const FactFunctionSpec& spec) {
  switch (raw.dialect) {
    case WireDialect::JsonTool:
      return detail::parse_json_tool_body(raw.body, spec);
    case WireDialect::XmlTool:
      return detail::parse_xml_tool_body(raw.body, spec);
    case WireDialect::PlainText:
      break;
  }
  throw Error(ErrorCode::UnsupportedDialect,
              "plain-text bodies cannot be parsed as tool responses");
}

namespace detail {

/// Earliest case-insensitive occurrence of `word` bounded by non-alphanumeric
/// characters, or npos.
inline std::size_t find_word_ci(std::string_view text, std::string_view word) {
  auto lower = [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  };
  auto is_word_char = [](unsigned char c) { return std::isalnum(c) != 0; };
  if (word.empty() || text.size() < word.size()) return std::string_view::npos;
  for (std::size_t i = 0; i + word.size() <= text.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < word.size(); ++j) {
      if (lower(static_cast<unsigned char>(text[i + j])) != word[j]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    bool left_ok = (i == 0) || !is_word_char(static_cast<unsigned char>(text[i - 1]));
    std::size_t after = i + word.size();
    bool right_ok =
        (after == text.size()) || !is_word_char(static_cast<unsigned char>(text[after]));
    if (left_ok && right_ok) return i;
  }
  return std::string_view::npos;
}

}  // namespace detail

/// Word-matching parser for the single-fact prompt baseline. Total: every
/// string maps to exactly one of True/False/NotAnswered. When both words
/// appear, the first occurrence by character offset wins; this tie-break is
/// deliberately fragile ("... the claim is true or false ..." reads as
/// True) and is kept because it reproduces how prose answers get misread by
/// word matching.
inline Verdict parse_prompt_response(std::string_view body) {
  auto true_pos = detail::find_word_ci(body, "true");
  auto false_pos = detail::find_word_ci(body, "false");
  if (true_pos == std::string_view::npos &&
      false_pos == std::string_view::npos) {
    return Verdict::NotAnswered;
  }
  if (true_pos == std::string_view::npos) return Verdict::False;
  if (false_pos == std::string_view::npos) return Verdict::True;
  return true_pos < false_pos ? Verdict::True : Verdict::False;
}

}  // namespace faaf
