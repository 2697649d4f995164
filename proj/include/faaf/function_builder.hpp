#pragma once

// Construction of the fact-specific function object and its serialization
// to the wire dialect a backend expects. Construction is deterministic:
// the same facts and configuration always produce the same argument list
// and byte-identical payloads.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "faaf/core.hpp"
#include "faaf/detail/xml.hpp"
#include "faaf/prompts.hpp"

namespace faaf {

/// Dialects a tool description (and its response body) can travel in.
/// PlainText is only valid for prompt-mode responses.
enum class WireDialect { JsonTool, XmlTool, PlainText };

inline std::string_view to_string(WireDialect dialect) {
  switch (dialect) {
    case WireDialect::JsonTool: return "json_tool";
    case WireDialect::XmlTool: return "xml_tool";
    case WireDialect::PlainText: return "plain_text";
  }
  return "plain_text";
}

inline std::optional<WireDialect> wire_dialect_from_string(std::string_view s) {
  if (s == "json_tool") return WireDialect::JsonTool;
  if (s == "xml_tool") return WireDialect::XmlTool;
  if (s == "plain_text") return WireDialect::PlainText;
  return std::nullopt;
}

enum class ArgumentRole { Verdict, Citation };

/// One function argument. Verdict arguments carry the accepted enum values;
/// citation arguments accept a free string (or null when no excerpt exists)
/// and have an empty enum domain.
struct ArgumentSpec {
  std::string name;
  std::string description;
  std::vector<std::string> enum_values;
  ArgumentRole role = ArgumentRole::Verdict;
  int fact_index = 0;
};

/// The constructed function object: ordered arguments, the required-name
/// list and the post-generation mapping carried from the formulation.
struct FactFunctionSpec {
  std::string title;
  std::vector<ArgumentSpec> arguments;
  std::vector<std::string> required;
  NotClearMapping post_mapping = NotClearMapping::ToFalse;
  std::string not_clear_label;

  int fact_count() const {
    int count = 0;
    for (const auto& arg : arguments) {
      if (arg.role == ArgumentRole::Verdict) ++count;
    }
    return count;
  }
};

struct WireSchema {
  WireDialect dialect = WireDialect::JsonTool;
  std::string payload;
};

inline std::string verdict_argument_name(int fact_index) {
  return "fact_" + std::to_string(fact_index);
}

inline std::string citation_argument_name(int fact_index) {
  return "citation_" + std::to_string(fact_index);
}

/// Builds the function object for a fact set. One verdict argument per
/// fact; with citations each fact contributes an additional citation
/// argument placed immediately before its verdict argument. The required
/// list names every verdict argument in fact-index order, then every
/// citation argument in fact-index order. `soft_fact_cap` only triggers a
/// warning; the maximum number of facts a model can absorb is left open.
inline FactFunctionSpec build_fact_function(
    const std::vector<FactStatement>& facts, const FormulationConfig& config,
    int soft_fact_cap = 25) {
  if (facts.empty()) {
    throw Error(ErrorCode::EmptyFactSet, "cannot build a function for zero facts");
  }
  validate_fact_set(facts);
  config.validate();
  if (soft_fact_cap > 0 && static_cast<int>(facts.size()) > soft_fact_cap) {
    warn("function object carries " + std::to_string(facts.size()) +
         " facts (soft cap " + std::to_string(soft_fact_cap) +
         "); large specs may exceed model context");
  }

  std::vector<FactStatement> ordered(facts.size());
  for (const auto& fact : facts) {
    ordered[static_cast<std::size_t>(fact.index)] = fact;
  }

  FactFunctionSpec spec;
  spec.title = config.function_title;
  spec.post_mapping = config.mapping;
  spec.not_clear_label = config.not_clear_label;

  std::vector<std::string> enum_values = {"True", "False"};
  if (config.response_domain == ResponseDomain::TFN) {
    enum_values.push_back(config.not_clear_label);
  }

  for (const auto& fact : ordered) {
    if (config.with_citation) {
      std::string description(prompts::kCitationDescriptionTemplate);
      replace_first(description, "{fact}", fact.text);
      spec.arguments.push_back({citation_argument_name(fact.index), description,
                                {}, ArgumentRole::Citation, fact.index});
    }
    std::string description = config.description_template;
    replace_first(description, "{fact}", fact.text);
    description += " ";
    description += prompts::kEnumInstruction;
    spec.arguments.push_back({verdict_argument_name(fact.index), description,
                              enum_values, ArgumentRole::Verdict, fact.index});
  }

  for (const auto& fact : ordered) {
    spec.required.push_back(verdict_argument_name(fact.index));
  }
  if (config.with_citation) {
    for (const auto& fact : ordered) {
      spec.required.push_back(citation_argument_name(fact.index));
    }
  }
  return spec;
}

namespace detail {

inline nlohmann::ordered_json spec_to_json(const FactFunctionSpec& spec) {
  nlohmann::ordered_json properties = nlohmann::ordered_json::object();
  for (const auto& arg : spec.arguments) {
    nlohmann::ordered_json prop;
    prop["description"] = arg.description;
    if (!arg.enum_values.empty()) {
      prop["enum"] = arg.enum_values;
    }
    prop["type"] = "string";
    properties[arg.name] = std::move(prop);
  }
  nlohmann::ordered_json root;
  root["properties"] = std::move(properties);
  root["required"] = spec.required;
  root["title"] = spec.title;
  root["type"] = "object";
  return root;
}

inline std::string spec_to_xml(const FactFunctionSpec& spec) {
  std::string out = "<tool_description>\n";
  out += "<tool_name>" + xml_escape(spec.title) + "</tool_name>\n";
  out += "<parameters>\n";
  for (const auto& arg : spec.arguments) {
    out += "<parameter>\n";
    out += "<name>" + xml_escape(arg.name) + "</name>\n";
    out += "<type>string</type>\n";
    out += "<description>" + xml_escape(arg.description) + "</description>\n";
    if (!arg.enum_values.empty()) {
      std::string joined;
      for (std::size_t i = 0; i < arg.enum_values.size(); ++i) {
        if (i > 0) joined += ",";
        joined += arg.enum_values[i];
      }
      out += "<enum>" + xml_escape(joined) + "</enum>\n";
    }
    out += "</parameter>\n";
  }
  out += "</parameters>\n";
  out += "</tool_description>";
  return out;
}

}  // namespace detail

/// Serializes a spec into the requested dialect. Output is byte-stable:
/// object keys appear in argument order and formatting is fixed, so the
/// payload doubles as a cache-key component and a golden-file subject.
inline WireSchema serialize_spec(const FactFunctionSpec& spec,
                                 WireDialect dialect) {
  switch (dialect) {
    case WireDialect::JsonTool:
      return {dialect, detail::spec_to_json(spec).dump(2)};
    case WireDialect::XmlTool:
      return {dialect, detail::spec_to_xml(spec)};
    case WireDialect::PlainText:
      break;
  }
  throw Error(ErrorCode::UnsupportedDialect,
              "tool descriptions cannot be serialized as plain text");
}

}  // namespace faaf
