#pragma once

// Derivation of fact statements from a (question, ground-truth answer)
// pair via a generator model, and the dash-list parser for its output.

#include <string>
#include <string_view>
#include <vector>

#include "faaf/core.hpp"
#include "faaf/gateway.hpp"
#include "faaf/prompts.hpp"

namespace faaf {

struct FactGenRequest {
  std::string question;
  std::string passage;  // the ground-truth answer
  BackendDescriptor backend;

  void validate() const {
    if (trim(question).empty() || trim(passage).empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "fact generation needs a non-empty question and passage");
    }
  }
};

/// Lines beginning with "-" (after whitespace trim) become facts, with the
/// dash and surrounding whitespace stripped; everything else is ignored.
/// Total and order-preserving: output length equals the number of
/// dash-prefixed lines.
inline std::vector<std::string> parse_dash_list(std::string_view body) {
  std::vector<std::string> facts;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto eol = body.find('\n', pos);
    std::string_view line = body.substr(
        pos, eol == std::string_view::npos ? body.size() - pos : eol - pos);
    std::string trimmed = trim(line);
    if (!trimmed.empty() && trimmed[0] == '-') {
      facts.push_back(trim(std::string_view(trimmed).substr(1)));
    } else if (!trimmed.empty()) {
      // Numbered lists and prose lines are ignored; the prompt forbids them.
      warn("fact generation: ignoring non-dash line '" + trimmed + "'");
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return facts;
}

/// Asks the generator model to convert the passage into dash-listed facts
/// and returns them with contiguous indices. The number of facts varies
/// with the length and information density of the passage. Duplicate fact
/// strings are kept under distinct indices; deduplication would silently
/// change recall denominators.
inline std::vector<FactStatement> generate_facts(const FactGenRequest& req,
                                                 Gateway& gateway) {
  req.validate();
  ModelRequest request;
  request.mode = RequestMode::Prompt;
  request.system_prompt = default_system_prompt(req.backend, RequestMode::Prompt);
  request.user_prompt = prompts::fact_generation_prompt(req.passage, req.question);
  request.model_id = req.backend.model_id;

  RawModelOutput out = gateway.complete(request, req.backend);
  std::vector<std::string> lines = parse_dash_list(out.body);

  std::vector<FactStatement> facts;
  for (const auto& line : lines) {
    if (line.empty()) {
      warn("fact generation: dropping empty dash line");
      continue;
    }
    facts.push_back({static_cast<int>(facts.size()), line});
  }
  if (facts.empty()) {
    throw Error(ErrorCode::GenerationEmpty,
                "generator returned no dash-listed facts");
  }
  return facts;
}

}  // namespace faaf
