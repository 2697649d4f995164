#pragma once

// Pinned prompt templates. Every string that reaches a model is assembled
// here so that golden tests, the mock oracle (which inverts the templates)
// and the dry-run inspector all agree byte-for-byte.

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "faaf/core.hpp"

namespace faaf::prompts {

/// Appended to every verdict-argument description after the fact text.
constexpr std::string_view kEnumInstruction =
    "Respond by using one of the accepted Enum types.";

/// Description template for citation arguments. Facts carry their own
/// terminal punctuation, so no period is inserted after the placeholder.
constexpr std::string_view kCitationDescriptionTemplate =
    "Provide an exact excerpt from the passage which directly supports the "
    "fact: {fact} If no supporting excerpt exists, leave this empty.";

// --- fact generation -------------------------------------------------------

constexpr std::string_view kFactGenerationHeader =
    "Convert the given passage into a list of short facts which specifically "
    "answer the given question.\n"
    "Make sure that the facts can be found in the given passage.\n"
    "The facts should be coherent and succinct sentences with clear and "
    "simple syntax.\n"
    "Do not use pronouns as the subject or object in the syntax of each "
    "fact.\n"
    "The facts should be independent to each other.\n"
    "Do not create facts from the passage which are not answering the given "
    "question.\n"
    "Add a \"-\" before each fact.";

inline std::string fact_generation_prompt(std::string_view passage,
                                          std::string_view question) {
  std::string prompt(kFactGenerationHeader);
  prompt += "\n\nPassage: ";
  prompt += passage;
  prompt += "\n\nQuestion: ";
  prompt += question;
  return prompt;
}

// --- single-fact prompt baseline -------------------------------------------

inline std::string claim_prompt(std::string_view passage,
                                std::string_view fact) {
  std::string prompt = "Passage: ";
  prompt += passage;
  prompt += "\n\nConsidering the given passage, the claim ";
  prompt += fact;
  prompt += " is True or False?";
  return prompt;
}

// --- facts-as-a-function ----------------------------------------------------

constexpr std::string_view kFaafInstruction =
    "Consider the given passage and assign the correct values in the fact "
    "checker function.";

inline std::string faaf_prompt(std::string_view passage) {
  std::string prompt(kFaafInstruction);
  prompt += "\n\nPassage: ";
  prompt += passage;
  return prompt;
}

// --- default system prompts --------------------------------------------------

/// JSON-tool backends keep a minimal system prompt.
constexpr std::string_view kJsonToolSystemPrompt = "You are a helpful assistant.";

/// XML-tool backends get one worked function-call example (exactly one
/// invoke block).
constexpr std::string_view kXmlToolSystemPrompt =
    "In this environment you have access to a tool which you must use to "
    "answer the user's question. Call it by emitting an invoke block. For "
    "example, a tool named get_time with one parameter is called like "
    "this:\n"
    "<invoke>\n"
    "<tool_name>get_time</tool_name>\n"
    "<parameters>\n"
    "<city>London</city>\n"
    "</parameters>\n"
    "</invoke>\n"
    "Respond with a single invoke block and nothing else.";

// --- template inversion (used by the mock oracle) ---------------------------

inline bool is_fact_generation_prompt(std::string_view user_prompt) {
  return user_prompt.rfind(kFactGenerationHeader, 0) == 0;
}

/// Splits a fact-generation prompt back into (passage, question).
inline std::optional<std::pair<std::string, std::string>>
split_fact_generation_prompt(std::string_view user_prompt) {
  if (!is_fact_generation_prompt(user_prompt)) return std::nullopt;
  constexpr std::string_view passage_marker = "\n\nPassage: ";
  constexpr std::string_view question_marker = "\n\nQuestion: ";
  auto passage_pos = user_prompt.find(passage_marker);
  auto question_pos = user_prompt.rfind(question_marker);
  if (passage_pos == std::string_view::npos ||
      question_pos == std::string_view::npos || question_pos <= passage_pos) {
    return std::nullopt;
  }
  auto passage_begin = passage_pos + passage_marker.size();
  return std::make_pair(
      std::string(user_prompt.substr(passage_begin, question_pos - passage_begin)),
      std::string(user_prompt.substr(question_pos + question_marker.size())));
}

/// Splits a claim prompt back into (passage, claim).
inline std::optional<std::pair<std::string, std::string>> split_claim_prompt(
    std::string_view user_prompt) {
  constexpr std::string_view passage_marker = "Passage: ";
  constexpr std::string_view claim_marker =
      "\n\nConsidering the given passage, the claim ";
  constexpr std::string_view tail = " is True or False?";
  if (user_prompt.rfind(passage_marker, 0) != 0) return std::nullopt;
  auto claim_pos = user_prompt.find(claim_marker);
  if (claim_pos == std::string_view::npos) return std::nullopt;
  if (user_prompt.size() < tail.size() ||
      user_prompt.substr(user_prompt.size() - tail.size()) != tail) {
    return std::nullopt;
  }
  auto claim_begin = claim_pos + claim_marker.size();
  auto claim_end = user_prompt.size() - tail.size();
  if (claim_end < claim_begin) return std::nullopt;
  return std::make_pair(
      std::string(user_prompt.substr(passage_marker.size(),
                                     claim_pos - passage_marker.size())),
      std::string(user_prompt.substr(claim_begin, claim_end - claim_begin)));
}

/// Extracts the passage from a facts-as-a-function prompt.
inline std::optional<std::string> split_faaf_prompt(
    std::string_view user_prompt) {
  std::string marker(kFaafInstruction);
  marker += "\n\nPassage: ";
  if (user_prompt.rfind(marker, 0) != 0) return std::nullopt;
  return std::string(user_prompt.substr(marker.size()));
}

}  // namespace faaf::prompts
