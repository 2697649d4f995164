#pragma once

// Core domain types shared by every other faaf header: fact statements,
// verdicts, formulation configuration, answer variants and QA records.
// All types are immutable value types once validated and safe to share
// across threads.

#include <cstddef>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace faaf {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  InvalidConfig,
  EmptyFactSet,
  DuplicateIndex,
  UnsupportedDialect,
  ParseError,
  ValidationError,
  TransportError,
  AuthError,
  BudgetExceeded,
  SchemaVersionMismatch,
  NoAnsweredFacts,
  MissingAnnotations,
  GenerationEmpty,
  IoError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyFactSet: return "EmptyFactSet";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::UnsupportedDialect: return "UnsupportedDialect";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::AuthError: return "AuthError";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::NoAnsweredFacts: return "NoAnsweredFacts";
    case ErrorCode::MissingAnnotations: return "MissingAnnotations";
    case ErrorCode::GenerationEmpty: return "GenerationEmpty";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a source location (line for line-delimited formats,
/// byte offset for single-document formats; 0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0,
             std::size_t byte_offset = 0)
      : Error(ErrorCode::ParseError, message),
        line_(line),
        byte_offset_(byte_offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t line_;
  std::size_t byte_offset_;
};

// ---------------------------------------------------------------------------
// Warning sink
// ---------------------------------------------------------------------------

using WarnHandler = std::function<void(std::string_view)>;

inline WarnHandler& warn_handler() {
  static WarnHandler handler = [](std::string_view msg) {
    std::cerr << "[faaf] warning: " << msg << "\n";
  };
  return handler;
}

inline void set_warn_handler(WarnHandler handler) {
  warn_handler() = std::move(handler);
}

inline void warn(std::string_view msg) {
  if (warn_handler()) warn_handler()(msg);
}

// ---------------------------------------------------------------------------
// Small string helpers used across the library
// ---------------------------------------------------------------------------

inline std::string trim(std::string_view text) {
  const char* ws = " \t\r\n";
  auto begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  auto end = text.find_last_not_of(ws);
  return std::string(text.substr(begin, end - begin + 1));
}

inline bool replace_first(std::string& text, std::string_view needle,
                          std::string_view replacement) {
  auto pos = text.find(needle);
  if (pos == std::string::npos) return false;
  text.replace(pos, needle.size(), replacement);
  return true;
}

inline std::size_t count_occurrences(std::string_view text,
                                     std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

/// Outcome of verifying one fact. NotClear can only be produced by
/// formulations whose response domain includes the "not clear" option and
/// is normally mapped to False after invocation. NotAnswered never comes
/// from a validated model value; it marks a format failure (or a failed
/// call) on the single permitted attempt.
enum class Verdict { True, False, NotClear, NotAnswered };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "True";
    case Verdict::False: return "False";
    case Verdict::NotClear: return "NotClear";
    case Verdict::NotAnswered: return "NotAnswered";
  }
  return "NotAnswered";
}

inline std::optional<Verdict> verdict_from_string(std::string_view s) {
  if (s == "True") return Verdict::True;
  if (s == "False") return Verdict::False;
  if (s == "NotClear") return Verdict::NotClear;
  if (s == "NotAnswered") return Verdict::NotAnswered;
  return std::nullopt;
}

/// Post-generation mapping applied to verdicts after invocation.
enum class NotClearMapping { ToFalse, Keep };

/// Idempotent: applying twice equals applying once.
inline Verdict apply_mapping(Verdict v, NotClearMapping mapping) {
  if (v == Verdict::NotClear && mapping == NotClearMapping::ToFalse) {
    return Verdict::False;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Fact statements
// ---------------------------------------------------------------------------

/// One declarative sentence to be verified. The index is the statement's
/// position within its fact set and is the single join key between function
/// arguments, parsed results and gold labels.
struct FactStatement {
  int index = 0;
  std::string text;
};

/// Throws ValidationError unless texts are non-empty after trimming and
/// indices run 0..n-1 without gaps or duplicates.
inline void validate_fact_set(const std::vector<FactStatement>& facts) {
  std::vector<bool> seen(facts.size(), false);
  for (const auto& fact : facts) {
    if (trim(fact.text).empty()) {
      throw Error(ErrorCode::ValidationError,
                  "fact " + std::to_string(fact.index) + " has empty text");
    }
    if (fact.index < 0 || static_cast<std::size_t>(fact.index) >= facts.size()) {
      throw Error(ErrorCode::ValidationError,
                  "fact index " + std::to_string(fact.index) +
                      " out of range for set of " +
                      std::to_string(facts.size()));
    }
    if (seen[static_cast<std::size_t>(fact.index)]) {
      throw Error(ErrorCode::DuplicateIndex,
                  "duplicate fact index " + std::to_string(fact.index));
    }
    seen[static_cast<std::size_t>(fact.index)] = true;
  }
}

// ---------------------------------------------------------------------------
// Formulation configuration
// ---------------------------------------------------------------------------

/// Accepted verdict values for a formulation: True/False, or
/// True/False/"not clear".
enum class ResponseDomain { TF, TFN };

constexpr std::string_view kDefaultNotClearLabel =
    "Not clear from the given passage";
constexpr std::string_view kDefaultDescriptionTemplate =
    "It is clear from the passage that {fact}";
constexpr std::string_view kDefaultFunctionTitle = "FactChecker";

/// Control parameters injected into the constructed function object:
/// response domain, citation mode, per-argument instruction template and
/// the post-generation verdict mapping.
struct FormulationConfig {
  ResponseDomain response_domain = ResponseDomain::TF;
  bool with_citation = false;
  std::string description_template = std::string(kDefaultDescriptionTemplate);
  std::string not_clear_label = std::string(kDefaultNotClearLabel);
  NotClearMapping mapping = NotClearMapping::ToFalse;
  std::string function_title = std::string(kDefaultFunctionTitle);

  void validate() const {
    if (count_occurrences(description_template, "{fact}") != 1) {
      throw Error(ErrorCode::InvalidConfig,
                  "description_template must contain exactly one {fact} "
                  "placeholder");
    }
    if (response_domain == ResponseDomain::TFN &&
        trim(not_clear_label).empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "not_clear_label must be non-empty for a T/F/N domain");
    }
    if (trim(function_title).empty()) {
      throw Error(ErrorCode::InvalidConfig, "function_title must be non-empty");
    }
  }
};

// ---------------------------------------------------------------------------
// Answer variants and QA records
// ---------------------------------------------------------------------------

/// The three answer qualities shipped per question: context-grounded,
/// generated without context, and deliberately incomplete.
enum class VariantKind { GroundTruth, Ungrounded, Poor };

constexpr VariantKind kAllVariants[] = {VariantKind::GroundTruth,
                                        VariantKind::Ungrounded,
                                        VariantKind::Poor};

inline std::string_view to_string(VariantKind kind) {
  switch (kind) {
    case VariantKind::GroundTruth: return "ground_truth";
    case VariantKind::Ungrounded: return "ungrounded";
    case VariantKind::Poor: return "poor";
  }
  return "ground_truth";
}

inline std::optional<VariantKind> variant_from_string(std::string_view s) {
  if (s == "ground_truth") return VariantKind::GroundTruth;
  if (s == "ungrounded") return VariantKind::Ungrounded;
  if (s == "poor") return VariantKind::Poor;
  return std::nullopt;
}

struct AnswerVariant {
  VariantKind kind = VariantKind::GroundTruth;
  std::string text;
};

/// One question with its three answer variants, the facts derived from the
/// ground-truth answer, and binary gold labels per (variant, fact index).
/// Human annotation is binary by construction; there is no "not assessable"
/// gold value.
struct QARecord {
  std::string id;
  std::string question;
  std::map<VariantKind, std::string> answers;
  std::vector<FactStatement> facts;
  std::map<VariantKind, std::map<int, bool>> gold_labels;

  const std::string& answer(VariantKind kind) const {
    auto it = answers.find(kind);
    if (it == answers.end()) {
      throw Error(ErrorCode::ValidationError,
                  "record '" + id + "' has no " + std::string(to_string(kind)) +
                      " answer");
    }
    return it->second;
  }

  std::optional<bool> gold_label(VariantKind kind, int fact_index) const {
    auto vit = gold_labels.find(kind);
    if (vit == gold_labels.end()) return std::nullopt;
    auto fit = vit->second.find(fact_index);
    if (fit == vit->second.end()) return std::nullopt;
    return fit->second;
  }

  /// Structural validation. With `require_complete_annotations` every fact
  /// must carry a gold label for every annotated variant; records that have
  /// facts but no annotations yet (fresh fact generation) pass only in
  /// relaxed mode.
  void validate(bool require_complete_annotations = true) const {
    if (trim(id).empty()) {
      throw Error(ErrorCode::ValidationError, "record with empty id");
    }
    validate_fact_set(facts);
    for (VariantKind kind : kAllVariants) {
      if (!answers.count(kind) || trim(answers.at(kind)).empty()) {
        throw Error(ErrorCode::ValidationError,
                    "record '" + id + "' is missing the " +
                        std::string(to_string(kind)) + " answer");
      }
    }
    for (const auto& [kind, labels] : gold_labels) {
      for (const auto& [fact_index, label] : labels) {
        if (fact_index < 0 ||
            static_cast<std::size_t>(fact_index) >= facts.size()) {
          throw Error(ErrorCode::ValidationError,
                      "record '" + id + "' annotates unknown fact index " +
                          std::to_string(fact_index));
        }
        if (kind == VariantKind::GroundTruth && !label) {
          throw Error(ErrorCode::ValidationError,
                      "record '" + id +
                          "' has a False ground-truth gold label; facts are "
                          "derived from the ground-truth answer and must all "
                          "be True for it");
        }
      }
    }
    if (require_complete_annotations && !facts.empty()) {
      for (VariantKind kind : kAllVariants) {
        auto vit = gold_labels.find(kind);
        if (vit == gold_labels.end() || vit->second.size() != facts.size()) {
          throw Error(ErrorCode::ValidationError,
                      "record '" + id + "' has incomplete " +
                          std::string(to_string(kind)) + " annotations");
        }
      }
    }
  }
};

}  // namespace faaf
