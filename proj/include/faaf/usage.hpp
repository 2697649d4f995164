#pragma once

#include <cstdint>

namespace faaf {

/// Per-call accounting attached to every model response. `call_count` is 1
/// for a fresh upstream call and 0 when the response was served from the
/// on-disk cache, so summing records over a run yields the number of
/// upstream calls actually made.
struct UsageRecord {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::int64_t latency_ms = 0;
  std::int64_t call_count = 0;

  std::int64_t total_tokens() const {
    return prompt_tokens + completion_tokens;
  }

  UsageRecord& operator+=(const UsageRecord& other) {
    prompt_tokens += other.prompt_tokens;
    completion_tokens += other.completion_tokens;
    latency_ms += other.latency_ms;
    call_count += other.call_count;
    return *this;
  }
};

}  // namespace faaf
