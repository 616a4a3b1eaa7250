#pragma once

// Deterministic lexical entailment scorer: does text T support hypothesis H?
//
//   coverage = |set(H) & set(T)| / |set(H)|            (0 when H has no tokens)
//   editsim  = 1 - levenshtein(T, H) / max(|T|, |H|)   (over token sequences)
//   score    = alpha * coverage + (1 - alpha) * editsim (coverage_blend)

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apr/text.hpp"

namespace apr {

enum class EntailmentApproach { coverage_blend, edit_distance_only, coverage_only };

const char* to_string(EntailmentApproach approach);
EntailmentApproach parse_entailment_approach(std::string_view name);

struct EntailmentConfig {
  double alpha = 0.8;
  StopList stop_words;
  EntailmentApproach approach = EntailmentApproach::coverage_blend;

  /// Throws ValidationError when alpha is outside [0, 1].
  void validate() const;
};

/// Graded entailment in [0, 1].
struct EntailmentScore {
  double value = 0.0;

  friend bool operator==(EntailmentScore, EntailmentScore) = default;
};

/// Token-level edit distance (unit insert/delete/substitute), two-row DP.
std::size_t levenshtein(std::span<const std::string> a, std::span<const std::string> b);

double hypothesis_coverage(std::span<const std::string> text, std::span<const std::string> hypothesis);
double edit_similarity(std::span<const std::string> text, std::span<const std::string> hypothesis);

EntailmentScore text_entail(std::string_view text, std::string_view hypothesis, const EntailmentConfig& config);

/// Same as text_entail on already-tokenized inputs.
EntailmentScore token_entail(std::span<const std::string> text, std::span<const std::string> hypothesis,
                             const EntailmentConfig& config);

}  // namespace apr
