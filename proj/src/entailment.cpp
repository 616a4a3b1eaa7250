#include "apr/entailment.hpp"

#include <algorithm>
#include <unordered_set>

#include "apr/errors.hpp"

namespace apr {

const char* to_string(EntailmentApproach approach) {
  switch (approach) {
    case EntailmentApproach::coverage_blend: return "coverage_blend";
    case EntailmentApproach::edit_distance_only: return "edit_distance_only";
    case EntailmentApproach::coverage_only: return "coverage_only";
  }
  return "coverage_blend";
}

EntailmentApproach parse_entailment_approach(std::string_view name) {
  if (name == "coverage_blend") return EntailmentApproach::coverage_blend;
  if (name == "edit_distance_only") return EntailmentApproach::edit_distance_only;
  if (name == "coverage_only") return EntailmentApproach::coverage_only;
  throw Error(ErrorKind::config, "unknown entailment approach \"" + std::string(name) + "\"");
}

void EntailmentConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("entailment.alpha", "must lie in [0, 1]");
  }
}

std::size_t levenshtein(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() < b.size()) {
    std::swap(a, b);
  }
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> curr(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) {
    prev[j] = j;
  }
  for (std::size_t i = 1; i <= a.size(); ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t substitute = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, substitute});
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

double hypothesis_coverage(std::span<const std::string> text, std::span<const std::string> hypothesis) {
  const std::unordered_set<std::string_view> h(hypothesis.begin(), hypothesis.end());
  if (h.empty()) {
    return 0.0;
  }
  const std::unordered_set<std::string_view> t(text.begin(), text.end());
  std::size_t covered = 0;
  for (const auto& w : h) {
    covered += t.count(w);
  }
  return static_cast<double>(covered) / static_cast<double>(h.size());
}

double edit_similarity(std::span<const std::string> text, std::span<const std::string> hypothesis) {
  if (text.empty() && hypothesis.empty()) {
    return 1.0;
  }
  if (text.empty() || hypothesis.empty()) {
    return 0.0;
  }
  const auto longest = std::max(text.size(), hypothesis.size());
  return 1.0 - static_cast<double>(levenshtein(text, hypothesis)) / static_cast<double>(longest);
}

EntailmentScore token_entail(std::span<const std::string> text, std::span<const std::string> hypothesis,
                             const EntailmentConfig& config) {
  config.validate();
  double value = 0.0;
  switch (config.approach) {
    case EntailmentApproach::coverage_only:
      value = hypothesis_coverage(text, hypothesis);
      break;
    case EntailmentApproach::edit_distance_only:
      value = edit_similarity(text, hypothesis);
      break;
    case EntailmentApproach::coverage_blend: {
      // alpha * c + (1 - alpha) * e, arranged so c == e returns e exactly
      const double c = hypothesis_coverage(text, hypothesis);
      const double e = edit_similarity(text, hypothesis);
      value = e + config.alpha * (c - e);
      break;
    }
  }
  return {std::clamp(value, 0.0, 1.0)};
}

EntailmentScore text_entail(std::string_view text, std::string_view hypothesis, const EntailmentConfig& config) {
  const auto t = tokenize(text, config.stop_words);
  const auto h = tokenize(hypothesis, config.stop_words);
  return token_entail(t, h, config);
}

}  // namespace apr
