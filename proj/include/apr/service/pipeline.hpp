#pragma once

// End-to-end recommendation and the ground-truth evaluation harness.

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "apr/recommender.hpp"
#include "apr/sentiment.hpp"
#include "apr/service/config.hpp"

namespace apr::service {

struct Recommendation {
  std::size_t rank = 0;
  std::string pattern_name;
  double confidence = 0.0;
  SentimentLabel sentiment_label = SentimentLabel::neutral;
  long sentiment_score = 0;
  std::size_t evidence_count = 0;
};

struct RecommendationSet {
  std::vector<Recommendation> recommendations;
  ConfidenceTable trace;
  std::string software_type;        // taxonomy path
  std::string software_type_label;  // used in the sentiment query
  std::vector<std::string> dropped_nfrs;
  PipelineConfig config;
};

/// validate -> resolve NFR conflicts -> aggregate -> score -> rank -> sentiment.
///
/// Priorities for conflicting NFRs come from the items themselves, overridden
/// by `priorities`. Throws ValidationError, ResolutionRequiredError, or
/// Error(config) when the catalog or index is missing.
RecommendationSet recommend(const RequirementsSpec& spec, const KnowledgeBase& kb, const PipelineConfig& config,
                            const std::map<std::string, int>& priorities = {});

struct EvalCase {
  std::string name;
  std::string expected_pattern;
  RequirementsSpec spec;
};

struct CaseOutcome {
  std::string name;
  std::string expected_pattern;
  std::size_t found_rank = 0;  // 0 = miss
  std::vector<std::string> ranked;
  std::vector<SentimentLabel> labels;
};

struct EvalReport {
  std::size_t cases_total = 0;
  std::size_t valid_cases = 0;
  std::array<std::size_t, 4> rank_hits{};      // rank 1, 2, 3, miss
  std::array<std::size_t, 3> positive_by_rank{};
  std::array<std::size_t, 3> negative_by_rank{};
  std::vector<CaseOutcome> outcomes;
  std::vector<std::string> warnings;  // one per excluded case

  double top1_percent() const;
  double top3_percent() const;
};

/// Cases that fail validation or need NFR resolution are excluded from the
/// tallies and reported as warnings. Throws when `cases` is empty.
EvalReport evaluate(std::span<const EvalCase> cases, const KnowledgeBase& kb, const PipelineConfig& config);

/// Every *.json file in `dir`, sorted by file name.
std::vector<EvalCase> load_eval_cases(const std::filesystem::path& dir);

std::string format_recommendations_text(const RecommendationSet& set, bool with_trace);
std::string format_report_text(const EvalReport& report);

}  // namespace apr::service
