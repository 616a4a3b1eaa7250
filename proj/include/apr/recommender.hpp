#pragma once

// Requirement-to-pattern scoring.
//
// For every catalog record r the confidence is the sum, in this order, of
//   DD  -> basic definition      text_entail
//   SD  -> known applications    text_entail
//   NFR -> forces                sum of text_entail over NFR items
//   Obj -> forces                recog_entail
//   Act -> solution              recog_entail
//   Cst -> forces                recog_entail
//   PreCon  -> context           recog_entail
//   PostCon -> consequences      recog_entail
//   Flo -> solution              recog_entail, only with include_flow_term
// where recog_entail(tuples, attr) = sum of text_entail(t.text, attr) * t.importance.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apr/entailment.hpp"
#include "apr/input_model.hpp"
#include "apr/spdb.hpp"

namespace apr {

enum class RequirementField { dd, sd, obj, postcon, cst, precon, act, flo, nfr };

const char* to_string(RequirementField field);

/// Requirement field -> pattern feature association.
inline constexpr std::array<std::pair<RequirementField, PatternFeature>, 9> kFieldFeatureMapping{{
    {RequirementField::dd, PatternFeature::basic_definition},
    {RequirementField::sd, PatternFeature::known_applications},
    {RequirementField::obj, PatternFeature::forces},
    {RequirementField::postcon, PatternFeature::consequences},
    {RequirementField::cst, PatternFeature::forces},
    {RequirementField::precon, PatternFeature::context},
    {RequirementField::act, PatternFeature::solution},
    {RequirementField::flo, PatternFeature::solution},
    {RequirementField::nfr, PatternFeature::forces},
}};

PatternFeature mapped_feature(RequirementField field);

struct WeightedText {
  std::string text;
  double importance = 1.0;
  std::string source_id;  // originating use case

  bool operator==(const WeightedText&) const = default;
};

using WeightedTextSet = std::vector<WeightedText>;

/// Use-case fields grouped by kind, each tuple carrying its use case's
/// importance. Ordered by source use-case id; exact <text, importance>
/// duplicates are kept once.
struct AggregatedFields {
  WeightedTextSet objectives;
  WeightedTextSet actors;
  WeightedTextSet constraints;
  WeightedTextSet pre_conditions;
  WeightedTextSet post_conditions;
  WeightedTextSet flows;  // only consumed with include_flow_term

  bool operator==(const AggregatedFields&) const = default;
};

AggregatedFields aggregate_fields(std::span<const UseCase> use_cases);

double recog_entail(std::span<const WeightedText> tuples, std::string_view pattern_attr,
                    const EntailmentConfig& config);

/// Trace slots, in accumulation order.
enum class ScoreTerm : std::size_t {
  dd_basic_definition,
  sd_known_applications,
  nfr_forces,
  obj_forces,
  act_solution,
  cst_forces,
  precon_context,
  postcon_consequences,
  flow_solution,
};

inline constexpr std::size_t kScoreTermCount = 9;

const char* to_string(ScoreTerm term);

struct PatternScore {
  std::string pattern_name;
  std::array<double, kScoreTermCount> terms{};
  double confidence = 0.0;

  double term(ScoreTerm t) const { return terms[static_cast<std::size_t>(t)]; }
};

/// One row per catalog pattern, ordered by pattern_name.
struct ConfidenceTable {
  std::vector<PatternScore> rows;

  const PatternScore* find(std::string_view pattern_name) const;
  double confidence(std::string_view pattern_name) const;
  bool empty() const noexcept { return rows.empty(); }
  std::size_t size() const noexcept { return rows.size(); }
};

struct ScoringOptions {
  EntailmentConfig entailment;
  bool include_flow_term = false;
  /// Divide each recog_entail term by the importance mass of its tuple set.
  bool normalize_by_importance_mass = false;
  /// Worker threads for per-pattern scoring; results do not depend on it.
  unsigned threads = 1;
};

/// Throws Error(config) on an empty catalog.
ConfidenceTable score_patterns(const RequirementsSpec& spec, const AggregatedFields& fields,
                               const PatternCatalog& catalog, const ScoringOptions& options);

struct RankedPattern {
  std::size_t rank = 0;  // 1-based
  std::string pattern_name;
  double confidence = 0.0;
};

/// Confidence descending, ties by ascending pattern_name; first min(top, n).
std::vector<RankedPattern> rank_top(const ConfidenceTable& table, std::size_t top = 3);

inline std::vector<RankedPattern> rank_top3(const ConfidenceTable& table) { return rank_top(table, 3); }

}  // namespace apr
