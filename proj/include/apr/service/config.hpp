#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "apr/ekdb/lsi_index.hpp"
#include "apr/entailment.hpp"
#include "apr/input_model.hpp"
#include "apr/recommender.hpp"
#include "apr/sentiment.hpp"
#include "apr/spdb.hpp"

namespace apr::service {

/// Every tunable of the pipeline. A copy travels with each
/// RecommendationSet so a run can be reproduced.
struct PipelineConfig {
  double alpha = 0.8;
  EntailmentApproach approach = EntailmentApproach::coverage_blend;
  bool include_flow_term = false;
  bool normalize_by_importance_mass = false;
  std::size_t rank_k = 100;
  std::size_t max_results = 50;
  double min_similarity = 0.2;
  bool require_pattern_mention = true;
  std::set<std::string> tag_filter = {"software-architecture", "architecture",      "design-patterns",
                                      "model-view-controller", "microkernel",       "pipes-and-filters",
                                      "layered-architecture",  "broker"};
  BucketThresholds thresholds;
  std::size_t top_n = 3;
  unsigned threads = 1;

  /// Throws ValidationError on out-of-range values.
  void validate() const;

  ScoringOptions scoring(const StopList& stop_words) const;
  RetrievalOptions retrieval() const;
  ekdb::IndexOptions indexing() const;
};

/// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PipelineConfig& config);
PipelineConfig load_config(const std::filesystem::path& path);

/// Locations of the bundled data files.
struct DataPaths {
  std::filesystem::path catalog;
  std::filesystem::path stop_words;
  std::vector<std::filesystem::path> lexicon;
  std::filesystem::path taxonomy;
  std::filesystem::path conflicts;

  static DataPaths under(const std::filesystem::path& data_dir);
};

/// Catalog, index and the supporting data, immutable once loaded.
struct KnowledgeBase {
  PatternCatalog catalog;
  std::shared_ptr<const ekdb::LsiIndex> index;
  SentimentLexicon lexicon;
  Taxonomy taxonomy;
  ConflictMatrix conflicts;
  StopList stop_words;

  static KnowledgeBase load(const DataPaths& paths);
};

}  // namespace apr::service
