#include "apr/service/config.hpp"

#include "apr/errors.hpp"

namespace apr::service {

using nlohmann::json;

void PipelineConfig::validate() const {
  std::vector<FieldError> errors;
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    errors.push_back({"alpha", "must lie in [0, 1]"});
  }
  if (rank_k < 1) {
    errors.push_back({"rank_k", "must be >= 1"});
  }
  if (max_results < 1) {
    errors.push_back({"max_results", "must be >= 1"});
  }
  if (!(min_similarity >= -1.0 && min_similarity <= 1.0)) {
    errors.push_back({"min_similarity", "must lie in [-1, 1]"});
  }
  if (top_n < 1 || top_n > 3) {
    errors.push_back({"top_n", "must be 1, 2 or 3"});
  }
  if (tag_filter.empty()) {
    errors.push_back({"tag_filter", "must not be empty"});
  }
  try {
    thresholds.validate();
  } catch (const ValidationError& e) {
    errors.insert(errors.end(), e.errors().begin(), e.errors().end());
  }
  if (!errors.empty()) {
    throw ValidationError(std::move(errors));
  }
}

ScoringOptions PipelineConfig::scoring(const StopList& stop_words) const {
  ScoringOptions s;
  s.entailment.alpha = alpha;
  s.entailment.approach = approach;
  s.entailment.stop_words = stop_words;
  s.include_flow_term = include_flow_term;
  s.normalize_by_importance_mass = normalize_by_importance_mass;
  s.threads = threads;
  return s;
}

RetrievalOptions PipelineConfig::retrieval() const {
  RetrievalOptions r;
  r.query.max_results = max_results;
  r.query.min_similarity = min_similarity;
  r.require_pattern_mention = require_pattern_mention;
  return r;
}

ekdb::IndexOptions PipelineConfig::indexing() const {
  ekdb::IndexOptions o;
  o.rank_k = rank_k;
  return o;
}

PipelineConfig config_from_json(const json& j) {
  if (!j.is_object()) {
    throw Error(ErrorKind::format, "config must be a JSON object");
  }
  static const std::set<std::string> known = {
      "alpha",         "approach",        "include_flow_term",       "normalize_by_importance_mass",
      "rank_k",        "max_results",     "min_similarity",          "require_pattern_mention",
      "tag_filter",    "thresholds",      "top_n",                   "threads"};
  for (const auto& [key, value] : j.items()) {
    if (known.count(key) == 0) {
      throw Error(ErrorKind::config, "unknown config key \"" + key + "\"");
    }
  }
  PipelineConfig c;
  try {
    c.alpha = j.value("alpha", c.alpha);
    if (j.contains("approach")) {
      c.approach = parse_entailment_approach(j["approach"].get<std::string>());
    }
    c.include_flow_term = j.value("include_flow_term", c.include_flow_term);
    c.normalize_by_importance_mass = j.value("normalize_by_importance_mass", c.normalize_by_importance_mass);
    c.rank_k = j.value("rank_k", c.rank_k);
    c.max_results = j.value("max_results", c.max_results);
    c.min_similarity = j.value("min_similarity", c.min_similarity);
    c.require_pattern_mention = j.value("require_pattern_mention", c.require_pattern_mention);
    if (j.contains("tag_filter")) {
      c.tag_filter = j["tag_filter"].get<std::set<std::string>>();
    }
    c.top_n = j.value("top_n", c.top_n);
    c.threads = j.value("threads", c.threads);
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      auto& b = c.thresholds;
      b.strongly_positive_min = t.value("strongly_positive_min", b.strongly_positive_min);
      b.positive_min = t.value("positive_min", b.positive_min);
      b.slightly_positive_min = t.value("slightly_positive_min", b.slightly_positive_min);
      b.slightly_negative_max = t.value("slightly_negative_max", b.slightly_negative_max);
      b.negative_max = t.value("negative_max", b.negative_max);
      b.strongly_negative_max = t.value("strongly_negative_max", b.strongly_negative_max);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config, std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

json config_to_json(const PipelineConfig& c) {
  const auto& b = c.thresholds;
  return json{{"alpha", c.alpha},
              {"approach", to_string(c.approach)},
              {"include_flow_term", c.include_flow_term},
              {"normalize_by_importance_mass", c.normalize_by_importance_mass},
              {"rank_k", c.rank_k},
              {"max_results", c.max_results},
              {"min_similarity", c.min_similarity},
              {"require_pattern_mention", c.require_pattern_mention},
              {"tag_filter", c.tag_filter},
              {"thresholds",
               {{"strongly_positive_min", b.strongly_positive_min},
                {"positive_min", b.positive_min},
                {"slightly_positive_min", b.slightly_positive_min},
                {"slightly_negative_max", b.slightly_negative_max},
                {"negative_max", b.negative_max},
                {"strongly_negative_max", b.strongly_negative_max}}},
              {"top_n", c.top_n},
              {"threads", c.threads}};
}

PipelineConfig load_config(const std::filesystem::path& path) {
  const auto j = json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorKind::format, "config " + path.string() + " is not valid JSON");
  }
  return config_from_json(j);
}

DataPaths DataPaths::under(const std::filesystem::path& data_dir) {
  DataPaths p;
  p.catalog = data_dir / "catalog" / "posa_catalog.json";
  p.stop_words = data_dir / "stopwords.txt";
  p.lexicon = {data_dir / "lexicon" / "AFINN-111.txt", data_dir / "lexicon" / "domain-extension.txt"};
  p.taxonomy = data_dir / "taxonomy.json";
  p.conflicts = data_dir / "nfr_conflicts.json";
  return p;
}

KnowledgeBase KnowledgeBase::load(const DataPaths& paths) {
  KnowledgeBase kb;
  kb.catalog = load_catalog(paths.catalog);
  kb.stop_words = StopList::load(paths.stop_words);
  kb.lexicon = SentimentLexicon::load(paths.lexicon);
  kb.taxonomy = Taxonomy::load(paths.taxonomy);
  kb.conflicts = ConflictMatrix::load(paths.conflicts);
  return kb;
}

}  // namespace apr::service
