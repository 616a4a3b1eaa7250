#include "apr/recommender.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "apr/errors.hpp"

namespace apr {

const char* to_string(RequirementField field) {
  switch (field) {
    case RequirementField::dd: return "DD";
    case RequirementField::sd: return "SD";
    case RequirementField::obj: return "Obj";
    case RequirementField::postcon: return "PostCon";
    case RequirementField::cst: return "Cst";
    case RequirementField::precon: return "PreCon";
    case RequirementField::act: return "Act";
    case RequirementField::flo: return "Flo";
    case RequirementField::nfr: return "NFR";
  }
  return "?";
}

PatternFeature mapped_feature(RequirementField field) {
  for (const auto& [f, feature] : kFieldFeatureMapping) {
    if (f == field) {
      return feature;
    }
  }
  return PatternFeature::basic_definition;
}

const char* to_string(ScoreTerm term) {
  switch (term) {
    case ScoreTerm::dd_basic_definition: return "dd_basic_definition";
    case ScoreTerm::sd_known_applications: return "sd_known_applications";
    case ScoreTerm::nfr_forces: return "nfr_forces";
    case ScoreTerm::obj_forces: return "obj_forces";
    case ScoreTerm::act_solution: return "act_solution";
    case ScoreTerm::cst_forces: return "cst_forces";
    case ScoreTerm::precon_context: return "precon_context";
    case ScoreTerm::postcon_consequences: return "postcon_consequences";
    case ScoreTerm::flow_solution: return "flow_solution";
  }
  return "?";
}

AggregatedFields aggregate_fields(std::span<const UseCase> use_cases) {
  std::vector<const UseCase*> ordered;
  ordered.reserve(use_cases.size());
  for (const auto& uc : use_cases) {
    ordered.push_back(&uc);
  }
  std::stable_sort(ordered.begin(), ordered.end(), [](const UseCase* a, const UseCase* b) { return a->id < b->id; });

  AggregatedFields agg;
  std::set<std::pair<std::string, double>> seen[6];
  auto add = [&](WeightedTextSet& set, std::set<std::pair<std::string, double>>& dedupe, const std::string& text,
                 const UseCase& uc) {
    if (text.empty()) {
      return;
    }
    if (dedupe.emplace(text, uc.importance()).second) {
      set.push_back({text, uc.importance(), uc.id});
    }
  };
  for (const UseCase* uc : ordered) {
    add(agg.objectives, seen[0], uc->objective, *uc);
    add(agg.actors, seen[1], uc->actors, *uc);
    add(agg.constraints, seen[2], uc->constraints, *uc);
    add(agg.pre_conditions, seen[3], uc->pre_conditions, *uc);
    add(agg.post_conditions, seen[4], uc->post_conditions, *uc);
    add(agg.flows, seen[5], uc->normal_flow, *uc);
  }
  return agg;
}

double recog_entail(std::span<const WeightedText> tuples, std::string_view pattern_attr,
                    const EntailmentConfig& config) {
  double cv = 0.0;
  for (const auto& t : tuples) {
    cv += text_entail(t.text, pattern_attr, config).value * t.importance;
  }
  return cv;
}

namespace {

double importance_mass(std::span<const WeightedText> tuples) {
  double mass = 0.0;
  for (const auto& t : tuples) {
    mass += t.importance;
  }
  return mass;
}

double weighted_term(std::span<const WeightedText> tuples, const std::string& attr, const ScoringOptions& options) {
  double value = recog_entail(tuples, attr, options.entailment);
  if (options.normalize_by_importance_mass) {
    const double mass = importance_mass(tuples);
    value = mass > 0.0 ? value / mass : 0.0;
  }
  return value;
}

PatternScore score_one(const RequirementsSpec& spec, const AggregatedFields& fields, const PatternRecord& r,
                       const ScoringOptions& options) {
  const auto& cfg = options.entailment;
  PatternScore s;
  s.pattern_name = r.pattern_name;
  auto set = [&](ScoreTerm t, double v) { s.terms[static_cast<std::size_t>(t)] = v; };

  set(ScoreTerm::dd_basic_definition, text_entail(spec.detailed_description, r.basic_definition, cfg).value);
  set(ScoreTerm::sd_known_applications, text_entail(spec.short_description, r.known_applications, cfg).value);
  double nfr = 0.0;
  for (const auto& item : spec.nfrs) {
    nfr += text_entail(item.text(), r.forces, cfg).value;
  }
  set(ScoreTerm::nfr_forces, nfr);
  set(ScoreTerm::obj_forces, weighted_term(fields.objectives, r.forces, options));
  set(ScoreTerm::act_solution, weighted_term(fields.actors, r.solution, options));
  set(ScoreTerm::cst_forces, weighted_term(fields.constraints, r.forces, options));
  set(ScoreTerm::precon_context, weighted_term(fields.pre_conditions, r.context, options));
  set(ScoreTerm::postcon_consequences, weighted_term(fields.post_conditions, r.consequences, options));
  if (options.include_flow_term) {
    set(ScoreTerm::flow_solution, weighted_term(fields.flows, r.solution, options));
  }

  double total = 0.0;
  for (double v : s.terms) {
    total += v;
  }
  s.confidence = total;
  return s;
}

}  // namespace

const PatternScore* ConfidenceTable::find(std::string_view pattern_name) const {
  for (const auto& row : rows) {
    if (row.pattern_name == pattern_name) {
      return &row;
    }
  }
  return nullptr;
}

double ConfidenceTable::confidence(std::string_view pattern_name) const {
  const auto* row = find(pattern_name);
  if (row == nullptr) {
    throw Error(ErrorKind::validation, "no confidence for pattern \"" + std::string(pattern_name) + "\"");
  }
  return row->confidence;
}

ConfidenceTable score_patterns(const RequirementsSpec& spec, const AggregatedFields& fields,
                               const PatternCatalog& catalog, const ScoringOptions& options) {
  if (catalog.empty()) {
    throw Error(ErrorKind::config, "pattern catalog is empty");
  }
  options.entailment.validate();
  const auto& records = catalog.records();
  ConfidenceTable table;
  table.rows.resize(records.size());

  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(records.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      table.rows[i] = score_one(spec, fields, records[i], options);
    }
  } else {
    // Each pattern is scored independently with a fixed summation order, so
    // the split across threads cannot change any bit of the result.
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < records.size(); i += workers) {
          table.rows[i] = score_one(spec, fields, records[i], options);
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  return table;
}

std::vector<RankedPattern> rank_top(const ConfidenceTable& table, std::size_t top) {
  std::vector<const PatternScore*> order;
  for (const auto& row : table.rows) {
    order.push_back(&row);
  }
  std::sort(order.begin(), order.end(), [](const PatternScore* a, const PatternScore* b) {
    if (a->confidence != b->confidence) {
      return a->confidence > b->confidence;
    }
    return a->pattern_name < b->pattern_name;
  });
  std::vector<RankedPattern> out;
  for (std::size_t i = 0; i < std::min(top, order.size()); ++i) {
    out.push_back({i + 1, order[i]->pattern_name, order[i]->confidence});
  }
  return out;
}

}  // namespace apr
