#include "apr/service/json_io.hpp"

#include <functional>
#include <set>

#include "apr/errors.hpp"
#include "apr/text.hpp"

namespace apr::service {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key) == 0) {
      throw Error(ErrorKind::format, where + ": unknown key \"" + key + "\"");
    }
  }
}

std::string text_field(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    return {};
  }
  if (!it->is_string()) {
    throw Error(ErrorKind::format, where + "." + key + ": expected a string");
  }
  return it->get<std::string>();
}

UseCase use_case_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw Error(ErrorKind::format, where + ": expected an object");
  }
  reject_unknown(j,
                 {"id", "name", "objective", "actors", "pre_conditions", "post_conditions", "constraints",
                  "normal_flow", "importance_score"},
                 where);
  UseCase uc;
  uc.id = text_field(j, "id", where);
  uc.name = text_field(j, "name", where);
  uc.objective = text_field(j, "objective", where);
  uc.actors = text_field(j, "actors", where);
  uc.pre_conditions = text_field(j, "pre_conditions", where);
  uc.post_conditions = text_field(j, "post_conditions", where);
  uc.constraints = text_field(j, "constraints", where);
  uc.normal_flow = text_field(j, "normal_flow", where);
  if (const auto it = j.find("importance_score"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) {
      throw Error(ErrorKind::format, where + ".importance_score: expected a number");
    }
    uc.importance_score = it->get<double>();
  }
  return uc;
}

NfrItem nfr_from_json(const json& j, const std::string& where) {
  NfrItem item;
  if (j.is_string()) {
    item.name = j.get<std::string>();
    return item;
  }
  if (!j.is_object()) {
    throw Error(ErrorKind::format, where + ": expected a string or an object");
  }
  reject_unknown(j, {"name", "priority", "free_text"}, where);
  item.name = text_field(j, "name", where);
  item.free_text = text_field(j, "free_text", where);
  if (const auto it = j.find("priority"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) {
      throw Error(ErrorKind::format, where + ".priority: expected an integer");
    }
    item.priority = it->get<int>();
  }
  return item;
}

}  // namespace

RequirementsSpec spec_from_json(const json& j) {
  if (!j.is_object()) {
    throw Error(ErrorKind::format, "spec: expected a JSON object");
  }
  reject_unknown(j, {"short_description", "detailed_description", "use_cases", "nfrs", "software_type"}, "spec");
  RequirementsSpec spec;
  spec.short_description = text_field(j, "short_description", "spec");
  spec.detailed_description = text_field(j, "detailed_description", "spec");
  spec.software_type = text_field(j, "software_type", "spec");
  if (const auto it = j.find("use_cases"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) {
      throw Error(ErrorKind::format, "spec.use_cases: expected an array");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      spec.use_cases.push_back(use_case_from_json((*it)[i], "spec.use_cases[" + std::to_string(i) + "]"));
    }
  }
  if (const auto it = j.find("nfrs"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) {
      throw Error(ErrorKind::format, "spec.nfrs: expected an array");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      spec.nfrs.push_back(nfr_from_json((*it)[i], "spec.nfrs[" + std::to_string(i) + "]"));
    }
  }
  return spec;
}

json spec_to_json(const RequirementsSpec& spec) {
  json use_cases = json::array();
  for (const auto& uc : spec.use_cases) {
    json u{{"id", uc.id},
           {"name", uc.name},
           {"objective", uc.objective},
           {"actors", uc.actors},
           {"pre_conditions", uc.pre_conditions},
           {"post_conditions", uc.post_conditions},
           {"constraints", uc.constraints},
           {"normal_flow", uc.normal_flow}};
    u["importance_score"] = uc.importance_score ? json(*uc.importance_score) : json(nullptr);
    use_cases.push_back(std::move(u));
  }
  json nfrs = json::array();
  for (const auto& n : spec.nfrs) {
    json item{{"name", n.name}, {"free_text", n.free_text}};
    item["priority"] = n.priority ? json(*n.priority) : json(nullptr);
    nfrs.push_back(std::move(item));
  }
  return json{{"short_description", spec.short_description},
              {"detailed_description", spec.detailed_description},
              {"use_cases", use_cases},
              {"nfrs", nfrs},
              {"software_type", spec.software_type}};
}

RequirementsSpec parse_spec(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::format, std::string("spec is not valid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

RequirementsSpec load_spec(const std::filesystem::path& path) { return parse_spec(read_text_file(path)); }

EvalCase eval_case_from_json(const json& j) {
  if (!j.is_object()) {
    throw Error(ErrorKind::format, "eval case: expected a JSON object");
  }
  reject_unknown(j, {"name", "expected_pattern", "spec", "notes"}, "eval case");
  EvalCase c;
  c.name = text_field(j, "name", "eval case");
  c.expected_pattern = text_field(j, "expected_pattern", "eval case");
  if (c.expected_pattern.empty()) {
    throw Error(ErrorKind::format, "eval case \"" + c.name + "\" has no expected_pattern");
  }
  if (!j.contains("spec")) {
    throw Error(ErrorKind::format, "eval case \"" + c.name + "\" has no spec");
  }
  c.spec = spec_from_json(j["spec"]);
  return c;
}

json trace_to_json(const ConfidenceTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json terms = json::object();
    for (std::size_t t = 0; t < kScoreTermCount; ++t) {
      terms[to_string(static_cast<ScoreTerm>(t))] = row.terms[t];
    }
    rows.push_back(json{{"pattern_name", row.pattern_name}, {"terms", terms}, {"total", row.confidence}});
  }
  return rows;
}

json recommendation_set_to_json(const RecommendationSet& set) {
  json recs = json::array();
  for (const auto& r : set.recommendations) {
    recs.push_back(json{{"rank", r.rank},
                        {"pattern_name", r.pattern_name},
                        {"confidence", r.confidence},
                        {"sentiment_label", to_string(r.sentiment_label)},
                        {"sentiment_score", r.sentiment_score},
                        {"evidence_count", r.evidence_count}});
  }
  return json{{"recommendations", recs},
              {"trace", trace_to_json(set.trace)},
              {"software_type", set.software_type},
              {"software_type_label", set.software_type_label},
              {"dropped_nfrs", set.dropped_nfrs},
              {"config", config_to_json(set.config)}};
}

json report_to_json(const EvalReport& report) {
  json rows = json::array();
  const char* names[] = {"1", "2", "3"};
  for (std::size_t r = 0; r < 3; ++r) {
    rows.push_back(json{{"rank", names[r]},
                        {"expected_output", report.rank_hits[r]},
                        {"positive_sentiment", report.positive_by_rank[r]},
                        {"negative_sentiment", report.negative_by_rank[r]}});
  }
  json outcomes = json::array();
  for (const auto& o : report.outcomes) {
    json labels = json::array();
    for (auto l : o.labels) {
      labels.push_back(to_string(l));
    }
    outcomes.push_back(json{{"name", o.name},
                            {"expected_pattern", o.expected_pattern},
                            {"found_rank", o.found_rank},
                            {"ranked", o.ranked},
                            {"sentiment", labels}});
  }
  return json{{"cases_total", report.cases_total},
              {"valid_cases", report.valid_cases},
              {"ranks", rows},
              {"misses", report.rank_hits[3]},
              {"top1_percent", report.top1_percent()},
              {"top3_percent", report.top3_percent()},
              {"outcomes", outcomes},
              {"warnings", report.warnings}};
}

json taxonomy_to_json(const Taxonomy& taxonomy) {
  std::function<json(std::size_t)> node = [&](std::size_t i) {
    const auto& n = taxonomy.nodes()[i];
    json children = json::array();
    for (auto c : n.children) {
      children.push_back(node(c));
    }
    return json{{"path", n.path}, {"label", n.label}, {"children", children}};
  };
  return node(0);
}

json field_errors_to_json(const std::vector<FieldError>& errors) {
  json out = json::array();
  for (const auto& e : errors) {
    out.push_back(json{{"field", e.field}, {"message", e.message}});
  }
  return out;
}

std::string dump_machine(const json& j) { return j.dump(2) + "\n"; }

}  // namespace apr::service
