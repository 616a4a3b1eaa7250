#include "apr/spdb.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "apr/errors.hpp"
#include "apr/text.hpp"

namespace apr {

using nlohmann::json;

namespace {

constexpr const char* kRequired[] = {"basic_definition", "context", "forces", "solution", "consequences",
                                     "known_applications"};

std::string record_locator(std::size_t index, const std::string& name) {
  std::string loc = "patterns[" + std::to_string(index) + "]";
  if (!name.empty()) {
    loc += " (" + name + ")";
  }
  return loc;
}

PatternRecord record_from_json(const json& j, std::size_t index, std::vector<FieldError>& errors) {
  PatternRecord r;
  if (!j.is_object()) {
    errors.push_back({record_locator(index, ""), "record is not an object"});
    return r;
  }
  auto text = [&](const char* key, std::string& dst) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
      return;
    }
    if (!it->is_string()) {
      errors.push_back({record_locator(index, r.pattern_name) + "." + key, "must be a string"});
      return;
    }
    dst = it->get<std::string>();
  };
  text("pattern_name", r.pattern_name);
  text("basic_definition", r.basic_definition);
  text("context", r.context);
  text("forces", r.forces);
  text("solution", r.solution);
  text("consequences", r.consequences);
  text("variants", r.variants);
  text("known_applications", r.known_applications);
  text("source", r.source);
  return r;
}

json record_to_json(const PatternRecord& r) {
  return json{{"pattern_name", r.pattern_name}, {"basic_definition", r.basic_definition},
              {"context", r.context},           {"forces", r.forces},
              {"solution", r.solution},         {"consequences", r.consequences},
              {"variants", r.variants},         {"known_applications", r.known_applications},
              {"source", r.source}};
}

}  // namespace

const char* to_string(PatternFeature feature) {
  switch (feature) {
    case PatternFeature::basic_definition: return "basic_definition";
    case PatternFeature::context: return "context";
    case PatternFeature::forces: return "forces";
    case PatternFeature::solution: return "solution";
    case PatternFeature::consequences: return "consequences";
    case PatternFeature::variants: return "variants";
    case PatternFeature::known_applications: return "known_applications";
  }
  return "unknown";
}

const std::string& PatternRecord::feature(PatternFeature f) const {
  switch (f) {
    case PatternFeature::basic_definition: return basic_definition;
    case PatternFeature::context: return context;
    case PatternFeature::forces: return forces;
    case PatternFeature::solution: return solution;
    case PatternFeature::consequences: return consequences;
    case PatternFeature::variants: return variants;
    case PatternFeature::known_applications: return known_applications;
  }
  return basic_definition;
}

PatternCatalog::PatternCatalog(std::vector<PatternRecord> records, std::string version)
    : records_(std::move(records)), version_(std::move(version)) {
  std::vector<FieldError> errors;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    const auto loc = record_locator(i, r.pattern_name);
    if (r.pattern_name.empty()) {
      errors.push_back({loc + ".pattern_name", "missing required field"});
    } else if (!seen.insert(r.pattern_name).second) {
      errors.push_back({loc + ".pattern_name", "duplicate pattern_name \"" + r.pattern_name + "\""});
    }
    const std::string* required[] = {&r.basic_definition, &r.context, &r.forces, &r.solution, &r.consequences,
                                     &r.known_applications};
    for (std::size_t k = 0; k < std::size(required); ++k) {
      if (required[k]->empty()) {
        errors.push_back({loc + "." + kRequired[k], "missing required field"});
      }
    }
  }
  if (!errors.empty()) {
    throw ValidationError(std::move(errors));
  }
  std::sort(records_.begin(), records_.end(),
            [](const PatternRecord& a, const PatternRecord& b) { return a.pattern_name < b.pattern_name; });
}

PatternCatalog parse_catalog(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::format, std::string("catalog parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  std::string version;
  const json* array = &doc;
  if (doc.is_object()) {
    if (const auto v = doc.find("version"); v != doc.end() && v->is_string()) {
      version = v->get<std::string>();
    }
    const auto p = doc.find("patterns");
    if (p == doc.end()) {
      throw Error(ErrorKind::format, "catalog object has no \"patterns\" array");
    }
    array = &*p;
  }
  if (!array->is_array()) {
    throw Error(ErrorKind::format, "catalog records must be an array");
  }
  std::vector<FieldError> errors;
  std::vector<PatternRecord> records;
  for (std::size_t i = 0; i < array->size(); ++i) {
    records.push_back(record_from_json((*array)[i], i, errors));
  }
  if (!errors.empty()) {
    throw ValidationError(std::move(errors));
  }
  return PatternCatalog(std::move(records), std::move(version));
}

PatternCatalog load_catalog(const std::filesystem::path& path) {
  return parse_catalog(read_text_file(path));
}

std::string serialize_catalog(const PatternCatalog& catalog) {
  json patterns = json::array();
  for (const auto& r : catalog) {
    patterns.push_back(record_to_json(r));
  }
  return json{{"version", catalog.version()}, {"patterns", patterns}}.dump(2) + "\n";
}

void save_catalog(const PatternCatalog& catalog, const std::filesystem::path& path) {
  write_text_file(path, serialize_catalog(catalog));
}

std::optional<PatternRecord> get_pattern(const PatternCatalog& catalog, std::string_view name) {
  const auto& recs = catalog.records();
  const auto it = std::lower_bound(recs.begin(), recs.end(), name,
                                   [](const PatternRecord& r, std::string_view n) { return r.pattern_name < n; });
  if (it != recs.end() && it->pattern_name == name) {
    return *it;
  }
  return std::nullopt;
}

}  // namespace apr
