#include "apr/input_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <json.hpp>

#include "apr/text.hpp"

namespace apr {

using nlohmann::json;

std::string NfrItem::text() const {
  if (free_text.empty()) {
    return name;
  }
  return name + " " + free_text;
}

// --- Taxonomy ---------------------------------------------------------------

Taxonomy Taxonomy::parse(std::string_view document) {
  const auto doc = json::parse(document, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::format, "taxonomy document is not a JSON object");
  }
  Taxonomy tax;
  tax.version_ = doc.value("version", std::string{});
  tax.nodes_.push_back({std::string(kRootPath), doc.value("label", std::string("Software")), std::nullopt, {}});

  std::function<void(const json&, std::size_t, int)> add_children = [&](const json& parent_json, std::size_t parent,
                                                                         int depth) {
    if (depth > 16) {
      throw Error(ErrorKind::format, "taxonomy is nested too deeply");
    }
    const auto it = parent_json.find("children");
    if (it == parent_json.end()) {
      return;
    }
    if (!it->is_array()) {
      throw Error(ErrorKind::format, "taxonomy children must be an array");
    }
    for (const auto& child : *it) {
      if (!child.is_object() || !child.contains("id") || !child["id"].is_string()) {
        throw Error(ErrorKind::format, "taxonomy node needs a string \"id\"");
      }
      const auto id = child["id"].get<std::string>();
      if (id.empty() || id.find('/') != std::string::npos) {
        throw Error(ErrorKind::format, "taxonomy id \"" + id + "\" must be non-empty and contain no '/'");
      }
      const auto& parent_path = tax.nodes_[parent].path;
      std::string path = parent == 0 ? id : parent_path + "/" + id;
      if (tax.find(path) != nullptr) {
        throw Error(ErrorKind::validation, "duplicate taxonomy path \"" + path + "\"");
      }
      const std::size_t index = tax.nodes_.size();
      tax.nodes_.push_back({std::move(path), child.value("label", id), parent, {}});
      tax.nodes_[parent].children.push_back(index);
      add_children(child, index, depth + 1);
    }
  };
  add_children(doc, 0, 0);
  return tax;
}

Taxonomy Taxonomy::load(const std::filesystem::path& path) { return parse(read_text_file(path)); }

const Taxonomy::Node* Taxonomy::find(std::string_view path) const {
  for (const auto& n : nodes_) {
    if (n.path == path) {
      return &n;
    }
  }
  return nullptr;
}

const Taxonomy::Node& Taxonomy::resolve(std::string_view path) const {
  if (path.empty()) {
    throw Error(ErrorKind::taxonomy, "software type path is empty");
  }
  if (const auto* n = find(path)) {
    return *n;
  }
  throw Error(ErrorKind::taxonomy, "unknown software type \"" + std::string(path) + "\"");
}

std::vector<const Taxonomy::Node*> Taxonomy::leaves() const {
  std::vector<const Node*> out;
  for (const auto& n : nodes_) {
    if (n.children.empty() && n.parent.has_value()) {
      out.push_back(&n);
    }
  }
  return out;
}

// --- Conflict matrix ----------------------------------------------------------

namespace {

NfrPair ordered(std::string a, std::string b) {
  if (b < a) {
    std::swap(a, b);
  }
  return {std::move(a), std::move(b)};
}

}  // namespace

ConflictMatrix::ConflictMatrix(std::set<std::string> labels, std::vector<NfrPair> conflicting)
    : labels_(std::move(labels)) {
  for (auto& [a, b] : conflicting) {
    if (!knows(a) || !knows(b)) {
      throw Error(ErrorKind::validation, "conflict pair (" + a + ", " + b + ") uses an unknown label");
    }
    if (a == b) {
      throw Error(ErrorKind::validation, "NFR \"" + a + "\" cannot conflict with itself");
    }
    conflicting_.insert(ordered(a, b));
  }
}

ConflictMatrix ConflictMatrix::parse(std::string_view document) {
  const auto doc = json::parse(document, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::format, "conflict matrix is not a JSON object");
  }
  try {
    const auto labels = doc.at("labels").get<std::vector<std::string>>();
    std::vector<NfrPair> pairs;
    for (const auto& p : doc.value("conflicting", json::array())) {
      const auto v = p.get<std::vector<std::string>>();
      if (v.size() != 2) {
        throw Error(ErrorKind::format, "conflict entries must be pairs");
      }
      pairs.emplace_back(v[0], v[1]);
    }
    return ConflictMatrix(std::set<std::string>(labels.begin(), labels.end()), std::move(pairs));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, std::string("bad conflict matrix: ") + e.what());
  }
}

ConflictMatrix ConflictMatrix::load(const std::filesystem::path& path) { return parse(read_text_file(path)); }

bool ConflictMatrix::knows(std::string_view label) const { return labels_.count(std::string(label)) > 0; }

bool ConflictMatrix::conflicts(std::string_view a, std::string_view b) const {
  return conflicting_.count(ordered(std::string(a), std::string(b))) > 0;
}

// --- Validation ---------------------------------------------------------------

std::vector<FieldError> check_spec(const RequirementsSpec& spec, const Taxonomy& taxonomy) {
  std::vector<FieldError> errors;
  if (word_count(spec.short_description) > kMaxShortDescriptionWords) {
    errors.push_back({"short_description", "short_description exceeds 25 words"});
  }
  if (word_count(spec.detailed_description) > kMaxDetailedDescriptionWords) {
    errors.push_back({"detailed_description", "detailed_description exceeds 500 words"});
  }
  const auto n = spec.use_cases.size();
  if (n < kMinUseCases || n > kMaxUseCases) {
    errors.push_back({"use_cases", "expected 1-20 use cases, got " + std::to_string(n)});
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& uc = spec.use_cases[i];
    const auto loc = "use_cases[" + std::to_string(i) + "]";
    if (uc.id.empty()) {
      errors.push_back({loc + ".id", "missing use case id"});
    } else if (!ids.insert(uc.id).second) {
      errors.push_back({loc + ".id", "duplicate use case id \"" + uc.id + "\""});
    }
    if (uc.objective.empty()) {
      errors.push_back({loc + ".objective", "objective must not be empty"});
    }
    if (uc.importance_score) {
      const double is = *uc.importance_score;
      if (!(is >= 0.0 && is <= 1.0)) {
        errors.push_back({loc + ".importance_score", "importance_score must lie between 0 and 1"});
      }
    }
  }
  std::set<std::string> nfr_names;
  for (std::size_t i = 0; i < spec.nfrs.size(); ++i) {
    const auto& nfr = spec.nfrs[i];
    const auto loc = "nfrs[" + std::to_string(i) + "]";
    if (nfr.name.empty()) {
      errors.push_back({loc + ".name", "missing NFR name"});
    } else if (!nfr_names.insert(nfr.name).second) {
      errors.push_back({loc + ".name", "duplicate NFR \"" + nfr.name + "\""});
    }
  }
  if (spec.software_type.empty()) {
    errors.push_back({"software_type", "software type is required"});
  } else if (taxonomy.find(spec.software_type) == nullptr) {
    errors.push_back({"software_type", "unknown software type \"" + spec.software_type + "\""});
  }
  return errors;
}

RequirementsSpec validate_spec(RequirementsSpec spec, const Taxonomy& taxonomy) {
  auto errors = check_spec(spec, taxonomy);
  if (!errors.empty()) {
    throw ValidationError(std::move(errors));
  }
  for (auto& uc : spec.use_cases) {
    uc.importance_score = uc.importance();
  }
  return spec;
}

// --- NFR conflicts ------------------------------------------------------------

std::vector<NfrPair> check_nfr_conflicts(std::span<const NfrItem> nfrs, const ConflictMatrix& matrix) {
  for (const auto& n : nfrs) {
    if (!matrix.knows(n.name)) {
      throw Error(ErrorKind::vocabulary, "unknown NFR \"" + n.name + "\"");
    }
  }
  std::vector<NfrPair> pairs;
  for (std::size_t i = 0; i < nfrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nfrs.size(); ++j) {
      if (nfrs[i].name != nfrs[j].name && matrix.conflicts(nfrs[i].name, nfrs[j].name)) {
        pairs.emplace_back(nfrs[i].name, nfrs[j].name);
      }
    }
  }
  return pairs;
}

std::map<std::string, int> item_priorities(std::span<const NfrItem> nfrs) {
  std::map<std::string, int> out;
  for (const auto& n : nfrs) {
    if (n.priority) {
      out[n.name] = *n.priority;
    }
  }
  return out;
}

std::vector<NfrItem> resolve_nfr_conflicts(std::vector<NfrItem> nfrs, std::span<const NfrPair> conflicts,
                                           const std::map<std::string, int>& priorities) {
  std::vector<NfrPair> unresolved;
  std::vector<FieldError> ties;
  std::set<std::string> removed;
  for (const auto& [a, b] : conflicts) {
    const auto pa = priorities.find(a);
    const auto pb = priorities.find(b);
    if (pa == priorities.end() || pb == priorities.end()) {
      unresolved.emplace_back(a, b);
      continue;
    }
    if (pa->second == pb->second) {
      ties.push_back({"nfrs", "NFRs \"" + a + "\" and \"" + b + "\" conflict and share priority " +
                                  std::to_string(pa->second)});
      continue;
    }
    removed.insert(pa->second < pb->second ? b : a);
  }
  if (!unresolved.empty()) {
    throw ResolutionRequiredError(std::move(unresolved));
  }
  if (!ties.empty()) {
    throw ValidationError(std::move(ties));
  }
  std::erase_if(nfrs, [&](const NfrItem& n) { return removed.count(n.name) > 0; });
  return nfrs;
}

}  // namespace apr
