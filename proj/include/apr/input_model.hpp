#pragma once

// User input template: descriptions, use cases, NFRs and the software type.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apr/errors.hpp"

namespace apr {

inline constexpr std::size_t kMaxShortDescriptionWords = 25;
inline constexpr std::size_t kMaxDetailedDescriptionWords = 500;
inline constexpr std::size_t kMinUseCases = 1;
inline constexpr std::size_t kMaxUseCases = 20;
inline constexpr double kDefaultImportance = 1.0;

struct UseCase {
  std::string id;
  std::string name;
  std::string objective;
  std::string actors;
  std::string pre_conditions;
  std::string post_conditions;
  std::string constraints;
  std::string normal_flow;
  std::optional<double> importance_score;

  double importance() const { return importance_score.value_or(kDefaultImportance); }

  bool operator==(const UseCase&) const = default;
};

struct NfrItem {
  std::string name;
  std::optional<int> priority;  // smaller = more important
  std::string free_text;

  /// Text handed to the entailment scorer: label plus elaboration.
  std::string text() const;

  bool operator==(const NfrItem&) const = default;
};

struct RequirementsSpec {
  std::string short_description;
  std::string detailed_description;
  std::vector<UseCase> use_cases;
  std::vector<NfrItem> nfrs;
  std::string software_type;  // taxonomy path

  bool operator==(const RequirementsSpec&) const = default;
};

class Taxonomy {
 public:
  struct Node {
    std::string path;   // "" never; root is "/"
    std::string label;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
  };

  static constexpr std::string_view kRootPath = "/";

  /// Document: {"label": ..., "children": [{"id": ..., "label": ..., "children": [...]}]}
  static Taxonomy parse(std::string_view document);
  static Taxonomy load(const std::filesystem::path& path);

  const Node& root() const { return nodes_.front(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::string& version() const noexcept { return version_; }

  /// Exact match on path. Throws Error(taxonomy) when unknown.
  const Node& resolve(std::string_view path) const;
  const Node* find(std::string_view path) const;

  std::vector<const Node*> leaves() const;

 private:
  std::vector<Node> nodes_;
  std::string version_;
};

/// Symmetric, irreflexive conflict relation over canonical NFR labels.
class ConflictMatrix {
 public:
  ConflictMatrix() = default;
  ConflictMatrix(std::set<std::string> labels, std::vector<NfrPair> conflicting);

  /// Document: {"labels": [...], "conflicting": [["a", "b"], ...]}
  static ConflictMatrix parse(std::string_view document);
  static ConflictMatrix load(const std::filesystem::path& path);

  bool knows(std::string_view label) const;
  bool conflicts(std::string_view a, std::string_view b) const;
  const std::set<std::string>& labels() const noexcept { return labels_; }

 private:
  std::set<std::string> labels_;
  std::set<NfrPair> conflicting_;  // stored with first < second
};

/// Every violated limit, with a field locator. Empty means valid.
std::vector<FieldError> check_spec(const RequirementsSpec& spec, const Taxonomy& taxonomy);

/// Checks all invariants (collecting, not fail-fast) and defaults missing
/// importance scores. Throws ValidationError listing every problem.
RequirementsSpec validate_spec(RequirementsSpec spec, const Taxonomy& taxonomy);

/// Every unordered pair of supplied NFRs marked conflicting, in input order.
/// Throws Error(vocabulary) for an unknown label.
std::vector<NfrPair> check_nfr_conflicts(std::span<const NfrItem> nfrs, const ConflictMatrix& matrix);

/// Drops the lower-priority member of every conflicting pair. Throws
/// ResolutionRequiredError when a conflicted NFR has no priority, and
/// ValidationError on tied priorities within a pair.
std::vector<NfrItem> resolve_nfr_conflicts(std::vector<NfrItem> nfrs, std::span<const NfrPair> conflicts,
                                           const std::map<std::string, int>& priorities);

/// Priorities carried on the items themselves.
std::map<std::string, int> item_priorities(std::span<const NfrItem> nfrs);

}  // namespace apr
