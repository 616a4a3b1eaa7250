#pragma once

// Standard Pattern Database: curated architectural-pattern records.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apr {

/// Pattern features used by the scoring step.
enum class PatternFeature {
  basic_definition,
  context,
  forces,
  solution,
  consequences,
  variants,
  known_applications,
};

const char* to_string(PatternFeature feature);

struct PatternRecord {
  std::string pattern_name;
  std::string basic_definition;
  std::string context;
  std::string forces;
  std::string solution;
  std::string consequences;
  std::string variants;
  std::string known_applications;
  std::string source;

  const std::string& feature(PatternFeature f) const;

  bool operator==(const PatternRecord&) const = default;
};

/// Immutable after construction; records sorted by pattern_name.
class PatternCatalog {
 public:
  PatternCatalog() = default;
  /// Validates every record invariant and sorts. Throws ValidationError.
  PatternCatalog(std::vector<PatternRecord> records, std::string version);

  const std::vector<PatternRecord>& records() const noexcept { return records_; }
  const std::string& version() const noexcept { return version_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  bool operator==(const PatternCatalog&) const = default;

 private:
  std::vector<PatternRecord> records_;
  std::string version_;
};

/// Parses a catalog document. Accepts either a bare array of records or an
/// object {"version": ..., "patterns": [...]}.
PatternCatalog parse_catalog(std::string_view document);
PatternCatalog load_catalog(const std::filesystem::path& path);

std::string serialize_catalog(const PatternCatalog& catalog);
void save_catalog(const PatternCatalog& catalog, const std::filesystem::path& path);

/// Case-sensitive exact match on pattern_name.
std::optional<PatternRecord> get_pattern(const PatternCatalog& catalog, std::string_view name);

}  // namespace apr
