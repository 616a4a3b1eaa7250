#pragma once

// Flat-file project persistence: one JSON document per project under a
// data directory. Writes to a given project are serialized.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "apr/input_model.hpp"

namespace apr::service {

struct ProjectRecord {
  std::string id;
  RequirementsSpec spec;
  nlohmann::json last_recommendation;  // null until the first run
  std::string created_at;
  std::string updated_at;
};

class ProjectStore {
 public:
  explicit ProjectStore(std::filesystem::path dir);

  /// The caller validates `spec` first; the store only persists.
  ProjectRecord create(const RequirementsSpec& spec);
  std::optional<ProjectRecord> get(const std::string& id) const;
  /// Throws Error(validation) for an unknown id.
  ProjectRecord update_spec(const std::string& id, const RequirementsSpec& spec);
  ProjectRecord set_recommendation(const std::string& id, nlohmann::json recommendation);

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path file_for(const std::string& id) const;
  std::shared_ptr<std::mutex> lock_for(const std::string& id);
  void write(const ProjectRecord& record) const;

  std::filesystem::path dir_;
  std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
  std::size_t next_id_ = 1;
};

nlohmann::json project_to_json(const ProjectRecord& record);
ProjectRecord project_from_json(const nlohmann::json& j);

/// UTC, second precision, ISO-8601.
std::string utc_timestamp();

}  // namespace apr::service
