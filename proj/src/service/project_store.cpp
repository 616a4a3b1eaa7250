#include "apr/service/project_store.hpp"
#include <algorithm>

#include <chrono>
#include <cstdio>
#include <ctime>

#include "apr/errors.hpp"
#include "apr/service/json_io.hpp"
#include "apr/text.hpp"

namespace apr::service {

using nlohmann::json;

namespace {

bool valid_id(const std::string& id) {
  if (id.empty() || id.size() > 32) {
    return false;
  }
  for (char c : id) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-')) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json project_to_json(const ProjectRecord& r) {
  return json{{"id", r.id},
              {"spec", spec_to_json(r.spec)},
              {"last_recommendation", r.last_recommendation},
              {"created_at", r.created_at},
              {"updated_at", r.updated_at}};
}

ProjectRecord project_from_json(const json& j) {
  ProjectRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.spec = spec_from_json(j.at("spec"));
    r.last_recommendation = j.value("last_recommendation", json(nullptr));
    r.created_at = j.value("created_at", std::string{});
    r.updated_at = j.value("updated_at", std::string{});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, std::string("bad project record: ") + e.what());
  }
  return r;
}

ProjectStore::ProjectStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    throw Error(ErrorKind::io, "cannot create project directory " + dir_.string() + ": " + ec.message());
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    const auto stem = entry.path().stem().string();
    if (entry.path().extension() == ".json" && stem.rfind("p-", 0) == 0) {
      try {
        next_id_ = std::max(next_id_, static_cast<std::size_t>(std::stoul(stem.substr(2))) + 1);
      } catch (const std::exception&) {
      }
    }
  }
}

std::filesystem::path ProjectStore::file_for(const std::string& id) const { return dir_ / (id + ".json"); }

std::shared_ptr<std::mutex> ProjectStore::lock_for(const std::string& id) {
  std::lock_guard guard(registry_mutex_);
  auto& slot = locks_[id];
  if (!slot) {
    slot = std::make_shared<std::mutex>();
  }
  return slot;
}

void ProjectStore::write(const ProjectRecord& record) const {
  const auto target = file_for(record.id);
  const auto tmp = target.string() + ".tmp";
  write_text_file(tmp, dump_machine(project_to_json(record)));
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    throw Error(ErrorKind::io, "cannot store project " + record.id + ": " + ec.message());
  }
}

ProjectRecord ProjectStore::create(const RequirementsSpec& spec) {
  ProjectRecord record;
  {
    std::lock_guard guard(registry_mutex_);
    char buf[16];
    std::snprintf(buf, sizeof buf, "p-%04zu", next_id_++);
    record.id = buf;
  }
  record.spec = spec;
  record.created_at = utc_timestamp();
  record.updated_at = record.created_at;
  const auto lock = lock_for(record.id);
  std::lock_guard guard(*lock);
  write(record);
  return record;
}

std::optional<ProjectRecord> ProjectStore::get(const std::string& id) const {
  if (!valid_id(id)) {
    return std::nullopt;
  }
  const auto path = file_for(id);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    return std::nullopt;
  }
  const auto j = json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorKind::format, "project file " + path.string() + " is corrupt");
  }
  return project_from_json(j);
}

ProjectRecord ProjectStore::update_spec(const std::string& id, const RequirementsSpec& spec) {
  const auto lock = lock_for(id);
  std::lock_guard guard(*lock);
  auto record = get(id);
  if (!record) {
    throw Error(ErrorKind::validation, "unknown project \"" + id + "\"");
  }
  record->spec = spec;
  record->last_recommendation = nullptr;
  record->updated_at = utc_timestamp();
  write(*record);
  return *record;
}

ProjectRecord ProjectStore::set_recommendation(const std::string& id, json recommendation) {
  const auto lock = lock_for(id);
  std::lock_guard guard(*lock);
  auto record = get(id);
  if (!record) {
    throw Error(ErrorKind::validation, "unknown project \"" + id + "\"");
  }
  record->last_recommendation = std::move(recommendation);
  record->updated_at = utc_timestamp();
  write(*record);
  return *record;
}

}  // namespace apr::service
