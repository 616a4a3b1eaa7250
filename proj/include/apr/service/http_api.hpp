#pragma once

// JSON-over-HTTP surface for the browser UI.
//
//   POST /api/projects                 create from a spec          201 | 400 | 422
//   GET  /api/projects/{id}                                        200 | 404
//   PUT  /api/projects/{id}/spec       replace the spec            200 | 400 | 404 | 422
//   POST /api/projects/{id}/recommend  {"priorities": {...}}?      200 | 404 | 409 | 422
//   POST /api/nfr-check                {"nfrs": [...]}             200 | 422
//   GET  /api/taxonomy                                             200
//   GET  /api/patterns                                             200

#include <memory>
#include <string>

#include "apr/service/config.hpp"
#include "apr/service/project_store.hpp"

namespace apr::service {

class ApiServer {
 public:
  ApiServer(const KnowledgeBase& kb, PipelineConfig config, ProjectStore& store);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool serve();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace apr::service
