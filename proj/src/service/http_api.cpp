#include "apr/service/http_api.hpp"

#include <httplib.h>

#include "apr/errors.hpp"
#include "apr/service/json_io.hpp"
#include "apr/service/pipeline.hpp"

namespace apr::service {

using nlohmann::json;

namespace {

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::format: return 400;
    case ErrorKind::validation:
    case ErrorKind::taxonomy:
    case ErrorKind::vocabulary: return 422;
    case ErrorKind::resolution_required: return 409;
    case ErrorKind::io:
    case ErrorKind::config: return 500;
  }
  return 500;
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(body.dump(2) + "\n", "application/json");
}

json error_body(const Error& e) {
  json body{{"error", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    body["errors"] = field_errors_to_json(v->errors());
  }
  if (const auto* r = dynamic_cast<const ResolutionRequiredError*>(&e)) {
    json pairs = json::array();
    for (const auto& [a, b] : r->pairs()) {
      pairs.push_back(json::array({a, b}));
    }
    body["conflicts"] = pairs;
  }
  return body;
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) {
    return json::object();
  }
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::format, std::string("request body is not valid JSON: ") + e.what());
  }
}

// Accepts either the bare spec or {"spec": {...}}.
RequirementsSpec spec_from_body(const json& body) {
  if (body.is_object() && body.contains("spec") && body.size() == 1) {
    return spec_from_json(body["spec"]);
  }
  return spec_from_json(body);
}

}  // namespace

struct ApiServer::Impl {
  const KnowledgeBase& kb;
  PipelineConfig config;
  ProjectStore& store;
  httplib::Server server;

  Impl(const KnowledgeBase& k, PipelineConfig c, ProjectStore& s) : kb(k), config(std::move(c)), store(s) {}

  template <typename Handler>
  auto guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        send(res, status_for(e.kind()), error_body(e));
      } catch (const std::exception& e) {
        send(res, 500, json{{"error", "internal"}, {"message", e.what()}});
      }
    };
  }

  void routes() {
    server.Post("/api/projects", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto spec = validate_spec(spec_from_body(parse_body(req)), kb.taxonomy);
      send(res, 201, project_to_json(store.create(spec)));
    }));

    server.Get("/api/projects/:id", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto record = store.get(req.path_params.at("id"));
      if (!record) {
        send(res, 404, json{{"error", "not_found"}, {"message", "no such project"}});
        return;
      }
      send(res, 200, project_to_json(*record));
    }));

    server.Put("/api/projects/:id/spec", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto& id = req.path_params.at("id");
      if (!store.get(id)) {
        send(res, 404, json{{"error", "not_found"}, {"message", "no such project"}});
        return;
      }
      const auto spec = validate_spec(spec_from_body(parse_body(req)), kb.taxonomy);
      send(res, 200, project_to_json(store.update_spec(id, spec)));
    }));

    server.Post("/api/projects/:id/recommend", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto& id = req.path_params.at("id");
      const auto record = store.get(id);
      if (!record) {
        send(res, 404, json{{"error", "not_found"}, {"message", "no such project"}});
        return;
      }
      std::map<std::string, int> priorities;
      const auto body = parse_body(req);
      if (body.is_object() && body.contains("priorities")) {
        try {
          priorities = body["priorities"].get<std::map<std::string, int>>();
        } catch (const json::exception&) {
          throw Error(ErrorKind::format, "priorities must map NFR names to integers");
        }
      }
      const auto set = recommend(record->spec, kb, config, priorities);
      auto result = recommendation_set_to_json(set);
      store.set_recommendation(id, result);
      send(res, 200, result);
    }));

    server.Post("/api/nfr-check", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      const json list = body.is_array() ? body : body.value("nfrs", json::array());
      std::vector<NfrItem> items;
      for (const auto& v : list) {
        if (v.is_string()) {
          items.push_back({v.get<std::string>(), std::nullopt, {}});
        } else if (v.is_object() && v.contains("name") && v["name"].is_string()) {
          items.push_back({v["name"].get<std::string>(), std::nullopt, {}});
        } else {
          throw Error(ErrorKind::format, "nfrs entries must be names or {\"name\": ...}");
        }
      }
      json pairs = json::array();
      for (const auto& [a, b] : check_nfr_conflicts(items, kb.conflicts)) {
        pairs.push_back(json::array({a, b}));
      }
      send(res, 200, json{{"conflicts", pairs}});
    }));

    server.Get("/api/taxonomy", guarded([this](const httplib::Request&, httplib::Response& res) {
      send(res, 200, taxonomy_to_json(kb.taxonomy));
    }));

    server.Get("/api/patterns", guarded([this](const httplib::Request&, httplib::Response& res) {
      json out = json::array();
      for (const auto& r : kb.catalog) {
        out.push_back(json{{"pattern_name", r.pattern_name}, {"basic_definition", r.basic_definition},
                           {"source", r.source}});
      }
      send(res, 200, json{{"version", kb.catalog.version()}, {"patterns", out}});
    }));

    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
  }
};

ApiServer::ApiServer(const KnowledgeBase& kb, PipelineConfig config, ProjectStore& store)
    : impl_(std::make_unique<Impl>(kb, std::move(config), store)) {
  impl_->config.validate();
  impl_->routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) {
    return impl_->server.bind_to_any_port(host);
  }
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool ApiServer::serve() { return impl_->server.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_) {
    impl_->server.stop();
  }
}

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace apr::service
