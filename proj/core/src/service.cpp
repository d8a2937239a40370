#include "igape/service.hpp"

#include <httplib.h>

#include "igape/ahp.hpp"
#include "igape/concordance.hpp"
#include "igape/error.hpp"
#include "igape/serialization.hpp"
#include "igape/topsis.hpp"

namespace igape {

struct ApiService::Server {
  httplib::Server http;
};

namespace {

ApiResponse json_response(int status, const Json& body) { return ApiResponse{status, body.dump(), {}}; }

int status_for(const Error& e) {
  if (e.kind() == ErrorKind::Io) return 500;
  if (e.is_input_error()) return 400;
  if (e.rule() == "scenario.unknown" || e.rule() == "session.unknown") return 404;
  return 422;
}

ApiResponse conflict(std::string rule, std::string message, std::string retry) {
  Json body{{"error", {{"kind", "conflict"}, {"rule", std::move(rule)}, {"message", std::move(message)}}},
            {"retry", std::move(retry)}};
  auto response = json_response(409, body);
  response.headers["Retry-After"] = "1";
  return response;
}

Json parse_body(std::string_view body) {
  try {
    return Json::parse(body.begin(), body.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, "request.syntax", "request body is not valid JSON (position " +
                                                        std::to_string(e.byte > 0 ? e.byte - 1 : 0) + ")");
  }
}

Json parse_object(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return Json::object();
  Json j = parse_body(body);
  if (!j.is_object()) throw Error(ErrorKind::Parse, "request.schema", "request body must be a JSON object");
  return j;
}

std::map<std::string, std::string> parse_query(std::string_view query) {
  std::map<std::string, std::string> out;
  while (!query.empty()) {
    const auto amp = query.find('&');
    const auto pair = query.substr(0, amp);
    const auto eq = pair.find('=');
    out[std::string(pair.substr(0, eq))] = eq == std::string_view::npos ? "" : std::string(pair.substr(eq + 1));
    if (amp == std::string_view::npos) break;
    query.remove_prefix(amp + 1);
  }
  return out;
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    const auto slash = path.find('/');
    parts.emplace_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return parts;
}

bool truthy(const std::map<std::string, std::string>& query, const std::string& key) {
  auto it = query.find(key);
  return it != query.end() && (it->second.empty() || it->second == "1" || it->second == "true");
}

std::string session_field(const Json& j) {
  if (!j.contains("session") || j.at("session").is_null()) return {};
  if (!j.at("session").is_string()) throw Error(ErrorKind::Parse, "request.schema", "'session' must be a string");
  return j.at("session").get<std::string>();
}

}  // namespace

ApiService::ApiService(ModelDocument document, std::optional<std::filesystem::path> persist_to)
    : document_(std::make_shared<const ModelDocument>(std::move(document))),
      persist_to_(std::move(persist_to)),
      server_(std::make_shared<Server>()) {}

std::shared_ptr<const ModelDocument> ApiService::document() const {
  std::lock_guard lock(snapshot_mutex_);
  return document_;
}

std::uint64_t ApiService::version() const {
  std::lock_guard lock(snapshot_mutex_);
  return version_;
}

std::size_t ApiService::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

std::unique_lock<std::mutex> ApiService::acquire_writer() { return std::unique_lock(writer_); }

void ApiService::publish(ModelDocument document) {
  if (persist_to_) save_model(document, *persist_to_);
  auto next = std::make_shared<const ModelDocument>(std::move(document));
  std::lock_guard lock(snapshot_mutex_);
  document_ = std::move(next);
  ++version_;
}

ApiResponse ApiService::handle(std::string_view method, std::string_view target, std::string_view body) {
  const auto qmark = target.find('?');
  const auto path = target.substr(0, qmark);
  const auto query = parse_query(qmark == std::string_view::npos ? std::string_view() : target.substr(qmark + 1));
  const auto parts = split_path(path);

  auto not_found = [&] {
    return json_response(404, Json{{"error",
                                    {{"kind", "not-found"},
                                     {"rule", "service.route"},
                                     {"message", "no endpoint " + std::string(method) + " " + std::string(path)}}}});
  };
  auto wrong_method = [&] {
    return json_response(405, Json{{"error",
                                    {{"kind", "method"},
                                     {"rule", "service.method"},
                                     {"message", std::string(method) + " is not allowed on " + std::string(path)}}}});
  };

  try {
    if (parts.size() < 2 || parts[0] != "api") return not_found();
    const auto& head = parts[1];
    if (head == "model" && parts.size() == 2) {
      if (method == "GET") return get_model();
      if (method == "PUT") return put_model(body, truthy(query, "discard_sessions"));
      return wrong_method();
    }
    if (head == "model" && parts.size() == 3 && parts[2] == "validation") {
      return method == "GET" ? get_validation() : wrong_method();
    }
    if (head == "ahp" && parts.size() == 3 && parts[2] == "priorities") {
      return method == "POST" ? post_priorities(body) : wrong_method();
    }
    if (head == "topsis" && parts.size() == 3 && parts[2] == "evaluate") {
      return method == "POST" ? post_topsis(body) : wrong_method();
    }
    if (head == "scenario" && parts.size() == 4 && parts[3] == "run") {
      return method == "POST" ? post_scenario(parts[2], body) : wrong_method();
    }
    if (head == "whatif" && parts.size() == 2) return method == "POST" ? post_whatif(body) : wrong_method();
    if (head == "whatif" && parts.size() == 3) {
      if (method != "POST") return wrong_method();
      if (parts[2] == "undo") return post_whatif_undo(body);
      if (parts[2] == "commit") return post_whatif_commit(body);
      if (parts[2] == "discard") return post_whatif_discard(body);
      return not_found();
    }
    if (head == "concordance" && parts.size() == 2) return method == "POST" ? post_concordance(body) : wrong_method();
    return not_found();
  } catch (const Error& e) {
    return json_response(status_for(e), error_to_json(e));
  } catch (const Json::exception& e) {
    return json_response(400, error_to_json(Error(ErrorKind::Parse, "request.schema", e.what())));
  }
}

ApiResponse ApiService::get_model() const {
  auto doc = document();
  ApiResponse response{200, serialize_document(*doc), {}};
  response.headers["X-Model-Version"] = std::to_string(version());
  return response;
}

ApiResponse ApiService::get_validation() const {
  return json_response(200, Json(validate_model(document()->model)));
}

ApiResponse ApiService::put_model(std::string_view body, bool discard_sessions) {
  std::unique_lock lock(writer_, std::try_to_lock);
  if (!lock.owns_lock()) {
    return conflict("service.writer-busy", "another edit is being applied to the document", "retry after the edit completes");
  }
  auto doc = parse_document(body);
  const auto report = validate_model(doc.model);
  if (report.has_errors()) {
    Json body_json = error_to_json(Error(ErrorKind::Structure, "model.invalid",
                                         std::to_string(report.error_count()) + " validation error(s); document not replaced"));
    body_json["validation"] = report;
    return json_response(422, body_json);
  }
  {
    std::lock_guard sessions(sessions_mutex_);
    if (!sessions_.empty() && !discard_sessions) {
      return conflict("service.sessions-open",
                      std::to_string(sessions_.size()) + " what-if session(s) hold staged edits",
                      "repeat with ?discard_sessions=true to drop them");
    }
  }
  publish(std::move(doc));
  std::size_t dropped = 0;
  {
    std::lock_guard sessions(sessions_mutex_);
    dropped = sessions_.size();
    sessions_.clear();
  }
  return json_response(200, Json{{"version", version()}, {"discarded_sessions", dropped}});
}

ApiResponse ApiService::post_priorities(std::string_view body) const {
  const Json j = parse_body(body);
  auto method = PriorityMethod::Eigenvector;
  if (j.is_object() && j.contains("method")) {
    const auto name = j.at("method").get<std::string>();
    if (name == "geometric-mean") {
      method = PriorityMethod::GeometricMean;
    } else if (name != "eigenvector") {
      throw Error(ErrorKind::Parse, "request.schema", "unknown method '" + name + "'");
    }
  }
  const auto matrix = j.get<ComparisonMatrix>();
  return json_response(200, Json(derive_priorities(matrix, method)));
}

ApiResponse ApiService::post_topsis(std::string_view body) const {
  const Json j = parse_body(body);
  const auto matrix = j.get<DecisionMatrix>();
  TopsisOptions options;
  if (j.contains("options") && j.at("options").contains("shift_to_nonnegative")) {
    options.shift_to_nonnegative = j.at("options").at("shift_to_nonnegative").get<bool>();
  }
  Json out = evaluate(matrix, options);
  out["alternatives"] = matrix.alternatives;
  return json_response(200, out);
}

ApiResponse ApiService::post_scenario(const std::string& name, std::string_view body) const {
  const Json j = parse_object(body);
  const auto session = session_field(j);
  if (session.empty()) return json_response(200, Json(run_scenario(*document(), name)));
  ModelDocument doc;
  {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(session);
    if (it == sessions_.end()) throw Error(ErrorKind::Reference, "session.unknown", "no session '" + session + "'");
    doc = it->second.document;
  }
  return json_response(200, Json(run_scenario(doc, name)));
}

ApiResponse ApiService::post_whatif(std::string_view body) {
  const Json j = parse_object(body);
  if (!j.contains("scenario") || !j.at("scenario").is_string()) {
    throw Error(ErrorKind::Parse, "request.schema", "missing string field 'scenario'");
  }
  const auto name = j.at("scenario").get<std::string>();
  const WhatIfEdit edit = j.contains("edit") ? edit_from_json(j.at("edit")) : WhatIfEdit{};
  auto session_id = session_field(j);

  std::lock_guard writer(writer_);
  Session session;
  {
    std::lock_guard lock(sessions_mutex_);
    if (session_id.empty()) {
      session.id = "s" + std::to_string(next_session_);
      session.base_version = version();
      session.document = *document();
    } else {
      auto it = sessions_.find(session_id);
      if (it == sessions_.end()) throw Error(ErrorKind::Reference, "session.unknown", "no session '" + session_id + "'");
      session = it->second;
    }
  }

  const auto& scenario = session.document.scenario(name);
  const auto result = what_if(name, scenario, session.document.model, session.document.hierarchy(scenario.hierarchy), edit);

  if (!std::holds_alternative<std::monostate>(edit)) {
    ModelDocument next = session.document;
    next.model = result.model;
    next.hierarchies[scenario.hierarchy] = result.hierarchy;
    session.undo_stack.push_back(std::move(session.document));
    session.edits.push_back(edit);
    session.document = std::move(next);
  }
  {
    std::lock_guard lock(sessions_mutex_);
    if (session_id.empty()) {
      ++next_session_;
      session_id = session.id;
    }
    sessions_[session_id] = session;
  }

  Json edits = Json::array();
  for (const auto& e : session.edits) edits.push_back(edit_to_json(e));
  return json_response(200, Json{{"session", session_id},
                                 {"depth", session.edits.size()},
                                 {"edits", std::move(edits)},
                                 {"scenario", name},
                                 {"recomputed", result.recomputed},
                                 {"delta", result.delta},
                                 {"baseline", result.baseline},
                                 {"edited", result.edited}});
}

ApiResponse ApiService::post_whatif_undo(std::string_view body) {
  const auto id = session_field(parse_object(body));
  std::lock_guard writer(writer_);
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorKind::Reference, "session.unknown", "no session '" + id + "'");
  auto& session = it->second;
  if (session.undo_stack.empty()) throw Error(ErrorKind::Edit, "whatif.nothing-to-undo", "session has no edits to undo");
  session.document = std::move(session.undo_stack.back());
  session.undo_stack.pop_back();
  session.edits.pop_back();
  return json_response(200, Json{{"session", id}, {"depth", session.edits.size()}});
}

ApiResponse ApiService::post_whatif_commit(std::string_view body) {
  const auto id = session_field(parse_object(body));
  std::lock_guard writer(writer_);
  Session session;
  {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorKind::Reference, "session.unknown", "no session '" + id + "'");
    session = it->second;
  }
  if (session.base_version != version()) {
    return conflict("session.stale", "the document changed since the session started",
                    "discard the session and replay its edits");
  }
  const auto report = validate_model(session.document.model);
  if (report.has_errors()) {
    Json out = error_to_json(Error(ErrorKind::Edit, "model.invalid", "staged edits leave the model invalid"));
    out["validation"] = report;
    return json_response(422, out);
  }
  publish(session.document);
  {
    std::lock_guard lock(sessions_mutex_);
    sessions_.erase(id);
  }
  return json_response(200, Json{{"version", version()}, {"committed", session.edits.size()}});
}

ApiResponse ApiService::post_whatif_discard(std::string_view body) {
  const auto id = session_field(parse_object(body));
  std::lock_guard writer(writer_);
  std::lock_guard lock(sessions_mutex_);
  if (sessions_.erase(id) == 0) throw Error(ErrorKind::Reference, "session.unknown", "no session '" + id + "'");
  return json_response(200, Json{{"discarded", id}});
}

ApiResponse ApiService::post_concordance(std::string_view body) const {
  const Json j = parse_body(body);
  const auto matrix = j.get<RankMatrix>();
  double threshold = kGoodAgreementThreshold;
  if (j.contains("threshold")) threshold = j.at("threshold").get<double>();
  return json_response(200, Json(kendall_w(matrix, threshold)));
}

int ApiService::bind(const std::string& host, int port) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    std::string target = req.path;
    char sep = '?';
    for (const auto& [key, value] : req.params) {
      target += sep + key + "=" + value;
      sep = '&';
    }
    const auto out = handle(req.method, target, req.body);
    res.status = out.status;
    for (const auto& [key, value] : out.headers) res.set_header(key, value);
    res.set_content(out.body, "application/json");
  };
  server_->http.Get(".*", forward);
  server_->http.Put(".*", forward);
  server_->http.Post(".*", forward);
  server_->http.Delete(".*", forward);
  if (port == 0) return server_->http.bind_to_any_port(host);
  return server_->http.bind_to_port(host, port) ? port : -1;
}

bool ApiService::listen() { return server_->http.listen_after_bind(); }

bool ApiService::serve(const std::string& host, int port) { return bind(host, port) >= 0 && listen(); }

bool ApiService::running() const { return server_->http.is_running(); }

void ApiService::stop() { server_->http.stop(); }

}  // namespace igape
