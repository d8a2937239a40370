#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "igape/persistence.hpp"

namespace igape {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
  std::map<std::string, std::string> headers;
};

/// Staged what-if edits layered over one version of the served document.
struct Session {
  std::string id;
  std::uint64_t base_version = 0;
  ModelDocument document;
  std::vector<WhatIfEdit> edits;
  std::vector<ModelDocument> undo_stack;  // document before each edit
};

/// The HTTP/JSON API over one model document. `handle` is the transport-free
/// entry point; `serve` binds it to a socket.
///
/// Reads work on an immutable snapshot and never block. Mutations (model
/// replacement, what-if edits, commits) go through a single writer lock; a
/// model replacement that finds the lock taken answers 409 instead of
/// waiting.
class ApiService {
 public:
  explicit ApiService(ModelDocument document, std::optional<std::filesystem::path> persist_to = std::nullopt);

  ApiResponse handle(std::string_view method, std::string_view target, std::string_view body);

  std::shared_ptr<const ModelDocument> document() const;
  std::uint64_t version() const;
  std::size_t session_count() const;

  /// Holds the writer lock, e.g. to stand in for an edit in flight.
  std::unique_lock<std::mutex> acquire_writer();

  /// Registers the routes and binds; port 0 picks a free port. Returns the
  /// bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  bool listen();
  /// bind + listen; false when the port cannot be bound.
  bool serve(const std::string& host, int port);
  bool running() const;
  void stop();

 private:
  ApiResponse get_model() const;
  ApiResponse get_validation() const;
  ApiResponse put_model(std::string_view body, bool discard_sessions);
  ApiResponse post_priorities(std::string_view body) const;
  ApiResponse post_topsis(std::string_view body) const;
  ApiResponse post_scenario(const std::string& name, std::string_view body) const;
  ApiResponse post_whatif(std::string_view body);
  ApiResponse post_whatif_undo(std::string_view body);
  ApiResponse post_whatif_commit(std::string_view body);
  ApiResponse post_whatif_discard(std::string_view body);
  ApiResponse post_concordance(std::string_view body) const;

  void publish(ModelDocument document);

  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const ModelDocument> document_;
  std::uint64_t version_ = 1;

  std::mutex writer_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, Session> sessions_;
  std::uint64_t next_session_ = 1;

  std::optional<std::filesystem::path> persist_to_;

  struct Server;
  std::shared_ptr<Server> server_;
};

}  // namespace igape
