#pragma once

#include <memory>
#include <string>

#include "ocs/catalog.hpp"
#include "ocs/session.hpp"

namespace ocs {

/// JSON over HTTP for the transcription client. Status codes: 200 on
/// success, 400 when input fails validation or a step is rejected, 404 for
/// unknown ids.
///
///   GET    /actions?query=<q>
///   GET    /actions/{id}
///   GET    /methods?max_cards=&max_sleights=&uses=
///   GET    /methods/{id}
///   POST   /sessions
///   GET    /sessions/{id}
///   POST   /sessions/{id}/steps
///   DELETE /sessions/{id}/steps/last
///   GET    /sessions/{id}/export?format=dsl|triples
class HttpApi {
 public:
  HttpApi(const Catalog& catalog, SessionStore& sessions);
  ~HttpApi();
  HttpApi(const HttpApi&) = delete;
  HttpApi& operator=(const HttpApi&) = delete;

  /// Binds without serving. Port 0 picks a free port. Returns the bound
  /// port; throws Io.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ocs
