#include "ocs/http_api.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ocs/stack.hpp"

namespace ocs {

using nlohmann::json;

namespace {

json state_json(const StackState& s) {
  json cards = json::array();
  for (const auto& e : s.entries()) {
    json q = json::array();
    for (const auto& quality : e.qualities) q.push_back("crimp:" + std::string(to_string(quality.site)));
    cards.push_back({{"card", e.card.code()}, {"orientation", to_string(e.orientation)}, {"qualities", q}});
  }
  return {{"cards", cards},
          {"form", to_string(s.form())},
          {"aggregate", s.aggregate_kind() == AggregateKind::Packet ? "packet" : "deck"}};
}

json view_json(const SessionView& v) {
  json steps = json::array();
  for (std::size_t i = 0; i < v.steps.size(); ++i) {
    const auto& ins = v.steps[i];
    steps.push_back({{"n", i + 1},
                     {"kind", ins.action.kind == ActionRef::Kind::Variant ? "variant" : "class"},
                     {"action", ins.action.id},
                     {"focus", format_location(ins.focus)}});
  }
  json states = json::array();
  for (const auto& s : v.trace.states) states.push_back(state_json(s));
  json available = json::array();
  for (const auto& c : v.available) available.push_back(c.code());
  return {{"id", v.id},
          {"name", v.name},
          {"available", available},
          {"steps", steps},
          {"trace", states},
          {"state", state_json(v.trace.final_state())}};
}

json class_json(const Taxonomy& t, const ActionClass& c, bool public_only) {
  auto opt = [](const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); };
  json variants = json::array();
  for (const auto* v : t.variants_of(c.id)) {
    if (public_only && v->visibility == Visibility::Private) continue;
    json flips = json::array();
    for (auto f : v->transform.flips) flips.push_back(f);
    variants.push_back({{"id", v->id},
                        {"name", v->display_name()},
                        {"participants", v->participants},
                        {"perm", v->transform.perm.images()},
                        {"flips", flips},
                        {"start_state", opt(v->start_state_note)},
                        {"end_state", opt(v->end_state_note)}});
  }
  json d = nullptr;
  if (t.is_card_action(c.id)) d = depth(t, c.id);
  return {{"id", c.id},
          {"primary_name", c.primary_name},
          {"alt_names", c.alt_names},
          {"parent", c.parent},
          {"kind", to_string(c.kind)},
          {"visibility", to_string(c.visibility)},
          {"definition", c.metadata.definition},
          {"definition_source", opt(c.metadata.definition_source)},
          {"archive_link", opt(c.metadata.archive_link)},
          {"credits_link", opt(c.metadata.credits_link)},
          {"elucidation", opt(c.metadata.elucidation)},
          {"depth", d},
          {"variants", variants}};
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message,
                json extra = json::object()) {
  extra["code"] = code;
  extra["message"] = message;
  send(res, status, {{"error", extra}});
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownId: return 404;
    case ErrorCode::Io: return 500;
    default: return 400;
  }
}

/// Runs a handler, mapping library errors and malformed JSON to responses.
template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const StepRejectedError& e) {
    const auto& se = e.step_error();
    send_error(res, 400, to_string(ErrorCode::StepRejected), e.what(),
               {{"kind", to_string(se.kind)}, {"step", se.step_index}, {"detail", se.detail}});
  } catch (const Error& e) {
    send_error(res, status_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "BadRequest", e.what());
  }
}

std::optional<std::size_t> number_param(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  auto v = req.get_param_value(key);
  if (v.empty()) return std::nullopt;
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::SyntaxError, std::string(key) + " must be a non-negative integer, got '" + v + "'");
  }
  return n;
}

CardName card_of(const json& j) {
  auto s = j.get<std::string>();
  auto c = parse_card(s);
  if (!c) throw Error(ErrorCode::UnknownCard, "'" + s + "'");
  return *c;
}

}  // namespace

struct HttpApi::Impl {
  const Catalog& catalog;
  SessionStore& sessions;
  httplib::Server server;
  std::atomic<bool> stop_requested{false};
  std::atomic<bool> listening{false};
  std::atomic<bool> finished{false};

  Impl(const Catalog& c, SessionStore& s) : catalog(c), sessions(s) { routes(); }

  ActionRef visible_action(const std::string& token) const {
    auto ref = resolve_action(catalog.taxonomy(), token);
    if (catalog.options().public_only) {
      const auto& cls = action_class_of(catalog.taxonomy(), ref);
      bool hidden = cls.visibility == Visibility::Private;
      if (ref.kind == ActionRef::Kind::Variant) {
        hidden = hidden || catalog.taxonomy().get_variant(ref.id).visibility == Visibility::Private;
      }
      if (hidden) throw Error(ErrorCode::UnknownAction, "\"" + token + "\"");
    }
    return ref;
  }

  void routes() {
    server.Get("/actions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto q = req.get_param_value("query");
        auto done = catalog.index().autocomplete(q);
        json candidates = json::array();
        for (const auto& c : done.candidates) {
          candidates.push_back({{"label", c.label}, {"class_ids", c.class_ids}, {"alt", c.alt}});
        }
        send(res, 200, {{"query", q}, {"candidates", candidates}, {"overflow", done.overflow}});
      });
    });
    server.Get(R"(/actions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto* c = catalog.find_action(req.matches[1].str());
        if (!c) throw Error(ErrorCode::UnknownId, "no action class " + req.matches[1].str());
        send(res, 200, class_json(catalog.taxonomy(), *c, catalog.options().public_only));
      });
    });
    server.Get("/methods", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        MethodQuery q;
        q.max_cards = number_param(req, "max_cards");
        q.max_sleights = number_param(req, "max_sleights");
        if (req.has_param("uses") && !req.get_param_value("uses").empty()) q.uses_action = req.get_param_value("uses");
        send(res, 200, {{"methods", query_methods(catalog, q)}});
      });
    });
    server.Get(R"(/methods/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto* doc = catalog.find_method(req.matches[1].str());
        if (!doc) throw Error(ErrorCode::UnknownId, "no method " + req.matches[1].str());
        json sleights = sleight_classes_used(catalog.taxonomy(), *doc);
        send(res, 200,
             {{"id", doc->id()},
              {"name", doc->name},
              {"kind", to_string(doc->kind)},
              {"cards", doc->available.size()},
              {"sleights", sleights},
              {"dsl", serialize_method(*doc)}});
      });
    });
    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto body = req.body.empty() ? json::object() : json::parse(req.body);
        std::set<CardName> available;
        for (const auto& c : body.value("available", json::array())) available.insert(card_of(c));
        std::vector<StartEntry> start;
        for (const auto& e : body.at("start")) {
          auto o = parse_orientation(e.at("orientation").get<std::string>());
          if (!o) throw Error(ErrorCode::SyntaxError, "orientation must be up or down");
          start.push_back({card_of(e.at("card")), *o});
        }
        auto view = sessions.start(std::move(available), std::move(start), body.value("name", "Untitled"));
        send(res, 200, view_json(view));
      });
    });
    server.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send(res, 200, view_json(sessions.get(req.matches[1].str()))); });
    });
    server.Post(R"(/sessions/([^/]+)/steps)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto id = req.matches[1].str();
        sessions.get(id);  // unknown sessions are 404 before the body is judged
        auto body = json::parse(req.body);
        auto focus_text = body.value("focus", "top");
        auto focus = parse_location(focus_text);
        if (!focus) throw Error(ErrorCode::SyntaxError, "unknown focus '" + focus_text + "'");
        Instruction ins{visible_action(body.at("action").get<std::string>()), *focus};
        send(res, 200, view_json(sessions.step(id, ins)));
      });
    });
    server.Delete(R"(/sessions/([^/]+)/steps/last)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send(res, 200, view_json(sessions.undo(req.matches[1].str()))); });
    });
    server.Get(R"(/sessions/([^/]+)/export)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto format = req.has_param("format") ? req.get_param_value("format") : "dsl";
        if (format != "dsl" && format != "triples") {
          throw Error(ErrorCode::SyntaxError, "format must be dsl or triples");
        }
        auto ex = sessions.export_session(req.matches[1].str());
        send(res, 200, {{"format", format}, {"text", format == "dsl" ? ex.dsl : ex.triples}});
      });
    });
  }
};

HttpApi::HttpApi(const Catalog& catalog, SessionStore& sessions) : impl_(std::make_unique<Impl>(catalog, sessions)) {}
HttpApi::~HttpApi() = default;

int HttpApi::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpApi::listen() {
  impl_->listening = true;
  if (!impl_->stop_requested) impl_->server.listen_after_bind();
  impl_->finished = true;
}

void HttpApi::stop() {
  impl_->stop_requested = true;
  // httplib ignores stop() until its accept loop runs, so wait for a
  // listen() already under way to get there.
  while (impl_->listening && !impl_->finished && !impl_->server.is_running()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  impl_->server.stop();
}

}  // namespace ocs
