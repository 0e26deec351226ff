#include "ocs/session.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ocs/stack.hpp"

namespace ocs {

using nlohmann::json;

SessionStore::SessionStore(const Catalog& catalog, std::optional<std::filesystem::path> snapshot)
    : catalog_(catalog), snapshot_(std::move(snapshot)), rng_state_(std::random_device{}()) {
  rng_state_ = (rng_state_ << 32) ^ std::random_device{}();
  if (snapshot_ && std::filesystem::exists(*snapshot_)) load();
}

std::string SessionStore::new_id() {
  std::lock_guard lock(rng_mutex_);
  std::mt19937_64 rng(rng_state_++);
  std::ostringstream ss;
  ss << std::hex << rng();
  auto s = ss.str();
  return std::string(16 - std::min<std::size_t>(16, s.size()), '0') + s;
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session " + id);
  return it->second;
}

MethodDoc SessionStore::draft_of(const SessionView& v) const {
  MethodDoc doc;
  doc.name = v.name;
  doc.available = v.available;
  doc.start = to_linked(v.start);
  doc.instructions = to_linked(v.steps);
  return doc;
}

SessionView SessionStore::start(std::set<CardName> available, std::vector<StartEntry> start, std::string name) {
  std::set<CardName> seen;
  for (const auto& e : start) {
    if (!seen.insert(e.card).second) throw Error(ErrorCode::DuplicateStartCard, e.card.code() + " listed twice");
  }
  if (available.empty()) available = seen;
  for (const auto& c : seen) {
    if (!available.count(c)) throw Error(ErrorCode::CardNotAvailable, c.code() + " is not available");
  }
  auto session = std::make_shared<Session>();
  session->view.name = std::move(name);
  session->view.available = std::move(available);
  session->view.start = std::move(start);
  session->view.trace.states.push_back(init_state(session->view.start));
  std::string id;
  {
    std::unique_lock lock(map_mutex_);
    do {
      id = new_id();
    } while (sessions_.count(id));
    session->view.id = id;
    sessions_.emplace(id, session);
  }
  save();
  std::lock_guard lock(session->mutex);
  return session->view;
}

SessionView SessionStore::get(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return s->view;
}

SessionView SessionStore::step(const std::string& id, const Instruction& ins) {
  auto s = find(id);
  SessionView out;
  {
    std::lock_guard lock(s->mutex);
    StackState next;
    try {
      next = ocs::step(catalog_.taxonomy(), s->view.trace.final_state(), ins);
    } catch (const StepFailure& f) {
      throw StepRejectedError(StepError{s->view.steps.size() + 1, f.kind(), f.what()});
    }
    s->view.steps.push_back(ins);
    s->view.trace.states.push_back(std::move(next));
    out = s->view;
  }
  save();
  return out;
}

SessionView SessionStore::undo(const std::string& id) {
  auto s = find(id);
  SessionView out;
  {
    std::lock_guard lock(s->mutex);
    if (s->view.steps.empty()) throw Error(ErrorCode::NothingToUndo, "session " + id + " has no steps");
    s->view.steps.pop_back();
    auto r = run(catalog_.taxonomy(), s->view.trace.states.front(), s->view.steps);
    s->view.trace = std::move(r.trace);
    out = s->view;
  }
  save();
  return out;
}

MethodDoc SessionStore::draft(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return draft_of(s->view);
}

SessionExport SessionStore::export_session(const std::string& id) const {
  auto doc = draft(id);
  return {serialize_method(doc), export_triples(doc, catalog_.taxonomy())};
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(map_mutex_);
  return sessions_.size();
}

namespace {

json to_json(const SessionView& v) {
  json j;
  j["id"] = v.id;
  j["name"] = v.name;
  j["available"] = json::array();
  for (const auto& c : v.available) j["available"].push_back(c.code());
  j["start"] = json::array();
  for (const auto& e : v.start) j["start"].push_back({{"card", e.card.code()}, {"orientation", to_string(e.orientation)}});
  j["steps"] = json::array();
  for (const auto& ins : v.steps) {
    j["steps"].push_back({{"kind", ins.action.kind == ActionRef::Kind::Variant ? "variant" : "class"},
                          {"action", ins.action.id},
                          {"focus", format_location(ins.focus)}});
  }
  return j;
}

}  // namespace

void SessionStore::save() const {
  if (!snapshot_) return;
  std::lock_guard save_lock(save_mutex_);
  std::vector<std::shared_ptr<Session>> all;
  {
    std::shared_lock lock(map_mutex_);
    for (const auto& [id, s] : sessions_) all.push_back(s);
  }
  json doc;
  doc["sessions"] = json::array();
  for (const auto& s : all) {
    std::lock_guard lock(s->mutex);
    doc["sessions"].push_back(to_json(s->view));
  }
  auto tmp = *snapshot_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << doc.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, *snapshot_);
}

void SessionStore::load() {
  std::ifstream in(*snapshot_, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + snapshot_->string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, snapshot_->string() + ": " + e.what());
  }
  for (const auto& j : doc.at("sessions")) {
    auto s = std::make_shared<Session>();
    auto& v = s->view;
    v.id = j.at("id").get<std::string>();
    v.name = j.at("name").get<std::string>();
    for (const auto& c : j.at("available")) v.available.insert(*parse_card(c.get<std::string>()));
    for (const auto& e : j.at("start")) {
      v.start.push_back({*parse_card(e.at("card").get<std::string>()),
                         *parse_orientation(e.at("orientation").get<std::string>())});
    }
    for (const auto& st : j.at("steps")) {
      auto id = st.at("action").get<std::string>();
      auto ref = st.at("kind").get<std::string>() == "variant" ? ActionRef::of_variant(id) : ActionRef::of_class(id);
      auto focus = parse_location(st.at("focus").get<std::string>());
      if (!focus) throw Error(ErrorCode::Io, "bad focus in snapshot session " + v.id);
      v.steps.push_back({ref, *focus});
    }
    auto r = run(catalog_.taxonomy(), init_state(v.start), v.steps);
    if (!r.ok()) {
      throw Error(ErrorCode::Io, "snapshot session " + v.id + " no longer replays: " + r.error->detail);
    }
    v.trace = std::move(r.trace);
    sessions_.emplace(v.id, std::move(s));
  }
}

}  // namespace ocs
