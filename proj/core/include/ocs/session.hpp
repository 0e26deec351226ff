#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ocs/catalog.hpp"
#include "ocs/simulator.hpp"

namespace ocs {

/// A rejected session step: the simulator's report, with the draft untouched.
class StepRejectedError : public Error {
 public:
  explicit StepRejectedError(StepError e)
      : Error(ErrorCode::StepRejected, std::string(to_string(e.kind)) + ": " + e.detail), error_(std::move(e)) {}
  const StepError& step_error() const noexcept { return error_; }

 private:
  StepError error_;
};

struct SessionView {
  std::string id;
  std::string name;
  std::set<CardName> available;
  std::vector<StartEntry> start;
  std::vector<Instruction> steps;
  Trace trace;  // steps.size() + 1 states
};

struct SessionExport {
  std::string dsl;
  std::string triples;
};

/// Transcription drafts keyed by opaque ids. Operations on one session are
/// serialized by its own mutex; the map itself is guarded separately, so
/// distinct sessions proceed in parallel. With a snapshot path, the store
/// is rewritten after every mutation and reloaded on construction.
class SessionStore {
 public:
  explicit SessionStore(const Catalog& catalog, std::optional<std::filesystem::path> snapshot = std::nullopt);

  /// Empty `available` means exactly the starting cards. Throws
  /// EmptyStartState, DuplicateStartCard, CardNotAvailable,
  /// InvariantViolation.
  SessionView start(std::set<CardName> available, std::vector<StartEntry> start, std::string name = "Untitled");

  /// All throw UnknownSession.
  SessionView get(const std::string& id) const;
  /// Throws StepRejectedError, UnknownAction.
  SessionView step(const std::string& id, const Instruction& ins);
  /// Throws NothingToUndo.
  SessionView undo(const std::string& id);
  SessionExport export_session(const std::string& id) const;
  MethodDoc draft(const std::string& id) const;

  std::size_t size() const;

 private:
  struct Session {
    mutable std::mutex mutex;
    SessionView view;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  MethodDoc draft_of(const SessionView& v) const;
  std::string new_id();
  void save() const;
  void load();

  const Catalog& catalog_;
  std::optional<std::filesystem::path> snapshot_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  mutable std::mutex save_mutex_;
  std::mutex rng_mutex_;
  std::uint64_t rng_state_;
};

}  // namespace ocs
