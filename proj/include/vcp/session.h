#pragma once

// In-memory interactive sessions: one schema-tree operation at a time, with
// per-step snapshots for preview and undo.

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "vcp/errors.h"
#include "vcp/monad.h"
#include "vcp/ops.h"

namespace vcp {

class UnknownSession : public Error {
 public:
  explicit UnknownSession(const std::string& id) : Error("unknown session '" + id + "'") {}
};

class EmptyHistory : public Error {
 public:
  EmptyHistory() : Error("nothing to undo") {}
};

class NonconformingData : public Error {
 public:
  using Error::Error;
};

struct Snapshot {
  ValueType schema;
  Value data;
};

class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;
  static constexpr std::size_t kDefaultPreviewLimit = 50;

  explicit SessionStore(Clock::duration idle_timeout = std::chrono::hours(1));

  /// Throws NonconformingData when `data` does not conform to `schema`.
  std::string create(ValueType schema, Value data,
                     std::size_t preview_limit = kDefaultPreviewLimit);

  Snapshot current(const std::string& id);
  std::size_t preview_limit(const std::string& id);

  /// Applies `ops` as one history step. Nothing changes when an op fails or
  /// when `dry_run` is set; the would-be snapshot is returned either way.
  Snapshot apply(const std::string& id, const std::vector<VcpOp>& ops, bool dry_run = false);

  /// Drops the last history step; throws EmptyHistory when there is none.
  Snapshot undo(const std::string& id);

  VcpScript script(const std::string& id);
  MaExpr compiled(const std::string& id);

  /// Drops sessions idle since before `now - idle_timeout`; returns how many.
  std::size_t expire(Clock::time_point now = Clock::now());
  std::size_t size() const;

 private:
  struct Step {
    std::vector<VcpOp> ops;
    Snapshot after;
  };
  struct Session {
    std::mutex mutex;
    Snapshot initial;
    std::size_t preview_limit;
    std::vector<Step> history;
    Clock::time_point last_used;

    const Snapshot& latest() const { return history.empty() ? initial : history.back().after; }
    VcpScript script() const;
  };

  /// The session, locked, with its idle clock reset.
  std::pair<std::shared_ptr<Session>, std::unique_lock<std::mutex>> open(const std::string& id);

  Clock::duration idle_timeout_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace vcp
