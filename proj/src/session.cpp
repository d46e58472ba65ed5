#include "vcp/session.h"

#include <random>

#include "vcp/text.h"
#include "vcp/to_monad.h"

namespace vcp {

namespace {

std::string new_token() {
  static std::mutex m;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(m);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int word = 0; word < 2; ++word) {
    std::uint64_t bits = rng();
    for (int i = 0; i < 16; ++i, bits >>= 4) id += kHex[bits & 15];
  }
  return id;
}

}  // namespace

SessionStore::SessionStore(Clock::duration idle_timeout) : idle_timeout_(idle_timeout) {}

std::string SessionStore::create(ValueType schema, Value data, std::size_t preview_limit) {
  if (!conforms(data, schema))
    throw NonconformingData("data " + print_value(data) + " does not conform to " +
                            print_type(schema));
  auto s = std::make_shared<Session>();
  s->initial = Snapshot{std::move(schema), std::move(data)};
  s->preview_limit = preview_limit;
  s->last_used = Clock::now();

  expire();
  std::lock_guard lock(mutex_);
  std::string id;
  do id = new_token();
  while (sessions_.count(id));
  sessions_.emplace(id, std::move(s));
  return id;
}

std::pair<std::shared_ptr<SessionStore::Session>, std::unique_lock<std::mutex>>
SessionStore::open(const std::string& id) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw UnknownSession(id);
    s = it->second;
  }
  std::unique_lock lock(s->mutex);
  s->last_used = Clock::now();
  return {std::move(s), std::move(lock)};
}

Snapshot SessionStore::current(const std::string& id) {
  auto [s, lock] = open(id);
  return s->latest();
}

std::size_t SessionStore::preview_limit(const std::string& id) {
  auto [s, lock] = open(id);
  return s->preview_limit;
}

Snapshot SessionStore::apply(const std::string& id, const std::vector<VcpOp>& ops, bool dry_run) {
  auto [s, lock] = open(id);
  const Snapshot& from = s->latest();
  ScriptResult r = run_script(from.schema, from.data, VcpScript{ops});
  Snapshot next{std::move(r.type), std::move(r.value)};
  if (!dry_run) s->history.push_back(Step{ops, next});
  return next;
}

Snapshot SessionStore::undo(const std::string& id) {
  auto [s, lock] = open(id);
  if (s->history.empty()) throw EmptyHistory();
  s->history.pop_back();
  return s->latest();
}

VcpScript SessionStore::Session::script() const {
  VcpScript out;
  for (const auto& step : history) out.ops.insert(out.ops.end(), step.ops.begin(), step.ops.end());
  return out;
}

VcpScript SessionStore::script(const std::string& id) {
  auto [s, lock] = open(id);
  return s->script();
}

MaExpr SessionStore::compiled(const std::string& id) {
  auto [s, lock] = open(id);
  return compile_script(s->initial.schema, s->script());
}

std::size_t SessionStore::expire(Clock::time_point now) {
  std::lock_guard lock(mutex_);
  return std::erase_if(sessions_, [&](const auto& entry) {
    std::lock_guard session_lock(entry.second->mutex);
    return now - entry.second->last_used > idle_timeout_;
  });
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

}  // namespace vcp
