#pragma once

// JSON-over-HTTP front end for SessionStore.
//
//   POST /sessions                  {"schema": text, "data": text, "previewLimit"?: n} -> {"id"}
//   GET  /sessions/{id}/schema
//   POST /sessions/{id}/ops         {"op": {...}}; ?validate=true checks without applying
//   POST /sessions/{id}/undo
//   GET  /sessions/{id}/preview
//   GET  /sessions/{id}/script      text/plain
//   GET  /sessions/{id}/compiled    text/plain
//
// Errors are {"code", "reason", "path", "message"} with status 400, 404 or 409.

#include <cstddef>

#include <httplib.h>
#include <json.hpp>

#include "vcp/ops.h"
#include "vcp/session.h"

namespace vcp {

/// `{"kind": "copy", "src": "authors", "dest": "books/*"}` and so on; kinds are
/// the script mnemonics. `move` yields two ops. newconst takes "const" as a
/// JSON integer, string, `[]` (empty set) or `{}` (empty tuple).
/// Throws std::invalid_argument on malformed input.
std::vector<VcpOp> ops_from_json(const nlohmann::json& j);
nlohmann::json op_to_json(const VcpOp& op);

nlohmann::json type_to_json(const ValueType& t);
/// Sets list at most `limit` members and carry their full size and a
/// `truncated` flag.
nlohmann::json value_to_json(const Value& v, std::size_t limit);

void mount_api(httplib::Server& server, SessionStore& store);

}  // namespace vcp
