#pragma once

// Translates monad-algebra expressions into schema-tree operation scripts.

#include <string>

#include "vcp/monad.h"
#include "vcp/ops.h"

namespace vcp {

/// A script whose run on any value of type `input` equals eval(e, value).
/// Throws TypeError when `e` does not check against `input`.
VcpScript translate(const MaExpr& e, const ValueType& input);

/// `hint` if no attribute of `schema` carries it, otherwise `hint_2`, `hint_3`, ...
std::string fresh_attr(const ValueType& schema, const std::string& hint);

}  // namespace vcp
