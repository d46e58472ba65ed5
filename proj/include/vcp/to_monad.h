#pragma once

// Compiles schema-tree operation scripts into monad-algebra expressions.

#include "vcp/monad.h"
#include "vcp/ops.h"

namespace vcp {

/// Expression with input type `t` and output type validate_and_apply_schema(t, o).
/// Throws the validation error when `o` does not apply to `t`.
MaExpr compile_op(const ValueType& t, const VcpOp& o);

/// One compiled operation with the schemas around it;
/// typecheck(expr, before) == after.
struct CompileUnit {
  ValueType before;
  VcpOp op;
  MaExpr expr;
  ValueType after;
};

/// Per-op compilation of a script. Errors carry the failing op index.
std::vector<CompileUnit> compile_units(const ValueType& t, const VcpScript& s);

/// Left-to-right composition of the per-op expressions; `id` for an empty script.
MaExpr compile_script(const ValueType& t, const VcpScript& s);

}  // namespace vcp
