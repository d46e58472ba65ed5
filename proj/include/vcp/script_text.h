#pragma once

// Line-oriented script format, one operation per line, `#` starts a comment:
//
//   newconst <node> <attr> <const>      const := INT | STRING | {} | <>
//   instuple <node> <attr>              insset <node>
//   rename <edge> <attr>                elimset <node>
//   elimtuple <node>                    delete <edge>
//   copy <edge> -> <node>               move <edge> -> <node>
//   select <node> <attrA> <attrB>

#include <string>
#include <string_view>

#include "vcp/ops.h"

namespace vcp {

VcpScript parse_script(std::string_view text);
/// One line per op, no trailing comments; `move` is printed as its expansion.
std::string print_script(const VcpScript& script);
std::string print_op(const VcpOp& op);
std::string print_const(const Const& c);

}  // namespace vcp
