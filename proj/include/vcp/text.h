#pragma once

// Canonical text for schema trees and data trees.
//
//   type  := "dom" | "{_}" | "{" type "}" | "<" [ident ":" type ("," ident ":" type)*] ">"
//   value := INT | STRING | "{" [value ("," value)*] "}" | "<" [ident ":" value ("," ...)*] ">"

#include <string>
#include <string_view>

#include "vcp/value.h"

namespace vcp {

ValueType parse_type(std::string_view text);
std::string print_type(const ValueType& type);

/// Duplicate set members collapse; the result is canonical.
Value parse_value(std::string_view text);
std::string print_value(const Value& value);

std::string print_atom(const Atom& atom);

}  // namespace vcp
