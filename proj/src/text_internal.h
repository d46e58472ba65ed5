#pragma once

#include "lexer.h"
#include "vcp/value.h"

namespace vcp::detail {

ValueType parse_type(Lexer& lex);
Value parse_value(Lexer& lex);

}  // namespace vcp::detail
