#include "vcp/script_text.h"

#include <sstream>

#include "text_internal.h"
#include "vcp/errors.h"
#include "vcp/text.h"

namespace vcp {

namespace {

struct Word {
  std::string_view text;
  std::size_t column;
};

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  std::vector<VcpOp> parse() {
    Word cmd = word("operation");
    std::string_view c = cmd.text;
    std::vector<VcpOp> out;
    if (c == "newconst") {
      Path node = path();
      std::string attr = label();
      Const value = constant();
      out.push_back(op::NewConst{std::move(node), std::move(attr), std::move(value)});
    } else if (c == "instuple") {
      Path node = path();
      std::string attr = label();
      out.push_back(op::InsertTuple{std::move(node), std::move(attr)});
    } else if (c == "insset") {
      out.push_back(op::InsertSet{path()});
    } else if (c == "rename") {
      Path edge = path();
      std::string attr = label();
      out.push_back(op::Rename{std::move(edge), std::move(attr)});
    } else if (c == "elimset") {
      out.push_back(op::EliminateSet{path()});
    } else if (c == "elimtuple") {
      out.push_back(op::EliminateTuple{path()});
    } else if (c == "delete") {
      out.push_back(op::Delete{path()});
    } else if (c == "copy" || c == "move") {
      Path src = path();
      Word arrow = word("'->'");
      if (arrow.text != "->") fail("expected '->'", arrow.column);
      Path dest = path();
      if (c == "copy") {
        out.push_back(make_copy(std::move(src), std::move(dest)));
      } else {
        VcpScript s;
        s.move(src, dest);
        out = std::move(s.ops);
      }
    } else if (c == "select") {
      Path node = path();
      std::string a = label();
      std::string b = label();
      out.push_back(op::Select{std::move(node), std::move(a), std::move(b)});
    } else {
      fail("unknown operation '" + std::string(c) + "'", cmd.column);
    }
    skip_space();
    if (pos_ < line_.size()) fail("trailing input", pos_ + 1);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t column) const {
    throw ParseError(msg, line_no_, column);
  }

  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r'))
      ++pos_;
  }

  Word word(const char* what) {
    skip_space();
    if (pos_ >= line_.size()) fail(std::string("expected ") + what, pos_ + 1);
    std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ' && line_[pos_] != '\t' && line_[pos_] != '\r')
      ++pos_;
    return {line_.substr(start, pos_ - start), start + 1};
  }

  Path path() {
    Word w = word("path");
    try {
      return Path::parse(w.text);
    } catch (const ParseError& e) {
      fail("invalid path '" + std::string(w.text) + "'", w.column);
    }
  }

  std::string label() {
    Word w = word("attribute name");
    if (!is_valid_label(w.text))
      fail("invalid attribute name '" + std::string(w.text) + "'", w.column);
    return std::string(w.text);
  }

  Const constant() {
    skip_space();
    std::string_view rest = line_.substr(pos_);
    std::size_t column = pos_ + 1;
    detail::Lexer lex(rest, line_no_, column);
    const detail::Token& t = lex.peek();
    Const c;
    if (t.kind == detail::Tok::Int || t.kind == detail::Tok::String) {
      c = detail::parse_value(lex).as_atom();
    } else if (lex.accept(detail::Tok::LBrace)) {
      lex.expect(detail::Tok::RBrace, "'}' (only the empty set is a constant)");
      c = EmptySetConst{};
    } else if (lex.accept(detail::Tok::LAngle)) {
      lex.expect(detail::Tok::RAngle, "'>' (only the nullary tuple is a constant)");
      c = UnitTupleConst{};
    } else {
      lex.fail("expected constant");
    }
    if (lex.peek().kind != detail::Tok::End) lex.fail("trailing input after constant");
    pos_ = line_.size();
    return c;
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

/// Strips a `#` comment that is not inside a string literal.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

}  // namespace

VcpScript parse_script(std::string_view text) {
  VcpScript script;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++line_no;
    line = strip_comment(line);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      auto ops = LineParser(line, line_no).parse();
      script.ops.insert(script.ops.end(), ops.begin(), ops.end());
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return script;
}

std::string print_const(const Const& c) {
  if (const auto* a = std::get_if<Atom>(&c)) return print_atom(*a);
  if (std::holds_alternative<EmptySetConst>(c)) return "{}";
  return "<>";
}

std::string print_op(const VcpOp& o) {
  std::ostringstream out;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, op::NewConst>)
          out << "newconst " << x.node.to_string() << ' ' << x.attr << ' ' << print_const(x.value);
        else if constexpr (std::is_same_v<T, op::InsertTuple>)
          out << "instuple " << x.node.to_string() << ' ' << x.attr;
        else if constexpr (std::is_same_v<T, op::InsertSet>)
          out << "insset " << x.node.to_string();
        else if constexpr (std::is_same_v<T, op::Rename>)
          out << "rename " << x.edge.to_string() << ' ' << x.attr;
        else if constexpr (std::is_same_v<T, op::EliminateSet>)
          out << "elimset " << x.node.to_string();
        else if constexpr (std::is_same_v<T, op::EliminateTuple>)
          out << "elimtuple " << x.node.to_string();
        else if constexpr (std::is_same_v<T, op::Delete>)
          out << "delete " << x.edge.to_string();
        else if constexpr (std::is_same_v<T, op::CopyTuple> || std::is_same_v<T, op::CopySet>)
          out << "copy " << x.src.to_string() << " -> " << x.dest.to_string();
        else
          out << "select " << x.node.to_string() << ' ' << x.a << ' ' << x.b;
      },
      o);
  return out.str();
}

std::string print_script(const VcpScript& script) {
  std::string out;
  for (const auto& o : script.ops) {
    out += print_op(o);
    out += '\n';
  }
  return out;
}

}  // namespace vcp
