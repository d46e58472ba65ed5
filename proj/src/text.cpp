#include "vcp/text.h"

#include <charconv>

#include "text_internal.h"

namespace vcp {

namespace detail {

ValueType parse_type(Lexer& lex) {
  const Token& t = lex.peek();
  if (t.kind == Tok::Ident && t.text == "dom") {
    lex.next();
    return ValueType::dom();
  }
  if (lex.accept(Tok::LBrace)) {
    if (lex.peek().kind == Tok::Ident && lex.peek().text == "_") {
      lex.next();
      lex.expect(Tok::RBrace, "'}'");
      return ValueType::bottom_set();
    }
    ValueType elem = parse_type(lex);
    lex.expect(Tok::RBrace, "'}'");
    return ValueType::set(std::move(elem));
  }
  if (lex.peek().kind == Tok::LAngle) {
    Token open = lex.next();
    std::vector<ValueType::Attr> attrs;
    if (!lex.accept(Tok::RAngle)) {
      do {
        std::string name = lex.expect_label();
        lex.expect(Tok::Colon, "':'");
        attrs.emplace_back(std::move(name), parse_type(lex));
      } while (lex.accept(Tok::Comma));
      lex.expect(Tok::RAngle, "'>'");
    }
    try {
      return ValueType::tuple(std::move(attrs));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), open.line, open.column);
    }
  }
  lex.fail("expected type");
}

Value parse_value(Lexer& lex) {
  const Token& t = lex.peek();
  if (t.kind == Tok::Int) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) throw ParseError("integer out of range", t.line, t.column);
    lex.next();
    return Value::integer(v);
  }
  if (t.kind == Tok::String) return Value::string(lex.next().text);
  if (lex.accept(Tok::LBrace)) {
    std::vector<Value> members;
    if (!lex.accept(Tok::RBrace)) {
      do {
        members.push_back(parse_value(lex));
      } while (lex.accept(Tok::Comma));
      lex.expect(Tok::RBrace, "'}'");
    }
    return Value::set(std::move(members));
  }
  if (lex.peek().kind == Tok::LAngle) {
    Token open = lex.next();
    std::vector<Value::Field> fields;
    if (!lex.accept(Tok::RAngle)) {
      do {
        std::string name = lex.expect_label();
        lex.expect(Tok::Colon, "':'");
        fields.emplace_back(std::move(name), parse_value(lex));
      } while (lex.accept(Tok::Comma));
      lex.expect(Tok::RAngle, "'>'");
    }
    try {
      return Value::tuple(std::move(fields));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), open.line, open.column);
    }
  }
  lex.fail("expected value");
}

}  // namespace detail

ValueType parse_type(std::string_view text) {
  detail::Lexer lex(text);
  ValueType t = detail::parse_type(lex);
  if (lex.peek().kind != detail::Tok::End) lex.fail("trailing input after type");
  return t;
}

Value parse_value(std::string_view text) {
  detail::Lexer lex(text);
  Value v = detail::parse_value(lex);
  if (lex.peek().kind != detail::Tok::End) lex.fail("trailing input after value");
  return v;
}

namespace {

void print_type_to(const ValueType& t, std::string& out) {
  switch (t.kind()) {
    case ValueType::Kind::Dom: out += "dom"; return;
    case ValueType::Kind::BottomSet: out += "{_}"; return;
    case ValueType::Kind::Set:
      out += '{';
      print_type_to(t.element(), out);
      out += '}';
      return;
    case ValueType::Kind::Tuple:
      out += '<';
      for (std::size_t i = 0; i < t.attrs().size(); ++i) {
        if (i) out += ',';
        out += t.attrs()[i].first;
        out += ':';
        print_type_to(t.attrs()[i].second, out);
      }
      out += '>';
      return;
  }
}

void print_string(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

void print_value_to(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Value::Kind::Atom: out += print_atom(v.as_atom()); return;
    case Value::Kind::Set:
      out += '{';
      for (std::size_t i = 0; i < v.members().size(); ++i) {
        if (i) out += ',';
        print_value_to(v.members()[i], out);
      }
      out += '}';
      return;
    case Value::Kind::Tuple:
      out += '<';
      for (std::size_t i = 0; i < v.fields().size(); ++i) {
        if (i) out += ',';
        out += v.fields()[i].first;
        out += ':';
        print_value_to(v.fields()[i].second, out);
      }
      out += '>';
      return;
  }
}

}  // namespace

std::string print_atom(const Atom& atom) {
  if (const auto* i = std::get_if<std::int64_t>(&atom)) return std::to_string(*i);
  std::string out;
  print_string(std::get<std::string>(atom), out);
  return out;
}

std::string print_type(const ValueType& type) {
  std::string out;
  print_type_to(type, out);
  return out;
}

std::string print_value(const Value& value) {
  std::string out;
  print_value_to(value, out);
  return out;
}

}  // namespace vcp
