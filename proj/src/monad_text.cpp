#include <stdexcept>

#include "text_internal.h"
#include "vcp/monad.h"
#include "vcp/script_text.h"

namespace vcp {

namespace {

using detail::Lexer;
using detail::Tok;

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : lex_(text) {}

  MaExpr parse() {
    MaExpr e = expr();
    if (lex_.peek().kind != Tok::End) lex_.fail("expected ';' or end of expression");
    return e;
  }

 private:
  MaExpr expr() {
    std::vector<MaExpr> parts{term()};
    while (lex_.accept(Tok::Semi)) parts.push_back(term());
    return MaExpr::compose(std::move(parts));
  }

  void open() { lex_.expect(Tok::LParen, "'('"); }
  void close() { lex_.expect(Tok::RParen, "')'"); }

  MaExpr term() {
    const detail::Token& t = lex_.peek();
    if (t.kind != Tok::Ident) lex_.fail("expected expression");
    std::string kw = t.text;
    if (kw == "id") return lex_.next(), MaExpr::id();
    if (kw == "sing") return lex_.next(), MaExpr::sing();
    if (kw == "flatten") return lex_.next(), MaExpr::flatten();
    if (kw == "const") {
      lex_.next();
      open();
      Const c = literal();
      close();
      return MaExpr::constant(std::move(c));
    }
    if (kw == "map") {
      lex_.next();
      open();
      MaExpr body = expr();
      close();
      return MaExpr::map(std::move(body));
    }
    if (kw == "pairwith" || kw == "proj") {
      lex_.next();
      open();
      std::string a = lex_.expect_label();
      close();
      return kw == "proj" ? MaExpr::proj(std::move(a)) : MaExpr::pairwith(std::move(a));
    }
    if (kw == "tuple") {
      detail::Token start = lex_.next();
      open();
      std::vector<MaExpr::Field> fields;
      if (!lex_.accept(Tok::RParen)) {
        do {
          std::string name = lex_.expect_label();
          lex_.expect(Tok::Colon, "':'");
          fields.emplace_back(std::move(name), expr());
        } while (lex_.accept(Tok::Comma));
        close();
      }
      try {
        return MaExpr::tuple(std::move(fields));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), start.line, start.column);
      }
    }
    if (kw == "union" || kw == "diff" || kw == "intersect") {
      lex_.next();
      open();
      MaExpr f = expr();
      lex_.expect(Tok::Comma, "','");
      MaExpr g = expr();
      close();
      if (kw == "union") return MaExpr::set_union(std::move(f), std::move(g));
      if (kw == "diff") return MaExpr::diff(std::move(f), std::move(g));
      return MaExpr::intersect(std::move(f), std::move(g));
    }
    if (kw == "select") {
      lex_.next();
      open();
      std::string a = lex_.expect_label();
      lex_.expect(Tok::Comma, "','");
      std::string b = lex_.expect_label();
      close();
      return MaExpr::select(std::move(a), std::move(b));
    }
    if (kw == "nest") {
      lex_.next();
      open();
      std::string attr = lex_.expect_label();
      lex_.expect(Tok::LeftArrow, "'<-'");
      std::vector<std::string> grouped{lex_.expect_label()};
      while (lex_.peek().kind != Tok::RParen) grouped.push_back(lex_.expect_label());
      close();
      return MaExpr::nest(std::move(attr), std::move(grouped));
    }
    lex_.fail("unknown operator");
  }

  Const literal() {
    const detail::Token& t = lex_.peek();
    if (t.kind == Tok::Int || t.kind == Tok::String) return detail::parse_value(lex_).as_atom();
    if (lex_.accept(Tok::LBrace)) {
      lex_.expect(Tok::RBrace, "'}'");
      return EmptySetConst{};
    }
    if (lex_.accept(Tok::LAngle)) {
      lex_.expect(Tok::RAngle, "'>'");
      return UnitTupleConst{};
    }
    lex_.fail("expected constant");
  }

  Lexer lex_;
};

void print_to(const MaExpr& e, std::string& out) {
  using K = MaExpr::Kind;
  auto binary = [&](const char* name) {
    out += name;
    out += '(';
    print_to(e.left(), out);
    out += ", ";
    print_to(e.right(), out);
    out += ')';
  };
  switch (e.kind()) {
    case K::Id: out += "id"; return;
    case K::Comp:
      for (std::size_t i = 0; i < e.parts().size(); ++i) {
        if (i) out += "; ";
        print_to(e.parts()[i], out);
      }
      return;
    case K::Const: out += "const(" + print_const(e.constant_value()) + ")"; return;
    case K::Sing: out += "sing"; return;
    case K::Map:
      out += "map(";
      print_to(e.body(), out);
      out += ')';
      return;
    case K::Flatten: out += "flatten"; return;
    case K::Pairwith: out += "pairwith(" + e.attr() + ")"; return;
    case K::Tuple:
      out += "tuple(";
      for (std::size_t i = 0; i < e.fields().size(); ++i) {
        if (i) out += ", ";
        out += e.fields()[i].first;
        out += ": ";
        print_to(e.fields()[i].second, out);
      }
      out += ')';
      return;
    case K::Proj: out += "proj(" + e.attr() + ")"; return;
    case K::Union: binary("union"); return;
    case K::Select: out += "select(" + e.attr() + ", " + e.attr2() + ")"; return;
    case K::Diff: binary("diff"); return;
    case K::Intersect: binary("intersect"); return;
    case K::Nest:
      out += "nest(" + e.attr() + " <-";
      for (const auto& g : e.grouped()) out += " " + g;
      out += ')';
      return;
  }
}

}  // namespace

MaExpr parse_ma(std::string_view text) { return ExprParser(text).parse(); }

std::string print_ma(const MaExpr& e) {
  std::string out;
  print_to(e, out);
  return out;
}

}  // namespace vcp
