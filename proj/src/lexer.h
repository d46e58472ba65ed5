#pragma once

// Tokenizer shared by the type, value, expression and script parsers.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "vcp/errors.h"

namespace vcp::detail {

enum class Tok {
  End,
  Ident,   // [A-Za-z_][A-Za-z0-9_']*
  Int,     // -?[0-9]+
  String,  // "..." with \" \\ \n \t escapes
  LBrace,
  RBrace,
  LAngle,
  RAngle,
  LParen,
  RParen,
  Comma,
  Colon,
  Semi,
  LeftArrow,  // <-
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier name, digits, or decoded string
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src, std::size_t line = 1, std::size_t column = 1)
      : src_(src), line_(line), column_(column) {
    advance();
  }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  bool accept(Tok kind) {
    if (tok_.kind != kind) return false;
    advance();
    return true;
  }

  Token expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what);
    return next();
  }

  /// Attribute label: an identifier or a digit string (`1`, `2` as in pair tuples).
  std::string expect_label() {
    if (tok_.kind == Tok::Ident || (tok_.kind == Tok::Int && tok_.text[0] != '-'))
      return next().text;
    fail("expected attribute name");
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::string found = tok_.kind == Tok::End ? "end of input" : "'" + tok_.text + "'";
    throw ParseError(message + ", found " + found, tok_.line, tok_.column);
  }

 private:
  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char at(std::size_t off) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  static bool digit(char c) { return c >= '0' && c <= '9'; }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(cur()))) bump();
    tok_ = Token{Tok::End, "", line_, column_};
    if (pos_ >= src_.size()) return;
    char c = cur();
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && ident_char(cur())) bump();
      tok_.kind = Tok::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (digit(c) || (c == '-' && digit(at(1)))) {
      std::size_t start = pos_;
      bump();
      while (pos_ < src_.size() && digit(cur())) bump();
      tok_.kind = Tok::Int;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (c == '"') {
      bump();
      std::string out;
      while (true) {
        if (pos_ >= src_.size()) throw ParseError("unterminated string", tok_.line, tok_.column);
        char d = cur();
        bump();
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= src_.size()) throw ParseError("unterminated string", tok_.line, tok_.column);
          char e = cur();
          bump();
          switch (e) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default: throw ParseError("unknown escape", line_, column_ - 1);
          }
        } else {
          out += d;
        }
      }
      tok_.kind = Tok::String;
      tok_.text = std::move(out);
      return;
    }
    Tok kind;
    switch (c) {
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '<': kind = at(1) == '-' ? Tok::LeftArrow : Tok::LAngle; break;
      case '>': kind = Tok::RAngle; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case ':': kind = Tok::Colon; break;
      case ';': kind = Tok::Semi; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    }
    tok_.kind = kind;
    tok_.text = kind == Tok::LeftArrow ? "<-" : std::string(1, c);
    bump();
    if (kind == Tok::LeftArrow) bump();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
  Token tok_;
};

}  // namespace vcp::detail
