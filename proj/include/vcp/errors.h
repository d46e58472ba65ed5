#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace vcp {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  /// Index of the script operation that failed, when raised from run_script.
  std::optional<std::size_t> op_index() const { return op_index_; }
  void set_op_index(std::size_t index) { op_index_ = index; }

 private:
  std::optional<std::size_t> op_index_;
};

/// Malformed text in one of the textual formats. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A path segment does not match the schema tree.
class NoSuchPath : public Error {
 public:
  NoSuchPath(const std::string& path, const std::string& detail)
      : Error("no such path '" + path + "': " + detail), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Applicability conditions of the schema-tree operations.
enum class Reason {
  NotATupleNode,
  NotASetNode,
  NotATupleEdge,
  NotASetEdge,
  AttrExists,
  ParentNotSet,
  ArityNotOne,
  PathNotStarFree,
  NotExactlyOneStar,
  ElementTypesDiffer,
  SelectNeedsTupleChild,
  SelectAttrMissing,
};

/// Stable mnemonic used in CLI messages and JSON error bodies.
const char* reason_code(Reason reason);

class ConditionViolated : public Error {
 public:
  ConditionViolated(Reason reason, std::string path, const std::string& detail)
      : Error(std::string(reason_code(reason)) + " at '" + path + "': " + detail),
        reason_(reason),
        path_(std::move(path)) {}

  Reason reason() const { return reason_; }
  const std::string& path() const { return path_; }

 private:
  Reason reason_;
  std::string path_;
};

/// Monad-algebra typing failure.
class TypeError : public Error {
 public:
  TypeError(const std::string& subexpr, const std::string& expected, const std::string& found)
      : Error("type error in '" + subexpr + "': expected " + expected + ", found " + found) {}
};

}  // namespace vcp
