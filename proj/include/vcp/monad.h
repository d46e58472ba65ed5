#pragma once

// Monad algebra with union and selection, plus native difference,
// intersection and nest.
//
// Composition is diagrammatic: `f; g` maps x to g(f(x)).

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vcp/ops.h"
#include "vcp/value.h"

namespace vcp {

class MaExpr {
 public:
  enum class Kind : std::uint8_t {
    Id,
    Comp,
    Const,
    Sing,
    Map,
    Flatten,
    Pairwith,
    Tuple,
    Proj,
    Union,
    Select,
    Diff,
    Intersect,
    Nest,
  };
  using Field = std::pair<std::string, MaExpr>;

  /// Defaults to `id`.
  MaExpr();

  static MaExpr id();
  /// Flattens nested compositions and drops `id` parts; one part yields that part.
  static MaExpr compose(std::vector<MaExpr> parts);
  static MaExpr compose(MaExpr f, MaExpr g) { return compose({std::move(f), std::move(g)}); }
  static MaExpr constant(Const c);
  static MaExpr sing();
  static MaExpr map(MaExpr body);
  static MaExpr flatten();
  static MaExpr pairwith(std::string attr);
  /// Throws std::invalid_argument on duplicate attribute names.
  static MaExpr tuple(std::vector<Field> fields);
  static MaExpr proj(std::string attr);
  static MaExpr set_union(MaExpr f, MaExpr g);
  static MaExpr select(std::string a, std::string b);
  static MaExpr diff(MaExpr f, MaExpr g);
  static MaExpr intersect(MaExpr f, MaExpr g);
  /// Groups the `grouped` attributes into a set-valued attribute `attr`.
  static MaExpr nest(std::string attr, std::vector<std::string> grouped);

  Kind kind() const;

  /// Comp: the composed parts, in application order.
  std::span<const MaExpr> parts() const;
  /// Map: the body.
  const MaExpr& body() const;
  /// Union, Diff, Intersect operands.
  const MaExpr& left() const;
  const MaExpr& right() const;
  /// Tuple: fields sorted by name.
  std::span<const Field> fields() const;
  /// Pairwith/Proj/Nest attribute, Select's first attribute.
  const std::string& attr() const;
  /// Select's second attribute.
  const std::string& attr2() const;
  /// Nest: grouped attributes, sorted.
  std::span<const std::string> grouped() const;
  const Const& constant_value() const;

  friend bool operator==(const MaExpr& a, const MaExpr& b);

 private:
  struct Node;
  explicit MaExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Output type for the given input type; throws TypeError.
ValueType typecheck(const MaExpr& e, const ValueType& input);

/// Denotational semantics; the input must conform to a type the expression
/// checks against.
Value eval(const MaExpr& e, const Value& v);

/// True when no selection, difference, intersection or nest occurs.
bool is_positive(const MaExpr& e);

//   e   := "id" | e ";" e | "const(" lit ")" | "sing" | "map(" e ")" | "flatten"
//        | "pairwith(" ident ")" | "tuple(" [ident ":" e ("," ident ":" e)*] ")"
//        | "proj(" ident ")" | "union(" e "," e ")" | "select(" ident "," ident ")"
//        | "diff(" e "," e ")" | "intersect(" e "," e ")" | "nest(" ident "<-" ident+ ")"
//   lit := INT | STRING | "{}" | "<>"
MaExpr parse_ma(std::string_view text);
std::string print_ma(const MaExpr& e);

}  // namespace vcp
