#pragma once

// The ten schema-tree operations, their applicability conditions, their
// effect on schema trees and their bulk data semantics.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vcp/value.h"

namespace vcp {

/// Constant payload of `newconst`: an atom, the empty set or the nullary tuple.
struct EmptySetConst {
  friend bool operator==(const EmptySetConst&, const EmptySetConst&) = default;
};
struct UnitTupleConst {
  friend bool operator==(const UnitTupleConst&, const UnitTupleConst&) = default;
};
using Const = std::variant<Atom, EmptySetConst, UnitTupleConst>;

Value const_value(const Const& c);
ValueType const_type(const Const& c);

namespace op {

struct NewConst {
  Path node;
  std::string attr;
  Const value;
  friend bool operator==(const NewConst&, const NewConst&) = default;
};
struct InsertTuple {
  Path node;
  std::string attr;
  friend bool operator==(const InsertTuple&, const InsertTuple&) = default;
};
struct InsertSet {
  Path node;
  friend bool operator==(const InsertSet&, const InsertSet&) = default;
};
struct Rename {
  Path edge;
  std::string attr;
  friend bool operator==(const Rename&, const Rename&) = default;
};
struct EliminateSet {
  Path node;
  friend bool operator==(const EliminateSet&, const EliminateSet&) = default;
};
struct EliminateTuple {
  Path node;
  friend bool operator==(const EliminateTuple&, const EliminateTuple&) = default;
};
struct Delete {
  Path edge;
  friend bool operator==(const Delete&, const Delete&) = default;
};
/// Copies a tuple edge and its subtree into every tuple matching `dest`.
struct CopyTuple {
  Path src;
  Path dest;
  friend bool operator==(const CopyTuple&, const CopyTuple&) = default;
};
/// Adds the members of the set above `src` (a path ending in `*`) to every
/// set matching `dest`.
struct CopySet {
  Path src;
  Path dest;
  friend bool operator==(const CopySet&, const CopySet&) = default;
};
struct Select {
  Path node;
  std::string a;
  std::string b;
  friend bool operator==(const Select&, const Select&) = default;
};

}  // namespace op

using VcpOp = std::variant<op::NewConst, op::InsertTuple, op::InsertSet, op::Rename,
                           op::EliminateSet, op::EliminateTuple, op::Delete, op::CopyTuple,
                           op::CopySet, op::Select>;

struct VcpScript {
  std::vector<VcpOp> ops;

  /// Appends copy-then-delete. For a set edge `S/*` the deleted edge is `S`.
  void move(const Path& src, const Path& dest);

  friend bool operator==(const VcpScript&, const VcpScript&) = default;
};

/// Copy dispatch by edge kind: a source ending in `*` is a set copy.
VcpOp make_copy(Path src, Path dest);

/// Where an operation acts: the context node, and for copies the source and
/// destination paths relative to it.
struct CtxInfo {
  Path ctx;
  bool bulk = false;
  Path from;
  Path to;
};

/// Checks the applicability conditions against `t`; throws ConditionViolated
/// or NoSuchPath. Never modifies anything.
CtxInfo validate(const ValueType& t, const VcpOp& o);

ValueType validate_and_apply_schema(const ValueType& t, const VcpOp& o);

/// Replaces every data node matching the context path by the operation's
/// local result. Reads come from the pre-operation value of that node.
Value apply_data(const ValueType& t, const Value& v, const VcpOp& o);

struct ScriptResult {
  ValueType type;
  Value value;
};

/// Left fold over the script. Errors carry the failing op index.
ScriptResult run_script(const ValueType& t, const Value& v, const VcpScript& s);
/// Schema-only fold.
ValueType check_script(const ValueType& t, const VcpScript& s);

/// Rebuilds `v` replacing each node matched by `path` with `fn(node)`.
template <typename Fn>
Value rewrite_at(const Value& v, std::span<const Segment> path, Fn&& fn);

/// Schema analogue of rewrite_at. The path must resolve.
template <typename Fn>
ValueType rewrite_type_at(const ValueType& t, std::span<const Segment> path, Fn&& fn);

//---------------------------------------------------------------------------

template <typename Fn>
Value rewrite_at(const Value& v, std::span<const Segment> path, Fn&& fn) {
  if (path.empty()) return fn(v);
  const Segment& s = path.front();
  if (s.is_star()) {
    std::vector<Value> members;
    members.reserve(v.members().size());
    for (const auto& m : v.members()) members.push_back(rewrite_at(m, path.subspan(1), fn));
    return Value::set(std::move(members));
  }
  return v.replace_field(s.label, rewrite_at(v.at(s.label), path.subspan(1), fn));
}

template <typename Fn>
ValueType rewrite_type_at(const ValueType& t, std::span<const Segment> path, Fn&& fn) {
  if (path.empty()) return fn(t);
  const Segment& s = path.front();
  if (s.is_star()) return ValueType::set(rewrite_type_at(t.element(), path.subspan(1), fn));
  return t.replace_attr(s.label, rewrite_type_at(*t.find(s.label), path.subspan(1), fn));
}

}  // namespace vcp
