#include "vcp/to_script.h"

#include <algorithm>
#include <set>

namespace vcp {

namespace {

Path at_child(const Path& at, std::string_view label) {
  return at.child(Segment::attr(std::string(label)));
}

Path under(const Path& at, std::initializer_list<std::string_view> labels) {
  Path p = at;
  for (auto l : labels) p = p.child(Segment{std::string(l)});
  return p;
}

class Translator {
 public:
  VcpScript take() { return std::move(out_); }

  /// Emits ops rewriting the value at `at` (of type `in`) into e(value).
  void emit(const MaExpr& e, const ValueType& in, const Path& at) {
    ValueType result = typecheck(e, in);
    if (result.is_bottom()) {
      // Every value of type {_} is the empty set.
      if (!in.is_bottom()) constant(at, EmptySetConst{});
      return;
    }
    switch (e.kind()) {
      case MaExpr::Kind::Id:
        return;
      case MaExpr::Kind::Comp: {
        ValueType cur = in;
        for (const auto& part : e.parts()) {
          emit(part, cur, at);
          cur = typecheck(part, cur);
        }
        return;
      }
      case MaExpr::Kind::Const:
        constant(at, e.constant_value());
        return;
      case MaExpr::Kind::Sing:
        push(op::InsertSet{at});
        return;
      case MaExpr::Kind::Map:
        emit(e.body(), in.element(), at.child(Segment::star()));
        return;
      case MaExpr::Kind::Flatten:
        push(op::EliminateSet{at.child(Segment::star())});
        return;
      case MaExpr::Kind::Pairwith:
        pairwith(in, at, e.attr());
        return;
      case MaExpr::Kind::Tuple:
        tuple(e, in, at);
        return;
      case MaExpr::Kind::Proj:
        for (const auto& [name, _] : in.attrs())
          if (name != e.attr()) push(op::Delete{at_child(at, name)});
        push(op::EliminateTuple{at});
        return;
      case MaExpr::Kind::Union:
        set_union(e, in, at);
        return;
      case MaExpr::Kind::Select:
        push(op::Select{at, e.attr(), e.attr2()});
        return;
      case MaExpr::Kind::Diff:
        diff(e.left(), e.right(), in, at);
        return;
      case MaExpr::Kind::Intersect:
        emit(MaExpr::diff(e.left(), MaExpr::diff(e.left(), e.right())), in, at);
        return;
      case MaExpr::Kind::Nest:
        nest(e, in, at);
        return;
    }
  }

 private:
  void push(VcpOp o) { out_.ops.push_back(std::move(o)); }

  static std::string fresh(std::set<std::string>& taken, const std::string& hint) {
    std::string name = hint;
    for (int i = 2; taken.count(name); ++i) name = hint + "_" + std::to_string(i);
    taken.insert(name);
    return name;
  }

  /// Replaces the node by a constant: wrap, attach, drop the original, unwrap.
  void constant(const Path& at, const Const& c) {
    push(op::InsertTuple{at, "A"});
    push(op::NewConst{at, "B", c});
    push(op::Delete{at_child(at, "A")});
    push(op::EliminateTuple{at});
  }

  /// Replaces the node x by <n1: x, ..., nk: x>; `names` must be sorted.
  void duplicate(const Path& at, const std::vector<std::string>& names) {
    push(op::InsertTuple{at, names[0]});
    if (names.size() == 1) return;
    Path first = at_child(at, names[0]);
    push(op::InsertTuple{first, names[1]});
    for (std::size_t i = 1; i < names.size(); ++i) {
      push(op::CopyTuple{at_child(first, names[i]), at});
      if (i + 1 < names.size()) push(op::Rename{at_child(first, names[i]), names[i + 1]});
    }
    push(op::EliminateTuple{first});
  }

  void pairwith(const ValueType& in, const Path& at, const std::string& attr) {
    Path star = under(at, {attr, "*"});
    push(op::InsertTuple{star, attr});
    for (const auto& [name, _] : in.attrs()) {
      if (name == attr) continue;
      push(op::CopyTuple{at_child(at, name), star});
      push(op::Delete{at_child(at, name)});
    }
    push(op::EliminateTuple{at});
  }

  void tuple(const MaExpr& e, const ValueType& in, const Path& at) {
    if (e.fields().empty()) {
      constant(at, UnitTupleConst{});
      return;
    }
    std::vector<std::string> names;
    for (const auto& [name, _] : e.fields()) names.push_back(name);
    duplicate(at, names);
    for (const auto& [name, f] : e.fields()) emit(f, in, at_child(at, name));
  }

  void set_union(const MaExpr& e, const ValueType& in, const Path& at) {
    if (typecheck(e.right(), in).is_bottom()) return emit(e.left(), in, at);
    if (typecheck(e.left(), in).is_bottom()) return emit(e.right(), in, at);
    const std::string l = "L", r = "R";
    duplicate(at, {l, r});
    emit(e.left(), in, at_child(at, l));
    emit(e.right(), in, at_child(at, r));
    push(op::CopySet{under(at, {r, "*"}), at_child(at, l)});
    push(op::Delete{at_child(at, r)});
    push(op::EliminateTuple{at});
  }

  /// Tags each member of both sides with a copy of itself, moves the right
  /// side into every left member, and keeps left members with no equal tag.
  void diff(const MaExpr& f, const MaExpr& g, const ValueType& in, const Path& at) {
    if (typecheck(g, in).is_bottom()) return emit(f, in, at);
    // All labels below name attributes of tuples created here.
    const std::string r = "R", s = "S", a = "A", a2 = "A'", s2 = "S'";
    duplicate(at, {r, s});
    emit(f, in, at_child(at, r));
    emit(g, in, at_child(at, s));
    Path rs = under(at, {r, "*"});
    push(op::InsertTuple{rs, a});
    push(op::InsertTuple{under(at, {s, "*"}), a});
    push(op::CopyTuple{at_child(at, s), rs});
    push(op::Delete{at_child(at, s)});
    push(op::Rename{under(rs, {s, "*", a}), a2});
    push(op::CopyTuple{at_child(rs, a), under(rs, {s, "*"})});
    push(op::EliminateTuple{at});
    Path star = at.child(Segment::star());
    push(op::NewConst{star, s2, EmptySetConst{}});
    push(op::Select{at_child(star, s), a, a2});
    push(op::Select{at, s, s2});
    push(op::Delete{at_child(star, s)});
    push(op::Delete{at_child(star, s2)});
    push(op::EliminateTuple{star});
  }

  /// Pairs each member with the whole input set, keeps the grouped
  /// attributes of the members agreeing on the remaining keys.
  void nest(const MaExpr& e, const ValueType& in, const Path& at) {
    const std::string& c = e.attr();
    std::vector<std::string> keys;
    for (const auto& [name, _] : in.element().attrs())
      if (!std::binary_search(e.grouped().begin(), e.grouped().end(), name)) keys.push_back(name);
    auto names = attribute_names(in);
    std::set<std::string> taken(names.begin(), names.end());
    taken.insert(c);
    std::string r = fresh(taken, "R");
    std::vector<std::string> primed;
    for (const auto& k : keys) primed.push_back(fresh(taken, k + "'"));

    push(op::InsertTuple{at, r});
    Path rstar = under(at, {r, "*"});
    push(op::CopyTuple{at_child(at, r), rstar});
    for (const auto& g : e.grouped()) push(op::Delete{at_child(rstar, g)});
    push(op::Rename{at_child(rstar, r), c});
    for (std::size_t i = 0; i < keys.size(); ++i)
      push(op::Rename{under(rstar, {c, "*", keys[i]}), primed[i]});
    push(op::EliminateTuple{at});
    Path star = at.child(Segment::star());
    Path inner = under(star, {c, "*"});
    for (const auto& k : keys) push(op::CopyTuple{at_child(star, k), inner});
    for (std::size_t i = 0; i < keys.size(); ++i)
      push(op::Select{at_child(star, c), keys[i], primed[i]});
    for (std::size_t i = 0; i < keys.size(); ++i) {
      push(op::Delete{at_child(inner, keys[i])});
      push(op::Delete{at_child(inner, primed[i])});
    }
  }

  VcpScript out_;
};

}  // namespace

VcpScript translate(const MaExpr& e, const ValueType& input) {
  Translator t;
  t.emit(e, input, Path{});
  return t.take();
}

std::string fresh_attr(const ValueType& schema, const std::string& hint) {
  auto names = attribute_names(schema);
  std::string name = hint;
  for (int i = 2; std::find(names.begin(), names.end(), name) != names.end(); ++i)
    name = hint + "_" + std::to_string(i);
  return name;
}

}  // namespace vcp
