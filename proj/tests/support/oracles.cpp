#include "oracles.h"

#include <algorithm>
#include <map>

namespace vcp::testing {

namespace {

std::size_t column(const Relation& r, const std::string& a) {
  return static_cast<std::size_t>(std::find(r.attrs.begin(), r.attrs.end(), a) - r.attrs.begin());
}

const ValueType* walk(const ValueType& t, const Path& p) {
  const ValueType* cur = &t;
  for (const auto& s : p.segments()) {
    if (s.label == "*") {
      if (cur->kind() != ValueType::Kind::Set) return nullptr;
      cur = &cur->element();
    } else {
      if (cur->kind() != ValueType::Kind::Tuple) return nullptr;
      const ValueType* next = nullptr;
      for (const auto& [name, sub] : cur->attrs())
        if (name == s.label) next = &sub;
      if (!next) return nullptr;
      cur = next;
    }
  }
  return cur;
}

bool has_attr(const ValueType& tuple, const std::string& a) {
  for (const auto& [name, _] : tuple.attrs())
    if (name == a) return true;
  return false;
}

bool setlike(const ValueType* t) {
  return t && (t->kind() == ValueType::Kind::Set || t->kind() == ValueType::Kind::BottomSet);
}
bool tuple(const ValueType* t) { return t && t->kind() == ValueType::Kind::Tuple; }

bool compatible(const ValueType& a, const ValueType& b) {
  using K = ValueType::Kind;
  if (a.kind() == K::BottomSet) return b.kind() == K::BottomSet || b.kind() == K::Set;
  if (b.kind() == K::BottomSet) return a.kind() == K::Set;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == K::Dom) return true;
  if (a.kind() == K::Set) return compatible(a.element(), b.element());
  if (a.attrs().size() != b.attrs().size()) return false;
  for (std::size_t i = 0; i < a.attrs().size(); ++i)
    if (a.attrs()[i].first != b.attrs()[i].first ||
        !compatible(a.attrs()[i].second, b.attrs()[i].second))
      return false;
  return true;
}

/// Tuple edge: nonempty path ending in a label whose parent is a tuple node.
bool tuple_edge(const ValueType& t, const Path& e) {
  return !e.empty() && e.back().label != "*" && tuple(walk(t, e.parent())) && walk(t, e);
}

std::size_t stars_after(const Path& p, std::size_t from) {
  std::size_t n = 0;
  for (std::size_t i = from; i < p.size(); ++i) n += p[i].label == "*";
  return n;
}

std::size_t lcp(const Path& a, const Path& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

struct Check {
  const ValueType& t;
  using R = std::optional<std::string>;

  R operator()(const op::NewConst& o) const {
    const ValueType* n = walk(t, o.node);
    if (!tuple(n)) return "newconst target is not a tuple node";
    if (has_attr(*n, o.attr)) return "label exists";
    return std::nullopt;
  }
  R operator()(const op::InsertTuple& o) const {
    return walk(t, o.node) ? R{} : R{"no such node"};
  }
  R operator()(const op::InsertSet& o) const {
    return walk(t, o.node) ? R{} : R{"no such node"};
  }
  R operator()(const op::Rename& o) const {
    if (!tuple_edge(t, o.edge)) return "not a tuple edge";
    if (o.attr != o.edge.back().label && has_attr(*walk(t, o.edge.parent()), o.attr))
      return "label exists";
    return std::nullopt;
  }
  R operator()(const op::EliminateSet& o) const {
    if (!setlike(walk(t, o.node))) return "not a set node";
    if (o.node.empty() || o.node.back().label != "*") return "parent is not a set";
    const ValueType* parent = walk(t, o.node.parent());
    if (!parent || parent->kind() != ValueType::Kind::Set) return "parent is not a set";
    return std::nullopt;
  }
  R operator()(const op::EliminateTuple& o) const {
    const ValueType* n = walk(t, o.node);
    if (!tuple(n) || n->attrs().size() != 1) return "not a unary tuple node";
    return std::nullopt;
  }
  R operator()(const op::Delete& o) const {
    return tuple_edge(t, o.edge) ? R{} : R{"not a tuple edge"};
  }
  R operator()(const op::CopyTuple& o) const {
    if (!tuple_edge(t, o.src)) return "source is not a tuple edge";
    const ValueType* dest = walk(t, o.dest);
    if (!tuple(dest)) return "destination is not a tuple node";
    if (has_attr(*dest, o.src.back().label)) return "label exists";
    if (stars_after(o.src, lcp(o.dest, o.src.parent())) != 0) return "source path crosses a set";
    return std::nullopt;
  }
  R operator()(const op::CopySet& o) const {
    if (o.src.empty() || o.src.back().label != "*" || !setlike(walk(t, o.src.parent())))
      return "source is not a set edge";
    const ValueType* source = walk(t, o.src.parent());
    const ValueType* dest = walk(t, o.dest);
    if (!setlike(dest)) return "destination is not a set node";
    if (stars_after(o.src, lcp(o.dest, o.src.parent())) != 1)
      return "source path must cross exactly one set";
    if (!compatible(*source, *dest)) return "element types differ";
    return std::nullopt;
  }
  R operator()(const op::Select& o) const {
    const ValueType* n = walk(t, o.node);
    if (!n || n->kind() != ValueType::Kind::Set || !tuple(&n->element()))
      return "not a set of tuples";
    if (!has_attr(n->element(), o.a) || !has_attr(n->element(), o.b)) return "missing attribute";
    return std::nullopt;
  }
};

}  // namespace

Relation to_relation(const Value& v, const std::vector<std::string>& attrs) {
  Relation r{attrs, {}};
  for (const auto& m : v.members()) {
    std::vector<Atom> row;
    for (const auto& a : attrs) row.push_back(m.at(a).as_atom());
    r.rows.insert(std::move(row));
  }
  return r;
}

Value to_value(const Relation& r) {
  std::vector<Value> members;
  for (const auto& row : r.rows) {
    std::vector<Value::Field> fields;
    for (std::size_t i = 0; i < r.attrs.size(); ++i)
      fields.emplace_back(r.attrs[i], Value::atom(row[i]));
    members.push_back(Value::tuple(std::move(fields)));
  }
  return Value::set(std::move(members));
}

Relation ra_select_eq(const Relation& r, const std::string& a, const std::string& b) {
  Relation out{r.attrs, {}};
  std::size_t i = column(r, a), j = column(r, b);
  for (const auto& row : r.rows)
    if (row[i] == row[j]) out.rows.insert(row);
  return out;
}

Relation ra_project(const Relation& r, const std::vector<std::string>& keep) {
  Relation out{keep, {}};
  for (const auto& row : r.rows) {
    std::vector<Atom> p;
    for (const auto& a : keep) p.push_back(row[column(r, a)]);
    out.rows.insert(std::move(p));
  }
  return out;
}

Relation ra_product(const Relation& r, const Relation& s) {
  Relation out{r.attrs, {}};
  out.attrs.insert(out.attrs.end(), s.attrs.begin(), s.attrs.end());
  for (const auto& x : r.rows)
    for (const auto& y : s.rows) {
      std::vector<Atom> row = x;
      row.insert(row.end(), y.begin(), y.end());
      out.rows.insert(std::move(row));
    }
  return out;
}

Relation ra_union(const Relation& r, const Relation& s) {
  Relation out = r;
  out.rows.insert(s.rows.begin(), s.rows.end());
  return out;
}

Relation ra_minus(const Relation& r, const Relation& s) {
  Relation out{r.attrs, {}};
  for (const auto& row : r.rows)
    if (!s.rows.count(row)) out.rows.insert(row);
  return out;
}

Value nest_oracle(const Relation& r) {
  std::size_t a = column(r, "A"), b = column(r, "B");
  std::set<Atom> xs;
  for (const auto& row : r.rows) xs.insert(row[a]);
  std::vector<Value> out;
  for (const auto& x : xs) {
    std::vector<Value> group;
    for (const auto& row : r.rows)
      if (row[a] == x) group.push_back(Value::tuple({{"B", Value::atom(row[b])}}));
    out.push_back(Value::tuple({{"A", Value::atom(x)}, {"C", Value::set(std::move(group))}}));
  }
  return Value::set(std::move(out));
}

std::optional<std::string> table1_violation(const ValueType& t, const VcpOp& o) {
  return std::visit(Check{t}, o);
}

}  // namespace vcp::testing
