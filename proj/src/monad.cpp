#include "vcp/monad.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "vcp/errors.h"
#include "vcp/text.h"

namespace vcp {

struct MaExpr::Node {
  Kind kind;
  std::vector<MaExpr> kids;  // Comp parts, Map body, binary operands
  std::vector<Field> fields;
  std::string attr;
  std::string attr2;
  std::vector<std::string> grouped;
  Const constant;
};

MaExpr::MaExpr() : MaExpr(id()) {}

MaExpr MaExpr::id() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Id, {}, {}, {}, {}, {}, {}});
  return MaExpr(node);
}

MaExpr MaExpr::compose(std::vector<MaExpr> parts) {
  std::vector<MaExpr> flat;
  for (auto& p : parts) {
    if (p.kind() == Kind::Id) continue;
    if (p.kind() == Kind::Comp)
      flat.insert(flat.end(), p.parts().begin(), p.parts().end());
    else
      flat.push_back(std::move(p));
  }
  if (flat.empty()) return id();
  if (flat.size() == 1) return flat.front();
  return MaExpr(std::make_shared<const Node>(Node{Kind::Comp, std::move(flat), {}, {}, {}, {}, {}}));
}

MaExpr MaExpr::constant(Const c) {
  return MaExpr(std::make_shared<const Node>(Node{Kind::Const, {}, {}, {}, {}, {}, std::move(c)}));
}

MaExpr MaExpr::sing() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Sing, {}, {}, {}, {}, {}, {}});
  return MaExpr(node);
}

MaExpr MaExpr::map(MaExpr body) {
  return MaExpr(std::make_shared<const Node>(Node{Kind::Map, {std::move(body)}, {}, {}, {}, {}, {}}));
}

MaExpr MaExpr::flatten() {
  static const auto node =
      std::make_shared<const Node>(Node{Kind::Flatten, {}, {}, {}, {}, {}, {}});
  return MaExpr(node);
}

MaExpr MaExpr::pairwith(std::string attr) {
  return MaExpr(
      std::make_shared<const Node>(Node{Kind::Pairwith, {}, {}, std::move(attr), {}, {}, {}}));
}

MaExpr MaExpr::tuple(std::vector<Field> fields) {
  std::sort(fields.begin(), fields.end(),
            [](const Field& a, const Field& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < fields.size(); ++i)
    if (fields[i - 1].first == fields[i].first)
      throw std::invalid_argument("duplicate attribute '" + fields[i].first + "' in tuple()");
  return MaExpr(
      std::make_shared<const Node>(Node{Kind::Tuple, {}, std::move(fields), {}, {}, {}, {}}));
}

MaExpr MaExpr::proj(std::string attr) {
  return MaExpr(
      std::make_shared<const Node>(Node{Kind::Proj, {}, {}, std::move(attr), {}, {}, {}}));
}

MaExpr MaExpr::set_union(MaExpr f, MaExpr g) {
  return MaExpr(std::make_shared<const Node>(
      Node{Kind::Union, {std::move(f), std::move(g)}, {}, {}, {}, {}, {}}));
}

MaExpr MaExpr::select(std::string a, std::string b) {
  return MaExpr(std::make_shared<const Node>(
      Node{Kind::Select, {}, {}, std::move(a), std::move(b), {}, {}}));
}

MaExpr MaExpr::diff(MaExpr f, MaExpr g) {
  return MaExpr(std::make_shared<const Node>(
      Node{Kind::Diff, {std::move(f), std::move(g)}, {}, {}, {}, {}, {}}));
}

MaExpr MaExpr::intersect(MaExpr f, MaExpr g) {
  return MaExpr(std::make_shared<const Node>(
      Node{Kind::Intersect, {std::move(f), std::move(g)}, {}, {}, {}, {}, {}}));
}

MaExpr MaExpr::nest(std::string attr, std::vector<std::string> grouped) {
  std::sort(grouped.begin(), grouped.end());
  grouped.erase(std::unique(grouped.begin(), grouped.end()), grouped.end());
  return MaExpr(std::make_shared<const Node>(
      Node{Kind::Nest, {}, {}, std::move(attr), {}, std::move(grouped), {}}));
}

MaExpr::Kind MaExpr::kind() const { return node_->kind; }
std::span<const MaExpr> MaExpr::parts() const { return node_->kids; }
const MaExpr& MaExpr::body() const { return node_->kids.at(0); }
const MaExpr& MaExpr::left() const { return node_->kids.at(0); }
const MaExpr& MaExpr::right() const { return node_->kids.at(1); }
std::span<const MaExpr::Field> MaExpr::fields() const { return node_->fields; }
const std::string& MaExpr::attr() const { return node_->attr; }
const std::string& MaExpr::attr2() const { return node_->attr2; }
std::span<const std::string> MaExpr::grouped() const { return node_->grouped; }
const Const& MaExpr::constant_value() const { return node_->constant; }

bool operator==(const MaExpr& a, const MaExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.kids == y.kids && x.fields == y.fields && x.attr == y.attr &&
         x.attr2 == y.attr2 && x.grouped == y.grouped && x.constant == y.constant;
}

//---------------------------------------------------------------------------
// Typing
//---------------------------------------------------------------------------

namespace {

[[noreturn]] void type_error(const MaExpr& e, const std::string& expected, const ValueType& found) {
  throw TypeError(print_ma(e), expected, print_type(found));
}

ValueType nest_type(const MaExpr& e, const ValueType& elem) {
  if (!elem.is_tuple()) type_error(e, "a set of tuples", ValueType::set(elem));
  std::vector<ValueType::Attr> keys;
  std::vector<ValueType::Attr> grouped;
  for (const auto& a : elem.attrs()) {
    if (std::ranges::binary_search(e.grouped(), a.first))
      grouped.push_back(a);
    else
      keys.push_back(a);
  }
  if (grouped.size() != e.grouped().size())
    type_error(e, "member tuples with every grouped attribute", ValueType::set(elem));
  for (const auto& k : keys)
    if (k.first == e.attr())
      type_error(e, "a nest attribute distinct from the key attributes", ValueType::set(elem));
  keys.emplace_back(e.attr(), ValueType::set(ValueType::tuple(std::move(grouped))));
  return ValueType::set(ValueType::tuple(std::move(keys)));
}

}  // namespace

ValueType typecheck(const MaExpr& e, const ValueType& in) {
  using K = MaExpr::Kind;
  switch (e.kind()) {
    case K::Id: return in;
    case K::Comp: {
      ValueType t = in;
      for (const auto& p : e.parts()) t = typecheck(p, t);
      return t;
    }
    case K::Const: return const_type(e.constant_value());
    case K::Sing: return ValueType::set(in);
    case K::Map:
      if (in.is_bottom()) return in;
      if (!in.is_set()) type_error(e, "a set", in);
      return ValueType::set(typecheck(e.body(), in.element()));
    case K::Flatten:
      if (in.is_bottom()) return in;
      if (!in.is_set() || !in.element().is_set_like()) type_error(e, "a set of sets", in);
      return in.element();
    case K::Pairwith: {
      const ValueType* a = in.is_tuple() ? in.find(e.attr()) : nullptr;
      if (!a || !a->is_set_like()) type_error(e, "a tuple with set-valued '" + e.attr() + "'", in);
      if (a->is_bottom()) return *a;
      return ValueType::set(in.replace_attr(e.attr(), a->element()));
    }
    case K::Tuple: {
      std::vector<ValueType::Attr> attrs;
      for (const auto& [name, f] : e.fields()) attrs.emplace_back(name, typecheck(f, in));
      return ValueType::tuple(std::move(attrs));
    }
    case K::Proj: {
      const ValueType* a = in.is_tuple() ? in.find(e.attr()) : nullptr;
      if (!a) type_error(e, "a tuple with attribute '" + e.attr() + "'", in);
      return *a;
    }
    case K::Union: {
      ValueType l = typecheck(e.left(), in);
      ValueType r = typecheck(e.right(), in);
      if (!l.is_set_like()) type_error(e.left(), "a set", l);
      auto j = join(l, r);
      if (!j) type_error(e.right(), print_type(l), r);
      return *j;
    }
    case K::Select: {
      if (in.is_bottom()) return in;
      if (!in.is_set() || !in.element().is_tuple() || !in.element().find(e.attr()) ||
          !in.element().find(e.attr2()))
        type_error(e, "a set of tuples with '" + e.attr() + "' and '" + e.attr2() + "'", in);
      return in;
    }
    case K::Diff:
    case K::Intersect: {
      ValueType l = typecheck(e.left(), in);
      ValueType r = typecheck(e.right(), in);
      if (!l.is_set_like()) type_error(e.left(), "a set", l);
      if (!r.is_set_like() || !join(l, r)) type_error(e.right(), print_type(l), r);
      return l;
    }
    case K::Nest:
      if (in.is_bottom()) return in;
      if (!in.is_set()) type_error(e, "a set of tuples", in);
      return nest_type(e, in.element());
  }
  throw std::logic_error("unknown expression kind");
}

//---------------------------------------------------------------------------
// Evaluation
//---------------------------------------------------------------------------

namespace {

std::vector<Value> to_vector(std::span<const Value> s) { return {s.begin(), s.end()}; }

bool contains(const Value& set, const Value& x) {
  return std::ranges::binary_search(set.members(), x,
                                    [](const Value& a, const Value& b) { return compare(a, b) < 0; });
}

}  // namespace

Value eval(const MaExpr& e, const Value& v) {
  using K = MaExpr::Kind;
  switch (e.kind()) {
    case K::Id: return v;
    case K::Comp: {
      Value x = v;
      for (const auto& p : e.parts()) x = eval(p, x);
      return x;
    }
    case K::Const: return const_value(e.constant_value());
    case K::Sing: return Value::set({v});
    case K::Map: {
      std::vector<Value> out;
      out.reserve(v.members().size());
      for (const auto& m : v.members()) out.push_back(eval(e.body(), m));
      return Value::set(std::move(out));
    }
    case K::Flatten: {
      std::vector<Value> out;
      for (const auto& inner : v.members())
        out.insert(out.end(), inner.members().begin(), inner.members().end());
      return Value::set(std::move(out));
    }
    case K::Pairwith: {
      std::vector<Value> out;
      for (const auto& m : v.at(e.attr()).members()) out.push_back(v.replace_field(e.attr(), m));
      return Value::set(std::move(out));
    }
    case K::Tuple: {
      std::vector<Value::Field> fields;
      for (const auto& [name, f] : e.fields()) fields.emplace_back(name, eval(f, v));
      return Value::tuple(std::move(fields));
    }
    case K::Proj: return v.at(e.attr());
    case K::Union: {
      auto out = to_vector(eval(e.left(), v).members());
      Value r = eval(e.right(), v);
      out.insert(out.end(), r.members().begin(), r.members().end());
      return Value::set(std::move(out));
    }
    case K::Select: {
      std::vector<Value> out;
      for (const auto& m : v.members())
        if (deep_equal(m.at(e.attr()), m.at(e.attr2()))) out.push_back(m);
      return Value::set(std::move(out));
    }
    case K::Diff:
    case K::Intersect: {
      Value l = eval(e.left(), v);
      Value r = eval(e.right(), v);
      bool keep_common = e.kind() == K::Intersect;
      std::vector<Value> out;
      for (const auto& m : l.members())
        if (contains(r, m) == keep_common) out.push_back(m);
      return Value::set(std::move(out));
    }
    case K::Nest: {
      std::map<Value, std::vector<Value>> groups;
      for (const auto& m : v.members()) {
        std::vector<Value::Field> key;
        std::vector<Value::Field> grouped;
        for (const auto& f : m.fields())
          (std::ranges::binary_search(e.grouped(), f.first) ? grouped : key).push_back(f);
        groups[Value::tuple(std::move(key))].push_back(Value::tuple(std::move(grouped)));
      }
      std::vector<Value> out;
      for (auto& [key, members] : groups)
        out.push_back(key.with_field(e.attr(), Value::set(std::move(members))));
      return Value::set(std::move(out));
    }
  }
  throw std::logic_error("unknown expression kind");
}

bool is_positive(const MaExpr& e) {
  using K = MaExpr::Kind;
  switch (e.kind()) {
    case K::Select:
    case K::Diff:
    case K::Intersect:
    case K::Nest: return false;
    case K::Comp: return std::ranges::all_of(e.parts(), is_positive);
    case K::Map: return is_positive(e.body());
    case K::Union: return is_positive(e.left()) && is_positive(e.right());
    case K::Tuple:
      return std::ranges::all_of(e.fields(), [](const auto& f) { return is_positive(f.second); });
    default: return true;
  }
}

}  // namespace vcp
