#include "vcp/ops.h"

#include <algorithm>

#include "vcp/errors.h"

namespace vcp {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Value const_value(const Const& c) {
  return std::visit(overloaded{[](const Atom& a) { return Value::atom(a); },
                               [](const EmptySetConst&) { return Value::empty_set(); },
                               [](const UnitTupleConst&) { return Value::unit(); }},
                    c);
}

ValueType const_type(const Const& c) {
  return std::visit(overloaded{[](const Atom&) { return ValueType::dom(); },
                               [](const EmptySetConst&) { return ValueType::bottom_set(); },
                               [](const UnitTupleConst&) { return ValueType::tuple({}); }},
                    c);
}

VcpOp make_copy(Path src, Path dest) {
  if (!src.empty() && src.back().is_star()) return op::CopySet{std::move(src), std::move(dest)};
  return op::CopyTuple{std::move(src), std::move(dest)};
}

void VcpScript::move(const Path& src, const Path& dest) {
  ops.push_back(make_copy(src, dest));
  ops.push_back(op::Delete{!src.empty() && src.back().is_star() ? src.parent() : src});
}

namespace {

[[noreturn]] void violated(Reason r, const Path& p, const std::string& detail) {
  throw ConditionViolated(r, p.to_string(), detail);
}

const ValueType& tuple_node(const ValueType& t, const Path& p) {
  const ValueType& n = resolve(t, p);
  if (!n.is_tuple()) violated(Reason::NotATupleNode, p, "node is not a tuple node");
  return n;
}

const ValueType& set_node(const ValueType& t, const Path& p) {
  const ValueType& n = resolve(t, p);
  if (!n.is_set_like()) violated(Reason::NotASetNode, p, "node is not a set node");
  return n;
}

/// A tuple edge is addressed by the path of its child node.
const ValueType& tuple_edge(const ValueType& t, const Path& p) {
  if (p.empty() || p.back().is_star())
    violated(Reason::NotATupleEdge, p, "path does not end in an attribute label");
  const ValueType& parent = resolve(t, p.parent());
  if (!parent.is_tuple()) violated(Reason::NotATupleEdge, p, "edge does not leave a tuple node");
  return resolve(t, p);
}

/// A set edge `S/*`; returns the set node S it leaves (possibly `{_}`).
const ValueType& set_edge(const ValueType& t, const Path& p) {
  if (p.empty() || !p.back().is_star())
    violated(Reason::NotASetEdge, p, "path does not end in '*'");
  const ValueType& parent = resolve(t, p.parent());
  if (!parent.is_set_like()) violated(Reason::NotASetEdge, p, "edge does not leave a set node");
  return parent;
}

void require_fresh(const ValueType& tuple, const std::string& name, const Path& at) {
  if (tuple.find(name))
    violated(Reason::AttrExists, at, "attribute '" + name + "' already exists");
}

CtxInfo node_ctx(Path p) {
  CtxInfo c;
  c.ctx = std::move(p);
  c.bulk = c.ctx.star_count() > 0;
  return c;
}

CtxInfo copy_ctx(const Path& src, const Path& dest) {
  CtxInfo c = node_ctx(common_prefix(dest, src.parent()));
  c.from = src.suffix_from(c.ctx.size());
  c.to = dest.suffix_from(c.ctx.size());
  return c;
}

struct Validator {
  const ValueType& t;

  CtxInfo operator()(const op::NewConst& o) const {
    require_fresh(tuple_node(t, o.node), o.attr, o.node);
    return node_ctx(o.node);
  }
  CtxInfo operator()(const op::InsertTuple& o) const {
    resolve(t, o.node);
    return node_ctx(o.node);
  }
  CtxInfo operator()(const op::InsertSet& o) const {
    resolve(t, o.node);
    return node_ctx(o.node);
  }
  CtxInfo operator()(const op::Rename& o) const {
    tuple_edge(t, o.edge);
    if (o.attr != o.edge.back().label) require_fresh(resolve(t, o.edge.parent()), o.attr, o.edge);
    return node_ctx(o.edge.parent());
  }
  CtxInfo operator()(const op::EliminateSet& o) const {
    set_node(t, o.node);
    if (o.node.empty() || !o.node.back().is_star() || !resolve(t, o.node.parent()).is_set())
      violated(Reason::ParentNotSet, o.node, "parent of the set node is not a set node");
    return node_ctx(o.node.parent());
  }
  CtxInfo operator()(const op::EliminateTuple& o) const {
    const ValueType& n = tuple_node(t, o.node);
    if (n.attrs().size() != 1)
      violated(Reason::ArityNotOne, o.node,
               "tuple node has " + std::to_string(n.attrs().size()) + " attributes, not one");
    return node_ctx(o.node);
  }
  CtxInfo operator()(const op::Delete& o) const {
    tuple_edge(t, o.edge);
    return node_ctx(o.edge.parent());
  }
  CtxInfo operator()(const op::CopyTuple& o) const {
    tuple_edge(t, o.src);
    const ValueType& dest = tuple_node(t, o.dest);
    require_fresh(dest, o.src.back().label, o.dest);
    CtxInfo c = copy_ctx(o.src, o.dest);
    if (c.from.star_count() != 0)
      violated(Reason::PathNotStarFree, o.src,
               "path from the common ancestor '" + c.ctx.to_string() + "' crosses a set node");
    return c;
  }
  CtxInfo operator()(const op::CopySet& o) const {
    const ValueType& source = set_edge(t, o.src);
    const ValueType& dest = set_node(t, o.dest);
    CtxInfo c = copy_ctx(o.src, o.dest);
    if (c.from.star_count() != 1)
      violated(Reason::NotExactlyOneStar, o.src,
               "path from the common ancestor '" + c.ctx.to_string() +
                   "' must cross exactly one set node");
    if (!join(source, dest))
      violated(Reason::ElementTypesDiffer, o.dest, "element types of source and destination differ");
    return c;
  }
  CtxInfo operator()(const op::Select& o) const {
    const ValueType& n = set_node(t, o.node);
    if (!n.is_set() || !n.element().is_tuple())
      violated(Reason::SelectNeedsTupleChild, o.node, "set members are not tuples");
    for (const auto& name : {o.a, o.b})
      if (!n.element().find(name))
        violated(Reason::SelectAttrMissing, o.node, "member tuples lack attribute '" + name + "'");
    return node_ctx(o.node);
  }
};

/// Local effect on the schema subtree at the context node.
struct SchemaEffect {
  const ValueType& t;
  const CtxInfo& c;

  ValueType operator()(const op::NewConst& o) const {
    return resolve(t, c.ctx).with_attr(o.attr, const_type(o.value));
  }
  ValueType operator()(const op::InsertTuple& o) const {
    return ValueType::tuple({{o.attr, resolve(t, c.ctx)}});
  }
  ValueType operator()(const op::InsertSet&) const { return ValueType::set(resolve(t, c.ctx)); }
  ValueType operator()(const op::Rename& o) const {
    const ValueType& n = resolve(t, c.ctx);
    const std::string& old = o.edge.back().label;
    return n.without_attr(old).with_attr(o.attr, *n.find(old));
  }
  ValueType operator()(const op::EliminateSet&) const {
    const ValueType& inner = resolve(t, c.ctx).element();
    return inner.is_bottom() ? inner : ValueType::set(inner.element());
  }
  ValueType operator()(const op::EliminateTuple&) const {
    return resolve(t, c.ctx).attrs().front().second;
  }
  ValueType operator()(const op::Delete& o) const {
    return resolve(t, c.ctx).without_attr(o.edge.back().label);
  }
  ValueType operator()(const op::CopyTuple& o) const {
    const ValueType& here = resolve(t, c.ctx);
    ValueType copied = resolve(here, c.from);
    return rewrite_type_at(here, c.to.segments(), [&](const ValueType& dest) {
      return dest.with_attr(o.src.back().label, copied);
    });
  }
  ValueType operator()(const op::CopySet&) const {
    const ValueType& here = resolve(t, c.ctx);
    ValueType source = resolve(here, c.from.parent());
    return rewrite_type_at(here, c.to.segments(),
                           [&](const ValueType& dest) { return *join(dest, source); });
  }
  ValueType operator()(const op::Select&) const { return resolve(t, c.ctx); }
};

const Value& value_at(const Value& v, const Path& star_free) {
  const Value* cur = &v;
  for (const auto& s : star_free.segments()) cur = &cur->at(s.label);
  return *cur;
}

/// Local data semantics at one data node matching the context path.
struct DataEffect {
  const CtxInfo& c;

  Value operator()(const op::NewConst& o, const Value& u) const {
    return u.with_field(o.attr, const_value(o.value));
  }
  Value operator()(const op::InsertTuple& o, const Value& u) const {
    return Value::tuple({{o.attr, u}});
  }
  Value operator()(const op::InsertSet&, const Value& u) const { return Value::set({u}); }
  Value operator()(const op::Rename& o, const Value& u) const {
    const std::string& old = o.edge.back().label;
    return u.without_field(old).with_field(o.attr, u.at(old));
  }
  Value operator()(const op::EliminateSet&, const Value& u) const {
    std::vector<Value> flat;
    for (const auto& inner : u.members())
      flat.insert(flat.end(), inner.members().begin(), inner.members().end());
    return Value::set(std::move(flat));
  }
  Value operator()(const op::EliminateTuple&, const Value& u) const {
    return u.fields().front().second;
  }
  Value operator()(const op::Delete& o, const Value& u) const {
    return u.without_field(o.edge.back().label);
  }
  Value operator()(const op::CopyTuple& o, const Value& u) const {
    const Value& source = value_at(u, c.from);
    return rewrite_at(u, c.to.segments(), [&](const Value& dest) {
      return dest.with_field(o.src.back().label, source);
    });
  }
  Value operator()(const op::CopySet&, const Value& u) const {
    auto added = value_at(u, c.from.parent()).members();
    return rewrite_at(u, c.to.segments(), [&](const Value& dest) {
      std::vector<Value> members(dest.members().begin(), dest.members().end());
      members.insert(members.end(), added.begin(), added.end());
      return Value::set(std::move(members));
    });
  }
  Value operator()(const op::Select& o, const Value& u) const {
    std::vector<Value> kept;
    for (const auto& m : u.members())
      if (deep_equal(m.at(o.a), m.at(o.b))) kept.push_back(m);
    return Value::set(std::move(kept));
  }
};

}  // namespace

CtxInfo validate(const ValueType& t, const VcpOp& o) { return std::visit(Validator{t}, o); }

ValueType validate_and_apply_schema(const ValueType& t, const VcpOp& o) {
  CtxInfo c = validate(t, o);
  ValueType local = std::visit(SchemaEffect{t, c}, o);
  return rewrite_type_at(t, c.ctx.segments(), [&](const ValueType&) { return local; });
}

Value apply_data(const ValueType& t, const Value& v, const VcpOp& o) {
  CtxInfo c = validate(t, o);
  DataEffect effect{c};
  return rewrite_at(v, c.ctx.segments(), [&](const Value& u) {
    return std::visit([&](const auto& op) { return effect(op, u); }, o);
  });
}

ScriptResult run_script(const ValueType& t, const Value& v, const VcpScript& s) {
  ScriptResult r{t, v};
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    try {
      ValueType next = validate_and_apply_schema(r.type, s.ops[i]);
      r.value = apply_data(r.type, r.value, s.ops[i]);
      r.type = std::move(next);
    } catch (Error& e) {
      e.set_op_index(i);
      throw;
    }
  }
  return r;
}

ValueType check_script(const ValueType& t, const VcpScript& s) {
  ValueType cur = t;
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    try {
      cur = validate_and_apply_schema(cur, s.ops[i]);
    } catch (Error& e) {
      e.set_op_index(i);
      throw;
    }
  }
  return cur;
}

}  // namespace vcp
