#include "vcp/to_monad.h"

#include <functional>

#include "vcp/errors.h"

namespace vcp {

namespace {

// Wrapper labels used to carry a copy source into a set. They only ever name
// the attributes of a two-field pair tuple built here, so they cannot clash
// with schema attributes.
constexpr const char* kMember = "__k";
constexpr const char* kSource = "__src";

MaExpr then(const MaExpr& f, MaExpr g) { return MaExpr::compose(f, std::move(g)); }

MaExpr proj_chain(const Path& star_free) {
  std::vector<MaExpr> parts;
  for (const auto& s : star_free.segments()) parts.push_back(MaExpr::proj(s.label));
  return MaExpr::compose(std::move(parts));
}

/// Rebuilds every attribute of tuple type `t` reading it through `at`, except
/// `skip`, then adds `extra`.
std::vector<MaExpr::Field> keep_fields(const ValueType& t, const MaExpr& at,
                                       std::string_view skip = {}) {
  std::vector<MaExpr::Field> fields;
  for (const auto& [name, _] : t.attrs())
    if (name != skip) fields.emplace_back(name, then(at, MaExpr::proj(name)));
  return fields;
}

/// Wraps the local expression so that it runs at every node matched by the
/// context path: sibling-preserving tuples at labels, map at `*`.
MaExpr push_down(const ValueType& t, std::span<const Segment> path, const MaExpr& local) {
  if (path.empty()) return local;
  const Segment& s = path.front();
  if (s.is_star()) return MaExpr::map(push_down(t.element(), path.subspan(1), local));
  auto fields = keep_fields(t, MaExpr::id(), s.label);
  fields.emplace_back(s.label, then(MaExpr::proj(s.label),
                                    push_down(*t.find(s.label), path.subspan(1), local)));
  return MaExpr::tuple(std::move(fields));
}

using Leaf = std::function<MaExpr(const ValueType& dest, const MaExpr& at, const MaExpr& src)>;

/// Walks the destination path of a copy. `at` reads the current node from the
/// current input and `src` reads the copied value; at `*` both are paired and
/// carried into the set with pairwith.
MaExpr descend(const ValueType& t, std::span<const Segment> path, const MaExpr& at,
               const MaExpr& src, const Leaf& leaf) {
  if (path.empty()) return leaf(t, at, src);
  const Segment& s = path.front();
  if (s.is_star()) {
    MaExpr body = descend(t.element(), path.subspan(1), MaExpr::proj(kMember),
                          MaExpr::proj(kSource), leaf);
    return MaExpr::compose({MaExpr::tuple({{kMember, at}, {kSource, src}}),
                            MaExpr::pairwith(kMember), MaExpr::map(std::move(body))});
  }
  auto fields = keep_fields(t, at, s.label);
  fields.emplace_back(s.label, descend(*t.find(s.label), path.subspan(1),
                                       then(at, MaExpr::proj(s.label)), src, leaf));
  return MaExpr::tuple(std::move(fields));
}

struct LocalExpr {
  const ValueType& here;
  const CtxInfo& c;

  MaExpr operator()(const op::NewConst& o) const {
    auto fields = keep_fields(here, MaExpr::id());
    fields.emplace_back(o.attr, MaExpr::constant(o.value));
    return MaExpr::tuple(std::move(fields));
  }
  MaExpr operator()(const op::InsertTuple& o) const {
    return MaExpr::tuple({{o.attr, MaExpr::id()}});
  }
  MaExpr operator()(const op::InsertSet&) const { return MaExpr::sing(); }
  MaExpr operator()(const op::Rename& o) const {
    const std::string& old = o.edge.back().label;
    auto fields = keep_fields(here, MaExpr::id(), old);
    fields.emplace_back(o.attr, MaExpr::proj(old));
    return MaExpr::tuple(std::move(fields));
  }
  MaExpr operator()(const op::EliminateSet&) const { return MaExpr::flatten(); }
  MaExpr operator()(const op::EliminateTuple&) const {
    return MaExpr::proj(here.attrs().front().first);
  }
  MaExpr operator()(const op::Delete& o) const {
    return MaExpr::tuple(keep_fields(here, MaExpr::id(), o.edge.back().label));
  }
  MaExpr operator()(const op::CopyTuple& o) const {
    const std::string& label = o.src.back().label;
    return descend(here, c.to.segments(), MaExpr::id(), proj_chain(c.from),
                   [&](const ValueType& dest, const MaExpr& at, const MaExpr& src) {
                     auto fields = keep_fields(dest, at);
                     fields.emplace_back(label, src);
                     return MaExpr::tuple(std::move(fields));
                   });
  }
  MaExpr operator()(const op::CopySet&) const {
    return descend(here, c.to.segments(), MaExpr::id(), proj_chain(c.from.parent()),
                   [](const ValueType&, const MaExpr& at, const MaExpr& src) {
                     return MaExpr::set_union(at, src);
                   });
  }
  MaExpr operator()(const op::Select& o) const { return MaExpr::select(o.a, o.b); }
};

}  // namespace

MaExpr compile_op(const ValueType& t, const VcpOp& o) {
  CtxInfo c = validate(t, o);
  const ValueType& here = resolve(t, c.ctx);
  return push_down(t, c.ctx.segments(), std::visit(LocalExpr{here, c}, o));
}

std::vector<CompileUnit> compile_units(const ValueType& t, const VcpScript& s) {
  std::vector<CompileUnit> units;
  ValueType cur = t;
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    try {
      MaExpr e = compile_op(cur, s.ops[i]);
      ValueType next = validate_and_apply_schema(cur, s.ops[i]);
      units.push_back({cur, s.ops[i], std::move(e), next});
      cur = std::move(next);
    } catch (Error& e) {
      e.set_op_index(i);
      throw;
    }
  }
  return units;
}

MaExpr compile_script(const ValueType& t, const VcpScript& s) {
  std::vector<MaExpr> parts;
  for (auto& u : compile_units(t, s)) parts.push_back(std::move(u.expr));
  return MaExpr::compose(std::move(parts));
}

}  // namespace vcp
