#include "vcp/value.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "vcp/errors.h"

namespace vcp {

const char* reason_code(Reason reason) {
  switch (reason) {
    case Reason::NotATupleNode: return "NotATupleNode";
    case Reason::NotASetNode: return "NotASetNode";
    case Reason::NotATupleEdge: return "NotATupleEdge";
    case Reason::NotASetEdge: return "NotASetEdge";
    case Reason::AttrExists: return "AttrExists";
    case Reason::ParentNotSet: return "ParentNotSet";
    case Reason::ArityNotOne: return "ArityNotOne";
    case Reason::PathNotStarFree: return "PathNotStarFree";
    case Reason::NotExactlyOneStar: return "NotExactlyOneStar";
    case Reason::ElementTypesDiffer: return "ElementTypesDiffer";
    case Reason::SelectNeedsTupleChild: return "SelectNeedsTupleChild";
    case Reason::SelectAttrMissing: return "SelectAttrMissing";
  }
  return "Unknown";
}

//---------------------------------------------------------------------------
// ValueType
//---------------------------------------------------------------------------

struct ValueType::Rep {
  Kind kind;
  std::vector<ValueType> element;  // one entry for Set
  std::vector<Attr> attrs;         // Tuple, sorted by name
};

namespace {

template <typename Pair>
void sort_and_check_names(std::vector<Pair>& items) {
  std::sort(items.begin(), items.end(),
            [](const Pair& a, const Pair& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < items.size(); ++i)
    if (items[i - 1].first == items[i].first)
      throw std::invalid_argument("duplicate attribute '" + items[i].first + "'");
}

template <typename Pair>
auto find_named(std::span<const Pair> items, std::string_view name) {
  auto it = std::lower_bound(items.begin(), items.end(), name,
                             [](const Pair& p, std::string_view n) { return p.first < n; });
  return (it != items.end() && it->first == name) ? &it->second : nullptr;
}

}  // namespace

ValueType::ValueType() {
  static const auto dom_rep = std::make_shared<const Rep>(Rep{Kind::Dom, {}, {}});
  rep_ = dom_rep;
}

ValueType ValueType::dom() { return ValueType(); }

ValueType ValueType::set(ValueType element) {
  return ValueType(std::make_shared<const Rep>(Rep{Kind::Set, {std::move(element)}, {}}));
}

ValueType ValueType::tuple(std::vector<Attr> attrs) {
  sort_and_check_names(attrs);
  return ValueType(std::make_shared<const Rep>(Rep{Kind::Tuple, {}, std::move(attrs)}));
}

ValueType ValueType::bottom_set() {
  static const auto rep = std::make_shared<const Rep>(Rep{Kind::BottomSet, {}, {}});
  return ValueType(rep);
}

ValueType::Kind ValueType::kind() const { return rep_->kind; }

const ValueType& ValueType::element() const {
  if (!is_set()) throw std::logic_error("element() on a non-set type");
  return rep_->element.front();
}

std::span<const ValueType::Attr> ValueType::attrs() const { return rep_->attrs; }

const ValueType* ValueType::find(std::string_view name) const {
  return find_named<Attr>(rep_->attrs, name);
}

ValueType ValueType::with_attr(std::string name, ValueType type) const {
  std::vector<Attr> attrs(rep_->attrs.begin(), rep_->attrs.end());
  attrs.emplace_back(std::move(name), std::move(type));
  return tuple(std::move(attrs));
}

ValueType ValueType::without_attr(std::string_view name) const {
  std::vector<Attr> attrs;
  for (const auto& a : rep_->attrs)
    if (a.first != name) attrs.push_back(a);
  return tuple(std::move(attrs));
}

ValueType ValueType::replace_attr(std::string_view name, ValueType type) const {
  std::vector<Attr> attrs(rep_->attrs.begin(), rep_->attrs.end());
  for (auto& a : attrs)
    if (a.first == name) a.second = std::move(type);
  return ValueType(std::make_shared<const Rep>(Rep{Kind::Tuple, {}, std::move(attrs)}));
}

bool operator==(const ValueType& a, const ValueType& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ValueType::Kind::Dom:
    case ValueType::Kind::BottomSet: return true;
    case ValueType::Kind::Set: return a.element() == b.element();
    case ValueType::Kind::Tuple: return std::ranges::equal(a.attrs(), b.attrs());
  }
  return false;
}

std::optional<ValueType> join(const ValueType& a, const ValueType& b) {
  if (a.is_bottom() && b.is_set_like()) return b;
  if (b.is_bottom() && a.is_set_like()) return a;
  if (a.kind() != b.kind()) return std::nullopt;
  switch (a.kind()) {
    case ValueType::Kind::Dom:
    case ValueType::Kind::BottomSet: return a;
    case ValueType::Kind::Set: {
      auto elem = join(a.element(), b.element());
      if (!elem) return std::nullopt;
      return ValueType::set(*elem);
    }
    case ValueType::Kind::Tuple: {
      if (a.attrs().size() != b.attrs().size()) return std::nullopt;
      std::vector<ValueType::Attr> attrs;
      for (std::size_t i = 0; i < a.attrs().size(); ++i) {
        const auto& [na, ta] = a.attrs()[i];
        const auto& [nb, tb] = b.attrs()[i];
        if (na != nb) return std::nullopt;
        auto t = join(ta, tb);
        if (!t) return std::nullopt;
        attrs.emplace_back(na, *t);
      }
      return ValueType::tuple(std::move(attrs));
    }
  }
  return std::nullopt;
}

namespace {

void collect_names(const ValueType& t, std::set<std::string>& out) {
  if (t.is_set()) collect_names(t.element(), out);
  for (const auto& [name, sub] : t.attrs()) {
    out.insert(name);
    collect_names(sub, out);
  }
}

}  // namespace

std::vector<std::string> attribute_names(const ValueType& type) {
  std::set<std::string> names;
  collect_names(type, names);
  return {names.begin(), names.end()};
}

//---------------------------------------------------------------------------
// Value
//---------------------------------------------------------------------------

struct Value::Rep {
  Kind kind;
  Atom atom;
  std::vector<Value> members;  // Set, canonical order
  std::vector<Field> fields;   // Tuple, sorted by name
};

Value::Value() : Value(empty_set()) {}

Value Value::atom(Atom a) {
  return Value(std::make_shared<const Rep>(Rep{Kind::Atom, std::move(a), {}, {}}));
}

Value Value::set(std::vector<Value> members) {
  std::sort(members.begin(), members.end(),
            [](const Value& a, const Value& b) { return compare(a, b) < 0; });
  members.erase(std::unique(members.begin(), members.end(),
                            [](const Value& a, const Value& b) { return deep_equal(a, b); }),
                members.end());
  return Value(std::make_shared<const Rep>(Rep{Kind::Set, Atom{}, std::move(members), {}}));
}

Value Value::tuple(std::vector<Field> fields) {
  sort_and_check_names(fields);
  return Value(std::make_shared<const Rep>(Rep{Kind::Tuple, Atom{}, {}, std::move(fields)}));
}

Value::Kind Value::kind() const { return rep_->kind; }

const Atom& Value::as_atom() const {
  if (!is_atom()) throw std::logic_error("as_atom() on a non-atomic value");
  return rep_->atom;
}

std::span<const Value> Value::members() const { return rep_->members; }

std::span<const Value::Field> Value::fields() const { return rep_->fields; }

const Value* Value::find(std::string_view name) const {
  return find_named<Field>(rep_->fields, name);
}

const Value& Value::at(std::string_view name) const {
  const Value* v = find(name);
  if (!v) throw std::out_of_range("tuple has no attribute '" + std::string(name) + "'");
  return *v;
}

Value Value::with_field(std::string name, Value v) const {
  std::vector<Field> fields(rep_->fields.begin(), rep_->fields.end());
  fields.emplace_back(std::move(name), std::move(v));
  return tuple(std::move(fields));
}

Value Value::without_field(std::string_view name) const {
  std::vector<Field> fields;
  for (const auto& f : rep_->fields)
    if (f.first != name) fields.push_back(f);
  return tuple(std::move(fields));
}

Value Value::replace_field(std::string_view name, Value v) const {
  std::vector<Field> fields(rep_->fields.begin(), rep_->fields.end());
  for (auto& f : fields)
    if (f.first == name) f.second = std::move(v);
  return Value(std::make_shared<const Rep>(Rep{Kind::Tuple, Atom{}, {}, std::move(fields)}));
}

std::strong_ordering compare(const Value& a, const Value& b) {
  if (a.same_node(b)) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Value::Kind::Atom: {
      const Atom& x = a.as_atom();
      const Atom& y = b.as_atom();
      if (x.index() != y.index()) return x.index() <=> y.index();
      if (x.index() == 0) return std::get<0>(x) <=> std::get<0>(y);
      return std::get<1>(x).compare(std::get<1>(y)) <=> 0;
    }
    case Value::Kind::Set: {
      auto ma = a.members();
      auto mb = b.members();
      for (std::size_t i = 0; i < ma.size() && i < mb.size(); ++i)
        if (auto c = compare(ma[i], mb[i]); c != 0) return c;
      return ma.size() <=> mb.size();
    }
    case Value::Kind::Tuple: {
      auto fa = a.fields();
      auto fb = b.fields();
      for (std::size_t i = 0; i < fa.size() && i < fb.size(); ++i) {
        if (int c = fa[i].first.compare(fb[i].first); c != 0) return c <=> 0;
        if (auto c = compare(fa[i].second, fb[i].second); c != 0) return c;
      }
      return fa.size() <=> fb.size();
    }
  }
  return std::strong_ordering::equal;
}

bool deep_equal(const Value& a, const Value& b) { return compare(a, b) == 0; }

Value canonicalize(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Atom: return Value::atom(v.as_atom());
    case Value::Kind::Set: {
      std::vector<Value> members;
      for (const auto& m : v.members()) members.push_back(canonicalize(m));
      return Value::set(std::move(members));
    }
    case Value::Kind::Tuple: {
      std::vector<Value::Field> fields;
      for (const auto& [n, f] : v.fields()) fields.emplace_back(n, canonicalize(f));
      return Value::tuple(std::move(fields));
    }
  }
  return v;
}

bool conforms(const Value& v, const ValueType& t) {
  switch (t.kind()) {
    case ValueType::Kind::Dom: return v.is_atom();
    case ValueType::Kind::BottomSet: return v.is_set() && v.members().empty();
    case ValueType::Kind::Set:
      return v.is_set() && std::ranges::all_of(v.members(), [&](const Value& m) {
               return conforms(m, t.element());
             });
    case ValueType::Kind::Tuple: {
      if (!v.is_tuple() || v.fields().size() != t.attrs().size()) return false;
      for (std::size_t i = 0; i < t.attrs().size(); ++i) {
        if (v.fields()[i].first != t.attrs()[i].first) return false;
        if (!conforms(v.fields()[i].second, t.attrs()[i].second)) return false;
      }
      return true;
    }
  }
  return false;
}

//---------------------------------------------------------------------------
// Paths
//---------------------------------------------------------------------------

bool is_valid_label(std::string_view s) {
  if (s.empty()) return false;
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (std::ranges::all_of(s, digit)) return true;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::ranges::all_of(s, [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

Path Path::parse(std::string_view text) {
  if (text == ".") return Path();
  std::vector<Segment> segments;
  std::size_t start = 0;
  while (true) {
    std::size_t slash = text.find('/', start);
    std::string_view part = text.substr(start, slash == std::string_view::npos ? slash : slash - start);
    if (part == "*") {
      segments.push_back(Segment::star());
    } else if (is_valid_label(part)) {
      segments.push_back(Segment::attr(std::string(part)));
    } else {
      throw ParseError("invalid path '" + std::string(text) + "'", 1, start + 1);
    }
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return Path(std::move(segments));
}

std::string Path::to_string() const {
  if (segments_.empty()) return ".";
  std::string out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i) out += '/';
    out += segments_[i].label;
  }
  return out;
}

Path Path::parent() const { return prefix(segments_.empty() ? 0 : segments_.size() - 1); }

Path Path::prefix(std::size_t n) const {
  n = std::min(n, segments_.size());
  return Path({segments_.begin(), segments_.begin() + static_cast<std::ptrdiff_t>(n)});
}

Path Path::suffix_from(std::size_t n) const {
  n = std::min(n, segments_.size());
  return Path({segments_.begin() + static_cast<std::ptrdiff_t>(n), segments_.end()});
}

Path Path::child(Segment s) const {
  Path p = *this;
  p.segments_.push_back(std::move(s));
  return p;
}

Path Path::concat(const Path& tail) const {
  Path p = *this;
  p.segments_.insert(p.segments_.end(), tail.segments_.begin(), tail.segments_.end());
  return p;
}

bool Path::starts_with(const Path& prefix) const {
  return prefix.size() <= size() &&
         std::equal(prefix.segments_.begin(), prefix.segments_.end(), segments_.begin());
}

std::size_t Path::star_count() const {
  return static_cast<std::size_t>(std::ranges::count_if(segments_, &Segment::is_star));
}

Path common_prefix(const Path& a, const Path& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return a.prefix(n);
}

const ValueType& resolve(const ValueType& t, const Path& path) {
  const ValueType* node = &t;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Segment& s = path[i];
    if (s.is_star()) {
      if (!node->is_set())
        throw NoSuchPath(path.to_string(), "'*' at step " + std::to_string(i + 1) +
                                               " is not below a set node with a child");
      node = &node->element();
    } else {
      if (!node->is_tuple())
        throw NoSuchPath(path.to_string(), "'" + s.label + "' is not below a tuple node");
      node = node->find(s.label);
      if (!node) throw NoSuchPath(path.to_string(), "no attribute '" + s.label + "'");
    }
  }
  return *node;
}

namespace {

void match_into(const Value& v, std::span<const Segment> rest, Location& here,
                std::vector<Location>& out) {
  if (rest.empty()) {
    out.push_back(Location{here.steps, v});
    return;
  }
  const Segment& s = rest.front();
  if (s.is_star()) {
    if (!v.is_set()) return;
    for (std::size_t i = 0; i < v.members().size(); ++i) {
      here.steps.emplace_back(i);
      match_into(v.members()[i], rest.subspan(1), here, out);
      here.steps.pop_back();
    }
  } else if (const Value* f = v.is_tuple() ? v.find(s.label) : nullptr) {
    here.steps.emplace_back(s.label);
    match_into(*f, rest.subspan(1), here, out);
    here.steps.pop_back();
  }
}

}  // namespace

std::vector<Location> match_nodes(const Value& v, const Path& path) {
  std::vector<Location> out;
  Location here;
  match_into(v, path.segments(), here, out);
  return out;
}

}  // namespace vcp
