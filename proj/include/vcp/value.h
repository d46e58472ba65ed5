#pragma once

// Complex-value data model: schema trees (ValueType), data trees (Value)
// and paths addressing nodes in both.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace vcp {

/// Domain atom. Integers order before strings.
using Atom = std::variant<std::int64_t, std::string>;

//---------------------------------------------------------------------------
// Schema trees
//---------------------------------------------------------------------------

class ValueType {
 public:
  enum class Kind : std::uint8_t { Dom, Set, Tuple, BottomSet };
  using Attr = std::pair<std::string, ValueType>;

  /// Defaults to Dom.
  ValueType();

  static ValueType dom();
  static ValueType set(ValueType element);
  /// Throws std::invalid_argument on duplicate attribute names.
  static ValueType tuple(std::vector<Attr> attrs);
  /// Type of the empty-set constant, `{_}`.
  static ValueType bottom_set();

  Kind kind() const;
  bool is_dom() const { return kind() == Kind::Dom; }
  bool is_set() const { return kind() == Kind::Set; }
  bool is_tuple() const { return kind() == Kind::Tuple; }
  bool is_bottom() const { return kind() == Kind::BottomSet; }
  /// Set or BottomSet.
  bool is_set_like() const { return is_set() || is_bottom(); }

  /// Element type of a Set node.
  const ValueType& element() const;
  /// Attributes of a Tuple node, sorted by name.
  std::span<const Attr> attrs() const;
  const ValueType* find(std::string_view name) const;

  ValueType with_attr(std::string name, ValueType type) const;
  ValueType without_attr(std::string_view name) const;
  /// Same tuple with the type of an existing attribute replaced.
  ValueType replace_attr(std::string_view name, ValueType type) const;

  friend bool operator==(const ValueType& a, const ValueType& b);

 private:
  struct Rep;
  explicit ValueType(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// Least upper bound under BottomSet <= {t}; nullopt when the types clash.
std::optional<ValueType> join(const ValueType& a, const ValueType& b);

/// All attribute labels occurring anywhere in the schema tree.
std::vector<std::string> attribute_names(const ValueType& type);

//---------------------------------------------------------------------------
// Data trees
//---------------------------------------------------------------------------

class Value {
 public:
  enum class Kind : std::uint8_t { Atom, Set, Tuple };
  using Field = std::pair<std::string, Value>;

  /// Defaults to the empty set.
  Value();

  static Value atom(Atom atom);
  static Value integer(std::int64_t v) { return atom(Atom{v}); }
  static Value string(std::string v) { return atom(Atom{std::move(v)}); }
  /// Sorts members and removes deep-equal duplicates.
  static Value set(std::vector<Value> members);
  /// Throws std::invalid_argument on duplicate attribute names.
  static Value tuple(std::vector<Field> fields);
  static Value empty_set() { return set({}); }
  static Value unit() { return tuple({}); }

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_set() const { return kind() == Kind::Set; }
  bool is_tuple() const { return kind() == Kind::Tuple; }

  const Atom& as_atom() const;
  /// Members of a set in canonical order.
  std::span<const Value> members() const;
  /// Fields of a tuple sorted by name.
  std::span<const Field> fields() const;
  const Value* find(std::string_view name) const;
  /// Throws std::out_of_range when the attribute is missing.
  const Value& at(std::string_view name) const;

  Value with_field(std::string name, Value v) const;
  Value without_field(std::string_view name) const;
  /// Same tuple with an existing field replaced.
  Value replace_field(std::string_view name, Value v) const;

  bool same_node(const Value& other) const { return rep_ == other.rep_; }

 private:
  struct Rep;
  explicit Value(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// Total order: Atom < Set < Tuple across kinds, lexicographic within.
std::strong_ordering compare(const Value& a, const Value& b);
bool deep_equal(const Value& a, const Value& b);

inline bool operator==(const Value& a, const Value& b) { return deep_equal(a, b); }
inline std::strong_ordering operator<=>(const Value& a, const Value& b) { return compare(a, b); }

/// Rebuilds the tree through the public factories. Values are canonical by
/// construction, so this is the identity up to deep equality.
Value canonicalize(const Value& v);

bool conforms(const Value& v, const ValueType& t);

//---------------------------------------------------------------------------
// Paths
//---------------------------------------------------------------------------

/// Attribute labels: an identifier `[A-Za-z_][A-Za-z0-9_']*` or a digit string.
bool is_valid_label(std::string_view s);

/// One path step: an attribute label or the set edge `*`.
struct Segment {
  std::string label;

  static Segment attr(std::string name) { return Segment{std::move(name)}; }
  static Segment star() { return Segment{"*"}; }
  bool is_star() const { return label == "*"; }

  friend bool operator==(const Segment&, const Segment&) = default;
};

class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Segment> segments) : segments_(std::move(segments)) {}

  /// `.` for the root, otherwise labels joined by `/`.
  static Path parse(std::string_view text);
  std::string to_string() const;

  bool empty() const { return segments_.empty(); }
  std::size_t size() const { return segments_.size(); }
  std::span<const Segment> segments() const { return segments_; }
  const Segment& operator[](std::size_t i) const { return segments_[i]; }
  const Segment& back() const { return segments_.back(); }

  Path parent() const;
  Path prefix(std::size_t n) const;
  Path suffix_from(std::size_t n) const;
  Path child(Segment s) const;
  Path concat(const Path& tail) const;
  bool starts_with(const Path& prefix) const;
  std::size_t star_count() const;

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<Segment> segments_;
};

/// Longest common prefix.
Path common_prefix(const Path& a, const Path& b);

/// The unique schema subtree at `path`; throws NoSuchPath.
const ValueType& resolve(const ValueType& t, const Path& path);

/// A concrete data-tree node: attribute labels and member indices from the root.
struct Location {
  std::vector<std::variant<std::string, std::size_t>> steps;
  Value node;
};

/// Every data node reached by `path`; `*` fans out over set members.
std::vector<Location> match_nodes(const Value& v, const Path& path);

}  // namespace vcp
