#ifndef CHAINCORE_GROUP_HPP
#define CHAINCORE_GROUP_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chaincore {

/// Index of an element inside a FiniteGroup's multiplication table.
using Elem = int;

/// Permutation of {0..n-1}; perm[i] is the image of i.
using Permutation = std::vector<int>;

inline constexpr std::size_t default_order_cap = 2000;

/// A finite group materialized as a full multiplication table.
///
/// Instances are immutable and shared through GroupPtr. Groups built from
/// permutations additionally remember the permutation of every element and
/// the names of the generators, which is what element labels are written in.
class FiniteGroup
{
public:
  /// Builds a group from a row-major order x order table. Throws
  /// InvalidArgument if the table is not a group table.
  FiniteGroup(std::size_t order,
              std::vector<Elem> table,
              std::vector<std::string> labels);

  FiniteGroup(std::size_t order,
              std::vector<Elem> table,
              std::vector<std::string> labels,
              std::vector<Permutation> perms,
              std::vector<Elem> generators,
              std::vector<std::string> generator_names);

  std::size_t order() const
  { return _order; }

  Elem mul(Elem a, Elem b) const
  { return _table[static_cast<std::size_t>(a) * _order + static_cast<std::size_t>(b)]; }

  Elem inv(Elem a) const
  { return _inv[static_cast<std::size_t>(a)]; }

  Elem identity() const
  { return _identity; }

  /// g x g^-1
  Elem conjugate(Elem g, Elem x) const
  { return mul(mul(g, x), inv(g)); }

  Elem power(Elem a, long long k) const;

  int element_order(Elem a) const
  { return _element_orders[static_cast<std::size_t>(a)]; }

  /// lcm of all element orders
  int exponent() const
  { return _exponent; }

  bool is_abelian() const;

  std::string const &label(Elem a) const
  { return _labels[static_cast<std::size_t>(a)]; }

  std::vector<std::string> const &labels() const
  { return _labels; }

  std::vector<Permutation> const &permutations() const
  { return _perms; }

  std::vector<Elem> const &generators() const
  { return _generators; }

  std::vector<std::string> const &generator_names() const
  { return _generator_names; }

  std::optional<Elem> find_permutation(Permutation const &perm) const;

  /// Exhaustive associativity/identity/inverse scan, O(order^3).
  bool check_axioms() const;

private:
  void init();

  std::size_t _order;
  std::vector<Elem> _table;
  std::vector<Elem> _inv;
  Elem _identity = 0;
  std::vector<int> _element_orders;
  int _exponent = 1;
  std::vector<std::string> _labels;
  std::vector<Permutation> _perms;
  std::vector<Elem> _generators;
  std::vector<std::string> _generator_names;
};

using GroupPtr = std::shared_ptr<FiniteGroup const>;

/// A subgroup of a shared parent group, stored as the sorted set of parent
/// indices together with a materialized FiniteGroup on those elements.
/// Local index i of as_group() corresponds to parent element elements()[i].
class Subgroup
{
public:
  /// Throws InvalidArgument unless elems is closed and contains the identity.
  Subgroup(GroupPtr parent, std::vector<Elem> elems);

  GroupPtr const &parent() const
  { return _parent; }

  std::vector<Elem> const &elements() const
  { return _elements; }

  std::size_t order() const
  { return _elements.size(); }

  bool contains(Elem g) const
  { return _member[static_cast<std::size_t>(g)]; }

  GroupPtr const &as_group() const
  { return _group; }

  Elem to_parent(Elem local) const
  { return _elements[static_cast<std::size_t>(local)]; }

  std::optional<Elem> to_local(Elem g) const;

  friend bool operator==(Subgroup const &lhs, Subgroup const &rhs)
  { return lhs._parent == rhs._parent && lhs._elements == rhs._elements; }

private:
  GroupPtr _parent;
  std::vector<Elem> _elements;
  std::vector<bool> _member;
  GroupPtr _group;
};

struct ConjugacyClass
{
  Elem representative;
  std::vector<Elem> members;
  int inverse_class;
};

struct ClassData
{
  std::vector<ConjugacyClass> classes;
  std::vector<int> class_of;  // element -> class index
};

struct QuotientGroup
{
  GroupPtr group;
  std::vector<Elem> projection;  // parent element -> coset element
};

GroupPtr group_from_generators(std::vector<Permutation> const &perms,
                               std::size_t cap = default_order_cap,
                               std::vector<std::string> names = {});

Subgroup subgroup_generated(GroupPtr const &G, std::vector<Elem> const &elems);
Subgroup trivial_subgroup(GroupPtr const &G);
Subgroup full_subgroup(GroupPtr const &G);

Subgroup intersection(Subgroup const &H, Subgroup const &K);
Subgroup join(Subgroup const &H, Subgroup const &K);

Subgroup center(GroupPtr const &G);
Subgroup derived_subgroup(GroupPtr const &G);

bool is_normal(Subgroup const &H);
Subgroup normal_closure(Subgroup const &H);

/// Throws NotNormal unless N is normal in its parent.
QuotientGroup quotient_group(Subgroup const &N);

ClassData conjugacy_classes(FiniteGroup const &G);

/// All subgroups: cyclic subgroups first, then pairwise joins to a fixed
/// point. Sorted by (order, elements).
std::vector<Subgroup> subgroup_lattice(GroupPtr const &G);

/// Order-preserving check that `image` defines an injective homomorphism
/// from `source` into `target`.
bool is_injective_homomorphism(FiniteGroup const &source,
                               FiniteGroup const &target,
                               std::vector<Elem> const &image);

} // namespace chaincore

#endif // CHAINCORE_GROUP_HPP
