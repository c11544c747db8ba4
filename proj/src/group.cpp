#include "chaincore/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "chaincore/error.hpp"

namespace chaincore {

namespace {

std::vector<std::string> default_generator_names(std::size_t n)
{
  static constexpr std::string_view letters = "abcdfghjklmnopqrstuvwxyz";
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < letters.size())
      names.emplace_back(1, letters[i]);
    else
      names.push_back("g" + std::to_string(i));
  }
  return names;
}

std::vector<Elem> closure(FiniteGroup const &G,
                          std::vector<Elem> const &gens,
                          std::vector<bool> &member)
{
  member.assign(G.order(), false);
  std::vector<Elem> elems{G.identity()};
  member[static_cast<std::size_t>(G.identity())] = true;

  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (Elem g : gens) {
      Elem x = G.mul(elems[i], g);
      if (!member[static_cast<std::size_t>(x)]) {
        member[static_cast<std::size_t>(x)] = true;
        elems.push_back(x);
      }
    }
  }
  return elems;
}

void require_same_parent(Subgroup const &H, Subgroup const &K)
{
  if (H.parent() != K.parent())
    throw Error(ErrorKind::ParentMismatch, "subgroups live in different groups");
}

} // namespace

FiniteGroup::FiniteGroup(std::size_t order,
                         std::vector<Elem> table,
                         std::vector<std::string> labels)
: _order(order),
  _table(std::move(table)),
  _labels(std::move(labels))
{
  init();
}

FiniteGroup::FiniteGroup(std::size_t order,
                         std::vector<Elem> table,
                         std::vector<std::string> labels,
                         std::vector<Permutation> perms,
                         std::vector<Elem> generators,
                         std::vector<std::string> generator_names)
: _order(order),
  _table(std::move(table)),
  _labels(std::move(labels)),
  _perms(std::move(perms)),
  _generators(std::move(generators)),
  _generator_names(std::move(generator_names))
{
  init();
}

void FiniteGroup::init()
{
  if (_order == 0)
    throw Error(ErrorKind::InvalidArgument, "group order must be positive");
  if (_table.size() != _order * _order)
    throw Error(ErrorKind::InvalidArgument, "multiplication table has wrong size");
  if (!_perms.empty() && _perms.size() != _order)
    throw Error(ErrorKind::InvalidArgument, "permutation list has wrong size");
  if (_generators.size() != _generator_names.size())
    throw Error(ErrorKind::InvalidArgument, "generator names do not match generators");

  auto n = static_cast<Elem>(_order);
  for (Elem x : _table) {
    if (x < 0 || x >= n)
      throw Error(ErrorKind::InvalidArgument, "table entry out of range");
  }

  // every row and column must be a permutation (latin square)
  std::vector<int> seen(_order);
  for (Elem a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem b = 0; b < n; ++b) {
      if (seen[static_cast<std::size_t>(mul(a, b))]++)
        throw Error(ErrorKind::InvalidArgument, "table is not a latin square");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem b = 0; b < n; ++b) {
      if (seen[static_cast<std::size_t>(mul(b, a))]++)
        throw Error(ErrorKind::InvalidArgument, "table is not a latin square");
    }
  }

  _identity = -1;
  for (Elem e = 0; e < n && _identity < 0; ++e) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x)
      ok = mul(e, x) == x && mul(x, e) == x;
    if (ok)
      _identity = e;
  }
  if (_identity < 0)
    throw Error(ErrorKind::InvalidArgument, "table has no identity");

  _inv.assign(_order, -1);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (mul(a, b) == _identity) {
        _inv[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (mul(inv(a), a) != _identity)
      throw Error(ErrorKind::InvalidArgument, "left and right inverses differ");
  }

  _element_orders.assign(_order, 0);
  _exponent = 1;
  for (Elem a = 0; a < n; ++a) {
    int k = 1;
    for (Elem x = a; x != _identity; x = mul(x, a))
      ++k;
    _element_orders[static_cast<std::size_t>(a)] = k;
    _exponent = std::lcm(_exponent, k);
  }

  if (_labels.empty()) {
    for (Elem a = 0; a < n; ++a)
      _labels.push_back("x" + std::to_string(a));
  }
  if (_labels.size() != _order)
    throw Error(ErrorKind::InvalidArgument, "label list has wrong size");
}

Elem FiniteGroup::power(Elem a, long long k) const
{
  int ord = element_order(a);
  long long r = ((k % ord) + ord) % ord;
  Elem x = _identity;
  for (long long i = 0; i < r; ++i)
    x = mul(x, a);
  return x;
}

bool FiniteGroup::is_abelian() const
{
  auto n = static_cast<Elem>(_order);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a))
        return false;
  return true;
}

std::optional<Elem> FiniteGroup::find_permutation(Permutation const &perm) const
{
  if (_perms.empty())
    return std::nullopt;

  std::size_t degree = _perms.front().size();
  Permutation padded = perm;
  if (padded.size() > degree) {
    // trailing fixed points beyond the action degree are harmless
    for (std::size_t i = degree; i < padded.size(); ++i)
      if (padded[i] != static_cast<int>(i))
        return std::nullopt;
    padded.resize(degree);
  }
  for (std::size_t i = padded.size(); i < degree; ++i)
    padded.push_back(static_cast<int>(i));

  auto it = std::find(_perms.begin(), _perms.end(), padded);
  if (it == _perms.end())
    return std::nullopt;
  return static_cast<Elem>(it - _perms.begin());
}

bool FiniteGroup::check_axioms() const
{
  auto n = static_cast<Elem>(_order);
  for (Elem a = 0; a < n; ++a) {
    if (mul(a, inv(a)) != _identity || mul(_identity, a) != a)
      return false;
    for (Elem b = 0; b < n; ++b) {
      Elem ab = mul(a, b);
      for (Elem c = 0; c < n; ++c)
        if (mul(ab, c) != mul(a, mul(b, c)))
          return false;
    }
  }
  return true;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Elem> elems)
: _parent(std::move(parent))
{
  FiniteGroup const &G = *_parent;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  _elements = std::move(elems);

  _member.assign(G.order(), false);
  for (Elem g : _elements) {
    if (g < 0 || static_cast<std::size_t>(g) >= G.order())
      throw Error(ErrorKind::InvalidArgument, "subgroup element out of range");
    _member[static_cast<std::size_t>(g)] = true;
  }
  if (!contains(G.identity()))
    throw Error(ErrorKind::InvalidArgument, "subgroup lacks the identity");
  if (G.order() % _elements.size() != 0)
    throw Error(ErrorKind::InvalidArgument, "subgroup order does not divide group order");

  std::size_t n = _elements.size();
  std::vector<Elem> local(G.order(), -1);
  for (std::size_t i = 0; i < n; ++i)
    local[static_cast<std::size_t>(_elements[i])] = static_cast<Elem>(i);

  std::vector<Elem> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Elem x = G.mul(_elements[i], _elements[j]);
      if (!contains(x))
        throw Error(ErrorKind::InvalidArgument, "subgroup is not closed under multiplication");
      table[i * n + j] = local[static_cast<std::size_t>(x)];
    }
  }

  std::vector<std::string> labels;
  std::vector<Permutation> perms;
  for (Elem g : _elements) {
    labels.push_back(G.label(g));
    if (!G.permutations().empty())
      perms.push_back(G.permutations()[static_cast<std::size_t>(g)]);
  }
  _group = std::make_shared<FiniteGroup const>(
    n, std::move(table), std::move(labels), std::move(perms),
    std::vector<Elem>{}, std::vector<std::string>{});
}

std::optional<Elem> Subgroup::to_local(Elem g) const
{
  auto it = std::lower_bound(_elements.begin(), _elements.end(), g);
  if (it == _elements.end() || *it != g)
    return std::nullopt;
  return static_cast<Elem>(it - _elements.begin());
}

GroupPtr group_from_generators(std::vector<Permutation> const &perms,
                               std::size_t cap,
                               std::vector<std::string> names)
{
  if (cap == 0)
    throw Error(ErrorKind::InvalidArgument, "order cap must be positive");

  std::size_t degree = 1;
  for (auto const &p : perms)
    degree = std::max(degree, p.size());

  std::vector<Permutation> gens;
  for (auto const &p : perms) {
    std::vector<bool> hit(p.size(), false);
    for (int x : p) {
      if (x < 0 || static_cast<std::size_t>(x) >= p.size() || hit[static_cast<std::size_t>(x)])
        throw Error(ErrorKind::InvalidPermutation, "not a permutation of {0..n-1}");
      hit[static_cast<std::size_t>(x)] = true;
    }
    Permutation q = p;
    for (std::size_t i = q.size(); i < degree; ++i)
      q.push_back(static_cast<int>(i));
    gens.push_back(std::move(q));
  }

  if (names.empty())
    names = default_generator_names(gens.size());
  if (names.size() != gens.size())
    throw Error(ErrorKind::InvalidArgument, "generator name count mismatch");

  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);

  // breadth-first closure; x * g means "apply x, then g"
  std::vector<Permutation> elems{id};
  std::vector<std::string> labels{"e"};
  std::vector<Elem> parent{-1};
  std::vector<int> parent_gen{-1};
  std::map<Permutation, Elem> index{{id, 0}};
  std::vector<std::vector<Elem>> rmul(gens.size());

  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation next(degree);
      for (std::size_t x = 0; x < degree; ++x)
        next[x] = gens[k][static_cast<std::size_t>(elems[i][x])];

      auto [it, inserted] = index.emplace(next, static_cast<Elem>(elems.size()));
      if (inserted) {
        if (elems.size() >= cap)
          throw Error(ErrorKind::CapExceeded,
                      "closure exceeds order cap " + std::to_string(cap));
        elems.push_back(std::move(next));
        labels.push_back(i == 0 ? names[k] : labels[i] + names[k]);
        parent.push_back(static_cast<Elem>(i));
        parent_gen.push_back(static_cast<int>(k));
      }
      rmul[k].push_back(it->second);
    }
  }

  std::size_t n = elems.size();
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    table[a * n] = static_cast<Elem>(a);
    // b = parent[b] * gen, so a * b = (a * parent[b]) * gen
    for (std::size_t b = 1; b < n; ++b) {
      Elem left = table[a * n + static_cast<std::size_t>(parent[b])];
      table[a * n + b] = rmul[static_cast<std::size_t>(parent_gen[b])][static_cast<std::size_t>(left)];
    }
  }

  std::vector<Elem> gen_elems;
  for (auto const &g : gens)
    gen_elems.push_back(index.at(g));

  return std::make_shared<FiniteGroup const>(n, std::move(table), std::move(labels),
                                             std::move(elems), std::move(gen_elems),
                                             std::move(names));
}

Subgroup subgroup_generated(GroupPtr const &G, std::vector<Elem> const &elems)
{
  for (Elem g : elems)
    if (g < 0 || static_cast<std::size_t>(g) >= G->order())
      throw Error(ErrorKind::InvalidArgument, "element index out of range");
  std::vector<bool> member;
  return Subgroup(G, closure(*G, elems, member));
}

Subgroup trivial_subgroup(GroupPtr const &G)
{
  return Subgroup(G, {G->identity()});
}

Subgroup full_subgroup(GroupPtr const &G)
{
  std::vector<Elem> all(G->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(G, std::move(all));
}

Subgroup intersection(Subgroup const &H, Subgroup const &K)
{
  require_same_parent(H, K);
  std::vector<Elem> common;
  std::set_intersection(H.elements().begin(), H.elements().end(),
                        K.elements().begin(), K.elements().end(),
                        std::back_inserter(common));
  return Subgroup(H.parent(), std::move(common));
}

Subgroup join(Subgroup const &H, Subgroup const &K)
{
  require_same_parent(H, K);
  std::vector<Elem> gens = H.elements();
  gens.insert(gens.end(), K.elements().begin(), K.elements().end());
  return subgroup_generated(H.parent(), gens);
}

Subgroup center(GroupPtr const &G)
{
  auto n = static_cast<Elem>(G->order());
  std::vector<Elem> z;
  for (Elem a = 0; a < n; ++a) {
    bool central = true;
    for (Elem g = 0; g < n && central; ++g)
      central = G->mul(a, g) == G->mul(g, a);
    if (central)
      z.push_back(a);
  }
  return Subgroup(G, std::move(z));
}

Subgroup derived_subgroup(GroupPtr const &G)
{
  auto n = static_cast<Elem>(G->order());
  std::vector<bool> seen(G->order(), false);
  std::vector<Elem> commutators;
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      Elem c = G->mul(G->mul(a, b), G->mul(G->inv(a), G->inv(b)));
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = true;
        commutators.push_back(c);
      }
    }
  }
  return subgroup_generated(G, commutators);
}

bool is_normal(Subgroup const &H)
{
  FiniteGroup const &G = *H.parent();
  auto n = static_cast<Elem>(G.order());
  for (Elem g = 0; g < n; ++g)
    for (Elem h : H.elements())
      if (!H.contains(G.conjugate(g, h)))
        return false;
  return true;
}

Subgroup normal_closure(Subgroup const &H)
{
  FiniteGroup const &G = *H.parent();
  auto n = static_cast<Elem>(G.order());
  std::vector<bool> seen(G.order(), false);
  std::vector<Elem> conjugates;
  for (Elem g = 0; g < n; ++g) {
    for (Elem h : H.elements()) {
      Elem c = G.conjugate(g, h);
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = true;
        conjugates.push_back(c);
      }
    }
  }
  return subgroup_generated(H.parent(), conjugates);
}

QuotientGroup quotient_group(Subgroup const &N)
{
  if (!is_normal(N))
    throw Error(ErrorKind::NotNormal, "quotient requires a normal subgroup");

  FiniteGroup const &G = *N.parent();
  auto n = static_cast<Elem>(G.order());
  std::vector<Elem> projection(G.order(), -1);
  std::vector<Elem> reps;

  auto assign = [&](Elem g) {
    if (projection[static_cast<std::size_t>(g)] >= 0)
      return;
    auto id = static_cast<Elem>(reps.size());
    reps.push_back(g);
    for (Elem m : N.elements())
      projection[static_cast<std::size_t>(G.mul(g, m))] = id;
  };
  assign(G.identity());
  for (Elem g = 0; g < n; ++g)
    assign(g);

  std::size_t q = reps.size();
  std::vector<Elem> table(q * q);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < q; ++a) {
    labels.push_back("[" + G.label(reps[a]) + "]");
    for (std::size_t b = 0; b < q; ++b)
      table[a * q + b] = projection[static_cast<std::size_t>(G.mul(reps[a], reps[b]))];
  }

  return {std::make_shared<FiniteGroup const>(q, std::move(table), std::move(labels)),
          std::move(projection)};
}

ClassData conjugacy_classes(FiniteGroup const &G)
{
  auto n = static_cast<Elem>(G.order());
  ClassData data;
  data.class_of.assign(G.order(), -1);

  auto orbit = [&](Elem x) {
    if (data.class_of[static_cast<std::size_t>(x)] >= 0)
      return;
    auto id = static_cast<int>(data.classes.size());
    ConjugacyClass cls{x, {}, -1};
    for (Elem g = 0; g < n; ++g) {
      Elem y = G.conjugate(g, x);
      if (data.class_of[static_cast<std::size_t>(y)] < 0) {
        data.class_of[static_cast<std::size_t>(y)] = id;
        cls.members.push_back(y);
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    data.classes.push_back(std::move(cls));
  };
  orbit(G.identity());
  for (Elem x = 0; x < n; ++x)
    orbit(x);

  for (auto &cls : data.classes)
    cls.inverse_class = data.class_of[static_cast<std::size_t>(G.inv(cls.representative))];
  return data;
}

std::vector<Subgroup> subgroup_lattice(GroupPtr const &G)
{
  FiniteGroup const &g = *G;
  auto n = static_cast<Elem>(g.order());

  struct Node
  {
    std::vector<Elem> gens;
    std::vector<Elem> elems;
  };
  std::vector<Node> nodes;
  std::set<std::vector<Elem>> known;

  auto add = [&](std::vector<Elem> gens) {
    std::vector<bool> member;
    auto elems = closure(g, gens, member);
    std::sort(elems.begin(), elems.end());
    if (known.insert(elems).second) {
      nodes.push_back({std::move(gens), std::move(elems)});
      return true;
    }
    return false;
  };

  add({});
  for (Elem x = 0; x < n; ++x)
    add({x});

  // pairs (i, j) with j >= first_new have not been joined yet
  std::size_t first_new = 0;
  while (first_new < nodes.size()) {
    std::size_t end = nodes.size();
    for (std::size_t j = first_new; j < end; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        std::vector<Elem> gens = nodes[i].gens;
        gens.insert(gens.end(), nodes[j].gens.begin(), nodes[j].gens.end());
        add(std::move(gens));
      }
    }
    first_new = end;
  }

  std::sort(nodes.begin(), nodes.end(), [](Node const &a, Node const &b) {
    if (a.elems.size() != b.elems.size())
      return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });

  std::vector<Subgroup> result;
  result.reserve(nodes.size());
  for (auto &node : nodes)
    result.emplace_back(G, std::move(node.elems));
  return result;
}

bool is_injective_homomorphism(FiniteGroup const &source,
                               FiniteGroup const &target,
                               std::vector<Elem> const &image)
{
  if (image.size() != source.order())
    return false;
  std::vector<bool> hit(target.order(), false);
  for (Elem x : image) {
    if (x < 0 || static_cast<std::size_t>(x) >= target.order() || hit[static_cast<std::size_t>(x)])
      return false;
    hit[static_cast<std::size_t>(x)] = true;
  }
  auto n = static_cast<Elem>(source.order());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (image[static_cast<std::size_t>(source.mul(a, b))]
          != target.mul(image[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(b)]))
        return false;
  return true;
}

} // namespace chaincore
