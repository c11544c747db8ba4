#include <doctest.h>

#include "chaincore/cli.hpp"
#include "chaincore/error.hpp"
#include "chaincore/group.hpp"
#include "oracles.hpp"

using namespace chaincore;

namespace {

std::set<oracle::Perm> as_perms(Subgroup const &H, std::size_t n)
{
  std::set<oracle::Perm> out;
  for (Elem g : H.elements())
    out.insert(oracle::pad(H.parent()->permutations()[static_cast<std::size_t>(g)], n));
  return out;
}

GroupPtr s3()
{ return group_from_generators({oracle::cycle(3, {0, 1}), oracle::cycle(3, {0, 1, 2})}); }

Elem elem(GroupPtr const &G, std::vector<int> const &perm)
{ return *G->find_permutation(perm); }

} // namespace

TEST_CASE("closure orders")
{
  CHECK(group_from_generators({oracle::cycle(3, {0, 1, 2})})->order() == 3);
  CHECK(s3()->order() == 6);
  CHECK(group_from_generators({})->order() == 1);

  std::vector<std::vector<oracle::Perm>> cases = {
    {oracle::cycle(4, {0, 1, 2, 3}), oracle::cycle(4, {0, 2})},
    {oracle::cycle(5, {0, 1, 2}), oracle::cycle(5, {2, 3, 4})},
    {oracle::cycle(6, {0, 1}), oracle::cycle(6, {2, 3, 4, 5})},
    {oracle::cycle(4, {0, 1}), oracle::cycle(4, {0, 1, 2, 3})},
  };
  for (auto const &gens : cases)
    CHECK(group_from_generators(gens)->order() == oracle::closure(gens, 6).size());
}

TEST_CASE("group axioms and multiplication order")
{
  auto G = group_from_generators({oracle::cycle(4, {0, 1}), oracle::cycle(4, {0, 1, 2, 3})});
  CHECK(G->check_axioms());
  auto const &perms = G->permutations();
  for (Elem a = 0; a < static_cast<Elem>(G->order()); ++a) {
    for (Elem b = 0; b < static_cast<Elem>(G->order()); ++b) {
      auto expected = oracle::compose(perms[static_cast<std::size_t>(a)], perms[static_cast<std::size_t>(b)]);
      CHECK(perms[static_cast<std::size_t>(G->mul(a, b))] == expected);
    }
  }
  for (Elem a = 0; a < static_cast<Elem>(G->order()); ++a)
    CHECK(G->element_order(a) == oracle::order(perms[static_cast<std::size_t>(a)]));
  CHECK(G->exponent() == 12);
}

TEST_CASE("closure beyond the cap is rejected")
{
  auto gens = std::vector<Permutation>{oracle::cycle(7, {0, 1}), oracle::cycle(7, {0, 1, 2, 3, 4, 5, 6})};
  CHECK_THROWS_AS(group_from_generators(gens), Error);
  try {
    group_from_generators(gens);
  } catch (Error const &e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
  CHECK(group_from_generators(gens, 5040)->order() == 5040);
}

TEST_CASE("invalid permutations")
{
  try {
    group_from_generators({{0, 0, 1}});
    FAIL("accepted a non-bijection");
  } catch (Error const &e) {
    CHECK(e.kind() == ErrorKind::InvalidPermutation);
  }
}

TEST_CASE("subgroups of S3 and Q8")
{
  auto G = s3();
  auto a3 = subgroup_generated(G, {elem(G, {1, 2, 0})});
  CHECK(a3.order() == 3);
  CHECK(subgroup_generated(G, {}).order() == 1);

  auto t01 = subgroup_generated(G, {elem(G, {1, 0, 2})});
  auto t02 = subgroup_generated(G, {elem(G, {2, 1, 0})});
  CHECK(intersection(t01, t02).order() == 1);
  CHECK(intersection(t01, t01) == t01);
  CHECK(join(t01, t02).order() == 6);
  CHECK(join(t01, trivial_subgroup(G)) == t01);

  auto Q = parse_group_spec("Q8");
  auto i = parse_subgroup_spec(Q, "gen:[i]");
  auto j = parse_subgroup_spec(Q, "gen:[j]");
  CHECK(i.order() == 4);
  CHECK(intersection(i, j).order() == 2);
  CHECK(intersection(i, j) == center(Q));
  CHECK(join(i, j).order() == 8);
}

TEST_CASE("center against a commutation scan")
{
  for (auto const *spec : {"Q8", "S3", "D4", "D6", "C2xC4", "SL23", "A4", "S4"}) {
    CAPTURE(spec);
    auto G = parse_group_spec(spec);
    auto all = as_perms(full_subgroup(G), 0);
    CHECK(as_perms(center(G), 0) == oracle::center(all));
  }
  auto Q = parse_group_spec("Q8");
  CHECK(center(Q).order() == 2);
  CHECK(center(parse_group_spec("C2xC4")).order() == 8);
  CHECK(center(s3()).order() == 1);
}

TEST_CASE("normality")
{
  auto G = s3();
  CHECK(is_normal(subgroup_generated(G, {elem(G, {1, 2, 0})})));
  CHECK_FALSE(is_normal(subgroup_generated(G, {elem(G, {1, 0, 2})})));
  CHECK(is_normal(full_subgroup(G)));

  for (auto const *spec : {"S4", "D4", "A4", "SL23"}) {
    CAPTURE(spec);
    auto H = parse_group_spec(spec);
    auto all = as_perms(full_subgroup(H), 0);
    for (auto const &K : subgroup_lattice(H))
      CHECK(is_normal(K) == oracle::is_normal(all, as_perms(K, 0)));
  }
}

TEST_CASE("normal closure")
{
  auto G = s3();
  auto t01 = subgroup_generated(G, {elem(G, {1, 0, 2})});
  CHECK(normal_closure(t01).order() == 6);
  auto a3 = subgroup_generated(G, {elem(G, {1, 2, 0})});
  CHECK(normal_closure(a3) == a3);
  CHECK(normal_closure(trivial_subgroup(G)).order() == 1);
}

TEST_CASE("quotients")
{
  auto S4 = parse_group_spec("S4");
  auto V4 = parse_subgroup_spec(S4, "gen:[(0 1)(2 3),(0 2)(1 3)]");
  CHECK(V4.order() == 4);
  auto Q = quotient_group(V4);
  CHECK(Q.group->order() == 6);
  CHECK_FALSE(Q.group->is_abelian());
  for (Elem a = 0; a < static_cast<Elem>(S4->order()); ++a)
    for (Elem b = 0; b < static_cast<Elem>(S4->order()); ++b)
      CHECK(Q.projection[static_cast<std::size_t>(S4->mul(a, b))]
            == Q.group->mul(Q.projection[static_cast<std::size_t>(a)], Q.projection[static_cast<std::size_t>(b)]));

  auto byTrivial = quotient_group(trivial_subgroup(S4));
  CHECK(byTrivial.group->order() == 24);
  CHECK(byTrivial.group->exponent() == S4->exponent());
  CHECK(quotient_group(full_subgroup(S4)).group->order() == 1);

  auto G = s3();
  try {
    quotient_group(subgroup_generated(G, {elem(G, {1, 0, 2})}));
    FAIL("quotient by a non-normal subgroup");
  } catch (Error const &e) {
    CHECK(e.kind() == ErrorKind::NotNormal);
  }
}

TEST_CASE("conjugacy classes")
{
  auto sizes = [](GroupPtr const &G) {
    std::vector<std::size_t> out;
    for (auto const &c : conjugacy_classes(*G).classes)
      out.push_back(c.members.size());
    return out;
  };
  CHECK(sizes(s3()) == std::vector<std::size_t>{1, 3, 2});
  auto q8 = sizes(parse_group_spec("Q8"));
  std::sort(q8.begin(), q8.end());
  CHECK(q8 == std::vector<std::size_t>{1, 1, 2, 2, 2});
  CHECK(sizes(parse_group_spec("C6")) == std::vector<std::size_t>(6, 1));

  for (auto const *spec : {"S4", "SL23", "D5", "A4"}) {
    CAPTURE(spec);
    auto G = parse_group_spec(spec);
    auto s = sizes(G);
    std::sort(s.begin(), s.end());
    CHECK(s == oracle::class_sizes(as_perms(full_subgroup(G), 0)));
    auto cd = conjugacy_classes(*G);
    CHECK(cd.classes.front().representative == G->identity());
    for (auto const &c : cd.classes)
      CHECK(cd.class_of[static_cast<std::size_t>(G->inv(c.representative))] == c.inverse_class);
  }
}

TEST_CASE("subgroup lattices have the known sizes")
{
  std::vector<std::pair<char const *, std::size_t>> known = {
    {"S3", 6}, {"S4", 30}, {"D4", 10}, {"Q8", 6}, {"A4", 10}, {"SL23", 15}, {"C12", 6}, {"C2xC2", 5}};
  for (auto const &[spec, count] : known) {
    CAPTURE(spec);
    auto lattice = subgroup_lattice(parse_group_spec(spec));
    CHECK(lattice.size() == count);
    CHECK(lattice.front().order() == 1);
  }
}

TEST_CASE("associativity of random products")
{
  auto G = parse_group_spec("SL23");
  auto n = static_cast<Elem>(G->order());
  for (Elem a = 0; a < n; a += 3)
    for (Elem b = 0; b < n; b += 5)
      for (Elem c = 0; c < n; c += 7)
        CHECK(G->mul(G->mul(a, b), c) == G->mul(a, G->mul(b, c)));
}

TEST_CASE("injective homomorphism check")
{
  auto G = s3();
  auto a3 = subgroup_generated(G, {elem(G, {1, 2, 0})});
  std::vector<Elem> embed(a3.order());
  for (std::size_t i = 0; i < embed.size(); ++i)
    embed[i] = a3.to_parent(static_cast<Elem>(i));
  CHECK(is_injective_homomorphism(*a3.as_group(), *G, embed));
  std::vector<Elem> bad(a3.order(), G->identity());
  CHECK_FALSE(is_injective_homomorphism(*a3.as_group(), *G, bad));
}
