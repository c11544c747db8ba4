#include <doctest.h>

#include "chaincore/char_modp.hpp"
#include "chaincore/cli.hpp"
#include "chaincore/error.hpp"
#include "oracles.hpp"

using namespace chaincore;

namespace {

bool slow_is_prime(std::int64_t n)
{
  if (n < 2)
    return false;
  for (std::int64_t d = 2; d < n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

std::int64_t slow_choose_prime(FiniteGroup const &G)
{
  for (std::int64_t p = 2;; ++p)
    if (slow_is_prime(p) && p % G.exponent() == 1 && p > static_cast<std::int64_t>(G.order()))
      return p;
}

Residue reduce(std::int64_t x, Residue p)
{ return ((x % p) + p) % p; }

// sum over elements, not classes
Residue elementwise_inner(CharacterTableModP const &t, int V, int W)
{
  auto const &G = *t.group;
  Residue s = 0;
  for (Elem g = 0; g < static_cast<Elem>(G.order()); ++g)
    s = (s + t.value(V, g) * t.value(W, G.inv(g))) % t.p;
  return s;
}

std::vector<char const *> const corpus = {"C2", "C3", "C4", "C6", "C8", "C12", "C2xC2", "C2xC4", "S3",
                                          "S4", "D4", "D5", "D6", "Q8", "A4", "SL23"};

} // namespace

TEST_CASE("prime choice")
{
  CHECK(choose_prime(*parse_group_spec("S3")) == 7);
  CHECK(choose_prime(*parse_group_spec("Q8")) == 13);
  CHECK(choose_prime(*parse_group_spec("C2")) == 3);
  for (auto const *spec : corpus) {
    CAPTURE(spec);
    auto G = parse_group_spec(spec);
    auto p = choose_prime(*G);
    CHECK(p == slow_choose_prime(*G));
    auto q = next_valid_prime(*G, p);
    CHECK(q > p);
    CHECK(is_valid_prime(*G, q));
    for (auto r = p + 1; r < q; ++r)
      CHECK_FALSE(is_valid_prime(*G, r));
  }
}

TEST_CASE("bad primes are rejected")
{
  auto G = parse_group_spec("S3");
  for (Residue p : {5, 11, 17, 8}) {
    CAPTURE(p);
    try {
      character_table_modp(G, p);
      FAIL("accepted an inadmissible prime");
    } catch (Error const &e) {
      CHECK(e.kind() == ErrorKind::InvalidArgument);
    }
  }
}

TEST_CASE("small tables")
{
  auto t2 = character_table_modp(parse_group_spec("C2"), 3);
  CHECK(t2.table == std::vector<ClassFunction>{{1, 1}, {1, 2}});

  auto t = character_table_modp(parse_group_spec("S3"), 7);
  CHECK(t.degrees == std::vector<std::int64_t>{1, 1, 2});
  CHECK(t.table.size() == 3);

  auto q = character_table_modp(parse_group_spec("Q8"), 13);
  CHECK(q.degrees == std::vector<std::int64_t>{1, 1, 1, 1, 2});
}

TEST_CASE("S3 and S4 rows agree with permutation characters")
{
  for (auto const *spec : {"S3", "S4"}) {
    CAPTURE(spec);
    auto G = parse_group_spec(spec);
    auto t = character_table_modp(G, choose_prime(*G));
    auto const &perms = G->permutations();
    // sign, standard and standard times sign, computed from fixed points
    std::vector<std::vector<std::int64_t>> expected(3);
    for (Elem g = 0; g < static_cast<Elem>(G->order()); ++g) {
      auto const &perm = perms[static_cast<std::size_t>(g)];
      expected[0].push_back(oracle::sign(perm));
      expected[1].push_back(oracle::fixed_points(perm) - 1);
      expected[2].push_back((oracle::fixed_points(perm) - 1) * oracle::sign(perm));
    }
    for (auto const &chi : expected) {
      bool found = false;
      for (std::size_t V = 0; V < t.size(); ++V) {
        bool same = true;
        for (Elem g = 0; g < static_cast<Elem>(G->order()); ++g)
          same = same && t.value(static_cast<int>(V), g) == reduce(chi[static_cast<std::size_t>(g)], t.p);
        found = found || same;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("orthogonality, degrees and the regular character")
{
  for (auto const *spec : corpus) {
    CAPTURE(spec);
    auto G = parse_group_spec(spec);
    auto t = character_table_modp(G, choose_prime(*G));
    CHECK(check_character_table(t).empty());

    std::int64_t sum = 0;
    for (auto d : t.degrees) {
      sum += d * d;
      CHECK(static_cast<std::int64_t>(G->order()) % d == 0);
    }
    CHECK(sum == static_cast<std::int64_t>(G->order()));

    auto n = static_cast<Residue>(G->order()) % t.p;
    for (std::size_t V = 0; V < t.size(); ++V)
      for (std::size_t W = 0; W < t.size(); ++W)
        CHECK(elementwise_inner(t, static_cast<int>(V), static_cast<int>(W)) == (V == W ? n : 0));

    auto reg = regular_character(t);
    for (std::size_t V = 0; V < t.size(); ++V)
      CHECK(multiplicity(t, reg, static_cast<int>(V)) == t.degrees[V]);
  }
}

TEST_CASE("multiplicities in S3")
{
  auto G = parse_group_spec("S3");
  auto t = character_table_modp(G, 7);
  CHECK(multiplicity(t, t.table[0], 0) == 1);
  CHECK(multiplicity(t, regular_character(t), 2) == 2);

  // std (x) std against sgn, summed over the six elements directly
  std::int64_t brute = 0;
  for (auto const &perm : G->permutations()) {
    auto chi = oracle::fixed_points(perm) - 1;
    brute += chi * chi * oracle::sign(perm);
  }
  brute /= 6;
  auto square = pointwise_product(t, t.table[2], t.table[2]);
  CHECK(multiplicity(t, square, 1) == brute);
  CHECK(brute == 1);

  try {
    multiplicity(t, ClassFunction{1, 0, 0}, 0, 1);
    FAIL("accepted a non-character");
  } catch (Error const &e) {
    CHECK(e.kind() == ErrorKind::NonIntegral);
  }
}

TEST_CASE("discrete logarithms")
{
  CHECK(discrete_log(13, 5, 12, 4) == 2);
  CHECK(discrete_log(13, 5, 1, 4) == 0);
  CHECK(discrete_log(7, 3, 3, 6) == 1);
  try {
    discrete_log(13, 5, 2, 4);
    FAIL("2 is not a power of 5 mod 13");
  } catch (Error const &e) {
    CHECK(e.kind() == ErrorKind::NotAPower);
  }
}

TEST_CASE("central characters")
{
  auto Q = parse_group_spec("Q8");
  auto t = character_table_modp(Q, 13);
  auto minus_one = parse_subgroup_spec(Q, "center").elements().back();
  CHECK(minus_one != Q->identity());
  CHECK(central_character(t, 4, minus_one) == 2);
  CHECK(central_character(t, 0, minus_one) == 0);
  for (int V = 0; V < 5; ++V)
    CHECK(central_character(t, V, Q->identity()) == 0);

  auto S = parse_group_spec("S3");
  auto ts = character_table_modp(S, 7);
  try {
    central_character(ts, 2, *S->find_permutation({1, 0, 2}));
    FAIL("a transposition is not central");
  } catch (Error const &e) {
    CHECK(e.kind() == ErrorKind::NotCentral);
  }

  for (auto const *spec : {"C12", "C2xC4", "D4", "SL23", "Q8", "D6"}) {
    CAPTURE(spec);
    auto G = parse_group_spec(spec);
    auto tg = character_table_modp(G, choose_prime(*G));
    auto Z = center(G).elements();
    for (std::size_t V = 0; V < tg.size(); ++V)
      for (Elem a : Z)
        for (Elem b : Z)
          CHECK((central_character(tg, static_cast<int>(V), a) + central_character(tg, static_cast<int>(V), b))
                  % tg.exponent
                == central_character(tg, static_cast<int>(V), G->mul(a, b)));
  }
}

TEST_CASE("prime independence of lifted integers")
{
  for (auto const *spec : corpus) {
    CAPTURE(spec);
    auto G = parse_group_spec(spec);
    auto p = choose_prime(*G);
    auto t1 = character_table_modp(G, p);
    auto t2 = character_table_modp(G, next_valid_prime(*G, p));
    CHECK(t1.degrees == t2.degrees);
    auto Z = center(G);
    for (std::size_t V = 0; V < t1.size(); ++V) {
      for (std::size_t W = 0; W < t1.size(); ++W) {
        auto prod1 = pointwise_product(t1, t1.table[V], t1.table[W]);
        auto prod2 = pointwise_product(t2, t2.table[V], t2.table[W]);
        for (std::size_t U = 0; U < t1.size(); ++U)
          CHECK(multiplicity(t1, prod1, static_cast<int>(U)) == multiplicity(t2, prod2, static_cast<int>(U)));
      }
      for (Elem z : Z.elements())
        CHECK(central_character(t1, static_cast<int>(V), z) == central_character(t2, static_cast<int>(V), z));
    }
  }
}
