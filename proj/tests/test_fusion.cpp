#include <doctest.h>

#include <fstream>
#include <functional>

#include "chaincore/cli.hpp"
#include "chaincore/error.hpp"
#include "chaincore/fusion.hpp"
#include "oracles.hpp"

using namespace chaincore;

namespace {

std::string const data_dir = CHAINCORE_SOURCE_DIR "/data/";
std::string const test_data_dir = CHAINCORE_SOURCE_DIR "/tests/data/";

// N^U_{V,W} as (1/|G|) sum over elements of chi_V chi_W conj(chi_U), integers
std::int64_t integer_fusion(std::vector<std::vector<std::int64_t>> const &chars, std::size_t U, std::size_t V,
                            std::size_t W)
{
  std::int64_t s = 0;
  for (std::size_t g = 0; g < chars[0].size(); ++g)
    s += chars[V][g] * chars[W][g] * chars[U][g];
  return s / static_cast<std::int64_t>(chars[0].size());
}

BranchingData s3_over_a3()
{
  auto G = parse_group_spec("S3");
  auto tG = character_table_modp(G, 7);
  return branching_for_subgroup(tG, parse_subgroup_spec(G, "gen:[(0 1 2)]"));
}

ErrorKind kind_of(std::function<void()> const &body)
{
  try {
    body();
  } catch (Error const &e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

std::string read(std::string const &path)
{
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("S3 fusion rules from permutation characters")
{
  auto G = parse_group_spec("S3");
  auto f = fusion_from_group(character_table_modp(G, 7));
  CHECK(f.labels() == std::vector<std::string>{"1a", "1b", "2a"});
  CHECK(f.dims() == MultVec{1, 1, 2});

  // triv, sgn, std; all real so conj is the identity
  std::vector<std::vector<std::int64_t>> chars(3);
  for (auto const &perm : G->permutations()) {
    chars[0].push_back(1);
    chars[1].push_back(oracle::sign(perm));
    chars[2].push_back(oracle::fixed_points(perm) - 1);
  }
  for (int U = 0; U < 3; ++U)
    for (int V = 0; V < 3; ++V)
      for (int W = 0; W < 3; ++W)
        CHECK(f.N(U, V, W) == integer_fusion(chars, static_cast<std::size_t>(U), static_cast<std::size_t>(V),
                                             static_cast<std::size_t>(W)));
  CHECK(f.product(2, 2) == MultVec{1, 1, 1});
}

TEST_CASE("unit law and Q8 rules")
{
  for (auto const *spec : {"Q8", "S4", "C6", "SL23"}) {
    CAPTURE(spec);
    auto G = parse_group_spec(spec);
    auto f = fusion_from_group(character_table_modp(G, choose_prime(*G)));
    for (int V = 0; V < static_cast<int>(f.size()); ++V)
      CHECK(f.product(f.unit(), V) == f.basis(V));
    CHECK(validate(f).ok());
  }
  auto Q = parse_group_spec("Q8");
  auto f = fusion_from_group(character_table_modp(Q, 13));
  CHECK(f.product(4, 4) == MultVec{1, 1, 1, 1, 0});
}

TEST_CASE("fusion dual matches the inverse-class character")
{
  auto G = parse_group_spec("C4");
  auto t = character_table_modp(G, 5);
  auto f = fusion_from_group(t);
  for (int V = 0; V < 4; ++V) {
    int D = f.dual()[static_cast<std::size_t>(V)];
    for (Elem g = 0; g < 4; ++g)
      CHECK(t.value(D, g) == t.value(V, G->inv(g)));
  }
}

TEST_CASE("branching S3 over A3")
{
  auto b = s3_over_a3();
  CHECK(b.matrix == std::vector<MultVec>{{1, 0, 0}, {1, 0, 0}, {0, 1, 1}});
  CHECK(restrict(b, {0, 0, 1}) == MultVec{0, 1, 1});
  CHECK(restrict(b, {0, 0, 0}) == MultVec{0, 0, 0});
  CHECK(restrict(b, {1, 1, 0}) == MultVec{2, 0, 0});
  CHECK(induce(b, {1, 0, 0}) == MultVec{1, 1, 0});
  CHECK(induce(b, {0, 1, 0}) == MultVec{0, 0, 1});
  CHECK(validate(b).ok());

  auto G = parse_group_spec("S3");
  auto tG = character_table_modp(G, 7);
  auto A3 = parse_subgroup_spec(G, "gen:[(0 1 2)]");
  // brute force over the three elements of A3
  for (std::size_t V = 0; V < 3; ++V) {
    auto tH = character_table_modp(A3.as_group(), 7);
    for (std::size_t W = 0; W < 3; ++W) {
      Residue s = 0;
      for (Elem h = 0; h < 3; ++h)
        s = (s + tG.value(static_cast<int>(V), A3.to_parent(h))
                   * tH.value(static_cast<int>(W), A3.as_group()->inv(h))) % 7;
      CHECK(s * inv_mod(3, 7) % 7 == b.matrix[V][W]);
    }
  }
}

TEST_CASE("identity and trivial branching")
{
  auto G = parse_group_spec("D4");
  auto tG = character_table_modp(G, choose_prime(*G));
  auto full = branching_for_subgroup(tG, full_subgroup(G));
  for (std::size_t V = 0; V < full.matrix.size(); ++V)
    for (std::size_t W = 0; W < full.matrix.size(); ++W)
      CHECK(full.matrix[V][W] == (V == W ? 1 : 0));
  auto y = MultVec{0, 2, 0, 1, 1};
  CHECK(induce(full, y) == y);

  auto triv = branching_for_subgroup(tG, trivial_subgroup(G));
  for (std::size_t V = 0; V < triv.matrix.size(); ++V)
    CHECK(triv.matrix[V] == MultVec{tG.degrees[V]});
}

TEST_CASE("Frobenius reciprocity on basis vectors")
{
  for (auto const *spec : {"S4", "D6", "SL23"}) {
    CAPTURE(spec);
    auto G = parse_group_spec(spec);
    auto tG = character_table_modp(G, choose_prime(*G));
    for (auto const &H : subgroup_lattice(G)) {
      auto b = branching_for_subgroup(tG, H);
      for (int V = 0; V < static_cast<int>(b.big.size()); ++V)
        for (int W = 0; W < static_cast<int>(b.small.size()); ++W)
          CHECK(dot(restrict(b, b.big.basis(V)), b.small.basis(W)) == dot(b.big.basis(V), induce(b, b.small.basis(W))));
    }
  }
}

TEST_CASE("branching input errors")
{
  auto G = parse_group_spec("S3");
  auto tG = character_table_modp(G, 7);
  auto A3 = parse_subgroup_spec(G, "gen:[(0 1 2)]");
  std::vector<Elem> embed;
  for (Elem h = 0; h < 3; ++h)
    embed.push_back(A3.to_parent(h));

  auto tH13 = character_table_modp(A3.as_group(), 13);
  CHECK(kind_of([&] { branching_from_groups(tG, tH13, embed); }) == ErrorKind::PrimeMismatch);

  auto tH7 = character_table_modp(A3.as_group(), 7);
  std::vector<Elem> bad(3, G->identity());
  CHECK(kind_of([&] { branching_from_groups(tG, tH7, bad); }) == ErrorKind::NotAHomomorphism);
  CHECK(branching_from_groups(tG, tH7, embed).matrix == s3_over_a3().matrix);

  auto other = parse_group_spec("S3");
  auto foreign = parse_subgroup_spec(other, "gen:[(0 1 2)]");
  CHECK(kind_of([&] { branching_for_subgroup(tG, foreign); }) == ErrorKind::ParentMismatch);

  CHECK(kind_of([&] { restrict(s3_over_a3(), {1, 0}); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { induce(s3_over_a3(), {1, 0}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("non-disjoint triples")
{
  auto Q = parse_group_spec("Q8");
  auto tG = character_table_modp(Q, 13);
  auto b = branching_for_subgroup(tG, center(Q));
  CHECK(non_disjoint(b, 1, 4, 4));
  CHECK_FALSE(non_disjoint(b, 4, 1, 2));
  for (int V = 0; V < 5; ++V)
    CHECK(non_disjoint(b, V, V, 0));

  // brute definition: restrictions of U and V (x) W share a constituent
  for (int U = 0; U < 5; ++U)
    for (int V = 0; V < 5; ++V)
      for (int W = 0; W < 5; ++W) {
        auto ru = restrict(b, b.big.basis(U));
        auto rvw = restrict(b, b.big.product(V, W));
        bool shared = false;
        for (std::size_t k = 0; k < ru.size(); ++k)
          shared = shared || (ru[k] > 0 && rvw[k] > 0);
        CHECK(non_disjoint(b, U, V, W) == shared);
      }
}

TEST_CASE("validation names the broken axiom")
{
  auto f = fusion_from_group(character_table_modp(parse_group_spec("S3"), 7));
  CHECK(validate(f).ok());

  std::vector<MultVec> tensor;
  for (int V = 0; V < 3; ++V)
    for (int W = 0; W < 3; ++W)
      tensor.push_back(f.product(V, W));
  tensor[1] = {0, 0, 1}; // unit (x) sgn = std
  FusionData broken(f.labels(), f.dims(), f.unit(), f.dual(), tensor);
  auto report = validate(broken);
  CHECK_FALSE(report.ok());
  bool named = false;
  for (auto const &failure : report.failures)
    named = named || failure.axiom == "unit";
  CHECK(named);
}

TEST_CASE("bundled fusion files")
{
  auto kp = load_fusion_file(data_dir + "kac_paljutkin.fusion.json");
  CHECK(kp.fusion.size() == 5);
  CHECK(kp.fusion.dims() == MultVec{1, 1, 1, 1, 2});
  CHECK(validate(kp.fusion).ok());
  std::int64_t sum = 0;
  for (auto d : kp.fusion.dims())
    sum += d * d;
  CHECK(sum == 8);
  CHECK(kp.expected_chain_group == std::vector<std::int64_t>{2});
  CHECK_FALSE(kp.branching);

  auto c2 = load_fusion_file(data_dir + "c2.fusion.json");
  CHECK(c2.fusion.size() == 2);
  auto group_ring = fusion_from_group(character_table_modp(parse_group_spec("C2"), 3));
  CHECK(c2.fusion.dims() == group_ring.dims());
  for (int V = 0; V < 2; ++V)
    for (int W = 0; W < 2; ++W)
      CHECK(c2.fusion.product(V, W) == group_ring.product(V, W));
}

TEST_CASE("malformed fusion files")
{
  CHECK(kind_of([&] { load_fusion_file(test_data_dir + "corrupted.fusion.json"); }) == ErrorKind::ValidationError);
  try {
    load_fusion_file(test_data_dir + "corrupted.fusion.json");
  } catch (Error const &e) {
    CHECK(std::string(e.what()).find("dimension") != std::string::npos);
  }

  CHECK(kind_of([&] { parse_fusion_json("{\"labels\": [\"1\"],"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_fusion_json("{\"labels\": [\"1\"]}"); }) == ErrorKind::ParseError);
  try {
    parse_fusion_json("{\"labels\": [\"1\"]}");
  } catch (Error const &e) {
    CHECK(std::string(e.what()).find("dims") != std::string::npos);
  }
  CHECK(kind_of([&] { load_fusion_file(test_data_dir + "missing.json"); }) == ErrorKind::ParseError);

  auto text = read(data_dir + "c2.fusion.json");
  CHECK(parse_fusion_json(text).fusion.size() == 2);
}

TEST_CASE("non-commutative rings need an explicit opt-in")
{
  // based ring of S3 viewed through its group elements: noncommutative
  std::vector<std::string> labels = {"e", "r", "rr", "s", "sr", "srr"};
  auto G = parse_group_spec("S3");
  std::vector<Elem> elems;
  std::vector<MultVec> tensor;
  for (Elem a = 0; a < 6; ++a)
    for (Elem b = 0; b < 6; ++b) {
      MultVec v(6, 0);
      v[static_cast<std::size_t>(G->mul(a, b))] = 1;
      tensor.push_back(v);
    }
  std::vector<int> dual;
  for (Elem a = 0; a < 6; ++a)
    dual.push_back(G->inv(a));
  FusionData f(labels, MultVec(6, 1), 0, dual, tensor);
  CHECK_FALSE(f.commutative());

  nlohmann::json doc = {{"labels", labels}, {"dims", MultVec(6, 1)}, {"unit", 0}, {"dual", dual}};
  doc["tensor"] = nlohmann::json::array();
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      doc["tensor"].push_back({{"v", a}, {"w", b}, {"out", tensor[static_cast<std::size_t>(a * 6 + b)]}});
  CHECK(kind_of([&] { parse_fusion_json(doc.dump()); }) == ErrorKind::NonCommutativeFusion);
  auto file = parse_fusion_json(doc.dump(), true);
  CHECK_FALSE(file.fusion.commutative());
  CHECK(validate(file.fusion).ok());
}
