#include "chaincore/chain_center.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "chaincore/error.hpp"

namespace chaincore {

namespace {

std::string show_tuple(std::vector<std::int64_t> const &v)
{
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<std::int64_t> prime_factors(std::int64_t n)
{
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0)
        n /= q;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

std::size_t closure_size(FiniteGroup const &A, std::vector<Elem> const &gens)
{
  std::vector<bool> member(A.order(), false);
  std::vector<Elem> elems{A.identity()};
  member[static_cast<std::size_t>(A.identity())] = true;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (Elem g : gens) {
      Elem x = A.mul(elems[i], g);
      if (!member[static_cast<std::size_t>(x)]) {
        member[static_cast<std::size_t>(x)] = true;
        elems.push_back(x);
      }
    }
  }
  return elems.size();
}

} // namespace

Verdict combine(std::vector<VerdictEntry> const &verdicts)
{
  Verdict v = Verdict::Pass;
  for (auto const &e : verdicts) {
    if (e.status == Verdict::Fail)
      return Verdict::Fail;
    if (e.status == Verdict::Inconclusive)
      v = Verdict::Inconclusive;
  }
  return v;
}

ChainPresentation chain_presentation(BranchingData const &b, bool allow_noncommutative)
{
  if (!b.big.commutative() && !allow_noncommutative)
    throw Error(ErrorKind::NonCommutativeFusion,
                "chain group of a non-commutative fusion ring needs explicit opt-in");

  auto n = static_cast<int>(b.big.size());
  ChainPresentation out;
  out.presentation.ngens = n;

  // restricted products B[V] * B[W] in the small ring
  std::vector<MultVec> products(static_cast<std::size_t>(n * n));
  for (int V = 0; V < n; ++V)
    for (int W = 0; W < n; ++W)
      products[static_cast<std::size_t>(V * n + W)] =
        b.small.multiply(b.matrix[static_cast<std::size_t>(V)], b.matrix[static_cast<std::size_t>(W)]);

  std::set<std::vector<std::int64_t>> rows;
  for (int U = 0; U < n; ++U) {
    for (int V = 0; V < n; ++V) {
      for (int W = 0; W < n; ++W) {
        if (dot(b.matrix[static_cast<std::size_t>(U)], products[static_cast<std::size_t>(V * n + W)]) <= 0)
          continue;
        out.triples.push_back({U, V, W});
        out.presentation.relations.push_back({-(U + 1), V + 1, W + 1});
        std::vector<std::int64_t> row(static_cast<std::size_t>(n), 0);
        row[static_cast<std::size_t>(U)] -= 1;
        row[static_cast<std::size_t>(V)] += 1;
        row[static_cast<std::size_t>(W)] += 1;
        if (std::any_of(row.begin(), row.end(), [](std::int64_t x) { return x != 0; }))
          rows.insert(std::move(row));
      }
    }
  }
  out.exponent_rows.assign(rows.begin(), rows.end());
  return out;
}

Subgroup relative_center(Subgroup const &H)
{
  return intersection(center(H.parent()), H);
}

AbelianBasis abelian_basis(Subgroup const &Z)
{
  FiniteGroup const &A = *Z.as_group();
  if (!A.is_abelian())
    throw Error(ErrorKind::NotAbelian, "subgroup is not abelian");

  auto factors = dual_group(Z).invariant_factors();
  auto n = static_cast<Elem>(A.order());

  // largest factor first; each new generator must grow the span by its order
  std::vector<Elem> chosen;
  std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t k, std::size_t span) {
    if (k == factors.size())
      return span == A.order();
    auto d = factors[factors.size() - 1 - k];
    for (Elem x = 0; x < n; ++x) {
      if (A.element_order(x) != d)
        continue;
      chosen.push_back(x);
      std::size_t grown = closure_size(A, chosen);
      if (grown == span * static_cast<std::size_t>(d) && search(k + 1, grown))
        return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(0, 1))
    throw Error(ErrorKind::NotAbelian, "no basis found for abelian subgroup");

  AbelianBasis basis;
  for (std::size_t i = chosen.size(); i-- > 0;) {
    basis.generators.push_back(Z.to_parent(chosen[i]));
    basis.orders.push_back(A.element_order(chosen[i]));
  }
  return basis;
}

FiniteAbelianGroup dual_group(Subgroup const &Z)
{
  FiniteGroup const &A = *Z.as_group();
  if (!A.is_abelian())
    throw Error(ErrorKind::NotAbelian, "subgroup is not abelian");

  auto order = static_cast<std::int64_t>(A.order());
  auto n = static_cast<Elem>(A.order());
  std::vector<std::int64_t> cyclic;
  for (auto q : prime_factors(order)) {
    // count[k] = #{x : x^(q^k) = 1} = q^(sum_i min(k, a_i))
    std::vector<std::int64_t> count{1};
    std::int64_t qk = 1;
    while (true) {
      qk *= q;
      std::int64_t c = 0;
      for (Elem x = 0; x < n; ++x)
        if (qk % A.element_order(x) == 0)
          ++c;
      if (c == count.back())
        break;
      count.push_back(c);
    }
    // factors of order >= q^k number log_q(count[k] / count[k-1])
    std::vector<int> at_least;
    for (std::size_t k = 1; k < count.size(); ++k) {
      std::int64_t ratio = count[k] / count[k - 1];
      int m = 0;
      while (ratio > 1) {
        ratio /= q;
        ++m;
      }
      at_least.push_back(m);
    }
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      std::int64_t qpow = 1;
      for (std::size_t i = 0; i <= k; ++i)
        qpow *= q;
      for (int i = 0; i < at_least[k] - next; ++i)
        cyclic.push_back(qpow);
    }
  }
  return FiniteAbelianGroup::from_cyclic_orders(cyclic);
}

CentralCharacterTable canonical_map(BranchingData const &b,
                                    CharacterTableModP const &tG,
                                    Subgroup const &Z)
{
  if (b.big.size() != tG.size())
    throw Error(ErrorKind::DimensionMismatch, "branching data does not match the character table");
  if (Z.parent() != tG.group)
    throw Error(ErrorKind::ParentMismatch, "Z is not a subgroup of the table's group");

  CentralCharacterTable out;
  out.basis = abelian_basis(Z);
  for (std::size_t V = 0; V < tG.size(); ++V) {
    std::vector<std::int64_t> tuple;
    for (std::size_t i = 0; i < out.basis.generators.size(); ++i) {
      int k = central_character(tG, static_cast<int>(V), out.basis.generators[i]);
      std::int64_t d = out.basis.orders[i];
      std::int64_t step = tG.exponent / d;
      if (k % step != 0)
        throw Error(ErrorKind::NoExponent, "central character value has wrong order");
      tuple.push_back(k / step);
    }
    out.images.push_back(std::move(tuple));
  }
  return out;
}

ChainGroupReport verify_caniso(CharacterTableModP const &tG,
                               Subgroup const &H,
                               std::size_t coset_limit)
{
  auto b = branching_for_subgroup(tG, H);
  auto Z = relative_center(H);

  ChainGroupReport report;
  report.chain = chain_presentation(b);
  report.target = dual_group(Z);
  auto can = canonical_map(b, tG, Z);
  report.canonical_images = can.images;
  auto const &orders = can.basis.orders;

  auto add = [&](std::string name, bool ok, std::string detail) {
    report.verdicts.push_back({std::move(name), ok ? Verdict::Pass : Verdict::Fail, std::move(detail)});
  };

  auto const &unit_image = can.images[static_cast<std::size_t>(b.big.unit())];
  add("canonical image of unit is trivial",
      std::all_of(unit_image.begin(), unit_image.end(), [](std::int64_t x) { return x == 0; }),
      show_tuple(unit_image));

  std::string bad;
  for (auto const &[U, V, W] : report.chain.triples) {
    auto const &iu = can.images[static_cast<std::size_t>(U)];
    auto const &iv = can.images[static_cast<std::size_t>(V)];
    auto const &iw = can.images[static_cast<std::size_t>(W)];
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if ((iv[i] + iw[i]) % orders[i] != iu[i]) {
        bad = "relation (" + std::to_string(U) + "," + std::to_string(V) + "," + std::to_string(W)
              + "): " + show_tuple(iu) + " != " + show_tuple(iv) + "+" + show_tuple(iw);
        break;
      }
    }
    if (!bad.empty())
      break;
  }
  add("canonical map well defined", bad.empty(),
      bad.empty() ? std::to_string(report.chain.triples.size()) + " relations respected" : bad);

  // subgroup of the character group generated by the images
  std::set<std::vector<std::int64_t>> reached{std::vector<std::int64_t>(orders.size(), 0)};
  std::vector<std::vector<std::int64_t>> frontier(reached.begin(), reached.end());
  while (!frontier.empty()) {
    std::vector<std::vector<std::int64_t>> next;
    for (auto const &x : frontier) {
      for (auto const &img : can.images) {
        std::vector<std::int64_t> y(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i)
          y[i] = (x[i] + img[i]) % orders[i];
        if (reached.insert(y).second)
          next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  auto z_order = static_cast<std::int64_t>(Z.order());
  add("canonical map surjective", static_cast<std::int64_t>(reached.size()) == z_order,
      "images generate " + std::to_string(reached.size()) + " of " + std::to_string(z_order)
        + " characters");

  if (b.big.commutative()) {
    std::set<Triple> triples(report.chain.triples.begin(), report.chain.triples.end());
    bool symmetric = std::all_of(triples.begin(), triples.end(), [&](Triple const &t) {
      return triples.count({t[0], t[2], t[1]}) > 0;
    });
    add("relations symmetric in (V,W)", symmetric, "");
  }

  auto cert = certify_abelian_iso(report.chain.presentation, report.target, coset_limit);
  report.chain_invariants = cert.abelian;
  report.tc_order = cert.tc_order;
  report.verdicts.push_back({"chain group isomorphic to dual of relative center", cert.verdict,
                             cert.detail});

  if (report.tc_order && !cert.abelian.infinite()) {
    bool divides = *report.tc_order % cert.abelian.torsion.order() == 0;
    add("abelianization order divides enumerated order", divides,
        std::to_string(cert.abelian.torsion.order()) + " | " + std::to_string(*report.tc_order));
  }
  return report;
}

ChainGroupReport verify_caniso(Subgroup const &H, std::optional<Residue> prime, std::size_t coset_limit)
{
  auto const &G = H.parent();
  auto tG = character_table_modp(G, prime.value_or(choose_prime(*G)));
  return verify_caniso(tG, H, coset_limit);
}

VerdictEntry verify_iso_theorem(Subgroup const &H)
{
  auto const &G = H.parent();
  auto Z = center(G);
  auto ZH = join(Z, H);
  auto ZcapH = intersection(Z, H);

  VerdictEntry entry{"isomorphism theorem H/(Z cap H) = ZH/Z", Verdict::Fail, ""};

  auto lhs = static_cast<std::int64_t>(H.order() * Z.order());
  auto rhs = static_cast<std::int64_t>(ZH.order() * ZcapH.order());
  std::string orders = std::to_string(H.order()) + "/" + std::to_string(ZcapH.order()) + " vs "
                       + std::to_string(ZH.order()) + "/" + std::to_string(Z.order());
  if (lhs != rhs) {
    entry.detail = "order identity fails: " + orders;
    return entry;
  }

  // coset ids: g Z for g in ZH, h (Z cap H) for h in H
  auto coset_ids = [&G](std::vector<Elem> const &elems, Subgroup const &N) {
    std::map<Elem, int> id;
    int next = 0;
    for (Elem g : elems) {
      if (id.count(g))
        continue;
      for (Elem n : N.elements())
        id[G->mul(g, n)] = next;
      ++next;
    }
    return std::make_pair(id, next);
  };
  auto [mod_z, n_target] = coset_ids(ZH.elements(), Z);
  auto [mod_zh, n_source] = coset_ids(H.elements(), ZcapH);

  std::map<int, int> image;
  for (Elem h : H.elements()) {
    int src = mod_zh.at(h);
    int dst = mod_z.at(h);
    auto [it, inserted] = image.emplace(src, dst);
    if (!inserted && it->second != dst) {
      entry.detail = "induced map not well defined at " + G->label(h);
      return entry;
    }
  }
  std::set<int> hit;
  for (auto const &[src, dst] : image)
    hit.insert(dst);
  if (static_cast<int>(hit.size()) != n_source) {
    entry.detail = "induced map not injective";
    return entry;
  }
  if (static_cast<int>(hit.size()) != n_target) {
    entry.detail = "induced map not surjective";
    return entry;
  }
  entry.status = Verdict::Pass;
  entry.detail = orders + ", bijection on " + std::to_string(n_source) + " cosets";
  return entry;
}

FunctorialityReport verify_chain_functoriality(CharacterTableModP const &tG,
                                               Subgroup const &K,
                                               Subgroup const &H)
{
  if (K.parent() != H.parent() || H.parent() != tG.group)
    throw Error(ErrorKind::ParentMismatch, "K, H and the table must share the ambient group");
  for (Elem k : K.elements())
    if (!H.contains(k))
      throw Error(ErrorKind::InvalidArgument, "K is not contained in H");

  auto chain_h = chain_presentation(branching_for_subgroup(tG, H));
  auto chain_k = chain_presentation(branching_for_subgroup(tG, K));

  std::size_t n = tG.size();
  auto implied = [n](IntMatrix const &source, IntMatrix const &target) {
    auto basis = echelon_basis(target, n);
    return std::all_of(source.begin(), source.end(),
                       [&](auto const &row) { return in_row_span(basis, row); });
  };

  FunctorialityReport report{};
  report.larger_to_smaller = implied(chain_h.exponent_rows, chain_k.exponent_rows);
  report.smaller_to_larger = implied(chain_k.exponent_rows, chain_h.exponent_rows);

  std::set<Triple> triples_k(chain_k.triples.begin(), chain_k.triples.end());
  report.relations_contained = std::all_of(chain_h.triples.begin(), chain_h.triples.end(),
                                           [&](Triple const &t) { return triples_k.count(t) > 0; });

  std::string directions = std::string("C(G,H)->C(G,K) ")
                           + (report.larger_to_smaller ? "well defined" : "ill defined")
                           + "; C(G,K)->C(G,H) "
                           + (report.smaller_to_larger ? "well defined" : "ill defined")
                           + "; relations(H) in relations(K): "
                           + (report.relations_contained ? "yes" : "no");
  bool ok = report.larger_to_smaller && report.relations_contained;
  report.verdict = {"chain group functoriality", ok ? Verdict::Pass : Verdict::Fail, directions};
  return report;
}

} // namespace chaincore
