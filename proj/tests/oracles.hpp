// Brute-force reference computations used by the unit and acceptance tests.
// Everything here works on raw permutations or plain integer matrices and
// shares no code with the library.
#ifndef CHAINCORE_TESTS_ORACLES_HPP
#define CHAINCORE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;
using Matrix = std::vector<std::vector<std::int64_t>>;

inline Perm pad(Perm p, std::size_t n)
{
  while (p.size() < n)
    p.push_back(static_cast<int>(p.size()));
  return p;
}

// a first, then b
inline Perm compose(Perm const &a, Perm const &b)
{
  auto n = std::max(a.size(), b.size());
  auto pa = pad(a, n), pb = pad(b, n);
  Perm c(n);
  for (std::size_t i = 0; i < n; ++i)
    c[i] = pb[static_cast<std::size_t>(pa[i])];
  return c;
}

inline Perm inverse(Perm const &a)
{
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  return r;
}

inline Perm identity(std::size_t n)
{
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm cycle(std::size_t n, std::vector<int> const &c)
{
  auto p = identity(n);
  for (std::size_t i = 0; i < c.size(); ++i)
    p[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
  return p;
}

inline std::set<Perm> closure(std::vector<Perm> gens, std::size_t n)
{
  std::set<Perm> seen{identity(n)};
  std::vector<Perm> frontier{identity(n)};
  for (auto &g : gens)
    g = pad(g, n);
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (auto const &x : frontier)
      for (auto const &g : gens) {
        auto y = compose(x, g);
        if (seen.insert(y).second)
          next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline int fixed_points(Perm const &p)
{
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    c += p[i] == static_cast<int>(i);
  return c;
}

inline int sign(Perm const &p)
{
  std::vector<bool> seen(p.size(), false);
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0)
      s = -s;
  }
  return s;
}

inline int order(Perm const &p)
{
  auto x = p;
  int k = 1;
  while (x != identity(p.size())) {
    x = compose(x, p);
    ++k;
  }
  return k;
}

inline std::set<Perm> center(std::set<Perm> const &G)
{
  std::set<Perm> Z;
  for (auto const &z : G)
    if (std::all_of(G.begin(), G.end(), [&](Perm const &g) { return compose(z, g) == compose(g, z); }))
      Z.insert(z);
  return Z;
}

inline bool is_normal(std::set<Perm> const &G, std::set<Perm> const &H)
{
  for (auto const &g : G)
    for (auto const &h : H)
      if (!H.count(compose(compose(inverse(g), h), g)))
        return false;
  return true;
}

inline std::vector<std::size_t> class_sizes(std::set<Perm> const &G)
{
  std::set<Perm> done;
  std::vector<std::size_t> sizes;
  for (auto const &x : G) {
    if (done.count(x))
      continue;
    std::set<Perm> cls;
    for (auto const &g : G)
      cls.insert(compose(compose(inverse(g), x), g));
    done.insert(cls.begin(), cls.end());
    sizes.push_back(cls.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// number of elements of each order; determines a finite abelian group
inline std::map<int, int> order_histogram(std::set<Perm> const &A)
{
  std::map<int, int> h;
  for (auto const &a : A)
    ++h[order(a)];
  return h;
}

inline std::map<int, int> order_histogram(std::vector<std::int64_t> const &cyclic_orders)
{
  std::map<int, int> h;
  std::vector<std::int64_t> idx(cyclic_orders.size(), 0);
  while (true) {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto n = cyclic_orders[i];
      auto oi = n / std::gcd(n, idx[i]);
      o = std::lcm(o, oi);
    }
    ++h[static_cast<int>(o)];
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == cyclic_orders[i])
      idx[i++] = 0;
    if (i == idx.size())
      break;
  }
  return h;
}

inline std::int64_t det(Matrix const &M)
{
  auto n = M.size();
  if (n == 0)
    return 1;
  if (n == 1)
    return M[0][0];
  std::int64_t total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c)
          row.push_back(M[r][k]);
      minor.push_back(row);
    }
    total += (c % 2 ? -1 : 1) * M[0][c] * det(minor);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t> &cur,
                    std::vector<std::vector<std::size_t>> &out)
{
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (auto i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// invariant factors via gcds of k x k minors (determinantal divisors)
inline std::vector<std::int64_t> invariant_factors_by_minors(Matrix const &M)
{
  auto rows = M.size(), cols = rows ? M[0].size() : 0;
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    std::int64_t g = 0;
    for (auto const &r : rs)
      for (auto const &c : cs) {
        Matrix sub;
        for (auto i : r) {
          std::vector<std::int64_t> row;
          for (auto j : c)
            row.push_back(M[i][j]);
          sub.push_back(row);
        }
        g = std::gcd(g, std::abs(det(sub)));
      }
    if (g == 0) {
      for (; k <= std::min(rows, cols); ++k)
        out.push_back(0);
      break;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

} // namespace oracle

#endif
