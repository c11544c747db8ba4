#include "chaincore/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "chaincore/error.hpp"

namespace chaincore {

namespace {

using i64 = std::int64_t;

i64 checked_mul(i64 a, i64 b)
{
  i64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "integer overflow in matrix reduction");
  return r;
}

i64 checked_add(i64 a, i64 b)
{
  i64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "integer overflow in matrix reduction");
  return r;
}

/// row[i] += k * row[j]
void add_row(IntMatrix &A, std::size_t i, std::size_t j, i64 k)
{
  if (k == 0)
    return;
  for (std::size_t c = 0; c < A[i].size(); ++c)
    A[i][c] = checked_add(A[i][c], checked_mul(k, A[j][c]));
}

/// col[i] += k * col[j]
void add_col(IntMatrix &A, std::size_t i, std::size_t j, i64 k)
{
  if (k == 0)
    return;
  for (auto &row : A)
    row[i] = checked_add(row[i], checked_mul(k, row[j]));
}

void swap_cols(IntMatrix &A, std::size_t i, std::size_t j)
{
  for (auto &row : A)
    std::swap(row[i], row[j]);
}

IntMatrix identity(std::size_t n)
{
  IntMatrix I(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    I[i][i] = 1;
  return I;
}

/// (g, x, y) with g = gcd(a, b) = x a + y b, g >= 0
std::tuple<i64, i64, i64> ext_gcd(i64 a, i64 b)
{
  i64 old_r = a, r = b, old_x = 1, x = 0, old_y = 0, y = 1;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_x, x) = std::make_pair(x, old_x - q * x);
    std::tie(old_y, y) = std::make_pair(y, old_y - q * y);
  }
  if (old_r < 0)
    return {-old_r, -old_x, -old_y};
  return {old_r, old_x, old_y};
}

} // namespace

void check_presentation(GroupPresentation const &p)
{
  if (p.ngens < 0)
    throw Error(ErrorKind::InvalidArgument, "negative generator count");
  for (auto const &w : p.relations)
    for (Letter l : w)
      if (l == 0 || std::abs(l) > p.ngens)
        throw Error(ErrorKind::InvalidArgument, "letter " + std::to_string(l) + " out of range");
}

Word cyclically_reduce(Word const &w)
{
  Word out;
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi));
}

std::string format_word(Word const &w, std::vector<std::string> const &names)
{
  if (w.empty())
    return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    int g = std::abs(w[i]) - 1;
    if (i)
      os << " ";
    if (static_cast<std::size_t>(g) < names.size())
      os << names[static_cast<std::size_t>(g)];
    else
      os << "g" << g;
    if (w[i] < 0)
      os << "^-1";
  }
  return os.str();
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors)
: _factors(std::move(invariant_factors))
{
  for (std::size_t i = 0; i < _factors.size(); ++i) {
    if (_factors[i] < 2)
      throw Error(ErrorKind::InvalidArgument, "invariant factors must be >= 2");
    if (i > 0 && _factors[i] % _factors[i - 1] != 0)
      throw Error(ErrorKind::InvalidArgument, "invariant factors must form a divisibility chain");
  }
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(std::vector<std::int64_t> const &orders)
{
  std::size_t n = orders.size();
  IntMatrix M(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (orders[i] < 1)
      throw Error(ErrorKind::InvalidArgument, "cyclic orders must be positive");
    M[i][i] = orders[i];
  }
  std::vector<i64> factors;
  for (i64 d : smith_normal_form(M, false).diagonal)
    if (d > 1)
      factors.push_back(d);
  return FiniteAbelianGroup(std::move(factors));
}

std::int64_t FiniteAbelianGroup::order() const
{
  i64 n = 1;
  for (i64 d : _factors)
    n = checked_mul(n, d);
  return n;
}

std::string FiniteAbelianGroup::to_string() const
{
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < _factors.size(); ++i)
    os << (i ? "," : "") << _factors[i];
  os << "]";
  return os.str();
}

SmithForm smith_normal_form(IntMatrix const &M, bool with_transforms)
{
  std::size_t m = M.size();
  std::size_t n = m ? M.front().size() : 0;
  for (auto const &row : M)
    if (row.size() != n)
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix");

  SmithForm sf;
  IntMatrix &A = sf.D;
  A = M;
  if (with_transforms) {
    sf.U = identity(m);
    sf.V = identity(n);
  }

  auto row_op = [&](std::size_t i, std::size_t j, i64 k) {
    add_row(A, i, j, k);
    if (with_transforms)
      add_row(sf.U, i, j, k);
  };
  auto col_op = [&](std::size_t i, std::size_t j, i64 k) {
    add_col(A, i, j, k);
    if (with_transforms)
      add_col(sf.V, i, j, k);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(A[i], A[j]);
    if (with_transforms)
      std::swap(sf.U[i], sf.U[j]);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    swap_cols(A, i, j);
    if (with_transforms)
      swap_cols(sf.V, i, j);
  };

  std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    // smallest nonzero entry of the trailing block
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (A[i][j] != 0 && (pi == m || std::llabs(A[i][j]) < std::llabs(A[pi][pj])))
          pi = i, pj = j;
    if (pi == m)
      break;
    row_swap(t, pi);
    col_swap(t, pj);

    for (;;) {
      bool moved = false;
      for (std::size_t i = t + 1; i < m && !moved; ++i) {
        row_op(i, t, -(A[i][t] / A[t][t]));
        if (A[i][t] != 0) {
          row_swap(t, i);
          moved = true;
        }
      }
      if (moved)
        continue;
      for (std::size_t j = t + 1; j < n && !moved; ++j) {
        col_op(j, t, -(A[t][j] / A[t][t]));
        if (A[t][j] != 0) {
          col_swap(t, j);
          moved = true;
        }
      }
      if (moved)
        continue;

      // pivot must divide the whole trailing block
      for (std::size_t i = t + 1; i < m && !moved; ++i) {
        for (std::size_t j = t + 1; j < n && !moved; ++j) {
          if (A[i][j] % A[t][t] != 0) {
            row_op(t, i, 1);
            moved = true;
          }
        }
      }
      if (!moved)
        break;
    }

    if (A[t][t] < 0) {
      for (auto &x : A[t])
        x = -x;
      if (with_transforms)
        for (auto &x : sf.U[t])
          x = -x;
    }
  }

  for (std::size_t i = 0; i < steps; ++i)
    sf.diagonal.push_back(A[i][i]);
  return sf;
}

std::int64_t integer_determinant(IntMatrix M)
{
  std::size_t n = M.size();
  for (auto const &row : M)
    if (row.size() != n)
      throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  if (n == 0)
    return 1;

  i64 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && M[s][k] == 0)
        ++s;
      if (s == n)
        return 0;
      std::swap(M[k], M[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        i64 num = checked_add(checked_mul(M[i][j], M[k][k]), -checked_mul(M[i][k], M[k][j]));
        M[i][j] = num / prev;
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

IntMatrix echelon_basis(IntMatrix const &rows, std::size_t ncols)
{
  // pivot column -> row whose first nonzero entry sits there
  std::map<std::size_t, std::vector<i64>> basis;
  for (auto v : rows) {
    if (v.size() != ncols)
      throw Error(ErrorKind::DimensionMismatch, "row has wrong length");
    for (std::size_t col = 0; col < ncols; ++col) {
      if (v[col] == 0)
        continue;
      auto it = basis.find(col);
      if (it == basis.end()) {
        if (v[col] < 0)
          for (auto &x : v)
            x = -x;
        basis.emplace(col, std::move(v));
        break;
      }
      auto &b = it->second;
      auto [g, x, y] = ext_gcd(b[col], v[col]);
      i64 bc = b[col] / g, vc = v[col] / g;
      std::vector<i64> nb(ncols), nv(ncols);
      for (std::size_t c = 0; c < ncols; ++c) {
        nb[c] = checked_add(checked_mul(x, b[c]), checked_mul(y, v[c]));
        nv[c] = checked_add(checked_mul(vc, b[c]), -checked_mul(bc, v[c]));
      }
      b = std::move(nb);
      v = std::move(nv);
    }
  }
  IntMatrix out;
  for (auto &[col, row] : basis)
    out.push_back(std::move(row));
  return out;
}

bool in_row_span(IntMatrix const &rows, std::vector<std::int64_t> const &v)
{
  std::size_t n = v.size();
  auto basis = echelon_basis(rows, n);
  if (basis.empty())
    return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });

  // x B = v  <=>  y D = v V  with y = x U^-1
  auto sf = smith_normal_form(basis, true);
  for (std::size_t j = 0; j < n; ++j) {
    i64 w = 0;
    for (std::size_t k = 0; k < n; ++k)
      w = checked_add(w, checked_mul(v[k], sf.V[k][j]));
    i64 d = j < sf.diagonal.size() ? sf.diagonal[j] : 0;
    if (d == 0 ? w != 0 : w % d != 0)
      return false;
  }
  return true;
}

IntMatrix relation_matrix(GroupPresentation const &p)
{
  check_presentation(p);
  IntMatrix M;
  for (auto const &w : p.relations) {
    std::vector<i64> row(static_cast<std::size_t>(p.ngens), 0);
    for (Letter l : w)
      row[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
    M.push_back(std::move(row));
  }
  return M;
}

std::string Abelianization::to_string() const
{
  std::string s = torsion.to_string();
  if (free_rank > 0)
    s += " x Z^" + std::to_string(free_rank);
  return s;
}

Abelianization abelianization(GroupPresentation const &p)
{
  auto n = static_cast<std::size_t>(p.ngens);
  auto basis = echelon_basis(relation_matrix(p), n);

  Abelianization ab;
  std::vector<i64> torsion;
  std::size_t rank = 0;
  if (!basis.empty()) {
    for (i64 d : smith_normal_form(basis, false).diagonal) {
      if (d == 0)
        continue;
      ++rank;
      if (d > 1)
        torsion.push_back(d);
    }
  }
  ab.free_rank = static_cast<int>(n - rank);
  ab.torsion = FiniteAbelianGroup(std::move(torsion));
  return ab;
}

namespace {

class CosetEnumerator
{
public:
  CosetEnumerator(GroupPresentation const &p, std::size_t limit)
  : _ncols(2 * static_cast<std::size_t>(p.ngens)),
    _limit(limit)
  {
    for (auto const &w : p.relations) {
      auto reduced = cyclically_reduce(w);
      if (reduced.empty())
        continue;
      std::vector<std::size_t> cols;
      for (Letter l : reduced)
        cols.push_back(column(l));
      _relators.push_back(std::move(cols));
    }
  }

  std::optional<CosetEnumeration> run()
  {
    if (!new_coset())
      return std::nullopt;

    for (std::size_t c = 0; c < _table.size(); ++c) {
      for (auto const &rel : _relators) {
        if (!live(c))
          break;
        scan_and_fill(c, rel);
        if (_overflow)
          return std::nullopt;
      }
      if (!live(c))
        continue;
      for (std::size_t x = 0; x < _ncols; ++x) {
        if (_table[c][x] < 0 && !define(c, x))
          return std::nullopt;
      }
    }
    return compact();
  }

private:
  static std::size_t column(Letter l)
  { return 2 * static_cast<std::size_t>(std::abs(l) - 1) + (l < 0 ? 1 : 0); }

  static std::size_t inverse(std::size_t col)
  { return col ^ 1u; }

  bool live(std::size_t c) const
  { return _forward[c] == static_cast<int>(c); }

  bool new_coset()
  {
    if (_table.size() >= _limit) {
      _overflow = true;
      return false;
    }
    _forward.push_back(static_cast<int>(_table.size()));
    _table.emplace_back(_ncols, -1);
    return true;
  }

  bool define(std::size_t c, std::size_t x)
  {
    if (!new_coset())
      return false;
    auto d = static_cast<int>(_table.size() - 1);
    _table[c][x] = d;
    _table[static_cast<std::size_t>(d)][inverse(x)] = static_cast<int>(c);
    return true;
  }

  int rep(int c)
  {
    int r = c;
    while (_forward[static_cast<std::size_t>(r)] != r)
      r = _forward[static_cast<std::size_t>(r)];
    while (_forward[static_cast<std::size_t>(c)] != r) {
      int next = _forward[static_cast<std::size_t>(c)];
      _forward[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b)
  {
    a = rep(a);
    b = rep(b);
    if (a == b)
      return;
    if (a > b)
      std::swap(a, b);
    _forward[static_cast<std::size_t>(b)] = a;
    _queue.push_back(b);
  }

  void coincidence(int a, int b)
  {
    merge(a, b);
    while (!_queue.empty()) {
      int dead = _queue.front();
      _queue.pop_front();
      for (std::size_t x = 0; x < _ncols; ++x) {
        int target = _table[static_cast<std::size_t>(dead)][x];
        if (target < 0)
          continue;
        _table[static_cast<std::size_t>(target)][inverse(x)] = -1;
        int mu = rep(dead), nu = rep(target);
        auto &mu_row = _table[static_cast<std::size_t>(mu)];
        auto &nu_row = _table[static_cast<std::size_t>(nu)];
        if (mu_row[x] >= 0) {
          merge(nu, mu_row[x]);
        } else if (nu_row[inverse(x)] >= 0) {
          merge(mu, nu_row[inverse(x)]);
        } else {
          mu_row[x] = nu;
          nu_row[inverse(x)] = mu;
        }
      }
    }
  }

  void scan_and_fill(std::size_t c, std::vector<std::size_t> const &rel)
  {
    auto start = static_cast<int>(c);
    int f = start, b = start;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(rel.size()) - 1;

    for (;;) {
      while (i <= j && _table[static_cast<std::size_t>(f)][rel[static_cast<std::size_t>(i)]] >= 0)
        f = _table[static_cast<std::size_t>(f)][rel[static_cast<std::size_t>(i++)]];
      if (i > j) {
        if (f != start)
          coincidence(f, start);
        return;
      }
      while (j >= i
             && _table[static_cast<std::size_t>(b)][inverse(rel[static_cast<std::size_t>(j)])] >= 0)
        b = _table[static_cast<std::size_t>(b)][inverse(rel[static_cast<std::size_t>(j--)])];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        auto x = rel[static_cast<std::size_t>(i)];
        _table[static_cast<std::size_t>(f)][x] = b;
        _table[static_cast<std::size_t>(b)][inverse(x)] = f;
        return;
      }
      if (!define(static_cast<std::size_t>(f), rel[static_cast<std::size_t>(i)]))
        return;
    }
  }

  CosetEnumeration compact()
  {
    std::vector<int> renumber(_table.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < _table.size(); ++c)
      if (live(c))
        renumber[c] = next++;

    CosetEnumeration out{next, {}};
    std::size_t ngens = _ncols / 2;
    out.action.assign(ngens, std::vector<int>(static_cast<std::size_t>(next), -1));
    for (std::size_t c = 0; c < _table.size(); ++c) {
      if (!live(c))
        continue;
      for (std::size_t g = 0; g < ngens; ++g) {
        int target = _table[c][2 * g];
        if (target < 0)
          throw Error(ErrorKind::InvalidArgument, "coset table incomplete after enumeration");
        out.action[g][static_cast<std::size_t>(renumber[c])] =
          renumber[static_cast<std::size_t>(rep(target))];
      }
    }
    return out;
  }

  std::size_t _ncols;
  std::size_t _limit;
  bool _overflow = false;
  std::vector<std::vector<std::size_t>> _relators;
  std::vector<std::vector<int>> _table;
  std::vector<int> _forward;
  std::deque<int> _queue;
};

} // namespace

std::optional<CosetEnumeration> todd_coxeter(GroupPresentation const &p, std::size_t limit)
{
  check_presentation(p);
  if (limit == 0)
    throw Error(ErrorKind::InvalidArgument, "coset limit must be at least 1");
  return CosetEnumerator(p, limit).run();
}

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::Pass: return "PASS";
  case Verdict::Fail: return "FAIL";
  case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::optional<Verdict> verdict_from_string(std::string const &s)
{
  if (s == "PASS")
    return Verdict::Pass;
  if (s == "FAIL")
    return Verdict::Fail;
  if (s == "INCONCLUSIVE")
    return Verdict::Inconclusive;
  return std::nullopt;
}

Certificate certify_abelian_iso(GroupPresentation const &p,
                                FiniteAbelianGroup const &target,
                                std::size_t limit)
{
  Certificate cert{Verdict::Fail, "", abelianization(p), std::nullopt};

  auto tc = todd_coxeter(p, limit);
  if (!tc) {
    cert.verdict = Verdict::Inconclusive;
    cert.detail = "coset enumeration exhausted " + std::to_string(limit) + " cosets; abelianization "
                  + cert.abelian.to_string();
    return cert;
  }
  cert.tc_order = tc->order;
  if (cert.abelian.infinite() || !(cert.abelian.torsion == target)) {
    cert.detail = "abelianization " + cert.abelian.to_string() + " differs from target "
                  + target.to_string();
    return cert;
  }
  if (tc->order != target.order()) {
    cert.detail = "enumerated order " + std::to_string(tc->order) + " differs from target order "
                  + std::to_string(target.order());
    return cert;
  }

  // equal orders and matching abelianization force an abelian group; confirm
  // on the regular action
  for (std::size_t a = 0; a < tc->action.size(); ++a) {
    for (std::size_t b = a + 1; b < tc->action.size(); ++b) {
      for (std::size_t c = 0; c < static_cast<std::size_t>(tc->order); ++c) {
        auto ab = tc->action[b][static_cast<std::size_t>(tc->action[a][c])];
        auto ba = tc->action[a][static_cast<std::size_t>(tc->action[b][c])];
        if (ab != ba) {
          cert.detail = "generators " + std::to_string(a) + " and " + std::to_string(b)
                        + " do not commute";
          return cert;
        }
      }
    }
  }
  cert.verdict = Verdict::Pass;
  cert.detail = "abelianization and order " + std::to_string(tc->order) + " match "
                + target.to_string();
  return cert;
}

} // namespace chaincore
