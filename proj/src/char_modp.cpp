#include "chaincore/char_modp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chaincore/error.hpp"

namespace chaincore {

namespace {

using Matrix = std::vector<std::vector<Residue>>;

Residue mod(Residue a, Residue p)
{
  a %= p;
  return a < 0 ? a + p : a;
}

/// Reduced row echelon form; zero rows dropped. Returns pivot columns.
std::vector<std::size_t> rref(Matrix &rows, Residue p)
{
  std::vector<std::size_t> pivots;
  if (rows.empty())
    return pivots;

  std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0)
      ++sel;
    if (sel == rows.size())
      continue;
    std::swap(rows[rank], rows[sel]);

    Residue scale = inv_mod(rows[rank][col], p);
    for (auto &x : rows[rank])
      x = x * scale % p;

    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0)
        continue;
      Residue f = rows[i][col];
      for (std::size_t c = 0; c < ncols; ++c)
        rows[i][c] = mod(rows[i][c] - f * rows[rank][c], p);
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

/// Basis of {x : A x = 0} for square A.
Matrix nullspace(Matrix A, Residue p)
{
  std::size_t n = A.size();
  auto pivots = rref(A, p);

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots)
    is_pivot[c] = true;

  Matrix basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free])
      continue;
    std::vector<Residue> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = mod(-A[r][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial via reduction to upper Hessenberg form.
/// Coefficients low degree first; monic of degree n.
std::vector<Residue> charpoly(Matrix H, Residue p)
{
  std::size_t n = H.size();

  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && H[i][m - 1] == 0)
      ++i;
    if (i == n)
      continue;
    if (i != m) {
      std::swap(H[i], H[m]);
      for (auto &row : H)
        std::swap(row[i], row[m]);
    }
    Residue pivot_inv = inv_mod(H[m][m - 1], p);
    for (std::size_t r = m + 1; r < n; ++r) {
      Residue u = H[r][m - 1] * pivot_inv % p;
      if (u == 0)
        continue;
      for (std::size_t c = 0; c < n; ++c)
        H[r][c] = mod(H[r][c] - u * H[m][c], p);
      for (std::size_t c = 0; c < n; ++c)
        H[c][m] = (H[c][m] + u * H[c][r]) % p;
    }
  }

  // polys[k] = charpoly of the leading k x k block
  std::vector<std::vector<Residue>> polys{{1}};
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<Residue> next(m + 2, 0);
    auto const &prev = polys[m];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      next[k + 1] = (next[k + 1] + prev[k]) % p;
      next[k] = mod(next[k] - H[m][m] * prev[k], p);
    }
    Residue t = 1;
    for (std::size_t i = m; i-- > 0;) {
      t = t * H[i + 1][i] % p;
      Residue coef = H[i][m] * t % p;
      if (coef == 0)
        continue;
      for (std::size_t k = 0; k < polys[i].size(); ++k)
        next[k] = mod(next[k] - coef * polys[i][k], p);
    }
    polys.push_back(std::move(next));
  }
  return polys.back();
}

Residue eval_poly(std::vector<Residue> const &poly, Residue x, Residue p)
{
  Residue acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it)
    acc = (acc * x + *it) % p;
  return acc;
}

/// Class-multiplication coefficients: coeff[i] is the matrix with entry
/// (j, k) = #{x in C_i : x^-1 z_k in C_j}.
std::vector<Matrix> class_matrices(FiniteGroup const &G, ClassData const &cd, Residue p)
{
  std::size_t r = cd.classes.size();
  std::vector<Matrix> coeff(r, Matrix(r, std::vector<Residue>(r, 0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      Elem z = cd.classes[k].representative;
      for (Elem x : cd.classes[i].members) {
        int j = cd.class_of[static_cast<std::size_t>(G.mul(G.inv(x), z))];
        coeff[i][static_cast<std::size_t>(j)][k] += 1;
      }
    }
    for (auto &row : coeff[i])
      for (auto &x : row)
        x %= p;
  }
  return coeff;
}

/// Splits the subspace spanned by `basis` (RREF rows) into eigenspaces of M.
/// Returns nullopt if the eigenvalues of M on the subspace do not lie in
/// GF(p) or M is not diagonalizable there.
std::optional<std::vector<Matrix>> split_space(Matrix const &basis,
                                               std::vector<std::size_t> const &pivots,
                                               Matrix const &M,
                                               Residue p)
{
  std::size_t d = basis.size();
  std::size_t r = M.size();

  // A[row][col]: coordinate `row` of M * basis[col]
  Matrix A(d, std::vector<Residue>(d, 0));
  for (std::size_t col = 0; col < d; ++col) {
    for (std::size_t row = 0; row < d; ++row) {
      std::size_t j = pivots[row];
      Residue acc = 0;
      for (std::size_t k = 0; k < r; ++k)
        acc = (acc + M[j][k] * basis[col][k]) % p;
      A[row][col] = acc;
    }
  }

  auto poly = charpoly(A, p);
  std::vector<Matrix> pieces;
  std::size_t total = 0;
  for (Residue lambda = 0; lambda < p && total < d; ++lambda) {
    if (eval_poly(poly, lambda, p) != 0)
      continue;
    Matrix shifted = A;
    for (std::size_t i = 0; i < d; ++i)
      shifted[i][i] = mod(shifted[i][i] - lambda, p);

    Matrix piece;
    for (auto const &coords : nullspace(shifted, p)) {
      std::vector<Residue> v(r, 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < r; ++k)
          v[k] = (v[k] + coords[i] * basis[i][k]) % p;
      piece.push_back(std::move(v));
    }
    total += piece.size();
    pieces.push_back(std::move(piece));
  }
  if (total != d)
    return std::nullopt;
  return pieces;
}

std::optional<Matrix> diagonalize(std::vector<Matrix> const &operators, std::size_t r, Residue p)
{
  Matrix identity(r, std::vector<Residue>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    identity[i][i] = 1;

  std::vector<Matrix> spaces{identity};
  for (auto const &M : operators) {
    std::vector<Matrix> next;
    for (auto &space : spaces) {
      if (space.size() == 1) {
        next.push_back(std::move(space));
        continue;
      }
      auto pivots = rref(space, p);
      auto pieces = split_space(space, pivots, M, p);
      if (!pieces)
        return std::nullopt;
      for (auto &piece : *pieces)
        next.push_back(std::move(piece));
    }
    spaces = std::move(next);
  }

  Matrix vectors;
  for (auto &space : spaces) {
    if (space.size() != 1)
      return std::nullopt;
    rref(space, p);
    vectors.push_back(space.front());
  }
  return vectors;
}

} // namespace

Residue pow_mod(Residue base, std::int64_t exp, Residue p)
{
  Residue result = 1 % p;
  base = mod(base, p);
  while (exp > 0) {
    if (exp & 1)
      result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

Residue inv_mod(Residue a, Residue p)
{
  // extended Euclid; p need not be prime as long as gcd(a, p) = 1
  Residue old_r = mod(a, p), r = p, old_s = 1, s = 0;
  while (r != 0) {
    Residue q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1)
    throw Error(ErrorKind::InvalidArgument, "residue is not invertible");
  return mod(old_s, p);
}

bool is_prime(std::int64_t n)
{
  if (n < 2)
    return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

bool is_valid_prime(FiniteGroup const &G, Residue p)
{
  return is_prime(p) && (p - 1) % G.exponent() == 0
         && p > static_cast<Residue>(G.order());
}

Residue next_valid_prime(FiniteGroup const &G, Residue after)
{
  Residue e = G.exponent();
  Residue floor = std::max<Residue>(after, static_cast<Residue>(G.order()));
  // first candidate of the form k*e + 1 above floor
  Residue p = (floor / e) * e + 1;
  while (p <= floor)
    p += e;
  while (!is_prime(p))
    p += e;
  return p;
}

Residue choose_prime(FiniteGroup const &G)
{
  return next_valid_prime(G, 0);
}

int discrete_log(Residue p, Residue zeta, Residue target, int e)
{
  target = mod(target, p);
  Residue x = 1;
  for (int k = 0; k < e; ++k) {
    if (x == target)
      return k;
    x = x * zeta % p;
  }
  throw Error(ErrorKind::NotAPower,
              std::to_string(target) + " is not a power of " + std::to_string(zeta)
                + " mod " + std::to_string(p));
}

CharacterTableModP character_table_modp(GroupPtr const &G, Residue p)
{
  FiniteGroup const &g = *G;
  if (!is_valid_prime(g, p))
    throw Error(ErrorKind::InvalidArgument,
                "p = " + std::to_string(p) + " is not a prime = 1 mod "
                  + std::to_string(g.exponent()) + " exceeding |G|");

  CharacterTableModP t;
  t.group = G;
  t.p = p;
  t.exponent = g.exponent();
  t.classes = conjugacy_classes(g);

  Residue root = 2 % p;
  if (p > 2) {
    // smallest primitive root
    std::vector<Residue> factors;
    Residue m = p - 1;
    for (Residue d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        factors.push_back(d);
        while (m % d == 0)
          m /= d;
      }
    }
    if (m > 1)
      factors.push_back(m);
    for (root = 2;; ++root) {
      bool primitive = true;
      for (Residue f : factors)
        primitive = primitive && pow_mod(root, (p - 1) / f, p) != 1;
      if (primitive)
        break;
    }
  }
  t.zeta = pow_mod(root, (p - 1) / t.exponent, p);

  std::size_t r = t.classes.classes.size();
  auto coeff = class_matrices(g, t.classes, p);

  // class 0 is the identity, whose matrix is the identity
  std::vector<Matrix> operators(coeff.begin() + 1, coeff.end());
  auto vectors = diagonalize(operators, r, p);

  std::mt19937 rng(12345);
  for (int attempt = 0; !vectors && attempt < 8; ++attempt) {
    Matrix combo(r, std::vector<Residue>(r, 0));
    std::uniform_int_distribution<Residue> dist(1, p - 1);
    for (auto const &M : operators) {
      Residue c = dist(rng);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          combo[i][j] = (combo[i][j] + c * M[i][j]) % p;
    }
    std::vector<Matrix> ops{combo};
    ops.insert(ops.end(), operators.begin(), operators.end());
    vectors = diagonalize(ops, r, p);
  }
  if (!vectors || vectors->size() != r)
    throw Error(ErrorKind::SplitFailure, "eigenspaces of the class matrices did not separate");

  auto order = static_cast<Residue>(g.order());
  auto max_degree = static_cast<std::int64_t>(std::sqrt(static_cast<double>(g.order()))) + 1;

  struct Row
  {
    std::int64_t degree;
    ClassFunction values;
    std::vector<std::int64_t> profile;
  };
  std::vector<Row> rows;
  for (auto const &w : *vectors) {
    if (w[0] != 1)
      throw Error(ErrorKind::SplitFailure, "eigenvector vanishes on the identity class");

    // w_k = |C_k| chi(k) / chi(1), so sum_k w_k w_k* / |C_k| = |G| / chi(1)^2
    Residue s = 0;
    for (std::size_t k = 0; k < r; ++k) {
      auto kinv = static_cast<std::size_t>(t.classes.classes[k].inverse_class);
      s = (s + w[k] * w[kinv] % p * inv_mod(t.class_size(static_cast<int>(k)), p)) % p;
    }
    Residue d2 = order % p * inv_mod(s, p) % p;

    std::int64_t degree = 0;
    for (std::int64_t d = 1; d <= max_degree && d * d <= order; ++d) {
      if (d * d % p == d2) {
        degree = d;
        break;
      }
    }
    if (degree == 0)
      throw Error(ErrorKind::SplitFailure, "degree does not lift to an integer");

    ClassFunction values(r);
    for (std::size_t k = 0; k < r; ++k)
      values[k] = degree * w[k] % p * inv_mod(t.class_size(static_cast<int>(k)), p) % p;
    // eigenvalue multiplicities of each class representative, as exponents of zeta;
    // unlike the residues themselves these do not depend on p
    std::vector<std::int64_t> profile;
    for (auto const &cls : t.classes.classes) {
      Elem x = cls.representative;
      auto o = static_cast<std::int64_t>(g.element_order(x));
      auto step = t.exponent / o;
      Residue inv_o = inv_mod(o % p, p);
      for (std::int64_t k = 0; k < o; ++k) {
        Residue m = 0;
        Elem y = g.identity();
        for (std::int64_t i = 0; i < o; ++i) {
          auto e = ((t.exponent - i * k % o * step % t.exponent) % t.exponent);
          m = (m + values[static_cast<std::size_t>(t.classes.class_of[static_cast<std::size_t>(y)])]
                     * pow_mod(t.zeta, e, p)) % p;
          y = g.mul(y, x);
        }
        profile.push_back(m * inv_o % p);
      }
    }
    rows.push_back({degree, std::move(values), std::move(profile)});
  }

  std::sort(rows.begin(), rows.end(), [](Row const &a, Row const &b) {
    auto trivial = [](Row const &x) {
      return std::all_of(x.values.begin(), x.values.end(), [](Residue v) { return v == 1; });
    };
    bool ta = trivial(a), tb = trivial(b);
    if (ta != tb)
      return ta;
    if (a.degree != b.degree)
      return a.degree < b.degree;
    return a.profile > b.profile;
  });

  std::int64_t sum = 0;
  for (auto &row : rows) {
    sum += row.degree * row.degree;
    t.degrees.push_back(row.degree);
    t.table.push_back(std::move(row.values));
  }
  if (sum != order)
    throw Error(ErrorKind::SplitFailure, "sum of squared degrees is not |G|");
  return t;
}

std::int64_t multiplicity(CharacterTableModP const &t,
                          ClassFunction const &phi,
                          int V,
                          std::optional<std::int64_t> bound)
{
  std::size_t r = t.classes.classes.size();
  if (phi.size() != r)
    throw Error(ErrorKind::DimensionMismatch, "class function has wrong length");
  if (V < 0 || static_cast<std::size_t>(V) >= t.size())
    throw Error(ErrorKind::InvalidArgument, "irrep index out of range");

  Residue p = t.p;
  auto const &chi = t.table[static_cast<std::size_t>(V)];
  Residue acc = 0;
  for (std::size_t j = 0; j < r; ++j) {
    auto jinv = static_cast<std::size_t>(t.classes.classes[j].inverse_class);
    acc = (acc + t.class_size(static_cast<int>(j)) % p * mod(phi[j], p) % p * chi[jinv]) % p;
  }
  acc = acc * inv_mod(static_cast<Residue>(t.group->order()) % p, p) % p;

  std::int64_t limit = bound.value_or(static_cast<std::int64_t>(t.group->order()));
  if (acc > limit)
    throw Error(ErrorKind::NonIntegral,
                "inner product lifts to " + std::to_string(acc) + " > bound "
                  + std::to_string(limit));
  return acc;
}

int central_character(CharacterTableModP const &t, int V, Elem z)
{
  FiniteGroup const &G = *t.group;
  if (z < 0 || static_cast<std::size_t>(z) >= G.order())
    throw Error(ErrorKind::InvalidArgument, "element index out of range");
  if (t.class_size(t.class_of(z)) != 1)
    throw Error(ErrorKind::NotCentral, "element " + G.label(z) + " is not central");

  Residue ratio = t.value(V, z) * inv_mod(t.degrees[static_cast<std::size_t>(V)] % t.p, t.p) % t.p;
  try {
    return discrete_log(t.p, t.zeta, ratio, t.exponent);
  } catch (Error const &err) {
    throw Error(ErrorKind::NoExponent, err.what());
  }
}

ClassFunction pointwise_product(CharacterTableModP const &t,
                                ClassFunction const &a,
                                ClassFunction const &b)
{
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "class functions differ in length");
  ClassFunction out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = mod(a[i], t.p) * mod(b[i], t.p) % t.p;
  return out;
}

ClassFunction regular_character(CharacterTableModP const &t)
{
  ClassFunction out(t.classes.classes.size(), 0);
  out[0] = static_cast<Residue>(t.group->order()) % t.p;
  return out;
}

std::vector<std::string> check_character_table(CharacterTableModP const &t)
{
  std::vector<std::string> failures;
  Residue p = t.p;
  std::size_t r = t.size();
  auto order = static_cast<Residue>(t.group->order());
  Residue order_inv = inv_mod(order % p, p);

  if (t.classes.classes.size() != r)
    failures.push_back("table is not square");

  std::int64_t sum = 0;
  for (std::size_t V = 0; V < r; ++V) {
    sum += t.degrees[V] * t.degrees[V];
    if (order % t.degrees[V] != 0)
      failures.push_back("degree " + std::to_string(t.degrees[V]) + " does not divide |G|");
    if (t.table[V][0] != t.degrees[V] % p)
      failures.push_back("first column differs from degree of irrep " + std::to_string(V));
  }
  if (sum != order)
    failures.push_back("sum of squared degrees is " + std::to_string(sum));
  for (std::size_t j = 0; j < r; ++j)
    if (t.table[0][j] != 1)
      failures.push_back("first row is not the trivial character");

  for (std::size_t V = 0; V < r; ++V) {
    for (std::size_t W = 0; W < r; ++W) {
      Residue acc = 0;
      for (std::size_t j = 0; j < r; ++j) {
        auto jinv = static_cast<std::size_t>(t.classes.classes[j].inverse_class);
        acc = (acc + t.class_size(static_cast<int>(j)) * t.table[V][j] % p * t.table[W][jinv]) % p;
      }
      acc = acc * order_inv % p;
      if (acc != (V == W ? 1 : 0))
        failures.push_back("row orthogonality fails at (" + std::to_string(V) + ","
                           + std::to_string(W) + ")");
    }
  }

  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < r; ++k) {
      auto kinv = static_cast<std::size_t>(t.classes.classes[k].inverse_class);
      Residue acc = 0;
      for (std::size_t V = 0; V < r; ++V)
        acc = (acc + t.table[V][j] * t.table[V][kinv]) % p;
      // |C_G(g_j)| = |G| / |C_j|
      Residue expected = j == k ? order / t.class_size(static_cast<int>(j)) % p : 0;
      if (acc != expected)
        failures.push_back("column orthogonality fails at (" + std::to_string(j) + ","
                           + std::to_string(k) + ")");
    }
  }
  return failures;
}

} // namespace chaincore
