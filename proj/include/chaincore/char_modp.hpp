#ifndef CHAINCORE_CHAR_MODP_HPP
#define CHAINCORE_CHAR_MODP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaincore/group.hpp"

namespace chaincore {

using Residue = std::int64_t;

/// Class function with values in Z/p, indexed by conjugacy class.
using ClassFunction = std::vector<Residue>;

/// Irreducible characters of a finite group reduced modulo a prime
/// p = 1 (mod exponent), p > |G|. Row V, column j holds chi_V(class j) mod p.
///
/// Irrep 0 is the trivial character; the rest are sorted by degree, then by
/// table row.
struct CharacterTableModP
{
  GroupPtr group;
  Residue p = 0;
  int exponent = 1;
  Residue zeta = 1;  // primitive exponent-th root of unity mod p
  ClassData classes;
  std::vector<std::int64_t> degrees;
  std::vector<ClassFunction> table;

  std::size_t size() const
  { return degrees.size(); }

  std::int64_t class_size(int j) const
  { return static_cast<std::int64_t>(classes.classes[static_cast<std::size_t>(j)].members.size()); }

  int class_of(Elem g) const
  { return classes.class_of[static_cast<std::size_t>(g)]; }

  Residue value(int V, Elem g) const
  { return table[static_cast<std::size_t>(V)][static_cast<std::size_t>(class_of(g))]; }
};

bool is_prime(std::int64_t n);
Residue pow_mod(Residue base, std::int64_t exp, Residue p);
Residue inv_mod(Residue a, Residue p);

/// Smallest prime p = 1 (mod exponent(G)) with p > |G|.
Residue choose_prime(FiniteGroup const &G);

/// Smallest admissible prime for G strictly greater than `after`.
Residue next_valid_prime(FiniteGroup const &G, Residue after);

bool is_valid_prime(FiniteGroup const &G, Residue p);

/// Burnside-Dixon: simultaneous diagonalization of the class-sum matrices
/// over GF(p). Throws InvalidArgument for an inadmissible p and SplitFailure
/// if the eigenspaces cannot be separated.
CharacterTableModP character_table_modp(GroupPtr const &G, Residue p);

/// Inner product <phi, chi_V> lifted to [0, p). Throws NonIntegral if the
/// lift exceeds `bound` (default |G|), which cannot happen for a genuine
/// character whose true multiplicity is at most `bound`.
std::int64_t multiplicity(CharacterTableModP const &t,
                          ClassFunction const &phi,
                          int V,
                          std::optional<std::int64_t> bound = std::nullopt);

/// k in Z/exponent with zeta^k = chi_V(z) / chi_V(1). Throws NotCentral or
/// NoExponent.
int central_character(CharacterTableModP const &t, int V, Elem z);

/// Least k < e with zeta^k = target (mod p); throws NotAPower.
int discrete_log(Residue p, Residue zeta, Residue target, int e);

ClassFunction pointwise_product(CharacterTableModP const &t,
                                ClassFunction const &a,
                                ClassFunction const &b);

ClassFunction regular_character(CharacterTableModP const &t);

/// Names each failed table identity (orthogonality, degree sum, first
/// row/column); empty when the table is consistent.
std::vector<std::string> check_character_table(CharacterTableModP const &t);

} // namespace chaincore

#endif // CHAINCORE_CHAR_MODP_HPP
