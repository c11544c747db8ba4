#ifndef CHAINCORE_CHAIN_CENTER_HPP
#define CHAINCORE_CHAIN_CENTER_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chaincore/char_modp.hpp"
#include "chaincore/fusion.hpp"
#include "chaincore/group.hpp"
#include "chaincore/presentation.hpp"

namespace chaincore {

using Triple = std::array<int, 3>;

/// Presentation of the relative chain group: one generator per simple of the
/// big ring, relator g_U^-1 g_V g_W for every triple (U, V, W) where U and
/// V (x) W share a constituent after restriction.
struct ChainPresentation
{
  GroupPresentation presentation;
  std::vector<Triple> triples;      // parallel to presentation.relations
  IntMatrix exponent_rows;          // deduplicated exponent vectors
};

/// Throws NonCommutativeFusion for a non-commutative big ring unless allowed.
ChainPresentation chain_presentation(BranchingData const &b, bool allow_noncommutative = false);

/// Z(G) intersected with H.
Subgroup relative_center(Subgroup const &H);

/// Elements z_1..z_k of an abelian subgroup with orders d_1 | ... | d_k such
/// that the subgroup is the internal direct sum of the <z_i>.
struct AbelianBasis
{
  std::vector<Elem> generators;
  std::vector<std::int64_t> orders;
};

/// Throws NotAbelian.
AbelianBasis abelian_basis(Subgroup const &Z);

/// Invariant factors of Z, found by counting elements of prime-power order.
/// The dual of a finite abelian group has the same invariant factors.
FiniteAbelianGroup dual_group(Subgroup const &Z);

/// Central characters restricted to Z: images[V][i] = k means z_i acts on V
/// as the scalar exp(2 pi i k / d_i).
struct CentralCharacterTable
{
  AbelianBasis basis;
  std::vector<std::vector<std::int64_t>> images;
};

CentralCharacterTable canonical_map(BranchingData const &b,
                                    CharacterTableModP const &tG,
                                    Subgroup const &Z);

struct VerdictEntry
{
  std::string name;
  Verdict status;
  std::string detail;

  friend bool operator==(VerdictEntry const &, VerdictEntry const &) = default;
};

Verdict combine(std::vector<VerdictEntry> const &verdicts);

struct ChainGroupReport
{
  ChainPresentation chain;
  Abelianization chain_invariants;
  std::optional<std::int64_t> tc_order;
  FiniteAbelianGroup target;
  std::vector<std::vector<std::int64_t>> canonical_images;
  std::vector<VerdictEntry> verdicts;

  Verdict overall() const
  { return combine(verdicts); }
};

/// Canonical map well-definedness and surjectivity, plus certification of
/// C(G,H) against the dual of Z(G) cap H.
ChainGroupReport verify_caniso(CharacterTableModP const &tG,
                               Subgroup const &H,
                               std::size_t coset_limit = default_coset_limit);

ChainGroupReport verify_caniso(Subgroup const &H,
                               std::optional<Residue> prime = std::nullopt,
                               std::size_t coset_limit = default_coset_limit);

/// H / (Z cap H) -> ZH / Z for Z = Z(G): order identity and bijectivity by
/// explicit coset comparison.
VerdictEntry verify_iso_theorem(Subgroup const &H);

struct FunctorialityReport
{
  bool larger_to_smaller;   // C(G,H) -> C(G,K) well defined
  bool smaller_to_larger;   // C(G,K) -> C(G,H) well defined
  bool relations_contained; // relations of C(G,H) among those of C(G,K)
  VerdictEntry verdict;
};

/// K <= H <= G. Decides in which direction the identity on generators
/// induces a homomorphism of abelianized chain groups.
FunctorialityReport verify_chain_functoriality(CharacterTableModP const &tG,
                                               Subgroup const &K,
                                               Subgroup const &H);

} // namespace chaincore

#endif // CHAINCORE_CHAIN_CENTER_HPP
