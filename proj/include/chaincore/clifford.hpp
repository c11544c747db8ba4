#ifndef CHAINCORE_CLIFFORD_HPP
#define CHAINCORE_CLIFFORD_HPP

#include <string>
#include <vector>

#include "chaincore/fusion.hpp"

namespace chaincore {

/// Sorted indices; a Partition keeps its blocks sorted by first element.
using Block = std::vector<int>;
using Partition = std::vector<Block>;

struct Check
{
  std::string name;
  bool passed;
  std::string detail;
};

/// Equivalence relations on the simples of the big ring (sim_h, related when
/// restrictions overlap) and of the small ring (sim_b, related when both are
/// constituents of one restriction), computed straight from their
/// definitions, plus the support map and the duality checks between them.
struct CliffordReport
{
  Partition sim_h;
  Partition sim_b;
  std::vector<Block> const_map;
  std::vector<Check> checks;

  bool passed() const;
};

/// Simples of the small ring occurring in the restriction of V.
Block const_support(BranchingData const &b, int V);

/// Fibers of const_support. Throws TheoremViolation if two supports overlap
/// without being equal (impossible for a normal subgroup).
Partition sim_H_partition(BranchingData const &b);

/// Distinct values of const_support. Throws UncoveredIrrep if some small
/// simple occurs in no restriction and TheoremViolation if the supports do
/// not partition the small simples.
Partition sim_B_partition(BranchingData const &b);

/// Never throws; failures are recorded as checks. When `fG` is given the
/// embedding criterion is compared with support equality on all pairs.
CliffordReport verify_partition_duality(BranchingData const &b, FusionData const *fG = nullptr);

/// Whether V is a constituent of W (x) Ind(unit); `fG` is the big ring with
/// its tensor product.
bool embeds_in_induced_twist(BranchingData const &b, FusionData const &fG, int V, int W);

/// embeds_in_induced_twist, asserted equal to const_support(V) ==
/// const_support(W); throws TheoremViolation on mismatch.
bool embedding_criterion(BranchingData const &b, FusionData const &fG, int V, int W);

} // namespace chaincore

#endif // CHAINCORE_CLIFFORD_HPP
