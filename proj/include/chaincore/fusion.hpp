#ifndef CHAINCORE_FUSION_HPP
#define CHAINCORE_FUSION_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chaincore/char_modp.hpp"

namespace chaincore {

using Count = std::int64_t;

/// Dense multiplicity vector over the simple objects of a fusion ring.
using MultVec = std::vector<Count>;

/// Fusion ring data: simple objects with dimensions, duality and tensor
/// multiplicities N^U_{V,W}.
class FusionData
{
public:
  FusionData() = default;

  /// `tensor[V * n + W]` is the vector over U of N^U_{V,W}. The commutative
  /// flag is computed from the tensor.
  FusionData(std::vector<std::string> labels,
             std::vector<Count> dims,
             int unit,
             std::vector<int> dual,
             std::vector<MultVec> tensor);

  std::size_t size() const
  { return _labels.size(); }

  std::vector<std::string> const &labels() const
  { return _labels; }

  std::vector<Count> const &dims() const
  { return _dims; }

  int unit() const
  { return _unit; }

  std::vector<int> const &dual() const
  { return _dual; }

  bool commutative() const
  { return _commutative; }

  MultVec const &product(int V, int W) const
  { return _tensor[static_cast<std::size_t>(V) * size() + static_cast<std::size_t>(W)]; }

  Count N(int U, int V, int W) const
  { return product(V, W)[static_cast<std::size_t>(U)]; }

  MultVec basis(int V) const;

  /// Multiplication of multiplicity vectors in the representation ring.
  MultVec multiply(MultVec const &x, MultVec const &y) const;

  friend bool operator==(FusionData const &, FusionData const &) = default;

private:
  std::vector<std::string> _labels;
  std::vector<Count> _dims;
  int _unit = 0;
  std::vector<int> _dual;
  std::vector<MultVec> _tensor;
  bool _commutative = true;
};

/// Restriction multiplicities from the simples of a big ring (rows) to those
/// of a small ring (columns).
struct BranchingData
{
  FusionData big;
  FusionData small;
  std::vector<MultVec> matrix;
};

struct AxiomFailure
{
  std::string axiom;
  std::string detail;
};

struct ValidationReport
{
  std::vector<AxiomFailure> failures;

  bool ok() const
  { return failures.empty(); }

  std::string summary() const;
};

FusionData fusion_from_group(CharacterTableModP const &t);

/// `embed` maps elements of tH's group into tG's group. Throws
/// NotAHomomorphism or PrimeMismatch.
BranchingData branching_from_groups(CharacterTableModP const &tG,
                                    CharacterTableModP const &tH,
                                    std::vector<Elem> const &embed);

/// Tables for H at tG's prime, then branching along the inclusion H <= G.
BranchingData branching_for_subgroup(CharacterTableModP const &tG, Subgroup const &H);

/// Branching of a ring to itself (identity matrix).
BranchingData identity_branching(FusionData const &f);

/// x -> x^T B
MultVec restrict(BranchingData const &b, MultVec const &x);

/// y -> B y
MultVec induce(BranchingData const &b, MultVec const &y);

Count dot(MultVec const &x, MultVec const &y);

/// U and V (x) W share a simple constituent after restriction.
bool non_disjoint(BranchingData const &b, int U, int V, int W);

ValidationReport validate(FusionData const &f);
ValidationReport validate(BranchingData const &b);

struct FusionFile
{
  FusionData fusion;
  std::optional<BranchingData> branching;
  std::optional<std::vector<std::int64_t>> expected_chain_group;
  std::string comment;
};

/// Parses and validates a fusion file. Throws ParseError (with line and
/// field) or ValidationError naming the failed axiom, and
/// NonCommutativeFusion unless `allow_noncommutative`.
FusionFile parse_fusion_json(std::string const &text, bool allow_noncommutative = false);
FusionFile load_fusion_file(std::filesystem::path const &path, bool allow_noncommutative = false);

} // namespace chaincore

#endif // CHAINCORE_FUSION_HPP
