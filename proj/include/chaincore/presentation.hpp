#ifndef CHAINCORE_PRESENTATION_HPP
#define CHAINCORE_PRESENTATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chaincore {

/// Generator g appears as g+1, its inverse as -(g+1).
using Letter = int;
using Word = std::vector<Letter>;

struct GroupPresentation
{
  int ngens = 0;
  std::vector<Word> relations;
};

/// Throws InvalidArgument on out-of-range letters.
void check_presentation(GroupPresentation const &p);

/// Free and cyclic reduction.
Word cyclically_reduce(Word const &w);

std::string format_word(Word const &w, std::vector<std::string> const &names = {});

/// Z/d1 x ... x Z/dk with 2 <= d1 | d2 | ... | dk; no factors is the trivial
/// group.
class FiniteAbelianGroup
{
public:
  FiniteAbelianGroup() = default;

  /// Throws InvalidArgument unless the factors form a divisibility chain of
  /// integers >= 2.
  explicit FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors);

  /// Normalizes an arbitrary product of cyclic groups (orders >= 1).
  static FiniteAbelianGroup from_cyclic_orders(std::vector<std::int64_t> const &orders);

  std::vector<std::int64_t> const &invariant_factors() const
  { return _factors; }

  std::int64_t order() const;

  std::string to_string() const;

  friend bool operator==(FiniteAbelianGroup const &, FiniteAbelianGroup const &) = default;

private:
  std::vector<std::int64_t> _factors;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// U * M * V = D with D diagonal, d_i | d_{i+1}, zeros last, U and V
/// unimodular. `diagonal` holds the min(rows, cols) diagonal entries.
struct SmithForm
{
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  std::vector<std::int64_t> diagonal;
};

SmithForm smith_normal_form(IntMatrix const &M, bool with_transforms = true);

/// Bareiss fraction-free determinant.
std::int64_t integer_determinant(IntMatrix M);

/// Rows whose integer span equals that of `rows`, in echelon form; at most
/// `ncols` rows.
IntMatrix echelon_basis(IntMatrix const &rows, std::size_t ncols);

/// Membership of v in the integer row span of `rows`, decided through the
/// column transform of a Smith form.
bool in_row_span(IntMatrix const &rows, std::vector<std::int64_t> const &v);

/// Exponent-sum matrix, one row per relation.
IntMatrix relation_matrix(GroupPresentation const &p);

struct Abelianization
{
  FiniteAbelianGroup torsion;
  int free_rank = 0;

  bool infinite() const
  { return free_rank > 0; }

  std::string to_string() const;
};

Abelianization abelianization(GroupPresentation const &p);

/// Completed enumeration over the trivial subgroup: `action[g][c]` is the
/// coset c * g; coset 0 is the identity.
struct CosetEnumeration
{
  std::int64_t order;
  std::vector<std::vector<int>> action;
};

inline constexpr std::size_t default_coset_limit = 100000;

/// HLT coset enumeration. Returns nullopt once more than `limit` cosets
/// would have to be defined.
std::optional<CosetEnumeration> todd_coxeter(GroupPresentation const &p,
                                             std::size_t limit = default_coset_limit);

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string const &s);

struct Certificate
{
  Verdict verdict;
  std::string detail;
  Abelianization abelian;
  std::optional<std::int64_t> tc_order;
};

/// INCONCLUSIVE when enumeration exhausts `limit`; otherwise PASS iff the
/// abelianization equals `target` and the enumerated order equals |target|.
Certificate certify_abelian_iso(GroupPresentation const &p,
                                FiniteAbelianGroup const &target,
                                std::size_t limit = default_coset_limit);

} // namespace chaincore

#endif // CHAINCORE_PRESENTATION_HPP
