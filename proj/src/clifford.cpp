#include "chaincore/clifford.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "chaincore/error.hpp"

namespace chaincore {

namespace {

std::string show(Block const &block)
{
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < block.size(); ++i)
    os << (i ? "," : "") << block[i];
  os << "}";
  return os.str();
}

bool overlaps(Block const &a, Block const &b)
{
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return !common.empty();
}

void normalize(Partition &p)
{
  for (auto &block : p)
    std::sort(block.begin(), block.end());
  std::sort(p.begin(), p.end());
}

/// Connected components of a symmetric relation on {0..n-1}.
Partition components(std::size_t n, std::vector<std::vector<bool>> const &rel)
{
  std::vector<int> comp(n, -1);
  Partition out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;
    auto id = static_cast<int>(out.size());
    Block block;
    std::vector<std::size_t> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      block.push_back(static_cast<int>(x));
      for (std::size_t y = 0; y < n; ++y) {
        if (rel[x][y] && comp[y] < 0) {
          comp[y] = id;
          stack.push_back(y);
        }
      }
    }
    out.push_back(std::move(block));
  }
  normalize(out);
  return out;
}

/// First triple violating transitivity, if any.
std::optional<std::string> transitivity_witness(std::size_t n,
                                                std::vector<std::vector<bool>> const &rel)
{
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (rel[a][b] && rel[b][c] && !rel[a][c])
          return std::to_string(a) + "~" + std::to_string(b) + "~" + std::to_string(c)
                 + " but not " + std::to_string(a) + "~" + std::to_string(c);
  return std::nullopt;
}

Partition fibers(std::vector<Block> const &supports)
{
  std::map<Block, Block> by_support;
  for (std::size_t V = 0; V < supports.size(); ++V)
    by_support[supports[V]].push_back(static_cast<int>(V));
  Partition out;
  for (auto &[support, block] : by_support)
    out.push_back(std::move(block));
  normalize(out);
  return out;
}

Partition distinct_supports(std::vector<Block> const &supports)
{
  std::set<Block> distinct(supports.begin(), supports.end());
  Partition out(distinct.begin(), distinct.end());
  normalize(out);
  return out;
}

std::vector<Block> all_supports(BranchingData const &b)
{
  std::vector<Block> out;
  for (std::size_t V = 0; V < b.big.size(); ++V)
    out.push_back(const_support(b, static_cast<int>(V)));
  return out;
}

} // namespace

bool CliffordReport::passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](Check const &c) { return c.passed; });
}

Block const_support(BranchingData const &b, int V)
{
  Block out;
  auto const &row = b.matrix.at(static_cast<std::size_t>(V));
  for (std::size_t W = 0; W < row.size(); ++W)
    if (row[W] > 0)
      out.push_back(static_cast<int>(W));
  return out;
}

Partition sim_H_partition(BranchingData const &b)
{
  auto supports = all_supports(b);
  for (std::size_t V = 0; V < supports.size(); ++V)
    for (std::size_t W = V + 1; W < supports.size(); ++W)
      if (supports[V] != supports[W] && overlaps(supports[V], supports[W]))
        throw Error(ErrorKind::TheoremViolation,
                    "supports " + show(supports[V]) + " of " + std::to_string(V) + " and "
                      + show(supports[W]) + " of " + std::to_string(W)
                      + " overlap without being equal");
  return fibers(supports);
}

Partition sim_B_partition(BranchingData const &b)
{
  auto supports = all_supports(b);
  std::vector<bool> covered(b.small.size(), false);
  for (auto const &s : supports)
    for (int W : s)
      covered[static_cast<std::size_t>(W)] = true;
  for (std::size_t W = 0; W < covered.size(); ++W)
    if (!covered[W])
      throw Error(ErrorKind::UncoveredIrrep,
                  "small simple " + std::to_string(W) + " occurs in no restriction");

  auto blocks = distinct_supports(supports);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (overlaps(blocks[i], blocks[j]))
        throw Error(ErrorKind::TheoremViolation,
                    "supports " + show(blocks[i]) + " and " + show(blocks[j])
                      + " do not partition the small simples");
  return blocks;
}

bool embeds_in_induced_twist(BranchingData const &b, FusionData const &fG, int V, int W)
{
  if (fG.size() != b.big.size())
    throw Error(ErrorKind::DimensionMismatch, "fusion ring does not match branching rows");
  auto induced_unit = induce(b, b.small.basis(b.small.unit()));
  auto twisted = fG.multiply(fG.basis(W), induced_unit);
  return twisted.at(static_cast<std::size_t>(V)) > 0;
}

bool embedding_criterion(BranchingData const &b, FusionData const &fG, int V, int W)
{
  bool embeds = embeds_in_induced_twist(b, fG, V, W);
  bool same = const_support(b, V) == const_support(b, W);
  if (embeds != same)
    throw Error(ErrorKind::TheoremViolation,
                "embedding criterion (" + std::string(embeds ? "true" : "false")
                  + ") disagrees with support equality for " + std::to_string(V) + ","
                  + std::to_string(W));
  return embeds;
}

CliffordReport verify_partition_duality(BranchingData const &b, FusionData const *fG)
{
  CliffordReport report;
  std::size_t n = b.big.size(), m = b.small.size();
  report.const_map = all_supports(b);
  auto const &supports = report.const_map;

  // V ~_H W iff the restrictions share a constituent
  std::vector<std::vector<bool>> rel_h(n, std::vector<bool>(n, false));
  for (std::size_t V = 0; V < n; ++V)
    for (std::size_t W = 0; W < n; ++W)
      rel_h[V][W] = overlaps(supports[V], supports[W]);
  report.sim_h = components(n, rel_h);

  auto witness = transitivity_witness(n, rel_h);
  report.checks.push_back({"sim_H transitive", !witness, witness.value_or("")});

  std::string mismatch;
  for (std::size_t V = 0; V < n && mismatch.empty(); ++V)
    for (std::size_t W = V + 1; W < n && mismatch.empty(); ++W)
      if (rel_h[V][W] && supports[V] != supports[W])
        mismatch = std::to_string(V) + " " + show(supports[V]) + " vs " + std::to_string(W) + " "
                   + show(supports[W]);
  report.checks.push_back({"overlapping supports are equal", mismatch.empty(), mismatch});

  // W ~_B W' iff both are constituents of one restriction
  std::vector<std::vector<bool>> rel_b(m, std::vector<bool>(m, false));
  std::vector<bool> covered(m, false);
  for (auto const &s : supports) {
    for (int x : s) {
      covered[static_cast<std::size_t>(x)] = true;
      for (int y : s)
        rel_b[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = true;
    }
  }
  report.sim_b = components(m, rel_b);

  std::string uncovered;
  for (std::size_t W = 0; W < m; ++W)
    if (!covered[W])
      uncovered += (uncovered.empty() ? "" : ",") + std::to_string(W);
  report.checks.push_back({"every small simple is a constituent", uncovered.empty(),
                           uncovered.empty() ? "" : "uncovered: " + uncovered});

  witness = transitivity_witness(m, rel_b);
  report.checks.push_back({"sim_B transitive", !witness, witness.value_or("")});

  auto range = distinct_supports(supports);
  report.checks.push_back({"const range equals sim_B classes", range == report.sim_b,
                           range == report.sim_b ? "" : "range has " + std::to_string(range.size())
                                                        + " sets, sim_B has "
                                                        + std::to_string(report.sim_b.size())
                                                        + " classes"});

  auto fib = fibers(supports);
  report.checks.push_back({"const fibers equal sim_H classes", fib == report.sim_h,
                           fib == report.sim_h ? "" : "fibers: " + std::to_string(fib.size())
                                                      + ", sim_H classes: "
                                                      + std::to_string(report.sim_h.size())});

  std::size_t max_support = 0;
  for (auto const &s : supports)
    max_support = std::max(max_support, s.size());
  Count max_dim = *std::max_element(b.big.dims().begin(), b.big.dims().end());
  std::string oversized;
  for (auto const &block : report.sim_b)
    if (block.size() > max_support || static_cast<Count>(block.size()) > max_dim)
      oversized = show(block);
  report.checks.push_back({"sim_B classes bounded by max dimension", oversized.empty(),
                           oversized.empty() ? "max class size <= " + std::to_string(max_support)
                                             : "class " + oversized + " too large"});

  if (fG) {
    std::string disagree;
    for (std::size_t V = 0; V < n && disagree.empty(); ++V) {
      for (std::size_t W = 0; W < n && disagree.empty(); ++W) {
        bool embeds = embeds_in_induced_twist(b, *fG, static_cast<int>(V), static_cast<int>(W));
        if (embeds != (supports[V] == supports[W]))
          disagree = std::to_string(V) + " in " + std::to_string(W) + "(x)Ind(1) is "
                     + (embeds ? "true" : "false") + " but supports "
                     + (supports[V] == supports[W] ? "agree" : "differ");
      }
    }
    report.checks.push_back({"embedding criterion matches support equality", disagree.empty(),
                             disagree});
  }
  return report;
}

} // namespace chaincore
