#ifndef CHAINCORE_CLI_HPP
#define CHAINCORE_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaincore/chain_center.hpp"
#include "chaincore/char_modp.hpp"
#include "chaincore/group.hpp"

namespace chaincore {

/// "[(0 1),(0 1 2)(3 4)]" or a single "(0 1 2)". Throws SpecParseError.
std::vector<Permutation> parse_permutation_list(std::string const &s);

/// Presets S<n>, A<n>, D<n> (order 2n), C<n>, Q8, SL23, direct products
/// joined by 'x', and perm:[...] in cycle notation.
GroupPtr parse_group_spec(std::string const &s, std::size_t cap = default_order_cap);

/// gen:[...] (generator words or permutations), center, derived, trivial,
/// full.
Subgroup parse_subgroup_spec(GroupPtr const &G, std::string const &s);

/// Bundled corpus: small groups whose full subgroup lattices are swept.
std::vector<std::string> default_corpus();

/// One group spec per line; blank lines and '#' comments are skipped.
std::vector<std::string> read_manifest(std::string const &path);

enum class OutputFormat { Text, Json };

struct RunConfig
{
  std::string command;
  std::string group;
  std::vector<std::string> subgroups;
  std::optional<Residue> prime;
  std::size_t coset_limit = default_coset_limit;
  std::size_t order_cap = default_order_cap;
  OutputFormat format = OutputFormat::Text;
  std::string manifest;
  std::string input;
  bool allow_noncommutative = false;
  bool force = false;
  unsigned workers = 0;
};

struct ChainSummary
{
  int generators = 0;
  std::size_t relations = 0;
  std::vector<std::int64_t> invariant_factors;
  int free_rank = 0;
  std::optional<std::int64_t> tc_order;
  std::optional<std::vector<std::int64_t>> target;

  friend bool operator==(ChainSummary const &, ChainSummary const &) = default;
};

struct CliffordSummary
{
  std::vector<std::vector<std::string>> sim_h;
  std::vector<std::vector<std::string>> sim_b;
  std::vector<std::pair<std::string, std::vector<std::string>>> const_map;

  friend bool operator==(CliffordSummary const &, CliffordSummary const &) = default;
};

struct Report
{
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<VerdictEntry> verdicts;
  std::optional<ChainSummary> chain;
  std::optional<CliffordSummary> clifford;
  nlohmann::json details = nlohmann::json::object();
  std::int64_t timing_ms = 0;

  Verdict overall() const
  { return combine(verdicts); }

  friend bool operator==(Report const &, Report const &) = default;
};

nlohmann::json to_json(Report const &r);
Report report_from_json(nlohmann::json const &j);
std::string render_text(Report const &r);

struct RunResult
{
  Report report;
  int exit_code;
};

/// 0 when every verdict passes, 1 on any failure, 2 otherwise.
int exit_code_for(Report const &r);

RunResult run_chaingroup(RunConfig const &cfg);
RunResult run_clifford(RunConfig const &cfg);
RunResult run_fusion(RunConfig const &cfg);
RunResult run_corpus(RunConfig const &cfg);
RunResult run_group(RunConfig const &cfg);

/// Dispatches on cfg.command; input errors become exit code 2 with the
/// message recorded as an INCONCLUSIVE "input" verdict.
RunResult run(RunConfig const &cfg);

} // namespace chaincore

#endif // CHAINCORE_CLI_HPP
