#include "chaincore/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "chaincore/clifford.hpp"
#include "chaincore/error.hpp"
#include "chaincore/fusion.hpp"

namespace chaincore {

namespace {

using nlohmann::json;

class SpecParser
{
public:
  explicit SpecParser(std::string_view text)
  : _text(text)
  {}

  [[noreturn]] void fail(std::string const &what) const
  {
    throw Error(ErrorKind::SpecParseError,
                "at position " + std::to_string(_pos) + " in '" + std::string(_text) + "': " + what);
  }

  bool done() const
  { return _pos >= _text.size(); }

  char peek() const
  { return done() ? '\0' : _text[_pos]; }

  std::size_t pos() const
  { return _pos; }

  void skip_ws()
  {
    while (!done() && std::isspace(static_cast<unsigned char>(peek())))
      ++_pos;
  }

  bool eat(char c)
  {
    if (peek() != c)
      return false;
    ++_pos;
    return true;
  }

  void expect(char c)
  {
    if (!eat(c))
      fail(std::string("expected '") + c + "'");
  }

  bool eat(std::string_view word)
  {
    if (_text.substr(_pos, word.size()) != word)
      return false;
    _pos += word.size();
    return true;
  }

  long long parse_int()
  {
    bool negative = eat('-');
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a number");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1000000000)
        fail("number too large");
      ++_pos;
    }
    return negative ? -v : v;
  }

  /// one permutation: a product of cycles "(0 1 2)(3 4)", or "()"
  Permutation parse_cycles()
  {
    Permutation perm;
    auto apply_cycle = [&](std::vector<int> const &cycle) {
      int top = cycle.empty() ? 0 : *std::max_element(cycle.begin(), cycle.end());
      while (static_cast<int>(perm.size()) <= top)
        perm.push_back(static_cast<int>(perm.size()));
      Permutation c(perm.size());
      std::iota(c.begin(), c.end(), 0);
      for (std::size_t i = 0; i < cycle.size(); ++i)
        c[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
      // earlier cycles act first
      for (auto &x : perm)
        x = c[static_cast<std::size_t>(x)];
    };

    skip_ws();
    if (peek() != '(')
      fail("expected '(' starting a cycle");
    while (eat('(')) {
      std::vector<int> cycle;
      skip_ws();
      while (!eat(')')) {
        if (done())
          fail("unterminated cycle");
        auto x = parse_int();
        if (x < 0)
          fail("negative point");
        if (std::find(cycle.begin(), cycle.end(), x) != cycle.end())
          fail("repeated point in cycle");
        cycle.push_back(static_cast<int>(x));
        skip_ws();
        eat(',');
        skip_ws();
      }
      apply_cycle(cycle);
      skip_ws();
    }
    if (perm.empty())
      perm.push_back(0);
    return perm;
  }

private:
  std::string_view _text;
  std::size_t _pos = 0;
};

struct Factor
{
  std::vector<Permutation> gens;
  std::size_t degree = 1;
  std::vector<std::string> names;
};

Permutation cycle_perm(std::size_t degree, std::vector<int> const &cycle)
{
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = 0; i < cycle.size(); ++i)
    p[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
  return p;
}

Permutation full_cycle(std::size_t n)
{
  std::vector<int> c(n);
  std::iota(c.begin(), c.end(), 0);
  return cycle_perm(n, c);
}

Factor cyclic_factor(std::size_t n)
{
  if (n <= 1)
    return {{}, 1, {}};
  return {{full_cycle(n)}, n, {"a"}};
}

Factor symmetric_factor(std::size_t n)
{
  if (n <= 1)
    return {{}, 1, {}};
  if (n == 2)
    return {{cycle_perm(2, {0, 1})}, 2, {"a"}};
  return {{cycle_perm(n, {0, 1}), full_cycle(n)}, n, {"a", "b"}};
}

Factor alternating_factor(std::size_t n)
{
  if (n <= 2)
    return {{}, 1, {}};
  Factor f{{}, n, {}};
  static constexpr std::string_view letters = "abcdfghjklmnopqrstuvwxyz";
  for (std::size_t k = 2; k < n; ++k) {
    f.gens.push_back(cycle_perm(n, {0, 1, static_cast<int>(k)}));
    f.names.push_back(k - 2 < letters.size() ? std::string(1, letters[k - 2]) : "g" + std::to_string(k));
  }
  return f;
}

Factor dihedral_factor(std::size_t n)
{
  if (n == 1)
    return {{cycle_perm(2, {0, 1})}, 2, {"s"}};
  if (n == 2)
    return {{cycle_perm(4, {0, 1}), cycle_perm(4, {2, 3})}, 4, {"r", "s"}};
  Permutation s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = static_cast<int>((n - i) % n);
  return {{full_cycle(n), s}, n, {"r", "s"}};
}

Factor quaternion_factor()
{
  // unit u in {1,i,j,k} with sign bit: point 2u + sign
  static constexpr int table[4][4][2] = {
    {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
    {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
    {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
    {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  auto left_mult = [&](int unit) {
    Permutation p(8);
    for (int u = 0; u < 4; ++u) {
      for (int s = 0; s < 2; ++s) {
        auto const &prod = table[unit][u];
        p[static_cast<std::size_t>(2 * u + s)] = 2 * prod[0] + (prod[1] ^ s);
      }
    }
    return p;
  };
  return {{left_mult(1), left_mult(2)}, 8, {"i", "j"}};
}

Factor sl23_factor()
{
  // action on the 8 nonzero vectors of GF(3)^2
  std::vector<std::pair<int, int>> vecs;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x || y)
        vecs.emplace_back(x, y);
  auto act = [&](int a, int b, int c, int d) {
    Permutation p(vecs.size());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      auto [x, y] = vecs[i];
      std::pair<int, int> image{((a * x + b * y) % 3 + 3) % 3, ((c * x + d * y) % 3 + 3) % 3};
      p[i] = static_cast<int>(std::find(vecs.begin(), vecs.end(), image) - vecs.begin());
    }
    return p;
  };
  return {{act(1, 1, 0, 1), act(0, -1, 1, 0)}, vecs.size(), {"a", "b"}};
}

Factor parse_factor(SpecParser &ps)
{
  auto size_arg = [&](char name) {
    auto n = ps.parse_int();
    if (n < 1)
      ps.fail(std::string(1, name) + "<n> needs n >= 1");
    if (n > 64)
      ps.fail("degree too large");
    return static_cast<std::size_t>(n);
  };

  if (ps.eat(std::string_view("perm:"))) {
    Factor f;
    ps.skip_ws();
    ps.expect('[');
    ps.skip_ws();
    if (!ps.eat(']')) {
      do {
        f.gens.push_back(ps.parse_cycles());
        ps.skip_ws();
      } while (ps.eat(','));
      ps.expect(']');
    }
    for (auto const &g : f.gens)
      f.degree = std::max(f.degree, g.size());
    return f;
  }
  if (ps.eat(std::string_view("SL23")))
    return sl23_factor();
  if (ps.eat(std::string_view("Q8")))
    return quaternion_factor();
  if (ps.eat('S'))
    return symmetric_factor(size_arg('S'));
  if (ps.eat('A'))
    return alternating_factor(size_arg('A'));
  if (ps.eat('D'))
    return dihedral_factor(size_arg('D'));
  if (ps.eat('C'))
    return cyclic_factor(size_arg('C'));
  ps.fail("expected S<n>, A<n>, D<n>, C<n>, Q8, SL23 or perm:[...]");
}

std::vector<std::string> split_top_level(SpecParser &ps, std::string const &body)
{
  std::vector<std::string> items;
  std::string cur;
  int depth = 0;
  for (char c : body) {
    if (c == '(')
      ++depth;
    if (c == ')')
      --depth;
    if (c == ',' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0)
    ps.fail("unbalanced parentheses");
  items.push_back(cur);
  for (auto &item : items) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    item = b == std::string::npos ? "" : item.substr(b, e - b + 1);
  }
  if (items.size() == 1 && items.front().empty())
    items.clear();
  return items;
}

Elem evaluate_word(GroupPtr const &G, std::string const &word)
{
  FiniteGroup const &g = *G;
  SpecParser ps(word);
  auto const &names = g.generator_names();
  Elem x = g.identity();
  ps.skip_ws();
  while (!ps.done()) {
    std::size_t best = names.size(), best_len = 0;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].size() > best_len && word.compare(ps.pos(), names[i].size(), names[i]) == 0) {
        best = i;
        best_len = names[i].size();
      }
    }
    Elem factor;
    if (best < names.size()) {
      ps.eat(std::string_view(names[best]));
      factor = g.generators()[best];
    } else if (ps.eat('e') || ps.eat('1')) {
      factor = g.identity();
    } else {
      ps.fail("unknown generator name");
    }
    if (ps.eat('^'))
      factor = g.power(factor, ps.parse_int());
    x = g.mul(x, factor);
    ps.skip_ws();
  }
  return x;
}

std::string join_labels(std::vector<std::string> const &xs)
{
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i)
    s += (i ? "," : "") + xs[i];
  return s + "}";
}

std::string show_factors(std::vector<std::int64_t> const &v)
{
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

Residue resolve_prime(FiniteGroup const &G, std::optional<Residue> prime)
{
  if (!prime)
    return choose_prime(G);
  if (!is_valid_prime(G, *prime))
    throw Error(ErrorKind::InvalidArgument,
                "--prime " + std::to_string(*prime) + " must be a prime = 1 mod "
                  + std::to_string(G.exponent()) + " exceeding " + std::to_string(G.order()));
  return *prime;
}

ChainSummary summarize(ChainGroupReport const &rep)
{
  ChainSummary s;
  s.generators = rep.chain.presentation.ngens;
  s.relations = rep.chain.presentation.relations.size();
  s.invariant_factors = rep.chain_invariants.torsion.invariant_factors();
  s.free_rank = rep.chain_invariants.free_rank;
  s.tc_order = rep.tc_order;
  s.target = rep.target.invariant_factors();
  return s;
}

CliffordSummary summarize(CliffordReport const &rep, BranchingData const &b)
{
  auto names = [](Block const &block, FusionData const &f) {
    std::vector<std::string> out;
    for (int i : block)
      out.push_back(f.labels()[static_cast<std::size_t>(i)]);
    return out;
  };
  CliffordSummary s;
  for (auto const &block : rep.sim_h)
    s.sim_h.push_back(names(block, b.big));
  for (auto const &block : rep.sim_b)
    s.sim_b.push_back(names(block, b.small));
  for (std::size_t V = 0; V < rep.const_map.size(); ++V)
    s.const_map.emplace_back(b.big.labels()[V], names(rep.const_map[V], b.small));
  return s;
}

std::vector<VerdictEntry> checks_to_verdicts(std::vector<Check> const &checks, std::string const &prefix)
{
  std::vector<VerdictEntry> out;
  for (auto const &c : checks)
    out.push_back({prefix + c.name, c.passed ? Verdict::Pass : Verdict::Fail, c.detail});
  return out;
}

std::string subgroup_description(Subgroup const &H)
{
  std::vector<std::string> labels;
  for (Elem g : H.elements())
    labels.push_back(H.parent()->label(g));
  if (labels.size() > 6) {
    labels.resize(6);
    labels.push_back("...");
  }
  return "order " + std::to_string(H.order()) + " " + join_labels(labels);
}

std::vector<Subgroup> parse_subgroups(GroupPtr const &G, std::vector<std::string> specs)
{
  if (specs.empty())
    specs.push_back("full");
  std::vector<Subgroup> out;
  for (auto const &s : specs)
    out.push_back(parse_subgroup_spec(G, s));
  return out;
}

template<typename F>
std::int64_t elapsed_ms(F &&body)
{
  auto start = std::chrono::steady_clock::now();
  body();
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
}

} // namespace

std::vector<Permutation> parse_permutation_list(std::string const &s)
{
  SpecParser ps(s);
  std::vector<Permutation> out;
  ps.skip_ws();
  if (ps.eat('[')) {
    ps.skip_ws();
    if (!ps.eat(']')) {
      do {
        out.push_back(ps.parse_cycles());
        ps.skip_ws();
      } while (ps.eat(','));
      ps.expect(']');
    }
  } else {
    out.push_back(ps.parse_cycles());
  }
  ps.skip_ws();
  if (!ps.done())
    ps.fail("trailing characters");
  return out;
}

GroupPtr parse_group_spec(std::string const &s, std::size_t cap)
{
  SpecParser ps(s);
  std::vector<Factor> factors;
  ps.skip_ws();
  factors.push_back(parse_factor(ps));
  ps.skip_ws();
  while (ps.eat('x')) {
    ps.skip_ws();
    factors.push_back(parse_factor(ps));
    ps.skip_ws();
  }
  if (!ps.done())
    ps.fail("trailing characters");

  if (factors.size() == 1)
    return group_from_generators(factors.front().gens, cap, factors.front().names);

  // direct product acting on the disjoint union of the factors' points
  std::size_t degree = 0;
  for (auto const &f : factors)
    degree += f.degree;
  std::vector<Permutation> gens;
  std::size_t shift = 0;
  for (auto const &f : factors) {
    for (auto const &g : f.gens) {
      Permutation p(degree);
      std::iota(p.begin(), p.end(), 0);
      for (std::size_t i = 0; i < g.size(); ++i)
        p[shift + i] = static_cast<int>(shift) + g[i];
      gens.push_back(std::move(p));
    }
    shift += f.degree;
  }
  return group_from_generators(gens, cap);
}

Subgroup parse_subgroup_spec(GroupPtr const &G, std::string const &s)
{
  std::string spec = s;
  spec.erase(0, spec.find_first_not_of(" \t"));
  spec.erase(spec.find_last_not_of(" \t") + 1);

  if (spec == "center")
    return center(G);
  if (spec == "derived")
    return derived_subgroup(G);
  if (spec == "trivial")
    return trivial_subgroup(G);
  if (spec == "full")
    return full_subgroup(G);

  SpecParser ps(spec);
  if (!ps.eat(std::string_view("gen:")))
    ps.fail("expected gen:[...], center, derived, trivial or full");
  ps.skip_ws();
  ps.expect('[');
  auto close = spec.rfind(']');
  if (close == std::string::npos || close < ps.pos())
    ps.fail("missing ']'");
  if (spec.find_first_not_of(" \t", close + 1) != std::string::npos)
    ps.fail("trailing characters");

  std::vector<Elem> elems;
  for (auto const &item : split_top_level(ps, spec.substr(ps.pos(), close - ps.pos()))) {
    if (item.empty())
      ps.fail("empty generator");
    if (item.front() == '(') {
      SpecParser cycles(item);
      auto perm = cycles.parse_cycles();
      auto g = G->find_permutation(perm);
      if (!g)
        ps.fail("permutation " + item + " is not an element of the group");
      elems.push_back(*g);
    } else {
      elems.push_back(evaluate_word(G, item));
    }
  }
  return subgroup_generated(G, elems);
}

std::vector<std::string> default_corpus()
{
  std::vector<std::string> out;
  for (int n = 2; n <= 12; ++n)
    out.push_back("C" + std::to_string(n));
  for (auto const *s : {"C2xC2", "C2xC4", "S3", "S4", "D4", "D5", "D6", "Q8", "A4", "SL23"})
    out.emplace_back(s);
  return out;
}

std::vector<std::string> read_manifest(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open manifest " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos)
      continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

json to_json(Report const &r)
{
  json j;
  j["command"] = r.command;
  j["inputs"] = r.inputs;
  j["verdicts"] = json::array();
  for (auto const &v : r.verdicts)
    j["verdicts"].push_back({{"name", v.name}, {"status", to_string(v.status)}, {"detail", v.detail}});
  if (r.chain) {
    auto const &c = *r.chain;
    j["chain"] = {{"generators", c.generators},
                  {"relations", c.relations},
                  {"invariant_factors", c.invariant_factors},
                  {"free_rank", c.free_rank},
                  {"tc_order", c.tc_order ? json(*c.tc_order) : json(nullptr)},
                  {"target", c.target ? json(*c.target) : json(nullptr)}};
  }
  if (r.clifford) {
    json cm = json::array();
    for (auto const &[label, support] : r.clifford->const_map)
      cm.push_back({{"irrep", label}, {"support", support}});
    j["clifford"] = {{"simH", r.clifford->sim_h}, {"simB", r.clifford->sim_b}, {"const_map", cm}};
  }
  j["details"] = r.details;
  j["timing_ms"] = r.timing_ms;
  return j;
}

Report report_from_json(json const &j)
{
  Report r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  for (auto const &v : j.at("verdicts")) {
    auto status = verdict_from_string(v.at("status").get<std::string>());
    if (!status)
      throw Error(ErrorKind::ParseError, "unknown verdict status");
    r.verdicts.push_back({v.at("name").get<std::string>(), *status, v.at("detail").get<std::string>()});
  }
  if (auto it = j.find("chain"); it != j.end() && !it->is_null()) {
    ChainSummary c;
    c.generators = it->at("generators").get<int>();
    c.relations = it->at("relations").get<std::size_t>();
    c.invariant_factors = it->at("invariant_factors").get<std::vector<std::int64_t>>();
    c.free_rank = it->at("free_rank").get<int>();
    if (!it->at("tc_order").is_null())
      c.tc_order = it->at("tc_order").get<std::int64_t>();
    if (!it->at("target").is_null())
      c.target = it->at("target").get<std::vector<std::int64_t>>();
    r.chain = c;
  }
  if (auto it = j.find("clifford"); it != j.end() && !it->is_null()) {
    CliffordSummary c;
    c.sim_h = it->at("simH").get<std::vector<std::vector<std::string>>>();
    c.sim_b = it->at("simB").get<std::vector<std::vector<std::string>>>();
    for (auto const &e : it->at("const_map"))
      c.const_map.emplace_back(e.at("irrep").get<std::string>(),
                               e.at("support").get<std::vector<std::string>>());
    r.clifford = c;
  }
  if (auto it = j.find("details"); it != j.end())
    r.details = *it;
  r.timing_ms = j.at("timing_ms").get<std::int64_t>();
  return r;
}

std::string render_text(Report const &r)
{
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  for (auto const &[key, value] : r.inputs.items())
    os << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";

  if (r.chain) {
    auto const &c = *r.chain;
    os << "chain group: " << c.generators << " generators, " << c.relations << " relations, "
       << "invariant factors " << show_factors(c.invariant_factors);
    if (c.free_rank > 0)
      os << " x Z^" << c.free_rank;
    os << ", enumerated order " << (c.tc_order ? std::to_string(*c.tc_order) : "inconclusive");
    if (c.target)
      os << ", target " << show_factors(*c.target);
    os << "\n";
  }
  if (r.clifford) {
    auto partition = [](std::vector<std::vector<std::string>> const &p) {
      std::string s = "{";
      for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + join_labels(p[i]);
      return s + "}";
    };
    os << "sim_H: " << partition(r.clifford->sim_h) << "\n";
    os << "sim_B: " << partition(r.clifford->sim_b) << "\n";
    for (auto const &[label, support] : r.clifford->const_map)
      os << "  const(" << label << ") = " << join_labels(support) << "\n";
  }
  if (!r.details.empty())
    for (auto const &[key, value] : r.details.items())
      os << key << ": " << value.dump() << "\n";

  for (auto const &v : r.verdicts) {
    os << to_string(v.status) << "  " << v.name;
    if (!v.detail.empty())
      os << "  [" << v.detail << "]";
    os << "\n";
  }
  os << "overall: " << to_string(r.overall()) << "\n";
  return os.str();
}

int exit_code_for(Report const &r)
{
  switch (r.overall()) {
  case Verdict::Pass: return 0;
  case Verdict::Fail: return 1;
  case Verdict::Inconclusive: return 2;
  }
  return 2;
}

RunResult run_chaingroup(RunConfig const &cfg)
{
  Report r;
  r.command = "chain";
  r.timing_ms = elapsed_ms([&] {
    auto G = parse_group_spec(cfg.group, cfg.order_cap);
    auto subgroups = parse_subgroups(G, cfg.subgroups);
    auto p = resolve_prime(*G, cfg.prime);
    auto tG = character_table_modp(G, p);

    r.inputs = {{"group", cfg.group},
                {"subgroups", cfg.subgroups.empty() ? std::vector<std::string>{"full"} : cfg.subgroups},
                {"prime", p},
                {"coset_limit", cfg.coset_limit}};

    bool several = subgroups.size() > 1;
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
      auto const &H = subgroups[i];
      auto rep = verify_caniso(tG, H, cfg.coset_limit);
      std::string prefix = several ? "H" + std::to_string(i) + ": " : "";
      for (auto v : rep.verdicts) {
        v.name = prefix + v.name;
        r.verdicts.push_back(std::move(v));
      }
      r.chain = summarize(rep);

      json images = json::array();
      auto labels = fusion_from_group(tG).labels();
      for (std::size_t V = 0; V < rep.canonical_images.size(); ++V)
        images.push_back({{"irrep", labels[V]}, {"character", rep.canonical_images[V]}});
      json entry = {{"subgroup", subgroup_description(H)},
                    {"relative_center_order", relative_center(H).order()},
                    {"canonical_images", images}};
      r.details["subgroup" + std::to_string(i)] = entry;
    }

    if (subgroups.size() == 2) {
      auto const &K = subgroups[0];
      auto const &H = subgroups[1];
      bool nested = std::all_of(K.elements().begin(), K.elements().end(),
                                [&](Elem k) { return H.contains(k); });
      if (nested)
        r.verdicts.push_back(verify_chain_functoriality(tG, K, H).verdict);
    }
  });
  return {r, exit_code_for(r)};
}

RunResult run_clifford(RunConfig const &cfg)
{
  Report r;
  r.command = "clifford";
  int forced_exit = -1;
  r.timing_ms = elapsed_ms([&] {
    auto G = parse_group_spec(cfg.group, cfg.order_cap);
    auto H = parse_subgroups(G, cfg.subgroups).front();
    auto p = resolve_prime(*G, cfg.prime);
    bool normal = is_normal(H);
    r.inputs = {{"group", cfg.group},
                {"subgroup", cfg.subgroups.empty() ? "full" : cfg.subgroups.front()},
                {"prime", p},
                {"normal", normal}};

    if (!normal && !cfg.force) {
      r.verdicts.push_back({"subgroup normal", Verdict::Inconclusive,
                            "NotNormal: " + subgroup_description(H)
                              + " is not normal; rerun with --force to see which checks fail"});
      forced_exit = 2;
      return;
    }

    auto tG = character_table_modp(G, p);
    auto b = branching_for_subgroup(tG, H);
    auto rep = verify_partition_duality(b, &b.big);
    r.verdicts = checks_to_verdicts(rep.checks, "");
    r.clifford = summarize(rep, b);
  });
  return {r, forced_exit >= 0 ? forced_exit : exit_code_for(r)};
}

RunResult run_fusion(RunConfig const &cfg)
{
  Report r;
  r.command = "fusion";
  r.timing_ms = elapsed_ms([&] {
    r.inputs = {{"input", cfg.input}, {"coset_limit", cfg.coset_limit},
                {"allow_noncommutative", cfg.allow_noncommutative}};
    auto file = load_fusion_file(cfg.input, cfg.allow_noncommutative);
    r.verdicts.push_back({"fusion axioms", Verdict::Pass, "all axioms hold"});
    BranchingData b = file.branching ? *file.branching : identity_branching(file.fusion);
    r.verdicts.push_back({"branching axioms", Verdict::Pass,
                          file.branching ? "all axioms hold" : "identity branching (H = G)"});
    if (!file.comment.empty())
      r.details["comment"] = file.comment;

    auto chain = chain_presentation(b, cfg.allow_noncommutative);
    auto ab = abelianization(chain.presentation);
    auto tc = todd_coxeter(chain.presentation, cfg.coset_limit);

    ChainSummary s;
    s.generators = chain.presentation.ngens;
    s.relations = chain.presentation.relations.size();
    s.invariant_factors = ab.torsion.invariant_factors();
    s.free_rank = ab.free_rank;
    if (tc)
      s.tc_order = tc->order;
    if (file.expected_chain_group)
      s.target = *file.expected_chain_group;
    r.chain = s;

    if (tc && !ab.infinite())
      r.verdicts.push_back({"abelianization order divides enumerated order",
                            tc->order % ab.torsion.order() == 0 ? Verdict::Pass : Verdict::Fail,
                            std::to_string(ab.torsion.order()) + " | " + std::to_string(tc->order)});

    if (!file.fusion.commutative()) {
      r.details["note"] = "non-commutative fusion: abelianization and enumerated order only";
      return;
    }
    if (file.expected_chain_group) {
      auto expected = FiniteAbelianGroup(*file.expected_chain_group);
      VerdictEntry v{"chain group matches expected", Verdict::Fail, ""};
      if (ab.infinite() || !(ab.torsion == expected))
        v.detail = "abelianization " + ab.to_string() + " vs expected " + expected.to_string();
      else if (!tc)
        v = {v.name, Verdict::Inconclusive, "coset enumeration exhausted"};
      else if (tc->order != expected.order())
        v.detail = "enumerated order " + std::to_string(tc->order) + " vs " + std::to_string(expected.order());
      else
        v = {v.name, Verdict::Pass, "invariant factors " + expected.to_string()};
      r.verdicts.push_back(v);
    }
  });
  return {r, exit_code_for(r)};
}

RunResult run_group(RunConfig const &cfg)
{
  Report r;
  r.command = "group";
  r.timing_ms = elapsed_ms([&] {
    auto G = parse_group_spec(cfg.group, cfg.order_cap);
    auto p = resolve_prime(*G, cfg.prime);
    auto t = character_table_modp(G, p);
    r.inputs = {{"group", cfg.group}, {"prime", p}};

    std::vector<std::size_t> sizes;
    for (auto const &c : t.classes.classes)
      sizes.push_back(c.members.size());
    auto f = fusion_from_group(t);
    r.details = {{"order", G->order()},
                 {"exponent", G->exponent()},
                 {"center_order", center(G).order()},
                 {"class_sizes", sizes},
                 {"irreps", f.labels()},
                 {"degrees", t.degrees},
                 {"table_mod_p", t.table}};

    if (G->order() <= 200)
      r.verdicts.push_back({"group axioms", G->check_axioms() ? Verdict::Pass : Verdict::Fail, ""});
    auto failures = check_character_table(t);
    r.verdicts.push_back({"character table identities", failures.empty() ? Verdict::Pass : Verdict::Fail,
                          failures.empty() ? "" : failures.front()});
    auto report = validate(f);
    r.verdicts.push_back({"fusion axioms", report.ok() ? Verdict::Pass : Verdict::Fail, report.summary()});
  });
  return {r, exit_code_for(r)};
}

namespace {

struct CorpusEntry
{
  std::vector<VerdictEntry> verdicts;
  json summary;
};

CorpusEntry evaluate_corpus_group(std::string const &spec, RunConfig const &cfg)
{
  CorpusEntry out;
  auto add = [&](std::string name, Verdict v, std::string detail) {
    out.verdicts.push_back({spec + " " + std::move(name), v, std::move(detail)});
  };

  try {
    auto G = parse_group_spec(spec, cfg.order_cap);
    auto p = resolve_prime(*G, cfg.prime);
    auto tG = character_table_modp(G, p);

    auto failures = check_character_table(tG);
    auto regular = regular_character(tG);
    for (std::size_t V = 0; V < tG.size(); ++V)
      if (multiplicity(tG, regular, static_cast<int>(V)) != tG.degrees[V])
        failures.push_back("regular multiplicity of irrep " + std::to_string(V));
    add("character table", failures.empty() ? Verdict::Pass : Verdict::Fail,
        failures.empty() ? "p = " + std::to_string(p) : failures.front());

    auto fG = fusion_from_group(tG);
    {
      auto t2 = character_table_modp(G, next_valid_prime(*G, p));
      auto f2 = fusion_from_group(t2);
      bool same = t2.degrees == tG.degrees && f2 == fG;
      auto Z = center(G);
      for (std::size_t V = 0; V < tG.size() && same; ++V)
        for (Elem z : Z.elements())
          same = same && central_character(tG, static_cast<int>(V), z)
                           == central_character(t2, static_cast<int>(V), z);
      add("prime independence", same ? Verdict::Pass : Verdict::Fail,
          "p = " + std::to_string(p) + " vs " + std::to_string(t2.p));
    }

    auto fv = validate(fG);
    add("fusion axioms", fv.ok() ? Verdict::Pass : Verdict::Fail, fv.summary());

    auto lattice = subgroup_lattice(G);
    std::size_t normal_count = 0, caniso_pass = 0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      auto const &H = lattice[i];
      std::string name = "H" + std::to_string(i) + " (" + subgroup_description(H) + ")";

      auto rep = verify_caniso(tG, H, cfg.coset_limit);
      std::string detail = "C = " + rep.chain_invariants.to_string() + ", dual of Z(G) cap H = "
                           + rep.target.to_string();
      for (auto const &v : rep.verdicts)
        if (v.status != Verdict::Pass)
          detail += "; " + v.name + ": " + v.detail;
      add(name + " chain group isomorphism", rep.overall(), detail);
      if (rep.overall() == Verdict::Pass)
        ++caniso_pass;

      auto iso = verify_iso_theorem(H);
      add(name + " " + iso.name, iso.status, iso.detail);

      auto b = branching_for_subgroup(tG, H);
      auto bv = validate(b);
      add(name + " branching axioms", bv.ok() ? Verdict::Pass : Verdict::Fail, bv.summary());

      bool frobenius = true;
      for (std::size_t V = 0; V < b.big.size(); ++V)
        for (std::size_t W = 0; W < b.small.size(); ++W)
          frobenius = frobenius
                      && dot(restrict(b, b.big.basis(static_cast<int>(V))), b.small.basis(static_cast<int>(W)))
                           == dot(b.big.basis(static_cast<int>(V)), induce(b, b.small.basis(static_cast<int>(W))));
      add(name + " Frobenius reciprocity", frobenius ? Verdict::Pass : Verdict::Fail, "");

      if (is_normal(H)) {
        ++normal_count;
        auto cr = verify_partition_duality(b, &fG);
        std::string failed;
        for (auto const &c : cr.checks)
          if (!c.passed)
            failed += c.name + ": " + c.detail + "; ";
        add(name + " Clifford duality", cr.passed() ? Verdict::Pass : Verdict::Fail, failed);
      }
    }

    out.summary = {{"group", spec},
                   {"order", G->order()},
                   {"subgroups", lattice.size()},
                   {"normal_subgroups", normal_count},
                   {"caniso_pass", caniso_pass}};
  } catch (std::exception const &err) {
    add("error", Verdict::Inconclusive, err.what());
    out.summary = {{"group", spec}, {"error", err.what()}};
  }
  return out;
}

} // namespace

RunResult run_corpus(RunConfig const &cfg)
{
  Report r;
  r.command = "corpus";
  r.timing_ms = elapsed_ms([&] {
    auto entries = cfg.manifest.empty() ? default_corpus() : read_manifest(cfg.manifest);
    r.inputs = {{"manifest", cfg.manifest.empty() ? "(default corpus)" : cfg.manifest},
                {"coset_limit", cfg.coset_limit}};

    unsigned workers = cfg.workers;
    if (char const *env = std::getenv("CHAINCORE_WORKERS"))
      workers = static_cast<unsigned>(std::max(1, std::atoi(env)));
    if (workers == 0)
      workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, entries.size())));

    std::vector<CorpusEntry> results(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < entries.size(); i = next++)
        results[i] = evaluate_corpus_group(entries[i], cfg);
    };
    if (workers <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
      for (auto &t : pool)
        t.join();
    }

    json summary = json::array();
    std::size_t pass = 0, fail = 0, inconclusive = 0;
    for (auto &entry : results) {
      for (auto &v : entry.verdicts) {
        pass += v.status == Verdict::Pass;
        fail += v.status == Verdict::Fail;
        inconclusive += v.status == Verdict::Inconclusive;
        r.verdicts.push_back(std::move(v));
      }
      summary.push_back(entry.summary);
    }
    r.details = {{"entries", summary.size()},
                 {"groups", summary},
                 {"pass", pass},
                 {"fail", fail},
                 {"inconclusive", inconclusive}};
  });
  return {r, exit_code_for(r)};
}

RunResult run(RunConfig const &cfg)
{
  try {
    if (cfg.command == "chain")
      return run_chaingroup(cfg);
    if (cfg.command == "clifford")
      return run_clifford(cfg);
    if (cfg.command == "fusion")
      return run_fusion(cfg);
    if (cfg.command == "corpus")
      return run_corpus(cfg);
    if (cfg.command == "group")
      return run_group(cfg);
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + cfg.command + "'");
  } catch (std::exception const &err) {
    Report r;
    r.command = cfg.command;
    r.verdicts.push_back({"input", Verdict::Inconclusive, err.what()});
    return {r, 2};
  }
}

} // namespace chaincore
