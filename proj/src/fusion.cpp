#include "chaincore/fusion.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "chaincore/error.hpp"

namespace chaincore {

namespace {

constexpr std::size_t max_failures_per_axiom = 20;

std::string irrep_label(std::int64_t degree, std::size_t ordinal)
{
  std::string suffix;
  std::size_t k = ordinal;
  do {
    suffix.insert(suffix.begin(), static_cast<char>('a' + k % 26));
    k /= 26;
  } while (k-- > 0);
  return std::to_string(degree) + suffix;
}

std::vector<std::string> group_irrep_labels(CharacterTableModP const &t)
{
  std::map<std::int64_t, std::size_t> seen;
  std::vector<std::string> labels;
  for (auto d : t.degrees)
    labels.push_back(irrep_label(d, seen[d]++));
  return labels;
}

std::string idx(std::initializer_list<int> ids)
{
  std::string s = "(";
  bool first = true;
  for (int i : ids) {
    if (!first)
      s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + ")";
}

class Collector
{
public:
  explicit Collector(ValidationReport &report)
  : _report(report)
  {}

  void fail(std::string const &axiom, std::string detail)
  {
    auto &n = _counts[axiom];
    if (n++ < max_failures_per_axiom)
      _report.failures.push_back({axiom, std::move(detail)});
  }

private:
  ValidationReport &_report;
  std::map<std::string, std::size_t> _counts;
};

} // namespace

FusionData::FusionData(std::vector<std::string> labels,
                       std::vector<Count> dims,
                       int unit,
                       std::vector<int> dual,
                       std::vector<MultVec> tensor)
: _labels(std::move(labels)),
  _dims(std::move(dims)),
  _unit(unit),
  _dual(std::move(dual)),
  _tensor(std::move(tensor))
{
  std::size_t n = _labels.size();
  auto shape = [](std::string const &what) {
    throw Error(ErrorKind::ValidationError, "shape: " + what);
  };
  if (n == 0)
    shape("no simple objects");
  if (_dims.size() != n)
    shape("dims has " + std::to_string(_dims.size()) + " entries, expected " + std::to_string(n));
  if (_dual.size() != n)
    shape("dual has " + std::to_string(_dual.size()) + " entries, expected " + std::to_string(n));
  if (_unit < 0 || static_cast<std::size_t>(_unit) >= n)
    shape("unit index out of range");
  for (int d : _dual)
    if (d < 0 || static_cast<std::size_t>(d) >= n)
      shape("dual index out of range");
  if (_tensor.size() != n * n)
    shape("tensor does not cover all pairs");
  for (auto const &v : _tensor)
    if (v.size() != n)
      shape("tensor output vector has wrong length");

  _commutative = true;
  for (std::size_t V = 0; V < n && _commutative; ++V)
    for (std::size_t W = V + 1; W < n && _commutative; ++W)
      _commutative = _tensor[V * n + W] == _tensor[W * n + V];
}

MultVec FusionData::basis(int V) const
{
  MultVec e(size(), 0);
  e.at(static_cast<std::size_t>(V)) = 1;
  return e;
}

MultVec FusionData::multiply(MultVec const &x, MultVec const &y) const
{
  std::size_t n = size();
  if (x.size() != n || y.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "multiplicity vector has wrong length");
  MultVec out(n, 0);
  for (std::size_t V = 0; V < n; ++V) {
    if (x[V] == 0)
      continue;
    for (std::size_t W = 0; W < n; ++W) {
      if (y[W] == 0)
        continue;
      auto const &prod = product(static_cast<int>(V), static_cast<int>(W));
      for (std::size_t U = 0; U < n; ++U)
        out[U] += x[V] * y[W] * prod[U];
    }
  }
  return out;
}

std::string ValidationReport::summary() const
{
  if (failures.empty())
    return "all axioms hold";
  std::ostringstream os;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (i)
      os << "; ";
    os << failures[i].axiom << " " << failures[i].detail;
  }
  return os.str();
}

FusionData fusion_from_group(CharacterTableModP const &t)
{
  std::size_t n = t.size();
  std::vector<MultVec> tensor(n * n, MultVec(n, 0));
  for (std::size_t V = 0; V < n; ++V) {
    for (std::size_t W = 0; W < n; ++W) {
      auto prod = pointwise_product(t, t.table[V], t.table[W]);
      for (std::size_t U = 0; U < n; ++U)
        tensor[V * n + W][U] =
          multiplicity(t, prod, static_cast<int>(U), t.degrees[V] * t.degrees[W]);
    }
  }

  std::vector<int> dual(n, -1);
  std::size_t r = t.classes.classes.size();
  for (std::size_t V = 0; V < n; ++V) {
    ClassFunction conj(r);
    for (std::size_t j = 0; j < r; ++j)
      conj[j] = t.table[V][static_cast<std::size_t>(t.classes.classes[j].inverse_class)];
    auto it = std::find(t.table.begin(), t.table.end(), conj);
    if (it == t.table.end())
      throw Error(ErrorKind::NonIntegral, "conjugate character missing from table");
    dual[V] = static_cast<int>(it - t.table.begin());
  }

  return FusionData(group_irrep_labels(t), t.degrees, 0, std::move(dual), std::move(tensor));
}

BranchingData branching_from_groups(CharacterTableModP const &tG,
                                    CharacterTableModP const &tH,
                                    std::vector<Elem> const &embed)
{
  if (tG.p != tH.p)
    throw Error(ErrorKind::PrimeMismatch,
                "tables use primes " + std::to_string(tG.p) + " and " + std::to_string(tH.p));
  if (!is_injective_homomorphism(*tH.group, *tG.group, embed))
    throw Error(ErrorKind::NotAHomomorphism, "embedding is not an injective homomorphism");

  BranchingData b{fusion_from_group(tG), fusion_from_group(tH), {}};
  std::size_t r = tH.classes.classes.size();
  for (std::size_t V = 0; V < tG.size(); ++V) {
    ClassFunction restricted(r);
    for (std::size_t k = 0; k < r; ++k) {
      Elem h = tH.classes.classes[k].representative;
      restricted[k] = tG.value(static_cast<int>(V), embed[static_cast<std::size_t>(h)]);
    }
    MultVec row(tH.size());
    for (std::size_t W = 0; W < tH.size(); ++W)
      row[W] = multiplicity(tH, restricted, static_cast<int>(W), tG.degrees[V]);
    b.matrix.push_back(std::move(row));
  }
  return b;
}

BranchingData branching_for_subgroup(CharacterTableModP const &tG, Subgroup const &H)
{
  if (H.parent() != tG.group)
    throw Error(ErrorKind::ParentMismatch, "subgroup does not belong to the table's group");
  auto tH = character_table_modp(H.as_group(), tG.p);
  return branching_from_groups(tG, tH, H.elements());
}

BranchingData identity_branching(FusionData const &f)
{
  std::vector<MultVec> matrix;
  for (std::size_t V = 0; V < f.size(); ++V)
    matrix.push_back(f.basis(static_cast<int>(V)));
  return {f, f, std::move(matrix)};
}

MultVec restrict(BranchingData const &b, MultVec const &x)
{
  if (x.size() != b.big.size())
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match the big ring");
  MultVec out(b.small.size(), 0);
  for (std::size_t V = 0; V < x.size(); ++V)
    for (std::size_t W = 0; W < out.size(); ++W)
      out[W] += x[V] * b.matrix[V][W];
  return out;
}

MultVec induce(BranchingData const &b, MultVec const &y)
{
  if (y.size() != b.small.size())
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match the small ring");
  MultVec out(b.big.size(), 0);
  for (std::size_t V = 0; V < out.size(); ++V)
    for (std::size_t W = 0; W < y.size(); ++W)
      out[V] += b.matrix[V][W] * y[W];
  return out;
}

Count dot(MultVec const &x, MultVec const &y)
{
  if (x.size() != y.size())
    throw Error(ErrorKind::DimensionMismatch, "dot product of vectors of different length");
  Count acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += x[i] * y[i];
  return acc;
}

bool non_disjoint(BranchingData const &b, int U, int V, int W)
{
  auto const &rows = b.matrix;
  auto vw = b.small.multiply(rows.at(static_cast<std::size_t>(V)),
                             rows.at(static_cast<std::size_t>(W)));
  return dot(rows.at(static_cast<std::size_t>(U)), vw) > 0;
}

ValidationReport validate(FusionData const &f)
{
  ValidationReport report;
  Collector c(report);
  auto n = static_cast<int>(f.size());
  int one = f.unit();

  for (int V = 0; V < n; ++V)
    if (f.dims()[static_cast<std::size_t>(V)] <= 0)
      c.fail("dimension", "dims[" + std::to_string(V) + "] is not positive");

  for (int V = 0; V < n; ++V)
    for (int W = 0; W < n; ++W)
      for (int U = 0; U < n; ++U)
        if (f.N(U, V, W) < 0)
          c.fail("nonnegativity", "N" + idx({U, V, W}) + " < 0");

  for (int U = 0; U < n; ++U) {
    for (int W = 0; W < n; ++W) {
      Count expected = U == W ? 1 : 0;
      if (f.N(U, one, W) != expected)
        c.fail("unit", "N^" + std::to_string(U) + "_{unit," + std::to_string(W) + "} != "
                         + std::to_string(expected));
      if (f.N(U, W, one) != expected)
        c.fail("unit", "N^" + std::to_string(U) + "_{" + std::to_string(W) + ",unit} != "
                         + std::to_string(expected));
    }
  }

  for (int V = 0; V < n; ++V) {
    int dv = f.dual()[static_cast<std::size_t>(V)];
    if (f.dual()[static_cast<std::size_t>(dv)] != V)
      c.fail("dual", "dual is not an involution at " + std::to_string(V));
    for (int W = 0; W < n; ++W) {
      Count expected = W == dv ? 1 : 0;
      if (f.N(one, V, W) != expected)
        c.fail("dual", "N^unit_" + idx({V, W}) + " != " + std::to_string(expected));
    }
  }

  auto const &dims = f.dims();
  for (int V = 0; V < n; ++V) {
    for (int W = 0; W < n; ++W) {
      Count total = 0;
      for (int U = 0; U < n; ++U)
        total += f.N(U, V, W) * dims[static_cast<std::size_t>(U)];
      if (total != dims[static_cast<std::size_t>(V)] * dims[static_cast<std::size_t>(W)])
        c.fail("dimension", "sum_U N^U_" + idx({V, W}) + " dim U = " + std::to_string(total));
    }
  }

  // (V W) Y = V (W Y)
  for (int V = 0; V < n; ++V) {
    for (int W = 0; W < n; ++W) {
      for (int Y = 0; Y < n; ++Y) {
        auto left = f.multiply(f.product(V, W), f.basis(Y));
        auto right = f.multiply(f.basis(V), f.product(W, Y));
        if (left != right)
          c.fail("associativity", "fails for " + idx({V, W, Y}));
      }
    }
  }

  if (f.commutative()) {
    for (int V = 0; V < n; ++V)
      for (int W = V + 1; W < n; ++W)
        if (f.product(V, W) != f.product(W, V))
          c.fail("commutativity", "fails for " + idx({V, W}));
  }
  return report;
}

ValidationReport validate(BranchingData const &b)
{
  ValidationReport report;
  Collector c(report);
  std::size_t n = b.big.size(), m = b.small.size();

  if (b.matrix.size() != n) {
    c.fail("shape", "branching matrix has " + std::to_string(b.matrix.size()) + " rows");
    return report;
  }
  for (auto const &row : b.matrix) {
    if (row.size() != m) {
      c.fail("shape", "branching row has wrong length");
      return report;
    }
    for (Count x : row)
      if (x < 0)
        c.fail("nonnegativity", "negative branching multiplicity");
  }

  for (std::size_t V = 0; V < n; ++V) {
    Count total = 0;
    for (std::size_t W = 0; W < m; ++W)
      total += b.matrix[V][W] * b.small.dims()[W];
    if (total != b.big.dims()[V])
      c.fail("restriction dimension", "row " + std::to_string(V) + " restricts to dimension "
                                        + std::to_string(total));
  }

  if (b.matrix[static_cast<std::size_t>(b.big.unit())] != b.small.basis(b.small.unit()))
    c.fail("restriction unit", "unit does not restrict to the unit");

  for (std::size_t V = 0; V < n; ++V) {
    for (std::size_t W = 0; W < n; ++W) {
      auto lhs = restrict(b, b.big.product(static_cast<int>(V), static_cast<int>(W)));
      auto rhs = b.small.multiply(b.matrix[V], b.matrix[W]);
      if (lhs != rhs)
        c.fail("ring map", "restriction of " + idx({static_cast<int>(V), static_cast<int>(W)})
                             + " product disagrees");
    }
  }
  return report;
}

namespace {

using nlohmann::json;

[[noreturn]] void field_error(std::string const &field, std::string const &what)
{
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

json const &require(json const &obj, std::string const &key, std::string const &path)
{
  auto it = obj.find(key);
  if (it == obj.end())
    field_error(path + key, "missing");
  return *it;
}

std::int64_t as_int(json const &v, std::string const &field)
{
  if (!v.is_number_integer())
    field_error(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::vector<std::int64_t> as_int_list(json const &v, std::string const &field)
{
  if (!v.is_array())
    field_error(field, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_int(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

int as_index(json const &v, std::string const &field, std::size_t n)
{
  auto x = as_int(v, field);
  if (x < 0 || static_cast<std::size_t>(x) >= n)
    field_error(field, "index " + std::to_string(x) + " out of range");
  return static_cast<int>(x);
}

FusionData parse_ring(json const &obj, std::string const &path)
{
  if (!obj.is_object())
    field_error(path, "expected an object");

  auto const &jl = require(obj, "labels", path);
  if (!jl.is_array())
    field_error(path + "labels", "expected an array of strings");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < jl.size(); ++i) {
    if (!jl[i].is_string())
      field_error(path + "labels[" + std::to_string(i) + "]", "expected a string");
    labels.push_back(jl[i].get<std::string>());
  }
  std::size_t n = labels.size();
  if (n == 0)
    field_error(path + "labels", "empty");

  auto dims = as_int_list(require(obj, "dims", path), path + "dims");
  if (dims.size() != n)
    field_error(path + "dims", "expected " + std::to_string(n) + " entries");

  int unit = as_index(require(obj, "unit", path), path + "unit", n);

  auto const &jd = require(obj, "dual", path);
  if (!jd.is_array() || jd.size() != n)
    field_error(path + "dual", "expected " + std::to_string(n) + " indices");
  std::vector<int> dual;
  for (std::size_t i = 0; i < n; ++i)
    dual.push_back(as_index(jd[i], path + "dual[" + std::to_string(i) + "]", n));

  std::vector<MultVec> tensor(n * n);
  std::vector<bool> given(n * n, false);
  auto const &jt = require(obj, "tensor", path);
  if (!jt.is_array())
    field_error(path + "tensor", "expected an array");
  for (std::size_t i = 0; i < jt.size(); ++i) {
    std::string at = path + "tensor[" + std::to_string(i) + "]";
    if (!jt[i].is_object())
      field_error(at, "expected an object");
    int v = as_index(require(jt[i], "v", at + "."), at + ".v", n);
    int w = as_index(require(jt[i], "w", at + "."), at + ".w", n);
    auto out = as_int_list(require(jt[i], "out", at + "."), at + ".out");
    if (out.size() != n)
      field_error(at + ".out", "expected " + std::to_string(n) + " entries");
    std::size_t key = static_cast<std::size_t>(v) * n + static_cast<std::size_t>(w);
    if (given[key])
      field_error(at, "duplicate entry for pair (" + std::to_string(v) + "," + std::to_string(w) + ")");
    given[key] = true;
    tensor[key] = std::move(out);
  }

  // omitted pairs: forced by the unit law, zero otherwise
  for (std::size_t V = 0; V < n; ++V) {
    for (std::size_t W = 0; W < n; ++W) {
      std::size_t key = V * n + W;
      if (given[key])
        continue;
      tensor[key].assign(n, 0);
      if (static_cast<int>(V) == unit)
        tensor[key][W] = 1;
      else if (static_cast<int>(W) == unit)
        tensor[key][V] = 1;
    }
  }

  return FusionData(std::move(labels), std::move(dims), unit, std::move(dual), std::move(tensor));
}

std::size_t line_of(std::string const &text, std::size_t byte)
{
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

void require_valid(ValidationReport const &report, std::string const &what)
{
  if (!report.ok())
    throw Error(ErrorKind::ValidationError, what + ": " + report.summary());
}

} // namespace

FusionFile parse_fusion_json(std::string const &text, bool allow_noncommutative)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (json::parse_error const &err) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_of(text, err.byte)) + ": " + err.what());
  }

  FusionFile file;
  file.fusion = parse_ring(doc, "");

  if (auto it = doc.find("branching"); it != doc.end()) {
    if (!it->is_object())
      field_error("branching", "expected an object");
    auto small = parse_ring(require(*it, "small", "branching."), "branching.small.");
    auto const &jm = require(*it, "matrix", "branching.");
    if (!jm.is_array() || jm.size() != file.fusion.size())
      field_error("branching.matrix", "expected " + std::to_string(file.fusion.size()) + " rows");
    std::vector<MultVec> matrix;
    for (std::size_t i = 0; i < jm.size(); ++i) {
      std::string at = "branching.matrix[" + std::to_string(i) + "]";
      auto row = as_int_list(jm[i], at);
      if (row.size() != small.size())
        field_error(at, "expected " + std::to_string(small.size()) + " entries");
      matrix.push_back(std::move(row));
    }
    file.branching = BranchingData{file.fusion, std::move(small), std::move(matrix)};
  }

  if (auto it = doc.find("expected_chain_group"); it != doc.end())
    file.expected_chain_group = as_int_list(*it, "expected_chain_group");

  if (auto it = doc.find("comment"); it != doc.end()) {
    if (!it->is_string())
      field_error("comment", "expected a string");
    file.comment = it->get<std::string>();
  }

  require_valid(validate(file.fusion), "fusion ring");
  if (file.branching) {
    require_valid(validate(file.branching->small), "branching.small");
    require_valid(validate(*file.branching), "branching");
  }

  if (!file.fusion.commutative() && !allow_noncommutative)
    throw Error(ErrorKind::NonCommutativeFusion,
                "fusion ring is not commutative (pass --allow-noncommutative)");
  return file;
}

FusionFile load_fusion_file(std::filesystem::path const &path, bool allow_noncommutative)
{
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fusion_json(buf.str(), allow_noncommutative);
}

} // namespace chaincore
