#include "bodycad/rigidity.hpp"

#include "bodycad/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bodycad
{

RigidityMatrix assemble(int bodyCount, const std::vector<PrimitiveRow>& rows)
{
  RigidityMatrix m;
  m.bodyCount = bodyCount;
  m.entries = MatrixQ::Zero(static_cast<Eigen::Index>(rows.size()), 6 * bodyCount);
  m.meta.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
  {
    const PrimitiveRow& row = rows[r];
    const auto at = [&](BodyId b) { return 6 * static_cast<Eigen::Index>(b - 1); };
    const auto index = static_cast<Eigen::Index>(r);
    m.entries.block<1, 6>(index, at(row.bodyI)) = row.coeffI.transpose();
    m.entries.block<1, 6>(index, at(row.bodyJ)) = row.coeffJ().transpose();
    m.meta.push_back({row.constraint, row.ordinal, row.cls, row.bodyI, row.bodyJ});
  }
  return m;
}

RigidityMatrix assemble(const Framework& fw)
{
  std::vector<PrimitiveRow> rows;
  const int n = fw.body_count();
  for (std::size_t k = 0; k < fw.constraints.size(); ++k)
  {
    const CadConstraint& c = fw.constraints[k];
    if (c.i < 1 || c.i > n || c.j < 1 || c.j > n || c.i == c.j)
      throw AssemblyError(k, "invalid body pair (" + std::to_string(c.i) + ", " +
                               std::to_string(c.j) + ")");
    try
    {
      auto compiled = compile(c, k);
      rows.insert(rows.end(), compiled.begin(), compiled.end());
    }
    catch (const Error& e)
    {
      throw AssemblyError(k, e.what());
    }
  }
  return assemble(n, rows);
}

// Linear algebra -----------------------------------------------------------------------

namespace
{

using IntegerRow = std::vector<Integer>;

void remove_content(IntegerRow& row)
{
  Integer g = 0;
  for (const auto& x : row)
    if (x != 0)
      g = gcd(g, x);
  if (g > 1)
    for (auto& x : row)
      x /= g;
}

IntegerRow to_integer_row(const MatrixQ& m, Eigen::Index r)
{
  Integer scale = 1;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    scale = lcm(scale, Integer(denominator(m(r, c))));
  IntegerRow out(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    out[c] = Integer(numerator(m(r, c))) * (scale / Integer(denominator(m(r, c))));
  remove_content(out);
  return out;
}

}  // namespace

int rank(const MatrixQ& m)
{
  std::vector<IntegerRow> rows;
  rows.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    rows.push_back(to_integer_row(m, r));

  std::size_t pivots = 0;
  const auto cols = static_cast<std::size_t>(m.cols());
  for (std::size_t c = 0; c < cols && pivots < rows.size(); ++c)
  {
    std::size_t p = pivots;
    while (p < rows.size() && rows[p][c] == 0)
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[pivots], rows[p]);
    const IntegerRow& pivot = rows[pivots];
    for (std::size_t q = pivots + 1; q < rows.size(); ++q)
    {
      if (rows[q][c] == 0)
        continue;
      const Integer g = gcd(pivot[c], rows[q][c]);
      const Integer a = pivot[c] / g;
      const Integer b = rows[q][c] / g;
      for (std::size_t k = c; k < cols; ++k)
        rows[q][k] = a * rows[q][k] - b * pivot[k];
      remove_content(rows[q]);
    }
    ++pivots;
  }
  return static_cast<int>(pivots);
}

int rank(const Eigen::MatrixXd& m, double tolerance)
{
  if (m.rows() == 0 || m.cols() == 0)
    return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tolerance);
  return static_cast<int>(lu.rank());
}

MatrixQ nullspace(const MatrixQ& m)
{
  MatrixQ a = m;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  std::vector<Eigen::Index> pivotCols;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c)
  {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == 0)
      ++p;
    if (p == rows)
      continue;
    a.row(r).swap(a.row(p));
    const Rational inv = 1 / a(r, c);
    a.row(r) *= inv;
    for (Eigen::Index q = 0; q < rows; ++q)
      if (q != r && a(q, c) != 0)
      {
        const Rational f = a(q, c);
        a.row(q) -= f * a.row(r);
      }
    pivotCols.push_back(c);
    ++r;
  }

  std::vector<bool> isPivot(static_cast<std::size_t>(cols), false);
  for (auto c : pivotCols)
    isPivot[c] = true;

  MatrixQ basis = MatrixQ::Zero(cols, cols - static_cast<Eigen::Index>(pivotCols.size()));
  Eigen::Index out = 0;
  for (Eigen::Index f = 0; f < cols; ++f)
  {
    if (isPivot[f])
      continue;
    basis(f, out) = 1;
    for (std::size_t k = 0; k < pivotCols.size(); ++k)
      basis(pivotCols[k], out) = -a(static_cast<Eigen::Index>(k), f);
    ++out;
  }
  return basis;
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double tolerance)
{
  if (m.rows() == 0)
    return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tolerance);
  if (lu.rank() == m.cols())
    return Eigen::MatrixXd(m.cols(), 0);
  return lu.kernel();
}

// Analysis ------------------------------------------------------------------------------

namespace
{

template <typename Scalar>
MatrixX<Scalar> select_rows(const MatrixX<Scalar>& m, const std::vector<Eigen::Index>& rows)
{
  MatrixX<Scalar> out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k)
    out.row(static_cast<Eigen::Index>(k)) = m.row(rows[k]);
  return out;
}

std::vector<std::vector<BodyId>> components_of(const RigidityMatrix& m)
{
  std::vector<int> parent(static_cast<std::size_t>(m.bodyCount));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& meta : m.meta)
  {
    const int a = find(meta.bodyI - 1);
    const int b = find(meta.bodyJ - 1);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, std::vector<BodyId>> groups;
  for (int b = 0; b < m.bodyCount; ++b)
    groups[find(b)].push_back(b + 1);
  std::vector<std::vector<BodyId>> out;
  for (auto& [root, bodies] : groups)
    out.push_back(std::move(bodies));
  return out;
}

template <typename Scalar, typename RankFn, typename NullFn>
void analyze_impl(const RigidityMatrix& m, const MatrixX<Scalar>& entries, RankFn rankOf,
                  NullFn kernelOf, double tolerance, RigidityReport& report)
{
  const int n = m.bodyCount;
  const auto rowCount = static_cast<Eigen::Index>(entries.rows());
  report.bodyCount = n;
  report.rowCount = static_cast<int>(rowCount);
  report.rank = rankOf(entries);
  report.dof = 6 * n - 6 - report.rank;
  report.isRigid = report.dof == 0;
  report.isMinimallyRigid = report.isRigid && report.rank == report.rowCount;
  report.isOverconstrained = report.rowCount > report.rank;

  // Greedy removal: first whole constraints, then single rows.
  std::vector<Eigen::Index> kept(static_cast<std::size_t>(rowCount));
  std::iota(kept.begin(), kept.end(), Eigen::Index{0});
  if (report.isOverconstrained)
  {
    const auto without = [&](const auto& drop) {
      std::vector<Eigen::Index> out;
      std::copy_if(kept.begin(), kept.end(), std::back_inserter(out), drop);
      return out;
    };
    std::vector<std::size_t> sources;
    for (const auto& meta : m.meta)
      if (sources.empty() || sources.back() != meta.constraint)
        sources.push_back(meta.constraint);
    for (const std::size_t source : sources)
    {
      auto candidate = without([&](Eigen::Index r) { return m.meta[r].constraint != source; });
      if (candidate.size() != kept.size() &&
          rankOf(select_rows(entries, candidate)) == report.rank)
        kept = std::move(candidate);
    }
    for (std::size_t k = 0; k < kept.size();)
    {
      const Eigen::Index row = kept[k];
      auto candidate = without([&](Eigen::Index r) { return r != row; });
      if (rankOf(select_rows(entries, candidate)) == report.rank)
        kept = std::move(candidate);
      else
        ++k;
    }
    for (Eigen::Index r = 0; r < rowCount; ++r)
      if (!std::binary_search(kept.begin(), kept.end(), r))
        report.redundantRows.push_back(static_cast<std::size_t>(r));
  }

  // Flex basis: kernel with body 1 pinned, which removes exactly the trivial motions.
  MatrixX<Scalar> pinned = MatrixX<Scalar>::Zero(rowCount + 6, entries.cols());
  pinned.topRows(rowCount) = entries;
  for (int k = 0; k < 6; ++k)
    pinned(rowCount + k, k) = Scalar(1);
  const MatrixX<Scalar> kernel = kernelOf(pinned);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c)
  {
    if constexpr (is_exact_v<Scalar>)
      report.flexBasis.push_back(kernel.col(c));
    else
      report.flexBasisFloat.push_back(kernel.col(c));
  }

  for (auto& bodies : components_of(m))
  {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index r = 0; r < rowCount; ++r)
      if (std::binary_search(bodies.begin(), bodies.end(), m.meta[r].bodyI))
        rows.push_back(r);
    const int componentRank = rankOf(select_rows(entries, rows));
    const int dof = 6 * static_cast<int>(bodies.size()) - 6 - componentRank;
    report.components.push_back({std::move(bodies), dof});
  }

  const MatrixX<Scalar> image = entries * trivial_basis<Scalar>(n);
  report.trivialKernelCheck = is_zero_vector(image.reshaped(), tolerance);
}

}  // namespace

RigidityReport analyze(const RigidityMatrix& m, const AnalyzeOptions& options)
{
  if (m.bodyCount < 1)
    throw Error("analysis needs at least one body");
  RigidityReport report;
  report.mode = options.mode;
  if (options.mode == ArithmeticMode::Rational)
  {
    analyze_impl<Rational>(
      m, m.entries, [](const MatrixQ& a) { return rank(a); },
      [](const MatrixQ& a) { return nullspace(a); }, 0.0, report);
  }
  else
  {
    const double tol = options.tolerance;
    const Eigen::MatrixXd entries = m.entries.unaryExpr([](const Rational& x) { return to_double(x); });
    analyze_impl<double>(
      m, entries, [tol](const Eigen::MatrixXd& a) { return rank(a, tol); },
      [tol](const Eigen::MatrixXd& a) { return nullspace(a, tol); }, tol, report);
  }
  return report;
}

RigidityReport analyze(const Framework& fw, const AnalyzeOptions& options)
{
  return analyze(assemble(fw), options);
}

// Perturbation audit ---------------------------------------------------------------------

namespace
{

Rational small_rational(std::mt19937_64& rng)
{
  std::uniform_int_distribution<int> num(-8, 8);
  return Rational(num(rng), 64);
}

struct RigidMotion
{
  Eigen::Matrix<Rational, 3, 3> rotation;
  Vec3 translation;

  Vec3 point(const Vec3& p) const { return rotation * p + translation; }
  Vec3 vector(const Vec3& d) const { return rotation * d; }
};

/// Cayley transform (I - K)^-1 (I + K) of a random small skew matrix K: a rational rotation.
RigidMotion random_motion(std::mt19937_64& rng)
{
  const Rational a = small_rational(rng);
  const Rational b = small_rational(rng);
  const Rational c = small_rational(rng);
  Eigen::Matrix<Rational, 3, 3> k;
  k << 0, -c, b, c, 0, -a, -b, a, 0;
  const Eigen::Matrix<Rational, 3, 3> id = Eigen::Matrix<Rational, 3, 3>::Identity();
  const Eigen::Matrix<Rational, 3, 3> rotation = (id - k).inverse() * (id + k);
  return {rotation, Vec3(small_rational(rng), small_rational(rng), small_rational(rng))};
}

}  // namespace

Framework perturb(const Framework& fw, std::mt19937_64& rng)
{
  Framework out = fw;
  for (auto& c : out.constraints)
  {
    const RigidMotion g = random_motion(rng);
    c.pointI = g.point(c.pointI);
    c.pointJ = g.point(c.pointJ);
    c.directionI = g.vector(c.directionI);
    c.directionJ = g.vector(c.directionJ);
  }
  return out;
}

PerturbationAudit perturbation_audit(const Framework& fw, int trials, std::uint64_t seed,
                                     const AnalyzeOptions& options)
{
  const auto rankOf = [&](const Framework& f) {
    const RigidityMatrix m = assemble(f);
    if (options.mode == ArithmeticMode::Rational)
      return rank(m.entries);
    return rank(Eigen::MatrixXd(m.entries.unaryExpr([](const Rational& x) { return to_double(x); })),
                options.tolerance);
  };

  PerturbationAudit audit;
  audit.baseRank = rankOf(fw);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t)
  {
    const int r = rankOf(perturb(fw, rng));
    audit.trialRanks.push_back(r);
    audit.rankChanged = audit.rankChanged || r != audit.baseRank;
  }
  return audit;
}

}  // namespace bodycad
