#include "bodycad/rigidity.hpp"
#include "bodycad/sparsity.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace bodycad
{
namespace
{

using testing::load_fixture;
using testing::oracle_rank;
using testing::Rng;

/// The 8x12 dice matrix, body A columns then body B columns.
MatrixQ dice_matrix()
{
  const int a[8][6] = {
    {0, 0, 0, -1, 0, 0}, {0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 1, 0, 0},
    {0, -1, 0, 0, 0, 0}, {1, 0, 0, 0, -1, 1}, {0, 1, 0, 1, 0, 0}, {0, 0, 1, -1, 0, 0},
  };
  const int b[8][6] = {
    {0, 0, 0, 1, 0, 0},  {0, 0, 0, 0, 0, -1}, {0, 0, 0, 0, -1, 0}, {0, 0, 0, -1, 0, 0},
    {0, 1, 0, 0, 0, 0},  {-1, 0, 0, 0, 1, -1}, {0, -1, 0, -1, 0, 0}, {0, 0, -1, 1, 0, 0},
  };
  MatrixQ m(8, 12);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 6; ++c)
    {
      m(r, c) = a[r][c];
      m(r, 6 + c) = b[r][c];
    }
  return m;
}

/// Frameworks from random constraints; the same seed always gives the same corpus.
std::vector<Framework> random_corpus(std::uint64_t seed, int count)
{
  Rng rng(seed);
  std::vector<Framework> out;
  for (int t = 0; t < count; ++t)
  {
    const int bodies = std::uniform_int_distribution<int>(2, 4)(rng);
    const int constraints = std::uniform_int_distribution<int>(1, 3 * bodies)(rng);
    out.push_back(testing::random_framework(rng, bodies, constraints));
  }
  return out;
}

std::vector<Framework> fixture_corpus()
{
  std::vector<Framework> out;
  for (const char* name : {"dice.json", "dice_minus_e3.json", "dice_two_line_coincidences.json",
                           "dice_one_line_coincidence.json", "fig12_counterexample.json", "empty_two_bodies.json"})
    out.push_back(load_fixture(name));
  return out;
}

Framework without_constraint(const Framework& fw, std::size_t drop)
{
  Framework out = fw;
  out.constraints.erase(out.constraints.begin() + static_cast<std::ptrdiff_t>(drop));
  return out;
}

TEST(Assemble, DiceMatrixExact)
{
  const RigidityMatrix m = assemble(load_fixture("dice.json"));
  EXPECT_EQ(m.bodyCount, 2);
  ASSERT_EQ(m.rows(), 8);
  ASSERT_EQ(m.cols(), 12);
  EXPECT_EQ(m.entries, dice_matrix());
  const std::vector<std::size_t> sources{0, 0, 1, 2, 2, 3, 3, 3};
  for (std::size_t r = 0; r < 8; ++r)
    EXPECT_EQ(m.meta[r].constraint, sources[r]);
  EXPECT_EQ(m.meta[4].cls, PrimitiveClass::Blind);
  EXPECT_EQ(m.meta[3].cls, PrimitiveClass::Angular);
}

TEST(Assemble, NoConstraints)
{
  const RigidityMatrix m = assemble(make_framework(3));
  EXPECT_EQ(m.rows(), 0);
  EXPECT_EQ(m.cols(), 18);
  EXPECT_EQ(rank(m.entries), 0);
}

TEST(Assemble, TwoLineCoincidences)
{
  EXPECT_EQ(assemble(load_fixture("dice_two_line_coincidences.json")).rows(), 8);
}

TEST(Assemble, BlocksLandInTheirBodies)
{
  Framework fw = make_framework(3);
  fw.constraints.push_back(point_point_coincidence(3, 2, Vec3(1, 2, 3)));
  const RigidityMatrix m = assemble(fw);
  const auto rows = compile(fw.constraints[0]);
  for (Eigen::Index r = 0; r < 3; ++r)
  {
    EXPECT_TRUE(m.entries.row(r).segment(0, 6).isZero());
    EXPECT_EQ(Vec6(m.entries.row(r).segment(12, 6).transpose()), rows[r].coeffI);
    EXPECT_EQ(Vec6(m.entries.row(r).segment(6, 6).transpose()), rows[r].coeffJ());
  }
}

TEST(Assemble, ErrorsNameTheConstraint)
{
  Framework fw = load_fixture("dice.json");
  fw.constraints.push_back(
    line_line_perpendicular(1, 2, {Vec3::Zero(), Vec3(1, 0, 0)}, {Vec3::Zero(), Vec3(2, 0, 0)}));
  try
  {
    assemble(fw);
    FAIL() << "expected AssemblyError";
  }
  catch (const AssemblyError& e)
  {
    EXPECT_EQ(e.constraint(), 4u);
  }
  Framework bad = make_framework(2);
  bad.constraints.push_back(point_point_coincidence(1, 5, Vec3::Zero()));
  EXPECT_THROW(assemble(bad), AssemblyError);
}

TEST(Rank, Examples)
{
  EXPECT_EQ(rank(dice_matrix()), 6);
  EXPECT_EQ(oracle_rank(dice_matrix()), 6);
  EXPECT_EQ(rank(MatrixQ(0, 12)), 0);
  Framework fw = make_framework(2);
  fw.constraints.push_back(point_point_coincidence(1, 2, Vec3(Rational(1, 2), -3, 7)));
  const RigidityMatrix m = assemble(fw);
  EXPECT_EQ(rank(m.entries), 3);
  EXPECT_EQ(oracle_rank(m.entries), 3);
}

TEST(Rank, AgreesWithOracle)
{
  Rng rng(31);
  for (int t = 0; t < 200; ++t)
  {
    const Eigen::Index rows = std::uniform_int_distribution<int>(0, 8)(rng);
    const Eigen::Index cols = std::uniform_int_distribution<int>(1, 8)(rng);
    MatrixQ m(rows, cols);
    std::bernoulli_distribution sparse(0.4);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        m(r, c) = sparse(rng) ? Rational(0) : testing::random_rational(rng, 5, 6);
    // Duplicate rows and combinations make rank drops common.
    if (rows >= 3)
      m.row(rows - 1) = m.row(0) * Rational(3, 7) - m.row(1);
    EXPECT_EQ(rank(m), oracle_rank(m));
    EXPECT_EQ(rank(Eigen::MatrixXd(m.unaryExpr([](const Rational& x) { return to_double(x); })), 1e-9),
              oracle_rank(m));
  }
  for (const auto& fw : random_corpus(32, 60))
  {
    const MatrixQ m = assemble(fw).entries;
    EXPECT_EQ(rank(m), oracle_rank(m));
  }
}

TEST(Nullspace, KernelOfRandomMatrices)
{
  Rng rng(33);
  for (int t = 0; t < 60; ++t)
  {
    MatrixQ m(4, 7);
    for (Eigen::Index r = 0; r < 4; ++r)
      for (Eigen::Index c = 0; c < 7; ++c)
        m(r, c) = testing::random_rational(rng, 3);
    m.row(3) = m.row(0) + m.row(2);
    const MatrixQ k = nullspace(m);
    EXPECT_EQ(k.cols(), 7 - oracle_rank(m));
    EXPECT_TRUE((m * k).isZero());
    EXPECT_EQ(oracle_rank(k.transpose()), k.cols());
  }
}

TEST(TrivialBasis, StandardVectorsAndCopies)
{
  const MatrixQ one = trivial_basis<Rational>(1);
  // Columns: rho1..3 then tau1..3; together all six unit vectors.
  EXPECT_EQ(oracle_rank(one), 6);
  for (int k = 0; k < 3; ++k)
  {
    EXPECT_EQ(one(3 + k, k), 1);
    EXPECT_EQ(one(k, 3 + k), 1);
  }
  EXPECT_EQ(one.cwiseAbs().sum(), 6);

  const MatrixQ two = trivial_basis<Rational>(2);
  VectorQ tau1 = VectorQ::Zero(12);
  tau1(0) = 1;
  tau1(6) = 1;
  EXPECT_EQ(VectorQ(two.col(3)), tau1);
}

TEST(TrivialBasis, KernelContainmentOnRandomFrameworks)
{
  int checked = 0;
  for (const auto& fw : random_corpus(34, 80))
  {
    ASSERT_TRUE(validate(fw).empty());
    const RigidityMatrix m = assemble(fw);
    EXPECT_TRUE((m.entries * trivial_basis<Rational>(fw.body_count())).isZero());
    EXPECT_TRUE(analyze(m).trivialKernelCheck);
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(Analyze, Dice)
{
  const RigidityReport r = analyze(load_fixture("dice.json"));
  EXPECT_EQ(r.rank, 6);
  EXPECT_EQ(r.rowCount, 8);
  EXPECT_EQ(r.dof, 0);
  EXPECT_TRUE(r.isRigid);
  EXPECT_FALSE(r.isMinimallyRigid);
  EXPECT_TRUE(r.isOverconstrained);
  EXPECT_EQ(r.redundantRows, (std::vector<std::size_t>{3, 4}));
  EXPECT_TRUE(r.flexBasis.empty());
  EXPECT_TRUE(r.trivialKernelCheck);
}

TEST(Analyze, DiceWithoutThirdConstraint)
{
  const Framework fw = without_constraint(load_fixture("dice.json"), 2);
  EXPECT_EQ(fw, load_fixture("dice_minus_e3.json"));
  const RigidityReport r = analyze(fw);
  EXPECT_TRUE(r.isRigid);
  EXPECT_TRUE(r.isMinimallyRigid);
  EXPECT_EQ(r.rowCount, 6);
  EXPECT_EQ(r.rank, 6);
  EXPECT_TRUE(r.redundantRows.empty());
}

TEST(Analyze, LineCoincidences)
{
  const RigidityReport one = analyze(load_fixture("dice_one_line_coincidence.json"));
  EXPECT_EQ(one.dof, 2);
  EXPECT_FALSE(one.isRigid);
  EXPECT_EQ(one.flexBasis.size(), 2u);

  const Framework both = load_fixture("dice_two_line_coincidences.json");
  const RigidityReport r = analyze(both);
  EXPECT_EQ(r.rowCount, 8);
  EXPECT_EQ(r.rank, 6);
  EXPECT_TRUE(r.isRigid);
  EXPECT_TRUE(r.isOverconstrained);
  for (std::size_t c = 0; c < both.constraints.size(); ++c)
    EXPECT_FALSE(analyze(without_constraint(both, c)).isRigid);
}

TEST(Analyze, FigTwelveTranslatesAlongX)
{
  const RigidityReport r = analyze(load_fixture("fig12_counterexample.json"));
  EXPECT_FALSE(r.isRigid);
  EXPECT_EQ(r.dof, 1);
  ASSERT_EQ(r.flexBasis.size(), 1u);
  const VectorQ& flex = r.flexBasis[0];
  ASSERT_EQ(flex.size(), 18);
  // Bodies A and B stay still; C moves by a pure translation along x.
  EXPECT_TRUE(flex.head(12).isZero());
  EXPECT_NE(flex(12), 0);
  EXPECT_TRUE(flex.tail(5).isZero());
}

TEST(Analyze, EmptyTwoBodies)
{
  const RigidityReport r = analyze(load_fixture("empty_two_bodies.json"));
  EXPECT_EQ(r.dof, 6);
  EXPECT_EQ(r.flexBasis.size(), 6u);
  EXPECT_FALSE(r.isOverconstrained);
}

TEST(Analyze, NoBodiesThrows)
{
  EXPECT_THROW(analyze(Framework{}), Error);
}

TEST(Analyze, FlexBasisProperties)
{
  auto corpus = random_corpus(35, 60);
  for (auto& fw : fixture_corpus())
    corpus.push_back(std::move(fw));
  for (const auto& fw : corpus)
  {
    const RigidityMatrix m = assemble(fw);
    const RigidityReport r = analyze(m);
    ASSERT_EQ(static_cast<int>(r.flexBasis.size()), r.dof);
    const int n = fw.body_count();
    MatrixQ all(6 * n, r.dof + 6);
    for (int k = 0; k < r.dof; ++k)
    {
      EXPECT_TRUE((m.entries * r.flexBasis[k]).isZero());
      all.col(k) = r.flexBasis[k];
    }
    all.rightCols(6) = trivial_basis<Rational>(n);
    // Flexes and trivial motions together span the whole kernel.
    EXPECT_EQ(oracle_rank(all), r.dof + 6);
    EXPECT_EQ(6 * n - oracle_rank(m.entries), r.dof + 6);
  }
}

TEST(Analyze, RedundantRowsAndMinimality)
{
  auto corpus = random_corpus(36, 80);
  for (auto& fw : fixture_corpus())
    corpus.push_back(std::move(fw));
  for (const auto& fw : corpus)
  {
    const RigidityMatrix m = assemble(fw);
    const RigidityReport r = analyze(m);
    const int n = fw.body_count();
    EXPECT_EQ(r.rank, oracle_rank(m.entries));
    EXPECT_EQ(r.dof, 6 * n - 6 - r.rank);
    EXPECT_GE(r.dof, 0);
    EXPECT_LE(r.rank, std::min<int>(r.rowCount, 6 * n - 6));

    // Dropping the redundant rows keeps the rank and leaves independent rows.
    std::vector<Eigen::Index> kept;
    for (Eigen::Index row = 0; row < m.rows(); ++row)
      if (std::find(r.redundantRows.begin(), r.redundantRows.end(), static_cast<std::size_t>(row)) ==
          r.redundantRows.end())
        kept.push_back(row);
    MatrixQ reduced(static_cast<Eigen::Index>(kept.size()), m.cols());
    for (std::size_t k = 0; k < kept.size(); ++k)
      reduced.row(static_cast<Eigen::Index>(k)) = m.entries.row(kept[k]);
    EXPECT_EQ(oracle_rank(reduced), r.rank);
    EXPECT_EQ(static_cast<int>(kept.size()), r.rank);
    EXPECT_EQ(r.isOverconstrained, !r.redundantRows.empty());

    // Minimal rigidity is rank = rows = 6n - 6, and then no row can be removed.
    const bool byCounts = r.rank == r.rowCount && r.rowCount == 6 * n - 6;
    EXPECT_EQ(r.isMinimallyRigid, byCounts);
    if (r.isMinimallyRigid)
      for (Eigen::Index drop = 0; drop < m.rows(); ++drop)
      {
        MatrixQ less(m.rows() - 1, m.cols());
        less << m.entries.topRows(drop), m.entries.bottomRows(m.rows() - drop - 1);
        EXPECT_LT(oracle_rank(less), 6 * n - 6);
      }
    EXPECT_EQ(r.isRigid, r.rank == 6 * n - 6);
  }
}

TEST(Analyze, RankIsMonotone)
{
  for (const auto& fw : random_corpus(37, 40))
  {
    Framework growing = make_framework(fw.body_count());
    int last = 0;
    for (const auto& c : fw.constraints)
    {
      growing.constraints.push_back(c);
      const int now = analyze(growing).rank;
      EXPECT_GE(now, last);
      last = now;
    }
  }
}

TEST(Analyze, FloatModeAgrees)
{
  auto corpus = random_corpus(38, 60);
  for (auto& fw : fixture_corpus())
    corpus.push_back(std::move(fw));
  for (const auto& fw : corpus)
  {
    const RigidityReport exact = analyze(fw);
    const RigidityReport approx = analyze(fw, {ArithmeticMode::Float, 1e-9});
    EXPECT_EQ(approx.rank, exact.rank);
    EXPECT_EQ(approx.dof, exact.dof);
    EXPECT_EQ(approx.redundantRows, exact.redundantRows);
    EXPECT_EQ(static_cast<int>(approx.flexBasisFloat.size()), exact.dof);
    EXPECT_TRUE(approx.trivialKernelCheck);
  }
}

TEST(Analyze, Components)
{
  Framework fw = make_framework(4);
  fw.constraints.push_back(point_point_coincidence(1, 2, Vec3::Zero()));
  fw.constraints.push_back(line_line_coincidence(3, 4, {Vec3::Zero(), Vec3(0, 0, 1)}));
  const RigidityReport r = analyze(fw);
  ASSERT_EQ(r.components.size(), 2u);
  EXPECT_EQ(r.components[0].bodies, (std::vector<BodyId>{1, 2}));
  EXPECT_EQ(r.components[0].dof, 3);
  EXPECT_EQ(r.components[1].bodies, (std::vector<BodyId>{3, 4}));
  EXPECT_EQ(r.components[1].dof, 2);
  EXPECT_EQ(r.dof, 24 - 6 - 7);
}

TEST(Perturbation, PreservesValidityAndRank)
{
  Rng rng(39);
  for (const auto& fw : fixture_corpus())
  {
    const Framework moved = perturb(fw, rng);
    EXPECT_TRUE(validate(moved).empty());
    EXPECT_EQ(moved.constraints.size(), fw.constraints.size());
  }
  const PerturbationAudit dice = perturbation_audit(load_fixture("dice.json"));
  EXPECT_EQ(dice.baseRank, 6);
  EXPECT_EQ(dice.trialRanks.size(), 3u);
  EXPECT_FALSE(dice.rankChanged);
  for (const int r : dice.trialRanks)
    EXPECT_EQ(r, 6);
  // Same seed, same trial ranks.
  EXPECT_EQ(perturbation_audit(load_fixture("fig12_counterexample.json")).trialRanks,
            perturbation_audit(load_fixture("fig12_counterexample.json")).trialRanks);
}

TEST(Perturbation, DetectsSpecialPosition)
{
  // Two point-line coincidences whose lines share a direction leave an extra flex that
  // generic placements remove.
  Framework fw = make_framework(2);
  fw.constraints.push_back(line_line_coincidence(1, 2, {Vec3::Zero(), Vec3(0, 0, 1)}));
  fw.constraints.push_back(line_line_coincidence(1, 2, {Vec3(1, 0, 0), Vec3(0, 0, 1)}));
  const PerturbationAudit audit = perturbation_audit(fw);
  EXPECT_EQ(audit.baseRank, 5);
  EXPECT_TRUE(audit.rankChanged);
}

TEST(NecessityBridge, MinimallyRigidImpliesNestedTight)
{
  Rng rng(40);
  int minimal = 0;
  for (int t = 0; t < 3000 && minimal < 25; ++t)
  {
    const int bodies = std::uniform_int_distribution<int>(2, 3)(rng);
    const int constraints = std::uniform_int_distribution<int>(bodies - 1, 4 * (bodies - 1))(rng);
    const Framework fw = testing::random_framework(rng, bodies, constraints);
    if (!analyze(fw).isMinimallyRigid)
      continue;
    ++minimal;
    const MultiGraph g = to_multigraph(primitive_graph_of(cad_graph_of(fw)));
    EXPECT_TRUE(is_nested_tight(g, NestedCounts({6, 6}, {3, 3})));
  }
  EXPECT_GE(minimal, 10);
  for (const auto& fw : fixture_corpus())
    if (analyze(fw).isMinimallyRigid)
      EXPECT_TRUE(is_nested_tight(to_multigraph(primitive_graph_of(cad_graph_of(fw))), NestedCounts({6, 6}, {3, 3})));
}

}  // namespace
}  // namespace bodycad
