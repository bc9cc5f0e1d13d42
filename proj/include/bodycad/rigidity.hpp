#pragma once

#include "bodycad/compiler.hpp"
#include "bodycad/model.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace bodycad
{

struct RowMeta
{
  std::size_t constraint = 0;
  int ordinal = 0;
  PrimitiveClass cls{};
  BodyId bodyI = 0;
  BodyId bodyJ = 0;
  friend bool operator==(const RowMeta&, const RowMeta&) = default;
};

/// Rows are primitive constraints; body b (1-based) owns columns 6(b-1) .. 6(b-1)+5,
/// ordered (v-block, -omega-block).
struct RigidityMatrix
{
  int bodyCount = 0;
  MatrixQ entries;
  std::vector<RowMeta> meta;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

/// Throws AssemblyError naming the constraint when a constraint fails to compile.
RigidityMatrix assemble(const Framework& fw);
RigidityMatrix assemble(int bodyCount, const std::vector<PrimitiveRow>& rows);

/// Exact rank by fraction-free elimination over the integers.
int rank(const MatrixQ& m);
/// Floating-point rank; pivots below `tolerance` times the largest pivot count as zero.
int rank(const Eigen::MatrixXd& m, double tolerance);

/// Kernel basis as columns. The exact version reads it off the reduced row echelon form
/// (free variable set to 1), so its output is deterministic.
MatrixQ nullspace(const MatrixQ& m);
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double tolerance);

/// 6n x 6 matrix whose columns are the trivial motions rho1, rho2, rho3, tau1, tau2, tau3
/// in the matrix column layout. rho_k has a 1 in column 3+k of every body, tau_k in
/// column k.
template <typename Scalar>
MatrixX<Scalar> trivial_basis(int n)
{
  MatrixX<Scalar> t = MatrixX<Scalar>::Zero(6 * n, 6);
  for (int b = 0; b < n; ++b)
    for (int k = 0; k < 3; ++k)
    {
      t(6 * b + 3 + k, k) = Scalar(1);
      t(6 * b + k, 3 + k) = Scalar(1);
    }
  return t;
}

enum class ArithmeticMode
{
  Rational,
  Float,
};

struct AnalyzeOptions
{
  ArithmeticMode mode = ArithmeticMode::Rational;
  double tolerance = 1e-9;
};

struct ComponentDof
{
  std::vector<BodyId> bodies;
  int dof = 0;
};

/// All verdicts are infinitesimal, at the given realization.
struct RigidityReport
{
  ArithmeticMode mode = ArithmeticMode::Rational;
  int bodyCount = 0;
  int rowCount = 0;
  int rank = 0;
  int dof = 0;
  bool isRigid = false;
  bool isMinimallyRigid = false;
  bool isOverconstrained = false;
  /// Rows dropped by greedy removal: whole constraints in input order first, then single
  /// rows in row order, each dropped when the rank is unchanged.
  std::vector<std::size_t> redundantRows;
  /// Kernel of the matrix with body 1 pinned. Filled in rational mode.
  std::vector<VectorQ> flexBasis;
  /// Same, in float mode.
  std::vector<Eigen::VectorXd> flexBasisFloat;
  /// Connected components of the cad graph, each with 6|C| - 6 - rank.
  std::vector<ComponentDof> components;
  bool trivialKernelCheck = false;
};

RigidityReport analyze(const Framework& fw, const AnalyzeOptions& options = {});
RigidityReport analyze(const RigidityMatrix& m, const AnalyzeOptions& options = {});

/// Applies an independent small rational rigid motion (Cayley rotation plus translation)
/// to every constraint's payload. Intrinsic relations and distances are preserved.
Framework perturb(const Framework& fw, std::mt19937_64& rng);

struct PerturbationAudit
{
  int baseRank = 0;
  std::vector<int> trialRanks;
  bool rankChanged = false;
};

PerturbationAudit perturbation_audit(const Framework& fw, int trials = 3,
                                     std::uint64_t seed = 20240601,
                                     const AnalyzeOptions& options = {});

}  // namespace bodycad
