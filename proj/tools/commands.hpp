#pragma once

// Subcommands of the bodycad tool. Each writes its report to `out`, diagnostics to `err`,
// and returns the process exit code.

#include <iosfwd>
#include <string>
#include <vector>

namespace bodycad::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNegative = 3;

struct AnalyzeArgs
{
  std::string path;
  std::string mode = "rational";
  double tolerance = 1e-9;
  bool perturbAudit = false;
};

struct MatrixArgs
{
  std::string path;
  std::string format = "csv";
};

struct SparsityArgs
{
  std::string path;
  std::vector<int> counts{6, 6, 3, 3};
  std::string mode = "decision";
  bool fromFramework = false;
};

struct PebbleArgs
{
  std::string path;
  int k = 2;
  int l = 3;
  std::string mode = "decision";
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int cmd_matrix(const MatrixArgs& args, std::ostream& out, std::ostream& err);
int cmd_sparsity(const SparsityArgs& args, std::ostream& out, std::ostream& err);
int cmd_pebble(const PebbleArgs& args, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bodycad::cli
