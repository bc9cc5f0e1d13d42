#include "bodycad/compiler.hpp"
#include "bodycad/framework_io.hpp"
#include "bodycad/rigidity.hpp"
#include "bodycad/sparsity.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

namespace
{

using namespace bodycad;
using testing::load_fixture;
using testing::Rng;

/// Collects the reason for a failed criterion.
class Check
{
public:
  void expect(bool condition, const std::string& what)
  {
    if (!condition && failures_.size() < 5)
      failures_.push_back(what);
    ok_ = ok_ && condition;
  }
  bool ok() const { return ok_; }
  const std::vector<std::string>& failures() const { return failures_; }

private:
  bool ok_ = true;
  std::vector<std::string> failures_;
};

const NestedCounts kBodyCad{SparsityCounts(6, 6), SparsityCounts(3, 3)};

MultiGraph primitive_multigraph(const Framework& fw)
{
  return to_multigraph(primitive_graph_of(cad_graph_of(fw)));
}

Framework without(Framework fw, std::size_t constraint)
{
  fw.constraints.erase(fw.constraints.begin() + static_cast<std::ptrdiff_t>(constraint));
  return fw;
}

void dice_matrix(Check& check)
{
  const int a[8][6] = {{0, 0, 0, -1, 0, 0}, {0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 1, 0, 0},
                       {0, -1, 0, 0, 0, 0}, {1, 0, 0, 0, -1, 1}, {0, 1, 0, 1, 0, 0}, {0, 0, 1, -1, 0, 0}};
  MatrixQ expected(8, 12);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 6; ++c)
    {
      expected(r, c) = a[r][c];
      expected(r, 6 + c) = -a[r][c];
    }
  const RigidityMatrix m = assemble(load_fixture("dice.json"));
  check.expect(m.rows() == 8 && m.cols() == 12, "matrix is not 8x12");
  if (m.rows() == 8 && m.cols() == 12)
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 12; ++c)
        check.expect(m.entries(r, c) == expected(r, c),
                     "entry (" + std::to_string(r) + "," + std::to_string(c) + ") differs");
}

void dice_verdicts(Check& check)
{
  const Framework dice = load_fixture("dice.json");
  const RigidityMatrix m = assemble(dice);
  const RigidityReport report = analyze(m);
  check.expect(report.rank == 6 && report.dof == 0, "rank/dof not 6/0");
  check.expect(report.isRigid && report.isOverconstrained && !report.isMinimallyRigid, "verdict flags");
  std::vector<std::size_t> third;
  for (std::size_t r = 0; r < m.meta.size(); ++r)
    if (m.meta[r].constraint == 2)
      third.push_back(r);
  check.expect(third.size() == 2 && report.redundantRows == third, "redundant rows are not the rows of the third constraint");

  for (const Framework& reduced : {without(dice, 2), load_fixture("dice_minus_e3.json")})
  {
    const RigidityReport r = analyze(reduced);
    check.expect(r.rowCount == 6 && r.rank == 6 && r.isRigid && r.isMinimallyRigid && r.redundantRows.empty(),
                 "dice without its third constraint is not minimally rigid with 6 rows");
  }
}

void line_coincidence_variant(Check& check)
{
  const RigidityReport one = analyze(load_fixture("dice_one_line_coincidence.json"));
  check.expect(one.dof == 2 && !one.isRigid, "one line coincidence does not leave dof 2");

  const Framework both = load_fixture("dice_two_line_coincidences.json");
  check.expect(both.constraints.size() == 2, "variant does not have two constraints");
  const RigidityReport r = analyze(both);
  check.expect(r.rowCount == 8 && r.rank == 6 && r.isRigid && r.isOverconstrained,
               "two line coincidences are not rigid with 8 rows and rank 6");
  for (std::size_t k = 0; k < both.constraints.size(); ++k)
    check.expect(!analyze(without(both, k)).isRigid, "removing a line coincidence keeps it rigid");
}

void table_conformance(Check& check)
{
  const int angular[21] = {0, 0, 0, 0, 0, 0, 2, 1, 1, 2, 0, 1, 2, 1, 1, 1, 2, 1, 1, 2, 2};
  const int blind[21] = {3, 1, 2, 1, 1, 1, 0, 0, 0, 2, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1};
  Rng rng(401);
  for (std::size_t k = 0; k < all_kinds().size(); ++k)
  {
    const ConstraintKind kind = all_kinds()[k];
    const std::string name(kind_info(kind).name);
    for (int trial = 0; trial < 5; ++trial)
    {
      const auto rows = compile(testing::random_constraint(kind, 1, 2, rng));
      int a = 0;
      int b = 0;
      for (const auto& row : rows)
      {
        if (row.cls == PrimitiveClass::Angular)
        {
          ++a;
          check.expect(row.coeffI.head<3>().isZero(), name + ": angular row has a nonzero v-block");
        }
        else
          ++b;
      }
      check.expect(a == angular[k] && b == blind[k], name + ": row counts differ from the table");
    }
  }
}

void trivial_kernel(Check& check)
{
  Rng rng(402);
  for (int t = 0; t < 60; ++t)
  {
    const int bodies = 2 + t % 3;
    const Framework fw = testing::random_framework(rng, bodies, 2 + t % 5);
    check.expect(validate(fw).empty(), "generated framework is invalid");
    const RigidityMatrix m = assemble(fw);
    const MatrixQ product = m.entries * trivial_basis<Rational>(bodies);
    check.expect(product.isZero(), "trivial motion outside the kernel");
  }
}

void counterexample(Check& check)
{
  const Framework fw = load_fixture("fig12_counterexample.json");
  check.expect(is_nested_tight(primitive_multigraph(fw), kBodyCad), "fig12 graph is not (6,6,3,3)-nested tight");
  const RigidityReport r = analyze(fw);
  check.expect(r.dof == 1 && r.flexBasis.size() == 1, "fig12 dof is not 1");
  if (r.flexBasis.size() == 1)
  {
    const VectorQ& flex = r.flexBasis.front();
    bool rotational = false;
    for (Eigen::Index i = 0; i < flex.size(); ++i)
      rotational = rotational || (i % 6 >= 3 && flex(i) != 0);
    check.expect(!flex.isZero() && !rotational, "fig12 flex is not a pure translation");
  }
}

void pebble_equivalence(Check& check)
{
  const std::pair<int, int> pairs[] = {{1, 1}, {2, 2}, {2, 3}, {3, 3}, {6, 6}};
  Rng rng(403);
  for (int t = 0; t < 1200; ++t)
  {
    const MultiGraph g = testing::random_multigraph(rng, 7, 16, false);
    for (const auto& [k, l] : pairs)
    {
      const bool fast = pebble_decision(g, SparsityCounts(k, l)).size() == g.edge_count();
      check.expect(fast == testing::oracle_sparse(g, k, l),
                   "disagreement at (" + std::to_string(k) + "," + std::to_string(l) + ")");
    }
  }
}

void intersection_optimality(Check& check)
{
  const int tuples[][4] = {{6, 6, 3, 3}, {2, 3, 1, 1}, {2, 2, 1, 1}, {3, 3, 2, 2}, {1, 1, 1, 1}};
  Rng rng(404);
  for (int t = 0; t < 300; ++t)
  {
    const MultiGraph g = testing::random_multigraph(rng, 5, 8, true);
    for (const auto& c : tuples)
    {
      const NestedCounts counts{SparsityCounts(c[0], c[1]), SparsityCounts(c[2], c[3])};
      const auto found = nested(g, counts, NestedMode::Extraction).independent;
      check.expect(testing::oracle_nested_sparse(g, found, c[0], c[1], c[2], c[3]), "extraction is not independent");
      check.expect(found.size() == testing::oracle_max_nested(g, c[0], c[1], c[2], c[3]),
                   "extraction is not maximum");
    }
  }
}

void witness(Check& check)
{
  const MultiGraph g = load_graph(testing::fixture_path("nonmatroidal_witness.json"));
  const auto maximal = testing::oracle_maximal_nested_sets(g, 2, 2, 1, 1);
  std::size_t smallest = g.edge_count() + 1;
  std::size_t largest = 0;
  for (const auto& set : maximal)
  {
    check.expect(testing::oracle_nested_sparse(g, set, 2, 2, 1, 1), "listed set is not nested sparse");
    for (std::size_t e = 0; e < g.edge_count(); ++e)
    {
      if (std::find(set.begin(), set.end(), e) != set.end())
        continue;
      auto grown = set;
      grown.push_back(e);
      std::sort(grown.begin(), grown.end());
      check.expect(!testing::oracle_nested_sparse(g, grown, 2, 2, 1, 1), "listed set is not maximal");
    }
    smallest = std::min(smallest, set.size());
    largest = std::max(largest, set.size());
  }
  check.expect(!maximal.empty() && smallest < largest, "all maximal sets have the same size");
}

void necessity_sweep(Check& check)
{
  int minimal = 0;
  for (const auto& entry : std::filesystem::directory_iterator(testing::fixture_path("")))
  {
    if (entry.path().extension() != ".json")
      continue;
    const std::string text = read_text_file(entry.path().string());
    if (text.find("\"bodies\"") == std::string::npos)
      continue;
    const Framework fw = parse_framework(text);
    if (!analyze(fw).isMinimallyRigid)
      continue;
    ++minimal;
    check.expect(is_nested_tight(primitive_multigraph(fw), kBodyCad),
                 entry.path().filename().string() + " is minimally rigid but not nested tight");
  }
  check.expect(minimal > 0, "no minimally rigid fixture found");
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
    {"dice matrix regression", dice_matrix},
    {"dice verdicts", dice_verdicts},
    {"line-coincidence dice variant", line_coincidence_variant},
    {"constraint table conformance", table_conformance},
    {"trivial motions in the kernel", trivial_kernel},
    {"counterexample separation", counterexample},
    {"pebble game matches brute force", pebble_equivalence},
    {"matroid intersection optimality", intersection_optimality},
    {"non-matroidality witness", witness},
    {"necessity sweep", necessity_sweep},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n)
  {
    Check check;
    try
    {
      criteria[n].second(check);
    }
    catch (const std::exception& e)
    {
      check.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (check.ok() ? "PASS " : "FAIL ") << n + 1 << ". " << criteria[n].first << '\n';
    for (const auto& why : check.failures())
      std::cout << "     " << why << '\n';
    failed += check.ok() ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
