#include "commands.hpp"

#include "bodycad/errors.hpp"
#include "bodycad/framework_io.hpp"
#include "bodycad/rigidity.hpp"
#include "bodycad/sparsity.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace bodycad::cli
{

using Json = nlohmann::ordered_json;

namespace
{

/// Input that cannot be analyzed; reported on stderr with exit code 2.
class InvalidInput : public Error
{
public:
  using Error::Error;
};

Framework load_valid_framework(const std::string& path)
{
  Framework fw = load_framework(path);
  if (fw.bodies.empty())
    throw InvalidInput(path + ": $.bodies: at least one body is required");
  const auto violations = validate(fw);
  if (!violations.empty())
  {
    std::ostringstream message;
    message << path << ": framework does not validate";
    for (const auto& v : violations)
    {
      message << "\n  ";
      if (v.constraint == Violation::kFramework)
        message << "$.bodies: ";
      else
        message << "$.constraints[" << v.constraint << "] ("
                << kind_info(fw.constraints[v.constraint].kind).name << "): ";
      message << v.message;
    }
    throw InvalidInput(message.str());
  }
  return fw;
}

RigidityMatrix assemble_checked(const Framework& fw, const std::string& path)
{
  try
  {
    return assemble(fw);
  }
  catch (const AssemblyError& e)
  {
    throw InvalidInput(path + ": $.constraints[" + std::to_string(e.constraint()) + "]: " +
                       e.what());
  }
}

/// Runs `body`, mapping input errors to exit code 2.
template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
  try
  {
    return body();
  }
  catch (const std::exception& e)
  {
    err << "error: " << e.what() << "\n";
  }
  return kExitInvalid;
}

std::string column_name(int column)
{
  static const char* names[] = {"vx", "vy", "vz", "-wx", "-wy", "-wz"};
  return "b" + std::to_string(column / 6 + 1) + "." + names[column % 6];
}

Json row_source(const RowMeta& meta)
{
  return Json{{"constraint", meta.constraint},
              {"ordinal", meta.ordinal},
              {"class", std::string(to_string(meta.cls))}};
}

std::string plural(int count, const char* word)
{
  return std::to_string(count) + " " + word + (count == 1 ? "" : "s");
}

std::string summary_of(const RigidityReport& r)
{
  std::ostringstream s;
  if (r.isRigid)
  {
    s << (r.isMinimallyRigid ? "minimally rigid" : "rigid");
    s << " (infinitesimal, at the given realization): rank " << r.rank << " = 6n-6 with "
      << plural(r.rowCount, "row");
    if (r.isOverconstrained)
      s << ", overconstrained with " << plural(static_cast<int>(r.redundantRows.size()), "redundant row");
  }
  else
  {
    s << "flexible (infinitesimal, at the given realization): " << plural(r.dof, "degree")
      << " of freedom beyond the trivial motions, rank " << r.rank << " of " << 6 * r.bodyCount - 6
      << " with " << plural(r.rowCount, "row");
    if (r.isOverconstrained)
      s << ", " << plural(static_cast<int>(r.redundantRows.size()), "redundant row");
  }
  return s.str();
}

NestedCounts nested_counts(const std::vector<int>& c)
{
  if (c.size() == 2)
    return NestedCounts(SparsityCounts(c[0], c[1]), SparsityCounts(c[0], c[1]));
  if (c.size() == 4)
    return NestedCounts(SparsityCounts(c[0], c[1]), SparsityCounts(c[2], c[3]));
  throw UnsupportedCounts("--counts takes k,l or k1,l1,k2,l2");
}

const char* color_name(EdgeColor c)
{
  return c == EdgeColor::Red ? "red" : c == EdgeColor::Black ? "black" : "none";
}

}  // namespace

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err)
{
  return guarded(err, [&] {
    AnalyzeOptions options;
    if (args.mode == "float")
      options.mode = ArithmeticMode::Float;
    else if (args.mode != "rational")
      throw InvalidInput("--mode must be rational or float");
    if (!(args.tolerance > 0))
      throw InvalidInput("--tolerance must be positive");
    options.tolerance = args.tolerance;

    const Framework fw = load_valid_framework(args.path);
    const RigidityMatrix m = assemble_checked(fw, args.path);
    const RigidityReport r = analyze(m, options);

    Json doc = Json::object();
    doc["n"] = r.bodyCount;
    doc["rows"] = r.rowCount;
    doc["rank"] = r.rank;
    doc["dof"] = r.dof;
    doc["isRigid"] = r.isRigid;
    doc["isMinimallyRigid"] = r.isMinimallyRigid;
    doc["isOverconstrained"] = r.isOverconstrained;
    doc["redundantRows"] = Json::array();
    for (const auto row : r.redundantRows)
    {
      Json item{{"row", row}};
      item.update(row_source(m.meta[row]));
      doc["redundantRows"].push_back(std::move(item));
    }
    doc["flexBasis"] = Json::array();
    for (const auto& v : r.flexBasis)
    {
      Json column = Json::array();
      for (Eigen::Index k = 0; k < v.size(); ++k)
        column.push_back(rational_to_json(v(k)));
      doc["flexBasis"].push_back(std::move(column));
    }
    for (const auto& v : r.flexBasisFloat)
      doc["flexBasis"].push_back(std::vector<double>(v.data(), v.data() + v.size()));
    doc["components"] = Json::array();
    for (const auto& c : r.components)
      doc["components"].push_back(Json{{"bodies", c.bodies}, {"dof", c.dof}});
    doc["trivialKernelCheck"] = r.trivialKernelCheck ? "pass" : "fail";
    doc["mode"] = args.mode;
    doc["verdicts"] = "infinitesimal";
    if (args.perturbAudit)
    {
      const PerturbationAudit audit = perturbation_audit(fw, 3, 20240601, options);
      doc["perturbationAudit"] = Json{{"baseRank", audit.baseRank},
                                      {"trialRanks", audit.trialRanks},
                                      {"rankChanged", audit.rankChanged}};
    }
    doc["summary"] = summary_of(r);
    out << doc.dump(2) << "\n";
    return r.isRigid ? kExitOk : kExitNegative;
  });
}

int cmd_matrix(const MatrixArgs& args, std::ostream& out, std::ostream& err)
{
  return guarded(err, [&] {
    if (args.format != "csv" && args.format != "json")
      throw InvalidInput("--format must be csv or json");
    const Framework fw = load_valid_framework(args.path);
    const RigidityMatrix m = assemble_checked(fw, args.path);
    const int width = 6 * m.bodyCount;

    if (args.format == "csv")
    {
      out << "row,constraint,ordinal,class";
      for (int c = 0; c < width; ++c)
        out << ',' << column_name(c);
      out << "\n";
      for (Eigen::Index r = 0; r < m.rows(); ++r)
      {
        const RowMeta& meta = m.meta[r];
        out << r << ',' << meta.constraint << ',' << meta.ordinal << ',' << to_string(meta.cls);
        for (Eigen::Index c = 0; c < m.cols(); ++c)
          out << ',' << to_string(m.entries(r, c));
        out << "\n";
      }
      return kExitOk;
    }

    Json doc = Json::object();
    doc["n"] = m.bodyCount;
    doc["columns"] = Json::array();
    for (int c = 0; c < width; ++c)
      doc["columns"].push_back(column_name(c));
    doc["rows"] = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
      Json row = row_source(m.meta[r]);
      row["entries"] = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        row["entries"].push_back(to_string(m.entries(r, c)));
      doc["rows"].push_back(std::move(row));
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_sparsity(const SparsityArgs& args, std::ostream& out, std::ostream& err)
{
  return guarded(err, [&] {
    const NestedCounts counts = nested_counts(args.counts);
    NestedMode mode = NestedMode::Decision;
    if (args.mode == "extract")
      mode = NestedMode::Extraction;
    else if (args.mode == "components")
      mode = NestedMode::Components;
    else if (args.mode != "decision")
      throw InvalidInput("--mode must be decision, extract or components");

    // Framework graphs report body ids, plain graphs their 0-based vertices.
    int base = 0;
    MultiGraph g;
    if (args.fromFramework)
    {
      const Framework fw = load_valid_framework(args.path);
      g = to_multigraph(primitive_graph_of(cad_graph_of(fw)));
      base = 1;
    }
    else
    {
      g = load_graph(args.path);
    }

    const NestedResult result = nested(g, counts, mode);
    std::size_t red = 0;
    for (const auto& e : g.edges())
      red += e.color == EdgeColor::Red ? 1 : 0;

    Json doc = Json::object();
    doc["counts"] = Json::array({counts.outer.k, counts.outer.l, counts.inner.k, counts.inner.l});
    doc["vertexCount"] = g.vertex_count();
    doc["vertexBase"] = base;
    doc["edgeCount"] = g.edge_count();
    doc["redCount"] = red;
    doc["decision"] = result.decision;
    doc["tight"] = result.tight;
    doc["maximumIndependentSize"] = result.independent.size();
    if (mode == NestedMode::Extraction)
    {
      doc["edges"] = Json::array();
      for (const auto e : result.independent)
      {
        const auto& edge = g.edge(e);
        doc["edges"].push_back(Json{{"index", e},
                                    {"u", edge.u + base},
                                    {"v", edge.v + base},
                                    {"color", color_name(edge.color)}});
      }
    }
    if (mode == NestedMode::Components)
    {
      doc["components"] = Json::array();
      for (const auto& c : result.components)
      {
        Json set = Json::array();
        for (const int v : c)
          set.push_back(v + base);
        doc["components"].push_back(std::move(set));
      }
    }
    out << doc.dump(2) << "\n";
    if (mode == NestedMode::Decision)
      return result.decision ? kExitOk : kExitNegative;
    return kExitOk;
  });
}

int cmd_pebble(const PebbleArgs& args, std::ostream& out, std::ostream& err)
{
  return guarded(err, [&] {
    const SparsityCounts counts(args.k, args.l);
    if (args.mode != "decision" && args.mode != "components")
      throw InvalidInput("--mode must be decision or components");
    const MultiGraph g = load_graph(args.path);

    Json doc = Json::object();
    doc["k"] = counts.k;
    doc["l"] = counts.l;
    doc["vertexCount"] = g.vertex_count();
    doc["edgeCount"] = g.edge_count();
    if (args.mode == "decision")
    {
      const auto accepted = pebble_decision(g, counts);
      const bool sparse = accepted.size() == g.edge_count();
      doc["decision"] = sparse;
      doc["tight"] = sparse && is_tight(g, counts);
      doc["acceptedCount"] = accepted.size();
      doc["accepted"] = accepted;
      out << doc.dump(2) << "\n";
      return sparse ? kExitOk : kExitNegative;
    }
    doc["components"] = pebble_components(g, counts);
    out << doc.dump(2) << "\n";
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Rigidity analysis of body-and-cad frameworks"};
  app.require_subcommand(1);

  AnalyzeArgs analyzeArgs;
  auto* analyze = app.add_subcommand("analyze", "Rank, degrees of freedom and redundancy");
  analyze->add_option("file", analyzeArgs.path, "Framework file")->required();
  analyze->add_option("--mode", analyzeArgs.mode, "rational or float")
    ->check(CLI::IsMember({"rational", "float"}));
  analyze->add_option("--tolerance", analyzeArgs.tolerance, "Pivot tolerance in float mode");
  analyze->add_flag("--perturb-audit", analyzeArgs.perturbAudit,
                    "Re-run the rank after small rigid perturbations of every payload");

  MatrixArgs matrixArgs;
  auto* matrix = app.add_subcommand("matrix", "Dump the rigidity matrix");
  matrix->add_option("file", matrixArgs.path, "Framework file")->required();
  matrix->add_option("--format", matrixArgs.format, "csv or json")
    ->check(CLI::IsMember({"csv", "json"}));

  SparsityArgs sparsityArgs;
  auto* sparsity = app.add_subcommand("sparsity", "Nested sparsity of a colored graph");
  sparsity->add_option("file", sparsityArgs.path, "Graph file, or framework file")->required();
  sparsity->add_option("--counts", sparsityArgs.counts, "k,l or k1,l1,k2,l2")->delimiter(',');
  sparsity->add_option("--mode", sparsityArgs.mode, "decision, extract or components")
    ->check(CLI::IsMember({"decision", "extract", "components"}));
  sparsity->add_flag("--from-framework", sparsityArgs.fromFramework,
                     "Use the primitive cad graph of a framework file");

  PebbleArgs pebbleArgs;
  auto* pebble = app.add_subcommand("pebble", "(k,l)-pebble game on a graph file");
  pebble->add_option("file", pebbleArgs.path, "Graph file")->required();
  pebble->add_option("--k", pebbleArgs.k, "k")->required();
  pebble->add_option("--l", pebbleArgs.l, "l")->required();
  pebble->add_option("--mode", pebbleArgs.mode, "decision or components")
    ->check(CLI::IsMember({"decision", "components"}));

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
    {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  if (*analyze)
    return cmd_analyze(analyzeArgs, out, err);
  if (*matrix)
    return cmd_matrix(matrixArgs, out, err);
  if (*sparsity)
    return cmd_sparsity(sparsityArgs, out, err);
  return cmd_pebble(pebbleArgs, out, err);
}

}  // namespace bodycad::cli
