#pragma once

// (k,l)-sparsity: pebble games, a brute-force oracle, Edmonds matroid intersection and
// nested sparsity on red/black multigraphs.

#include "bodycad/model.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace bodycad
{

enum class EdgeColor
{
  None,
  Red,
  Black,
};

/// Loop-free multigraph on vertices 0 .. vertexCount-1.
class MultiGraph
{
public:
  struct Edge
  {
    int u = 0;
    int v = 0;
    EdgeColor color = EdgeColor::None;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  MultiGraph() = default;
  explicit MultiGraph(int vertexCount);

  /// Returns the new edge's index. Throws Error on loops or unknown vertices.
  std::size_t add_edge(int u, int v, EdgeColor color = EdgeColor::None);

  int vertex_count() const { return vertexCount_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }

  /// The subgraph on the same vertices keeping the listed edges in the listed order.
  MultiGraph subgraph(const std::vector<std::size_t>& edgeIndices) const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

private:
  int vertexCount_ = 0;
  std::vector<Edge> edges_;
};

/// Red for angular, black for blind; body b becomes vertex b-1.
MultiGraph to_multigraph(const PrimitiveCadGraph& g);

/// Throws UnsupportedCounts unless 0 <= l < 2k.
struct SparsityCounts
{
  int k = 0;
  int l = 0;

  SparsityCounts(int k, int l);
};

/// Throws UnsupportedCounts unless both pairs are in range and (k2,l2) is at least as
/// restrictive as (k1,l1): k2 <= k1 and 2(k1 - k2) >= l1 - l2, so that every edge set
/// allowed on two vertices by the inner counts is allowed by the outer ones.
struct NestedCounts
{
  SparsityCounts outer;
  SparsityCounts inner;

  NestedCounts(SparsityCounts outer, SparsityCounts inner);
};

/// Lee-Streinu (k,l)-pebble game. Every vertex starts with k pebbles; an accepted edge is
/// directed out of a vertex that gave up a pebble, so pebbles(v) + outdegree(v) = k.
class PebbleGame
{
public:
  using MoveObserver = std::function<void(const PebbleGame&)>;

  PebbleGame(int vertexCount, SparsityCounts counts);

  /// Tries to accept edge uv. Returns whether it was accepted.
  bool add_edge(int u, int v);

  int vertex_count() const { return static_cast<int>(pebbles_.size()); }
  int pebbles(int v) const { return pebbles_[v]; }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
  std::size_t accepted_count() const { return tails_.size(); }

  /// Maximal vertex sets spanning tight subgraphs of the accepted edges, each sorted,
  /// listed in lexicographic order. Sets spanning no edge are not reported.
  std::vector<std::vector<int>> components();

  /// Called after every pebble move and every edge insertion.
  void set_observer(MoveObserver observer) { observer_ = std::move(observer); }

private:
  bool fetch_pebble(int root, int other);
  void gather(int u, int v, int target);
  void notify() const;

  SparsityCounts counts_;
  std::vector<int> pebbles_;
  std::vector<std::vector<std::size_t>> out_;  ///< accepted edge ids leaving each vertex
  std::vector<int> tails_;
  std::vector<int> heads_;
  MoveObserver observer_;
};

/// Indices of the edges accepted in input order. All edges are accepted iff g is sparse.
std::vector<std::size_t> pebble_decision(const MultiGraph& g, SparsityCounts counts);
bool is_sparse(const MultiGraph& g, SparsityCounts counts);
bool is_tight(const MultiGraph& g, SparsityCounts counts);

/// Components of the accepted subgraph.
std::vector<std::vector<int>> pebble_components(const MultiGraph& g, SparsityCounts counts);

/// Direct subset enumeration of the definition. Throws OracleTooLarge above 12 vertices.
bool sparse_bruteforce(const MultiGraph& g, SparsityCounts counts);

using IndependenceOracle = std::function<bool(const std::vector<std::size_t>&)>;

/// Edmonds' matroid intersection on ground set 0 .. groundSize-1. Shortest augmenting
/// paths, found by breadth-first search in index order. The oracles receive sorted sets.
/// Results are unspecified if an oracle is not a matroid independence predicate.
std::vector<std::size_t> matroid_intersect(std::size_t groundSize, const IndependenceOracle& m1,
                                           const IndependenceOracle& m2);

bool is_nested_sparse(const MultiGraph& g, const NestedCounts& counts);
bool is_nested_tight(const MultiGraph& g, const NestedCounts& counts);

enum class NestedMode
{
  Decision,
  Extraction,
  Components,
};

struct NestedResult
{
  bool decision = false;                      ///< all edges independent
  bool tight = false;                         ///< decision and (k1,l1)-tight
  std::vector<std::size_t> independent;       ///< maximum nested-sparse edge set, sorted
  std::vector<std::vector<int>> components;   ///< filled in Components mode
};

/// Uncolored edges count as black.
NestedResult nested(const MultiGraph& g, const NestedCounts& counts,
                    NestedMode mode = NestedMode::Decision);

}  // namespace bodycad
