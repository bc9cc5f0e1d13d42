#include "bodycad/errors.hpp"
#include "bodycad/sparsity.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

namespace bodycad
{

MultiGraph::MultiGraph(int vertexCount) : vertexCount_(vertexCount)
{
  if (vertexCount < 0)
    throw Error("negative vertex count");
}

std::size_t MultiGraph::add_edge(int u, int v, EdgeColor color)
{
  if (u == v)
    throw Error("loop at vertex " + std::to_string(u));
  if (u < 0 || v < 0 || u >= vertexCount_ || v >= vertexCount_)
    throw Error("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                ") references an unknown vertex");
  edges_.push_back({u, v, color});
  return edges_.size() - 1;
}

MultiGraph MultiGraph::subgraph(const std::vector<std::size_t>& edgeIndices) const
{
  MultiGraph out(vertexCount_);
  for (const auto e : edgeIndices)
    out.edges_.push_back(edges_.at(e));
  return out;
}

MultiGraph to_multigraph(const PrimitiveCadGraph& g)
{
  MultiGraph out(g.vertexCount);
  for (const auto& e : g.edges)
    out.add_edge(e.u - 1, e.v - 1,
                 e.cls == PrimitiveClass::Angular ? EdgeColor::Red : EdgeColor::Black);
  return out;
}

SparsityCounts::SparsityCounts(int k_, int l_) : k(k_), l(l_)
{
  if (k < 1 || l < 0 || l >= 2 * k)
    throw UnsupportedCounts("counts (" + std::to_string(k) + ", " + std::to_string(l) +
                            ") outside the supported range 0 <= l < 2k");
}

NestedCounts::NestedCounts(SparsityCounts outer_, SparsityCounts inner_)
  : outer(outer_), inner(inner_)
{
  if (inner.k > outer.k || 2 * (outer.k - inner.k) < outer.l - inner.l)
    throw UnsupportedCounts("inner counts (" + std::to_string(inner.k) + ", " +
                            std::to_string(inner.l) + ") are not more restrictive than (" +
                            std::to_string(outer.k) + ", " + std::to_string(outer.l) + ")");
}

// Pebble game --------------------------------------------------------------------------

PebbleGame::PebbleGame(int vertexCount, SparsityCounts counts)
  : counts_(counts),
    pebbles_(static_cast<std::size_t>(vertexCount), counts.k),
    out_(static_cast<std::size_t>(vertexCount))
{
}

void PebbleGame::notify() const
{
  if (observer_)
    observer_(*this);
}

bool PebbleGame::fetch_pebble(int root, int other)
{
  // Depth-first search along out-edges for a free pebble outside {root, other}.
  std::vector<std::size_t> via(pebbles_.size(), static_cast<std::size_t>(-1));
  std::vector<bool> seen(pebbles_.size(), false);
  seen[root] = true;
  seen[other] = true;
  std::vector<int> stack{root};
  int found = -1;
  while (!stack.empty() && found < 0)
  {
    const int x = stack.back();
    stack.pop_back();
    for (const std::size_t e : out_[x])
    {
      const int y = heads_[e];
      if (seen[y])
        continue;
      seen[y] = true;
      via[y] = e;
      if (pebbles_[y] > 0)
      {
        found = y;
        break;
      }
      stack.push_back(y);
    }
  }
  if (found < 0)
    return false;

  // Reverse the path root -> found; the pebble travels back to root.
  for (int y = found; y != root;)
  {
    const std::size_t e = via[y];
    const int x = tails_[e];
    auto& list = out_[x];
    list.erase(std::find(list.begin(), list.end(), e));
    out_[y].push_back(e);
    tails_[e] = y;
    heads_[e] = x;
    y = x;
  }
  --pebbles_[found];
  ++pebbles_[root];
  notify();
  return true;
}

void PebbleGame::gather(int u, int v, int target)
{
  while (pebbles_[u] + pebbles_[v] < target)
  {
    if (pebbles_[u] < counts_.k && fetch_pebble(u, v))
      continue;
    if (pebbles_[v] < counts_.k && fetch_pebble(v, u))
      continue;
    break;
  }
}

bool PebbleGame::add_edge(int u, int v)
{
  if (u == v)
    throw Error("loop at vertex " + std::to_string(u));
  gather(u, v, counts_.l + 1);
  if (pebbles_[u] + pebbles_[v] < counts_.l + 1)
    return false;
  const int tail = pebbles_[u] > 0 ? u : v;
  const int head = tail == u ? v : u;
  --pebbles_[tail];
  out_[tail].push_back(tails_.size());
  tails_.push_back(tail);
  heads_.push_back(head);
  notify();
  return true;
}

std::vector<std::vector<int>> PebbleGame::components()
{
  const int n = vertex_count();
  std::set<std::vector<int>> found;
  for (std::size_t e = 0; e < tails_.size(); ++e)
  {
    const int u = tails_[e];
    const int v = heads_[e];
    gather(u, v, counts_.l + 1);
    if (pebbles_[u] + pebbles_[v] != counts_.l)
      continue;

    // Vertices that can reach a free pebble outside {u, v} are not in the component.
    std::vector<std::vector<int>> into(static_cast<std::size_t>(n));
    for (std::size_t f = 0; f < tails_.size(); ++f)
      into[heads_[f]].push_back(tails_[f]);
    std::vector<bool> escapes(static_cast<std::size_t>(n), false);
    std::deque<int> queue;
    for (int w = 0; w < n; ++w)
      if (w != u && w != v && pebbles_[w] > 0)
      {
        escapes[w] = true;
        queue.push_back(w);
      }
    while (!queue.empty())
    {
      const int y = queue.front();
      queue.pop_front();
      for (const int x : into[y])
        if (!escapes[x])
        {
          escapes[x] = true;
          queue.push_back(x);
        }
    }
    std::vector<int> component;
    for (int w = 0; w < n; ++w)
      if (!escapes[w])
        component.push_back(w);
    found.insert(std::move(component));
  }

  std::vector<std::vector<int>> maximal;
  for (const auto& c : found)
  {
    const bool covered = std::any_of(found.begin(), found.end(), [&](const auto& d) {
      return d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end());
    });
    if (!covered)
      maximal.push_back(c);
  }
  return maximal;
}

std::vector<std::size_t> pebble_decision(const MultiGraph& g, SparsityCounts counts)
{
  PebbleGame game(g.vertex_count(), counts);
  std::vector<std::size_t> accepted;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (game.add_edge(g.edge(e).u, g.edge(e).v))
      accepted.push_back(e);
  return accepted;
}

bool is_sparse(const MultiGraph& g, SparsityCounts counts)
{
  PebbleGame game(g.vertex_count(), counts);
  for (const auto& e : g.edges())
    if (!game.add_edge(e.u, e.v))
      return false;
  return true;
}

bool is_tight(const MultiGraph& g, SparsityCounts counts)
{
  const long target = static_cast<long>(counts.k) * g.vertex_count() - counts.l;
  return static_cast<long>(g.edge_count()) == target && is_sparse(g, counts);
}

std::vector<std::vector<int>> pebble_components(const MultiGraph& g, SparsityCounts counts)
{
  PebbleGame game(g.vertex_count(), counts);
  for (const auto& e : g.edges())
    game.add_edge(e.u, e.v);
  return game.components();
}

bool sparse_bruteforce(const MultiGraph& g, SparsityCounts counts)
{
  const int n = g.vertex_count();
  if (n > 12)
    throw OracleTooLarge("brute-force sparsity is limited to 12 vertices, got " +
                         std::to_string(n));
  for (unsigned mask = 1; mask < (1u << n); ++mask)
  {
    const int size = std::popcount(mask);
    if (size < 2)
      continue;
    long spanned = 0;
    for (const auto& e : g.edges())
      if ((mask >> e.u & 1u) && (mask >> e.v & 1u))
        ++spanned;
    if (spanned > static_cast<long>(counts.k) * size - counts.l)
      return false;
  }
  return true;
}

}  // namespace bodycad
