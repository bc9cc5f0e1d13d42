#include "bodycad/sparsity.hpp"

#include <algorithm>
#include <deque>

namespace bodycad
{

namespace
{

std::vector<std::size_t> members(const std::vector<bool>& in)
{
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < in.size(); ++e)
    if (in[e])
      out.push_back(e);
  return out;
}

std::vector<std::size_t> exchange(std::vector<std::size_t> set, std::size_t drop, std::size_t add)
{
  set.erase(std::find(set.begin(), set.end(), drop));
  set.insert(std::lower_bound(set.begin(), set.end(), add), add);
  return set;
}

std::vector<std::size_t> with(std::vector<std::size_t> set, std::size_t add)
{
  set.insert(std::lower_bound(set.begin(), set.end(), add), add);
  return set;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

std::vector<std::size_t> matroid_intersect(std::size_t groundSize, const IndependenceOracle& m1,
                                           const IndependenceOracle& m2)
{
  std::vector<bool> in(groundSize, false);
  for (;;)
  {
    const std::vector<std::size_t> current = members(in);
    std::vector<bool> source(groundSize, false);
    std::vector<bool> sink(groundSize, false);
    for (std::size_t x = 0; x < groundSize; ++x)
      if (!in[x])
      {
        const auto grown = with(current, x);
        source[x] = m1(grown);
        sink[x] = m2(grown);
      }

    // Arcs y -> x when I - y + x is independent in M1, x -> y when in M2 (y in I, x not).
    const auto successors = [&](std::size_t node) {
      std::vector<std::size_t> next;
      for (std::size_t other = 0; other < groundSize; ++other)
      {
        if (in[other] == in[node])
          continue;
        if (in[node] ? m1(exchange(current, node, other)) : m2(exchange(current, other, node)))
          next.push_back(other);
      }
      return next;
    };

    std::vector<std::size_t> parent(groundSize, kNone);
    std::vector<bool> seen(groundSize, false);
    std::deque<std::size_t> queue;
    for (std::size_t x = 0; x < groundSize; ++x)
      if (source[x])
      {
        seen[x] = true;
        queue.push_back(x);
      }
    std::size_t end = kNone;
    while (!queue.empty())
    {
      const std::size_t node = queue.front();
      queue.pop_front();
      if (!in[node] && sink[node])
      {
        end = node;
        break;
      }
      for (const std::size_t next : successors(node))
        if (!seen[next])
        {
          seen[next] = true;
          parent[next] = node;
          queue.push_back(next);
        }
    }
    if (end == kNone)
      return current;
    for (std::size_t node = end; node != kNone; node = parent[node])
      in[node] = !in[node];
  }
}

namespace
{

IndependenceOracle outer_oracle(const MultiGraph& g, SparsityCounts counts)
{
  return [&g, counts](const std::vector<std::size_t>& set) {
    return is_sparse(g.subgraph(set), counts);
  };
}

IndependenceOracle inner_oracle(const MultiGraph& g, SparsityCounts counts)
{
  return [&g, counts](const std::vector<std::size_t>& set) {
    std::vector<std::size_t> red;
    std::copy_if(set.begin(), set.end(), std::back_inserter(red),
                 [&](std::size_t e) { return g.edge(e).color == EdgeColor::Red; });
    return is_sparse(g.subgraph(red), counts);
  };
}

std::vector<std::size_t> all_edges(const MultiGraph& g)
{
  std::vector<std::size_t> out(g.edge_count());
  for (std::size_t e = 0; e < out.size(); ++e)
    out[e] = e;
  return out;
}

}  // namespace

bool is_nested_sparse(const MultiGraph& g, const NestedCounts& counts)
{
  const auto everything = all_edges(g);
  return outer_oracle(g, counts.outer)(everything) && inner_oracle(g, counts.inner)(everything);
}

bool is_nested_tight(const MultiGraph& g, const NestedCounts& counts)
{
  const long target = static_cast<long>(counts.outer.k) * g.vertex_count() - counts.outer.l;
  return static_cast<long>(g.edge_count()) == target && is_nested_sparse(g, counts);
}

NestedResult nested(const MultiGraph& g, const NestedCounts& counts, NestedMode mode)
{
  NestedResult result;
  result.independent =
    matroid_intersect(g.edge_count(), outer_oracle(g, counts.outer), inner_oracle(g, counts.inner));
  result.decision = result.independent.size() == g.edge_count();
  const long target = static_cast<long>(counts.outer.k) * g.vertex_count() - counts.outer.l;
  result.tight = result.decision && static_cast<long>(g.edge_count()) == target;
  if (mode == NestedMode::Components)
    result.components = pebble_components(g.subgraph(result.independent), counts.outer);
  return result;
}

}  // namespace bodycad
