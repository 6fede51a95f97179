#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "restruct/core.hpp"

// Spanning-tree and Steiner-tree restructuring: edge-set deltas, edge and
// Steiner-vertex change costs, and exact desk-scale search over all
// candidate trees. Proximity between trees defaults to the structural
// symmetric-difference cardinality |E* delta E2|; the objective mode
// compares total weights and requires edge weights.

namespace restruct::trees {

using VertexId = ElementId;

// Unordered pair, normalized to u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
};

Edge make_edge(VertexId a, VertexId b);
bool operator==(const Edge& a, const Edge& b);
bool operator<(const Edge& a, const Edge& b);

using EdgeSet = std::vector<Edge>;  // sorted ascending

EdgeSet canonical_edges(EdgeSet edges);

struct Graph {
  std::vector<VertexId> vertices;
  EdgeSet edges;
  std::vector<std::optional<std::int64_t>> edge_weights;  // parallel to edges
  std::vector<CostPair> edge_costs;                        // parallel to edges

  int edge_index(const Edge& e) const;  // -1 when absent
  bool has_weights() const;
};

struct SpanningTree {
  EdgeSet edges;
};

struct EdgeDelta {
  EdgeSet deleted;
  EdgeSet added;
};

// Steiner instance: a graph over terminals plus optional candidate vertices,
// with per-candidate deletion/addition costs w-/w+.
struct SteinerProblem {
  Graph graph;  // spans terminals and every candidate
  std::vector<VertexId> terminals;
  std::vector<VertexId> candidates;
  std::vector<CostPair> vertex_costs;  // parallel to candidates
};

// Tree spanning exactly terminals + steiner_used.
struct SteinerTree {
  std::vector<VertexId> steiner_used;
  EdgeSet edges;
};

struct SteinerDelta {
  EdgeDelta edges;
  std::vector<VertexId> steiner_removed;
  std::vector<VertexId> steiner_added;
};

using TreeReport = RestructureReport<SpanningTree, EdgeDelta>;
using SteinerReport = RestructureReport<SteinerTree, SteinerDelta>;

class DisconnectedGraphError : public std::runtime_error {
 public:
  DisconnectedGraphError();
};

// Structural violations of t as a spanning tree of g (edge membership,
// acyclicity, connectivity, edge count), checked with a standalone
// union-find pass. Empty when valid.
std::vector<std::string> spanning_tree_violations(const Graph& g,
                                                  const SpanningTree& t);
bool is_spanning_tree(const Graph& g, const SpanningTree& t);

std::vector<std::string> steiner_tree_violations(const SteinerProblem& problem,
                                                 const SteinerTree& t);

std::int64_t tree_weight(const Graph& g, const SpanningTree& t);

// Minimum-weight spanning tree by greedy edge selection with cycle
// detection. Requires weights; throws DisconnectedGraphError when no
// spanning tree exists.
SpanningTree mst_base(const Graph& g);

// deleted = t1 \ t_star, added = t_star \ t1.
EdgeDelta tree_delta(const SpanningTree& t1, const SpanningTree& t_star);

// Edge-delta change cost of t1 -> t_star under the graph's edge costs.
std::int64_t edge_change_cost(const Graph& g, const SpanningTree& t1,
                              const SpanningTree& t_star);

std::int64_t proximity_between(const Graph& g, const SpanningTree& a,
                               const SpanningTree& b, ProximityMode mode);

// Visits every spanning tree of g exactly once (recursive include/exclude
// edge branching with connectivity pruning), in deterministic lexicographic
// edge-list order.
void for_each_spanning_tree(const Graph& g,
                            const std::function<void(const EdgeSet&)>& visit);

// Minimizes proximity to t2 over all spanning trees whose edge change cost
// against t1 stays within the budget. Exact = full enumeration (at most 9
// vertices); local = repeated best-improving single edge swaps. Ties prefer
// smaller proximity, then smaller change cost, then the lexicographically
// smaller edge list.
TreeReport restructure_spanning(const Graph& g, const SpanningTree& t1,
                                const SpanningTree& t2, Budget budget,
                                ProximityMode mode = ProximityMode::structural,
                                Method method = Method::exact);

// Combined edge-delta plus Steiner-vertex-delta cost of s1 -> s_star.
std::int64_t steiner_change_cost(const SteinerProblem& problem,
                                 const SteinerTree& s1,
                                 const SteinerTree& s_star);

// Exact search over candidate subsets Z' and, per subset, all spanning
// trees of the subgraph induced by terminals + Z'. At most 6 candidates.
SteinerReport restructure_steiner(const SteinerProblem& problem,
                                  const SteinerTree& s1, const SteinerTree& s2,
                                  Budget budget,
                                  ProximityMode mode = ProximityMode::structural);

}  // namespace restruct::trees
