#include "restruct/trees.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace restruct::trees {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Standalone union-find used by the validators; the enumerator below keeps
// its own component bookkeeping so validation never shares code with the
// search path.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

int vertex_index(const std::vector<VertexId>& vertices, VertexId v) {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return -1;
  return static_cast<int>(it - vertices.begin());
}

void check_graph(const Graph& g) {
  if (!std::is_sorted(g.vertices.begin(), g.vertices.end()) ||
      std::adjacent_find(g.vertices.begin(), g.vertices.end()) !=
          g.vertices.end())
    throw std::invalid_argument("vertex list must be sorted and distinct");
  if (g.edge_costs.size() != g.edges.size())
    throw std::invalid_argument("edge costs must parallel the edge list");
  if (!g.edge_weights.empty() && g.edge_weights.size() != g.edges.size())
    throw std::invalid_argument("edge weights must parallel the edge list");
  Edge previous{-1, -1};
  for (const Edge& e : g.edges) {
    if (e.u >= e.v) throw std::invalid_argument("edges must satisfy u < v");
    if (vertex_index(g.vertices, e.u) < 0 || vertex_index(g.vertices, e.v) < 0)
      throw std::invalid_argument("edge references unknown vertex");
    if (!(previous < e))
      throw std::invalid_argument("edge list must be sorted and distinct");
    previous = e;
  }
  for (const CostPair& cost : g.edge_costs)
    if (cost.h_minus < 0 || cost.h_plus < 0)
      throw std::invalid_argument("edge change costs must be nonnegative");
}

std::string edge_name(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

std::int64_t symmetric_difference_size(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(diff));
  return static_cast<std::int64_t>(diff.size());
}

// Search state shared by the spanning-tree enumerator: edges indexed over
// the graph, vertices mapped to 0..n-1.
struct EnumContext {
  const Graph* graph = nullptr;
  std::vector<int> eu, ev;  // endpoint indices per edge
  std::size_t n = 0;
};

EnumContext make_context(const Graph& g) {
  EnumContext ctx;
  ctx.graph = &g;
  ctx.n = g.vertices.size();
  for (const Edge& e : g.edges) {
    ctx.eu.push_back(vertex_index(g.vertices, e.u));
    ctx.ev.push_back(vertex_index(g.vertices, e.v));
  }
  return ctx;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// True when the components of `parent` can still be joined into one using
// edges from `first` onward.
bool remaining_connects(const EnumContext& ctx, std::vector<int> parent,
                        std::size_t first) {
  std::size_t components = 0;
  for (std::size_t v = 0; v < ctx.n; ++v)
    if (find_root(parent, static_cast<int>(v)) == static_cast<int>(v))
      ++components;
  for (std::size_t i = first; i < ctx.eu.size() && components > 1; ++i) {
    const int a = find_root(parent, ctx.eu[i]);
    const int b = find_root(parent, ctx.ev[i]);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components <= 1;
}

void enumerate(const EnumContext& ctx, std::size_t i,
               const std::vector<int>& parent, std::vector<int>& chosen,
               const std::function<void(const EdgeSet&)>& visit) {
  if (chosen.size() + 1 == ctx.n || ctx.n <= 1) {
    EdgeSet edges;
    for (int idx : chosen) edges.push_back(ctx.graph->edges[idx]);
    visit(edges);
    return;
  }
  if (i == ctx.eu.size()) return;
  if (ctx.eu.size() - i < ctx.n - 1 - chosen.size()) return;
  std::vector<int> scratch = parent;
  const int a = find_root(scratch, ctx.eu[i]);
  const int b = find_root(scratch, ctx.ev[i]);
  if (a != b) {
    std::vector<int> merged = scratch;
    merged[a] = b;
    chosen.push_back(static_cast<int>(i));
    enumerate(ctx, i + 1, merged, chosen, visit);
    chosen.pop_back();
  }
  if (remaining_connects(ctx, scratch, i + 1))
    enumerate(ctx, i + 1, scratch, chosen, visit);
}

struct TreeCandidate {
  std::int64_t rho = kInf;
  std::int64_t cost = kInf;
  EdgeSet edges;
  std::vector<VertexId> steiner;

  bool beats(const TreeCandidate& other) const {
    if (rho != other.rho) return rho < other.rho;
    if (cost != other.cost) return cost < other.cost;
    if (edges != other.edges) return edges < other.edges;
    return steiner < other.steiner;
  }
};

void check_steiner_problem(const SteinerProblem& problem) {
  check_graph(problem.graph);
  for (const auto* ids : {&problem.terminals, &problem.candidates})
    if (!std::is_sorted(ids->begin(), ids->end()) ||
        std::adjacent_find(ids->begin(), ids->end()) != ids->end())
      throw std::invalid_argument(
          "terminals and candidates must be sorted and distinct");
  if (problem.vertex_costs.size() != problem.candidates.size())
    throw std::invalid_argument("vertex costs must parallel the candidates");
  for (const CostPair& cost : problem.vertex_costs)
    if (cost.h_minus < 0 || cost.h_plus < 0)
      throw std::invalid_argument("vertex change costs must be nonnegative");
  IdSet all = problem.terminals;
  all.insert(all.end(), problem.candidates.begin(), problem.candidates.end());
  if (canonical_ids(all) != problem.graph.vertices)
    throw std::invalid_argument(
        "graph vertices must be exactly terminals plus candidates");
}

Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep) {
  Graph sub;
  sub.vertices = keep;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (vertex_index(keep, e.u) < 0 || vertex_index(keep, e.v) < 0) continue;
    sub.edges.push_back(e);
    sub.edge_costs.push_back(g.edge_costs[i]);
    if (!g.edge_weights.empty()) sub.edge_weights.push_back(g.edge_weights[i]);
  }
  return sub;
}

}  // namespace

Edge make_edge(VertexId a, VertexId b) {
  if (a == b) throw std::invalid_argument("self-loops are not allowed");
  return a < b ? Edge{a, b} : Edge{b, a};
}

bool operator==(const Edge& a, const Edge& b) {
  return a.u == b.u && a.v == b.v;
}

bool operator<(const Edge& a, const Edge& b) {
  return a.u != b.u ? a.u < b.u : a.v < b.v;
}

EdgeSet canonical_edges(EdgeSet edges) {
  for (Edge& e : edges) e = make_edge(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

int Graph::edge_index(const Edge& e) const {
  const auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || !(*it == e)) return -1;
  return static_cast<int>(it - edges.begin());
}

bool Graph::has_weights() const {
  if (edge_weights.size() != edges.size()) return false;
  for (const auto& w : edge_weights)
    if (!w.has_value()) return false;
  return true;
}

DisconnectedGraphError::DisconnectedGraphError()
    : std::runtime_error("graph is not connected") {}

std::vector<std::string> spanning_tree_violations(const Graph& g,
                                                  const SpanningTree& t) {
  std::vector<std::string> violations;
  if (t.edges.size() + 1 != g.vertices.size())
    violations.push_back("tree must have exactly " +
                         std::to_string(g.vertices.size()) + " - 1 edges");
  UnionFind uf(g.vertices.size());
  std::size_t joins = 0;
  for (const Edge& e : t.edges) {
    if (g.edge_index(e) < 0) {
      violations.push_back("edge " + edge_name(e) + " is not a graph edge");
      continue;
    }
    const int a = vertex_index(g.vertices, e.u);
    const int b = vertex_index(g.vertices, e.v);
    if (!uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b)))
      violations.push_back("edge " + edge_name(e) + " closes a cycle");
    else
      ++joins;
  }
  if (violations.empty() && joins + 1 != g.vertices.size())
    violations.push_back("tree does not connect all vertices");
  return violations;
}

bool is_spanning_tree(const Graph& g, const SpanningTree& t) {
  return spanning_tree_violations(g, t).empty();
}

std::vector<std::string> steiner_tree_violations(const SteinerProblem& problem,
                                                 const SteinerTree& t) {
  std::vector<std::string> violations;
  IdSet used = canonical_ids(t.steiner_used);
  for (VertexId z : used)
    if (vertex_index(problem.candidates, z) < 0)
      violations.push_back("steiner vertex " + std::to_string(z) +
                           " is not a candidate");
  IdSet spanned = problem.terminals;
  spanned.insert(spanned.end(), used.begin(), used.end());
  spanned = canonical_ids(spanned);
  for (const Edge& e : t.edges) {
    if (problem.graph.edge_index(e) < 0)
      violations.push_back("edge " + edge_name(e) + " is not a graph edge");
    if (vertex_index(spanned, e.u) < 0 || vertex_index(spanned, e.v) < 0)
      violations.push_back("edge " + edge_name(e) +
                           " leaves the spanned vertex set");
  }
  if (!violations.empty()) return violations;
  Graph view;
  view.vertices = spanned;
  view.edges = t.edges;
  view.edge_costs.assign(t.edges.size(), CostPair{});
  SpanningTree as_tree{t.edges};
  // Reuse the spanning check over exactly the spanned set: acyclic,
  // connected, right edge count.
  auto tree_violations = spanning_tree_violations(view, as_tree);
  violations.insert(violations.end(), tree_violations.begin(),
                    tree_violations.end());
  return violations;
}

std::int64_t tree_weight(const Graph& g, const SpanningTree& t) {
  if (!g.has_weights())
    throw std::invalid_argument("graph has no complete edge weights");
  std::int64_t sum = 0;
  for (const Edge& e : t.edges) {
    const int idx = g.edge_index(e);
    if (idx < 0)
      throw std::invalid_argument("edge " + edge_name(e) +
                                  " is not a graph edge");
    sum += *g.edge_weights[static_cast<std::size_t>(idx)];
  }
  return sum;
}

SpanningTree mst_base(const Graph& g) {
  check_graph(g);
  if (!g.has_weights())
    throw std::invalid_argument("minimum spanning tree requires edge weights");
  std::vector<std::size_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return *g.edge_weights[a] < *g.edge_weights[b];
                   });
  UnionFind uf(g.vertices.size());
  SpanningTree tree;
  for (std::size_t idx : order) {
    const Edge& e = g.edges[idx];
    const int a = vertex_index(g.vertices, e.u);
    const int b = vertex_index(g.vertices, e.v);
    if (uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b)))
      tree.edges.push_back(e);
  }
  if (tree.edges.size() + 1 != g.vertices.size() && g.vertices.size() > 1)
    throw DisconnectedGraphError();
  tree.edges = canonical_edges(tree.edges);
  return tree;
}

EdgeDelta tree_delta(const SpanningTree& t1, const SpanningTree& t_star) {
  EdgeDelta delta;
  std::set_difference(t1.edges.begin(), t1.edges.end(), t_star.edges.begin(),
                      t_star.edges.end(), std::back_inserter(delta.deleted));
  std::set_difference(t_star.edges.begin(), t_star.edges.end(),
                      t1.edges.begin(), t1.edges.end(),
                      std::back_inserter(delta.added));
  return delta;
}

std::int64_t edge_change_cost(const Graph& g, const SpanningTree& t1,
                              const SpanningTree& t_star) {
  const EdgeDelta delta = tree_delta(t1, t_star);
  std::int64_t sum = 0;
  for (const Edge& e : delta.deleted) {
    const int idx = g.edge_index(e);
    if (idx < 0)
      throw std::invalid_argument("edge " + edge_name(e) +
                                  " is not a graph edge");
    sum += g.edge_costs[static_cast<std::size_t>(idx)].h_minus;
  }
  for (const Edge& e : delta.added) {
    const int idx = g.edge_index(e);
    if (idx < 0)
      throw std::invalid_argument("edge " + edge_name(e) +
                                  " is not a graph edge");
    sum += g.edge_costs[static_cast<std::size_t>(idx)].h_plus;
  }
  return sum;
}

std::int64_t proximity_between(const Graph& g, const SpanningTree& a,
                               const SpanningTree& b, ProximityMode mode) {
  if (mode == ProximityMode::structural)
    return symmetric_difference_size(a.edges, b.edges);
  return std::abs(tree_weight(g, a) - tree_weight(g, b));
}

void for_each_spanning_tree(const Graph& g,
                            const std::function<void(const EdgeSet&)>& visit) {
  check_graph(g);
  if (g.vertices.empty()) return;
  const EnumContext ctx = make_context(g);
  std::vector<int> parent(ctx.n);
  std::iota(parent.begin(), parent.end(), 0);
  if (!remaining_connects(ctx, parent, 0)) return;  // disconnected graph
  std::vector<int> chosen;
  enumerate(ctx, 0, parent, chosen, visit);
}

TreeReport restructure_spanning(const Graph& g, const SpanningTree& t1,
                                const SpanningTree& t2, Budget budget,
                                ProximityMode mode, Method method) {
  check_graph(g);
  if (budget.h_hat < 0) throw std::invalid_argument("budget must be >= 0");
  if (!is_spanning_tree(g, t1))
    throw std::invalid_argument("t1 is not a spanning tree of the graph");
  if (!is_spanning_tree(g, t2))
    throw std::invalid_argument("t2 is not a spanning tree of the graph");
  if (mode == ProximityMode::objective && !g.has_weights())
    throw std::invalid_argument("objective proximity requires edge weights");

  const SpanningTree start{canonical_edges(t1.edges)};
  const SpanningTree goal{canonical_edges(t2.edges)};
  TreeCandidate best;

  if (method == Method::exact) {
    if (g.vertices.size() > 9)
      throw std::invalid_argument("exact enumeration supports at most 9 vertices");
    for_each_spanning_tree(g, [&](const EdgeSet& edges) {
      const SpanningTree candidate{edges};
      const std::int64_t cost = edge_change_cost(g, start, candidate);
      if (cost > budget.h_hat) return;
      TreeCandidate entry{proximity_between(g, candidate, goal, mode), cost,
                          edges,
                          {}};
      if (entry.beats(best)) best = entry;
    });
  } else {
    // Local edge swap: replace one tree edge by one non-tree edge that
    // reconnects the split, keeping the cumulative change cost against t1
    // within budget and strictly improving proximity.
    SpanningTree current = start;
    best = {proximity_between(g, current, goal, mode), 0, current.edges, {}};
    for (;;) {
      TreeCandidate improvement;
      for (const Edge& out : current.edges) {
        for (const Edge& in : g.edges) {
          if (std::binary_search(current.edges.begin(), current.edges.end(),
                                 in))
            continue;
          EdgeSet next;
          for (const Edge& e : current.edges)
            if (!(e == out)) next.push_back(e);
          next.push_back(in);
          next = canonical_edges(next);
          const SpanningTree swapped{next};
          if (!is_spanning_tree(g, swapped)) continue;
          const std::int64_t cost = edge_change_cost(g, start, swapped);
          if (cost > budget.h_hat) continue;
          const std::int64_t rho = proximity_between(g, swapped, goal, mode);
          if (rho >= best.rho) continue;
          TreeCandidate entry{rho, cost, next, {}};
          if (entry.beats(improvement)) improvement = entry;
        }
      }
      if (improvement.edges.empty()) break;
      best = improvement;
      current.edges = improvement.edges;
    }
  }

  TreeReport report;
  report.method = method == Method::exact ? Method::exact : Method::local;
  report.feasible = true;  // t1 itself costs nothing
  report.s_star = SpanningTree{best.edges};
  report.delta = tree_delta(start, report.s_star);
  report.change_cost = best.cost;
  report.proximity = {best.rho, mode};
  report.objective_stage2 =
      g.has_weights() ? tree_weight(g, report.s_star) : 0;
  return report;
}

std::int64_t steiner_change_cost(const SteinerProblem& problem,
                                 const SteinerTree& s1,
                                 const SteinerTree& s_star) {
  check_steiner_problem(problem);
  for (const SteinerTree* t : {&s1, &s_star}) {
    const auto violations = steiner_tree_violations(problem, *t);
    if (!violations.empty())
      throw std::invalid_argument("invalid steiner tree: " +
                                  violations.front());
  }
  std::int64_t sum = 0;
  const EdgeDelta edges = tree_delta(SpanningTree{canonical_edges(s1.edges)},
                                     SpanningTree{canonical_edges(s_star.edges)});
  for (const Edge& e : edges.deleted)
    sum += problem.graph
               .edge_costs[static_cast<std::size_t>(problem.graph.edge_index(e))]
               .h_minus;
  for (const Edge& e : edges.added)
    sum += problem.graph
               .edge_costs[static_cast<std::size_t>(problem.graph.edge_index(e))]
               .h_plus;
  const DeltaPlan vertices = delta_of(canonical_ids(s1.steiner_used),
                                      canonical_ids(s_star.steiner_used));
  for (VertexId z : vertices.deleted)
    sum += problem
               .vertex_costs[static_cast<std::size_t>(
                   vertex_index(problem.candidates, z))]
               .h_minus;
  for (VertexId z : vertices.added)
    sum += problem
               .vertex_costs[static_cast<std::size_t>(
                   vertex_index(problem.candidates, z))]
               .h_plus;
  return sum;
}

SteinerReport restructure_steiner(const SteinerProblem& problem,
                                  const SteinerTree& s1, const SteinerTree& s2,
                                  Budget budget, ProximityMode mode) {
  check_steiner_problem(problem);
  if (budget.h_hat < 0) throw std::invalid_argument("budget must be >= 0");
  if (problem.candidates.size() > 6)
    throw std::invalid_argument("steiner search supports at most 6 candidates");
  for (const SteinerTree* t : {&s1, &s2}) {
    const auto violations = steiner_tree_violations(problem, *t);
    if (!violations.empty())
      throw std::invalid_argument("invalid steiner tree: " +
                                  violations.front());
  }
  if (mode == ProximityMode::objective && !problem.graph.has_weights())
    throw std::invalid_argument("objective proximity requires edge weights");

  const SteinerTree start{canonical_ids(s1.steiner_used),
                          canonical_edges(s1.edges)};
  const SteinerTree goal{canonical_ids(s2.steiner_used),
                         canonical_edges(s2.edges)};
  TreeCandidate best;
  const std::size_t z = problem.candidates.size();
  for (std::uint32_t mask = 0; mask < (1u << z); ++mask) {
    std::vector<VertexId> used;
    for (std::size_t i = 0; i < z; ++i)
      if (mask & (1u << i)) used.push_back(problem.candidates[i]);
    IdSet spanned = problem.terminals;
    spanned.insert(spanned.end(), used.begin(), used.end());
    const Graph sub = induced_subgraph(problem.graph, canonical_ids(spanned));
    for_each_spanning_tree(sub, [&](const EdgeSet& edges) {
      const SteinerTree candidate{used, edges};
      std::int64_t cost = 0;
      {
        const EdgeDelta edelta =
            tree_delta(SpanningTree{start.edges}, SpanningTree{edges});
        for (const Edge& e : edelta.deleted)
          cost += problem.graph
                      .edge_costs[static_cast<std::size_t>(
                          problem.graph.edge_index(e))]
                      .h_minus;
        for (const Edge& e : edelta.added)
          cost += problem.graph
                      .edge_costs[static_cast<std::size_t>(
                          problem.graph.edge_index(e))]
                      .h_plus;
        const DeltaPlan vdelta = delta_of(start.steiner_used, used);
        for (VertexId zz : vdelta.deleted)
          cost += problem
                      .vertex_costs[static_cast<std::size_t>(
                          vertex_index(problem.candidates, zz))]
                      .h_minus;
        for (VertexId zz : vdelta.added)
          cost += problem
                      .vertex_costs[static_cast<std::size_t>(
                          vertex_index(problem.candidates, zz))]
                      .h_plus;
      }
      if (cost > budget.h_hat) return;
      std::int64_t rho;
      if (mode == ProximityMode::structural) {
        rho = symmetric_difference_size(edges, goal.edges);
      } else {
        rho = std::abs(tree_weight(problem.graph, SpanningTree{edges}) -
                       tree_weight(problem.graph, SpanningTree{goal.edges}));
      }
      TreeCandidate entry{rho, cost, edges, used};
      if (entry.beats(best)) best = entry;
    });
  }

  SteinerReport report;
  report.method = Method::exact;
  report.feasible = true;  // s1 itself costs nothing
  report.s_star = SteinerTree{best.steiner, best.edges};
  report.delta.edges =
      tree_delta(SpanningTree{start.edges}, SpanningTree{best.edges});
  const DeltaPlan vdelta = delta_of(start.steiner_used, best.steiner);
  report.delta.steiner_removed = vdelta.deleted;
  report.delta.steiner_added = vdelta.added;
  report.change_cost = best.cost;
  report.proximity = {best.rho, mode};
  report.objective_stage2 =
      problem.graph.has_weights()
          ? tree_weight(problem.graph, SpanningTree{best.edges})
          : 0;
  return report;
}

}  // namespace restruct::trees
