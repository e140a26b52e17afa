#include "latfol/graph.hpp"

#include <deque>
#include <sstream>

namespace latfol {

namespace {
const SiteSet kEmpty;
}

const SiteSet& InteractionGraph::neighbors(const Site& s) const {
  auto it = adjacency.find(s);
  return it == adjacency.end() ? kEmpty : it->second;
}

InteractionGraph build_graph(const InteractionSpec& spec,
                             const std::vector<LatticeConfiguration>& probes,
                             const SiteSet& window, double edge_threshold) {
  if (probes.empty()) throw ContractViolation("build_graph: empty probe set");
  InteractionGraph g;
  g.window = window;
  g.edge_threshold = edge_threshold;
  g.probe_provenance =
      std::to_string(probes.size()) + " probe configuration(s), model " + spec.name;
  for (const Site& s : window) g.adjacency[s];  // isolated vertices exist too

  // Candidate edges: pairs sharing a term.  An edge is kept only if some term
  // certifies it (mixed partial <= -threshold) at every probe.
  auto terms = enumerate_terms(spec, window);
  for (const auto& t : terms) {
    for (std::size_t p = 0; p < t.cell.size(); ++p) {
      for (std::size_t q = p + 1; q < t.cell.size(); ++q) {
        const Site& a = t.cell[p];
        const Site& b = t.cell[q];
        if (!window.count(a) || !window.count(b)) continue;
        bool certified = true;
        for (const auto& u : probes) {
          std::vector<double> v(t.cell.size());
          for (std::size_t j = 0; j < t.cell.size(); ++j) v[j] = u.value(t.cell[j]);
          if (t.hess(v, p, q) > -edge_threshold) {
            certified = false;
            break;
          }
        }
        if (certified) {
          g.adjacency[a].insert(b);
          g.adjacency[b].insert(a);
        }
      }
    }
  }
  return g;
}

namespace {

// BFS from `start`; neighbors expand in lexicographic order, so discovery
// order and parents are deterministic.
std::map<Site, Site> bfs_parents(const InteractionGraph& g, const Site& start,
                                 std::map<Site, int>* dist_out = nullptr) {
  std::map<Site, Site> parent;
  std::map<Site, int> dist;
  std::deque<Site> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    Site cur = queue.front();
    queue.pop_front();
    for (const Site& nb : g.neighbors(cur)) {
      if (!dist.count(nb)) {
        dist[nb] = dist[cur] + 1;
        parent[nb] = cur;
        queue.push_back(nb);
      }
    }
  }
  if (dist_out) *dist_out = std::move(dist);
  return parent;
}

}  // namespace

std::optional<int> distance(const InteractionGraph& g, const Site& i, const Site& j) {
  if (!g.window.count(i) || !g.window.count(j))
    throw ContractViolation("distance: site outside the window");
  std::map<Site, int> dist;
  bfs_parents(g, i, &dist);
  auto it = dist.find(j);
  if (it == dist.end()) return std::nullopt;
  return it->second;
}

std::optional<int> distance_to_set(const InteractionGraph& g, const Site& i,
                                   const SiteSet& S) {
  if (S.empty()) throw ContractViolation("distance_to_set: empty set");
  if (S.count(i)) return 0;
  std::map<Site, int> dist;
  bfs_parents(g, i, &dist);
  std::optional<int> best;
  for (const Site& j : S) {
    auto it = dist.find(j);
    if (it != dist.end() && (!best || it->second < *best)) best = it->second;
  }
  return best;
}

SiteSet frontier(const InteractionGraph& g, const SiteSet& S) {
  if (S.empty()) throw ContractViolation("frontier: empty set");
  SiteSet out = S;
  for (const Site& j : S)
    for (const Site& nb : g.neighbors(j)) out.insert(nb);
  return out;
}

SiteSet connected_hull(const InteractionGraph& g, const SiteSet& B) {
  if (B.empty()) throw ContractViolation("connected_hull: empty set");
  SiteSet hull = B;
  for (auto it = B.begin(); it != B.end(); ++it) {
    std::map<Site, int> dist;
    auto parent = bfs_parents(g, *it, &dist);
    for (auto jt = std::next(it); jt != B.end(); ++jt) {
      if (!dist.count(*jt))
        throw ContractViolation("connected_hull: unreachable pair " + it->str() +
                                " .. " + jt->str());
      Site cur = *jt;
      while (cur != *it) {
        hull.insert(cur);
        cur = parent.at(cur);
      }
    }
  }
  // Result must contain B and be connected.
  std::map<Site, int> dist;
  bfs_parents(g, *hull.begin(), &dist);
  for (const Site& s : hull)
    if (!dist.count(s))
      throw Error("connected_hull: internal error, hull not connected");
  return hull;
}

int component_count(const InteractionGraph& g) {
  int count = 0;
  SiteSet seen;
  for (const Site& s : g.window) {
    if (seen.count(s)) continue;
    ++count;
    std::map<Site, int> dist;
    bfs_parents(g, s, &dist);
    for (const auto& [v, d] : dist) seen.insert(v);
  }
  return count;
}

bool is_transitive(const InteractionGraph& g) {
  return !g.window.empty() && component_count(g) == 1;
}

std::string export_edges(const InteractionGraph& g) {
  std::ostringstream os;
  for (const auto& [a, nbs] : g.adjacency)
    for (const Site& b : nbs)
      if (a < b) os << a.str() << ' ' << b.str() << '\n';
  return os.str();
}

}  // namespace latfol
