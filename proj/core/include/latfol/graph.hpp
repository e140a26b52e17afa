#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latfol/model.hpp"

namespace latfol {

/// Linkage graph: an edge wherever some term's mixed partial stays below
/// -edge_threshold at every probe configuration.  Immutable after build.
struct InteractionGraph {
  SiteSet window;
  std::map<Site, SiteSet> adjacency;
  std::string probe_provenance;
  double edge_threshold = 1e-9;

  const SiteSet& neighbors(const Site& s) const;
};

InteractionGraph build_graph(const InteractionSpec& spec,
                             const std::vector<LatticeConfiguration>& probes,
                             const SiteSet& window, double edge_threshold = 1e-9);

/// BFS shortest-path length; nullopt when unreachable inside the window.
std::optional<int> distance(const InteractionGraph& g, const Site& i, const Site& j);

std::optional<int> distance_to_set(const InteractionGraph& g, const Site& i,
                                   const SiteSet& S);

/// {i in window : d(i, S) <= 1}.
SiteSet frontier(const InteractionGraph& g, const SiteSet& S);

/// Con(B): union of the vertices of deterministic shortest paths between all
/// pairs of B.  Throws if some pair is unreachable.  The result contains B
/// and is connected (asserted internally).
SiteSet connected_hull(const InteractionGraph& g, const SiteSet& B);

bool is_transitive(const InteractionGraph& g);
int component_count(const InteractionGraph& g);

/// Sorted edge list, one "p q" line per edge, for external tooling.
std::string export_edges(const InteractionGraph& g);

}  // namespace latfol
