#include <algorithm>
#include <map>

#include "doctest.h"
#include "latfol/builtin_models.hpp"
#include "latfol/graph.hpp"

using namespace latfol;

namespace {

SiteSet interval(int lo, int hi) {
  SiteSet w;
  for (int i = lo; i <= hi; ++i) w.insert(Site(i));
  return w;
}

std::vector<LatticeConfiguration> default_probes() {
  return {LatticeConfiguration::linear(0.3),
          LatticeConfiguration::constant(0.25)};
}

// Union-find connectivity oracle over the explicit edge set.
struct UnionFind {
  std::map<Site, Site> parent;
  Site find(Site s) {
    if (!parent.count(s)) parent[s] = s;
    while (parent[s] != s) s = parent[s] = parent[parent[s]];
    return s;
  }
  void unite(Site a, Site b) { parent[find(a)] = find(b); }
};

}  // namespace

TEST_CASE("nearest-neighbor chain induces a path graph") {
  InteractionGraph g =
      build_graph(fk_model(), default_probes(), interval(-5, 5));
  for (int i = -5; i <= 5; ++i) {
    const SiteSet& nb = g.neighbors(Site(i));
    SiteSet expected;
    if (i > -5) expected.insert(Site(i - 1));
    if (i < 5) expected.insert(Site(i + 1));
    CHECK(nb == expected);
  }
  CHECK(is_transitive(g));
  CHECK(component_count(g) == 1);
}

TEST_CASE("path distances equal coordinate gaps") {
  InteractionGraph g =
      build_graph(fk_model(), default_probes(), interval(-6, 6));
  CHECK(distance(g, Site(-3), Site(4)) == 7);
  CHECK(distance(g, Site(2), Site(2)) == 0);
  CHECK(distance_to_set(g, Site(5), interval(-1, 1)) == 4);
}

TEST_CASE("long-range couplings shorten graph distances") {
  InteractionGraph g = build_graph(long_range_pair_model(3), default_probes(),
                                   interval(-8, 8));
  // r-hop edges up to r = 3: one step covers distance 3.
  CHECK(distance(g, Site(0), Site(3)) == 1);
  CHECK(distance(g, Site(0), Site(7)) == 3);
  CHECK(is_transitive(g));
}

TEST_CASE("connected hull contains its seed and is edge-connected") {
  for (int cutoff : {1, 3}) {
    InteractionGraph g = build_graph(long_range_pair_model(cutoff),
                                     default_probes(), interval(-10, 10));
    SiteSet B{Site(-4), Site(0), Site(7)};
    SiteSet hull = connected_hull(g, B);
    CHECK(std::includes(hull.begin(), hull.end(), B.begin(), B.end()));
    UnionFind uf;
    for (const Site& s : hull)
      for (const Site& t : g.neighbors(s))
        if (hull.count(t)) uf.unite(s, t);
    for (const Site& s : hull) CHECK(uf.find(s) == uf.find(*hull.begin()));
  }
}

TEST_CASE("connected hull of a nearest-neighbor chain is the spanning interval") {
  InteractionGraph g =
      build_graph(fk_model(), default_probes(), interval(-10, 10));
  CHECK(connected_hull(g, {Site(-2), Site(3)}) == interval(-2, 3));
  CHECK(connected_hull(g, {Site(5)}) == SiteSet{Site(5)});
}

TEST_CASE("frontier adds exactly the distance-one shell") {
  InteractionGraph g =
      build_graph(fk_model(), default_probes(), interval(-10, 10));
  CHECK(frontier(g, interval(0, 2)) == interval(-1, 3));
}

TEST_CASE("decoupled sites form singleton components") {
  InteractionGraph g = build_graph(decoupled_demo_model(), default_probes(),
                                   interval(-3, 3));
  CHECK_FALSE(is_transitive(g));
  CHECK(component_count(g) == 7);
  CHECK(g.neighbors(Site(0)).empty());
  CHECK_THROWS(connected_hull(g, {Site(0), Site(1)}));
}

TEST_CASE("positive mixed partials do not create edges") {
  InteractionGraph g = build_graph(antiferromagnetic_demo_model(),
                                   default_probes(), interval(-3, 3));
  CHECK(component_count(g) == 7);
}

TEST_CASE("edge export lists each edge once in sorted order") {
  InteractionGraph g =
      build_graph(fk_model(), default_probes(), interval(0, 2));
  CHECK(export_edges(g) == "(0,0,0) (1,0,0)\n(1,0,0) (2,0,0)\n");
}
