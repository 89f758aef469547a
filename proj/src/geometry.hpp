#ifndef CMG_GEOMETRY_HPP
#define CMG_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "group.hpp"

namespace cmg {

using Pt = std::vector<long long>;

// tangential sites S = {v_1..v_m} in Z^n
struct Sites {
  int n = 0;
  std::vector<Pt> v;

  Sites() = default;
  Sites(int n_, std::vector<Pt> v_);
  int m() const { return static_cast<int>(v.size()); }

  nlohmann::json to_json() const;
  static Sites from_json(const nlohmann::json& j);
};

// pi(a) = sum_i a_i v_i
Pt momentum(const std::vector<int>& a, const Sites& s);

struct PairSet {
  // black: ordered (h, k) with pi(l) + k - h = 0 and E(l) + |k|^2 - |h|^2 = 0;
  // red: unordered {h, k} with pi(l) + k + h = 0 and E(l) + |k|^2 + |h|^2 = 0
  std::vector<std::pair<Pt, Pt>> pairs;  // (h, k)
  bool truncated = false;                // black family cut at the box
  nlohmann::json to_json() const;
};

PairSet pair_set(const Edge& e, const Sites& s, long long box);

struct GeoEdge {
  int a = 0;  // vertex indices; black: p_b = p_a + pi(l), red: p_a + p_b = -pi(l)
  int b = 0;
  Edge marking;
};

// geometric graph on the normal sites inside [-R, R]^n
struct GeoGraph {
  Sites sites;
  int q = 0;
  long long box = 0;
  std::vector<Pt> vertices;  // sorted
  std::vector<GeoEdge> edges;
  std::vector<int> component_of;     // per vertex
  int component_count = 0;
  std::vector<bool> component_complete;  // no partner escapes the box

  std::vector<int> component_vertices(int c) const;
  std::vector<int> component_edges(int c) const;
  nlohmann::json to_json() const;
  nlohmann::json components_json() const;
  std::string to_dot() const;
};

GeoGraph geo_graph(const Sites& s, int q, long long box);

struct GenericityReport {
  int vertex_components = 0;
  int edge_components = 0;
  int larger_components = 0;
  int boundary_excluded = 0;
  bool pass = false;
  std::vector<std::vector<Pt>> witnesses;  // vertex lists of larger components
  nlohmann::json to_json() const;
};

// classifies complete components as vertex / single edge / larger; pass iff
// nothing larger survives
GenericityReport genericity_check(const GeoGraph& g);

// walk a complete component into the Cayley graph: root at the identity,
// compose markings along a spanning tree, check every non-tree edge closes
MarkedGraph lift_component(const GeoGraph& g, int component);

// deterministic sampling of integer sites until genericity_check passes
std::optional<Sites> search_generic_sites(int n, int m, int q, long long box,
                                          std::uint64_t seed, int max_attempts,
                                          int* attempts_used = nullptr);

}  // namespace cmg

#endif
