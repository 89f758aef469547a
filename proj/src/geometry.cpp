#include "geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cmg {

namespace {

long long dot(const Pt& a, const Pt& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

long long norm2(const Pt& p) { return dot(p, p); }

Pt add(const Pt& a, const Pt& b) {
  Pt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Pt neg(const Pt& a) {
  Pt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool in_box(const Pt& p, long long R) {
  for (long long x : p)
    if (x < -R || x > R) return false;
  return true;
}

// sum of l_j |v_j|^2
long long edge_energy(const Edge& e, const Sites& s) {
  long long sum = 0;
  for (int j = 0; j < s.m(); ++j) sum += static_cast<long long>(e.n[j]) * norm2(s.v[j]);
  return sum;
}

}  // namespace

Sites::Sites(int n_, std::vector<Pt> v_) : n(n_), v(std::move(v_)) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (v.size() < 2) throw std::invalid_argument("at least two sites required");
  for (const auto& p : v)
    if (static_cast<int>(p.size()) != n)
      throw std::invalid_argument("site length mismatch");
  std::set<Pt> distinct(v.begin(), v.end());
  if (distinct.size() != v.size())
    throw std::invalid_argument("sites must be pairwise distinct");
}

nlohmann::json Sites::to_json() const {
  return nlohmann::json{{"n", n}, {"v", v}};
}

Sites Sites::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("v"))
    throw std::invalid_argument("malformed sites JSON");
  return Sites(j.at("n").get<int>(), j.at("v").get<std::vector<Pt>>());
}

Pt momentum(const std::vector<int>& a, const Sites& s) {
  if (static_cast<int>(a.size()) != s.m())
    throw std::invalid_argument("vector length mismatch");
  Pt r(s.n, 0);
  for (int i = 0; i < s.m(); ++i)
    for (int k = 0; k < s.n; ++k) r[k] += static_cast<long long>(a[i]) * s.v[i][k];
  return r;
}

nlohmann::json PairSet::to_json() const {
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& [h, k] : pairs)
    ps.push_back(nlohmann::json{{"h", h}, {"k", k}});
  return nlohmann::json{{"pairs", std::move(ps)}, {"truncated", truncated}};
}

namespace {

void box_points(int n, long long R, Pt& cur, int pos,
                const std::function<void(const Pt&)>& fn) {
  if (pos == n) {
    fn(cur);
    return;
  }
  for (long long x = -R; x <= R; ++x) {
    cur[pos] = x;
    box_points(n, R, cur, pos + 1, fn);
  }
}

}  // namespace

PairSet pair_set(const Edge& e, const Sites& s, long long box) {
  if (e.m() != s.m()) throw std::invalid_argument("edge length mismatch");
  if (box < 1) throw std::invalid_argument("box bound must be >= 1");
  PairSet out;
  Pt pi = momentum(e.n, s);
  long long E = edge_energy(e, s);
  std::set<Pt> site_set(s.v.begin(), s.v.end());

  if (e.color == Color::Black) {
    // h = pi(l) + k on the affine hyperplane E - 2 k . pi - |pi|^2 = 0;
    // enumeration is cut at the box
    Pt cur(s.n, 0);
    box_points(s.n, box, cur, 0, [&](const Pt& k) {
      Pt h = add(pi, k);
      if (E + norm2(k) - norm2(h) != 0) return;
      if (site_set.count(k) || site_set.count(h)) return;
      out.pairs.emplace_back(h, k);
    });
    // the family is provably empty only when pi = 0 forces the energy to E
    bool pi_zero = std::all_of(pi.begin(), pi.end(), [](long long x) { return x == 0; });
    out.truncated = !(pi_zero && E != 0);
  } else {
    // sphere |k + pi/2|^2 = -|pi|^2/4 - E/2: enumerate a box that surely
    // contains it
    long long rhs4 = -norm2(pi) - 2 * E;  // 4 * radius^2
    if (rhs4 < 0) return out;             // empty sphere
    long long rad = 1;
    while (rad * rad * 4 < rhs4) ++rad;
    long long reach = rad + 1;
    for (long long c : pi) reach = std::max(reach, std::llabs(c) / 2 + rad + 1);
    Pt cur(s.n, 0);
    std::set<std::pair<Pt, Pt>> seen;
    box_points(s.n, reach, cur, 0, [&](const Pt& k) {
      Pt h = neg(add(pi, k));
      if (E + norm2(k) + norm2(h) != 0) return;
      if (site_set.count(k) || site_set.count(h)) return;
      Pt lo = std::min(h, k), hi = std::max(h, k);
      if (!seen.insert({lo, hi}).second) return;
      out.pairs.emplace_back(h, k);
    });
    out.truncated = false;
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

std::vector<int> GeoGraph::component_vertices(int c) const {
  std::vector<int> r;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (component_of[i] == c) r.push_back(static_cast<int>(i));
  return r;
}

std::vector<int> GeoGraph::component_edges(int c) const {
  std::vector<int> r;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (component_of[edges[i].a] == c) r.push_back(static_cast<int>(i));
  return r;
}

GeoGraph geo_graph(const Sites& s, int q, long long box) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  if (box < 1) throw std::invalid_argument("box bound must be >= 1");
  for (const auto& p : s.v)
    if (!in_box(p, box))
      throw std::invalid_argument("box too small to contain the sites");

  GeoGraph g;
  g.sites = s;
  g.q = q;
  g.box = box;

  std::set<Pt> site_set(s.v.begin(), s.v.end());
  Pt cur(s.n, 0);
  box_points(s.n, box, cur, 0, [&](const Pt& p) {
    if (!site_set.count(p)) g.vertices.push_back(p);
  });
  std::sort(g.vertices.begin(), g.vertices.end());
  std::map<Pt, int> index;
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    index.emplace(g.vertices[i], static_cast<int>(i));

  std::vector<Edge> gens = enumerate_edges(q, s.m());
  std::set<std::tuple<int, int, std::vector<int>>> seen;
  std::vector<bool> escapes(g.vertices.size(), false);

  for (const auto& e : gens) {
    Pt pi = momentum(e.n, s);
    long long E = edge_energy(e, s);
    for (std::size_t vi = 0; vi < g.vertices.size(); ++vi) {
      const Pt& p = g.vertices[vi];
      Pt w;
      if (e.color == Color::Black) {
        // p in the k role: h = p + pi(l)
        w = add(p, pi);
        if (E + norm2(p) - norm2(w) != 0) continue;
      } else {
        w = neg(add(pi, p));
        if (E + norm2(p) + norm2(w) != 0) continue;
      }
      if (w == p) continue;  // degenerate self-pair, not a graph edge
      if (site_set.count(w)) continue;
      auto it = index.find(w);
      if (it == index.end()) {
        if (in_box(w, box))
          throw std::logic_error("vertex index inconsistency");
        escapes[vi] = true;
        continue;
      }
      // store with a <= b; black markings are reoriented when flipped
      int a = static_cast<int>(vi), b = it->second;
      std::vector<int> n = e.n;
      if (e.color == Color::Black) {
        // stored semantics: p_b = p_a + pi(l)
        if (a > b) {
          std::swap(a, b);
          for (auto& x : n) x = -x;
        }
      } else if (a > b) {
        std::swap(a, b);
      }
      if (seen.insert({a, b, n}).second)
        g.edges.push_back(GeoEdge{a, b, make_edge(n, q)});
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const GeoEdge& x, const GeoEdge& y) {
    return std::tie(x.a, x.b, x.marking.n) < std::tie(y.a, y.b, y.marking.n);
  });

  // components
  std::vector<int> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& e : g.edges) parent[find(e.a)] = find(e.b);
  std::map<int, int> relabel;
  g.component_of.resize(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    int r = find(static_cast<int>(i));
    auto it = relabel.find(r);
    if (it == relabel.end())
      it = relabel.emplace(r, static_cast<int>(relabel.size())).first;
    g.component_of[i] = it->second;
  }
  g.component_count = static_cast<int>(relabel.size());
  g.component_complete.assign(g.component_count, true);
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    if (escapes[i]) g.component_complete[g.component_of[i]] = false;
  return g;
}

nlohmann::json GeoGraph::to_json() const {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& p : vertices) vs.push_back(p);
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : edges)
    es.push_back(nlohmann::json{
        {"a", e.a},
        {"b", e.b},
        {"marking", e.marking.n},
        {"color", e.marking.color == Color::Black ? "black" : "red"}});
  nlohmann::json comps = nlohmann::json::array();
  for (int c = 0; c < component_count; ++c)
    comps.push_back(nlohmann::json{{"vertices", component_vertices(c)},
                                   {"complete", bool(component_complete[c])}});
  return nlohmann::json{{"schema", "cmg.geo-graph/1"},
                        {"sites", sites.to_json()},
                        {"q", q},
                        {"box", box},
                        {"nodes", std::move(vs)},
                        {"edges", std::move(es)},
                        {"components", std::move(comps)}};
}

nlohmann::json GeoGraph::components_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (int c = 0; c < component_count; ++c) {
    auto vids = component_vertices(c);
    nlohmann::json pts = nlohmann::json::array();
    for (int i : vids) pts.push_back(vertices[i]);
    auto eids = component_edges(c);
    comps.push_back(nlohmann::json{{"id", c},
                                   {"size", vids.size()},
                                   {"edge_count", eids.size()},
                                   {"complete", bool(component_complete[c])},
                                   {"points", std::move(pts)}});
  }
  return nlohmann::json{{"schema", "cmg.geo-components/1"},
                        {"count", component_count},
                        {"components", std::move(comps)}};
}

std::string GeoGraph::to_dot() const {
  std::ostringstream os;
  auto name = [](const Pt& p) {
    std::string s = "\"";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(p[i]);
    }
    return s + "\"";
  };
  os << "graph gamma_s {\n";
  for (const auto& p : vertices) os << "  " << name(p) << ";\n";
  for (const auto& e : edges) {
    os << "  " << name(vertices[e.a]) << " -- " << name(vertices[e.b])
       << " [color=" << (e.marking.color == Color::Black ? "black" : "red")
       << ", label=\"";
    for (std::size_t i = 0; i < e.marking.n.size(); ++i) {
      if (i) os << ",";
      os << e.marking.n[i];
    }
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

GenericityReport genericity_check(const GeoGraph& g) {
  GenericityReport rep;
  for (int c = 0; c < g.component_count; ++c) {
    if (!g.component_complete[c]) {
      ++rep.boundary_excluded;
      continue;
    }
    auto vids = g.component_vertices(c);
    auto eids = g.component_edges(c);
    if (vids.size() == 1 && eids.empty()) {
      ++rep.vertex_components;
    } else if (vids.size() == 2 && eids.size() == 1) {
      ++rep.edge_components;
    } else {
      ++rep.larger_components;
      std::vector<Pt> w;
      for (int i : vids) w.push_back(g.vertices[i]);
      rep.witnesses.push_back(std::move(w));
    }
  }
  rep.pass = rep.larger_components == 0;
  return rep;
}

nlohmann::json GenericityReport::to_json() const {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : witnesses) ws.push_back(w);
  return nlohmann::json{{"schema", "cmg.genericity/1"},
                        {"vertex_components", vertex_components},
                        {"edge_components", edge_components},
                        {"larger_components", larger_components},
                        {"boundary_excluded", boundary_excluded},
                        {"pass", pass},
                        {"witnesses", std::move(ws)}};
}

MarkedGraph lift_component(const GeoGraph& g, int component) {
  if (component < 0 || component >= g.component_count)
    throw std::invalid_argument("component index out of range");
  if (!g.component_complete[component])
    throw std::invalid_argument("component touches the box boundary");
  auto vids = g.component_vertices(component);
  auto eids = g.component_edges(component);
  int m = g.sites.m();

  // adjacency within the component
  std::map<int, std::vector<int>> incident;
  for (int ei : eids) {
    incident[g.edges[ei].a].push_back(ei);
    incident[g.edges[ei].b].push_back(ei);
  }

  int root = vids.front();  // vertices are sorted, so this is deterministic
  std::map<int, GElem> label;
  label.emplace(root, g_identity(m));
  std::vector<int> stack{root};
  std::set<int> used_edges;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    auto it = incident.find(x);
    if (it == incident.end()) continue;
    for (int ei : it->second) {
      const GeoEdge& e = g.edges[ei];
      int other = e.a == x ? e.b : e.a;
      GElem gen{e.marking.n, e.marking.color == Color::Black ? 1 : -1};
      GElem expected_other;
      if (e.marking.color == Color::Black) {
        // stored: p_b = p_a + pi(l), i.e. label(a) = (l,+1) label(b)
        expected_other = e.a == x ? g_mul(g_inv(gen), label.at(x))
                                  : g_mul(gen, label.at(x));
      } else {
        expected_other = g_mul(gen, label.at(x));  // involution
      }
      auto lo = label.find(other);
      if (lo == label.end()) {
        label.emplace(other, expected_other);
        stack.push_back(other);
        used_edges.insert(ei);
      } else if (!(lo->second == expected_other)) {
        throw std::domain_error(
            "geometric component does not lift: cycle closure failed");
      }
    }
  }

  // point consistency: label (mu, sigma) must act the root point onto its own
  // point, -pi(mu) + sigma k0 = p
  const Pt& k0 = g.vertices[root];
  for (const auto& [vid, lab] : label) {
    Pt pi = momentum(lab.a, g.sites);
    Pt expect(g.sites.n);
    for (int i = 0; i < g.sites.n; ++i)
      expect[i] = -pi[i] + static_cast<long long>(lab.sigma) * k0[i];
    if (expect != g.vertices[vid])
      throw std::domain_error(
          "geometric component does not lift: momentum frame mismatch");
  }
  if (label.size() != vids.size())
    throw std::logic_error("component walk missed vertices");

  std::vector<GElem> verts;
  verts.reserve(label.size());
  for (auto& [vid, lab] : label) verts.push_back(lab);
  return MarkedGraph(g.q, m, std::move(verts));
}

std::optional<Sites> search_generic_sites(int n, int m, int q, long long box,
                                          std::uint64_t seed, int max_attempts,
                                          int* attempts_used) {
  if (n < 1 || m < 2) throw std::invalid_argument("need n >= 1 and m >= 2");
  std::mt19937_64 rng(seed);
  long long sample_bound = std::min<long long>(3, box);
  std::uniform_int_distribution<long long> dist(-sample_bound, sample_bound);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::set<Pt> picked;
    while (static_cast<int>(picked.size()) < m) {
      Pt p(n);
      for (int i = 0; i < n; ++i) p[i] = dist(rng);
      picked.insert(p);
    }
    Sites s(n, std::vector<Pt>(picked.begin(), picked.end()));
    GeoGraph g = geo_graph(s, q, box);
    if (genericity_check(g).pass) {
      if (attempts_used) *attempts_used = attempt;
      return s;
    }
  }
  if (attempts_used) *attempts_used = max_attempts;
  return std::nullopt;
}

}  // namespace cmg
