#include "group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cmg {

namespace {

void check_same_m(const GElem& x, const GElem& y) {
  if (x.m() != y.m()) throw std::invalid_argument("vector length mismatch");
}

}  // namespace

GElem g_identity(int m) { return GElem{std::vector<int>(m, 0), 1}; }

GElem g_mul(const GElem& x, const GElem& y) {
  check_same_m(x, y);
  GElem r;
  r.a.resize(x.m());
  for (int i = 0; i < x.m(); ++i) r.a[i] = x.a[i] + x.sigma * y.a[i];
  r.sigma = x.sigma * y.sigma;
  return r;
}

GElem g_inv(const GElem& x) {
  GElem r;
  r.a.resize(x.m());
  for (int i = 0; i < x.m(); ++i) r.a[i] = -x.sigma * x.a[i];
  r.sigma = x.sigma;
  return r;
}

GElem g_act_right(const GElem& x, const GElem& t) { return g_mul(x, t); }

int edge_mass(const std::vector<int>& n) {
  return std::accumulate(n.begin(), n.end(), 0);
}

int edge_norm1(const std::vector<int>& n) {
  int s = 0;
  for (int v : n) s += std::abs(v);
  return s;
}

bool is_valid_edge(const std::vector<int>& n, int q) {
  if (q < 1) return false;
  int mass = edge_mass(n);
  if (mass != 0 && mass != -2) return false;
  if (edge_norm1(n) > 2 * q) return false;
  int nonzero = 0, last = -1;
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] != 0) {
      ++nonzero;
      last = static_cast<int>(i);
    }
  if (nonzero == 0) return false;                       // l = 0
  if (nonzero == 1 && n[last] == -2) return false;      // l = -2 e_i
  return true;
}

Edge make_edge(std::vector<int> n, int q) {
  if (!is_valid_edge(n, q)) throw std::invalid_argument("not a valid edge for this q");
  Color c = edge_mass(n) == 0 ? Color::Black : Color::Red;
  return Edge{std::move(n), c};
}

std::vector<int> ell_plus(const std::vector<int>& n) {
  std::vector<int> r(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) r[i] = std::max(n[i], 0);
  return r;
}

std::vector<int> ell_minus(const std::vector<int>& n) {
  std::vector<int> r(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) r[i] = std::max(-n[i], 0);
  return r;
}

std::vector<int> support(const std::vector<int>& n) {
  std::vector<int> r;
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] != 0) r.push_back(static_cast<int>(i) + 1);
  return r;
}

namespace {

void enumerate_rec(int q, int m, int pos, int budget, std::vector<int>& cur,
                   std::vector<Edge>& out) {
  if (pos == m) {
    if (is_valid_edge(cur, q)) out.push_back(make_edge(cur, q));
    return;
  }
  for (int v = -budget; v <= budget; ++v) {
    cur[pos] = v;
    enumerate_rec(q, m, pos + 1, budget - std::abs(v), cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Edge> enumerate_edges(int q, int m) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  if (m < 2) throw std::invalid_argument("edges need m >= 2");
  std::vector<Edge> out;
  std::vector<int> cur(m, 0);
  enumerate_rec(q, m, 0, 2 * q, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Edge> adjacency(const GElem& x, const GElem& y, int q) {
  check_same_m(x, y);
  if (x == y) return std::nullopt;
  std::vector<int> l(x.m());
  if (x.sigma == y.sigma) {
    for (int i = 0; i < x.m(); ++i) l[i] = y.a[i] - x.a[i];
    if (edge_mass(l) != 0 || !is_valid_edge(l, q)) return std::nullopt;
  } else {
    for (int i = 0; i < x.m(); ++i) l[i] = y.a[i] + x.a[i];
    if (edge_mass(l) != -2 || !is_valid_edge(l, q)) return std::nullopt;
  }
  return make_edge(l, q);
}

GElem apply_generator(const Edge& e, const GElem& x) {
  GElem gen{e.n, e.color == Color::Black ? 1 : -1};
  return g_mul(gen, x);
}

MarkedGraph::MarkedGraph(int q, int m, std::vector<GElem> vertices)
    : q_(q), m_(m), vertices_(std::move(vertices)) {
  if (q_ < 1) throw std::invalid_argument("q must be >= 1");
  if (m_ < 1) throw std::invalid_argument("m must be >= 1");
  if (vertices_.empty()) throw std::invalid_argument("empty vertex set");
  for (const auto& v : vertices_) {
    if (v.m() != m_) throw std::invalid_argument("vertex length mismatch");
    if (v.sigma != 1 && v.sigma != -1)
      throw std::invalid_argument("sigma must be +1 or -1");
  }
  std::sort(vertices_.begin(), vertices_.end());
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i] == vertices_[i - 1])
      throw std::invalid_argument("duplicate vertices");
}

std::optional<Edge> MarkedGraph::edge_between(int i, int j) const {
  return adjacency(vertex(i), vertex(j), q_);
}

std::vector<std::tuple<int, int, Edge>> MarkedGraph::edges() const {
  std::vector<std::tuple<int, int, Edge>> r;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (auto e = edge_between(i, j)) r.emplace_back(i, j, *e);
  return r;
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

bool MarkedGraph::connected() const {
  UnionFind uf(size());
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (edge_between(i, j)) uf.unite(i, j);
  int root = uf.find(0);
  for (int i = 1; i < size(); ++i)
    if (uf.find(i) != root) return false;
  return true;
}

std::vector<long> MarkedGraph::key() const {
  std::vector<long> k;
  k.reserve(2 + vertices_.size() * (m_ + 1));
  k.push_back(q_);
  k.push_back(m_);
  for (const auto& v : vertices_) {
    for (int x : v.a) k.push_back(x);
    k.push_back(v.sigma == 1 ? 0 : 1);
  }
  return k;
}

nlohmann::json MarkedGraph::to_json() const {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : vertices_)
    vs.push_back(nlohmann::json{{"a", v.a}, {"sigma", v.sigma}});
  return nlohmann::json{{"m", m_}, {"q", q_}, {"vertices", std::move(vs)}};
}

MarkedGraph MarkedGraph::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("q") ||
      !j.contains("vertices"))
    throw std::invalid_argument("malformed graph JSON");
  int m = j.at("m").get<int>();
  int q = j.at("q").get<int>();
  std::vector<GElem> vs;
  for (const auto& vj : j.at("vertices")) {
    GElem v;
    v.a = vj.at("a").get<std::vector<int>>();
    v.sigma = vj.at("sigma").get<int>();
    vs.push_back(std::move(v));
  }
  return MarkedGraph(q, m, std::move(vs));
}

MarkedGraph complete_graph(int q, int m, std::vector<GElem> vertices) {
  return MarkedGraph(q, m, std::move(vertices));
}

std::vector<MarkedGraph> connected_components(const MarkedGraph& g) {
  UnionFind uf(g.size());
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      if (g.edge_between(i, j)) uf.unite(i, j);
  std::map<int, std::vector<GElem>> groups;
  for (int i = 0; i < g.size(); ++i)
    groups[uf.find(i)].push_back(g.vertex(i));
  std::vector<MarkedGraph> out;
  out.reserve(groups.size());
  for (auto& [root, verts] : groups)
    out.emplace_back(g.q(), g.m(), std::move(verts));
  std::sort(out.begin(), out.end(), [](const MarkedGraph& a, const MarkedGraph& b) {
    return a.key() < b.key();
  });
  return out;
}

MarkedGraph translate_right(const MarkedGraph& g, const GElem& h) {
  std::vector<GElem> vs;
  vs.reserve(g.size());
  for (const auto& v : g.vertices()) vs.push_back(g_mul(v, h));
  return MarkedGraph(g.q(), g.m(), std::move(vs));
}

namespace {

constexpr int kMaxPermVars = 8;

std::vector<long> rows_key(int q, int m, std::vector<GElem> rows) {
  std::sort(rows.begin(), rows.end());
  std::vector<long> k;
  k.reserve(2 + rows.size() * (m + 1));
  k.push_back(q);
  k.push_back(m);
  for (const auto& v : rows) {
    for (int x : v.a) k.push_back(x);
    k.push_back(v.sigma == 1 ? 0 : 1);
  }
  return k;
}

// minimal key over all coordinate permutations of the vertex list
std::vector<long> perm_min_key(int q, int m, const std::vector<GElem>& rows) {
  if (rows.size() <= 2) {
    // with the identity present, the minimum is the ascending arrangement of
    // the other vertex
    std::vector<GElem> r = rows;
    for (auto& v : r) std::sort(v.a.begin(), v.a.end());
    return rows_key(q, m, std::move(r));
  }
  if (m > kMaxPermVars)
    throw std::domain_error(
        "canonicalization of graphs with more than two vertices is limited "
        "to m <= 8");
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long> best;
  do {
    std::vector<GElem> r = rows;
    for (auto& v : r) {
      std::vector<int> na(m);
      for (int i = 0; i < m; ++i) na[i] = v.a[perm[i]];
      v.a = std::move(na);
    }
    auto k = rows_key(q, m, std::move(r));
    if (best.empty() || k < best) best = std::move(k);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

MarkedGraph graph_from_key(const std::vector<long>& k) {
  int q = static_cast<int>(k[0]);
  int m = static_cast<int>(k[1]);
  std::vector<GElem> vs;
  std::size_t pos = 2;
  while (pos < k.size()) {
    GElem v;
    v.a.resize(m);
    for (int i = 0; i < m; ++i) v.a[i] = static_cast<int>(k[pos++]);
    v.sigma = k[pos++] == 0 ? 1 : -1;
    vs.push_back(std::move(v));
  }
  return MarkedGraph(q, m, std::move(vs));
}

}  // namespace

MarkedGraph canonicalize(const MarkedGraph& g) {
  if (!g.connected()) throw std::invalid_argument("disconnected graph");
  std::vector<long> best;
  // every orbit element containing the identity is a right translate by the
  // inverse of some vertex; the tau flip is reached through roots with
  // sigma = -1
  for (const auto& v : g.vertices()) {
    MarkedGraph t = translate_right(g, g_inv(v));
    auto k = perm_min_key(g.q(), g.m(), t.vertices());
    if (best.empty() || k < best) best = std::move(k);
  }
  return graph_from_key(best);
}

std::vector<GElem> cayley_neighbors(const GElem& x, const std::vector<Edge>& gens) {
  std::set<GElem> out;
  for (const auto& e : gens) out.insert(apply_generator(e, x));
  out.erase(x);
  return std::vector<GElem>(out.begin(), out.end());
}

}  // namespace cmg
