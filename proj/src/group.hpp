#ifndef CMG_GROUP_HPP
#define CMG_GROUP_HPP

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace cmg {

// Element (a, sigma) of Z^m x| Z/2.  Group law (a,s)(b,r) = (a + s b, s r);
// tau = (0,-1) satisfies a tau = tau (-a).
struct GElem {
  std::vector<int> a;
  int sigma = 1;  // +1 or -1

  int m() const { return static_cast<int>(a.size()); }
  bool operator==(const GElem& o) const { return sigma == o.sigma && a == o.a; }
  bool operator!=(const GElem& o) const { return !(*this == o); }
  // ordering used everywhere for canonical vertex lists: a lex, then +1 < -1
  bool operator<(const GElem& o) const {
    if (a != o.a) return a < o.a;
    return sigma > o.sigma;
  }
};

GElem g_identity(int m);
GElem g_mul(const GElem& x, const GElem& y);
GElem g_inv(const GElem& x);
// right action of eq-style translations/sign change: x |-> x t
GElem g_act_right(const GElem& x, const GElem& t);

enum class Color { Black, Red };

// Generator marking: vector in Z^m with mass 0 (black) or -2 (red),
// |l|_1 <= 2q, l != 0, l != -2 e_i.
struct Edge {
  std::vector<int> n;
  Color color = Color::Black;

  int m() const { return static_cast<int>(n.size()); }
  bool operator==(const Edge& o) const { return color == o.color && n == o.n; }
  bool operator<(const Edge& o) const {
    if (n != o.n) return n < o.n;
    return color < o.color;
  }
};

int edge_mass(const std::vector<int>& n);
int edge_norm1(const std::vector<int>& n);
bool is_valid_edge(const std::vector<int>& n, int q);
// the edge for a valid marking vector (color derived from the mass)
Edge make_edge(std::vector<int> n, int q);
std::vector<int> ell_plus(const std::vector<int>& n);
std::vector<int> ell_minus(const std::vector<int>& n);
std::vector<int> support(const std::vector<int>& n);

// all of X_q = X_q^0 u X_q^{-2}, sorted by marking vector
std::vector<Edge> enumerate_edges(int q, int m);

// marking l with y = l.x under left multiplication, when x,y are adjacent
std::optional<Edge> adjacency(const GElem& x, const GElem& y, int q);

// left multiplication by the generator: black (l,+1), red (l,-1)
GElem apply_generator(const Edge& e, const GElem& x);

// Finite vertex set of the Cayley graph of Z^m x| Z/2 with generators X_q;
// adjacency is fully derived from the vertex set.
class MarkedGraph {
 public:
  // single-vertex placeholder; aggregate containers need a default state
  MarkedGraph() : q_(1), m_(1), vertices_{GElem{{0}, 1}} {}
  MarkedGraph(int q, int m, std::vector<GElem> vertices);

  int q() const { return q_; }
  int m() const { return m_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  int dimension() const { return size() - 1; }
  const std::vector<GElem>& vertices() const { return vertices_; }
  const GElem& vertex(int i) const { return vertices_.at(i); }

  std::optional<Edge> edge_between(int i, int j) const;
  // one record per unordered pair, marking oriented so that v_j = l . v_i
  std::vector<std::tuple<int, int, Edge>> edges() const;
  bool connected() const;

  // flat integer key: deterministic ordering and dedup
  std::vector<long> key() const;
  bool operator==(const MarkedGraph& o) const {
    return q_ == o.q_ && m_ == o.m_ && vertices_ == o.vertices_;
  }

  nlohmann::json to_json() const;
  static MarkedGraph from_json(const nlohmann::json& j);

 private:
  int q_, m_;
  std::vector<GElem> vertices_;  // sorted, distinct
};

MarkedGraph complete_graph(int q, int m, std::vector<GElem> vertices);
std::vector<MarkedGraph> connected_components(const MarkedGraph& g);
// right-translate every vertex by h
MarkedGraph translate_right(const MarkedGraph& g, const GElem& h);

// Unique orbit representative under re-rooting (right G-action, including the
// sign change) and coordinate permutations; input must be connected.
MarkedGraph canonicalize(const MarkedGraph& g);

// left-multiplication neighbors of x by every generator in X_q
std::vector<GElem> cayley_neighbors(const GElem& x, const std::vector<Edge>& gens);

}  // namespace cmg

#endif
