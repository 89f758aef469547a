#include "nfmatrix.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cmg {

namespace {

// all nonnegative integer vectors of length m with |k|_1 = r
void compositions(int r, int m, int pos, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& fn) {
  if (pos == m - 1) {
    cur[pos] = r;
    fn(cur);
    return;
  }
  for (int v = 0; v <= r; ++v) {
    cur[pos] = v;
    compositions(r - v, m, pos + 1, cur, fn);
  }
}

void for_each_composition(int r, int m,
                          const std::function<void(const std::vector<int>&)>& fn) {
  if (m == 0) return;
  std::vector<int> cur(m, 0);
  compositions(r, m, 0, cur, fn);
}

Exp doubled(const std::vector<int>& k) {
  Exp e(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    e[i] = static_cast<std::uint16_t>(2 * k[i]);
  return e;
}

std::mutex cache_mutex;
std::map<std::pair<int, int>, MPoly> poly_a_cache;

// per (q,m): monomials gamma of degree q and the integer row
// w[i] = (gamma_i + 1) * multinomial(q+1; gamma + e_i)^2, so that
// (q+1) a(x) = sum_gamma (sum_i n_i w_i(gamma)) x^gamma
struct LinearFormTable {
  std::vector<Exp> monomials;
  std::vector<std::vector<Int>> weights;
};
std::map<std::pair<int, int>, LinearFormTable> lf_cache;

const LinearFormTable& linear_form_table(int q, int m) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(q, m);
  auto it = lf_cache.find(key);
  if (it != lf_cache.end()) return it->second;
  LinearFormTable t;
  for_each_composition(q, m, [&](const std::vector<int>& gamma) {
    std::vector<Int> w(m);
    std::vector<int> beta = gamma;
    for (int i = 0; i < m; ++i) {
      beta[i] += 1;
      Int mlt = multinomial(q + 1, beta);
      w[i] = Int(gamma[i] + 1) * mlt * mlt;
      beta[i] -= 1;
    }
    t.monomials.push_back(doubled(gamma));
    t.weights.push_back(std::move(w));
  });
  return lf_cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

MPoly poly_A(int r, int m) {
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = poly_a_cache.find({r, m});
    if (it != poly_a_cache.end()) return it->second;
  }
  MPoly p(m);
  if (r == 0) {
    p = MPoly::constant(m, 1);
  } else {
    for_each_composition(r, m, [&](const std::vector<int>& k) {
      Int c = multinomial(r, k);
      p = p + MPoly::monomial(m, doubled(k), c * c);
    });
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  poly_a_cache.emplace(std::make_pair(r, m), p);
  return p;
}

MPoly edge_coeff(const Edge& e, int q, int m) {
  if (e.m() != m) throw std::invalid_argument("edge length mismatch");
  if (!is_valid_edge(e.n, q)) throw std::invalid_argument("not a valid edge for this q");
  std::vector<int> lp = ell_plus(e.n), lm = ell_minus(e.n);
  int lp1 = edge_norm1(lp);
  bool black = e.color == Color::Black;
  int alpha_deg = black ? q - lp1 : q - 1 - lp1;
  if (alpha_deg < 0) throw std::invalid_argument("edge incompatible with q");
  Int pref = black ? Int(q + 1) : Int(q);

  MPoly c(m);
  for_each_composition(alpha_deg, m, [&](const std::vector<int>& alpha) {
    std::vector<int> u(m), v(m);
    for (int i = 0; i < m; ++i) {
      u[i] = lp[i] + alpha[i];
      v[i] = lm[i] + alpha[i];
    }
    Int coeff = black ? multinomial(q, u) * multinomial(q, v)
                      : multinomial(q + 1, v) * multinomial(q - 1, u);
    if (coeff == 0) return;
    // exponent (l+ + l-)/2 + alpha, in doubled storage l+ + l- + 2 alpha
    Exp ex(m);
    for (int i = 0; i < m; ++i)
      ex[i] = static_cast<std::uint16_t>(lp[i] + lm[i] + 2 * alpha[i]);
    c = c + MPoly::monomial(m, std::move(ex), pref * coeff);
  });
  return c;
}

MPoly linear_form(const std::vector<int>& a, int q, int m) {
  if (static_cast<int>(a.size()) != m)
    throw std::invalid_argument("vector length mismatch");
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  const LinearFormTable& t = linear_form_table(q, m);
  MPoly r(m);
  Int qp1(q + 1);
  for (std::size_t k = 0; k < t.monomials.size(); ++k) {
    Int s = 0;
    for (int i = 0; i < m; ++i)
      if (a[i] != 0) s += Int(a[i]) * t.weights[k][i];
    if (s == 0) continue;
    if (s % qp1 != 0)
      throw std::logic_error(
          "inexact division by q+1 in linear form (integrality violated)");
    r = r + MPoly::monomial(m, t.monomials[k], s / qp1);
  }
  return r;
}

MPoly diag_entry(const GElem& v, int q, int m) {
  if (v.m() != m) throw std::invalid_argument("vertex length mismatch");
  MPoly a = linear_form(v.a, q, m);
  if (v.sigma == 1) return a;
  return -a + poly_A(q, m) * Int(2 * (q + 1));
}

nlohmann::json PolyMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < dim; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < dim; ++j) row.push_back(at(i, j).render());
    rows.push_back(std::move(row));
  }
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : vertex_order)
    vs.push_back(nlohmann::json{{"a", v.a}, {"sigma", v.sigma}});
  return nlohmann::json{{"q", q},
                        {"m", m},
                        {"dim", dim},
                        {"vertex_order", std::move(vs)},
                        {"entries", std::move(rows)}};
}

PolyMatrix build_matrix(const MarkedGraph& g) {
  if (!g.connected())
    throw std::invalid_argument("matrix construction expects a connected graph");
  PolyMatrix mat;
  mat.q = g.q();
  mat.m = g.m();
  mat.dim = g.size();
  mat.vertex_order = g.vertices();
  mat.entries.assign(static_cast<std::size_t>(mat.dim) * mat.dim, MPoly(mat.m));
  for (int i = 0; i < mat.dim; ++i)
    mat.at(i, i) = diag_entry(g.vertex(i), g.q(), g.m());
  for (int i = 0; i < mat.dim; ++i) {
    for (int j = 0; j < mat.dim; ++j) {
      if (i == j) continue;
      auto e = adjacency(g.vertex(i), g.vertex(j), g.q());
      if (!e) continue;
      MPoly c = edge_coeff(*e, g.q(), g.m());
      mat.at(i, j) = g.vertex(j).sigma == 1 ? c : -c;
    }
  }
  return mat;
}

PolyMatrix scale_matrix(const PolyMatrix& mat, const Int& factor) {
  PolyMatrix r = mat;
  for (auto& e : r.entries) e = e * factor;
  return r;
}

PolyMatrix raw_matrix(const MarkedGraph& g) {
  return scale_matrix(build_matrix(g), Int(g.q() + 1));
}

}  // namespace cmg
