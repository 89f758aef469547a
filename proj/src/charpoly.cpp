#include "charpoly.hpp"

#include <stdexcept>

namespace cmg {

namespace {

// Berkowitz iteration: extend the characteristic polynomial of the leading
// r x r principal submatrix to (r+1) x (r+1) through a Toeplitz product.
std::vector<MPoly> berkowitz(const PolyMatrix& mat) {
  int n = mat.dim;
  int nv = mat.m;
  std::vector<MPoly> c;  // c[j] = coefficient of t^{r-j}, c[0] = 1
  c.push_back(MPoly::constant(nv, 1));
  for (int r = 1; r <= n; ++r) {
    // column t of the Toeplitz matrix:
    // 1, -M[r-1][r-1], -(R S), -(R B S), ..., -(R B^{r-2} S)
    std::vector<MPoly> t;
    t.push_back(MPoly::constant(nv, 1));
    t.push_back(-mat.at(r - 1, r - 1));
    if (r >= 2) {
      std::vector<MPoly> w(r - 1);
      for (int i = 0; i < r - 1; ++i) w[i] = mat.at(i, r - 1);  // S
      for (int k = 2; k <= r; ++k) {
        MPoly dot(nv);
        for (int i = 0; i < r - 1; ++i)
          dot = dot + mat.at(r - 1, i) * w[i];  // R . w
        t.push_back(-dot);
        if (k < r) {
          std::vector<MPoly> nw(r - 1, MPoly(nv));
          for (int i = 0; i < r - 1; ++i)
            for (int j = 0; j < r - 1; ++j)
              nw[i] = nw[i] + mat.at(i, j) * w[j];  // B . w
          w = std::move(nw);
        }
      }
    }
    std::vector<MPoly> nc(r + 1, MPoly(nv));
    for (int i = 0; i <= r; ++i)
      for (std::size_t j = 0; j < c.size(); ++j) {
        int ti = i - static_cast<int>(j);
        if (ti < 0 || ti >= static_cast<int>(t.size())) continue;
        nc[i] = nc[i] + t[ti] * c[j];
      }
    c = std::move(nc);
  }
  return c;
}

}  // namespace

TPoly charpoly(const PolyMatrix& mat) {
  if (mat.dim < 1) throw std::invalid_argument("empty matrix");
  if (static_cast<int>(mat.entries.size()) != mat.dim * mat.dim)
    throw std::invalid_argument("non-square entry array");
  std::vector<MPoly> desc = berkowitz(mat);
  std::vector<MPoly> coeffs(desc.size(), MPoly(mat.m));
  for (std::size_t j = 0; j < desc.size(); ++j)
    coeffs[desc.size() - 1 - j] = std::move(desc[j]);
  TPoly chi = TPoly::from_coeffs(mat.m, std::move(coeffs));
  for (const auto& co : chi.coeffs())
    if (!co.integer_exponents())
      throw std::logic_error(
          "characteristic polynomial coefficient with half-integer exponent");
  return chi;
}

TPoly charpoly(const MarkedGraph& g) { return charpoly(build_matrix(g)); }

TPoly charpoly_one_edge(const Edge& e, int q, int m) {
  if (!is_valid_edge(e.n, q)) throw std::invalid_argument("not a valid edge for this q");
  MPoly lf = linear_form(e.n, q, m);
  MPoly lbar = e.color == Color::Black
                   ? lf
                   : -lf + poly_A(q, m) * Int(2 * (q + 1));
  MPoly c = edge_coeff(e, q, m);
  MPoly c2 = c * c;
  MPoly free = e.color == Color::Black ? -c2 : c2;  // -sigma_l c(l)^2
  std::vector<MPoly> coeffs{std::move(free), -lbar, MPoly::constant(m, 1)};
  return TPoly::from_coeffs(m, std::move(coeffs));
}

nlohmann::json DeletionReport::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (std::size_t i = 0; i < components.size(); ++i)
    comps.push_back(nlohmann::json{{"graph", components[i].to_json()},
                                   {"chi", component_chis[i].render()}});
  return nlohmann::json{{"var", var},
                        {"lhs", lhs.render()},
                        {"components", std::move(comps)},
                        {"rhs", rhs.render()},
                        {"holds", holds}};
}

DeletionReport verify_deletion_factorization(const MarkedGraph& g, int var_index) {
  if (var_index < 1 || var_index > g.m())
    throw std::invalid_argument("variable index out of range");
  if (!g.connected()) throw std::invalid_argument("disconnected graph");

  Assignment at_zero{{var_index, SpecTarget::zero()}};
  DeletionReport rep;
  rep.var = var_index;
  rep.lhs = charpoly(g).specialize(at_zero);

  // components after deleting every edge whose marking touches var_index
  std::vector<std::vector<int>> adj(g.size());
  for (const auto& [i, j, e] : g.edges()) {
    if (e.n[var_index - 1] != 0) continue;
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<int> comp(g.size(), -1);
  int ncomp = 0;
  for (int s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (comp[y] < 0) {
          comp[y] = ncomp;
          stack.push_back(y);
        }
    }
    ++ncomp;
  }
  std::vector<std::vector<GElem>> parts(ncomp);
  for (int i = 0; i < g.size(); ++i) parts[comp[i]].push_back(g.vertex(i));

  rep.rhs = TPoly::from_coeffs(g.m(), {MPoly::constant(g.m(), 1)});
  for (auto& verts : parts) {
    MarkedGraph sub(g.q(), g.m(), std::move(verts));
    // markings through var_index vanish at x_var = 0, so the complete graph
    // on the component gives the same specialized polynomial as the deleted
    // graph
    TPoly chi = charpoly(sub).specialize(at_zero);
    rep.rhs = rep.rhs * chi;
    rep.components.push_back(std::move(sub));
    rep.component_chis.push_back(std::move(chi));
  }
  rep.holds = (rep.lhs == rep.rhs);
  return rep;
}

}  // namespace cmg
