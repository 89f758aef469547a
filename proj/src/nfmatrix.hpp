#ifndef CMG_NFMATRIX_HPP
#define CMG_NFMATRIX_HPP

#include <vector>

#include <json.hpp>

#include "group.hpp"
#include "poly.hpp"

namespace cmg {

// A_r(x) = sum over |k|_1 = r of multinomial(r;k)^2 x^k; A_0 = 1
MPoly poly_A(int r, int m);

// normalized edge marking polynomial c_q(l); half-integer prefactor
// x^{(l+ + l-)/2}, integer coefficients
MPoly edge_coeff(const Edge& e, int q, int m);

// a(x) with (q+1) a(x) = sum_i n_i d/dx_i A_{q+1}(x); integer coefficients,
// the exact division by q+1 is asserted on every call
MPoly linear_form(const std::vector<int>& a, int q, int m);

// diagonal entry of the normalized matrix at vertex (a, sigma):
// a(x) for sigma=+1, -a(x) + 2(q+1) A_q(x) for sigma=-1
MPoly diag_entry(const GElem& v, int q, int m);

struct PolyMatrix {
  int q = 0;
  int m = 0;
  int dim = 0;
  std::vector<GElem> vertex_order;
  std::vector<MPoly> entries;  // row-major

  const MPoly& at(int i, int j) const { return entries.at(i * dim + j); }
  MPoly& at(int i, int j) { return entries.at(i * dim + j); }
  nlohmann::json to_json() const;
};

// normalized matrix of a connected complete colored marked graph; rows and
// columns follow the sorted vertex order
PolyMatrix build_matrix(const MarkedGraph& g);

PolyMatrix scale_matrix(const PolyMatrix& mat, const Int& factor);
// the un-normalized matrix (q+1) * build_matrix(g)
PolyMatrix raw_matrix(const MarkedGraph& g);

}  // namespace cmg

#endif
