#ifndef CMG_CHARPOLY_HPP
#define CMG_CHARPOLY_HPP

#include <json.hpp>

#include "nfmatrix.hpp"

namespace cmg {

// det(tI - M) by the Berkowitz division-free scheme; monic, degree = dim.
// Characteristic polynomials of graph matrices are asserted to have
// integer-exponent coefficients.
TPoly charpoly(const PolyMatrix& mat);
TPoly charpoly(const MarkedGraph& g);

// closed form for a connected one-edge graph rooted at the identity:
// t^2 - lbar(x) t - sigma_l c(l)^2
TPoly charpoly_one_edge(const Edge& e, int q, int m);

struct DeletionReport {
  int var = 0;
  TPoly lhs;                            // chi_g at x_var = 0
  std::vector<MarkedGraph> components;  // after deleting edges touching var
  std::vector<TPoly> component_chis;    // each at x_var = 0
  TPoly rhs;                            // product of the above
  bool holds = false;

  nlohmann::json to_json() const;
};

// replay of the deletion factorization: chi_g|_{x_i=0} equals the product of
// the component characteristic polynomials at x_i = 0
DeletionReport verify_deletion_factorization(const MarkedGraph& g, int var_index);

}  // namespace cmg

#endif
