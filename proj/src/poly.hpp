#ifndef CMG_POLY_HPP
#define CMG_POLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "numeric.hpp"

namespace cmg {

// Doubled exponent vector: entry d encodes the exponent d/2, so half-integer
// exponents stay in integer storage.  Length equals the variable count.
using Exp = std::vector<std::uint16_t>;

// Target of a variable substitution.
struct SpecTarget {
  enum class Kind { Zero, Variable, Value };
  Kind kind = Kind::Zero;
  int var = 0;  // 1-based, for Kind::Variable
  Int val;      // for Kind::Value

  static SpecTarget zero() { return SpecTarget{Kind::Zero, 0, 0}; }
  static SpecTarget variable(int j) { return SpecTarget{Kind::Variable, j, 0}; }
  static SpecTarget value(Int v) { return SpecTarget{Kind::Value, 0, std::move(v)}; }
};

using Assignment = std::map<int, SpecTarget>;  // 1-based variable index

// Sparse multivariate polynomial over Z in variables x1..xm with exponents in
// (1/2)Z, stored on doubled exponent vectors.  Terms are kept normalized (no
// zero coefficients) in ascending lexicographic order of the exponent vector,
// which is also the canonical print order.
class MPoly {
 public:
  explicit MPoly(int nvars = 0) : nvars_(nvars) {}

  static MPoly constant(int nvars, Int c);
  static MPoly variable(int nvars, int index);  // 1-based, exponent 1
  static MPoly monomial(int nvars, Exp e, Int c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Exp, Int>& terms() const { return terms_; }

  bool operator==(const MPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const Int& c) const;
  MPoly pow(unsigned k) const;

  // formal d/dxi; rejects terms with a half-integer exponent in xi
  MPoly partial(int index) const;

  MPoly specialize(const Assignment& assign) const;
  MPoly reduce_mod(const Int& prime) const;

  // exact square root in Z[x1..xm] (integer exponents assumed); empty when
  // the polynomial is not a perfect square
  std::optional<MPoly> sqrt() const;

  // exact division; throws std::domain_error when d does not divide
  MPoly divexact(const MPoly& d) const;

  Int eval(const std::vector<Int>& point) const;

  Int coeff(const Exp& e) const;
  // numeric coefficient of the pure monomial xi^k (integer k)
  Int coeff_pure_power(int index, int k) const;
  // minimal doubled exponent of xi across terms; nonzero polynomial required
  int min_doubled_exp(int index) const;
  bool integer_exponents() const;

  std::string render() const;
  nlohmann::json to_json() const;
  static MPoly from_json(const nlohmann::json& j);

 private:
  void add_term(const Exp& e, const Int& c);
  friend class TPoly;

  int nvars_;
  std::map<Exp, Int> terms_;
};

// Polynomial in a distinguished variable t with MPoly coefficients.
// coeffs()[k] is the coefficient of t^k; the top coefficient is nonzero
// (the zero polynomial has no coefficients).
class TPoly {
 public:
  explicit TPoly(int nvars = 0) : nvars_(nvars) {}
  static TPoly from_coeffs(int nvars, std::vector<MPoly> coeffs);

  int nvars() const { return nvars_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
  const std::vector<MPoly>& coeffs() const { return c_; }
  const MPoly& lc() const;
  MPoly coeff(int k) const;
  bool monic() const;

  bool operator==(const TPoly& o) const {
    return nvars_ == o.nvars_ && c_ == o.c_;
  }
  bool operator!=(const TPoly& o) const { return !(*this == o); }

  TPoly operator+(const TPoly& o) const;
  TPoly operator-(const TPoly& o) const;
  TPoly operator*(const TPoly& o) const;
  TPoly operator-() const;
  TPoly scaled(const MPoly& f) const;

  TPoly derivative() const;
  // (-1)^deg P(-t): monic companion whose roots are the negated roots
  TPoly opposite_companion() const;

  TPoly specialize(const Assignment& assign) const;
  TPoly reduce_mod(const Int& prime) const;
  // coefficients of the univariate integer polynomial P(t, point)
  std::vector<Int> eval_coeffs(const std::vector<Int>& point) const;

  std::string render() const;
  nlohmann::json to_json() const;
  static TPoly from_json(const nlohmann::json& j);

 private:
  int nvars_;
  std::vector<MPoly> c_;
  void normalize();
};

// Resultant with respect to t, computed by the fraction-free subresultant
// scheme (result stays in Z[x1..xm]; matches the Sylvester determinant).
MPoly tp_resultant(const TPoly& p, const TPoly& q);
// Sylvester-determinant route, kept as an independent cross-check at small
// degree.
MPoly tp_resultant_sylvester(const TPoly& p, const TPoly& q);
// Classical discriminant (-1)^{n(n-1)/2} Res(P, P') / lc(P).
MPoly tp_discriminant(const TPoly& p);

}  // namespace cmg

#endif
