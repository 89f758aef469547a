#include "poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cmg {

namespace {

void check_same_nvars(const MPoly& a, const MPoly& b) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("variable count mismatch");
}

void check_index(int nvars, int index) {
  if (index < 1 || index > nvars)
    throw std::invalid_argument("variable index out of range");
}

Exp exp_add(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    unsigned s = static_cast<unsigned>(a[i]) + b[i];
    if (s > 0xffffu) throw std::overflow_error("exponent overflow");
    r[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

}  // namespace

void MPoly::add_term(const Exp& e, const Int& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly MPoly::constant(int nvars, Int c) {
  MPoly p(nvars);
  if (c != 0) p.terms_.emplace(Exp(nvars, 0), std::move(c));
  return p;
}

MPoly MPoly::variable(int nvars, int index) {
  check_index(nvars, index);
  MPoly p(nvars);
  Exp e(nvars, 0);
  e[index - 1] = 2;
  p.terms_.emplace(std::move(e), 1);
  return p;
}

MPoly MPoly::monomial(int nvars, Exp e, Int c) {
  if (static_cast<int>(e.size()) != nvars)
    throw std::invalid_argument("exponent vector length mismatch");
  MPoly p(nvars);
  if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
  return p;
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_same_nvars(*this, o);
  MPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  check_same_nvars(*this, o);
  MPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MPoly MPoly::operator*(const Int& c) const {
  MPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  check_same_nvars(*this, o);
  MPoly r(nvars_);
  if (is_zero() || o.is_zero()) return r;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(exp_add(ea, eb), ca * cb);
  return r;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly r = MPoly::constant(nvars_, 1);
  MPoly b = *this;
  while (k) {
    if (k & 1u) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

MPoly MPoly::partial(int index) const {
  check_index(nvars_, index);
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    int d = e[index - 1];
    if (d == 0) continue;
    if (d % 2 != 0)
      throw std::domain_error(
          "partial derivative of a half-integer exponent is unsupported");
    Exp ne = e;
    ne[index - 1] = static_cast<std::uint16_t>(d - 2);
    r.add_term(ne, c * (d / 2));
  }
  return r;
}

MPoly MPoly::specialize(const Assignment& assign) const {
  // resolve chains x_i -> x_j -> ... to a final target, rejecting cycles
  std::map<int, SpecTarget> resolved;
  for (const auto& [var, tgt] : assign) {
    check_index(nvars_, var);
    std::set<int> seen{var};
    SpecTarget cur = tgt;
    while (cur.kind == SpecTarget::Kind::Variable) {
      check_index(nvars_, cur.var);
      auto it = assign.find(cur.var);
      if (it == assign.end()) break;
      const SpecTarget& nxt = it->second;
      if (nxt.kind == SpecTarget::Kind::Variable && nxt.var == cur.var)
        break;  // x_j -> x_j terminates the chain
      if (!seen.insert(cur.var).second)
        throw std::invalid_argument("cyclic variable substitution");
      cur = nxt;
    }
    resolved.emplace(var, cur);
  }

  auto bump = [](Exp& e, int slot, int d) {
    unsigned s = static_cast<unsigned>(e[slot]) + static_cast<unsigned>(d);
    if (s > 0xffffu) throw std::overflow_error("exponent overflow");
    e[slot] = static_cast<std::uint16_t>(s);
  };

  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exp ne(nvars_, 0);
    Int nc = c;
    bool dead = false;
    for (int i = 0; i < nvars_ && !dead; ++i) {
      int d = e[i];
      if (d == 0) continue;
      auto it = resolved.find(i + 1);
      if (it == resolved.end()) {
        bump(ne, i, d);
        continue;
      }
      const SpecTarget& t = it->second;
      switch (t.kind) {
        case SpecTarget::Kind::Zero:
          dead = true;
          break;
        case SpecTarget::Kind::Variable:
          bump(ne, t.var - 1, d);
          break;
        case SpecTarget::Kind::Value: {
          if (t.val == 0) {
            dead = true;
            break;
          }
          if (d % 2 != 0) {
            bool exact = false;
            Int s = isqrt(t.val, &exact);
            if (!exact)
              throw std::domain_error(
                  "substitution of a non-square integer into a half-integer "
                  "exponent");
            nc *= int_pow(s, static_cast<unsigned>(d));
          } else {
            nc *= int_pow(t.val, static_cast<unsigned>(d / 2));
          }
          break;
        }
      }
    }
    if (!dead) r.add_term(ne, nc);
  }
  return r;
}

MPoly MPoly::reduce_mod(const Int& prime) const {
  if (prime < 2) throw std::invalid_argument("modulus must be >= 2");
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Int m = c % prime;
    if (m < 0) m += prime;
    if (m != 0) r.terms_.emplace(e, m);
  }
  return r;
}

std::optional<MPoly> MPoly::sqrt() const {
  if (is_zero()) return MPoly(nvars_);
  // squareness is decided in the integer-exponent ring: a square of an
  // integer-exponent polynomial never has half-integer exponents, and the
  // candidate root must itself land on integer exponents
  if (!integer_exponents()) return std::nullopt;
  auto lead = terms_.rbegin();
  const Exp& le = lead->first;
  Exp s0e(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    if (le[i] % 4 != 0) return std::nullopt;
    s0e[i] = static_cast<std::uint16_t>(le[i] / 2);
  }
  bool exact = false;
  Int s0c = isqrt(lead->second, &exact);
  if (!exact) return std::nullopt;

  // peel terms of the root in descending lex order: the next term u satisfies
  // lt(rem) = 2 s0 u
  MPoly s = MPoly::monomial(nvars_, s0e, s0c);
  MPoly rem = *this - s * s;
  Exp prev_ue = s0e;
  while (!rem.is_zero()) {
    auto lt = rem.terms_.rbegin();
    Exp ue(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      if (lt->first[i] < s0e[i]) return std::nullopt;
      ue[i] = static_cast<std::uint16_t>(lt->first[i] - s0e[i]);
    }
    bool int_exp = true;
    for (int i = 0; i < nvars_; ++i)
      if (ue[i] % 2 != 0) int_exp = false;
    if (!int_exp) return std::nullopt;
    if (!(ue < prev_ue)) return std::nullopt;  // root terms must descend
    Int twice = 2 * s0c;
    if (lt->second % twice != 0) return std::nullopt;
    MPoly u = MPoly::monomial(nvars_, ue, lt->second / twice);
    rem = rem - (s * u) * Int(2) - u * u;
    s = s + u;
    prev_ue = ue;
  }
  if (!(s * s == *this)) return std::nullopt;
  return s;
}

MPoly MPoly::divexact(const MPoly& d) const {
  check_same_nvars(*this, d);
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  MPoly rem = *this;
  MPoly quo(nvars_);
  auto dl = d.terms_.rbegin();
  while (!rem.is_zero()) {
    auto rl = rem.terms_.rbegin();
    Exp qe(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      if (rl->first[i] < dl->first[i])
        throw std::domain_error("inexact polynomial division");
      qe[i] = static_cast<std::uint16_t>(rl->first[i] - dl->first[i]);
    }
    if (rl->second % dl->second != 0)
      throw std::domain_error("inexact polynomial division");
    MPoly qt = MPoly::monomial(nvars_, qe, rl->second / dl->second);
    quo = quo + qt;
    rem = rem - qt * d;
  }
  return quo;
}

Int MPoly::eval(const std::vector<Int>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("evaluation point length mismatch");
  Int sum = 0;
  for (const auto& [e, c] : terms_) {
    Int v = c;
    for (int i = 0; i < nvars_; ++i) {
      int d = e[i];
      if (d == 0) continue;
      if (d % 2 == 0) {
        v *= int_pow(point[i], static_cast<unsigned>(d / 2));
      } else {
        bool exact = false;
        Int s = isqrt(point[i], &exact);
        if (!exact)
          throw std::domain_error(
              "evaluation of a half-integer exponent at a non-square point");
        v *= int_pow(s, static_cast<unsigned>(d));
      }
    }
    sum += v;
  }
  return sum;
}

Int MPoly::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

Int MPoly::coeff_pure_power(int index, int k) const {
  check_index(nvars_, index);
  Exp e(nvars_, 0);
  e[index - 1] = static_cast<std::uint16_t>(2 * k);
  return coeff(e);
}

int MPoly::min_doubled_exp(int index) const {
  check_index(nvars_, index);
  if (is_zero()) throw std::domain_error("zero polynomial");
  int m = -1;
  for (const auto& [e, c] : terms_) {
    int d = e[index - 1];
    if (m < 0 || d < m) m = d;
  }
  return m;
}

bool MPoly::integer_exponents() const {
  for (const auto& [e, c] : terms_)
    for (auto d : e)
      if (d % 2 != 0) return false;
  return true;
}

namespace {

std::string render_monomial(const Exp& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    int d = e[i];
    if (d == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (d == 2) continue;
    if (d % 2 == 0)
      s += "^" + std::to_string(d / 2);
    else
      s += "^(" + std::to_string(d) + "/2)";
  }
  return s;
}

}  // namespace

std::string MPoly::render() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool neg = c < 0;
    Int mag = neg ? Int(-c) : c;
    std::string mono = render_monomial(e);
    std::string body;
    if (mono.empty())
      body = mag.str();
    else if (mag == 1)
      body = mono;
    else
      body = mag.str() + "*" + mono;
    if (first) {
      out += (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

nlohmann::json MPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : terms_) {
    nlohmann::json t;
    t["exponents_doubled"] = e;
    t["coeff"] = c.str();
    terms.push_back(std::move(t));
  }
  return nlohmann::json{{"nvars", nvars_}, {"terms", std::move(terms)}};
}

MPoly MPoly::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("terms"))
    throw std::invalid_argument("malformed polynomial JSON");
  int nv = j.at("nvars").get<int>();
  if (nv < 0) throw std::invalid_argument("negative variable count");
  MPoly p(nv);
  for (const auto& t : j.at("terms")) {
    auto raw = t.at("exponents_doubled").get<std::vector<long>>();
    if (static_cast<int>(raw.size()) != nv)
      throw std::invalid_argument("exponent vector length mismatch");
    Exp e(nv);
    for (int i = 0; i < nv; ++i) {
      if (raw[i] < 0 || raw[i] > 0xffff)
        throw std::invalid_argument("exponent out of range");
      e[i] = static_cast<std::uint16_t>(raw[i]);
    }
    Int c(t.at("coeff").get<std::string>());
    p.add_term(e, c);
  }
  return p;
}

// ---------------------------------------------------------------------------
// TPoly

void TPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TPoly TPoly::from_coeffs(int nvars, std::vector<MPoly> coeffs) {
  TPoly p(nvars);
  for (const auto& c : coeffs)
    if (c.nvars() != nvars)
      throw std::invalid_argument("variable count mismatch");
  p.c_ = std::move(coeffs);
  p.normalize();
  return p;
}

const MPoly& TPoly::lc() const {
  if (is_zero()) throw std::domain_error("zero polynomial has no leading coefficient");
  return c_.back();
}

MPoly TPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return MPoly(nvars_);
  return c_[k];
}

bool TPoly::monic() const {
  return !is_zero() && lc() == MPoly::constant(nvars_, 1);
}

TPoly TPoly::operator+(const TPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  std::vector<MPoly> c(std::max(c_.size(), o.c_.size()), MPoly(nvars_));
  for (std::size_t i = 0; i < c.size(); ++i) {
    MPoly s(nvars_);
    if (i < c_.size()) s = s + c_[i];
    if (i < o.c_.size()) s = s + o.c_[i];
    c[i] = std::move(s);
  }
  return from_coeffs(nvars_, std::move(c));
}

TPoly TPoly::operator-(const TPoly& o) const { return *this + (-o); }

TPoly TPoly::operator-() const {
  std::vector<MPoly> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(-x);
  return from_coeffs(nvars_, std::move(c));
}

TPoly TPoly::operator*(const TPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  if (is_zero() || o.is_zero()) return TPoly(nvars_);
  std::vector<MPoly> c(c_.size() + o.c_.size() - 1, MPoly(nvars_));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      c[i + j] = c[i + j] + c_[i] * o.c_[j];
  return from_coeffs(nvars_, std::move(c));
}

TPoly TPoly::scaled(const MPoly& f) const {
  std::vector<MPoly> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x * f);
  return from_coeffs(nvars_, std::move(c));
}

TPoly TPoly::derivative() const {
  if (degree() <= 0) return TPoly(nvars_);
  std::vector<MPoly> c(c_.size() - 1, MPoly(nvars_));
  for (std::size_t k = 1; k < c_.size(); ++k)
    c[k - 1] = c_[k] * Int(static_cast<long>(k));
  return from_coeffs(nvars_, std::move(c));
}

TPoly TPoly::opposite_companion() const {
  if (is_zero()) return TPoly(nvars_);
  int n = degree();
  std::vector<MPoly> c(c_.size(), MPoly(nvars_));
  for (std::size_t k = 0; k < c_.size(); ++k) {
    // (-1)^n * (-1)^k
    bool flip = ((n - static_cast<int>(k)) % 2) != 0;
    c[k] = flip ? -c_[k] : c_[k];
  }
  return from_coeffs(nvars_, std::move(c));
}

TPoly TPoly::specialize(const Assignment& assign) const {
  std::vector<MPoly> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x.specialize(assign));
  return from_coeffs(nvars_, std::move(c));
}

TPoly TPoly::reduce_mod(const Int& prime) const {
  std::vector<MPoly> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x.reduce_mod(prime));
  return from_coeffs(nvars_, std::move(c));
}

std::vector<Int> TPoly::eval_coeffs(const std::vector<Int>& point) const {
  std::vector<Int> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x.eval(point));
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::string TPoly::render() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const MPoly& c = c_[k];
    if (c.is_zero()) continue;
    bool neg = c.terms().begin()->second < 0;
    MPoly body = neg ? -c : c;
    std::string tpart;
    if (k >= 2)
      tpart = "t^" + std::to_string(k);
    else if (k == 1)
      tpart = "t";
    std::string piece;
    if (k == 0) {
      piece = body.term_count() > 1 && !first ? "(" + body.render() + ")"
                                              : body.render();
    } else if (body == MPoly::constant(nvars_, 1)) {
      piece = tpart;
    } else if (body.term_count() == 1) {
      piece = body.render() + "*" + tpart;
    } else {
      piece = "(" + body.render() + ")*" + tpart;
    }
    if (first) {
      out += (neg ? "-" : "") + piece;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

nlohmann::json TPoly::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : c_) coeffs.push_back(c.to_json());
  return nlohmann::json{
      {"nvars", nvars_}, {"degree", degree()}, {"coeffs", std::move(coeffs)}};
}

TPoly TPoly::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("coeffs"))
    throw std::invalid_argument("malformed t-polynomial JSON");
  int nv = j.at("nvars").get<int>();
  std::vector<MPoly> c;
  for (const auto& cj : j.at("coeffs")) c.push_back(MPoly::from_json(cj));
  return from_coeffs(nv, std::move(c));
}

// ---------------------------------------------------------------------------
// Resultants

namespace {

// pseudo-remainder: lc(B)^{deg A - deg B + 1} A  mod  B
TPoly prem(TPoly a, const TPoly& b) {
  int db = b.degree();
  const MPoly& lb = b.lc();
  int steps = a.degree() - db + 1;
  int done = 0;
  while (!a.is_zero() && a.degree() >= db) {
    int shift = a.degree() - db;
    const MPoly top = a.lc();
    std::vector<MPoly> c(a.coeffs().size(), MPoly(a.nvars()));
    // lb * a - top * t^shift * b
    for (int k = 0; k <= a.degree(); ++k) c[k] = a.coeff(k) * lb;
    for (int k = 0; k <= db; ++k)
      c[k + shift] = c[k + shift] - top * b.coeff(k);
    a = TPoly::from_coeffs(a.nvars(), std::move(c));
    ++done;
  }
  // pad remaining multiplications so the full lc(B)^{delta+1} factor is applied
  for (; done < steps; ++done) a = a.scaled(lb);
  return a;
}

}  // namespace

MPoly tp_resultant(const TPoly& p, const TPoly& q) {
  if (p.nvars() != q.nvars())
    throw std::invalid_argument("variable count mismatch");
  if (p.is_zero() || q.is_zero())
    throw std::invalid_argument("resultant of zero polynomial");
  int nv = p.nvars();
  TPoly a = p, b = q;
  int sign = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() % 2) && (b.degree() % 2)) sign = -sign;
  }
  if (b.degree() == 0) {
    MPoly r = b.lc().pow(static_cast<unsigned>(a.degree()));
    return sign < 0 ? -r : r;
  }
  MPoly g = MPoly::constant(nv, 1);
  MPoly h = MPoly::constant(nv, 1);
  while (b.degree() > 0) {
    int delta = a.degree() - b.degree();
    if ((a.degree() % 2) && (b.degree() % 2)) sign = -sign;
    TPoly r = prem(a, b);
    a = b;
    MPoly denom = g * h.pow(static_cast<unsigned>(delta));
    if (r.is_zero()) {
      b = TPoly(nv);
    } else {
      std::vector<MPoly> c;
      for (int k = 0; k <= r.degree(); ++k)
        c.push_back(r.coeff(k).divexact(denom));
      b = TPoly::from_coeffs(nv, std::move(c));
    }
    if (b.is_zero()) return MPoly(nv);  // nontrivial common factor
    g = a.lc();
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = g.pow(static_cast<unsigned>(delta)).divexact(
          h.pow(static_cast<unsigned>(delta - 1)));
  }
  // res = lc(B)^{deg A} / h^{deg A - 1}
  MPoly num = b.lc().pow(static_cast<unsigned>(a.degree()));
  MPoly res = num.divexact(h.pow(static_cast<unsigned>(a.degree() - 1)));
  return sign < 0 ? -res : res;
}

namespace {

// cofactor-expansion determinant over MPoly; test-scale sizes only
MPoly det_cofactor(const std::vector<std::vector<MPoly>>& m, int nv) {
  std::size_t n = m.size();
  if (n == 0) return MPoly::constant(nv, 1);
  if (n == 1) return m[0][0];
  MPoly det(nv);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<MPoly>> minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<MPoly> row;
      row.reserve(n - 1);
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    MPoly term = m[0][j] * det_cofactor(minor, nv);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace

MPoly tp_resultant_sylvester(const TPoly& p, const TPoly& q) {
  if (p.nvars() != q.nvars())
    throw std::invalid_argument("variable count mismatch");
  if (p.is_zero() || q.is_zero())
    throw std::invalid_argument("resultant of zero polynomial");
  int nv = p.nvars();
  int dp = p.degree(), dq = q.degree();
  int n = dp + dq;
  if (n == 0) return MPoly::constant(nv, 1);
  std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n, MPoly(nv)));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) m[r][r + dp - k] = p.coeff(k);
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) m[dq + r][r + dq - k] = q.coeff(k);
  return det_cofactor(m, nv);
}

MPoly tp_discriminant(const TPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("discriminant of zero polynomial");
  int n = p.degree();
  if (n == 0) return MPoly::constant(p.nvars(), 1);
  MPoly res = tp_resultant(p, p.derivative());
  bool flip = ((n * (n - 1) / 2) % 2) != 0;
  MPoly d = res.divexact(p.lc());
  return flip ? -d : d;
}

}  // namespace cmg
