#ifndef CMG_NUMERIC_HPP
#define CMG_NUMERIC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cmg {

using Int = boost::multiprecision::cpp_int;

inline Int int_pow(const Int& base, unsigned k) {
  Int r = 1, b = base;
  while (k) {
    if (k & 1u) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

// floor square root; exact flag reports whether the input is a perfect square
inline Int isqrt(const Int& x, bool* exact = nullptr) {
  if (x < 0) {
    if (exact) *exact = false;
    return 0;
  }
  Int r = boost::multiprecision::sqrt(x);
  if (exact) *exact = (r * r == x);
  return r;
}

inline bool is_perfect_square(const Int& x) {
  bool e = false;
  isqrt(x, &e);
  return e;
}

// multinomial(n; parts): zero when some part is negative or the parts do not
// sum to n
inline Int multinomial(long n, const std::vector<int>& parts) {
  if (n < 0) return 0;
  long sum = 0;
  for (int p : parts) {
    if (p < 0) return 0;
    sum += p;
  }
  if (sum != n) return 0;
  Int res = 1;
  long consumed = 0;
  for (int p : parts) {
    // res *= C(consumed + p, p), accumulated without intermediate fractions
    for (int i = 1; i <= p; ++i) {
      res = res * (consumed + i) / i;
    }
    consumed += p;
  }
  return res;
}

}  // namespace cmg

#endif
