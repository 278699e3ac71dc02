// Exact arithmetic aliases and small combinatorial helpers on top of GMP.
#ifndef DIFFCHOW_NUMERIC_HPP
#define DIFFCHOW_NUMERIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace diffchow {

using Z = mpz_class;
using Q = mpq_class;

inline Z binomial(unsigned long n, unsigned long k) {
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Z pow_z(const Z& base, unsigned long e) {
  Z r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Q pow_q(const Q& base, unsigned long e) {
  Q r(1);
  Q b = base;
  unsigned long n = e;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

// C(x, k) evaluated as the degree-k polynomial x(x-1)...(x-k+1)/k!,
// valid for any rational x (including negative arguments).
inline Q binomial_poly(const Q& x, unsigned k) {
  Q num(1);
  for (unsigned i = 0; i < k; ++i) num *= x - Q(static_cast<long>(i));
  Z fact;
  mpz_fac_ui(fact.get_mpz_t(), k);
  Q r = num / Q(fact);
  r.canonicalize();
  return r;
}

inline std::string q_to_string(const Q& q) { return q.get_str(); }

}  // namespace diffchow

#endif
