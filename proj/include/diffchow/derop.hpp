// Derivative operators: elements of the free commutative monoid on the m
// derivations, stored as exponent vectors.
#ifndef DIFFCHOW_DEROP_HPP
#define DIFFCHOW_DEROP_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "diffchow/numeric.hpp"

namespace diffchow {

struct DerOp {
  std::vector<std::uint32_t> exps;

  DerOp() = default;
  explicit DerOp(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  static DerOp identity(std::size_t m) {
    return DerOp(std::vector<std::uint32_t>(m, 0));
  }
  static DerOp single(std::size_t m, std::size_t i, std::uint32_t k = 1) {
    DerOp op = identity(m);
    op.exps[i] = k;
    return op;
  }

  std::size_t arity() const { return exps.size(); }

  unsigned order() const {
    return std::accumulate(exps.begin(), exps.end(), 0u);
  }

  bool is_identity() const {
    return std::all_of(exps.begin(), exps.end(),
                       [](std::uint32_t a) { return a == 0; });
  }

  DerOp times(const DerOp& o) const {
    DerOp r = *this;
    for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
    return r;
  }

  // Componentwise quotient when `den` divides this operator.
  std::optional<DerOp> divide_by(const DerOp& den) const {
    DerOp r = *this;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (den.exps[i] > exps[i]) return std::nullopt;
      r.exps[i] -= den.exps[i];
    }
    return r;
  }

  bool divides(const DerOp& num) const {
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > num.exps[i]) return false;
    return true;
  }

  friend auto operator<=>(const DerOp&, const DerOp&) = default;
};

inline unsigned derop_order(const DerOp& op) { return op.order(); }

inline DerOp derop_lcm(const DerOp& a, const DerOp& b) {
  DerOp r = a;
  for (std::size_t i = 0; i < r.exps.size(); ++i)
    r.exps[i] = std::max(a.exps[i], b.exps[i]);
  return r;
}

// Product of binomial coefficients prod C(theta_i, tau_i); zero when tau
// does not divide theta.
inline Z derop_binom(const DerOp& theta, const DerOp& tau) {
  Z r(1);
  for (std::size_t i = 0; i < theta.exps.size(); ++i)
    r *= binomial(theta.exps[i], tau.exps[i]);
  return r;
}

// Quotient plus the binomial factor prod C(num_i, den_i), absent when den
// does not divide num componentwise.
inline std::optional<std::pair<DerOp, Z>> derop_divide(const DerOp& num,
                                                       const DerOp& den) {
  auto quot = num.divide_by(den);
  if (!quot) return std::nullopt;
  return std::make_pair(*quot, derop_binom(num, den));
}

namespace detail {
inline void enum_exps(std::size_t m, unsigned budget, std::size_t pos,
                      std::vector<std::uint32_t>& cur,
                      std::vector<DerOp>& out) {
  if (pos == m) {
    out.emplace_back(cur);
    return;
  }
  for (std::uint32_t e = 0; e <= budget; ++e) {
    cur[pos] = e;
    enum_exps(m, budget - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}
}  // namespace detail

// All operators of order <= s, graded by order then lex; deterministic.
inline std::vector<DerOp> derops_up_to(std::size_t m, unsigned s) {
  std::vector<DerOp> all;
  std::vector<std::uint32_t> cur(m, 0);
  detail::enum_exps(m, s, 0, cur, all);
  std::sort(all.begin(), all.end(), [](const DerOp& a, const DerOp& b) {
    unsigned oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.exps < b.exps;
  });
  return all;
}

// All divisors tau | theta, in graded-lex order.
inline std::vector<DerOp> derop_divisors(const DerOp& theta) {
  std::vector<DerOp> out;
  std::vector<std::uint32_t> cur(theta.arity(), 0);
  std::size_t total = 1;
  for (auto e : theta.exps) total *= e + 1;
  out.reserve(total);
  for (;;) {
    out.emplace_back(cur);
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == theta.exps[i]) cur[i++] = 0;
    if (i == cur.size()) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end(), [](const DerOp& a, const DerOp& b) {
    unsigned oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.exps < b.exps;
  });
  return out;
}

}  // namespace diffchow

#endif
