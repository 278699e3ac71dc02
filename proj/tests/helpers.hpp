// Shared test utilities: seeded random generators, exact evaluation of
// differential polynomials (plain rationals and first-order dual numbers),
// and independent oracles kept apart from the library code they check.
#ifndef DIFFCHOW_TESTS_HELPERS_HPP
#define DIFFCHOW_TESTS_HELPERS_HPP

#include <iostream>
#include <map>
#include <random>
#include <vector>

#include "diffchow/diffpoly.hpp"
#include "diffchow/ranking.hpp"
#include "diffchow/selfcheck.hpp"

namespace testutil {

using namespace diffchow;

// every basis and every reduction self-verifies in test builds
inline const bool selfcheck_on = [] {
  SelfCheck::enable_all();
  return true;
}();

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  std::cout << "seed: " << seed << "\n";
  return std::mt19937_64(seed);
}

inline Q rand_q(std::mt19937_64& rng, long lo = -4, long hi = 4) {
  std::uniform_int_distribution<long> num(lo, hi), den(1, 3);
  Q q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Q rand_q_nonzero(std::mt19937_64& rng, long lo = -4, long hi = 4) {
  for (;;) {
    Q q = rand_q(rng, lo, hi);
    if (q != 0) return q;
  }
}

inline DerOp rand_derop(std::mt19937_64& rng, std::size_t m, unsigned maxord) {
  std::uniform_int_distribution<unsigned> ord(0, maxord);
  unsigned budget = ord(rng);
  DerOp op = DerOp::identity(m);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  for (unsigned i = 0; i < budget; ++i) ++op.exps[pick(rng)];
  return op;
}

inline DiffVar rand_var(std::mt19937_64& rng, const Ctx& ctx, unsigned maxord) {
  std::uniform_int_distribution<std::size_t> pick(0, ctx->size() - 1);
  return DiffVar(static_cast<std::uint32_t>(pick(rng)),
                 rand_derop(rng, ctx->m, maxord));
}

inline DiffMonomial rand_monomial(std::mt19937_64& rng, const Ctx& ctx,
                                  unsigned maxord, unsigned maxdeg) {
  std::uniform_int_distribution<unsigned> deg(0, maxdeg);
  unsigned d = deg(rng);
  DiffMonomial mono;
  for (unsigned i = 0; i < d; ++i)
    mono = mono.times(DiffMonomial::var(rand_var(rng, ctx, maxord)));
  return mono;
}

inline DiffPoly rand_poly(std::mt19937_64& rng, const Ctx& ctx, unsigned maxord,
                          unsigned maxdeg, unsigned maxterms) {
  std::uniform_int_distribution<unsigned> nterms(1, maxterms);
  DiffPoly p = DiffPoly::zero(ctx);
  unsigned n = nterms(rng);
  for (unsigned i = 0; i < n; ++i)
    p += DiffPoly::monomial(ctx, rand_monomial(rng, ctx, maxord, maxdeg),
                            rand_q(rng));
  return p;
}

// exact evaluation at an assignment of rationals to jet variables
inline Q eval_at(const DiffPoly& f, const std::map<DiffVar, Q>& point) {
  Q total(0);
  for (const auto& [mono, c] : f.terms()) {
    Q term = c;
    for (const auto& [v, e] : mono.factors) {
      auto it = point.find(v);
      Q val = it == point.end() ? Q(0) : it->second;
      term *= pow_q(val, e);
    }
    total += term;
  }
  return total;
}

// first-order dual numbers a + b*h with h^2 = 0
struct Dual {
  Q a, b;
  Dual() : a(0), b(0) {}
  Dual(Q a_, Q b_) : a(std::move(a_)), b(std::move(b_)) {}
  friend Dual operator+(const Dual& x, const Dual& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend Dual operator*(const Dual& x, const Dual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const Dual& x, const Dual& y) {
    return x.a == y.a && x.b == y.b;
  }
};

inline Dual eval_dual(const DiffPoly& f, const std::map<DiffVar, Dual>& point) {
  Dual total;
  for (const auto& [mono, c] : f.terms()) {
    Dual term(c, Q(0));
    for (const auto& [v, e] : mono.factors) {
      auto it = point.find(v);
      Dual val = it == point.end() ? Dual() : it->second;
      for (std::uint32_t k = 0; k < e; ++k) term = term * val;
    }
    total = total + term;
  }
  return total;
}

// Sylvester-determinant resultant of two quadratics a x^2 + b x + c and
// a' x^2 + b' x + c', expanded by cofactors; independent of the library's
// elimination path.
inline DiffPoly resultant_of_quadratics(const DiffPoly& a, const DiffPoly& b,
                                        const DiffPoly& c, const DiffPoly& ap,
                                        const DiffPoly& bp,
                                        const DiffPoly& cp) {
  DiffPoly z = DiffPoly::zero(a.ctx());
  std::vector<std::vector<DiffPoly>> s{{a, b, c, z},
                                       {z, a, b, c},
                                       {ap, bp, cp, z},
                                       {z, ap, bp, cp}};
  // 4x4 determinant by Laplace expansion along the first row
  auto det3 = [&](const std::vector<std::vector<DiffPoly>>& t) {
    return t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
           t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
           t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
  };
  DiffPoly det = DiffPoly::zero(a.ctx());
  for (int col = 0; col < 4; ++col) {
    std::vector<std::vector<DiffPoly>> minor;
    for (int row = 1; row < 4; ++row) {
      std::vector<DiffPoly> r;
      for (int cc = 0; cc < 4; ++cc)
        if (cc != col) r.push_back(s[row][cc]);
      minor.push_back(std::move(r));
    }
    DiffPoly term = s[0][col] * det3(minor);
    det = (col % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace testutil

#endif
