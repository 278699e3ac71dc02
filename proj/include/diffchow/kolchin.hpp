// Numerical polynomials in the binomial basis, the omega_E lattice count,
// Kolchin polynomials read off characteristic-set leaders, and the
// Chow-admissible shape test.
#ifndef DIFFCHOW_KOLCHIN_HPP
#define DIFFCHOW_KOLCHIN_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "diffchow/numeric.hpp"
#include "diffchow/ranking.hpp"
#include "diffchow/reduction.hpp"

namespace diffchow {

// omega(t) = sum_{i=0}^m a_i * C(t+i, i) with rational a_i.
struct NumericalPolynomial {
  std::size_t m = 0;
  std::vector<Q> coeffs;  // size m+1

  NumericalPolynomial() = default;
  explicit NumericalPolynomial(std::size_t m_) : m(m_), coeffs(m_ + 1, Q(0)) {}

  static NumericalPolynomial zero(std::size_t m) {
    return NumericalPolynomial(m);
  }

  // The basis element C(t+i, i).
  static NumericalPolynomial basis(std::size_t m, std::size_t i) {
    NumericalPolynomial p(m);
    p.coeffs[i] = 1;
    return p;
  }

  Q eval(long t) const {
    Q r(0);
    for (std::size_t i = 0; i <= m; ++i)
      if (coeffs[i] != 0)
        r += coeffs[i] * binomial_poly(Q(t + static_cast<long>(i)),
                                       static_cast<unsigned>(i));
    return r;
  }

  int degree() const {
    for (std::size_t i = m + 1; i-- > 0;)
      if (coeffs[i] != 0) return static_cast<int>(i);
    return -1;
  }

  bool is_zero() const { return degree() < 0; }

  // Coefficients in the power basis 1, t, ..., t^m.
  std::vector<Q> power_coeffs() const {
    std::vector<Q> out(m + 1, Q(0));
    for (std::size_t i = 0; i <= m; ++i) {
      if (coeffs[i] == 0) continue;
      // expand C(t+i, i) = prod_{k=1..i} (t+k) / i!
      std::vector<Q> poly{Q(1)};
      for (std::size_t k = 1; k <= i; ++k) {
        std::vector<Q> next(poly.size() + 1, Q(0));
        for (std::size_t j = 0; j < poly.size(); ++j) {
          next[j + 1] += poly[j];
          next[j] += poly[j] * Q(static_cast<long>(k));
        }
        poly = std::move(next);
      }
      Z fact;
      mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(i));
      for (std::size_t j = 0; j < poly.size(); ++j) {
        Q c = poly[j] / Q(fact);
        c.canonicalize();
        out[j] += coeffs[i] * c;
      }
    }
    return out;
  }

  // Interpolate from values at t = 0, 1, ..., m.
  static NumericalPolynomial from_values(std::size_t m,
                                         const std::vector<Q>& values) {
    std::size_t n = m + 1;
    std::vector<std::vector<Q>> a(n, std::vector<Q>(n + 1, Q(0)));
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t i = 0; i < n; ++i)
        a[t][i] = Q(binomial(static_cast<unsigned long>(t + i),
                             static_cast<unsigned long>(i)));
      a[t][n] = values[t];
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && a[piv][col] == 0) ++piv;
      std::swap(a[piv], a[col]);
      for (std::size_t row = 0; row < n; ++row) {
        if (row == col || a[row][col] == 0) continue;
        Q f = a[row][col] / a[col][col];
        for (std::size_t k = col; k <= n; ++k) a[row][k] -= f * a[col][k];
      }
    }
    NumericalPolynomial p(m);
    for (std::size_t i = 0; i < n; ++i) p.coeffs[i] = a[i][n] / a[i][i];
    return p;
  }

  // The polynomial t -> C(t - c + m, m).
  static NumericalPolynomial shifted_binomial(std::size_t m, long c) {
    std::vector<Q> values;
    for (long t = 0; t <= static_cast<long>(m); ++t)
      values.push_back(
          binomial_poly(Q(t - c + static_cast<long>(m)), static_cast<unsigned>(m)));
    return from_values(m, values);
  }

  NumericalPolynomial& operator+=(const NumericalPolynomial& o) {
    for (std::size_t i = 0; i <= m; ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  NumericalPolynomial& operator-=(const NumericalPolynomial& o) {
    for (std::size_t i = 0; i <= m; ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  friend NumericalPolynomial operator+(NumericalPolynomial a,
                                       const NumericalPolynomial& b) {
    return a += b;
  }
  friend NumericalPolynomial operator-(NumericalPolynomial a,
                                       const NumericalPolynomial& b) {
    return a -= b;
  }
  friend NumericalPolynomial operator*(const Q& c, NumericalPolynomial p) {
    for (auto& a : p.coeffs) a *= c;
    return p;
  }
  friend bool operator==(const NumericalPolynomial&,
                         const NumericalPolynomial&) = default;
};

// A finite antichain in N^m; construction reduces to minimal elements under
// the product order.
struct ExponentSet {
  std::size_t m = 1;
  std::vector<std::vector<std::uint32_t>> points;

  ExponentSet() = default;
  ExponentSet(std::size_t m_, std::vector<std::vector<std::uint32_t>> pts)
      : m(m_) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto dominates = [](const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b) {
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
      return true;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
      bool minimal = true;
      for (std::size_t j = 0; j < pts.size() && minimal; ++j)
        if (i != j && dominates(pts[i], pts[j]) && pts[i] != pts[j])
          minimal = false;
      if (minimal) points.push_back(pts[i]);
    }
  }

  bool empty() const { return points.empty(); }
};

// Brute-force count of v in N^m with |v| <= t dominating no element of E.
inline long omega_brute(const ExponentSet& e, long t) {
  if (t < 0) return 0;
  long count = 0;
  std::vector<std::uint32_t> v(e.m, 0);
  auto blocked = [&](const std::vector<std::uint32_t>& w) {
    for (const auto& p : e.points) {
      bool ge = true;
      for (std::size_t i = 0; i < e.m; ++i)
        if (w[i] < p[i]) {
          ge = false;
          break;
        }
      if (ge) return true;
    }
    return false;
  };
  // enumerate all v with coordinate sum <= t
  std::vector<long> stack;
  auto rec = [&](auto&& self, std::size_t pos, long budget) -> void {
    if (pos == e.m) {
      if (!blocked(v)) ++count;
      return;
    }
    for (long x = 0; x <= budget; ++x) {
      v[pos] = static_cast<std::uint32_t>(x);
      self(self, pos + 1, budget - x);
    }
    v[pos] = 0;
  };
  rec(rec, 0, t);
  return count;
}

struct OmegaResult {
  NumericalPolynomial poly;
  long threshold = 0;  // closed form equals the count for all t >= threshold
};

// Closed form by inclusion-exclusion over subsets S of the minimal elements:
// #{v >= lub(S), |v| <= t} = C(t - |lub(S)| + m, m).
inline OmegaResult omega_E(const ExponentSet& e) {
  OmegaResult out;
  out.poly = NumericalPolynomial::zero(e.m);
  std::size_t k = e.points.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::uint32_t> lub(e.m, 0);
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) {
        ++bits;
        for (std::size_t c = 0; c < e.m; ++c)
          lub[c] = std::max(lub[c], e.points[i][c]);
      }
    long lsum = 0;
    for (auto x : lub) lsum += x;
    out.threshold = std::max(out.threshold, lsum);
    NumericalPolynomial term =
        NumericalPolynomial::shifted_binomial(e.m, lsum);
    if (bits % 2 == 0)
      out.poly += term;
    else
      out.poly -= term;
  }
  return out;
}

// Per-variable leader exponent sets of a characteristic set under an
// orderly ranking; absent entry = parametric variable.
struct CharSetSummary {
  std::size_t n = 0;
  std::size_t m = 1;
  std::vector<std::optional<ExponentSet>> per_var;
};

inline CharSetSummary summarize_charset(const AutoreducedSet& a,
                                        const Ranking& r, const Ctx& ctx) {
  if (r.kind != Ranking::Kind::orderly)
    throw math_error("Kolchin polynomials from leaders need an orderly ranking");
  CharSetSummary s;
  s.n = ctx->size();
  s.m = ctx->m;
  std::vector<std::vector<std::vector<std::uint32_t>>> pts(s.n);
  for (const auto& p : a.elems) {
    DiffVar ld = leader_var(p, r);
    pts[ld.indet].push_back(ld.op.exps);
  }
  s.per_var.resize(s.n);
  for (std::size_t j = 0; j < s.n; ++j)
    if (!pts[j].empty()) s.per_var[j] = ExponentSet(s.m, std::move(pts[j]));
  return s;
}

// omega_P(t) = sum_j omega_{E_j}(t); parametric variables contribute the
// full C(t+m, m).
inline NumericalPolynomial kolchin_from_charset(const CharSetSummary& s) {
  NumericalPolynomial w = NumericalPolynomial::zero(s.m);
  for (const auto& ej : s.per_var) {
    if (ej)
      w += omega_E(*ej).poly;
    else
      w += NumericalPolynomial::basis(s.m, s.m);
  }
  return w;
}

// Solve w(t) == (d+1) C(t+m,m) - C(t+m-s,m) exactly; absent when no
// (d, s) with d >= 0, s >= 0 fits. d is pinned by the top binomial
// coefficient, s by the t^{m-1} power coefficient of the complement.
inline std::optional<std::pair<long, unsigned>> chow_admissible_shape(
    const NumericalPolynomial& w, std::size_t n) {
  std::size_t m = w.m;
  const Q& am = w.coeffs[m];
  if (!is_integer(am)) return std::nullopt;
  long d = static_cast<long>(am.get_num().get_si());
  if (d < 0 || static_cast<std::size_t>(d) > n) return std::nullopt;
  NumericalPolynomial g =
      Q(d + 1) * NumericalPolynomial::basis(m, m) - w;
  // g must equal C(t+m-s, m): read s off the t^{m-1} coefficient.
  std::vector<Q> pc = g.power_coeffs();
  long s = 0;
  if (m == 1) {
    // g = t + 1 - s
    Q sv = Q(1) - pc[0];
    if (!is_integer(sv)) return std::nullopt;
    s = static_cast<long>(sv.get_num().get_si());
  } else {
    Z fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    // coeff of t^{m-1} in C(t+c, m) is (m*c - m(m-1)/2) / m! with c = m - s
    Q gamma = pc[m - 1];
    Q c = (gamma * Q(fact) + Q(static_cast<long>(m * (m - 1) / 2))) /
          Q(static_cast<long>(m));
    c.canonicalize();
    if (!is_integer(c)) return std::nullopt;
    s = static_cast<long>(m) - static_cast<long>(c.get_num().get_si());
  }
  if (s < 0) return std::nullopt;
  if (g != NumericalPolynomial::shifted_binomial(m, s)) return std::nullopt;
  return std::make_pair(d, static_cast<unsigned>(s));
}

// Leaders of a Chow-admissible characteristic set: n-d-1 order-zero
// variables plus a single theta(y) of order s, all on distinct variables.
inline bool leader_structure_check(const std::vector<DiffVar>& leaders,
                                   long d, unsigned s, std::size_t n) {
  if (d < 0 || leaders.size() != n - static_cast<std::size_t>(d))
    return false;
  std::set<std::uint32_t> indets;
  for (const auto& v : leaders) indets.insert(v.indet);
  if (indets.size() != leaders.size()) return false;
  std::size_t zero_count = 0, s_count = 0;
  for (const auto& v : leaders) {
    unsigned o = v.order();
    if (o == s)
      ++s_count;
    else if (o == 0)
      ++zero_count;
    else
      return false;
  }
  if (s == 0) return zero_count == 0 && s_count == leaders.size();
  return s_count == 1 && zero_count == leaders.size() - 1;
}

}  // namespace diffchow

#endif
