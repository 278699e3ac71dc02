// Desk-scale checks that a coherent autoreduced set is a characteristic set
// of a prime ideal: coherence, a primality probe for asat(A) at truncation
// order max-ord(A), and a reduced-element probe on the saturation basis.
#ifndef DIFFCHOW_CHARSET_CRITERION_HPP
#define DIFFCHOW_CHARSET_CRITERION_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "diffchow/jetspace.hpp"

namespace diffchow {

namespace detail {

// --- univariate helpers over Q / F_p for the factorization probe ---

inline std::vector<Z> integer_primitive(std::vector<Q> c) {
  Z den(1);
  for (const auto& q : c) {
    Z d = q.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Z> out;
  Z g(0);
  for (const auto& q : c) {
    Q scaled = q * Q(den);
    scaled.canonicalize();
    out.push_back(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1)
    for (auto& z : out) z /= g;
  return out;
}

inline std::vector<Z> divisors_of(const Z& n0) {
  Z n = abs(n0);
  std::vector<Z> out;
  if (n == 0) return out;
  for (Z i(1); i * i <= n; ++i)
    if (n % i == 0) {
      out.push_back(i);
      if (i * i != n) out.push_back(n / i);
    }
  return out;
}

inline Q eval_univariate(const std::vector<Z>& c, const Q& x) {
  Q r(0);
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + Q(c[i]);
  return r;
}

inline std::optional<Q> rational_root(const std::vector<Z>& c) {
  if (c.size() < 2) return std::nullopt;
  if (c.front() == 0) return Q(0);
  // bail out of the divisor enumeration on huge coefficients
  if (abs(c.front()) > Z("1000000000000") || abs(c.back()) > Z("1000000000000"))
    return std::nullopt;
  for (const Z& p : divisors_of(c.front()))
    for (const Z& q : divisors_of(c.back()))
      for (int sign : {1, -1}) {
        Q cand(sign * p, q);
        cand.canonicalize();
        if (eval_univariate(c, cand) == 0) return cand;
      }
  return std::nullopt;
}

inline std::vector<unsigned> mod_p(const std::vector<Z>& c, unsigned p) {
  std::vector<unsigned> out;
  for (const auto& z : c) {
    Z r = z % static_cast<unsigned long>(p);
    if (r < 0) r += p;
    out.push_back(static_cast<unsigned>(r.get_ui()));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline unsigned inv_mod(unsigned a, unsigned p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long quot = r / nr;
    long tmp = t - quot * nt;
    t = nt;
    nt = tmp;
    tmp = r - quot * nr;
    r = nr;
    nr = tmp;
  }
  return static_cast<unsigned>(t < 0 ? t + p : t);
}

// remainder of a by b over F_p (b monic not required)
inline std::vector<unsigned> rem_mod_p(std::vector<unsigned> a,
                                       const std::vector<unsigned>& b,
                                       unsigned p) {
  unsigned binv = inv_mod(b.back(), p);
  while (a.size() >= b.size() && !a.empty()) {
    unsigned f = static_cast<unsigned>(
        (static_cast<unsigned long long>(a.back()) * binv) % p);
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      unsigned long long sub =
          (static_cast<unsigned long long>(f) * b[i]) % p;
      a[off + i] = static_cast<unsigned>((a[off + i] + p - sub) % p);
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

// brute-force irreducibility over F_p: trial division by all monic
// polynomials of degree up to deg/2
inline bool irreducible_mod_p(const std::vector<unsigned>& f, unsigned p) {
  std::size_t d = f.size() - 1;
  if (d == 1) return true;
  for (std::size_t dd = 1; dd <= d / 2; ++dd) {
    std::vector<unsigned> g(dd + 1, 0);
    g[dd] = 1;
    // iterate all choices of the lower dd coefficients
    std::vector<unsigned> idx(dd, 0);
    for (;;) {
      for (std::size_t i = 0; i < dd; ++i) g[i] = idx[i];
      if (rem_mod_p(f, g, p).empty()) return false;
      std::size_t i = 0;
      while (i < dd && idx[i] == p - 1) idx[i++] = 0;
      if (i == dd) break;
      ++idx[i];
    }
  }
  return true;
}

struct UnivariateProbe {
  enum class Verdict { irreducible, reducible, unknown };
  Verdict verdict = Verdict::unknown;
  std::string detail;
};

inline UnivariateProbe probe_univariate(const std::vector<Q>& coeffs) {
  UnivariateProbe out;
  std::vector<Z> c = integer_primitive(coeffs);
  std::size_t d = c.size() - 1;
  if (d == 0) {
    out.verdict = UnivariateProbe::Verdict::unknown;
    return out;
  }
  if (d == 1) {
    out.verdict = UnivariateProbe::Verdict::irreducible;
    return out;
  }
  if (auto root = rational_root(c)) {
    out.verdict = UnivariateProbe::Verdict::reducible;
    out.detail = "rational root " + root->get_str();
    return out;
  }
  if (d <= 3) {
    out.verdict = UnivariateProbe::Verdict::irreducible;
    out.detail = "degree <= 3 with no rational root";
    return out;
  }
  for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
    std::vector<unsigned> fp = mod_p(c, p);
    if (fp.size() != c.size()) continue;  // leading coefficient vanished
    if (irreducible_mod_p(fp, p)) {
      out.verdict = UnivariateProbe::Verdict::irreducible;
      out.detail = "irreducible mod " + std::to_string(p);
      return out;
    }
  }
  return out;
}

}  // namespace detail

struct CharsetCriterionReport {
  CoherenceReport coherence;
  enum class Primality { certified, failed, not_certified };
  Primality primality = Primality::not_certified;
  std::string primality_detail;
  unsigned order = 0;  // truncation order of the probe
  bool reduced_probe_ok = true;
  std::optional<DiffPoly> reduced_counterexample;
  bool verified = false;
};

// Prop-2.3-style criterion at desk scale. "verified at order t" means the
// set is coherent, the primality probe certified asat(A) prime in the
// order-t jet ring, and every basis element of the truncated saturation
// Ritt-reduces to zero against A.
inline CharsetCriterionReport charset_criterion(const AutoreducedSet& a,
                                                const Ranking& r) {
  CharsetCriterionReport rep;
  rep.coherence = coherence_check(a, r);
  if (a.elems.empty())
    throw math_error("charset_criterion: empty set");
  Ctx ctx = a.elems.front().ctx();
  unsigned t = 0;
  for (const auto& p : a.elems) t = std::max(t, p.order());
  rep.order = t;
  if (!rep.coherence.coherent) {
    rep.primality_detail = "skipped: set is not coherent";
    return rep;
  }

  // asat(A) at order t: the algebraic ideal of the elements themselves
  // saturated by initials and separants (no prolongations)
  JetRing jr = make_jet_ring(ctx, t);
  std::vector<gb::AlgPoly> gens;
  for (const auto& p : a.elems) gens.push_back(flatten(jr, p));
  DiffPoly h = DiffPoly::constant(ctx, Q(1));
  bool all_initials_constant = true;
  bool all_linear = true;
  for (const auto& p : a.elems) {
    LeaderData ld = leader_data(p, r);
    if (ld.degree != 1) all_linear = false;
    if (!ld.initial.is_constant()) all_initials_constant = false;
    if (!ld.initial.is_constant()) h = h * ld.initial;
    if (!ld.separant.is_constant() && !(ld.separant == ld.initial))
      h = h * ld.separant;
  }
  if (!h.is_constant()) gens = gb::saturate(gens, flatten(jr, h), jr.size());
  gb::GroebnerBasis basis = gb::buchberger(
      gens, gb::MonomialOrder::single(gb::OrderKind::grevlex, jr.size()),
      jr.alg);

  if (basis.contains_one()) {
    rep.primality = CharsetCriterionReport::Primality::failed;
    rep.primality_detail = "asat(A) is the unit ideal";
    return rep;
  }

  // reduced-element probe: basis elements of asat(A) must Ritt-reduce to 0
  for (const auto& p : basis.polys) {
    DiffPoly q = unflatten(jr, p);
    DiffPoly rem = ritt_reduce(q, a, r).remainder;
    if (!rem.is_zero()) {
      rep.reduced_probe_ok = false;
      rep.reduced_counterexample = rem;
      break;
    }
  }

  if (a.elems.size() == 1) {
    const DiffPoly& f = a.elems.front();
    std::set<DiffVar> vars = f.vars();
    detail::UnivariateProbe probe;
    if (vars.size() == 1) {
      const DiffVar v = *vars.begin();
      std::vector<Q> coeffs(f.deg_in(v) + 1, Q(0));
      for (std::uint32_t k = 0; k <= f.deg_in(v); ++k)
        coeffs[k] = f.coeff_of(v, k).coeff(DiffMonomial::one());
      probe = detail::probe_univariate(coeffs);
    } else {
      // random-line restriction: full-degree irreducible section certifies
      std::mt19937_64 rng(20240915);
      std::uniform_int_distribution<long> small(-5, 5), slope(1, 7);
      for (int attempt = 0; attempt < 8 &&
           probe.verdict == detail::UnivariateProbe::Verdict::unknown;
           ++attempt) {
        std::map<DiffVar, std::pair<Q, Q>> line;  // v -> (a, b): v = a T + b
        for (const DiffVar& v : vars)
          line[v] = {Q(slope(rng)), Q(small(rng))};
        unsigned d = f.degree();
        std::vector<Q> g(d + 1, Q(0));
        for (const auto& [mono, c] : f.terms()) {
          std::vector<Q> term{c};
          for (const auto& [v, e] : mono.factors)
            for (std::uint32_t k = 0; k < e; ++k) {
              std::vector<Q> next(term.size() + 1, Q(0));
              for (std::size_t i = 0; i < term.size(); ++i) {
                next[i + 1] += term[i] * line[v].first;
                next[i] += term[i] * line[v].second;
              }
              term = std::move(next);
            }
          for (std::size_t i = 0; i < term.size(); ++i) g[i] += term[i];
        }
        while (g.size() > 1 && g.back() == 0) g.pop_back();
        if (g.size() != d + 1) continue;  // degree dropped, pick another line
        detail::UnivariateProbe lp = detail::probe_univariate(g);
        if (lp.verdict == detail::UnivariateProbe::Verdict::irreducible)
          probe = lp;  // a reducible section proves nothing for f itself
      }
    }
    switch (probe.verdict) {
      case detail::UnivariateProbe::Verdict::irreducible:
        rep.primality = CharsetCriterionReport::Primality::certified;
        rep.primality_detail = "single irreducible generator (" +
                               (probe.detail.empty() ? std::string("linear")
                                                     : probe.detail) +
                               ")";
        break;
      case detail::UnivariateProbe::Verdict::reducible:
        rep.primality = CharsetCriterionReport::Primality::failed;
        rep.primality_detail = "generator factors: " + probe.detail;
        break;
      default:
        rep.primality_detail = "factorization probe inconclusive";
        break;
    }
  } else if (all_linear && all_initials_constant) {
    // triangular with unit-like initials: the leaders solve polynomially in
    // the parametric variables, so the ideal is a polynomial-map kernel
    rep.primality = CharsetCriterionReport::Primality::certified;
    rep.primality_detail =
        "triangular set, linear leaders with constant initials";
  } else {
    rep.primality_detail =
        "multi-element set outside the certified classes; not certified";
  }

  rep.verified = rep.coherence.coherent &&
                 rep.primality == CharsetCriterionReport::Primality::certified &&
                 rep.reduced_probe_ok;
  return rep;
}

}  // namespace diffchow

#endif
