// Autoreduced sets, Ritt reduction with re-checkable certificates, rank
// comparison of autoreduced sets, and coherence.
#ifndef DIFFCHOW_REDUCTION_HPP
#define DIFFCHOW_REDUCTION_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffchow/ranking.hpp"
#include "diffchow/selfcheck.hpp"

namespace diffchow {

struct AutoreducedSet {
  std::vector<DiffPoly> elems;  // sorted in nondecreasing rank

  static AutoreducedSet make(std::vector<DiffPoly> polys, const Ranking& r) {
    for (const auto& p : polys)
      if (p.is_constant())
        throw math_error("autoreduced sets contain no constants");
    std::stable_sort(polys.begin(), polys.end(),
                     [&](const DiffPoly& a, const DiffPoly& b) {
                       return rank_compare(a, b, r) < 0;
                     });
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = 0; j < polys.size(); ++j)
        if (i != j && !is_reduced(polys[i], polys[j], r))
          throw math_error("set is not autoreduced: element " +
                           std::to_string(i) + " is not reduced w.r.t. element " +
                           std::to_string(j));
    return AutoreducedSet{std::move(polys)};
  }

  std::size_t size() const { return elems.size(); }
};

// One summand of the explicit combination sum coeff * op(A[element]).
struct RittCombTerm {
  std::size_t element;
  DerOp op;
  DiffPoly coeff;
};

struct RittCertificate {
  // (d_i, e_i): separant and initial powers per set element.
  std::vector<std::pair<unsigned, unsigned>> exponents;
  std::vector<RittCombTerm> combination;
};

struct RittResult {
  DiffPoly remainder;
  RittCertificate cert;
};

// prod_i S_i^{d_i} I_i^{e_i} * F == R + sum coeff * op(A[element]),
// re-checked by plain polynomial arithmetic.
inline bool verify_ritt_certificate(const DiffPoly& f, const AutoreducedSet& a,
                                    const Ranking& r, const RittResult& res) {
  DiffPoly lhs = f;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [d, e] = res.cert.exponents[i];
    if (d > 0 || e > 0) {
      LeaderData ld = leader_data(a.elems[i], r);
      if (d > 0) lhs = lhs * ld.separant.pow(d);
      if (e > 0) lhs = lhs * ld.initial.pow(e);
    }
  }
  DiffPoly rhs = res.remainder;
  for (const auto& t : res.cert.combination)
    rhs += t.coeff * a.elems[t.element].differentiate(t.op);
  return lhs == rhs;
}

namespace detail {

// Pseudo-divide `cur` by g w.r.t. the variable v. Returns the multiplier
// exponent k with lc(g,v)^k * cur_in == q * g + cur_out. When the leading
// coefficient is a nonzero rational the division is exact and k stays 0.
struct PremStep {
  DiffPoly quotient;
  unsigned k = 0;
};

inline PremStep prem_in_place(DiffPoly& cur, const DiffPoly& g,
                              const DiffVar& v) {
  std::uint32_t e = g.deg_in(v);
  DiffPoly lc = g.coeff_of(v, e);
  PremStep step;
  step.quotient = DiffPoly::zero(cur.ctx());
  bool lc_const = lc.is_constant();
  Q lc_val = lc_const ? lc.coeff(DiffMonomial::one()) : Q(0);
  while (true) {
    std::uint32_t dv = cur.deg_in(v);
    if (dv < e || cur.is_zero()) break;
    DiffPoly c = cur.coeff_of(v, dv);
    DiffPoly shift =
        DiffPoly::monomial(cur.ctx(), DiffMonomial::var(v, dv - e), Q(1));
    if (lc_const) {
      DiffPoly qterm = (Q(1) / lc_val) * c * shift;
      cur -= qterm * g;
      step.quotient += qterm;
    } else {
      DiffPoly qterm = c * shift;
      cur = lc * cur - qterm * g;
      step.quotient = lc * step.quotient + qterm;
      ++step.k;
    }
  }
  return step;
}

struct Offender {
  DiffVar var;
  std::size_t element;
  DerOp tau;  // identity for a degree violation at the leader itself
};

inline std::optional<Offender> find_offender(
    const DiffPoly& cur, const std::vector<LeaderData>& leaders,
    const std::vector<std::uint32_t>& degrees, const Ranking& r) {
  std::optional<Offender> best;
  for (const DiffVar& v : cur.vars()) {
    for (std::size_t i = 0; i < leaders.size(); ++i) {
      const DiffVar& ld = leaders[i].leader;
      std::optional<DerOp> tau;
      if (v.is_proper_derivative_of(ld)) {
        tau = v.op.divide_by(ld.op);
      } else if (v == ld && cur.deg_in(v) >= degrees[i]) {
        tau = DerOp::identity(v.op.arity());
      }
      if (!tau) continue;
      // highest offending variable first; ties resolved by the element of
      // lowest rank (elements are sorted nondecreasingly)
      if (!best || r.less(best->var, v) ||
          (best->var == v && i < best->element))
        best = Offender{v, i, *tau};
      break;  // elements sorted by rank: first applicable is the lowest
    }
  }
  return best;
}

}  // namespace detail

inline RittResult ritt_reduce(const DiffPoly& f, const AutoreducedSet& a,
                              const Ranking& r) {
  RittResult res;
  res.cert.exponents.assign(a.size(), {0u, 0u});
  res.remainder = f;
  if (a.size() == 0 || f.is_constant()) return res;

  std::vector<LeaderData> leaders;
  std::vector<std::uint32_t> degrees;
  leaders.reserve(a.size());
  for (const auto& p : a.elems) {
    leaders.push_back(leader_data(p, r));
    degrees.push_back(leaders.back().degree);
  }

  DiffPoly& cur = res.remainder;
  while (auto off = detail::find_offender(cur, leaders, degrees, r)) {
    std::size_t i = off->element;
    bool is_derivative = !off->tau.is_identity();
    DiffPoly g =
        is_derivative ? a.elems[i].differentiate(off->tau) : a.elems[i];
    auto step = detail::prem_in_place(cur, g, off->var);
    if (step.k > 0) {
      const DiffPoly& lc =
          is_derivative ? leaders[i].separant : leaders[i].initial;
      DiffPoly mult = lc.pow(step.k);
      for (auto& t : res.cert.combination) t.coeff = t.coeff * mult;
      if (is_derivative)
        res.cert.exponents[i].first += step.k;
      else
        res.cert.exponents[i].second += step.k;
    }
    if (!step.quotient.is_zero())
      res.cert.combination.push_back({i, off->tau, std::move(step.quotient)});
  }

  if (SelfCheck::ritt() && !verify_ritt_certificate(f, a, r, res))
    throw consistency_error("Ritt reduction certificate failed to verify");
  return res;
}

enum class SetRankOrder { lower, equal_rank, higher };

struct SetRankResult {
  SetRankOrder order;
  bool by_length_rule;  // decided by the longer-set clause
};

// Two-clause rank comparison of autoreduced sets: prefix rank comparison,
// then the longer set wins when the shared prefix has equal ranks.
inline SetRankResult compare_autoreduced(const AutoreducedSet& a,
                                         const AutoreducedSet& b,
                                         const Ranking& r) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = rank_compare(a.elems[i], b.elems[i], r);
    if (c < 0) return {SetRankOrder::lower, false};
    if (c > 0) return {SetRankOrder::higher, false};
  }
  if (a.size() > b.size()) return {SetRankOrder::lower, true};
  if (a.size() < b.size()) return {SetRankOrder::higher, true};
  return {SetRankOrder::equal_rank, false};
}

struct CoherenceReport {
  bool coherent = true;
  // witness on failure
  std::size_t first = 0, second = 0;
  DiffPoly delta_poly;
  DiffPoly remainder;
};

// Every pairwise delta-polynomial S_A' * (theta/theta1)(A) -
// S_A * (theta/theta2)(A') must Ritt-reduce to zero, theta = lcm.
inline CoherenceReport coherence_check(const AutoreducedSet& a,
                                       const Ranking& r) {
  CoherenceReport rep;
  std::vector<LeaderData> leaders;
  for (const auto& p : a.elems) leaders.push_back(leader_data(p, r));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (leaders[i].leader.indet != leaders[j].leader.indet) continue;
      DerOp theta = derop_lcm(leaders[i].leader.op, leaders[j].leader.op);
      DerOp ti = *theta.divide_by(leaders[i].leader.op);
      DerOp tj = *theta.divide_by(leaders[j].leader.op);
      DiffPoly delta = leaders[j].separant * a.elems[i].differentiate(ti) -
                       leaders[i].separant * a.elems[j].differentiate(tj);
      DiffPoly rem = ritt_reduce(delta, a, r).remainder;
      if (!rem.is_zero()) {
        rep.coherent = false;
        rep.first = i;
        rep.second = j;
        rep.delta_poly = std::move(delta);
        rep.remainder = std::move(rem);
        return rep;
      }
    }
  return rep;
}

}  // namespace diffchow

#endif
