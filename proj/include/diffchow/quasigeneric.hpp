// Quasi-generic differential polynomials and the intersection experiments:
// measured truncated dimensions against the predicted Kolchin drop.
#ifndef DIFFCHOW_QUASIGENERIC_HPP
#define DIFFCHOW_QUASIGENERIC_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffchow/chowform.hpp"
#include "diffchow/jetspace.hpp"
#include "diffchow/kolchin.hpp"

namespace diffchow {

struct QuasiGenericSpec {
  unsigned order = 0;
  std::vector<DiffMonomial> support;  // over the Y-context
};

struct SupportValidation {
  bool valid = true;
  bool fully_generic = false;
  unsigned generic_degree = 0;
  std::vector<std::string> diagnostics;
};

namespace detail {
inline std::vector<DiffMonomial> all_monomials(const Ctx& ctx, unsigned s,
                                               unsigned g) {
  std::vector<DiffVar> vars;
  for (std::size_t j = 0; j < ctx->size(); ++j)
    for (const DerOp& op : derops_up_to(ctx->m, s))
      vars.emplace_back(static_cast<std::uint32_t>(j), op);
  std::vector<DiffMonomial> out;
  std::vector<std::uint32_t> exps(vars.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, unsigned budget) -> void {
    if (pos == vars.size()) {
      DiffMonomial mono;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (exps[i] > 0) mono = mono.times(DiffMonomial::var(vars[i], exps[i]));
      out.push_back(std::move(mono));
      return;
    }
    for (std::uint32_t e = 0; e <= budget; ++e) {
      exps[pos] = e;
      self(self, pos + 1, budget - e);
    }
    exps[pos] = 0;
  };
  rec(rec, 0, g);
  return out;
}
}  // namespace detail

// Both support conditions: 1 in the support, and for every indeterminate a
// pure monomial in it of order exactly s. Also flags the fully generic case
// (all monomials of order <= s and degree <= g).
inline SupportValidation validate_support(const Ctx& yctx,
                                          const QuasiGenericSpec& spec) {
  SupportValidation v;
  bool has_one = false;
  for (const auto& mono : spec.support)
    if (mono.is_one()) has_one = true;
  if (!has_one) {
    v.valid = false;
    v.diagnostics.push_back("support does not contain the monomial 1");
  }
  for (std::size_t j = 0; j < yctx->size(); ++j) {
    bool found = false;
    for (const auto& mono : spec.support) {
      if (mono.is_one()) continue;
      bool pure = true;
      for (const auto& [var, e] : mono.factors)
        if (var.indet != j) pure = false;
      if (pure && mono.order() == spec.order) found = true;
    }
    if (!found) {
      v.valid = false;
      v.diagnostics.push_back(
          "no pure monomial of order " + std::to_string(spec.order) + " in " +
          yctx->names[j]);
    }
  }
  for (const auto& mono : spec.support)
    if (mono.order() > spec.order) {
      v.valid = false;
      v.diagnostics.push_back("a support monomial exceeds order " +
                              std::to_string(spec.order));
    }
  if (v.valid) {
    unsigned g = 0;
    for (const auto& mono : spec.support) g = std::max(g, mono.degree());
    std::vector<DiffMonomial> all =
        detail::all_monomials(yctx, spec.order, g);
    std::vector<DiffMonomial> sup = spec.support;
    std::sort(sup.begin(), sup.end());
    sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
    std::sort(all.begin(), all.end());
    if (sup == all) {
      v.fully_generic = true;
      v.generic_degree = g;
    }
  }
  return v;
}

struct IntersectionExperiment {
  unsigned s = 0;
  unsigned t_min = 0;
  unsigned t_max = 0;
  NumericalPolynomial omega_v;
  long variety_delta_dim = 0;
  std::vector<Q> predicted;            // indexed by t - t_min
  std::vector<std::optional<long>> measured;  // nullopt where empty
  std::optional<unsigned> empty_at;    // first t with a unit ideal over Q(u)
  bool matches = false;                // verdict against the predicted drop
  Ctx ctx;                             // Y-context extended by coefficients
  DiffPoly lpoly;
};

// For each t, the jet ideal of the charset plus the prolongations of the
// quasi-generic polynomial, with the coefficient jets as parameters.
inline IntersectionExperiment run_intersection_experiment(
    const AutoreducedSet& a, const Ranking& r, const Ctx& yctx,
    const QuasiGenericSpec& spec, unsigned t_max) {
  if (t_max < spec.order)
    throw math_error("run_intersection_experiment: t_max below the order");
  CoherenceReport coh = coherence_check(a, r);
  if (!coh.coherent)
    throw math_error("run_intersection_experiment: incoherent charset");

  IntersectionExperiment ex;
  ex.s = spec.order;
  ex.t_max = t_max;
  ex.t_min = 0;
  for (const auto& p : a.elems) ex.t_min = std::max(ex.t_min, p.order());

  CharSetSummary summary = summarize_charset(a, r, yctx);
  ex.omega_v = kolchin_from_charset(summary);
  {
    const Q& am = ex.omega_v.coeffs[yctx->m];
    ex.variety_delta_dim = static_cast<long>(am.get_num().get_si());
  }
  NumericalPolynomial drop =
      ex.omega_v - NumericalPolynomial::shifted_binomial(yctx->m, ex.s);

  std::vector<std::string> fresh;
  for (std::size_t k = 0; k < spec.support.size(); ++k)
    fresh.push_back("u0_" + std::to_string(k));
  ex.ctx = extend_context(yctx, fresh);
  std::size_t n = yctx->size();

  DiffPoly lp = DiffPoly::zero(ex.ctx);
  DerOp id = DerOp::identity(yctx->m);
  for (std::size_t k = 0; k < spec.support.size(); ++k) {
    DiffPoly u = DiffPoly::var(
        ex.ctx, DiffVar(static_cast<std::uint32_t>(n + k), id));
    lp += u * DiffPoly::monomial(ex.ctx, spec.support[k], Q(1));
  }
  ex.lpoly = lp;

  Ranking r2 = Ranking{r.kind, r.priority};
  r2.priority.resize(ex.ctx->size());
  for (std::size_t i = n; i < ex.ctx->size(); ++i)
    r2.priority[i] = static_cast<std::uint32_t>(i);
  std::vector<DiffPoly> lifted;
  for (const auto& p : a.elems) lifted.push_back(with_context(p, ex.ctx));

  bool all_match = true;
  for (unsigned t = ex.t_min; t <= t_max; ++t) {
    ex.predicted.push_back(drop.eval(static_cast<long>(t)));
    std::map<std::size_t, unsigned> overrides;
    unsigned ubound = t >= ex.s ? t - ex.s : 0;
    for (std::size_t k = 0; k < spec.support.size(); ++k)
      overrides[n + k] = ubound;

    std::vector<gb::AlgPoly> gens;
    JetRing ring;
    if (lifted.empty()) {
      ring = make_jet_ring(ex.ctx, t, overrides);
    } else {
      AutoreducedSet a2 = AutoreducedSet::make(lifted, r2);
      TruncatedIdeal ti = truncated_ideal(a2, r2, t, overrides, ex.ctx);
      ring = ti.ring;
      gens = ti.gens;
    }
    if (t >= ex.s)
      for (const auto& q : prolong(lp, t)) gens.push_back(flatten(ring, q));

    std::vector<std::size_t> params;
    for (std::size_t v = 0; v < ring.size(); ++v)
      if (ring.vars[v].indet >= n) params.push_back(v);
    gb::DimensionResult dim = gb::ideal_dimension(gens, params, ring.size());
    if (dim.empty) {
      ex.measured.push_back(std::nullopt);
      if (!ex.empty_at) ex.empty_at = t;
      all_match = false;
    } else {
      ex.measured.push_back(dim.dimension);
      if (Q(dim.dimension) != ex.predicted.back()) all_match = false;
    }
  }
  // verdict: a positive-dimensional variety must match the predicted drop at
  // every t; a zero-dimensional one must show an empty intersection.
  ex.matches =
      ex.variety_delta_dim > 0 ? all_match : ex.empty_at.has_value();
  return ex;
}

struct MultiIntersectPrediction {
  NumericalPolynomial omega;
  long delta_dimension = 0;
  int differential_type = 0;
  Q typical_dimension;
};

// Predicted Kolchin polynomial of the joint ideal of r independent
// quasi-generic polynomials of orders s_1..s_r in n indeterminates, plus the
// invariants read off its binomial coefficients.
inline MultiIntersectPrediction multi_intersection_predict(
    const std::vector<unsigned>& orders, std::size_t n, std::size_t m) {
  if (orders.size() > n)
    throw math_error("multi_intersection_predict: more polynomials than "
                     "indeterminates");
  MultiIntersectPrediction out;
  out.omega = NumericalPolynomial::zero(m);
  out.omega += Q(static_cast<long>(n - orders.size())) *
               NumericalPolynomial::basis(m, m);
  for (unsigned s : orders) {
    out.omega += NumericalPolynomial::basis(m, m);
    out.omega -= NumericalPolynomial::shifted_binomial(m, s);
  }
  int deg = out.omega.degree();
  out.delta_dimension =
      static_cast<long>(out.omega.coeffs[m].get_num().get_si());
  out.differential_type = deg < 0 ? 0 : deg;
  out.typical_dimension = deg < 0 ? Q(0) : out.omega.coeffs[deg];
  return out;
}

}  // namespace diffchow

#endif
