// Truncated jet rings: flattening differential polynomials to commutative
// ones, prolongation, and truncated ideals of varieties presented by
// coherent characteristic sets.
#ifndef DIFFCHOW_JETSPACE_HPP
#define DIFFCHOW_JETSPACE_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "diffchow/groebner.hpp"
#include "diffchow/reduction.hpp"

namespace diffchow {

// Variables are exactly {theta(x) : ord(theta) <= bound(x)}; positional
// naming (indeterminate order, then graded-lex operator order) keeps
// flattened rings stable across runs.
struct JetRing {
  Ctx ctx;
  unsigned t = 0;
  std::vector<unsigned> bounds;  // per indeterminate
  gb::AlgRingPtr alg;
  std::vector<DiffVar> vars;            // alg index -> jet variable
  std::map<DiffVar, std::size_t> index;  // jet variable -> alg index

  std::size_t size() const { return vars.size(); }
};

inline JetRing make_jet_ring(
    Ctx ctx, unsigned t,
    const std::map<std::size_t, unsigned>& overrides = {}) {
  JetRing jr;
  jr.ctx = std::move(ctx);
  jr.t = t;
  jr.bounds.assign(jr.ctx->size(), t);
  for (const auto& [idx, b] : overrides) jr.bounds[idx] = b;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < jr.ctx->size(); ++j) {
    for (const DerOp& op : derops_up_to(jr.ctx->m, jr.bounds[j])) {
      DiffVar v(static_cast<std::uint32_t>(j), op);
      jr.index[v] = jr.vars.size();
      jr.vars.push_back(v);
      names.push_back(jet_name(*jr.ctx, v));
    }
  }
  jr.alg = gb::make_ring(std::move(names));
  return jr;
}

inline gb::AlgPoly flatten(const JetRing& jr, const DiffPoly& f) {
  if (!same_context(jr.ctx, f.ctx()))
    throw context_error("flatten: polynomial from a different context");
  gb::AlgPoly out;
  for (const auto& [mono, c] : f.terms()) {
    gb::Mono m(jr.size());
    for (const auto& [v, e] : mono.factors) {
      auto it = jr.index.find(v);
      if (it == jr.index.end())
        throw error("flatten: variable " + jet_name(*jr.ctx, v) +
                    " exceeds the jet truncation order");
      m.e[it->second] += e;
    }
    out[m] = c;
  }
  return out;
}

inline DiffPoly unflatten(const JetRing& jr, const gb::AlgPoly& p) {
  DiffPoly out = DiffPoly::zero(jr.ctx);
  for (const auto& [mono, c] : p) {
    DiffMonomial dm;
    for (std::size_t v = 0; v < mono.e.size(); ++v)
      if (mono.e[v] > 0)
        dm = dm.times(DiffMonomial::var(jr.vars[v], mono.e[v]));
    out += DiffPoly::monomial(jr.ctx, dm, c);
  }
  return out;
}

// {theta(f) : ord(theta) <= t - ord(f)}, in graded-lex operator order.
inline std::vector<DiffPoly> prolong(const DiffPoly& f, unsigned t) {
  unsigned o = f.order();
  if (o > t)
    throw math_error("prolong: polynomial order exceeds the truncation order");
  std::vector<DiffPoly> out;
  for (const DerOp& op : derops_up_to(f.ctx()->m, t - o))
    out.push_back(f.differentiate(op));
  return out;
}

struct TruncatedIdeal {
  JetRing ring;
  std::vector<gb::AlgPoly> gens;       // reduced Groebner basis (grevlex)
  std::vector<DiffPoly> multipliers;   // initials and separants saturated by
};

// I(V) ∩ F[Y^[t]] realized as (all prolongations to order t) : H^inf where
// H is the product of the charset's initials and separants.
inline TruncatedIdeal truncated_ideal(
    const AutoreducedSet& a, const Ranking& r, unsigned t,
    const std::map<std::size_t, unsigned>& overrides = {},
    Ctx ctx_override = nullptr) {
  Ctx ctx = ctx_override;
  if (!ctx) {
    if (a.elems.empty())
      throw error("truncated_ideal: empty charset needs an explicit context");
    ctx = a.elems.front().ctx();
  }
  CoherenceReport coh = coherence_check(a, r);
  if (!coh.coherent)
    throw math_error("truncated_ideal: charset is not coherent");
  TruncatedIdeal out;
  out.ring = make_jet_ring(ctx, t, overrides);

  std::vector<gb::AlgPoly> gens;
  for (const auto& p : a.elems)
    for (const auto& q : prolong(p, t)) gens.push_back(flatten(out.ring, q));

  DiffPoly h = DiffPoly::constant(ctx, Q(1));
  std::vector<DiffPoly> mults;
  for (const auto& p : a.elems) {
    LeaderData ld = leader_data(p, r);
    for (const DiffPoly* cand : {&ld.initial, &ld.separant}) {
      if (cand->is_constant()) continue;
      bool seen = false;
      for (const auto& m : mults)
        if (m == *cand) seen = true;
      if (!seen) {
        mults.push_back(*cand);
        h = h * *cand;
      }
    }
  }
  out.multipliers = mults;
  if (!mults.empty())
    gens = gb::saturate(gens, flatten(out.ring, h), out.ring.size());
  gb::GroebnerBasis g = gb::buchberger(
      gens, gb::MonomialOrder::single(gb::OrderKind::grevlex, out.ring.size()),
      out.ring.alg);
  out.gens = g.polys;
  return out;
}

// Defining ideal of B_s(V): alias of the order-s truncation.
inline TruncatedIdeal b_s_variety(const AutoreducedSet& a, const Ranking& r,
                                  unsigned s,
                                  Ctx ctx_override = nullptr) {
  return truncated_ideal(a, r, s, {}, std::move(ctx_override));
}

}  // namespace diffchow

#endif
