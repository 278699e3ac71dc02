// The Chow-form pipeline: generic hyperplanes, joint jet ideal, elimination
// of the Y-jets, normalization, differential homogeneity / delta-degree,
// the characteristic-set representation check, and the B_s degree bounds.
#ifndef DIFFCHOW_CHOWFORM_HPP
#define DIFFCHOW_CHOWFORM_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffchow/jetspace.hpp"
#include "diffchow/kolchin.hpp"

namespace diffchow {

// Reinterpret a polynomial in an extended context whose indeterminate list
// starts with the original one.
inline DiffPoly with_context(const DiffPoly& f, const Ctx& ctx) {
  const auto& old_names = f.ctx()->names;
  if (ctx->m != f.ctx()->m || ctx->size() < old_names.size())
    throw context_error("with_context: incompatible contexts");
  for (std::size_t i = 0; i < old_names.size(); ++i)
    if (ctx->names[i] != old_names[i])
      throw context_error("with_context: old context is not a prefix");
  DiffPoly out = DiffPoly::zero(ctx);
  for (const auto& [mono, c] : f.terms())
    out += DiffPoly::monomial(ctx, mono, c);
  return out;
}

struct GenericHyperplane {
  std::size_t block = 0;                  // index i of L_i
  std::vector<std::size_t> coeff_indets;  // u_{i0}, ..., u_{in} in the context
  DiffPoly poly;                          // u_{i0} + sum_j u_{ij} y_j
};

struct HyperplaneSystem {
  Ctx ctx;  // Y-context extended by the fresh coefficient symbols
  std::vector<std::size_t> y_indets;
  std::vector<GenericHyperplane> planes;
};

// d+1 generic hyperplanes with fresh coefficient symbols u{i}_{j}.
inline HyperplaneSystem build_hyperplanes(const Ctx& yctx, long d) {
  if (yctx->size() < 1 || d < 0)
    throw error("build_hyperplanes: need n >= 1 and d >= 0");
  std::size_t n = yctx->size();
  std::vector<std::string> fresh;
  for (long i = 0; i <= d; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      fresh.push_back("u" + std::to_string(i) + "_" + std::to_string(j));
  HyperplaneSystem sys;
  sys.ctx = extend_context(yctx, fresh);
  for (std::size_t j = 0; j < n; ++j) sys.y_indets.push_back(j);
  DerOp id = DerOp::identity(yctx->m);
  for (long i = 0; i <= d; ++i) {
    GenericHyperplane hp;
    hp.block = static_cast<std::size_t>(i);
    DiffPoly p = DiffPoly::zero(sys.ctx);
    for (std::size_t j = 0; j <= n; ++j) {
      std::size_t idx = n + static_cast<std::size_t>(i) * (n + 1) + j;
      hp.coeff_indets.push_back(idx);
      DiffPoly u = DiffPoly::var(sys.ctx, DiffVar(static_cast<std::uint32_t>(idx), id));
      if (j == 0)
        p += u;
      else
        p += u * DiffPoly::var(sys.ctx, DiffVar(static_cast<std::uint32_t>(j - 1), id));
    }
    hp.poly = std::move(p);
    sys.planes.push_back(std::move(hp));
  }
  return sys;
}

struct DeltaDegreeResult {
  bool homogeneous = false;
  long r = 0;
  DerOp failed_theta;  // the offending Euler operator when not homogeneous
};

// Euler criterion per coefficient block: the theta = 1 sum must equal r*F
// and every other sum with ord(theta) <= ord(F) must vanish identically.
inline DeltaDegreeResult delta_degree(const DiffPoly& f,
                                      const std::vector<std::size_t>& block) {
  if (f.is_zero()) throw math_error("delta_degree: zero polynomial");
  std::vector<bool> in_block(f.ctx()->size(), false);
  for (auto i : block) in_block[i] = true;

  auto euler_sum = [&](const DerOp& theta) {
    DiffPoly sum = DiffPoly::zero(f.ctx());
    for (const DiffVar& w : f.vars()) {
      if (!in_block[w.indet]) continue;
      auto quot = w.op.divide_by(theta);
      if (!quot) continue;
      Q factor(derop_binom(w.op, theta));
      sum += factor * DiffPoly::var(f.ctx(), DiffVar(w.indet, *quot)) *
             f.partial(w);
    }
    return sum;
  };

  DeltaDegreeResult res;
  DiffPoly e1 = euler_sum(DerOp::identity(f.ctx()->m));
  long r = 0;
  if (!e1.is_zero()) {
    const auto& [mono, c] = *f.terms().begin();
    Q ratio = e1.coeff(mono) / c;
    ratio.canonicalize();
    if (!is_integer(ratio)) return res;
    r = static_cast<long>(ratio.get_num().get_si());
    if (r < 0 || !(e1 == Q(r) * f)) return res;
  } else {
    // degree-0 case: F free of the block
    for (const DiffVar& w : f.vars())
      if (in_block[w.indet]) return res;
  }
  for (const DerOp& theta : derops_up_to(f.ctx()->m, f.order())) {
    if (theta.is_identity()) continue;
    if (!euler_sum(theta).is_zero()) {
      res.failed_theta = theta;
      return res;
    }
  }
  res.homogeneous = true;
  res.r = r;
  return res;
}

// Lex comparison where variable significance follows the given ranking.
inline int lex_compare_under_ranking(const DiffMonomial& a,
                                     const DiffMonomial& b,
                                     const Ranking& rk) {
  std::map<DiffVar, std::pair<std::uint32_t, std::uint32_t>> exps;
  for (const auto& [v, e] : a.factors) exps[v].first = e;
  for (const auto& [v, e] : b.factors) exps[v].second = e;
  std::vector<DiffVar> vars;
  for (const auto& [v, e] : exps) vars.push_back(v);
  std::sort(vars.begin(), vars.end(),
            [&](const DiffVar& x, const DiffVar& y) { return rk.less(y, x); });
  for (const DiffVar& v : vars) {
    auto [ea, eb] = exps[v];
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

// Primitive integer coefficients with a positive coefficient on the
// lex-largest monomial under the export ranking.
inline DiffPoly normalize_primitive(const DiffPoly& f, const Ranking& rk) {
  if (f.is_zero()) return f;
  Z den_lcm(1), num_gcd(0);
  for (const auto& [mono, c] : f.terms()) {
    Z den = c.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
  }
  DiffPoly scaled = Q(den_lcm) * f;
  for (const auto& [mono, c] : scaled.terms()) {
    Z num = c.get_num();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), num.get_mpz_t());
  }
  if (num_gcd != 1) scaled = Q(Z(1), num_gcd) * scaled;
  const DiffMonomial* lead = nullptr;
  for (const auto& [mono, c] : scaled.terms())
    if (!lead || lex_compare_under_ranking(*lead, mono, rk) < 0) lead = &mono;
  if (scaled.coeff(*lead) < 0) scaled = -scaled;
  return scaled;
}

struct ChowFormResult {
  Ctx ctx;  // extended context
  std::vector<std::size_t> y_indets;
  std::vector<GenericHyperplane> planes;
  DiffPoly form;       // normalized Chow form, u-jets only
  unsigned s = 0;      // order
  long d = 0;          // hyperplane count minus one
  long r = 0;          // delta-degree (same for every block)
  DiffVar leader;      // under the fixed orderly ranking with u00 on top
  std::uint32_t g = 0; // degree of the form in its leader
  Ranking export_ranking;
  std::vector<Q> chow_coords;  // dense over the canonical monomial enumeration
};

// All monomials of total degree <= deg in the u-jet variables of order <= s,
// graded then lex ascending over the positional variable list.
inline std::vector<DiffMonomial> chow_coordinate_monomials(
    const Ctx& ctx, const std::vector<GenericHyperplane>& planes, unsigned s,
    unsigned deg) {
  std::vector<DiffVar> uvars;
  for (const auto& hp : planes)
    for (auto idx : hp.coeff_indets)
      for (const DerOp& op : derops_up_to(ctx->m, s))
        uvars.emplace_back(static_cast<std::uint32_t>(idx), op);
  std::vector<DiffMonomial> out;
  std::vector<std::uint32_t> exps(uvars.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, unsigned budget) -> void {
    if (pos == uvars.size()) {
      DiffMonomial mono;
      for (std::size_t i = 0; i < uvars.size(); ++i)
        if (exps[i] > 0)
          mono = mono.times(DiffMonomial::var(uvars[i], exps[i]));
      out.push_back(std::move(mono));
      return;
    }
    for (std::uint32_t e = 0; e <= budget; ++e) {
      exps[pos] = e;
      self(self, pos + 1, budget - e);
    }
    exps[pos] = 0;
  };
  rec(rec, 0, deg);
  std::stable_sort(out.begin(), out.end(),
                   [](const DiffMonomial& a, const DiffMonomial& b) {
                     unsigned da = a.degree(), db = b.degree();
                     if (da != db) return da < db;
                     return a < b;
                   });
  return out;
}

inline ChowFormResult compute_chow_form(const AutoreducedSet& a,
                                        const Ranking& r, const Ctx& yctx) {
  if (r.kind != Ranking::Kind::orderly)
    throw math_error("compute_chow_form: an orderly ranking is required");
  std::size_t n = yctx->size();

  CharSetSummary summary = summarize_charset(a, r, yctx);
  NumericalPolynomial w = kolchin_from_charset(summary);
  auto shape = chow_admissible_shape(w, n);
  if (!shape)
    throw shape_error(
        "no Chow form: the Kolchin polynomial is not of the form "
        "(d+1)C(t+m,m) - C(t+m-s,m)");
  auto [d, s] = *shape;

  std::vector<DiffVar> leaders;
  for (const auto& p : a.elems) leaders.push_back(leader_var(p, r));
  if (!leader_structure_check(leaders, d, s, n))
    throw shape_error(
        "no Chow form: the characteristic-set leaders do not match the "
        "admissible shape");

  HyperplaneSystem sys = build_hyperplanes(yctx, d);
  Ranking r2 = Ranking{r.kind, r.priority};
  r2.priority.resize(sys.ctx->size());
  for (std::size_t i = n; i < sys.ctx->size(); ++i)
    r2.priority[i] = static_cast<std::uint32_t>(i);

  std::vector<DiffPoly> lifted;
  for (const auto& p : a.elems) lifted.push_back(with_context(p, sys.ctx));
  AutoreducedSet a2 = AutoreducedSet::make(lifted, r2);

  TruncatedIdeal ti = truncated_ideal(a2, r2, s, {}, sys.ctx);
  std::vector<gb::AlgPoly> gens = ti.gens;
  for (const auto& hp : sys.planes)
    for (const auto& q : prolong(hp.poly, s))
      gens.push_back(flatten(ti.ring, q));

  std::vector<std::size_t> drop;
  for (std::size_t v = 0; v < ti.ring.size(); ++v)
    if (ti.ring.vars[v].indet < n) drop.push_back(v);
  std::vector<gb::AlgPoly> elim = gb::eliminate(gens, drop, ti.ring.size());
  if (elim.size() != 1) {
    std::string diag = "elimination ideal is not principal: " +
                       std::to_string(elim.size()) + " basis elements";
    throw consistency_error(diag);
  }

  ChowFormResult out;
  out.ctx = sys.ctx;
  out.y_indets = sys.y_indets;
  out.planes = sys.planes;
  out.d = d;
  out.s = s;
  std::size_t u00 = sys.planes[0].coeff_indets[0];
  out.export_ranking = Ranking::orderly_with_top(sys.ctx, u00);

  DiffPoly f = unflatten(ti.ring, elim.front());
  out.form = normalize_primitive(f, out.export_ranking);
  for (const DiffVar& v : out.form.vars())
    if (v.indet < n)
      throw consistency_error("Chow form contains a Y-jet variable");
  if (out.form.order() != s)
    throw consistency_error("Chow form order differs from the predicted s");

  LeaderData ld = leader_data(out.form, out.export_ranking);
  out.leader = ld.leader;
  out.g = ld.degree;

  bool have_r = false;
  for (const auto& hp : sys.planes) {
    DeltaDegreeResult dd = delta_degree(out.form, hp.coeff_indets);
    if (!dd.homogeneous)
      throw consistency_error("Chow form is not delta-homogeneous in block " +
                              std::to_string(hp.block));
    if (have_r && dd.r != out.r)
      throw consistency_error("delta-degree differs between blocks");
    out.r = dd.r;
    have_r = true;
  }

  for (const DiffMonomial& mono :
       chow_coordinate_monomials(sys.ctx, sys.planes, s, out.form.degree()))
    out.chow_coords.push_back(out.form.coeff(mono));
  return out;
}

struct CharsetRepReport {
  std::vector<std::size_t> y_indets;
  std::vector<bool> member;  // one entry per y_j
  bool all = true;
};

// Thm-style representation check: S_F*y_j - dF/d(theta(u_{0j})) must lie in
// the joint jet ideal at order s, saturated by S_F.
inline CharsetRepReport verify_charset_representation(
    const ChowFormResult& chow, const AutoreducedSet& a, const Ranking& r,
    const DiffPoly& form_override = DiffPoly()) {
  const DiffPoly& f = form_override.is_zero() ? chow.form : form_override;
  Ranking r2 = Ranking{r.kind, r.priority};
  r2.priority.resize(chow.ctx->size());
  for (std::size_t i = r.priority.size(); i < chow.ctx->size(); ++i)
    r2.priority[i] = static_cast<std::uint32_t>(i);
  std::vector<DiffPoly> lifted;
  for (const auto& p : a.elems) lifted.push_back(with_context(p, chow.ctx));
  AutoreducedSet a2 = AutoreducedSet::make(lifted, r2);

  TruncatedIdeal ti = truncated_ideal(a2, r2, chow.s, {}, chow.ctx);
  std::vector<gb::AlgPoly> gens = ti.gens;
  for (const auto& hp : chow.planes)
    for (const auto& q : prolong(hp.poly, chow.s))
      gens.push_back(flatten(ti.ring, q));

  DiffVar ld = leader_var(f, chow.export_ranking);
  DiffPoly sf = f.partial(ld);
  std::vector<gb::AlgPoly> sat =
      gb::saturate(gens, flatten(ti.ring, sf), ti.ring.size());
  gb::GroebnerBasis g = gb::buchberger(
      sat, gb::MonomialOrder::single(gb::OrderKind::grevlex, ti.ring.size()),
      ti.ring.alg);

  CharsetRepReport rep;
  rep.y_indets = chow.y_indets;
  DerOp id = DerOp::identity(chow.ctx->m);
  for (std::size_t j : chow.y_indets) {
    // u_{0, j+1} multiplies y_j in L_0
    std::size_t u0j = chow.planes[0].coeff_indets[j + 1];
    DiffVar uvar(static_cast<std::uint32_t>(u0j), ld.op);
    DiffPoly gj =
        sf * DiffPoly::var(chow.ctx, DiffVar(static_cast<std::uint32_t>(j), id)) -
        f.partial(uvar);
    bool ok = gb::ideal_member(flatten(ti.ring, gj), g);
    rep.member.push_back(ok);
    rep.all = rep.all && ok;
  }
  return rep;
}

struct DegreeBounds {
  Q lower;
  Z upper;
};

// r / C(s+m,m) <= deg B_s(V) <= [(s+1)(d+1)r]^(n(s+1)C(s+m,m)+1).
inline DegreeBounds degree_bounds(unsigned n, unsigned d, unsigned s, unsigned r,
                                  unsigned m) {
  if (r < 1) throw math_error("degree_bounds: r must be >= 1");
  if (n < 1) throw math_error("degree_bounds: n must be >= 1");
  DegreeBounds out;
  Z csm = binomial(s + m, m);
  out.lower = Q(Z(r), csm);
  out.lower.canonicalize();
  Z base = Z(s + 1) * Z(d + 1) * Z(r);
  unsigned long expo =
      static_cast<unsigned long>(n) * (s + 1) * csm.get_ui() + 1;
  out.upper = pow_z(base, expo);
  return out;
}

}  // namespace diffchow

#endif
