// Rankings on jet variables (orderly / elimination) and leader data.
#ifndef DIFFCHOW_RANKING_HPP
#define DIFFCHOW_RANKING_HPP

#include <cstdint>
#include <numeric>
#include <vector>

#include "diffchow/diffpoly.hpp"
#include "diffchow/errors.hpp"
#include "diffchow/ring.hpp"

namespace diffchow {

// A derivation-compatible total order on jet variables. `priority` maps an
// indeterminate index to its rank among indeterminates (higher wins); the
// final tie-break is lex on the operator exponent vector.
struct Ranking {
  enum class Kind { orderly, elimination };

  Kind kind = Kind::orderly;
  std::vector<std::uint32_t> priority;

  static Ranking orderly(const Ctx& ctx) {
    return Ranking{Kind::orderly, default_priority(ctx->size())};
  }
  static Ranking elimination(const Ctx& ctx) {
    return Ranking{Kind::elimination, default_priority(ctx->size())};
  }
  // Orderly ranking with one indeterminate promoted above all others,
  // remaining ties broken by declaration order.
  static Ranking orderly_with_top(const Ctx& ctx, std::size_t top) {
    Ranking r = orderly(ctx);
    r.priority[top] = static_cast<std::uint32_t>(ctx->size());
    return r;
  }

  static std::vector<std::uint32_t> default_priority(std::size_t n) {
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
  }

  // -1, 0, +1 for a < b, a == b, a > b.
  int compare(const DiffVar& a, const DiffVar& b) const {
    if (a == b) return 0;
    if (kind == Kind::orderly) {
      unsigned oa = a.order(), ob = b.order();
      if (oa != ob) return oa < ob ? -1 : 1;
      if (priority[a.indet] != priority[b.indet])
        return priority[a.indet] < priority[b.indet] ? -1 : 1;
      return a.op.exps < b.op.exps ? -1 : 1;
    }
    // elimination
    if (priority[a.indet] != priority[b.indet])
      return priority[a.indet] < priority[b.indet] ? -1 : 1;
    unsigned oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob ? -1 : 1;
    return a.op.exps < b.op.exps ? -1 : 1;
  }

  bool less(const DiffVar& a, const DiffVar& b) const {
    return compare(a, b) < 0;
  }
};

struct LeaderData {
  DiffVar leader;
  std::uint32_t degree = 0;
  DiffPoly initial;
  DiffPoly separant;
};

inline DiffVar leader_var(const DiffPoly& f, const Ranking& r) {
  if (f.is_constant())
    throw math_error("constant polynomial has no leader");
  bool first = true;
  DiffVar best;
  for (const DiffVar& v : f.vars()) {
    if (first || r.less(best, v)) {
      best = v;
      first = false;
    }
  }
  return best;
}

inline LeaderData leader_data(const DiffPoly& f, const Ranking& r) {
  LeaderData out;
  out.leader = leader_var(f, r);
  out.degree = f.deg_in(out.leader);
  out.initial = f.coeff_of(out.leader, out.degree);
  out.separant = f.partial(out.leader);
  return out;
}

// Rank comparison of two polynomials: leader first, then leader degree.
// Constants rank below everything and equal to each other.
inline int rank_compare(const DiffPoly& f, const DiffPoly& g,
                        const Ranking& r) {
  bool fc = f.is_constant(), gc = g.is_constant();
  if (fc || gc) return fc && gc ? 0 : (fc ? -1 : 1);
  DiffVar lf = leader_var(f, r), lg = leader_var(g, r);
  if (int c = r.compare(lf, lg); c != 0) return c;
  std::uint32_t df = f.deg_in(lf), dg = g.deg_in(lg);
  if (df != dg) return df < dg ? -1 : 1;
  return 0;
}

// g is reduced w.r.t. f: no proper derivative of ld(f) appears in g and
// deg(g, ld(f)) < deg(f, ld(f)).
inline bool is_reduced(const DiffPoly& g, const DiffPoly& f,
                       const Ranking& r) {
  LeaderData lf = leader_data(f, r);
  for (const DiffVar& v : g.vars())
    if (v.is_proper_derivative_of(lf.leader)) return false;
  return g.deg_in(lf.leader) < lf.degree;
}

}  // namespace diffchow

#endif
