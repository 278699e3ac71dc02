// Commutative polynomial engine over exact rationals: monomial orders
// (lex / grevlex / block elimination), Buchberger with the coprime and chain
// criteria and normal pair selection, reduced bases, ideal membership,
// elimination, saturation and dimension via leading-term combinatorics.
#ifndef DIFFCHOW_GROEBNER_HPP
#define DIFFCHOW_GROEBNER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diffchow/errors.hpp"
#include "diffchow/numeric.hpp"
#include "diffchow/selfcheck.hpp"

namespace diffchow::gb {

struct AlgRing {
  std::vector<std::string> names;
  std::size_t size() const { return names.size(); }
};

using AlgRingPtr = std::shared_ptr<const AlgRing>;

inline AlgRingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<AlgRing>(AlgRing{std::move(names)});
}

struct Mono {
  std::vector<std::uint32_t> e;

  Mono() = default;
  explicit Mono(std::size_t n) : e(n, 0) {}
  explicit Mono(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}

  unsigned deg() const { return std::accumulate(e.begin(), e.end(), 0u); }
  bool is_one() const {
    return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
  }
  bool divides(const Mono& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Mono times(const Mono& o) const {
    Mono r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
  }
  Mono divide(const Mono& o) const {
    Mono r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
    return r;
  }
  static Mono lcm(const Mono& a, const Mono& b) {
    Mono r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i)
      r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
  }
  bool coprime(const Mono& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0 && o.e[i] > 0) return false;
    return true;
  }

  friend auto operator<=>(const Mono&, const Mono&) = default;
};

// Canonical storage form: term map keyed by plain lex on exponent vectors.
using AlgPoly = std::map<Mono, Q>;

inline bool is_zero(const AlgPoly& p) { return p.empty(); }

inline AlgPoly poly_add(const AlgPoly& a, const AlgPoly& b) {
  AlgPoly r = a;
  for (const auto& [mono, c] : b) {
    auto [it, inserted] = r.try_emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

inline AlgPoly poly_scale(const AlgPoly& a, const Q& c) {
  AlgPoly r;
  if (c == 0) return r;
  for (const auto& [mono, pc] : a) r[mono] = pc * c;
  return r;
}

inline AlgPoly poly_mul(const AlgPoly& a, const AlgPoly& b) {
  AlgPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono mono = ma.times(mb);
      Q c = ca * cb;
      auto [it, inserted] = r.try_emplace(mono, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) r.erase(it);
      }
    }
  return r;
}

enum class OrderKind { lex, grevlex };

// A sequence of variable blocks, each ordered lex or grevlex; earlier blocks
// dominate. A single block covering all variables gives the plain orders; a
// front block gives the elimination order used for projections.
struct MonomialOrder {
  struct Block {
    std::vector<std::size_t> vars;
    OrderKind kind = OrderKind::grevlex;
  };
  std::vector<Block> blocks;

  static MonomialOrder single(OrderKind kind, std::size_t nvars) {
    Block b;
    b.vars.resize(nvars);
    std::iota(b.vars.begin(), b.vars.end(), std::size_t{0});
    b.kind = kind;
    return MonomialOrder{{b}};
  }

  static MonomialOrder elimination(const std::vector<std::size_t>& front,
                                   std::size_t nvars,
                                   OrderKind front_kind = OrderKind::grevlex,
                                   OrderKind back_kind = OrderKind::grevlex) {
    std::vector<bool> in_front(nvars, false);
    for (auto v : front) in_front[v] = true;
    Block f{front, front_kind}, b{{}, back_kind};
    for (std::size_t v = 0; v < nvars; ++v)
      if (!in_front[v]) b.vars.push_back(v);
    MonomialOrder o;
    o.blocks.push_back(std::move(f));
    o.blocks.push_back(std::move(b));
    return o;
  }

  int compare(const Mono& a, const Mono& b) const {
    for (const auto& blk : blocks) {
      if (blk.kind == OrderKind::lex) {
        for (auto v : blk.vars) {
          if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? -1 : 1;
        }
      } else {
        unsigned da = 0, db = 0;
        for (auto v : blk.vars) {
          da += a.e[v];
          db += b.e[v];
        }
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t i = blk.vars.size(); i-- > 0;) {
          auto v = blk.vars[i];
          if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? 1 : -1;
        }
      }
    }
    return 0;
  }

  bool less(const Mono& a, const Mono& b) const { return compare(a, b) < 0; }
};

namespace detail {

// Working representation: terms sorted descending under the active order.
struct OPoly {
  std::vector<std::pair<Mono, Q>> t;
  bool zero() const { return t.empty(); }
  const Mono& lm() const { return t.front().first; }
  const Q& lc() const { return t.front().second; }
};

inline OPoly to_ordered(const AlgPoly& p, const MonomialOrder& ord) {
  OPoly r;
  r.t.assign(p.begin(), p.end());
  std::sort(r.t.begin(), r.t.end(),
            [&](const auto& a, const auto& b) { return ord.less(b.first, a.first); });
  return r;
}

inline AlgPoly to_canonical(const OPoly& p) {
  AlgPoly r;
  for (const auto& [mono, c] : p.t) r[mono] = c;
  return r;
}

inline void make_monic(OPoly& p) {
  if (p.zero()) return;
  Q lc = p.lc();
  if (lc == 1) return;
  for (auto& [mono, c] : p.t) c /= lc;
}

// r := a - coeff * shift * b, merging the sorted term lists.
inline OPoly sub_mul(const OPoly& a, const Q& coeff, const Mono& shift,
                     const OPoly& b, const MonomialOrder& ord) {
  OPoly r;
  r.t.reserve(a.t.size() + b.t.size());
  std::size_t i = 0, j = 0;
  while (i < a.t.size() && j < b.t.size()) {
    Mono mb = b.t[j].first.times(shift);
    int c = ord.compare(a.t[i].first, mb);
    if (c > 0) {
      r.t.push_back(a.t[i++]);
    } else if (c < 0) {
      Q nc = -coeff * b.t[j].second;
      r.t.emplace_back(std::move(mb), std::move(nc));
      ++j;
    } else {
      Q nc = a.t[i].second - coeff * b.t[j].second;
      if (nc != 0) r.t.emplace_back(a.t[i].first, std::move(nc));
      ++i, ++j;
    }
  }
  for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
  for (; j < b.t.size(); ++j) {
    Q nc = -coeff * b.t[j].second;
    r.t.emplace_back(b.t[j].first.times(shift), std::move(nc));
  }
  return r;
}

// Full normal form against monic reducers; the reducer with the smallest
// leading monomial applies first, which keeps the result deterministic.
inline OPoly normal_form(OPoly f, const std::vector<OPoly>& basis,
                         const MonomialOrder& ord) {
  OPoly out;
  while (!f.zero()) {
    const Mono& lm = f.lm();
    const OPoly* reducer = nullptr;
    for (const auto& g : basis) {
      if (!g.zero() && g.lm().divides(lm)) {
        reducer = &g;
        break;
      }
    }
    if (!reducer) {
      out.t.push_back(f.t.front());
      f.t.erase(f.t.begin());
      continue;
    }
    Mono shift = lm.divide(reducer->lm());
    f = sub_mul(f, f.lc(), shift, *reducer, ord);
  }
  return out;
}

}  // namespace detail

struct GroebnerBasis {
  AlgRingPtr ring;
  MonomialOrder order;
  std::vector<AlgPoly> polys;  // reduced, monic, sorted by leading monomial

  AlgPoly normal_form(const AlgPoly& f) const {
    std::vector<detail::OPoly> basis;
    basis.reserve(polys.size());
    for (const auto& p : polys) basis.push_back(detail::to_ordered(p, order));
    std::sort(basis.begin(), basis.end(),
              [&](const auto& a, const auto& b) {
                return order.less(a.lm(), b.lm());
              });
    return detail::to_canonical(
        detail::normal_form(detail::to_ordered(f, order), basis, order));
  }

  bool contains_one() const {
    return polys.size() == 1 && polys.front().size() == 1 &&
           polys.front().begin()->first.is_one();
  }
};

inline bool verify_buchberger(const GroebnerBasis& g);

inline GroebnerBasis buchberger(const std::vector<AlgPoly>& gens,
                                const MonomialOrder& order,
                                AlgRingPtr ring = nullptr) {
  using detail::OPoly;
  std::vector<OPoly> basis;
  for (const auto& g : gens) {
    if (is_zero(g)) continue;
    OPoly p = detail::to_ordered(g, order);
    detail::make_monic(p);
    basis.push_back(std::move(p));
  }
  std::sort(basis.begin(), basis.end(), [&](const OPoly& a, const OPoly& b) {
    return order.less(a.lm(), b.lm());
  });
  basis.erase(std::unique(basis.begin(), basis.end(),
                          [](const OPoly& a, const OPoly& b) {
                            return a.t == b.t;
                          }),
              basis.end());

  // pending S-pairs keyed by (lcm, i, j): normal selection strategy
  struct PairKey {
    Mono lcm;
    std::size_t i, j;
  };
  auto pair_less = [&order](const PairKey& a, const PairKey& b) {
    if (int c = order.compare(a.lcm, b.lcm); c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::set<PairKey, decltype(pair_less)> pending(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> pending_idx;

  auto push_pair = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    pending.insert({Mono::lcm(basis[i].lm(), basis[j].lm()), i, j});
    pending_idx.insert({i, j});
  };
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) push_pair(i, j);

  while (!pending.empty()) {
    PairKey pk = *pending.begin();
    pending.erase(pending.begin());
    pending_idx.erase({pk.i, pk.j});
    const OPoly& f = basis[pk.i];
    const OPoly& g = basis[pk.j];
    if (f.lm().coprime(g.lm())) continue;  // Buchberger's first criterion
    // chain criterion: some k with LT_k | lcm and both pairs already handled
    bool skip = false;
    for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == pk.i || k == pk.j) continue;
      if (!basis[k].lm().divides(pk.lcm)) continue;
      auto p1 = std::minmax(pk.i, k);
      auto p2 = std::minmax(pk.j, k);
      if (!pending_idx.count({p1.first, p1.second}) &&
          !pending_idx.count({p2.first, p2.second}))
        skip = true;
    }
    if (skip) continue;
    OPoly s = detail::sub_mul(
        detail::sub_mul(OPoly{}, Q(-1), pk.lcm.divide(f.lm()), f, order), Q(1),
        pk.lcm.divide(g.lm()), g, order);
    OPoly h = detail::normal_form(std::move(s), basis, order);
    if (h.zero()) continue;
    detail::make_monic(h);
    basis.push_back(std::move(h));
    for (std::size_t i = 0; i + 1 < basis.size(); ++i)
      push_pair(i, basis.size() - 1);
  }

  // inter-reduce to the unique reduced basis
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<OPoly> others;
      others.reserve(basis.size() - 1);
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != i && !basis[j].zero()) others.push_back(basis[j]);
      std::sort(others.begin(), others.end(),
                [&](const OPoly& a, const OPoly& b) {
                  return order.less(a.lm(), b.lm());
                });
      OPoly red = detail::normal_form(basis[i], others, order);
      detail::make_monic(red);
      if (red.t != basis[i].t) {
        basis[i] = std::move(red);
        changed = true;
      }
    }
    basis.erase(std::remove_if(basis.begin(), basis.end(),
                               [](const OPoly& p) { return p.zero(); }),
                basis.end());
  }
  std::sort(basis.begin(), basis.end(), [&](const OPoly& a, const OPoly& b) {
    return order.less(a.lm(), b.lm());
  });

  GroebnerBasis out;
  out.ring = std::move(ring);
  out.order = order;
  for (const auto& p : basis) out.polys.push_back(detail::to_canonical(p));
  if (SelfCheck::groebner() && !verify_buchberger(out))
    throw consistency_error("Buchberger post-check failed");
  return out;
}

inline bool verify_buchberger(const GroebnerBasis& g) {
  using detail::OPoly;
  std::vector<OPoly> basis;
  for (const auto& p : g.polys) basis.push_back(detail::to_ordered(p, g.order));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Mono l = Mono::lcm(basis[i].lm(), basis[j].lm());
      OPoly s = detail::sub_mul(
          detail::sub_mul(OPoly{}, Q(-1), l.divide(basis[i].lm()), basis[i],
                          g.order),
          Q(1), l.divide(basis[j].lm()), basis[j], g.order);
      if (!detail::normal_form(std::move(s), basis, g.order).zero())
        return false;
    }
  return true;
}

inline bool ideal_member(const AlgPoly& f, const GroebnerBasis& g) {
  return is_zero(g.normal_form(f));
}

inline std::vector<std::size_t> support(const AlgPoly& p) {
  std::set<std::size_t> s;
  for (const auto& [mono, c] : p)
    for (std::size_t v = 0; v < mono.e.size(); ++v)
      if (mono.e[v] > 0) s.insert(v);
  return {s.begin(), s.end()};
}

// Generators of the elimination ideal: Groebner basis under a block order
// with the dropped variables in front, restricted to the kept subring.
inline std::vector<AlgPoly> eliminate(const std::vector<AlgPoly>& gens,
                                      const std::vector<std::size_t>& drop,
                                      std::size_t nvars) {
  MonomialOrder ord = MonomialOrder::elimination(drop, nvars);
  GroebnerBasis g = buchberger(gens, ord);
  std::vector<bool> dropped(nvars, false);
  for (auto v : drop) dropped[v] = true;
  std::vector<AlgPoly> out;
  for (const auto& p : g.polys) {
    bool keep = true;
    for (auto v : support(p))
      if (dropped[v]) {
        keep = false;
        break;
      }
    if (keep) out.push_back(p);
  }
  return out;
}

// (gens) : h^inf via a fresh inverse variable z with z*h - 1.
inline std::vector<AlgPoly> saturate(const std::vector<AlgPoly>& gens,
                                     const AlgPoly& h, std::size_t nvars) {
  if (is_zero(h)) throw math_error("cannot saturate by zero");
  auto lift = [&](const AlgPoly& p) {
    AlgPoly r;
    for (const auto& [mono, c] : p) {
      Mono m2 = mono;
      m2.e.push_back(0);
      r[m2] = c;
    }
    return r;
  };
  std::vector<AlgPoly> ext;
  ext.reserve(gens.size() + 1);
  for (const auto& g : gens) ext.push_back(lift(g));
  AlgPoly zh = lift(h);
  {
    AlgPoly shifted;
    for (auto& [mono, c] : zh) {
      Mono m2 = mono;
      m2.e.back() = 1;
      shifted[m2] = c;
    }
    Mono one(nvars + 1);
    auto [it, inserted] = shifted.try_emplace(one, Q(-1));
    if (!inserted) {
      it->second -= 1;
      if (it->second == 0) shifted.erase(it);
    }
    ext.push_back(std::move(shifted));
  }
  std::vector<AlgPoly> elim = eliminate(ext, {nvars}, nvars + 1);
  std::vector<AlgPoly> out;
  for (const auto& p : elim) {
    AlgPoly r;
    for (const auto& [mono, c] : p) {
      Mono m2 = mono;
      m2.e.pop_back();
      r[m2] = c;
    }
    out.push_back(std::move(r));
  }
  return out;
}

struct DimensionResult {
  bool empty = false;        // unit ideal over the parameter field
  long dimension = -1;       // valid when not empty
};

// Dimension over Q(parameters): the largest S among the non-parameter
// variables such that no leading monomial of a grevlex basis lies in
// k[S + parameters]; exhaustive subset search at desk scale.
inline DimensionResult ideal_dimension(const std::vector<AlgPoly>& gens,
                                       const std::vector<std::size_t>& params,
                                       std::size_t nvars) {
  GroebnerBasis g =
      buchberger(gens, MonomialOrder::single(OrderKind::grevlex, nvars));
  DimensionResult res;
  std::vector<bool> is_param(nvars, false);
  for (auto v : params) is_param[v] = true;

  std::vector<std::size_t> free_vars;
  for (std::size_t v = 0; v < nvars; ++v)
    if (!is_param[v]) free_vars.push_back(v);

  // leading monomials as bitmasks over the non-parameter variables
  std::vector<std::uint64_t> lt_masks;
  for (const auto& p : g.polys) {
    Mono lm;
    bool first = true;
    for (const auto& [mono, c] : p) {
      if (first || g.order.less(lm, mono)) {
        lm = mono;
        first = false;
      }
    }
    if (lm.is_one()) {
      res.empty = true;  // unit ideal
      return res;
    }
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < free_vars.size(); ++k)
      if (lm.e[free_vars[k]] > 0) mask |= (std::uint64_t{1} << k);
    if (mask == 0) {
      // a leading monomial purely in parameters: unit over Q(params)
      res.empty = true;
      return res;
    }
    lt_masks.push_back(mask);
  }

  std::size_t k = free_vars.size();
  if (k > 22)
    throw error("dimension search: too many variables for exhaustive subsets");
  long best = -1;
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << k); ++sub) {
    bool ok = true;
    for (auto m : lt_masks)
      if ((m & ~sub) == 0) {
        ok = false;
        break;
      }
    if (ok) {
      long size = static_cast<long>(__builtin_popcountll(sub));
      if (size > best) best = size;
    }
  }
  res.dimension = best;
  return res;
}

}  // namespace diffchow::gb

#endif
