// Sparse differential polynomials over exact rationals, with Leibniz
// differentiation. Values are immutable in spirit: every operation returns a
// fresh polynomial and no zero coefficients are ever stored.
#ifndef DIFFCHOW_DIFFPOLY_HPP
#define DIFFCHOW_DIFFPOLY_HPP

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "diffchow/numeric.hpp"
#include "diffchow/ring.hpp"

namespace diffchow {

class DiffPoly {
 public:
  using TermMap = std::map<DiffMonomial, Q>;

  DiffPoly() = default;
  explicit DiffPoly(Ctx ctx) : ctx_(std::move(ctx)) {}

  static DiffPoly zero(Ctx ctx) { return DiffPoly(std::move(ctx)); }

  static DiffPoly constant(Ctx ctx, const Q& c) {
    DiffPoly p(std::move(ctx));
    if (c != 0) p.terms_[DiffMonomial::one()] = c;
    return p;
  }

  static DiffPoly var(Ctx ctx, const DiffVar& v) {
    DiffPoly p(std::move(ctx));
    p.terms_[DiffMonomial::var(v)] = Q(1);
    return p;
  }

  static DiffPoly monomial(Ctx ctx, const DiffMonomial& mono, const Q& c) {
    DiffPoly p(std::move(ctx));
    if (c != 0) p.terms_[mono] = c;
    return p;
  }

  const Ctx& ctx() const { return ctx_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  std::size_t term_count() const { return terms_.size(); }

  Q coeff(const DiffMonomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Q(0) : it->second;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
    return d;
  }

  // Max derivative order over all jet variables; 0 for constants.
  unsigned order() const {
    unsigned o = 0;
    for (const auto& [mono, c] : terms_) o = std::max(o, mono.order());
    return o;
  }

  std::uint32_t deg_in(const DiffVar& v) const {
    std::uint32_t d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.deg_in(v));
    return d;
  }

  std::set<DiffVar> vars() const {
    std::set<DiffVar> out;
    for (const auto& [mono, c] : terms_)
      for (const auto& [v, e] : mono.factors) out.insert(v);
    return out;
  }

  DiffPoly operator-() const {
    DiffPoly r(ctx_);
    for (const auto& [mono, c] : terms_) r.terms_[mono] = -c;
    return r;
  }

  DiffPoly& operator+=(const DiffPoly& o) {
    check_ctx(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
  }
  DiffPoly& operator-=(const DiffPoly& o) {
    check_ctx(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
  }

  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }

  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    a.check_ctx(b);
    DiffPoly r(a.ctx_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Q c = ca * cb;
        r.add_term(ma.times(mb), c);
      }
    return r;
  }

  friend DiffPoly operator*(const Q& c, const DiffPoly& p) {
    DiffPoly r(p.ctx_);
    if (c == 0) return r;
    for (const auto& [mono, pc] : p.terms_) {
      Q prod = c * pc;
      r.terms_[mono] = prod;
    }
    return r;
  }
  friend DiffPoly operator*(const DiffPoly& p, const Q& c) { return c * p; }

  DiffPoly pow(unsigned e) const {
    DiffPoly r = constant(ctx_, Q(1));
    DiffPoly b = *this;
    unsigned n = e;
    while (n > 0) {
      if (n & 1) r = r * b;
      if (n >>= 1) b = b * b;
    }
    return r;
  }

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) {
    return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
  }

  // Coefficient of v^k, as a polynomial free of v.
  DiffPoly coeff_of(const DiffVar& v, std::uint32_t k) const {
    DiffPoly r(ctx_);
    for (const auto& [mono, c] : terms_)
      if (mono.deg_in(v) == k) r.add_term(mono.with_power(v, 0), c);
    return r;
  }

  // Formal partial derivative with respect to a single jet variable.
  DiffPoly partial(const DiffVar& v) const {
    DiffPoly r(ctx_);
    for (const auto& [mono, c] : terms_) {
      std::uint32_t e = mono.deg_in(v);
      if (e == 0) continue;
      Q nc = c * Q(static_cast<long>(e));
      r.add_term(mono.with_power(v, e - 1), nc);
    }
    return r;
  }

  // Apply delta_i once, by the product rule on each monomial.
  DiffPoly differentiate_once(std::size_t i) const {
    DiffPoly r(ctx_);
    for (const auto& [mono, c] : terms_) {
      for (const auto& [v, e] : mono.factors) {
        DiffVar dv(v.indet, v.op.times(DerOp::single(ctx_->m, i)));
        DiffMonomial rest = mono.with_power(v, e - 1).times(DiffMonomial::var(dv));
        Q nc = c * Q(static_cast<long>(e));
        r.add_term(rest, nc);
      }
    }
    return r;
  }

  // theta(f) for an arbitrary derivative operator.
  DiffPoly differentiate(const DerOp& op) const {
    DiffPoly r = *this;
    for (std::size_t i = 0; i < op.exps.size(); ++i)
      for (std::uint32_t k = 0; k < op.exps[i]; ++k)
        r = r.differentiate_once(i);
    return r;
  }

 private:
  void check_ctx(const DiffPoly& o) const {
    if (!same_context(ctx_, o.ctx_))
      throw context_error("polynomial operands use different ring contexts");
  }

  void add_term(const DiffMonomial& mono, const Q& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Ctx ctx_;
  TermMap terms_;
};

inline DiffPoly differentiate(const DiffPoly& f, const DerOp& op) {
  return f.differentiate(op);
}

}  // namespace diffchow

#endif
