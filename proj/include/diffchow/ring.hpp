// Ring context (derivation count + named indeterminates), jet variables and
// monomials in them.
#ifndef DIFFCHOW_RING_HPP
#define DIFFCHOW_RING_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diffchow/derop.hpp"
#include "diffchow/errors.hpp"

namespace diffchow {

struct RingContext {
  std::size_t m = 1;
  std::vector<std::string> names;

  std::size_t size() const { return names.size(); }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }

  friend bool operator==(const RingContext&, const RingContext&) = default;
};

using Ctx = std::shared_ptr<const RingContext>;

inline Ctx make_context(std::size_t m, std::vector<std::string> names) {
  if (m < 1) throw error("a ring context needs at least one derivation");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw error("empty indeterminate name");
    if (!seen.insert(n).second)
      throw error("duplicate indeterminate name '" + n + "'");
  }
  return std::make_shared<RingContext>(RingContext{m, std::move(names)});
}

inline Ctx extend_context(const Ctx& ctx, const std::vector<std::string>& extra) {
  std::vector<std::string> names = ctx->names;
  names.insert(names.end(), extra.begin(), extra.end());
  return make_context(ctx->m, std::move(names));
}

inline bool same_context(const Ctx& a, const Ctx& b) {
  return a == b || (a && b && *a == *b);
}

// A jet variable theta(x): indeterminate index plus a derivative operator.
// Canonical order: indeterminate index, then exponent vector lex.
struct DiffVar {
  std::uint32_t indet = 0;
  DerOp op;

  DiffVar() = default;
  DiffVar(std::uint32_t i, DerOp o) : indet(i), op(std::move(o)) {}

  unsigned order() const { return op.order(); }

  // v is a derivative of w iff same indeterminate and w.op | v.op;
  // proper when the quotient is not the identity.
  bool is_proper_derivative_of(const DiffVar& w) const {
    return indet == w.indet && w.op.divides(op) && op != w.op;
  }

  friend auto operator<=>(const DiffVar& a, const DiffVar& b) {
    if (auto c = a.indet <=> b.indet; c != 0) return c;
    return a.op.exps <=> b.op.exps;
  }
  friend bool operator==(const DiffVar&, const DiffVar&) = default;
};

// Canonical display name of a jet variable, e.g. d1^2(d2(y1)) with the
// lowest derivation index outermost.
inline std::string jet_name(const RingContext& ctx, const DiffVar& v) {
  std::string s = ctx.names[v.indet];
  for (std::size_t i = v.op.exps.size(); i-- > 0;) {
    std::uint32_t a = v.op.exps[i];
    if (a == 0) continue;
    std::string wrap = "d" + std::to_string(i + 1);
    if (a > 1) wrap += "^" + std::to_string(a);
    s = wrap + "(" + s + ")";
  }
  return s;
}

// A power product of jet variables; factors kept sorted by canonical
// variable order with positive exponents.
struct DiffMonomial {
  std::vector<std::pair<DiffVar, std::uint32_t>> factors;

  static DiffMonomial one() { return {}; }
  static DiffMonomial var(const DiffVar& v, std::uint32_t e = 1) {
    DiffMonomial mono;
    if (e > 0) mono.factors.emplace_back(v, e);
    return mono;
  }

  bool is_one() const { return factors.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [v, e] : factors) d += e;
    return d;
  }

  unsigned order() const {
    unsigned o = 0;
    for (const auto& [v, e] : factors) o = std::max(o, v.order());
    return o;
  }

  std::uint32_t deg_in(const DiffVar& v) const {
    for (const auto& [w, e] : factors)
      if (w == v) return e;
    return 0;
  }

  DiffMonomial times(const DiffMonomial& o) const {
    DiffMonomial r;
    auto a = factors.begin(), ae = factors.end();
    auto b = o.factors.begin(), be = o.factors.end();
    while (a != ae && b != be) {
      if (a->first < b->first)
        r.factors.push_back(*a++);
      else if (b->first < a->first)
        r.factors.push_back(*b++);
      else {
        r.factors.emplace_back(a->first, a->second + b->second);
        ++a, ++b;
      }
    }
    r.factors.insert(r.factors.end(), a, ae);
    r.factors.insert(r.factors.end(), b, be);
    return r;
  }

  // Replace the exponent of v (0 erases the factor).
  DiffMonomial with_power(const DiffVar& v, std::uint32_t e) const {
    DiffMonomial r;
    bool placed = false;
    for (const auto& f : factors) {
      if (f.first == v) {
        if (e > 0) r.factors.emplace_back(v, e);
        placed = true;
      } else {
        r.factors.push_back(f);
      }
    }
    if (!placed && e > 0) {
      r.factors.emplace_back(v, e);
      std::sort(r.factors.begin(), r.factors.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    return r;
  }

  friend auto operator<=>(const DiffMonomial&, const DiffMonomial&) = default;
};

}  // namespace diffchow

#endif
