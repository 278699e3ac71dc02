// Text formats: the polynomial expression grammar (terms like
// 3/2*d1^2(y1)*d2(u0_1)^3), the line-oriented system file, and the
// canonical printer. parse(print(x)) is the identity on canonical forms.
#ifndef DIFFCHOW_IO_HPP
#define DIFFCHOW_IO_HPP

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "diffchow/diffpoly.hpp"
#include "diffchow/errors.hpp"
#include "diffchow/kolchin.hpp"
#include "diffchow/quasigeneric.hpp"
#include "diffchow/ranking.hpp"

namespace diffchow {

namespace io_detail {

struct Token {
  enum class Kind { number, name, plus, minus, star, caret, slash, lparen,
                    rparen, comma, end };
  Kind kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line) : text_(text), line_(line) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    int col = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size()) return {Token::Kind::end, "", line_, col};
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      return {Token::Kind::number, std::string(text_.substr(start, pos_ - start)),
              line_, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      return {Token::Kind::name, std::string(text_.substr(start, pos_ - start)),
              line_, col};
    }
    ++pos_;
    switch (c) {
      case '+': return {Token::Kind::plus, "+", line_, col};
      case '-': return {Token::Kind::minus, "-", line_, col};
      case '*': return {Token::Kind::star, "*", line_, col};
      case '^': return {Token::Kind::caret, "^", line_, col};
      case '/': return {Token::Kind::slash, "/", line_, col};
      case '(': return {Token::Kind::lparen, "(", line_, col};
      case ')': return {Token::Kind::rparen, ")", line_, col};
      case ',': return {Token::Kind::comma, ",", line_, col};
    }
    throw parse_error(line_, col, std::string("unexpected character '") + c + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
};

class PolyParser {
 public:
  PolyParser(std::string_view text, Ctx ctx, int line)
      : lex_(text, line), ctx_(std::move(ctx)), line_(line) {
    advance();
  }

  DiffPoly parse_expression() {
    int sign = 1;
    if (tok_.kind == Token::Kind::minus) {
      sign = -1;
      advance();
    } else if (tok_.kind == Token::Kind::plus) {
      advance();
    }
    DiffPoly acc = Q(sign) * parse_term();
    while (tok_.kind == Token::Kind::plus || tok_.kind == Token::Kind::minus) {
      int s = tok_.kind == Token::Kind::plus ? 1 : -1;
      advance();
      acc += Q(s) * parse_term();
    }
    return acc;
  }

  void expect_end() {
    if (tok_.kind != Token::Kind::end)
      throw parse_error(tok_.line, tok_.col,
                        "unexpected trailing input '" + tok_.text + "'");
  }

 private:
  void advance() { tok_ = lex_.next(); }

  void expect(Token::Kind k, const char* what) {
    if (tok_.kind != k)
      throw parse_error(tok_.line, tok_.col,
                        std::string("expected ") + what);
    advance();
  }

  unsigned parse_uint(const char* what) {
    if (tok_.kind != Token::Kind::number)
      throw parse_error(tok_.line, tok_.col, std::string("expected ") + what);
    unsigned long v = std::stoul(tok_.text);
    advance();
    return static_cast<unsigned>(v);
  }

  DiffPoly parse_term() {
    DiffPoly acc = parse_factor();
    while (tok_.kind == Token::Kind::star) {
      advance();
      acc = acc * parse_factor();
    }
    return acc;
  }

  DiffPoly parse_factor() {
    DiffPoly base = parse_primary();
    if (tok_.kind == Token::Kind::caret) {
      advance();
      unsigned e = parse_uint("an exponent");
      base = base.pow(e);
    }
    return base;
  }

  static std::optional<std::size_t> derivation_index(const std::string& name) {
    if (name.size() < 2 || name[0] != 'd') return std::nullopt;
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        return std::nullopt;
    return std::stoul(name.substr(1));
  }

  DiffPoly parse_primary() {
    if (tok_.kind == Token::Kind::number) {
      Z num(tok_.text);
      advance();
      Q c(num);
      if (tok_.kind == Token::Kind::slash) {
        advance();
        if (tok_.kind != Token::Kind::number)
          throw parse_error(tok_.line, tok_.col, "expected a denominator");
        Z den(tok_.text);
        if (den == 0)
          throw parse_error(tok_.line, tok_.col, "zero denominator");
        advance();
        c = Q(num, den);
        c.canonicalize();
      }
      return DiffPoly::constant(ctx_, c);
    }
    if (tok_.kind == Token::Kind::lparen) {
      advance();
      DiffPoly inner = parse_expression();
      expect(Token::Kind::rparen, "')'");
      return inner;
    }
    if (tok_.kind == Token::Kind::name) {
      Token name = tok_;
      if (auto k = derivation_index(name.text)) {
        advance();
        if (*k < 1 || *k > ctx_->m)
          throw parse_error(name.line, name.col,
                            "derivation index out of range");
        unsigned e = 1;
        if (tok_.kind == Token::Kind::caret) {
          advance();
          e = parse_uint("an exponent");
        }
        expect(Token::Kind::lparen, "'(' after a derivation");
        DiffPoly inner = parse_expression();
        expect(Token::Kind::rparen, "')'");
        return inner.differentiate(DerOp::single(ctx_->m, *k - 1, e));
      }
      advance();
      auto idx = ctx_->find(name.text);
      if (!idx)
        throw parse_error(name.line, name.col,
                          "unknown symbol '" + name.text + "'");
      return DiffPoly::var(
          ctx_, DiffVar(static_cast<std::uint32_t>(*idx),
                        DerOp::identity(ctx_->m)));
    }
    throw parse_error(tok_.line, tok_.col, "expected a term");
  }

  Lexer lex_;
  Token tok_{Token::Kind::end, "", 0, 0};
  Ctx ctx_;
  int line_;
};

// Display order of terms: lex with higher canonical variables first, so
// y2 - y1^2 prints with the y2 term leading.
inline bool print_before(const DiffMonomial& a, const DiffMonomial& b) {
  auto ia = a.factors.rbegin(), ea = a.factors.rend();
  auto ib = b.factors.rbegin(), eb = b.factors.rend();
  while (ia != ea && ib != eb) {
    if (ia->first != ib->first) return ib->first < ia->first;
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia, ++ib;
  }
  return ib != eb ? false : ia != ea;
}

}  // namespace io_detail

inline DiffPoly parse_poly(std::string_view text, const Ctx& ctx,
                           int line = 1) {
  io_detail::PolyParser p(text, ctx, line);
  DiffPoly out = p.parse_expression();
  p.expect_end();
  return out;
}

inline std::string print_monomial(const Ctx& ctx, const DiffMonomial& mono) {
  std::string s;
  for (const auto& [v, e] : mono.factors) {
    if (!s.empty()) s += "*";
    s += jet_name(*ctx, v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

inline std::string print_poly(const DiffPoly& f) {
  if (f.is_zero()) return "0";
  std::vector<const DiffMonomial*> order;
  for (const auto& [mono, c] : f.terms()) order.push_back(&mono);
  std::sort(order.begin(), order.end(),
            [](const DiffMonomial* a, const DiffMonomial* b) {
              return io_detail::print_before(*a, *b);
            });
  std::string out;
  bool first = true;
  for (const DiffMonomial* mono : order) {
    Q c = f.coeff(*mono);
    bool neg = c < 0;
    Q mag = neg ? Q(-c) : c;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string ms = print_monomial(f.ctx(), *mono);
    if (ms.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += ms;
    } else {
      out += mag.get_str() + "*" + ms;
    }
  }
  return out;
}

// Binomial-basis rendering, e.g. "C(t+2,2) - C(t+1,1) + 3".
inline std::string print_numerical(const NumericalPolynomial& w) {
  std::string out;
  bool first = true;
  for (std::size_t i = w.m + 1; i-- > 0;) {
    const Q& c = w.coeffs[i];
    if (c == 0) continue;
    bool neg = c < 0;
    Q mag = neg ? Q(-c) : c;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    if (i == 0) {
      out += mag.get_str();
    } else {
      std::string basis =
          "C(t+" + std::to_string(i) + "," + std::to_string(i) + ")";
      out += (mag == 1 ? basis : mag.get_str() + "*" + basis);
    }
  }
  return first ? "0" : out;
}

struct SystemFile {
  Ctx ctx;
  Ranking::Kind ranking = Ranking::Kind::orderly;
  std::optional<unsigned> tmax;
  std::optional<std::vector<DiffPoly>> charset;
  std::optional<std::vector<DiffPoly>> polys;
  std::optional<QuasiGenericSpec> quasigeneric;
};

namespace io_detail {

inline std::string strip(std::string s) {
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool key_line(const std::string& s, std::string& key,
                     std::string& value) {
  std::size_t i = 0;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                          s[i] == '_' || s[i] == '-'))
    ++i;
  if (i == 0 || i >= s.size() || s[i] != ':') return false;
  key = s.substr(0, i);
  value = strip(s.substr(i + 1));
  return true;
}

}  // namespace io_detail

inline SystemFile parse_system(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  SystemFile sys;
  std::optional<std::size_t> m;
  std::vector<std::string> vars;
  enum class Section { none, charset, polys, quasigeneric };
  Section section = Section::none;
  std::optional<unsigned> qg_order;
  std::vector<DiffMonomial> qg_support;
  bool saw_qg_support = false;

  auto need_ctx = [&](int ln) {
    if (!sys.ctx)
      throw parse_error(ln, 1, "m and vars must come before this line");
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string s = io_detail::strip(raw);
    if (s.empty()) continue;
    std::string key, value;
    bool is_key = io_detail::key_line(s, key, value);

    if (is_key && (key == "m" || key == "vars" || key == "ranking" ||
                   key == "tmax" || key == "charset" || key == "polys" ||
                   key == "quasigeneric")) {
      section = Section::none;
      if (key == "m") {
        if (value.empty())
          throw parse_error(line_no, 1, "m needs a value");
        m = std::stoul(value);
        if (*m < 1) throw parse_error(line_no, 1, "m must be at least 1");
      } else if (key == "vars") {
        std::istringstream vs(value);
        std::string name;
        while (std::getline(vs, name, ',')) {
          name = io_detail::strip(name);
          if (name.empty())
            throw parse_error(line_no, 1, "empty variable name");
          bool reserved = name.size() >= 2 && name[0] == 'd';
          for (std::size_t i = 1; reserved && i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i])))
              reserved = false;
          if (reserved)
            throw parse_error(line_no, 1,
                              "'" + name + "' is reserved for derivations");
          vars.push_back(name);
        }
        if (!m) throw parse_error(line_no, 1, "m must come before vars");
        try {
          sys.ctx = make_context(*m, vars);
        } catch (const error& e) {
          throw parse_error(line_no, 1, e.what());
        }
      } else if (key == "ranking") {
        if (value == "orderly")
          sys.ranking = Ranking::Kind::orderly;
        else if (value == "elim")
          sys.ranking = Ranking::Kind::elimination;
        else
          throw parse_error(line_no, 1,
                            "ranking must be 'orderly' or 'elim'");
      } else if (key == "tmax") {
        sys.tmax = static_cast<unsigned>(std::stoul(value));
      } else if (key == "charset") {
        need_ctx(line_no);
        sys.charset.emplace();
        section = Section::charset;
      } else if (key == "polys") {
        need_ctx(line_no);
        sys.polys.emplace();
        section = Section::polys;
      } else {
        need_ctx(line_no);
        section = Section::quasigeneric;
      }
      continue;
    }

    if (section == Section::quasigeneric && is_key && key == "order") {
      qg_order = static_cast<unsigned>(std::stoul(value));
      continue;
    }
    if (section == Section::quasigeneric && is_key && key == "support") {
      saw_qg_support = true;
      std::istringstream ss(value);
      std::string item;
      int col_base = 1;
      while (std::getline(ss, item, ',')) {
        std::string mtext = io_detail::strip(item);
        if (mtext.empty())
          throw parse_error(line_no, col_base, "empty support monomial");
        DiffPoly p = parse_poly(mtext, sys.ctx, line_no);
        if (p.term_count() != 1 || p.terms().begin()->second != 1)
          throw parse_error(line_no, col_base,
                            "support entries must be monomials with "
                            "coefficient 1");
        qg_support.push_back(p.terms().begin()->first);
        ++col_base;
      }
      continue;
    }

    switch (section) {
      case Section::charset:
        sys.charset->push_back(parse_poly(s, sys.ctx, line_no));
        break;
      case Section::polys:
        sys.polys->push_back(parse_poly(s, sys.ctx, line_no));
        break;
      case Section::quasigeneric:
        throw parse_error(line_no, 1,
                          "expected 'order:' or 'support:' in quasigeneric");
      case Section::none:
        throw parse_error(line_no, 1, "unexpected line outside any section");
    }
  }
  if (!sys.ctx) throw parse_error(line_no, 1, "missing m and vars");
  if (qg_order || saw_qg_support) {
    if (!qg_order)
      throw parse_error(line_no, 1, "quasigeneric block misses order");
    sys.quasigeneric = QuasiGenericSpec{*qg_order, std::move(qg_support)};
  }
  return sys;
}

inline std::string print_system(const SystemFile& sys) {
  std::string out;
  out += "m: " + std::to_string(sys.ctx->m) + "\n";
  out += "vars: ";
  for (std::size_t i = 0; i < sys.ctx->size(); ++i) {
    if (i) out += ", ";
    out += sys.ctx->names[i];
  }
  out += "\n";
  out += std::string("ranking: ") +
         (sys.ranking == Ranking::Kind::orderly ? "orderly" : "elim") + "\n";
  if (sys.tmax) out += "tmax: " + std::to_string(*sys.tmax) + "\n";
  if (sys.charset) {
    out += "charset:\n";
    for (const auto& p : *sys.charset) out += "  " + print_poly(p) + "\n";
  }
  if (sys.polys) {
    out += "polys:\n";
    for (const auto& p : *sys.polys) out += "  " + print_poly(p) + "\n";
  }
  if (sys.quasigeneric) {
    out += "quasigeneric:\n";
    out += "  order: " + std::to_string(sys.quasigeneric->order) + "\n";
    out += "  support: ";
    for (std::size_t i = 0; i < sys.quasigeneric->support.size(); ++i) {
      if (i) out += ", ";
      const DiffMonomial& mono = sys.quasigeneric->support[i];
      out += mono.is_one() ? "1" : print_monomial(sys.ctx, mono);
    }
    out += "\n";
  }
  return out;
}

}  // namespace diffchow

#endif
