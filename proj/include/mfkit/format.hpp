#pragma once
// Canonical polynomial text form.  Printing sorts terms grevlex-descending,
// uses balanced signs, no whitespace: "x^3-2*y^2+1".  parse_poly accepts
// exactly the printed language (plus optional whitespace), so print . parse
// is the identity on canonical strings and parse . print is the identity on
// series; both directions are property-tested.

#include <stdexcept>
#include <string>

#include "mfkit/series.hpp"
#include "mfkit/tokens.hpp"

namespace mfkit {

template <class K>
std::string print_poly(const Series<K>& s) {
  if (s.ts.empty()) return "0";
  std::string out;
  // terms descending
  for (auto it = s.ts.rbegin(); it != s.ts.rend(); ++it) {
    const Monomial& m = it->first;
    const K& c = it->second;
    bool neg = c.display_negative();
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    std::string mono;
    for (int v = 0; v < s.ring->nvars(); ++v) {
      if (!m.e[v]) continue;
      if (!mono.empty()) mono += "*";
      mono += s.ring->vars[v];
      if (m.e[v] > 1) mono += "^" + std::to_string(static_cast<int>(m.e[v]));
    }
    std::string abs = c.display_abs();
    if (mono.empty())
      out += abs;
    else if (abs == "1")
      out += mono;
    else
      out += abs + "*" + mono;
  }
  return out;
}

template <class K>
Series<K> parse_poly(const RingPtr& ring, int prec, const std::string& text) {
  auto toks = tokenize_poly(text);
  std::size_t pos = 0;
  auto peek = [&]() -> const Token& { return toks[pos]; };
  auto next = [&]() -> const Token& { return toks[pos++]; };

  Series<K> result(ring, prec);
  bool first = true;
  while (peek().kind != Tok::End) {
    // sign
    bool neg = false;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      neg = next().kind == Tok::Minus;
    } else if (!first) {
      throw std::invalid_argument("polynomial: expected '+' or '-' between terms");
    }
    first = false;

    K coeff = K::one();
    Monomial mono = Monomial::one();
    bool have_any = false;

    if (peek().kind == Tok::Num) {
      std::string num = next().text;
      if (peek().kind == Tok::Slash) {
        next();
        if (peek().kind != Tok::Num)
          throw std::invalid_argument("polynomial: expected denominator after '/'");
        num += "/" + next().text;
      }
      coeff = K::parse(num);
      have_any = true;
      if (peek().kind == Tok::Star) {
        next();
        if (peek().kind != Tok::Name)
          throw std::invalid_argument("polynomial: expected variable after '*'");
      }
    }

    while (peek().kind == Tok::Name) {
      int vi = ring->var_index(peek().text);
      if (vi < 0)
        throw std::invalid_argument("polynomial: unknown variable '" + peek().text + "'");
      next();
      int pow = 1;
      if (peek().kind == Tok::Caret) {
        next();
        if (peek().kind != Tok::Num)
          throw std::invalid_argument("polynomial: expected exponent after '^'");
        pow = std::stoi(next().text);
      }
      mono = mono * Monomial::var(vi, pow);
      have_any = true;
      if (peek().kind == Tok::Star) {
        if (toks[pos + 1].kind != Tok::Name)
          throw std::invalid_argument("polynomial: expected variable after '*'");
        next();
      } else {
        break;
      }
    }

    if (!have_any)
      throw std::invalid_argument("polynomial: empty term");
    if (mono.deg() > prec)
      throw std::invalid_argument("polynomial: term of degree " + std::to_string(mono.deg()) +
                                  " exceeds precision " + std::to_string(prec));
    result.add_term(mono, neg ? -coeff : coeff);
  }
  return result;
}

}  // namespace mfkit
