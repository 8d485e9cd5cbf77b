#pragma once
// Univariate polynomial arithmetic over the coefficient field, plus enough
// factorization to split idempotents: full Cantor-Zassenhaus over F_p, and
// rational-root / quadratic splitting over Q (larger splitting fields over Q
// are reported as not factorable so callers can answer "inconclusive"
// instead of guessing).

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "mfkit/field.hpp"

namespace mfkit {

template <class K>
struct Poly {
  std::vector<K> c;  // c[i] * T^i, no trailing zeros

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  K lead() const { return c.back(); }

  static Poly zero() { return {}; }
  static Poly one() { return {{K::one()}}; }
  static Poly x() { return {{K::zero(), K::one()}}; }
  static Poly from(std::vector<K> v) {
    Poly p{std::move(v)};
    p.trim();
    return p;
  }

  Poly monic() const {
    Poly r = *this;
    if (r.is_zero()) return r;
    K inv = r.lead().inv();
    for (auto& x : r.c) x = inv * x;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), K::zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), K::zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, K::zero());
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
};

template <class K>
std::pair<Poly<K>, Poly<K>> poly_divmod(Poly<K> a, const Poly<K>& b) {
  if (b.is_zero()) throw std::domain_error("poly: division by zero");
  Poly<K> q;
  q.c.assign(std::max<int>(a.deg() - b.deg() + 1, 0), K::zero());
  K binv = b.lead().inv();
  while (!a.is_zero() && a.deg() >= b.deg()) {
    int d = a.deg() - b.deg();
    K f = a.lead() * binv;
    q.c[d] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) a.c[d + i] -= f * b.c[i];
    a.trim();
  }
  q.trim();
  return {q, a};
}

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    auto [q, r] = poly_divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// extended gcd: returns (g, u, v) with u*a + v*b = g, g monic
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_xgcd(Poly<K> a, Poly<K> b) {
  Poly<K> u0 = Poly<K>::one(), v0 = Poly<K>::zero();
  Poly<K> u1 = Poly<K>::zero(), v1 = Poly<K>::one();
  while (!b.is_zero()) {
    auto [q, r] = poly_divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    Poly<K> u2 = u0 - q * u1, v2 = v0 - q * v1;
    u0 = std::move(u1);
    v0 = std::move(v1);
    u1 = std::move(u2);
    v1 = std::move(v2);
  }
  if (a.is_zero()) return {a, u0, v0};
  K inv = a.lead().inv();
  auto scale = [&](Poly<K>& p) {
    for (auto& x : p.c) x = inv * x;
  };
  scale(a);
  scale(u0);
  scale(v0);
  return {a, u0, v0};
}

template <class K>
Poly<K> poly_mod(const Poly<K>& a, const Poly<K>& m) {
  return poly_divmod(a, m).second;
}

template <class K>
Poly<K> poly_powmod(Poly<K> base, boost::multiprecision::cpp_int e,
                    const Poly<K>& m) {
  Poly<K> r = Poly<K>::one();
  base = poly_mod(base, m);
  while (e > 0) {
    if ((e & 1) != 0) r = poly_mod(r * base, m);
    base = poly_mod(base * base, m);
    e >>= 1;
  }
  return r;
}

template <class K>
Poly<K> poly_derivative(const Poly<K>& a) {
  Poly<K> r;
  for (int i = 1; i <= a.deg(); ++i) r.c.push_back(K::from_int(i) * a.c[i]);
  r.trim();
  return r;
}

// Full factorization over F_p: squarefree + distinct-degree +
// Cantor-Zassenhaus equal-degree splitting (p odd).
inline void factor_fp_rec(Poly<Fp> f, int d, std::mt19937_64& rng,
                          std::vector<Poly<Fp>>& out) {
  if (f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  const std::uint64_t p = Fp::modulus();
  boost::multiprecision::cpp_int e = 1;
  for (int i = 0; i < d; ++i) e *= p;
  boost::multiprecision::cpp_int half = (e - 1) / 2;
  while (true) {
    Poly<Fp> a;
    a.c.resize(f.deg(), Fp::zero());
    for (auto& x : a.c) x = Fp::from_int(static_cast<long long>(rng() % p));
    a.trim();
    if (a.deg() < 1) continue;
    Poly<Fp> b = poly_powmod(a, half, f) - Poly<Fp>::one();
    Poly<Fp> g = poly_gcd(b, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      factor_fp_rec(g, d, rng, out);
      factor_fp_rec(poly_divmod(f, g).first, d, rng, out);
      return;
    }
  }
}

// returns irreducible factors with multiplicity, monic, sorted by degree
inline std::vector<Poly<Fp>> factor_poly(const Poly<Fp>& input, std::uint64_t seed) {
  std::vector<Poly<Fp>> out;
  Poly<Fp> f = input.monic();
  if (f.deg() < 1) return out;
  std::mt19937_64 rng(seed ^ 0x5eedf00dULL);

  // squarefree reduction: repeatedly peel g = f/gcd(f, f'); over F_p with
  // p far above any degree seen here, f' = 0 cannot occur for deg >= 1
  std::vector<std::pair<Poly<Fp>, int>> squarefree;  // (part, multiplicity)
  int mult = 1;
  while (f.deg() >= 1) {
    Poly<Fp> d = poly_derivative(f);
    if (d.is_zero()) throw std::domain_error("factor_poly: inseparable input");
    Poly<Fp> g = poly_gcd(f, d);
    Poly<Fp> part = poly_divmod(f, g).first;  // squarefree, holds each prime once
    if (part.deg() >= 1) squarefree.push_back({part, mult});
    // primes with multiplicity >= 2 survive in g with multiplicity - 1
    f = g;
    ++mult;
    if (mult > 64) throw std::domain_error("factor_poly: runaway multiplicity");
  }
  // the peeled parts are not disjoint (a prime of multiplicity m appears in
  // the first m parts); recover exact multiplicities afterwards
  std::vector<Poly<Fp>> primes;
  for (auto& [part, mu] : squarefree) {
    Poly<Fp> rem = part;
    // distinct-degree
    Poly<Fp> xp = Poly<Fp>::x();
    for (int d = 1; rem.deg() >= 1 && d <= rem.deg(); ++d) {
      xp = poly_powmod(xp, Fp::modulus(), rem);
      Poly<Fp> g = poly_gcd(xp - Poly<Fp>::x(), rem);
      if (g.deg() > 0) {
        factor_fp_rec(g, d, rng, primes);
        rem = poly_divmod(rem, g).first;
        xp = poly_mod(xp, rem);
      }
    }
    if (rem.deg() >= 1) primes.push_back(rem.monic());
  }
  // dedupe primes, then read multiplicities off the input
  std::sort(primes.begin(), primes.end(),
            [](const Poly<Fp>& a, const Poly<Fp>& b) {
              if (a.deg() != b.deg()) return a.deg() < b.deg();
              for (int i = a.deg(); i >= 0; --i)
                if (!(a.c[i] == b.c[i])) return a.c[i].v < b.c[i].v;
              return false;
            });
  primes.erase(std::unique(primes.begin(), primes.end(),
                           [](const Poly<Fp>& a, const Poly<Fp>& b) {
                             return a.deg() == b.deg() && a.c == b.c;
                           }),
               primes.end());
  Poly<Fp> work = input.monic();
  for (auto& pr : primes) {
    while (true) {
      auto [q, r] = poly_divmod(work, pr);
      if (!r.is_zero()) break;
      out.push_back(pr);
      work = q;
    }
  }
  std::sort(out.begin(), out.end(), [](const Poly<Fp>& a, const Poly<Fp>& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int i = a.deg(); i >= 0; --i)
      if (!(a.c[i] == b.c[i])) return a.c[i].v < b.c[i].v;
    return false;
  });
  return out;
}

// Over Q: linear factors by rational root search on the integer model and
// quadratics by discriminant; returns nullopt when the poly has no factor
// reachable this way (caller treats that as inconclusive unless the
// polynomial is linear/quadratic, where the answer is complete).
std::optional<std::vector<Poly<Rat>>> inline factor_poly_partial(const Poly<Rat>& input) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  Poly<Rat> f = input.monic();
  if (f.deg() < 1) return std::vector<Poly<Rat>>{};
  std::vector<Poly<Rat>> out;

  auto try_root_split = [&](Poly<Rat>& g) -> bool {
    // integer model: common denominator then content
    cpp_int den = 1;
    for (auto& x : g.c) den = boost::multiprecision::lcm(den, denominator(x.v));
    std::vector<cpp_int> ic;
    for (auto& x : g.c) ic.push_back(numerator(x.v * cpp_rational(den)));
    cpp_int a0 = ic.front(), an = ic.back();
    if (a0 == 0) {
      out.push_back(Poly<Rat>::x());
      g = poly_divmod(g, Poly<Rat>::x()).first;
      return true;
    }
    auto divisors = [](cpp_int n) {
      n = abs(n);
      std::vector<cpp_int> d;
      for (cpp_int i = 1; i * i <= n && i < 100000; ++i)
        if (n % i == 0) {
          d.push_back(i);
          d.push_back(n / i);
        }
      return d;
    };
    for (auto& p : divisors(a0))
      for (auto& q : divisors(an))
        for (int s = -1; s <= 1; s += 2) {
          cpp_rational r = cpp_rational(s * p, q);
          Rat val = Rat::zero();
          for (int i = g.deg(); i >= 0; --i) val = Rat(r) * val + g.c[i];
          if (val.is_zero()) {
            Poly<Rat> lin = Poly<Rat>::from({Rat(cpp_rational(-r)), Rat::one()});
            out.push_back(lin);
            g = poly_divmod(g, lin).first;
            return true;
          }
        }
    return false;
  };

  while (f.deg() > 0 && try_root_split(f)) {
  }
  if (f.deg() == 0) return out;
  if (f.deg() == 2) {
    // x^2 + bx + c: split iff b^2 - 4c is a rational square
    cpp_rational b = f.c[1].v, c = f.c[0].v;
    cpp_rational disc = b * b - 4 * c;
    cpp_int num = numerator(disc), den = denominator(disc);
    if (disc >= 0) {
      cpp_int sn = sqrt(num), sd = sqrt(den);
      if (sn * sn == num && sd * sd == den) {
        cpp_rational root1 = (-b + cpp_rational(sn, sd)) / 2;
        out.push_back(Poly<Rat>::from({Rat(-root1), Rat::one()}));
        out.push_back(Poly<Rat>::from({Rat(root1 + b), Rat::one()}));
        return out;
      }
    }
    out.push_back(f);  // irreducible quadratic: complete factorization
    return out;
  }
  return std::nullopt;  // higher degree without rational roots: give up
}

}  // namespace mfkit
