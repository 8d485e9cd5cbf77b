#pragma once
// Truncated multivariate power series: sparse term lists sorted in grevlex
// order, explicit precision (total-degree cutoff) carried per series.  A
// series with precision D represents its class mod m^(D+1); mixed-precision
// arithmetic truncates to the smaller cutoff.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mfkit/ring.hpp"

namespace mfkit {

template <class K>
struct Series {
  RingPtr ring;
  int prec = 0;
  std::vector<std::pair<Monomial, K>> ts;  // grevlex ascending, no zero coeffs

  Series() = default;
  Series(RingPtr r, int p) : ring(std::move(r)), prec(p) {}

  static Series zero(RingPtr r, int p) { return Series(std::move(r), p); }
  static Series constant(RingPtr r, int p, K c) {
    Series s(std::move(r), p);
    if (!c.is_zero()) s.ts.push_back({Monomial::one(), c});
    return s;
  }
  static Series monomial(RingPtr r, int p, Monomial m, K c) {
    Series s(std::move(r), p);
    if (!c.is_zero() && m.deg() <= p) s.ts.push_back({m, c});
    return s;
  }
  static Series var(RingPtr r, int p, int i, int pow = 1) {
    return monomial(std::move(r), p, Monomial::var(i, pow), K::one());
  }

  bool is_zero() const { return ts.empty(); }
  K constant_term() const {
    if (!ts.empty() && ts.front().first.is_one()) return ts.front().second;
    return K::zero();
  }
  bool is_unit() const { return !constant_term().is_zero(); }
  // lowest total degree of a nonzero term; prec+1 for the zero series
  int min_deg() const {
    if (ts.empty()) return prec + 1;
    int d = ts.front().first.deg();
    for (auto& [m, c] : ts) d = std::min(d, m.deg());
    return d;
  }
  int max_deg() const {
    int d = 0;
    for (auto& [m, c] : ts) d = std::max(d, m.deg());
    return d;
  }

  Series truncated(int p) const {
    Series r(ring, std::min(p, prec));
    for (auto& [m, c] : ts)
      if (m.deg() <= r.prec) r.ts.push_back({m, c});
    return r;
  }

  K coeff(const Monomial& m) const {
    auto it = std::lower_bound(ts.begin(), ts.end(), m,
                               [](const std::pair<Monomial, K>& a, const Monomial& b) {
                                 return grevlex_less(a.first, b);
                               });
    if (it != ts.end() && it->first == m) return it->second;
    return K::zero();
  }

  void add_term(const Monomial& m, const K& c) {
    if (c.is_zero() || m.deg() > prec) return;
    auto it = std::lower_bound(ts.begin(), ts.end(), m,
                               [](const std::pair<Monomial, K>& a, const Monomial& b) {
                                 return grevlex_less(a.first, b);
                               });
    if (it != ts.end() && it->first == m) {
      it->second += c;
      if (it->second.is_zero()) ts.erase(it);
    } else {
      ts.insert(it, {m, c});
    }
  }

  Series operator-() const {
    Series r = *this;
    for (auto& [m, c] : r.ts) c = -c;
    return r;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(a.ring, std::min(a.prec, b.prec));
    auto ia = a.ts.begin(), ib = b.ts.begin();
    while (ia != a.ts.end() || ib != b.ts.end()) {
      if (ib == b.ts.end() || (ia != a.ts.end() && grevlex_less(ia->first, ib->first))) {
        if (ia->first.deg() <= r.prec) r.ts.push_back(*ia);
        ++ia;
      } else if (ia == a.ts.end() || grevlex_less(ib->first, ia->first)) {
        if (ib->first.deg() <= r.prec) r.ts.push_back(*ib);
        ++ib;
      } else {
        K c = ia->second + ib->second;
        if (!c.is_zero() && ia->first.deg() <= r.prec) r.ts.push_back({ia->first, c});
        ++ia;
        ++ib;
      }
    }
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    int p = std::min(a.prec, b.prec);
    std::unordered_map<Monomial, K, MonomialHash> acc;
    for (auto& [ma, ca] : a.ts) {
      int da = ma.deg();
      if (da > p) continue;
      for (auto& [mb, cb] : b.ts) {
        if (da + mb.deg() > p) continue;
        K prod = ca * cb;
        auto [it, inserted] = acc.try_emplace(ma * mb, prod);
        if (!inserted) it->second += prod;
      }
    }
    Series r(a.ring, p);
    r.ts.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) r.ts.push_back({m, c});
    std::sort(r.ts.begin(), r.ts.end(),
              [](auto& x, auto& y) { return grevlex_less(x.first, y.first); });
    return r;
  }

  friend Series operator*(const K& c, const Series& a) {
    Series r(a.ring, a.prec);
    if (c.is_zero()) return r;
    r.ts = a.ts;
    for (auto& [m, x] : r.ts) x = c * x;
    std::erase_if(r.ts, [](auto& t) { return t.second.is_zero(); });
    return r;
  }

  bool operator==(const Series& o) const {
    return prec == o.prec && ts == o.ts && ring->same_vars(*o.ring);
  }
};

template <class K>
Series<K> series_add(const Series<K>& a, const Series<K>& b) { return a + b; }
template <class K>
Series<K> series_sub(const Series<K>& a, const Series<K>& b) { return a - b; }
template <class K>
Series<K> series_mul(const Series<K>& a, const Series<K>& b) { return a * b; }

// Multiplicative inverse of a unit, by Newton iteration g <- g(2 - fg).
template <class K>
Series<K> invert_unit(const Series<K>& f) {
  K c0 = f.constant_term();
  if (c0.is_zero()) throw std::domain_error("invert_unit: constant term is zero");
  Series<K> g = Series<K>::constant(f.ring, f.prec, c0.inv());
  Series<K> two = Series<K>::constant(f.ring, f.prec, K::from_int(2));
  // precision doubles each round; min_deg of (1 - fg) tracks progress
  for (int guard = 0; guard < 64; ++guard) {
    Series<K> e = two - f * g;
    g = g * e;
    Series<K> res = Series<K>::constant(f.ring, f.prec, K::one()) - f * g;
    if (res.is_zero()) break;
  }
  return g;
}

// Reinterpret a series in a ring whose variable set contains the original's.
// var_map[i] = index in the target ring of source variable i.
template <class K>
Series<K> map_vars(const Series<K>& s, const RingPtr& target, const std::vector<int>& var_map) {
  Series<K> r(target, s.prec);
  r.ts.reserve(s.ts.size());
  for (auto& [m, c] : s.ts) {
    Monomial mm;
    for (int i = 0; i < MFKIT_MAX_VARS; ++i) {
      if (m.e[i]) {
        if (i >= static_cast<int>(var_map.size()) || var_map[i] < 0)
          throw std::invalid_argument("map_vars: unmapped variable in use");
        mm.e[var_map[i]] = m.e[i];
      }
    }
    r.ts.push_back({mm, c});
  }
  std::sort(r.ts.begin(), r.ts.end(),
            [](auto& x, auto& y) { return grevlex_less(x.first, y.first); });
  return r;
}

// Set one variable to zero and express the result in a smaller ring.
// var_map[i] gives the target index of source variable i, or -1 for the
// killed variable; terms involving it are dropped.
template <class K>
Series<K> kill_var(const Series<K>& s, const RingPtr& target, const std::vector<int>& var_map) {
  Series<K> r(target, s.prec);
  for (auto& [m, c] : s.ts) {
    Monomial mm;
    bool dead = false;
    for (int i = 0; i < MFKIT_MAX_VARS; ++i) {
      if (!m.e[i]) continue;
      if (i >= static_cast<int>(var_map.size()) || var_map[i] < 0) {
        dead = true;
        break;
      }
      mm.e[var_map[i]] = m.e[i];
    }
    if (!dead) r.ts.push_back({mm, c});
  }
  std::sort(r.ts.begin(), r.ts.end(),
            [](auto& x, auto& y) { return grevlex_less(x.first, y.first); });
  return r;
}

}  // namespace mfkit
