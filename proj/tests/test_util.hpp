#pragma once
// Shared helpers for the test suites: seeded random series/matrices and the
// standard E6/E8 style two-variable rings.

#include <random>
#include <string>

#include "mfkit/field.hpp"
#include "mfkit/format.hpp"
#include "mfkit/matrix.hpp"
#include "mfkit/series.hpp"

namespace tu {

using mfkit::Fp;
using mfkit::Mat;
using mfkit::Monomial;
using mfkit::RingPtr;
using mfkit::Series;

inline RingPtr ring_xy() {
  static RingPtr r = mfkit::make_ring({"x", "y"});
  return r;
}
inline RingPtr ring_x() {
  static RingPtr r = mfkit::make_ring({"x"});
  return r;
}

template <class K>
Series<K> sp(const RingPtr& r, int prec, const std::string& text) {
  return mfkit::parse_poly<K>(r, prec, text);
}

template <class K>
Series<K> random_series(std::mt19937_64& rng, const RingPtr& r, int prec, int terms,
                        int maxdeg, bool allow_unit = true) {
  Series<K> s(r, prec);
  std::uniform_int_distribution<int> dd(allow_unit ? 0 : 1, maxdeg);
  std::uniform_int_distribution<long long> dc(1, 50);
  for (int t = 0; t < terms; ++t) {
    int d = dd(rng);
    Monomial m;
    for (int split = 0; split < d; ++split) {
      std::uniform_int_distribution<int> dv(0, r->nvars() - 1);
      m = m * Monomial::var(dv(rng));
    }
    s.add_term(m, K::from_int(dc(rng) * (rng() % 2 ? 1 : -1)));
  }
  return s;
}

template <class K>
Mat<K> random_matrix(std::mt19937_64& rng, const RingPtr& r, int rows, int cols, int prec,
                     int maxdeg, bool allow_unit = true) {
  Mat<K> m(rows, cols, r, prec);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = random_series<K>(rng, r, prec, 3, maxdeg, allow_unit);
  return m;
}

// invertible over the local ring: unit constant part + series garbage
template <class K>
Mat<K> random_invertible(std::mt19937_64& rng, const RingPtr& r, int n, int prec, int maxdeg) {
  while (true) {
    Mat<K> m = random_matrix<K>(rng, r, n, n, prec, maxdeg, true);
    for (int i = 0; i < n; ++i)
      m.at(i, i) = m.at(i, i) + Series<K>::constant(r, prec, K::one());
    try {
      (void)mfkit::invert_matrix(m);
      return m;
    } catch (const std::domain_error&) {
      // constant part happened to be singular; draw again
    }
  }
}

}  // namespace tu
