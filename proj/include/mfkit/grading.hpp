#pragma once
// Quasi-homogeneous structure.  Potentials here are sums of pure powers
// (x^a, x^a + y^n, x^a + y1^n1 + y2^n2), so a weight vector making f
// homogeneous can be read off the exponents: w_v = L / a_v with L the lcm.
// A factorization of such an f is graded when its entries are homogeneous
// for twists a_i (generators) and b_j (relations) with
//   deg phi_{ij} = b_j - a_i,   deg psi_{jk} = L + a_k - b_j.
// Twists are recovered by propagation along nonzero entries.  Everything
// downstream (hom, ext, syzygy) then works degree by degree in small exact
// solves with no truncation error; inputs that fail detection fall back to
// the capped solvers.

#include <algorithm>
#include <climits>
#include <numeric>
#include <optional>
#include <vector>

#include "mfkit/matrix.hpp"
#include "mfkit/series.hpp"

namespace mfkit {

struct WeightData {
  std::vector<int> w;  // per-variable positive weights
  int fdeg = 0;        // weighted degree of the potential

  int wmax() const { return *std::max_element(w.begin(), w.end()); }
  int wmin() const { return *std::min_element(w.begin(), w.end()); }

  int mono_deg(const Monomial& m) const {
    int d = 0;
    for (std::size_t v = 0; v < w.size(); ++v) d += w[v] * m.e[v];
    return d;
  }

  bool operator==(const WeightData& o) const { return w == o.w && fdeg == o.fdeg; }
};

// weighted degree if the series is homogeneous; nullopt otherwise (zero
// series: callers must check is_zero first, here it reports nullopt too)
template <class K>
std::optional<int> series_wdeg(const Series<K>& s, const WeightData& wd) {
  if (s.is_zero()) return std::nullopt;
  int d = wd.mono_deg(s.ts.front().first);
  for (auto& [m, c] : s.ts)
    if (wd.mono_deg(m) != d) return std::nullopt;
  return d;
}

// weights from a pure-power potential; every ring variable must occur
template <class K>
std::optional<WeightData> detect_weights(const RingPtr& ring, const Series<K>& f) {
  if (f.is_zero()) return std::nullopt;
  const int nv = ring->nvars();
  std::vector<long long> exp_of(nv, 0);
  for (auto& [m, c] : f.ts) {
    int var = -1;
    for (int v = 0; v < nv; ++v)
      if (m.e[v] > 0) {
        if (var >= 0) return std::nullopt;  // mixed monomial
        var = v;
      }
    if (var < 0) return std::nullopt;  // constant term
    if (exp_of[var] != 0) return std::nullopt;
    exp_of[var] = m.e[var];
  }
  long long L = 1;
  for (int v = 0; v < nv; ++v) {
    if (exp_of[v] == 0) return std::nullopt;  // variable missing from f
    L = std::lcm(L, exp_of[v]);
  }
  WeightData wd;
  wd.fdeg = static_cast<int>(L);
  for (int v = 0; v < nv; ++v) wd.w.push_back(static_cast<int>(L / exp_of[v]));
  return wd;
}

// all monomials of the given weighted degree (ascending grevlex within)
inline std::vector<Monomial> weighted_monomials(const RingPtr& ring, const WeightData& wd,
                                                int wdeg) {
  std::vector<Monomial> out;
  if (wdeg < 0) return out;
  const int nv = ring->nvars();
  // depth-first over exponents of each variable
  std::vector<int> e(nv, 0);
  auto rec = [&](auto&& self, int v, int rem) -> void {
    if (v == nv - 1) {
      if (rem % wd.w[v] == 0) {
        e[v] = rem / wd.w[v];
        Monomial mm = Monomial::one();
        for (int i = 0; i < nv; ++i) mm.e[i] = static_cast<std::uint8_t>(e[i]);
        bool fits = true;
        for (int i = 0; i < nv; ++i)
          if (e[i] > 255) fits = false;
        if (fits) out.push_back(mm);
      }
      return;
    }
    for (int k = 0; k * wd.w[v] <= rem; ++k) {
      e[v] = k;
      self(self, v + 1, rem - k * wd.w[v]);
    }
    e[v] = 0;
  };
  rec(rec, 0, wdeg);
  std::sort(out.begin(), out.end(), grevlex_less);
  return out;
}

struct MFTwists {
  WeightData wd;
  std::vector<int> gen;  // a_i, one per row of phi
  std::vector<int> rel;  // b_j, one per column of phi

  int spread() const {
    int lo = gen[0], hi = gen[0];
    for (int t : gen) { lo = std::min(lo, t); hi = std::max(hi, t); }
    for (int t : rel) { lo = std::min(lo, t); hi = std::max(hi, t); }
    return hi - lo;
  }
};

// Recover twists by BFS over the bipartite incidence graph of phi, then
// verify every entry of both matrices.  Disconnected components (direct
// sums) are anchored at zero independently; homs between the blocks then
// live at shifted degrees, which only widens the sweep windows.
template <class K>
std::optional<MFTwists> detect_twists(const Mat<K>& phi, const Mat<K>& psi,
                                      const WeightData& wd) {
  const int n = phi.rows;
  MFTwists tw;
  tw.wd = wd;
  tw.gen.assign(n, 0);
  tw.rel.assign(n, 0);
  std::vector<char> gen_set(n, 0), rel_set(n, 0);

  // precompute entry degrees, bail on inhomogeneous entries
  std::vector<std::vector<int>> pd(n, std::vector<int>(n, INT_MIN));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (phi.at(i, j).is_zero()) continue;
      auto d = series_wdeg(phi.at(i, j), wd);
      if (!d) return std::nullopt;
      pd[i][j] = *d;
    }

  for (int seed = 0; seed < n; ++seed) {
    if (gen_set[seed]) continue;
    gen_set[seed] = 1;
    tw.gen[seed] = 0;
    std::vector<std::pair<bool, int>> queue{{true, seed}};  // (is_row, index)
    while (!queue.empty()) {
      auto [is_row, idx] = queue.back();
      queue.pop_back();
      if (is_row) {
        for (int j = 0; j < n; ++j) {
          if (pd[idx][j] == INT_MIN) continue;
          int b = tw.gen[idx] + pd[idx][j];
          if (!rel_set[j]) {
            rel_set[j] = 1;
            tw.rel[j] = b;
            queue.push_back({false, j});
          } else if (tw.rel[j] != b)
            return std::nullopt;
        }
      } else {
        for (int i = 0; i < n; ++i) {
          if (pd[i][idx] == INT_MIN) continue;
          int a = tw.rel[idx] - pd[i][idx];
          if (!gen_set[i]) {
            gen_set[i] = 1;
            tw.gen[i] = a;
            queue.push_back({true, i});
          } else if (tw.gen[i] != a)
            return std::nullopt;
        }
      }
    }
  }
  // columns never reached (zero columns) stay at twist 0
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (pd[i][j] != INT_MIN && tw.rel[j] != tw.gen[i] + pd[i][j]) return std::nullopt;
  // psi must be homogeneous for the complementary twists
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (psi.at(j, k).is_zero()) continue;
      auto d = series_wdeg(psi.at(j, k), wd);
      if (!d || *d != wd.fdeg + tw.gen[k] - tw.rel[j]) return std::nullopt;
    }
  return tw;
}

// Twists of a rectangular presentation matrix (rows = generators with given
// or propagated twists, columns = relations).
struct PresTwists {
  WeightData wd;
  std::vector<int> row, col;
};

template <class K>
std::optional<PresTwists> detect_pres_twists(const Mat<K>& P, const WeightData& wd) {
  const int r = P.rows, c = P.cols;
  PresTwists tw;
  tw.wd = wd;
  tw.row.assign(r, 0);
  tw.col.assign(c, 0);
  std::vector<char> row_set(r, 0), col_set(c, 0);
  std::vector<std::vector<int>> pd(r, std::vector<int>(c, INT_MIN));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      if (P.at(i, j).is_zero()) continue;
      auto d = series_wdeg(P.at(i, j), wd);
      if (!d) return std::nullopt;
      pd[i][j] = *d;
    }
  for (int seed = 0; seed < r; ++seed) {
    if (row_set[seed]) continue;
    row_set[seed] = 1;
    tw.row[seed] = 0;
    std::vector<std::pair<bool, int>> queue{{true, seed}};
    while (!queue.empty()) {
      auto [is_row, idx] = queue.back();
      queue.pop_back();
      if (is_row) {
        for (int j = 0; j < c; ++j) {
          if (pd[idx][j] == INT_MIN) continue;
          int b = tw.row[idx] + pd[idx][j];
          if (!col_set[j]) {
            col_set[j] = 1;
            tw.col[j] = b;
            queue.push_back({false, j});
          } else if (tw.col[j] != b)
            return std::nullopt;
        }
      } else {
        for (int i = 0; i < r; ++i) {
          if (pd[i][idx] == INT_MIN) continue;
          int a = tw.col[idx] - pd[i][idx];
          if (!row_set[i]) {
            row_set[i] = 1;
            tw.row[i] = a;
            queue.push_back({true, i});
          } else if (tw.row[i] != a)
            return std::nullopt;
        }
      }
    }
  }
  return tw;
}

}  // namespace mfkit
