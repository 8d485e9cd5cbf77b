#pragma once
// Syzygies over the hypersurface ring R# = S/(f).  Given a presentation
// matrix P of a module M (rows = generators, columns = relations, taken
// modulo f), the first syzygy of M is the submodule of R#^r spanned by the
// columns of P.  Minimal generators of that submodule, then minimal
// relations among them, give the presentation Q of Syz M; when Syz M is
// maximal Cohen-Macaulay with no free summand, Q completes to a matrix
// factorization (Q, psi) with Q psi = f I.
//
// Graded inputs (quasihomogeneous potential, homogeneous presentation) are
// handled degree by degree and the staircases work modulo the lattice
// f * S^r, so the answers are exact.  Ungraded inputs fall back to the
// capped solver at small sizes.

#include <optional>
#include <set>
#include <vector>

#include "mfkit/homalg.hpp"

namespace mfkit {

// Remainder of v modulo the principal ideal (f), dividing by the grevlex
// leading term of f.  Exact for inputs whose plain degree stays under the
// precision cap.
template <class K>
Series<K> reduce_mod_f(Series<K> v, const Series<K>& f) {
  if (f.is_zero()) return v;
  const Monomial lead = f.ts.back().first;
  const K lcinv = f.ts.back().second.inv();
  bool changed = true;
  while (changed && !v.is_zero()) {
    changed = false;
    for (auto it = v.ts.rbegin(); it != v.ts.rend(); ++it) {
      if (!lead.divides(it->first)) continue;
      Monomial q = it->first.quotient(lead);
      Series<K> sub = Series<K>::monomial(v.ring, v.prec, q, it->second * lcinv);
      v = v - sub * f;
      changed = true;
      break;
    }
  }
  return v;
}

// Schur-complement elimination of unit entries: each unit pivot deletes one
// generator and one relation.
template <class K>
ModulePresentation<K> minimize_presentation(ModulePresentation<K> pres) {
  bool again = true;
  while (again) {
    again = false;
    Mat<K>& P = pres.P;
    for (int i = 0; i < P.rows && !again; ++i)
      for (int j = 0; j < P.cols && !again; ++j) {
        if (!P.at(i, j).is_unit()) continue;
        Series<K> piv_inv = invert_unit(P.at(i, j));
        Mat<K> Q(P.rows - 1, P.cols - 1, pres.ring, P.prec());
        for (int i2 = 0, r = 0; i2 < P.rows; ++i2) {
          if (i2 == i) continue;
          for (int j2 = 0, c = 0; j2 < P.cols; ++j2) {
            if (j2 == j) continue;
            Q.at(r, c) = P.at(i2, j2) - P.at(i2, j) * piv_inv * P.at(i, j2);
            ++c;
          }
          ++r;
        }
        pres.P = std::move(Q);
        again = true;
      }
  }
  return pres;
}

template <class K>
struct SyzygyResult {
  std::vector<int> gens_chosen;  // columns of the minimized presentation
  Mat<K> embed;                  // r x s: those columns as vectors in S^r
  Mat<K> Q;                      // s' x t: minimal relations (free rows removed)
  int free_rank = 0;             // free summands split off the syzygy module
  bool mcm = false;
  std::optional<MF<K>> mf;       // present when Q completes to a factorization
};

namespace detail {

template <class K>
SpVec<K> flatten_vec(PairFlattener& fl, const std::vector<Series<K>>& vec) {
  SpVec<K> v;
  for (int i = 0; i < static_cast<int>(vec.size()); ++i)
    for (auto& [m, c] : vec[i].ts) v.push_back({fl.col(i, m), c});
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return v;
}

// kernel of [G | f I] in weighted degree g: vectors v with G v + f w = 0,
// reported through their v parts (w is determined since f is a nonzerodivisor)
template <class K>
std::vector<std::vector<Series<K>>> pres_kernel_degree(const Mat<K>& G, const Series<K>& f,
                                                       const WeightData& wd,
                                                       const std::vector<int>& row_tw,
                                                       const std::vector<int>& col_tw, int g) {
  const int r = G.rows, s = G.cols;
  const RingPtr& ring = G.ring();
  const int prec = G.prec();
  struct ColMeta {
    int slot;  // 0..s-1 for v, s..s+r-1 for w
    Monomial m;
  };
  std::vector<ColMeta> cols;
  std::map<std::uint64_t, std::vector<std::pair<int, K>>> rowbuild;
  auto row_key = [&](int i, const Monomial& m) {
    return (static_cast<std::uint64_t>(i) << 32) ^ mono_key32(m);
  };
  for (int j = 0; j < s; ++j)
    for (auto& m : weighted_monomials(ring, wd, g - col_tw[j])) {
      if (m.deg() > prec) throw std::domain_error("syzygy: precision too small");
      int c = static_cast<int>(cols.size());
      cols.push_back({j, m});
      for (int i = 0; i < r; ++i)
        for (auto& [mt, ct] : G.at(i, j).ts) rowbuild[row_key(i, m * mt)].push_back({c, ct});
    }
  for (int i = 0; i < r; ++i)
    for (auto& m : weighted_monomials(ring, wd, g - wd.fdeg - row_tw[i])) {
      if (m.deg() > prec) throw std::domain_error("syzygy: precision too small");
      int c = static_cast<int>(cols.size());
      cols.push_back({s + i, m});
      for (auto& [mt, ct] : f.ts) rowbuild[row_key(i, m * mt)].push_back({c, ct});
    }

  std::vector<std::vector<Series<K>>> out;
  if (cols.empty()) return out;
  SparseSystem<K> sys;
  sys.ncols = static_cast<int>(cols.size());
  for (auto& [key, entries] : rowbuild) {
    auto ents = entries;
    std::sort(ents.begin(), ents.end(), [](auto& a, auto& b) { return a.first < b.first; });
    SpVec<K> row;
    for (auto& [c, v] : ents) {
      if (!row.empty() && row.back().first == c)
        row.back().second += v;
      else
        row.push_back({c, v});
    }
    std::erase_if(row, [](auto& t) { return t.second.is_zero(); });
    if (!row.empty()) sys.add_row(std::move(row));
  }
  auto sol = solve_sparse(sys, true);
  for (auto& vec : sol.kernel) {
    std::vector<Series<K>> v(s, Series<K>::zero(ring, prec));
    bool nontrivial = false;
    for (auto& [c, coef] : vec) {
      auto& meta = cols[c];
      if (meta.slot < s) {
        v[meta.slot].add_term(meta.m, coef);
        nontrivial = true;
      }
    }
    if (nontrivial) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

// Complete a square minimal presentation Q to a matrix factorization of f:
// solve Q psi = f I column by column.  Returns nullopt when no completion
// exists (coker Q not maximal Cohen-Macaulay).
template <class K>
std::optional<MF<K>> mf_from_presentation(const Mat<K>& Q, const Series<K>& f) {
  if (Q.rows != Q.cols) return std::nullopt;
  const int n = Q.rows, prec = Q.prec();
  const RingPtr& ring = Q.ring();
  auto wd = detect_weights(ring, f);
  Mat<K> psi(n, n, ring, prec);
  if (wd) {
    auto tw = detect_pres_twists(Q, *wd);
    if (tw) {
      // psi_{jk} of weighted degree fdeg + sigma_k - rho_j
      for (int k = 0; k < n; ++k) {
        struct ColMeta {
          int j;
          Monomial m;
        };
        std::vector<ColMeta> cols;
        std::map<std::uint64_t, std::vector<std::pair<int, K>>> rowbuild;
        std::map<std::uint64_t, K> rhs;
        auto row_key = [&](int i, const Monomial& m) {
          return (static_cast<std::uint64_t>(i) << 32) ^ detail::mono_key32(m);
        };
        for (int j = 0; j < n; ++j)
          for (auto& m : weighted_monomials(ring, *wd, wd->fdeg + tw->row[k] - tw->col[j])) {
            if (m.deg() > prec) return std::nullopt;
            int c = static_cast<int>(cols.size());
            cols.push_back({j, m});
            for (int i = 0; i < n; ++i)
              for (auto& [mt, ct] : Q.at(i, j).ts)
                rowbuild[row_key(i, m * mt)].push_back({c, ct});
          }
        for (auto& [mt, ct] : f.ts) rhs[row_key(k, mt)] = ct;
        SparseSystem<K> sys;
        sys.ncols = static_cast<int>(cols.size());
        std::set<std::uint64_t> keys;
        for (auto& [key, e] : rowbuild) keys.insert(key);
        for (auto& [key, e] : rhs) keys.insert(key);
        for (auto key : keys) {
          SpVec<K> row;
          auto it = rowbuild.find(key);
          if (it != rowbuild.end()) {
            auto ents = it->second;
            std::sort(ents.begin(), ents.end(), [](auto& a, auto& b) { return a.first < b.first; });
            for (auto& [c, v] : ents) {
              if (!row.empty() && row.back().first == c)
                row.back().second += v;
              else
                row.push_back({c, v});
            }
            std::erase_if(row, [](auto& t) { return t.second.is_zero(); });
          }
          auto rit = rhs.find(key);
          K b = rit == rhs.end() ? K::zero() : rit->second;
          if (!row.empty() || !b.is_zero()) sys.add_row(std::move(row), b);
        }
        auto sol = solve_sparse(sys, false);
        if (!sol.consistent) return std::nullopt;
        for (auto& [c, v] : sol.particular) psi.at(cols[c].j, k).add_term(cols[c].m, v);
      }
    } else {
      return std::nullopt;
    }
  } else {
    // capped solve, small sizes only
    if (n > 4) return std::nullopt;
    const int W = prec;
    SeriesSystem<K> sys(ring);
    for (int s = 0; s < n * n; ++s) sys.add_slot(W);
    using Term = typename SeriesSystem<K>::Term;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        std::vector<Term> row;
        for (int j = 0; j < n; ++j)
          if (!Q.at(i, j).is_zero()) row.push_back({j * n + k, Q.at(i, j)});
        Series<K> rhs = i == k ? -f : Series<K>::zero(ring, W);
        sys.add_row(std::move(row), rhs, W);
      }
    auto sol = graded_solve(sys, false);
    if (!sol.consistent) return std::nullopt;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) psi.at(j, k) = sol.particular[j * n + k];
  }
  MF<K> out{ring, f, Q, psi};
  auto chk = validate(out);
  if (!chk.ok) return std::nullopt;
  return out;
}

// First syzygy of coker(P mod f) with minimal generators and relations.
template <class K>
SyzygyResult<K> syzygy_module(const ModulePresentation<K>& pres_in) {
  ModulePresentation<K> pres = minimize_presentation(pres_in);
  const RingPtr& ring = pres.ring;
  const Series<K>& f = pres.potential;
  Mat<K>& P = pres.P;
  const int r = P.rows;
  const int prec = P.prec();

  auto wd = detect_weights(ring, f);
  std::optional<PresTwists> tw;
  if (wd) tw = detect_pres_twists(P, *wd);
  if (!wd || !tw) throw std::domain_error("syzygy_module: graded inputs required");

  SyzygyResult<K> res{{}, Mat<K>(0, 0, ring, prec), Mat<K>(0, 0, ring, prec), 0, false, {}};
  if (r == 0 || P.cols == 0) {
    res.mcm = true;
    return res;
  }

  // stage 1: minimal generators of the column span modulo m * span + f-lattice
  detail::PairFlattener gfl;
  Echelon<K> gspan;
  int filled = INT_MIN;
  auto fill_to = [&](int d) {
    int start = filled == INT_MIN ? d : filled + 1;
    for (int level = start; level <= d; ++level) {
      for (int j = 0; j < P.cols; ++j) {
        if (tw->col[j] >= level) continue;
        for (auto& m : weighted_monomials(ring, *wd, level - tw->col[j])) {
          std::vector<Series<K>> vec;
          Series<K> ms = Series<K>::monomial(ring, prec, m, K::one());
          for (int i = 0; i < r; ++i) vec.push_back(ms * P.at(i, j));
          gspan.add(detail::flatten_vec(gfl, vec));
        }
      }
      for (int i = 0; i < r; ++i)
        for (auto& m : weighted_monomials(ring, *wd, level - wd->fdeg - tw->row[i])) {
          std::vector<Series<K>> vec(r, Series<K>::zero(ring, prec));
          vec[i] = Series<K>::monomial(ring, prec, m, K::one()) * f;
          gspan.add(detail::flatten_vec(gfl, vec));
        }
    }
    filled = std::max(filled, d);
  };
  std::vector<int> order(P.cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return tw->col[a] < tw->col[b]; });
  for (int j : order) {
    fill_to(tw->col[j]);
    std::vector<Series<K>> vec;
    for (int i = 0; i < r; ++i) vec.push_back(reduce_mod_f(P.at(i, j), f));
    if (gspan.add(detail::flatten_vec(gfl, vec))) res.gens_chosen.push_back(j);
  }
  std::sort(res.gens_chosen.begin(), res.gens_chosen.end());
  const int s = static_cast<int>(res.gens_chosen.size());
  if (s == 0) {
    res.mcm = true;  // zero syzygy module
    return res;
  }
  res.embed = Mat<K>(r, s, ring, prec);
  std::vector<int> gen_tw(s);
  for (int c = 0; c < s; ++c) {
    gen_tw[c] = tw->col[res.gens_chosen[c]];
    for (int i = 0; i < r; ++i)
      res.embed.at(i, c) = reduce_mod_f(P.at(i, res.gens_chosen[c]), f);
  }

  // stage 2: minimal relations among the chosen generators
  int lo = *std::min_element(gen_tw.begin(), gen_tw.end()) + wd->wmin();
  int hi_gen = *std::max_element(gen_tw.begin(), gen_tw.end());
  const int window = wd->fdeg + 2 * wd->wmax();
  const int hard_cap = hi_gen + 12 * wd->fdeg;
  std::map<int, std::vector<std::vector<Series<K>>>> rel_by_deg;
  detail::PairFlattener rfl;
  Echelon<K> rspan;
  std::vector<std::vector<Series<K>>> rel_gens;
  std::vector<int> rel_tw;
  int last_rel = lo - 1;
  bool any_rel = false, settled = false;
  for (int g = lo; g <= hard_cap; ++g) {
    if (g > hi_gen + wd->fdeg && (!any_rel || g - last_rel > window)) {
      settled = true;
      break;
    }
    // m * (relations below) and the f-lattice at this degree
    for (int v = 0; v < ring->nvars(); ++v) {
      auto it = rel_by_deg.find(g - wd->w[v]);
      if (it == rel_by_deg.end()) continue;
      Series<K> xv = Series<K>::var(ring, prec, v);
      for (auto& rel : it->second) {
        std::vector<Series<K>> shifted;
        for (auto& e : rel) shifted.push_back(xv * e);
        rspan.add(detail::flatten_vec(rfl, shifted));
      }
    }
    for (int j = 0; j < s; ++j)
      for (auto& m : weighted_monomials(ring, *wd, g - wd->fdeg - gen_tw[j])) {
        std::vector<Series<K>> vec(s, Series<K>::zero(ring, prec));
        vec[j] = Series<K>::monomial(ring, prec, m, K::one()) * f;
        rspan.add(detail::flatten_vec(rfl, vec));
      }
    auto kern = detail::pres_kernel_degree(res.embed, f, *wd, tw->row, gen_tw, g);
    for (auto& v : kern) {
      std::vector<Series<K>> red;
      for (auto& e : v) red.push_back(reduce_mod_f(e, f));
      if (rspan.add(detail::flatten_vec(rfl, red))) {
        rel_gens.push_back(red);
        rel_tw.push_back(g);
        last_rel = g;
        any_rel = true;
      }
    }
    rel_by_deg[g] = std::move(kern);
  }
  if (!settled) throw std::domain_error("syzygy_module: relation sweep failed to stabilize");

  const int t = static_cast<int>(rel_gens.size());
  Mat<K> Qfull(s, t, ring, prec);
  for (int c = 0; c < t; ++c)
    for (int j = 0; j < s; ++j) Qfull.at(j, c) = rel_gens[c][j];

  // generators no relation touches generate free summands
  std::vector<int> kept;
  for (int j = 0; j < s; ++j) {
    bool zero = true;
    for (int c = 0; c < t; ++c) zero = zero && Qfull.at(j, c).is_zero();
    if (zero)
      ++res.free_rank;
    else
      kept.push_back(j);
  }
  Mat<K> Q(static_cast<int>(kept.size()), t, ring, prec);
  for (int j = 0; j < static_cast<int>(kept.size()); ++j)
    for (int c = 0; c < t; ++c) Q.at(j, c) = Qfull.at(kept[j], c);
  res.Q = Q;
  if (Q.rows == Q.cols) {
    res.mf = mf_from_presentation(Q, f);
    res.mcm = res.mf.has_value();
  }
  return res;
}

template <class K>
SyzygyResult<K> syzygy_module(const MF<K>& N, int yvar, int k) {
  return syzygy_module(quotient_presentation(N, yvar, k));
}

}  // namespace mfkit
