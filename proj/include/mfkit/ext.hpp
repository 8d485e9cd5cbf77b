#pragma once
// Ext^1 between factorizations.  An extension 0 -> Y -> E -> X -> 0 of the
// cokernels is classified by a pair (a, b) with
//   E_phi = [[phi_Y, a], [0, phi_X]],  E_psi = [[psi_Y, b], [0, psi_X]]
// and the factorization identity forces the cocycle equations
//   phi_Y b + a psi_X = 0,   psi_Y a + b phi_X = 0.
// Basis changes preserving the triangle shift (a, b) by the coboundaries
//   (phi_Y u - v phi_X,  psi_Y v - u psi_X),
// so Ext^1 = cocycles / coboundaries.  Graded inputs are handled degree by
// degree (exact); ungraded ones through the capped solver at small sizes.

#include <map>
#include <memory>
#include <vector>

#include "mfkit/homalg.hpp"

namespace mfkit {

namespace detail {

// cocycle pairs of weighted degree g, exact kernel solve
template <class K>
std::vector<HomPair<K>> ext_graded_degree(const MF<K>& X, const MF<K>& Y,
                                          const MFTwists& tx, const MFTwists& ty, int g) {
  const int nX = X.size(), nY = Y.size();
  const int prec = std::min(X.prec(), Y.prec());
  const RingPtr& ring = X.ring;
  const WeightData& wd = tx.wd;

  struct ColMeta {
    int part, i, j;  // part 0: a (Y-gen x X-rel), part 1: b (Y-rel x X-gen)
    Monomial m;
  };
  std::vector<ColMeta> cols;
  std::map<std::uint64_t, std::vector<std::pair<int, K>>> rowbuild;
  auto row_key = [&](int part, int i, int j, const Monomial& m) {
    return (static_cast<std::uint64_t>((part * nY + i) * nX + j) << 32) ^ mono_key32(m);
  };

  for (int part = 0; part < 2; ++part)
    for (int i = 0; i < nY; ++i)
      for (int j = 0; j < nX; ++j) {
        int w = part == 0 ? g + tx.rel[j] - ty.gen[i] : g + wd.fdeg + tx.gen[j] - ty.rel[i];
        for (auto& m : weighted_monomials(ring, wd, w)) {
          if (m.deg() > prec)
            throw std::domain_error("ext1: precision too small for graded window");
          int c = static_cast<int>(cols.size());
          cols.push_back({part, i, j, m});
          if (part == 0) {
            // a_{ij}: (a psi_X)_{i,j2} and (psi_Y a)_{i2,j}
            for (int j2 = 0; j2 < nX; ++j2)
              for (auto& [mt, ct] : X.psi.at(j, j2).ts)
                rowbuild[row_key(0, i, j2, m * mt)].push_back({c, ct});
            for (int i2 = 0; i2 < nY; ++i2)
              for (auto& [mt, ct] : Y.psi.at(i2, i).ts)
                rowbuild[row_key(1, i2, j, m * mt)].push_back({c, ct});
          } else {
            // b_{ij}: (phi_Y b)_{i2,j} and (b phi_X)_{i,j2}
            for (int i2 = 0; i2 < nY; ++i2)
              for (auto& [mt, ct] : Y.phi.at(i2, i).ts)
                rowbuild[row_key(0, i2, j, m * mt)].push_back({c, ct});
            for (int j2 = 0; j2 < nX; ++j2)
              for (auto& [mt, ct] : X.phi.at(j, j2).ts)
                rowbuild[row_key(1, i, j2, m * mt)].push_back({c, ct});
          }
        }
      }

  std::vector<HomPair<K>> out;
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
    HomPair<K> h{Mat<K>(nY, nX, ring, prec), Mat<K>(nY, nX, ring, prec)};
    for (auto& [c, v] : vec) {
      auto& meta = cols[c];
      (meta.part == 0 ? h.alpha : h.beta).at(meta.i, meta.j).add_term(meta.m, v);
    }
    out.push_back(std::move(h));
  }
  return out;
}

// coboundary generator pairs of weighted degree g: u and v swept over
// elementary matrices times monomials
template <class K>
std::vector<HomPair<K>> ext_cob_degree(const MF<K>& X, const MF<K>& Y, const MFTwists& tx,
                                       const MFTwists& ty, int g) {
  const int nX = X.size(), nY = Y.size();
  const int prec = std::min(X.prec(), Y.prec());
  const RingPtr& ring = X.ring;
  const WeightData& wd = tx.wd;
  std::vector<HomPair<K>> gens;
  for (int i = 0; i < nY; ++i)
    for (int j = 0; j < nX; ++j) {
      for (auto& m : weighted_monomials(ring, wd, g + tx.rel[j] - ty.rel[i])) {
        // u = m E_{ij}: (phi_Y u, -u psi_X)
        if (m.deg() > prec) throw std::domain_error("ext1: precision too small");
        HomPair<K> h{Mat<K>(nY, nX, ring, prec), Mat<K>(nY, nX, ring, prec)};
        for (int r = 0; r < nY; ++r)
          for (auto& [mt, ct] : Y.phi.at(r, i).ts) h.alpha.at(r, j).add_term(mt * m, ct);
        for (int c2 = 0; c2 < nX; ++c2)
          for (auto& [mt, ct] : X.psi.at(j, c2).ts) h.beta.at(i, c2).add_term(mt * m, -ct);
        gens.push_back(std::move(h));
      }
      for (auto& m : weighted_monomials(ring, wd, g + tx.gen[j] - ty.gen[i])) {
        // v = m E_{ij}: (-v phi_X, psi_Y v)
        if (m.deg() > prec) throw std::domain_error("ext1: precision too small");
        HomPair<K> h{Mat<K>(nY, nX, ring, prec), Mat<K>(nY, nX, ring, prec)};
        for (int c2 = 0; c2 < nX; ++c2)
          for (auto& [mt, ct] : X.phi.at(j, c2).ts) h.alpha.at(i, c2).add_term(mt * m, -ct);
        for (int r = 0; r < nY; ++r)
          for (auto& [mt, ct] : Y.psi.at(r, i).ts) h.beta.at(r, j).add_term(mt * m, ct);
        gens.push_back(std::move(h));
      }
    }
  return gens;
}

}  // namespace detail

template <class K>
struct Ext1Space {
  MF<K> X, Y;
  bool graded = false;
  MFTwists tx, ty;  // valid when graded
  int flat_cap = 0;  // valid when not graded
  int dim = 0;
  bool stable = true;  // exact for graded inputs; cap agreement otherwise
  std::vector<HomPair<K>> reps;
  std::vector<int> rep_deg;  // parallel, graded only
  // act[v]: dim x dim matrix of the x_v action, column t = coordinates of
  // x_v * reps[t] in the rep basis
  std::vector<std::vector<std::vector<K>>> act;

  struct DegData {
    detail::PairFlattener fl;
    TrackedEchelon<K> tracked;  // coboundary generators first, then class reps
    int n_cob = 0;
    std::vector<int> rep_ids;
  };
  std::map<int, DegData> degs;  // graded path
  // ungraded path: one shared flattener/echelon at flat_cap
  detail::PairFlattener flat_fl;
  TrackedEchelon<K> flat_tracked;
  int flat_n_cob = 0;

  DegData& degree(int g) {
    auto it = degs.find(g);
    if (it != degs.end()) return it->second;
    DegData& dd = degs[g];
    for (auto& h : detail::ext_cob_degree(X, Y, tx, ty, g))
      dd.tracked.add(detail::flatten_pair(dd.fl, h));
    dd.n_cob = dd.tracked.n_inputs;
    return dd;
  }

  // weighted degree of a homogeneous pair under this space's twist anchors;
  // nullopt for inhomogeneous input, INT_MIN for the zero pair
  std::optional<int> pair_wdeg(const HomPair<K>& ab) const {
    const WeightData& wd = tx.wd;
    std::optional<int> g;
    auto merge = [&](const Series<K>& s, int off) -> bool {
      if (s.is_zero()) return true;
      auto d = series_wdeg(s, wd);
      if (!d) return false;
      int gg = *d - off;
      if (g && *g != gg) return false;
      g = gg;
      return true;
    };
    for (int i = 0; i < Y.size(); ++i)
      for (int j = 0; j < X.size(); ++j) {
        if (!merge(ab.alpha.at(i, j), tx.rel[j] - ty.gen[i])) return std::nullopt;
        if (!merge(ab.beta.at(i, j), wd.fdeg + tx.gen[j] - ty.rel[i])) return std::nullopt;
      }
    return g ? g : std::optional<int>(INT_MIN);
  }

  // class coordinates of a homogeneous cocycle pair over the global rep
  // basis; throws if the pair is not a cocycle combination
  std::vector<K> class_coords(const HomPair<K>& ab) {
    std::vector<K> out(dim, K::zero());
    if (graded) {
      auto g = pair_wdeg(ab);
      if (!g) throw std::domain_error("ext1: pair is not weighted homogeneous");
      if (*g == INT_MIN) return out;
      DegData& dd = degree(*g);
      auto expr = dd.tracked.express(detail::flatten_pair(dd.fl, ab));
      if (!expr)
        throw std::domain_error("ext1: pair is not a recognized cocycle at its degree");
      for (std::size_t t = dd.n_cob; t < expr->size(); ++t)
        out[dd.rep_ids[t - dd.n_cob]] = (*expr)[t];
      return out;
    }
    auto expr = flat_tracked.express(detail::flatten_pair(flat_fl, ab));
    if (!expr) throw std::domain_error("ext1: pair is not a recognized cocycle");
    for (std::size_t t = flat_n_cob; t < expr->size(); ++t) out[t - flat_n_cob] = (*expr)[t];
    return out;
  }

  bool in_coboundaries(const HomPair<K>& ab) {
    auto coords = class_coords(ab);
    for (auto& c : coords)
      if (!c.is_zero()) return false;
    return true;
  }
};

namespace detail {

template <class K>
void ext_graded_build(Ext1Space<K>& E) {
  const WeightData& wd = E.tx.wd;
  const int nX = E.X.size(), nY = E.Y.size();
  int lo = INT_MAX, hi_tw = INT_MIN;
  for (int i = 0; i < nY; ++i)
    for (int j = 0; j < nX; ++j) {
      lo = std::min({lo, E.ty.gen[i] - E.tx.rel[j], E.ty.rel[i] - E.tx.gen[j] - wd.fdeg});
      hi_tw = std::max({hi_tw, E.ty.gen[i] - E.tx.rel[j], E.ty.rel[i] - E.tx.gen[j] - wd.fdeg});
    }
  const int window = wd.fdeg + 2 * wd.wmax();
  const int hard_cap = hi_tw + 12 * wd.fdeg;
  int last_class = lo - 1;
  bool any_class = false, settled = false;
  for (int g = lo; g <= hard_cap; ++g) {
    if (g > hi_tw + wd.fdeg && (!any_class || g - last_class > window)) {
      settled = true;
      break;
    }
    auto& dd = E.degree(g);
    for (auto& z : detail::ext_graded_degree(E.X, E.Y, E.tx, E.ty, g)) {
      if (!dd.tracked.add(detail::flatten_pair(dd.fl, z))) {
        dd.rep_ids.push_back(static_cast<int>(E.reps.size()));
        E.reps.push_back(z);
        E.rep_deg.push_back(g);
        last_class = g;
        any_class = true;
      }
    }
  }
  if (!settled) throw std::domain_error("ext1: class sweep failed to stabilize");
  E.dim = static_cast<int>(E.reps.size());
}

template <class K>
void ext_flat_build(Ext1Space<K>& E, int D) {
  const int nX = E.X.size(), nY = E.Y.size();
  const int n = std::max(nX, nY);
  if (n > 4) throw std::domain_error("ext1: input too large for the ungraded solver");
  const RingPtr& ring = E.X.ring;
  const int nv = ring->nvars();
  const int W = std::min(D, n <= 2 ? 8 : 6);
  const int prec = std::min({E.X.prec(), E.Y.prec(), W});
  E.flat_cap = prec;

  auto build_at = [&](int cap, detail::PairFlattener& fl, TrackedEchelon<K>& tr, int& ncob,
                      std::vector<HomPair<K>>* reps_out) -> int {
    // coboundary generators: u, v over elementary matrices x monomials
    for (int i = 0; i < nY; ++i)
      for (int j = 0; j < nX; ++j)
        for (auto& m : monomials_up_to(nv, cap)) {
          {
            HomPair<K> h{Mat<K>(nY, nX, ring, cap), Mat<K>(nY, nX, ring, cap)};
            for (int r = 0; r < nY; ++r)
              for (auto& [mt, ct] : E.Y.phi.at(r, i).ts) h.alpha.at(r, j).add_term(mt * m, ct);
            for (int c2 = 0; c2 < nX; ++c2)
              for (auto& [mt, ct] : E.X.psi.at(j, c2).ts) h.beta.at(i, c2).add_term(mt * m, -ct);
            tr.add(detail::flatten_pair(fl, h));
          }
          {
            HomPair<K> h{Mat<K>(nY, nX, ring, cap), Mat<K>(nY, nX, ring, cap)};
            for (int c2 = 0; c2 < nX; ++c2)
              for (auto& [mt, ct] : E.X.phi.at(j, c2).ts) h.alpha.at(i, c2).add_term(mt * m, -ct);
            for (int r = 0; r < nY; ++r)
              for (auto& [mt, ct] : E.Y.psi.at(r, i).ts) h.beta.at(r, j).add_term(mt * m, ct);
            tr.add(detail::flatten_pair(fl, h));
          }
        }
    ncob = tr.n_inputs;

    // cocycles at the cap
    SeriesSystem<K> sys(ring);
    auto aslot = [&](int i, int j) { return i * nX + j; };
    auto bslot = [&](int i, int j) { return nY * nX + i * nX + j; };
    for (int s = 0; s < 2 * nY * nX; ++s) sys.add_slot(cap);
    int delta = 1;
    auto scan = [&](const Mat<K>& M) {
      for (auto& s : M.a)
        if (!s.is_zero()) delta = std::min(delta, s.min_deg());
    };
    scan(E.X.phi);
    scan(E.X.psi);
    scan(E.Y.phi);
    scan(E.Y.psi);
    Series<K> zero = Series<K>::zero(ring, cap);
    using Term = typename SeriesSystem<K>::Term;
    for (int i = 0; i < nY; ++i)
      for (int j = 0; j < nX; ++j) {
        std::vector<Term> r1, r2;
        for (int k = 0; k < nY; ++k)
          if (!E.Y.phi.at(i, k).is_zero()) r1.push_back({bslot(k, j), E.Y.phi.at(i, k)});
        for (int k = 0; k < nX; ++k)
          if (!E.X.psi.at(k, j).is_zero()) r1.push_back({aslot(i, k), E.X.psi.at(k, j)});
        sys.add_row(std::move(r1), zero, cap + delta);
        for (int k = 0; k < nY; ++k)
          if (!E.Y.psi.at(i, k).is_zero()) r2.push_back({aslot(k, j), E.Y.psi.at(i, k)});
        for (int k = 0; k < nX; ++k)
          if (!E.X.phi.at(k, j).is_zero()) r2.push_back({bslot(i, k), E.X.phi.at(k, j)});
        sys.add_row(std::move(r2), zero, cap + delta);
      }
    auto sol = graded_solve(sys, true);
    int classes = 0;
    for (auto& vec : sol.kernel) {
      HomPair<K> h{Mat<K>(nY, nX, ring, cap), Mat<K>(nY, nX, ring, cap)};
      for (int i = 0; i < nY; ++i)
        for (int j = 0; j < nX; ++j) {
          h.alpha.at(i, j) = vec[aslot(i, j)].truncated(cap);
          h.beta.at(i, j) = vec[bslot(i, j)].truncated(cap);
        }
      if (!tr.add(detail::flatten_pair(fl, h))) {
        ++classes;
        if (reps_out) reps_out->push_back(std::move(h));
      }
    }
    return classes;
  };

  E.dim = build_at(prec, E.flat_fl, E.flat_tracked, E.flat_n_cob, &E.reps);
  if (W >= 6) {
    detail::PairFlattener fl2;
    TrackedEchelon<K> tr2;
    int ncob2 = 0;
    int dim2 = build_at(prec - 4, fl2, tr2, ncob2, nullptr);
    E.stable = dim2 == E.dim;
  } else {
    E.stable = false;
  }
}

}  // namespace detail

// Ext^1(X, Y) with class representatives and per-variable action tables.
template <class K>
std::shared_ptr<Ext1Space<K>> ext1(const MF<K>& X, const MF<K>& Y, int D = -1) {
  if (!X.ring->same_vars(*Y.ring))
    throw std::invalid_argument("ext1: factorizations live over different rings");
  if (!(X.f.truncated(Y.f.prec) == Y.f.truncated(X.f.prec)))
    throw std::invalid_argument("ext1: potentials differ");
  if (D < 0) D = std::min(X.prec(), Y.prec());

  std::string key = "ext|" + K::field_tag() + "|" + std::to_string(D) + "|" + print_mf(X) +
                    "||" + print_mf(Y);
  auto& cache = MemoCache::instance();
  std::shared_ptr<void> hit;
  if (cache.lookup(key, hit)) return std::static_pointer_cast<Ext1Space<K>>(hit);

  auto E = std::make_shared<Ext1Space<K>>();
  E->X = X;
  E->Y = Y;
  auto g = detail::graded_pair(X, Y);
  E->graded = g.ok;
  if (g.ok) {
    E->tx = g.tx;
    E->ty = g.ty;
    detail::ext_graded_build(*E);
  } else {
    detail::ext_flat_build(*E, D);
  }

  // variable action tables on the class basis
  const int nv = X.ring->nvars();
  const int prec = std::min(X.prec(), Y.prec());
  E->act.assign(nv, std::vector<std::vector<K>>(E->dim, std::vector<K>(E->dim, K::zero())));
  for (int v = 0; v < nv; ++v) {
    Series<K> xv = Series<K>::var(X.ring, prec, v);
    for (int t = 0; t < E->dim; ++t) {
      HomPair<K> shifted = pair_mul_series(xv, E->reps[t]);
      std::vector<K> coords = E->class_coords(shifted);
      for (int s = 0; s < E->dim; ++s) E->act[v][s][t] = coords[s];
    }
  }
  cache.insert(key, E);
  return E;
}

// Smallest k in [0, kmax] with x_yvar^k * Ext^1(N, Omega N) = 0, or kmax+1
// if none: the nilpotency order of the variable's action matrix.
template <class K>
int annihilator_power(const MF<K>& N, int yvar, int kmax) {
  auto E = ext1(N, omega(N));
  if (E->dim == 0) return 0;
  const int d = E->dim;
  std::vector<std::vector<K>> M(d, std::vector<K>(d, K::zero()));
  for (int i = 0; i < d; ++i) M[i][i] = K::one();
  for (int k = 1; k <= kmax; ++k) {
    std::vector<std::vector<K>> Mn(d, std::vector<K>(d, K::zero()));
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < d; ++l) {
        if (E->act[yvar][i][l].is_zero()) continue;
        for (int j = 0; j < d; ++j) Mn[i][j] += E->act[yvar][i][l] * M[l][j];
      }
    M = std::move(Mn);
    bool zero = true;
    for (auto& row : M)
      for (auto& x : row) zero = zero && x.is_zero();
    if (zero) return k;
  }
  return kmax + 1;
}

// The canonical class of the extension 0 -> Omega N -> Omega(N/x_y^k N) -> N -> 0
// inside Ext^1(N, Omega N): the pair (y^k I, -y^k I), of weighted degree
// k * w_y in the graded case.
template <class K>
HomPair<K> canonical_ext_class(const MF<K>& N, int yvar, int k) {
  const int n = N.size(), prec = N.prec();
  Series<K> yk = Series<K>::var(N.ring, prec, yvar, k);
  Mat<K> a = yk * Mat<K>::identity(n, N.ring, prec);
  Mat<K> b = -a;
  return HomPair<K>{std::move(a), std::move(b)};
}

// Dimension of the degree-g piece of the stable hom space X -> Z: morphism
// pairs modulo null-homotopic ones (alpha = phi_Z h1 + h2 psi_X,
// beta = h1 phi_X + psi_Z h2).  Used to cross-check Ext^1(X, Y) against
// stable Hom(X, Omega Y) degreewise.
template <class K>
int stable_hom_degree_dim(const MF<K>& X, const MF<K>& Z, int g) {
  auto gd = detail::graded_pair(X, Z);
  if (!gd.ok) throw std::domain_error("stable_hom_degree_dim: graded inputs only");
  const int nX = X.size(), nZ = Z.size();
  const int prec = std::min(X.prec(), Z.prec());
  const WeightData& wd = gd.tx.wd;
  detail::PairFlattener fl;
  TrackedEchelon<K> tr;
  for (int i = 0; i < nZ; ++i)
    for (int j = 0; j < nX; ++j) {
      for (auto& m : weighted_monomials(X.ring, wd, g + gd.tx.gen[j] - gd.ty.rel[i])) {
        // h1 = m E_{ij}: (phi_Z h1, h1 phi_X)
        HomPair<K> h{Mat<K>(nZ, nX, X.ring, prec), Mat<K>(nZ, nX, X.ring, prec)};
        for (int r = 0; r < nZ; ++r)
          for (auto& [mt, ct] : Z.phi.at(r, i).ts) h.alpha.at(r, j).add_term(mt * m, ct);
        for (int c2 = 0; c2 < nX; ++c2)
          for (auto& [mt, ct] : X.phi.at(j, c2).ts) h.beta.at(i, c2).add_term(mt * m, ct);
        tr.add(detail::flatten_pair(fl, h));
      }
      for (auto& m :
           weighted_monomials(X.ring, wd, g + gd.tx.rel[j] - gd.ty.gen[i] - wd.fdeg)) {
        // h2 = m E_{ij}: (h2 psi_X, psi_Z h2)
        HomPair<K> h{Mat<K>(nZ, nX, X.ring, prec), Mat<K>(nZ, nX, X.ring, prec)};
        for (int c2 = 0; c2 < nX; ++c2)
          for (auto& [mt, ct] : X.psi.at(j, c2).ts) h.alpha.at(i, c2).add_term(mt * m, ct);
        for (int r = 0; r < nZ; ++r)
          for (auto& [mt, ct] : Z.psi.at(r, i).ts) h.beta.at(r, j).add_term(mt * m, ct);
        tr.add(detail::flatten_pair(fl, h));
      }
    }
  int stable_dim = 0;
  for (auto& h : detail::hom_graded_degree(X, Z, gd.tx, gd.ty, g))
    if (!tr.add(detail::flatten_pair(fl, h))) ++stable_dim;
  return stable_dim;
}

namespace detail {

// kernel basis of the stacked equations rows[i] . c = 0, dense Gauss
template <class K>
std::vector<std::vector<K>> nullspace_dense(std::vector<std::vector<K>> rows, int ncols) {
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (!rows[i][c].is_zero()) { p = i; break; }
    if (p < 0) continue;
    std::swap(rows[r], rows[p]);
    K inv = rows[r][c].inv();
    for (int j = c; j < ncols; ++j) rows[r][j] = rows[r][j] * inv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      K m = rows[i][c];
      for (int j = c; j < ncols; ++j) rows[i][j] = rows[i][j] - m * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<K>> basis;
  for (int c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<K> v(ncols, K::zero());
    v[c] = K::one();
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i)
      v[pivot_col[i]] = -rows[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

// Socle of Ext^1(X, Y): classes killed by every variable, as coordinate
// vectors in the rep basis.  For an indecomposable non-free X with Y = tau X
// the defining class of the almost split extension lies here.
template <class K>
std::vector<std::vector<K>> ext_socle(Ext1Space<K>& E) {
  const int d = E.dim;
  const int nv = static_cast<int>(E.X.ring->vars.size());
  std::vector<std::vector<K>> eqs;
  eqs.reserve(static_cast<std::size_t>(nv) * d);
  for (int v = 0; v < nv; ++v)
    for (int s = 0; s < d; ++s) {
      std::vector<K> row(d, K::zero());
      for (int t = 0; t < d; ++t) row[t] = E.act[v][s][t];
      eqs.push_back(std::move(row));
    }
  return detail::nullspace_dense<K>(std::move(eqs), d);
}

// lambda-combination of the class representatives of E
template <class K>
HomPair<K> combine_classes(const Ext1Space<K>& E, const std::vector<K>& coords) {
  const int n_y = E.Y.size(), n_x = E.X.size();
  const int prec = std::min(E.X.prec(), E.Y.prec());
  HomPair<K> out{Mat<K>(n_y, n_x, E.X.ring, prec), Mat<K>(n_y, n_x, E.X.ring, prec)};
  for (int t = 0; t < E.dim; ++t) {
    if (coords[t].is_zero()) continue;
    Series<K> c = Series<K>::constant(E.X.ring, prec, coords[t]);
    out.alpha = out.alpha + c * E.reps[t].alpha;
    out.beta = out.beta + c * E.reps[t].beta;
  }
  return out;
}

// Middle term of the extension 0 -> cok(Y) -> E -> cok(X) -> 0 attached to a
// cocycle pair (a, b): Phi = [[phi_Y, a], [0, phi_X]] with the matching Psi.
// The cocycle equations make the block pair a factorization again; validated
// before returning.
template <class K>
MF<K> extension_middle(const MF<K>& X, const MF<K>& Y, const HomPair<K>& ab) {
  if (!X.ring->same_vars(*Y.ring))
    throw std::invalid_argument("extension_middle: factorizations live over different rings");
  const int n_x = X.size(), n_y = Y.size();
  const int prec = std::min(X.prec(), Y.prec());
  Mat<K> z(n_x, n_y, X.ring, prec);
  MF<K> E{X.ring, X.f.truncated(prec),
          block2x2(Y.phi, ab.alpha, z, X.phi),
          block2x2(Y.psi, ab.beta, z, X.psi)};
  auto chk = validate(E);
  if (!chk.ok)
    throw std::invalid_argument("extension_middle: pair is not a cocycle (" + chk.message + ")");
  return E;
}

// Degree-g piece of Ext^1(X, Y) alone (for the degreewise comparison).
template <class K>
int ext_degree_dim(const MF<K>& X, const MF<K>& Y, int g) {
  auto gd = detail::graded_pair(X, Y);
  if (!gd.ok) throw std::domain_error("ext_degree_dim: graded inputs only");
  detail::PairFlattener fl;
  TrackedEchelon<K> tr;
  for (auto& h : detail::ext_cob_degree(X, Y, gd.tx, gd.ty, g))
    tr.add(detail::flatten_pair(fl, h));
  int d = 0;
  for (auto& z : detail::ext_graded_degree(X, Y, gd.tx, gd.ty, g))
    if (!tr.add(detail::flatten_pair(fl, z))) ++d;
  return d;
}

}  // namespace mfkit
