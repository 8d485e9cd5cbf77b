#pragma once
// Numerical semigroup side of a plane curve singularity k[[t^a, t^b]].  Rank
// one maximal Cohen-Macaulay modules are fractional ideals, morphisms between
// them are multiplications by t powers, and every graded piece is at most one
// dimensional.  That makes the quiver of the rank one part and the kernels of
// t-power maps exactly computable by bookkeeping with exponent sets.
//
// The bridge back to factorizations: a kernel of a t-power map between sums
// of ideals is a graded submodule; its minimal generators and relations give
// a square presentation over k[[x, y]]/(f) through x = t^a, y = sign * t^b,
// lifting t^(a alpha + b beta) to sign^beta x^alpha y^beta.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mfkit/matrix.hpp"
#include "mfkit/series.hpp"

namespace mfkit {

struct SemigroupRing {
  int a = 2, b = 3;  // coprime, 2 <= a < b

  int conductor() const { return (a - 1) * (b - 1); }
  bool contains(long long m) const;
  // canonical split m = a*alpha + b*beta with beta in [0, a); nullopt when m
  // is not in the semigroup
  std::optional<std::pair<int, int>> split(long long m) const;
  bool operator==(const SemigroupRing& o) const { return a == o.a && b == o.b; }
};

SemigroupRing make_semigroup(int a, int b);

// Fractional ideal given by generating t-exponents; make_ideal discards
// redundant generators, so equal ideals carry equal generator lists.  No
// shift normalization is applied: (t^3, t^4) and (1, t) are different ideals.
struct FractionalIdeal {
  SemigroupRing ring;
  std::vector<int> gens;  // minimal, ascending

  bool contains(long long m) const;
  bool operator==(const FractionalIdeal& o) const { return ring == o.ring && gens == o.gens; }
};

FractionalIdeal make_ideal(SemigroupRing R, std::vector<int> gens);
FractionalIdeal shift_ideal(const FractionalIdeal& I, int m);

// (I : J) = { m : t^m J inside I } as a fractional ideal
FractionalIdeal colon(const FractionalIdeal& I, const FractionalIdeal& J);

struct QuiverArrow {
  std::string from, to;
  int tpow = 0;
};

struct QuiverPresentation {
  std::vector<std::string> vertices;
  std::vector<QuiverArrow> arrows;
  // pairs of parallel paths composing to the same t power, as display lines
  std::vector<std::string> relation_hints;
};

// Irreducible morphisms between the given rank one modules: the radical of
// hom(u, v) is the colon set (minus the identity exponent on the diagonal)
// and arrows are the exponents surviving modulo rad^2.
QuiverPresentation irreducible_arrows(
    const std::vector<std::pair<std::string, FractionalIdeal>>& verts);

std::string quiver_text(const QuiverPresentation& q);
std::string quiver_dot(const QuiverPresentation& q);
std::string tpow_label(int m);

// A t-graded map  (+)_j I_j -> I_0,  (s_j) |-> sum_j t^(tpows[j]) s_j.
struct IdealMap {
  FractionalIdeal target;
  std::vector<FractionalIdeal> sources;
  std::vector<int> tpows;
};

// Kernel of an IdealMap with minimal homogeneous generators and relations.
// Generators are stored in shifted coordinates sigma_j = t^(tpows[j]) s_j: a
// generator of degree e has sigma_j = mu[j] t^e, which lies in the j-th
// source iff e - tpows[j] is an exponent of I_j.
template <class K>
struct KernelData {
  struct Gen {
    int degree = 0;
    std::vector<K> mu;
  };
  struct Rel {
    int degree = 0;
    std::vector<K> nu;  // coefficient of the t^(degree - gen.degree) shift, per generator
  };
  std::vector<Gen> gens;
  std::vector<Rel> rels;
  Mat<K> presentation;  // ngens x nrels over the two-variable ring
};

namespace detail {

// incremental reduced echelon over K for short dense vectors
template <class K>
struct SpanTracker {
  std::vector<std::vector<K>> rows;  // reduced, each with a leading pivot
  std::vector<int> pivots;

  bool try_insert(std::vector<K> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const K& c = v[static_cast<std::size_t>(pivots[r])];
      if (c.is_zero()) continue;
      K m = c;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - m * rows[r][j];
    }
    int p = -1;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) {
        p = static_cast<int>(j);
        break;
      }
    if (p < 0) return false;
    K inv = v[static_cast<std::size_t>(p)].inv();
    for (auto& c : v) c = c * inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      K c = rows[r][static_cast<std::size_t>(p)];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        rows[r][j] = rows[r][j] - c * v[j];
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
  int dim() const { return static_cast<int>(rows.size()); }
};

// dense nullspace used by the relation sweep
template <class K>
std::vector<std::vector<K>> nullspace_seq(std::vector<std::vector<K>> rows, int ncols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int ccol = 0; ccol < ncols && r < rows.size(); ++ccol) {
    std::size_t p = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i)
      if (!rows[i][static_cast<std::size_t>(ccol)].is_zero()) {
        p = i;
        break;
      }
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    K inv = rows[r][static_cast<std::size_t>(ccol)].inv();
    for (int j = ccol; j < ncols; ++j)
      rows[r][static_cast<std::size_t>(j)] = rows[r][static_cast<std::size_t>(j)] * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][static_cast<std::size_t>(ccol)].is_zero()) continue;
      K mm = rows[i][static_cast<std::size_t>(ccol)];
      for (int j = ccol; j < ncols; ++j)
        rows[i][static_cast<std::size_t>(j)] =
            rows[i][static_cast<std::size_t>(j)] - mm * rows[r][static_cast<std::size_t>(j)];
    }
    pivot_col.push_back(ccol);
    ++r;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
  for (int p : pivot_col) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<K>> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<K> v(static_cast<std::size_t>(ncols), K::zero());
    v[static_cast<std::size_t>(f)] = K::one();
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[static_cast<std::size_t>(pivot_col[i])] = -rows[i][static_cast<std::size_t>(f)];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

// lift of t^m into k[[x, y]]/(f) under x = t^a, y = sign * t^b
template <class K>
Series<K> lift_tpow(const RingPtr& ring, int prec, const SemigroupRing& sg, long long m,
                    int sign) {
  auto sp = sg.split(m);
  if (!sp) throw std::invalid_argument("lift_tpow: exponent is not in the semigroup");
  auto [alpha, beta] = *sp;
  Monomial mono = Monomial::var(0, alpha) * Monomial::var(1, beta);
  K c = (sign < 0 && beta % 2 == 1) ? -K::one() : K::one();
  return Series<K>::monomial(ring, prec, mono, c);
}

// Minimal generators and relations of ker(d), swept degree by degree.  All
// the grading is by t exponent; a window past the conductor is scanned and
// the tail is asserted quiet, so the answer is exact.
template <class K>
KernelData<K> kernel_of_map(const IdealMap& d, const RingPtr& ring, int prec, int sign = -1) {
  const int m = static_cast<int>(d.sources.size());
  if (m == 0 || d.tpows.size() != d.sources.size())
    throw std::invalid_argument("kernel_of_map: sources and tpows must pair up");
  const SemigroupRing sg = d.target.ring;
  for (auto& s : d.sources)
    if (!(s.ring == sg)) throw std::invalid_argument("kernel_of_map: mixed semigroups");
  if (ring->nvars() != 2) throw std::invalid_argument("kernel_of_map: two-variable ring required");

  const int c = sg.conductor();
  int e_lo = d.tpows[0] + d.sources[0].gens.front();
  for (int j = 1; j < m; ++j) e_lo = std::min(e_lo, d.tpows[j] + d.sources[j].gens.front());
  const int quiet = sg.a + sg.b;          // tail length that must stay empty
  const int e_hi = e_lo + 3 * (c + sg.b) + quiet + 4;

  KernelData<K> out;
  auto active = [&](int e) {
    std::vector<int> act;
    for (int j = 0; j < m; ++j)
      if (d.sources[j].contains(e - d.tpows[j])) act.push_back(j);
    return act;
  };

  int last_gen_deg = e_lo - 1;
  for (int e = e_lo; e <= e_hi; ++e) {
    std::vector<int> act = active(e);
    if (static_cast<int>(act.size()) < 2) continue;
    detail::SpanTracker<K> span;
    for (auto& g : out.gens)
      if (sg.contains(e - g.degree)) span.try_insert(g.mu);
    const int want = static_cast<int>(act.size()) - 1;
    if (span.dim() >= want) continue;
    // binomial candidates keep the chosen generators integral
    for (std::size_t i = 0; i + 1 < act.size() && span.dim() < want; ++i)
      for (std::size_t j = i + 1; j < act.size() && span.dim() < want; ++j) {
        std::vector<K> v(static_cast<std::size_t>(m), K::zero());
        v[static_cast<std::size_t>(act[i])] = K::one();
        v[static_cast<std::size_t>(act[j])] = -K::one();
        if (span.try_insert(v)) {
          out.gens.push_back({e, std::move(v)});
          last_gen_deg = e;
        }
      }
    if (span.dim() != want)
      throw std::logic_error("kernel_of_map: binomial candidates failed to span");
  }
  if (last_gen_deg > e_hi - quiet)
    throw std::logic_error("kernel_of_map: generator window exhausted, widen the sweep");

  const int ng = static_cast<int>(out.gens.size());
  if (ng > 0) {
    int r_hi = out.gens.back().degree + 3 * (c + sg.b) + quiet + 4;
    int last_rel_deg = e_lo - 1;
    for (int e = e_lo; e <= r_hi; ++e) {
      std::vector<int> live;  // generators admitting a shift into degree e
      for (int g = 0; g < ng; ++g)
        if (sg.contains(e - out.gens[g].degree)) live.push_back(g);
      if (live.empty()) continue;
      // relation space at degree e: nu with sum_g nu_g mu_g = 0
      std::vector<std::vector<K>> eqs(static_cast<std::size_t>(m));
      for (int row = 0; row < m; ++row) {
        eqs[static_cast<std::size_t>(row)].resize(live.size());
        for (std::size_t l = 0; l < live.size(); ++l)
          eqs[static_cast<std::size_t>(row)][l] = out.gens[live[l]].mu[static_cast<std::size_t>(row)];
      }
      // count the full solution space, then complete the shifted span
      detail::SpanTracker<K> cols;
      for (auto& eq : eqs) cols.try_insert(eq);
      int sol_dim = static_cast<int>(live.size()) - cols.dim();
      if (sol_dim <= 0) continue;
      detail::SpanTracker<K> span;
      auto expand = [&](const std::vector<K>& nu_local) {
        std::vector<K> full(static_cast<std::size_t>(ng), K::zero());
        for (std::size_t l = 0; l < live.size(); ++l)
          full[static_cast<std::size_t>(live[l])] = nu_local[l];
        return full;
      };
      for (auto& r : out.rels)
        if (sg.contains(e - r.degree)) span.try_insert(r.nu);
      if (span.dim() >= sol_dim) continue;
      // solve for a basis of the local solution space
      std::vector<std::vector<K>> rows;
      for (int row = 0; row < m; ++row) rows.push_back(eqs[static_cast<std::size_t>(row)]);
      auto basis = detail::nullspace_seq<K>(rows, static_cast<int>(live.size()));
      for (auto& v : basis) {
        if (span.dim() >= sol_dim) break;
        std::vector<K> full = expand(v);
        if (span.try_insert(full)) {
          out.rels.push_back({e, std::move(full)});
          last_rel_deg = e;
        }
      }
      if (span.dim() != sol_dim)
        throw std::logic_error("kernel_of_map: relation completion failed");
    }
    if (!out.rels.empty() && last_rel_deg > r_hi - quiet)
      throw std::logic_error("kernel_of_map: relation window exhausted, widen the sweep");
  }

  const int nr = static_cast<int>(out.rels.size());
  out.presentation = Mat<K>(ng, nr, ring, prec);
  for (int r = 0; r < nr; ++r)
    for (int g = 0; g < ng; ++g) {
      const K& nu = out.rels[static_cast<std::size_t>(r)].nu[static_cast<std::size_t>(g)];
      if (nu.is_zero()) continue;
      Series<K> t = lift_tpow<K>(ring, prec, sg,
                                 out.rels[static_cast<std::size_t>(r)].degree -
                                     out.gens[static_cast<std::size_t>(g)].degree,
                                 sign);
      out.presentation.at(g, r) = Series<K>::constant(ring, prec, nu) * t;
    }
  return out;
}

// Exactness spot check for the sweep: within the window every homogeneous
// piece of the kernel must be spanned by semigroup shifts of the chosen
// generators.
template <class K>
bool kernel_complete(const IdealMap& d, const KernelData<K>& kd) {
  const int m = static_cast<int>(d.sources.size());
  const SemigroupRing sg = d.target.ring;
  int e_lo = d.tpows[0] + d.sources[0].gens.front();
  for (int j = 1; j < m; ++j) e_lo = std::min(e_lo, d.tpows[j] + d.sources[j].gens.front());
  const int e_hi = e_lo + 3 * (sg.conductor() + sg.b) + sg.a + sg.b + 4;
  for (int e = e_lo; e <= e_hi; ++e) {
    int nact = 0;
    for (int j = 0; j < m; ++j)
      if (d.sources[j].contains(e - d.tpows[j])) ++nact;
    const int want = std::max(0, nact - 1);
    detail::SpanTracker<K> span;
    for (auto& g : kd.gens)
      if (sg.contains(e - g.degree)) span.try_insert(g.mu);
    if (span.dim() != want) return false;
  }
  return true;
}

}  // namespace mfkit
