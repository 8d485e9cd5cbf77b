#pragma once
// Matrix factorizations (phi, psi) of a potential f: phi*psi = psi*phi = f*I.
// cok(phi) is the maximal Cohen-Macaulay module the pair presents over the
// hypersurface k[[vars]]/(f).

#include <optional>
#include <stdexcept>
#include <string>

#include "mfkit/field.hpp"
#include "mfkit/format.hpp"
#include "mfkit/matrix.hpp"

namespace mfkit {

template <class K>
struct MF {
  RingPtr ring;
  Series<K> f;
  Mat<K> phi, psi;

  int size() const { return phi.rows; }
  int prec() const { return f.prec; }

  bool is_reduced() const {
    for (auto& s : phi.a)
      if (s.is_unit()) return false;
    for (auto& s : psi.a)
      if (s.is_unit()) return false;
    return true;
  }
};

struct MFCheck {
  bool ok = false;
  bool square = false;
  bool product_ok = false;
  bool reduced = false;
  std::string message;  // empty when ok; first failure otherwise
};

template <class K>
MFCheck validate(const MF<K>& m) {
  MFCheck c;
  c.square = m.phi.rows == m.phi.cols && m.psi.rows == m.psi.cols &&
             m.phi.rows == m.psi.rows;
  if (!c.square) {
    c.message = "phi/psi are not square matrices of equal size";
    return c;
  }
  int n = m.size();
  auto expect = [&](const Mat<K>& prod, const char* label) -> bool {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Series<K> want = i == j ? m.f.truncated(prod.prec()) : Series<K>::zero(m.ring, prod.prec());
        if (!(prod.at(i, j) == want)) {
          c.message = std::string(label) + " differs from f*I at entry (" +
                      std::to_string(i) + "," + std::to_string(j) + "): " +
                      print_poly(prod.at(i, j));
          return false;
        }
      }
    return true;
  };
  c.product_ok = expect(matrix_product(m.phi, m.psi), "phi*psi") &&
                 expect(matrix_product(m.psi, m.phi), "psi*phi");
  c.reduced = m.is_reduced();
  c.ok = c.square && c.product_ok;
  return c;
}

// The syzygy of cok(phi) is cok(psi): on factorizations the functor just
// swaps the pair, and applying it twice is the identity on the nose.
template <class K>
MF<K> omega(const MF<K>& m) {
  return MF<K>{m.ring, m.f, m.psi, m.phi};
}

template <class K>
MF<K> direct_sum_mf(const MF<K>& a, const MF<K>& b) {
  if (!a.ring->same_vars(*b.ring) || !(a.f.truncated(b.f.prec) == b.f.truncated(a.f.prec)))
    throw std::invalid_argument("direct_sum_mf: mismatched rings or potentials");
  return MF<K>{a.ring, a.f.truncated(std::min(a.prec(), b.prec())),
               direct_sum(a.phi, b.phi), direct_sum(a.psi, b.psi)};
}

// Tensor product of factorizations over disjoint variable sets; the result
// factors f + g over the merged ring.
template <class K>
MF<K> tensor_hat(const MF<K>& X, const MF<K>& Y) {
  for (auto& v : X.ring->vars)
    if (Y.ring->var_index(v) >= 0)
      throw std::invalid_argument("tensor_hat: variable sets must be disjoint (" + v + ")");
  std::vector<std::string> vars = X.ring->vars;
  vars.insert(vars.end(), Y.ring->vars.begin(), Y.ring->vars.end());
  RingPtr R = make_ring(vars);
  int prec = std::min(X.prec(), Y.prec());

  std::vector<int> mx(X.ring->nvars()), my(Y.ring->nvars());
  for (int i = 0; i < X.ring->nvars(); ++i) mx[i] = i;
  for (int i = 0; i < Y.ring->nvars(); ++i) my[i] = X.ring->nvars() + i;
  auto liftX = [&](const Series<K>& s) { return map_vars(s.truncated(prec), R, mx); };
  auto liftY = [&](const Series<K>& s) { return map_vars(s.truncated(prec), R, my); };

  Mat<K> phi = map_entries<K>(X.phi, liftX), psi = map_entries<K>(X.psi, liftX);
  Mat<K> phi2 = map_entries<K>(Y.phi, liftY), psi2 = map_entries<K>(Y.psi, liftY);
  int n = X.size(), m = Y.size();
  Mat<K> In = Mat<K>::identity(n, R, prec), Im = Mat<K>::identity(m, R, prec);

  Mat<K> tphi = block2x2(kron(phi, Im), kron(In, phi2), -kron(In, psi2), kron(psi, Im));
  Mat<K> tpsi = block2x2(kron(psi, Im), -kron(In, phi2), kron(In, psi2), kron(phi, Im));
  return MF<K>{R, liftX(X.f) + liftY(Y.f), tphi, tpsi};
}

struct BranchedCoverSpec {
  int exponent = 2;            // n >= 2 in f + y^n
  std::string var = "y";       // name of the adjoined variable
};

// First syzygy of X pushed through the n-fold branched cover: tensor with the
// one-by-one factorization (y, y^{n-1}) of y^n, then swap.
template <class K>
MF<K> branched_cover(const MF<K>& X, const BranchedCoverSpec& spec) {
  if (spec.exponent < 2) throw std::invalid_argument("branched_cover: exponent must be >= 2");
  if constexpr (std::is_same_v<K, Fp>) {
    if (Fp::modulus() % static_cast<std::uint64_t>(spec.exponent) == 0)
      throw std::invalid_argument("branched_cover: characteristic divides the exponent");
  }
  if (!X.is_reduced())
    throw std::invalid_argument("branched_cover: factorization must be reduced");
  RingPtr Ry = make_ring({spec.var});
  int prec = X.prec();
  Mat<K> yphi(1, 1, Ry, prec), ypsi(1, 1, Ry, prec);
  yphi.at(0, 0) = Series<K>::var(Ry, prec, 0, 1);
  ypsi.at(0, 0) = Series<K>::var(Ry, prec, 0, spec.exponent - 1);
  MF<K> Y{Ry, Series<K>::var(Ry, prec, 0, spec.exponent), yphi, ypsi};
  return omega(tensor_hat(X, Y));
}

// Factorization presenting Omega(N / y^k N), the middle term of the standard
// approximation sequence 0 -> Omega(N) -> E -> N -> 0 whose class is y^k
// times the canonical one.
template <class K>
MF<K> extension_block(const MF<K>& N, int yvar, int k) {
  if (k < 1) throw std::invalid_argument("extension_block: k must be >= 1");
  if (yvar < 0 || yvar >= N.ring->nvars())
    throw std::invalid_argument("extension_block: bad variable index");
  int prec = N.prec();
  Series<K> yk = Series<K>::var(N.ring, prec, yvar, k);
  Mat<K> ykI = yk * Mat<K>::identity(N.size(), N.ring, prec);
  Mat<K> Z(N.size(), N.size(), N.ring, prec);
  Mat<K> phi = block2x2(N.psi, ykI, Z, N.phi);
  Mat<K> psi = block2x2(N.phi, -ykI, Z, N.psi);
  return MF<K>{N.ring, N.f, phi, psi};
}

// cok(P) over k[[vars]]/(potential); columns are relations on the generators.
template <class K>
struct ModulePresentation {
  RingPtr ring;
  Series<K> potential;
  Mat<K> P;

  int ngens() const { return P.rows; }
};

template <class K>
ModulePresentation<K> quotient_presentation(const MF<K>& N, int yvar, int k) {
  if (k < 1) throw std::invalid_argument("quotient_presentation: k must be >= 1");
  int n = N.size(), prec = N.prec();
  Series<K> yk = Series<K>::var(N.ring, prec, yvar, k);
  Mat<K> P(n, 2 * n, N.ring, prec);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) P.at(i, j) = N.phi.at(i, j);
    P.at(i, n + i) = yk;
  }
  return ModulePresentation<K>{N.ring, N.f, P};
}

// The quotient N/yN as a module over the one-variable ring in the remaining
// variable (entries of phi with y set to zero; x^a relations are implied by
// phi(x,0) psi(x,0) = x^a I).
template <class K>
Mat<K> quotient_mod_var(const MF<K>& N, int yvar, const RingPtr& target) {
  std::vector<int> vm(N.ring->nvars());
  int t = 0;
  for (int i = 0; i < N.ring->nvars(); ++i) vm[i] = i == yvar ? -1 : t++;
  if (t != target->nvars())
    throw std::invalid_argument("quotient_mod_var: target ring has wrong arity");
  return map_entries<K>(N.phi, [&](const Series<K>& s) { return kill_var(s, target, vm); });
}

template <class K>
struct StripReport {
  MF<K> reduced;
  int free_rank = 0;    // R#-free summands of cok(phi) removed
  int cofree_rank = 0;  // same for cok(psi)
};

// Split off trivial summands: a unit entry in psi pivots away an (f,1) block
// (a free summand of cok phi), a unit entry in phi an (1,f) block (a free
// summand of cok psi).  Row/column operations are applied to both matrices
// so the factorization identity is preserved throughout.
template <class K>
StripReport<K> strip_trivial_summands(const MF<K>& input) {
  StripReport<K> rep{input, 0, 0};
  auto find_unit = [](const Mat<K>& m, int& ui, int& uj) {
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j)
        if (m.at(i, j).is_unit()) {
          ui = i;
          uj = j;
          return true;
        }
    return false;
  };

  // pivot at (i,j) of A, mirroring the inverse operations on B, then delete
  // row i / col j of A and row j / col i of B
  auto strip_at = [](Mat<K>& A, Mat<K>& B, int i, int j) {
    Series<K> inv = invert_unit(A.at(i, j));
    int n = A.rows;
    // clear row i of A with column ops; on B this is a row op on row j
    for (int c = 0; c < n; ++c) {
      if (c == j || A.at(i, c).is_zero()) continue;
      Series<K> t = inv * A.at(i, c);
      for (int r = 0; r < n; ++r) A.at(r, c) = A.at(r, c) - t * A.at(r, j);
      for (int cc = 0; cc < n; ++cc) B.at(j, cc) = B.at(j, cc) + t * B.at(c, cc);
    }
    // clear column j of A with row ops; on B this is a column op on col i
    for (int r = 0; r < n; ++r) {
      if (r == i || A.at(r, j).is_zero()) continue;
      Series<K> t = A.at(r, j) * inv;
      for (int c = 0; c < n; ++c) A.at(r, c) = A.at(r, c) - t * A.at(i, c);
      for (int rr = 0; rr < n; ++rr) B.at(rr, i) = B.at(rr, i) + B.at(rr, r) * t;
    }
    std::vector<int> rowsA, colsA;
    for (int r = 0; r < n; ++r)
      if (r != i) rowsA.push_back(r);
    for (int c = 0; c < n; ++c)
      if (c != j) colsA.push_back(c);
    Mat<K> A2 = A.submatrix(rowsA, colsA);
    std::vector<int> rowsB, colsB;
    for (int r = 0; r < n; ++r)
      if (r != j) rowsB.push_back(r);
    for (int c = 0; c < n; ++c)
      if (c != i) colsB.push_back(c);
    Mat<K> B2 = B.submatrix(rowsB, colsB);
    A = std::move(A2);
    B = std::move(B2);
  };

  bool changed = true;
  while (changed && rep.reduced.size() > 0) {
    changed = false;
    int i, j;
    if (find_unit(rep.reduced.psi, i, j)) {
      strip_at(rep.reduced.psi, rep.reduced.phi, i, j);
      ++rep.free_rank;
      changed = true;
      continue;
    }
    if (find_unit(rep.reduced.phi, i, j)) {
      strip_at(rep.reduced.phi, rep.reduced.psi, i, j);
      ++rep.cofree_rank;
      changed = true;
    }
  }
  return rep;
}

}  // namespace mfkit
