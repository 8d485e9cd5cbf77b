#pragma once
// Dense matrices of truncated series (sizes here stay below ~30x30, and the
// entries themselves are the sparse objects).  Ring and precision are stored
// on the matrix so empty matrices (size-zero factorizations of free modules)
// stay well formed.

#include <functional>
#include <stdexcept>
#include <vector>

#include "mfkit/series.hpp"

namespace mfkit {

template <class K>
struct Mat {
  int rows = 0, cols = 0;
  RingPtr ring_;
  int prec_ = 0;
  std::vector<Series<K>> a;  // row-major

  Mat() = default;
  Mat(int r, int c, RingPtr ring, int prec) : rows(r), cols(c), ring_(std::move(ring)), prec_(prec) {
    a.assign(static_cast<std::size_t>(r) * c, Series<K>::zero(ring_, prec_));
  }

  Series<K>& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Series<K>& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  const RingPtr& ring() const { return ring_; }
  int prec() const { return prec_; }

  static Mat identity(int n, RingPtr ring, int prec) {
    Mat m(n, n, std::move(ring), prec);
    for (int i = 0; i < n; ++i) m.at(i, i) = Series<K>::constant(m.ring_, prec, K::one());
    return m;
  }

  bool is_zero() const {
    for (auto& s : a)
      if (!s.is_zero()) return false;
    return true;
  }

  Mat operator-() const {
    Mat r = *this;
    for (auto& s : r.a) s = -s;
    return r;
  }
  friend Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix: shape mismatch");
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) { return x + (-y); }
  friend Mat operator*(const Series<K>& c, const Mat& x) {
    Mat r = x;
    for (auto& s : r.a) s = c * s;
    return r;
  }

  Mat transpose() const {
    Mat r(cols, rows, ring_, prec_);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Mat submatrix(const std::vector<int>& ri, const std::vector<int>& ci) const {
    Mat r(static_cast<int>(ri.size()), static_cast<int>(ci.size()), ring_, prec_);
    for (std::size_t i = 0; i < ri.size(); ++i)
      for (std::size_t j = 0; j < ci.size(); ++j)
        r.at(static_cast<int>(i), static_cast<int>(j)) = at(ri[i], ci[j]);
    return r;
  }

  Mat truncated(int p) const {
    Mat r(rows, cols, ring_, std::min(p, prec_));
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i].truncated(p);
    return r;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

template <class K>
Mat<K> matrix_product(const Mat<K>& x, const Mat<K>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix_product: shape mismatch");
  Mat<K> r(x.rows, y.cols, x.ring(), std::min(x.prec(), y.prec()));
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Series<K>& xa = x.at(i, k);
      if (xa.is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) {
        if (y.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + xa * y.at(k, j);
      }
    }
  return r;
}

// [[A, B], [C, D]]; shapes must be consistent strip-wise.
template <class K>
Mat<K> block2x2(const Mat<K>& A, const Mat<K>& B, const Mat<K>& C, const Mat<K>& D) {
  int r0 = A.cols || A.rows ? A.rows : B.rows, r1 = C.cols || C.rows ? C.rows : D.rows;
  int c0 = A.cols || A.rows ? A.cols : C.cols, c1 = B.cols || B.rows ? B.cols : D.cols;
  Mat<K> m(r0 + r1, c0 + c1, A.ring() ? A.ring() : D.ring(), A.ring() ? A.prec() : D.prec());
  auto put = [&](const Mat<K>& blk, int ro, int co) {
    for (int i = 0; i < blk.rows; ++i)
      for (int j = 0; j < blk.cols; ++j) m.at(ro + i, co + j) = blk.at(i, j);
  };
  put(A, 0, 0);
  put(B, 0, c0);
  put(C, r0, 0);
  put(D, r0, c0);
  return m;
}

template <class K>
Mat<K> direct_sum(const Mat<K>& A, const Mat<K>& B) {
  Mat<K> za(A.rows, B.cols, A.ring() ? A.ring() : B.ring(), A.ring() ? A.prec() : B.prec());
  Mat<K> zb(B.rows, A.cols, za.ring(), za.prec());
  return block2x2(A, za, zb, B);
}

template <class K>
Mat<K> kron(const Mat<K>& A, const Mat<K>& B) {
  Mat<K> r(A.rows * B.rows, A.cols * B.cols, A.ring(), std::min(A.prec(), B.prec()));
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) {
      if (A.at(i, j).is_zero()) continue;
      for (int k = 0; k < B.rows; ++k)
        for (int l = 0; l < B.cols; ++l) {
          if (B.at(k, l).is_zero()) continue;
          r.at(i * B.rows + k, j * B.cols + l) = A.at(i, j) * B.at(k, l);
        }
    }
  return r;
}

template <class K>
Mat<K> map_entries(const Mat<K>& A, const std::function<Series<K>(const Series<K>&)>& f) {
  Mat<K> r = A;
  for (auto& s : r.a) s = f(s);
  if (!r.a.empty()) {
    r.ring_ = r.a.front().ring;
    r.prec_ = r.a.front().prec;
  }
  return r;
}

// Gauss-Jordan inverse over the local ring; requires the constant-term
// matrix to be invertible.
template <class K>
Mat<K> invert_matrix(const Mat<K>& A) {
  if (A.rows != A.cols) throw std::invalid_argument("invert_matrix: not square");
  int n = A.rows;
  Mat<K> L = A;
  Mat<K> R = Mat<K>::identity(n, A.ring(), A.prec());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (L.at(i, col).is_unit()) { piv = i; break; }
    if (piv < 0) throw std::domain_error("invert_matrix: constant term singular");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(L.at(piv, j), L.at(col, j));
        std::swap(R.at(piv, j), R.at(col, j));
      }
    }
    Series<K> inv = invert_unit(L.at(col, col));
    for (int j = 0; j < n; ++j) {
      L.at(col, j) = inv * L.at(col, j);
      R.at(col, j) = inv * R.at(col, j);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || L.at(i, col).is_zero()) continue;
      Series<K> c = L.at(i, col);
      for (int j = 0; j < n; ++j) {
        L.at(i, j) = L.at(i, j) - c * L.at(col, j);
        R.at(i, j) = R.at(i, j) - c * R.at(col, j);
      }
    }
  }
  return R;
}

}  // namespace mfkit
