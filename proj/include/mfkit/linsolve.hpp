#pragma once
// Exact sparse linear algebra used by every homological routine.
//
// Systems arising from graded matrix factorizations decompose into many tiny
// blocks: an unknown coefficient of internal degree d only meets constraint
// coefficients of matching degree.  Rather than special-casing gradings we
// split the bipartite unknown/constraint graph into connected components and
// run dense elimination per component; for graded inputs the components *are*
// the graded pieces, for ungraded inputs nothing breaks, it is just slower.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "mfkit/field.hpp"
#include "mfkit/matrix.hpp"

namespace mfkit {

template <class K>
using SpVec = std::vector<std::pair<int, K>>;  // index-sorted, nonzero coeffs

template <class K>
void spvec_axpy(SpVec<K>& dst, const K& c, const SpVec<K>& src) {
  if (c.is_zero() || src.empty()) return;
  SpVec<K> out;
  out.reserve(dst.size() + src.size());
  auto id = dst.begin();
  auto is = src.begin();
  while (id != dst.end() || is != src.end()) {
    if (is == src.end() || (id != dst.end() && id->first < is->first)) {
      out.push_back(*id++);
    } else if (id == dst.end() || is->first < id->first) {
      out.push_back({is->first, c * is->second});
      ++is;
    } else {
      K v = id->second + c * is->second;
      if (!v.is_zero()) out.push_back({id->first, v});
      ++id;
      ++is;
    }
  }
  dst = std::move(out);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

template <class K>
struct SparseSystem {
  int ncols = 0;
  std::vector<SpVec<K>> rows;
  std::vector<K> rhs;  // empty means homogeneous

  int add_row(SpVec<K> r, K b = K::zero()) {
    rows.push_back(std::move(r));
    if (!b.is_zero() || !rhs.empty()) {
      rhs.resize(rows.size(), K::zero());
      rhs.back() = b;
    }
    return static_cast<int>(rows.size()) - 1;
  }
};

template <class K>
struct SolveOut {
  bool consistent = true;
  std::vector<SpVec<K>> kernel;  // basis of homogeneous solutions
  SpVec<K> particular;           // one solution when rhs given and consistent
  long long rank = 0;
};

namespace detail {

// Dense row operations; the Fp path keeps raw uint64 residues to avoid
// going through the class interface in the innermost loop.
template <class K>
struct DenseRows {
  std::vector<std::vector<K>> r;
  int ncols;
  DenseRows(int nrows, int nc) : r(nrows, std::vector<K>(nc, K::zero())), ncols(nc) {}
  void set(int i, int j, const K& v) { r[i][j] = v; }
  K get(int i, int j) const { return r[i][j]; }
  void scale_row(int i, const K& c) {
    for (auto& x : r[i]) x = c * x;
  }
  void axpy_row(int dst, const K& c, int src) {
    for (int j = 0; j < ncols; ++j) r[dst][j] += c * r[src][j];
  }
  void swap_rows(int i, int j) { std::swap(r[i], r[j]); }
};

template <>
struct DenseRows<Fp> {
  std::vector<std::vector<std::uint64_t>> r;
  int ncols;
  DenseRows(int nrows, int nc) : r(nrows, std::vector<std::uint64_t>(nc, 0)), ncols(nc) {}
  void set(int i, int j, const Fp& v) { r[i][j] = v.v; }
  Fp get(int i, int j) const { return Fp(r[i][j]); }
  void scale_row(int i, const Fp& c) {
    const std::uint64_t P = Fp::modulus();
    for (auto& x : r[i]) x = x * c.v % P;
  }
  void axpy_row(int dst, const Fp& c, int src) {
    const std::uint64_t P = Fp::modulus();
    const std::uint64_t cv = c.v;
    auto& d = r[dst];
    auto& s = r[src];
    for (int j = 0; j < ncols; ++j) d[j] = (d[j] + cv * s[j]) % P;
  }
  void swap_rows(int i, int j) { std::swap(r[i], r[j]); }
};

}  // namespace detail

// Gaussian elimination on one dense component.  Column order is the given
// order (callers pass globally increasing indices, which keeps results
// deterministic).  Returns pivot column positions.
template <class K>
std::vector<int> dense_echelon(detail::DenseRows<K>& M, int nrows, int ncols) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int piv = -1;
    for (int i = row; i < nrows; ++i)
      if (!M.get(i, col).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    M.swap_rows(piv, row);
    M.scale_row(row, M.get(row, col).inv());
    for (int i = 0; i < nrows; ++i) {
      if (i == row) continue;
      K c = M.get(i, col);
      if (!c.is_zero()) M.axpy_row(i, -c, row);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
SolveOut<K> solve_sparse(const SparseSystem<K>& sys, bool want_kernel = true) {
  const int NC = sys.ncols;
  const int NR = static_cast<int>(sys.rows.size());
  const bool inhom = !sys.rhs.empty();

  UnionFind uf(NC + NR);
  for (int r = 0; r < NR; ++r)
    for (auto& [c, v] : sys.rows[r]) uf.unite(NC + r, c);

  // group columns and rows per component
  std::map<int, std::vector<int>> comp_cols, comp_rows;
  for (int c = 0; c < NC; ++c) comp_cols[uf.find(c)].push_back(c);
  for (int r = 0; r < NR; ++r) comp_rows[uf.find(NC + r)].push_back(r);

  SolveOut<K> out;
  std::vector<K> particular_dense;
  if (inhom) particular_dense.assign(NC, K::zero());

  // iterate components in order of smallest column index for determinism
  std::vector<std::pair<int, int>> order;  // (min col or big sentinel, root)
  for (auto& [root, cols] : comp_cols) order.push_back({cols.front(), root});
  std::sort(order.begin(), order.end());

  // rows not touching any column: 0 = rhs checks
  for (auto& [root, rws] : comp_rows) {
    if (comp_cols.find(root) != comp_cols.end()) continue;
    if (inhom)
      for (int r : rws)
        if (!sys.rhs[r].is_zero()) out.consistent = false;
  }

  for (auto& [mincol, root] : order) {
    auto& cols = comp_cols[root];
    auto rit = comp_rows.find(root);
    std::vector<int> rws = rit == comp_rows.end() ? std::vector<int>() : rit->second;

    const int nc = static_cast<int>(cols.size());
    const int nr = static_cast<int>(rws.size());
    std::unordered_map<int, int> colpos;
    colpos.reserve(cols.size() * 2);
    for (int j = 0; j < nc; ++j) colpos[cols[j]] = j;

    const int width = nc + (inhom ? 1 : 0);
    detail::DenseRows<K> M(nr, width);
    for (int i = 0; i < nr; ++i) {
      for (auto& [c, v] : sys.rows[rws[i]]) M.set(i, colpos[c], v);
      if (inhom) M.set(i, nc, -sys.rhs[rws[i]]);
    }

    auto pivots = dense_echelon(M, nr, width);
    // a pivot in the rhs column marks inconsistency
    if (inhom && !pivots.empty() && pivots.back() == nc) {
      out.consistent = false;
      pivots.pop_back();
    }
    out.rank += static_cast<long long>(pivots.size());

    std::vector<char> is_pivot(nc, 0);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) is_pivot[pivots[pi]] = 1;

    if (inhom && out.consistent) {
      // free vars at zero; the augmented column carries -b, so the pivot
      // variable of row pi is -M(pi, nc)
      for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
        K v = M.get(static_cast<int>(pi), nc);
        if (!v.is_zero()) particular_dense[cols[pivots[pi]]] = -v;
      }
    }
    if (want_kernel) {
      for (int j = 0; j < nc; ++j) {
        if (is_pivot[j]) continue;
        SpVec<K> vec;
        // kernel vector for free column j: 1 at j, back-substituted pivots
        for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
          K v = M.get(static_cast<int>(pi), j);
          if (!v.is_zero()) vec.push_back({cols[pivots[pi]], -v});
        }
        vec.push_back({cols[j], K::one()});
        std::sort(vec.begin(), vec.end(),
                  [](auto& a, auto& b) { return a.first < b.first; });
        out.kernel.push_back(std::move(vec));
      }
    }
  }

  if (inhom && out.consistent) {
    for (int c = 0; c < NC; ++c)
      if (!particular_dense[c].is_zero()) out.particular.push_back({c, particular_dense[c]});
  }
  return out;
}

// Incremental sparse row echelon: span ranks, membership tests, residuals.
// Rows are normalized to a unit leading coefficient at their pivot index.
template <class K>
struct Echelon {
  std::map<int, SpVec<K>> pivot_rows;  // pivot index -> row

  SpVec<K> reduce(SpVec<K> v) const {
    while (!v.empty()) {
      auto it = pivot_rows.find(v.front().first);
      if (it == pivot_rows.end()) break;
      spvec_axpy(v, -v.front().second, it->second);
    }
    return v;
  }
  // returns true if v was independent (rank grew)
  bool add(SpVec<K> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    K lead = v.front().second;
    if (!(lead == K::one())) {
      K inv = lead.inv();
      for (auto& [i, c] : v) c = inv * c;
    }
    pivot_rows.emplace(v.front().first, std::move(v));
    return true;
  }
  bool contains(const SpVec<K>& v) const { return reduce(v).empty(); }
  int rank() const { return static_cast<int>(pivot_rows.size()); }
};

}  // namespace mfkit
