#pragma once
// graded_solve: k-linear systems whose unknowns are truncated series.
//
// A system is a list of unknown series slots u_s (each with a degree cap) and
// constraint rows  sum_s c_{r,s} * u_s + b_r = 0  enforced through a degree
// cap per row.  Flattening by monomials gives one scalar equation per
// (row, monomial) pair; solve_sparse does the rest.  Degree caps matter:
// a slot capped at row_cap - maxdeg(c) only contains coefficients whose
// constraints are all inside the enforced window, which is what makes kernels
// of maps like u -> u*x come back empty instead of full of boundary junk.

#include <unordered_map>
#include <vector>

#include "mfkit/linsolve.hpp"
#include "mfkit/series.hpp"

namespace mfkit {

template <class K>
struct SeriesSystem {
  RingPtr ring;
  std::vector<int> slot_caps;

  struct Term {
    int slot;
    Series<K> coeff;
  };
  struct Row {
    std::vector<Term> terms;
    Series<K> rhs;
    int cap;
  };
  std::vector<Row> rows;

  explicit SeriesSystem(RingPtr r) : ring(std::move(r)) {}

  int add_slot(int cap = -1) {
    slot_caps.push_back(cap);
    return static_cast<int>(slot_caps.size()) - 1;
  }
  void add_row(std::vector<Term> terms, Series<K> rhs, int cap) {
    rows.push_back({std::move(terms), std::move(rhs), cap});
  }

  // Fill in caps for slots left at -1: the largest degree whose constraints
  // are fully inside every enforced window touching the slot.
  void auto_caps() {
    for (std::size_t s = 0; s < slot_caps.size(); ++s) {
      if (slot_caps[s] >= 0) continue;
      int cap = -2;
      for (auto& row : rows)
        for (auto& t : row.terms) {
          if (t.slot != static_cast<int>(s) || t.coeff.is_zero()) continue;
          int c = row.cap - t.coeff.max_deg();
          cap = cap == -2 ? c : std::min(cap, c);
        }
      slot_caps[s] = cap == -2 ? 0 : std::max(cap, -1);
    }
  }
};

template <class K>
struct SeriesSolution {
  bool consistent = true;
  std::vector<std::vector<Series<K>>> kernel;
  std::vector<Series<K>> particular;
  long long rank = 0;
};

namespace detail {

struct MonoIndex {
  std::vector<Monomial> list;
  std::unordered_map<Monomial, int, MonomialHash> pos;
  static MonoIndex build(int nvars, int cap) {
    MonoIndex mi;
    if (cap < 0) return mi;
    mi.list = monomials_up_to(nvars, cap);
    mi.pos.reserve(mi.list.size() * 2);
    for (std::size_t i = 0; i < mi.list.size(); ++i)
      mi.pos[mi.list[i]] = static_cast<int>(i);
    return mi;
  }
};

}  // namespace detail

template <class K>
SeriesSolution<K> graded_solve(SeriesSystem<K>& sys, bool want_kernel = true) {
  sys.auto_caps();
  const int nv = sys.ring->nvars();

  // cache monomial indexers per cap
  std::unordered_map<int, detail::MonoIndex> by_cap;
  auto get_index = [&](int cap) -> detail::MonoIndex& {
    auto it = by_cap.find(cap);
    if (it == by_cap.end()) it = by_cap.emplace(cap, detail::MonoIndex::build(nv, cap)).first;
    return it->second;
  };

  const int nslots = static_cast<int>(sys.slot_caps.size());
  std::vector<int> slot_offset(nslots + 1, 0);
  for (int s = 0; s < nslots; ++s)
    slot_offset[s + 1] =
        slot_offset[s] + static_cast<int>(get_index(sys.slot_caps[s]).list.size());

  // Rows with a right-hand side are only enforced where the unknowns can
  // still respond: an equation of degree d is complete iff every
  // contributing slot coefficient lies below its cap.  Without the clip a
  // truncated unknown shows up as a fake inconsistency at the boundary.
  std::vector<int> eff_cap(sys.rows.size());
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    int cap = sys.rows[r].cap;
    if (!sys.rows[r].rhs.is_zero()) {
      for (auto& t : sys.rows[r].terms)
        if (!t.coeff.is_zero())
          cap = std::min(cap, sys.slot_caps[t.slot] + t.coeff.min_deg());
    }
    eff_cap[r] = cap;
  }

  std::vector<int> row_offset(sys.rows.size() + 1, 0);
  for (std::size_t r = 0; r < sys.rows.size(); ++r)
    row_offset[r + 1] =
        row_offset[r] + static_cast<int>(get_index(eff_cap[r]).list.size());

  SparseSystem<K> flat;
  flat.ncols = slot_offset[nslots];
  const int neq = row_offset[sys.rows.size()];
  std::vector<SpVec<K>> eq(neq);
  std::vector<K> rhs(neq, K::zero());
  bool any_rhs = false;

  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    const auto& row = sys.rows[r];
    auto& eqidx = get_index(eff_cap[r]);
    for (auto& term : row.terms) {
      auto& smono = get_index(sys.slot_caps[term.slot]).list;
      for (auto& [mc, cc] : term.coeff.ts) {
        int dc = mc.deg();
        for (std::size_t ui = 0; ui < smono.size(); ++ui) {
          if (dc + smono[ui].deg() > eff_cap[r]) continue;
          auto pit = eqidx.pos.find(mc * smono[ui]);
          if (pit == eqidx.pos.end()) continue;
          eq[row_offset[r] + pit->second].push_back(
              {slot_offset[term.slot] + static_cast<int>(ui), cc});
        }
      }
    }
    // the row reads sum c * u + rhs = 0, so the flat system's b is -rhs
    for (auto& [m, c] : row.rhs.ts) {
      auto pit = eqidx.pos.find(m);
      if (pit == eqidx.pos.end()) continue;
      rhs[row_offset[r] + pit->second] -= c;
      any_rhs = true;
    }
  }

  for (auto& e : eq) {
    std::sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.first < b.first; });
    // combine duplicate column hits
    SpVec<K> merged;
    for (auto& [c, v] : e) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.push_back({c, v});
    }
    std::erase_if(merged, [](auto& p) { return p.second.is_zero(); });
    flat.rows.push_back(std::move(merged));
  }
  if (any_rhs) flat.rhs = std::move(rhs);

  auto flat_out = solve_sparse(flat, want_kernel);

  SeriesSolution<K> out;
  out.consistent = flat_out.consistent;
  out.rank = flat_out.rank;
  auto unflatten = [&](const SpVec<K>& vec) {
    std::vector<Series<K>> tuple;
    tuple.reserve(nslots);
    for (int s = 0; s < nslots; ++s)
      tuple.push_back(Series<K>::zero(sys.ring, std::max(sys.slot_caps[s], 0)));
    for (auto& [idx, c] : vec) {
      int s = static_cast<int>(std::upper_bound(slot_offset.begin(), slot_offset.end(), idx) -
                               slot_offset.begin()) - 1;
      tuple[s].add_term(get_index(sys.slot_caps[s]).list[idx - slot_offset[s]], c);
    }
    return tuple;
  };
  for (auto& v : flat_out.kernel) out.kernel.push_back(unflatten(v));
  if (any_rhs && flat_out.consistent) out.particular = unflatten(flat_out.particular);
  return out;
}

// Minimal generators of the module spanned by the given tuples over the
// series ring: the staircase picks, in increasing degree, tuples independent
// modulo m * (span of all tuples).  Tuples are truncated to gen_cap before
// the selection so boundary coefficients cannot fake independence.
template <class K>
std::vector<int> minimal_generator_indices(const RingPtr& ring,
                                           const std::vector<std::vector<Series<K>>>& tuples,
                                           int gen_cap) {
  if (tuples.empty()) return {};
  const int nslots = static_cast<int>(tuples.front().size());
  const int nv = ring->nvars();
  auto idx = detail::MonoIndex::build(nv, gen_cap);
  const int width = static_cast<int>(idx.list.size());

  auto flatten = [&](const std::vector<Series<K>>& tup) {
    SpVec<K> v;
    for (int s = 0; s < nslots; ++s)
      for (auto& [m, c] : tup[s].ts) {
        auto it = idx.pos.find(m);
        if (it != idx.pos.end()) v.push_back({s * width + it->second, c});
      }
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return v;
  };

  Echelon<K> mspan;
  for (auto& tup : tuples) {
    for (int var = 0; var < nv; ++var) {
      std::vector<Series<K>> shifted;
      shifted.reserve(nslots);
      Series<K> x = Series<K>::var(ring, gen_cap, var);
      for (auto& s : tup) shifted.push_back(x * s.truncated(gen_cap));
      mspan.add(flatten(shifted));
    }
  }

  std::vector<int> order(tuples.size());
  std::iota(order.begin(), order.end(), 0);
  auto tup_deg = [&](int i) {
    int d = gen_cap + 1;
    for (auto& s : tuples[i]) d = std::min(d, s.min_deg());
    return d;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return tup_deg(a) < tup_deg(b); });

  std::vector<int> chosen;
  for (int i : order) {
    std::vector<Series<K>> trunc;
    for (auto& s : tuples[i]) trunc.push_back(s.truncated(gen_cap));
    if (mspan.add(flatten(trunc))) chosen.push_back(i);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace mfkit
