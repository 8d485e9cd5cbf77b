#pragma once
// Ring descriptors and monomials.  Everything downstream works over power
// series rings k[[x_1..x_v]] in at most MFKIT_MAX_VARS variables; a monomial
// is a fixed-size exponent array, cheap to copy and hash.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mfkit {

inline constexpr int MFKIT_MAX_VARS = 4;

struct Monomial {
  std::array<std::uint8_t, MFKIT_MAX_VARS> e{};

  int deg() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const { return deg() == 0; }
  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < MFKIT_MAX_VARS; ++i)
      r.e[i] = static_cast<std::uint8_t>(e[i] + o.e[i]);
    return r;
  }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < MFKIT_MAX_VARS; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Monomial quotient(const Monomial& o) const {  // *this / o, caller checks divisibility
    Monomial r;
    for (int i = 0; i < MFKIT_MAX_VARS; ++i)
      r.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
    return r;
  }
  bool operator==(const Monomial& o) const { return e == o.e; }

  static Monomial one() { return Monomial{}; }
  static Monomial var(int i, int pow = 1) {
    Monomial m;
    m.e[i] = static_cast<std::uint8_t>(pow);
    return m;
  }
};

// Graded reverse lexicographic order: compare total degree first; on ties the
// monomial with the larger exponent in the last distinguishing variable is
// the smaller one.
inline bool grevlex_less(const Monomial& a, const Monomial& b) {
  int da = a.deg(), db = b.deg();
  if (da != db) return da < db;
  for (int i = MFKIT_MAX_VARS - 1; i >= 0; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  }
  return false;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 0;
    for (auto x : m.e) h = h * 257 + x;
    return h;
  }
};

struct RingDesc {
  std::vector<std::string> vars;

  int nvars() const { return static_cast<int>(vars.size()); }
  int var_index(const std::string& name) const;  // -1 if absent
  bool same_vars(const RingDesc& o) const { return vars == o.vars; }
};

using RingPtr = std::shared_ptr<const RingDesc>;

RingPtr make_ring(std::vector<std::string> vars);

// All monomials in nvars variables of total degree <= cap, grevlex-sorted
// ascending.  Used by the flat solver to index unknown coefficients.
std::vector<Monomial> monomials_up_to(int nvars, int cap);

}  // namespace mfkit
