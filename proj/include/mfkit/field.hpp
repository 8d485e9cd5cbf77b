#pragma once
// Exact coefficient fields: F_p with a process-wide modulus, and Q via
// boost::multiprecision.  Both expose the same tiny interface so the whole
// series/factorization stack can be templated on the scalar.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mfkit {

// Prime field.  The modulus is process-wide state: every fixture, catalog and
// CLI session works over a single field at a time, and threading the modulus
// through each of the ~10^7 scalar operations of a kernel solve would be pure
// overhead.  set_modulus is called once per run, before any element exists.
class Fp {
  static inline std::uint64_t P = 32003;

public:
  std::uint64_t v = 0;

  Fp() = default;
  explicit Fp(std::uint64_t reduced) : v(reduced) {}

  static void set_modulus(std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
    P = p;
  }
  static std::uint64_t modulus() { return P; }

  static Fp from_int(long long x) {
    long long r = x % static_cast<long long>(P);
    if (r < 0) r += static_cast<long long>(P);
    return Fp(static_cast<std::uint64_t>(r));
  }
  static Fp zero() { return Fp(0); }
  static Fp one() { return from_int(1); }

  bool is_zero() const { return v == 0; }
  bool operator==(const Fp& o) const { return v == o.v; }
  bool operator!=(const Fp& o) const { return v != o.v; }

  Fp operator+(const Fp& o) const {
    std::uint64_t s = v + o.v;
    if (s >= P) s -= P;
    return Fp(s);
  }
  Fp operator-(const Fp& o) const {
    return Fp(v >= o.v ? v - o.v : v + P - o.v);
  }
  Fp operator-() const { return Fp(v == 0 ? 0 : P - v); }
  Fp operator*(const Fp& o) const { return Fp((v * o.v) % P); }

  Fp inv() const {
    if (v == 0) throw std::domain_error("Fp: inverse of zero");
    // extended Euclid on (v, P)
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(P), newr = static_cast<long long>(v);
    while (newr != 0) {
      long long q = r / newr;
      long long tmp = t - q * newt;
      t = newt; newt = tmp;
      tmp = r - q * newr;
      r = newr; newr = tmp;
    }
    if (t < 0) t += static_cast<long long>(P);
    return Fp(static_cast<std::uint64_t>(t));
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  // Balanced display: 32002 prints as -1.  Keeps fixtures readable and the
  // canonical form stable under parse/print round trips.
  bool display_negative() const { return v > P / 2; }
  std::string display_abs() const {
    return std::to_string(display_negative() ? P - v : v);
  }
  std::string str() const {
    return display_negative() ? "-" + display_abs() : std::to_string(v);
  }

  static Fp parse(const std::string& s) {
    // integer literal, optionally signed; fractions a/b allowed for symmetry
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      Fp num = parse(s.substr(0, slash));
      Fp den = parse(s.substr(slash + 1));
      return num / den;
    }
    return from_int(std::stoll(s));
  }

  static const char* field_name() { return "fp"; }
  static std::string field_tag() { return "fp:" + std::to_string(P); }
};

// Exact rationals.  cpp_rational keeps everything reduced; we only add the
// display/parse glue shared with Fp.
class Rat {
public:
  boost::multiprecision::cpp_rational v;

  Rat() = default;
  explicit Rat(boost::multiprecision::cpp_rational x) : v(std::move(x)) {}

  static Rat from_int(long long x) { return Rat(boost::multiprecision::cpp_rational(x)); }
  static Rat zero() { return from_int(0); }
  static Rat one() { return from_int(1); }

  bool is_zero() const { return v == 0; }
  bool operator==(const Rat& o) const { return v == o.v; }
  bool operator!=(const Rat& o) const { return v != o.v; }

  Rat operator+(const Rat& o) const { return Rat(v + o.v); }
  Rat operator-(const Rat& o) const { return Rat(v - o.v); }
  Rat operator-() const { return Rat(-v); }
  Rat operator*(const Rat& o) const { return Rat(v * o.v); }
  Rat inv() const {
    if (v == 0) throw std::domain_error("Rat: inverse of zero");
    return Rat(1 / v);
  }
  Rat operator/(const Rat& o) const { return *this * o.inv(); }
  Rat& operator+=(const Rat& o) { v += o.v; return *this; }
  Rat& operator-=(const Rat& o) { v -= o.v; return *this; }
  Rat& operator*=(const Rat& o) { v *= o.v; return *this; }

  bool display_negative() const { return v < 0; }
  std::string display_abs() const {
    boost::multiprecision::cpp_rational a = v < 0 ? -v : v;
    return a.str();
  }
  std::string str() const { return v.str(); }

  static Rat parse(const std::string& s) {
    return Rat(boost::multiprecision::cpp_rational(s));
  }

  static const char* field_name() { return "q"; }
  static std::string field_tag() { return "q"; }
};

}  // namespace mfkit
