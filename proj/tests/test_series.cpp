#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mfkit/field.hpp"
#include "mfkit/format.hpp"
#include "mfkit/matrix.hpp"
#include "mfkit/series.hpp"
#include "test_util.hpp"

using namespace mfkit;
using tu::ring_x;
using tu::ring_xy;
using tu::sp;

TEST_CASE("prime field basics") {
  Fp::set_modulus(32003);
  CHECK(Fp::from_int(-1).v == 32002);
  CHECK((Fp::from_int(12345) * Fp::from_int(12345).inv()) == Fp::one());
  CHECK(Fp::from_int(32002).display_negative());
  CHECK(Fp::from_int(32002).display_abs() == "1");
  CHECK(Fp::parse("-7") == Fp::from_int(-7));
  CHECK(Fp::parse("1/2") * Fp::from_int(2) == Fp::one());
}

TEST_CASE("rationals") {
  Rat a = Rat::parse("3/4"), b = Rat::parse("-1/6");
  CHECK((a + b).str() == "7/12");
  CHECK((a * b).str() == "-1/8");
  CHECK(a.inv().str() == "4/3");
}

TEST_CASE("monomial enumeration and order") {
  auto ms = monomials_up_to(2, 3);
  CHECK(ms.size() == 10);
  CHECK(ms.front().is_one());
  for (std::size_t i = 1; i < ms.size(); ++i) CHECK(grevlex_less(ms[i - 1], ms[i]));
}

TEST_CASE("canonical printing follows grevlex descending") {
  Fp::set_modulus(32003);
  auto s = sp<Fp>(ring_xy(), 6, "1+y+x+y^2+x*y+x^2");
  CHECK(print_poly(s) == "x^2+x*y+y^2+x+y+1");
  auto t = sp<Fp>(ring_xy(), 6, "x - y^2");
  CHECK(print_poly(t) == "-y^2+x");
  CHECK(print_poly(sp<Fp>(ring_xy(), 6, "0")) == "0");
  CHECK(print_poly(sp<Fp>(ring_xy(), 6, "2*x^2*y - 3")) == "2*x^2*y-3");
}

TEST_CASE("parse accepts signed, spaced, fractional input") {
  Fp::set_modulus(32003);
  CHECK(print_poly(sp<Fp>(ring_xy(), 8, " - y + x ^ 2 ")) == "x^2-y");
  CHECK(sp<Fp>(ring_xy(), 8, "1/2*x") == sp<Fp>(ring_xy(), 8, "16002*x"));
  CHECK_THROWS(sp<Fp>(ring_xy(), 8, "z+1"));
  CHECK_THROWS(sp<Fp>(ring_xy(), 2, "x^5"));
  CHECK_THROWS(sp<Fp>(ring_xy(), 8, "x++y"));
}

TEST_CASE("print/parse round trip on random series") {
  Fp::set_modulus(32003);
  std::mt19937_64 rng(2026);
  for (int i = 0; i < 50; ++i) {
    auto s = tu::random_series<Fp>(rng, ring_xy(), 10, 6, 8);
    auto back = parse_poly<Fp>(ring_xy(), 10, print_poly(s));
    CHECK(back == s);
    CHECK(print_poly(back) == print_poly(s));
  }
}

TEST_CASE("ring axioms, randomized") {
  Fp::set_modulus(32003);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    auto a = tu::random_series<Fp>(rng, ring_xy(), 8, 4, 6);
    auto b = tu::random_series<Fp>(rng, ring_xy(), 8, 4, 6);
    auto c = tu::random_series<Fp>(rng, ring_xy(), 8, 4, 6);
    CHECK((a + b) == (b + a));
    CHECK((a * b) == (b * a));
    CHECK(((a + b) + c) == (a + (b + c)));
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("precision: min rule and truncation coherence") {
  Fp::set_modulus(32003);
  auto a = sp<Fp>(ring_xy(), 5, "1+x");
  auto b = sp<Fp>(ring_xy(), 3, "1+y");
  CHECK((a * b).prec == 3);
  CHECK((a + b).prec == 3);

  std::mt19937_64 rng(99);
  for (int i = 0; i < 30; ++i) {
    auto u = tu::random_series<Fp>(rng, ring_xy(), 12, 5, 9);
    auto v = tu::random_series<Fp>(rng, ring_xy(), 12, 5, 9);
    // computing at high precision then cutting equals computing low
    CHECK((u * v).truncated(6) == (u.truncated(6) * v.truncated(6)));
    CHECK((u + v).truncated(6) == (u.truncated(6) + v.truncated(6)));
  }
}

TEST_CASE("invert_unit matches the geometric series") {
  Fp::set_modulus(32003);
  auto f = sp<Fp>(ring_x(), 4, "1+x");
  CHECK(print_poly(invert_unit(f)) == "x^4-x^3+x^2-x+1");
  CHECK_THROWS(invert_unit(sp<Fp>(ring_x(), 4, "x")));

  auto g = sp<Rat>(ring_xy(), 7, "2+x+3*y^2");
  auto gi = invert_unit(g);
  CHECK(print_poly(g * gi) == "1");
}

TEST_CASE("map_vars and kill_var") {
  Fp::set_modulus(32003);
  auto rxy = ring_xy();
  auto s = sp<Fp>(rxy, 6, "x^2+x*y+3");
  auto killed = kill_var(s, ring_x(), {0, -1});
  CHECK(print_poly(killed) == "x^2+3");
  auto r3 = make_ring({"t", "x", "y"});
  auto lifted = map_vars(s, r3, {1, 2});
  CHECK(print_poly(lifted) == "x^2+x*y+3");
  CHECK(lifted.ring->nvars() == 3);
}

TEST_CASE("matrix product and inverse over the local ring") {
  Fp::set_modulus(32003);
  auto r = ring_xy();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    auto m = tu::random_invertible<Fp>(rng, r, 3, 8, 3);
    auto mi = invert_matrix(m);
    CHECK(matrix_product(m, mi) == Mat<Fp>::identity(3, r, 8));
    CHECK(matrix_product(mi, m) == Mat<Fp>::identity(3, r, 8));
  }
  // specific 2x2 with series entries
  Mat<Fp> a(2, 2, r, 6);
  a.at(0, 0) = sp<Fp>(r, 6, "x");
  a.at(0, 1) = sp<Fp>(r, 6, "-y");
  a.at(1, 0) = sp<Fp>(r, 6, "y^2");
  a.at(1, 1) = sp<Fp>(r, 6, "x^3");
  Mat<Fp> b(2, 2, r, 6);
  b.at(0, 0) = sp<Fp>(r, 6, "x^3");
  b.at(0, 1) = sp<Fp>(r, 6, "y");
  b.at(1, 0) = sp<Fp>(r, 6, "-y^2");
  b.at(1, 1) = sp<Fp>(r, 6, "x");
  auto prod = matrix_product(a, b);
  CHECK(print_poly(prod.at(0, 0)) == "x^4+y^3");
  CHECK(print_poly(prod.at(1, 1)) == "x^4+y^3");
  CHECK(prod.at(0, 1).is_zero());
  CHECK(prod.at(1, 0).is_zero());
}
