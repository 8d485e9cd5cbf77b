#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "mfkit/catalog.hpp"
#include "mfkit/semigroup.hpp"
#include "mfkit/syzygy.hpp"
#include "test_util.hpp"

using namespace mfkit;
using tu::ring_xy;
using tu::sp;

namespace {

// window oracle: scan every exponent and compare against the ideal arithmetic
bool colon_agrees(const FractionalIdeal& I, const FractionalIdeal& J) {
  FractionalIdeal C = colon(I, J);
  for (int m = -20; m <= 40; ++m) {
    bool brute = true;
    for (int j : J.gens)
      if (!I.contains(m + j)) {
        brute = false;
        break;
      }
    if (brute != C.contains(m)) return false;
  }
  return true;
}

using ArrowTriple = std::tuple<std::string, std::string, int>;

std::multiset<ArrowTriple> arrow_set(const QuiverPresentation& q) {
  std::multiset<ArrowTriple> s;
  for (auto& a : q.arrows) s.insert({a.from, a.to, a.tpow});
  return s;
}

}  // namespace

TEST_CASE("numerical semigroup membership and canonical splits") {
  SemigroupRing g34 = make_semigroup(3, 4);
  CHECK(g34.conductor() == 6);
  std::set<int> gaps34;
  for (int m = 0; m < 12; ++m)
    if (!g34.contains(m)) gaps34.insert(m);
  CHECK(gaps34 == std::set<int>{1, 2, 5});

  SemigroupRing g35 = make_semigroup(3, 5);
  CHECK(g35.conductor() == 8);
  std::set<int> gaps35;
  for (int m = 0; m < 12; ++m)
    if (!g35.contains(m)) gaps35.insert(m);
  CHECK(gaps35 == std::set<int>{1, 2, 4, 7});

  // split is the Apery normal form: beta below the small generator
  auto s = g34.split(8);
  REQUIRE(s.has_value());
  CHECK(s->first == 0);
  CHECK(s->second == 2);
  s = g34.split(12);
  REQUIRE(s.has_value());
  CHECK(s->first == 4);
  CHECK(s->second == 0);
  CHECK(!g34.split(5).has_value());
  CHECK(!g35.split(7).has_value());

  CHECK_THROWS(make_semigroup(2, 4));
  CHECK_THROWS(make_semigroup(4, 3));
}

TEST_CASE("fractional ideals keep minimal generators") {
  SemigroupRing R = make_semigroup(3, 4);
  CHECK(make_ideal(R, {3, 4, 6, 7, 8}).gens == std::vector<int>{3, 4});
  CHECK(make_ideal(R, {6, 8, 9, 10}).gens == std::vector<int>{6, 8});
  CHECK(make_ideal(R, {0}).gens == std::vector<int>{0});
  CHECK(make_ideal(R, {3, 4, 5}).gens == std::vector<int>{3, 4, 5});
  CHECK(shift_ideal(make_ideal(R, {3, 4}), -3).gens == std::vector<int>{0, 1});
  CHECK(make_ideal(R, {5, 5, 8}).gens == std::vector<int>{5});
}

TEST_CASE("colon matches the window scan on both curves") {
  SemigroupRing R6 = make_semigroup(3, 4);
  std::vector<FractionalIdeal> six = {
      make_ideal(R6, {0}), make_ideal(R6, {3, 8}), make_ideal(R6, {3, 4}),
      make_ideal(R6, {6, 8}), make_ideal(R6, {3, 4, 5})};
  for (auto& I : six)
    for (auto& J : six) CHECK(colon_agrees(I, J));

  SemigroupRing R8 = make_semigroup(3, 5);
  std::vector<FractionalIdeal> eight = {
      make_ideal(R8, {0}), make_ideal(R8, {3, 10}), make_ideal(R8, {3, 5}),
      make_ideal(R8, {6, 10}), make_ideal(R8, {5, 6})};
  for (auto& I : eight)
    for (auto& J : eight) CHECK(colon_agrees(I, J));

  // the double arrow source: two independent maps from (t^6, t^10) into (t^5, t^6)
  CHECK(colon(make_ideal(R8, {5, 6}), make_ideal(R8, {6, 10})).gens ==
        std::vector<int>{-1, 0});
}

TEST_CASE("irreducible arrows of the first curve quiver") {
  SemigroupRing R = make_semigroup(3, 4);
  QuiverPresentation q = irreducible_arrows({{"M1", make_ideal(R, {3, 8})},
                                             {"N1", make_ideal(R, {3, 4})},
                                             {"M2", make_ideal(R, {6, 8})},
                                             {"R", make_ideal(R, {0})}});
  std::multiset<ArrowTriple> expect = {
      {"M1", "M2", 3}, {"M1", "N1", 0}, {"N1", "M2", 5}, {"N1", "M1", 4},
      {"N1", "R", 0},  {"M2", "M2", 2}, {"M2", "N1", -2}, {"M2", "M1", 0},
      {"R", "M1", 3}};
  CHECK(arrow_set(q) == expect);

  // commutation hints: both displayed coincidences must be found
  auto has = [&](const std::string& s) {
    return std::find(q.relation_hints.begin(), q.relation_hints.end(), s) !=
           q.relation_hints.end();
  };
  CHECK(has("M2 -1-> M1 -1-> N1  ==  M2 -t^2-> M2 -t^-2-> N1"));
  CHECK(has("N1 -1-> R -t^3-> M1 -1-> N1  ==  N1 -t^5-> M2 -t^-2-> N1"));

  std::string dot = quiver_dot(q);
  CHECK(dot.find("\"M2\" -> \"N1\" [label=\"t^-2\"]") != std::string::npos);
  std::string txt = quiver_text(q);
  CHECK(txt.find("N1 -t^4-> M1") != std::string::npos);
}

TEST_CASE("irreducible arrows of the second curve quiver") {
  SemigroupRing R = make_semigroup(3, 5);
  QuiverPresentation q = irreducible_arrows({{"M1", make_ideal(R, {3, 10})},
                                             {"N1", make_ideal(R, {3, 5})},
                                             {"M2", make_ideal(R, {6, 10})},
                                             {"N2", make_ideal(R, {5, 6})},
                                             {"R", make_ideal(R, {0})}});
  std::multiset<ArrowTriple> expect = {
      {"M2", "M1", 0}, {"M2", "N2", 0}, {"M2", "N2", -1}, {"N2", "M2", 4},
      {"N2", "M2", 5}, {"N2", "N1", 0}, {"M1", "M2", 3},  {"M1", "N1", 0},
      {"N1", "N2", 3}, {"N1", "M1", 5}, {"N1", "R", 0},   {"R", "M1", 3}};
  CHECK(arrow_set(q) == expect);
}

TEST_CASE("kernel of the maps into the small ideal, first curve") {
  SemigroupRing R = make_semigroup(3, 4);
  // maps into (t^3, t^4): multiplication by 1 from (t^3, t^8) and by t^-2
  // from (t^6, t^8)
  IdealMap d{make_ideal(R, {3, 4}),
             {make_ideal(R, {3, 8}), make_ideal(R, {6, 8})},
             {0, -2}};
  auto kd = kernel_of_map<Fp>(d, ring_xy(), 30, -1);
  REQUIRE(kd.gens.size() == 3);
  CHECK(kd.gens[0].degree == 6);
  CHECK(kd.gens[1].degree == 7);
  CHECK(kd.gens[2].degree == 8);
  REQUIRE(kd.rels.size() == 3);
  CHECK(kd.rels[0].degree == 10);
  CHECK(kd.rels[1].degree == 11);
  CHECK(kd.rels[2].degree == 12);
  CHECK(kernel_complete(d, kd));

  Series<Fp> f = sp<Fp>(ring_xy(), 30, "x^4+y^3");
  auto mf = mf_from_presentation(kd.presentation, f);
  REQUIRE(mf.has_value());
  CHECK(validate(*mf).ok);
  CHECK(mf->is_reduced());
  CHECK(mf_rank(*mf) == 1);
  RingPtr rx = make_ring({"x"});
  CHECK(decompose_artinian(quotient_mod_var(*mf, 1, rx), 4) == std::vector<int>{1, 1, 2});
}

TEST_CASE("kernel of the maps into the cyclic quotient, first curve") {
  SemigroupRing R = make_semigroup(3, 4);
  // maps into (t^6, t^8): t^3 from M1, t^5 from N1, t^2 from M2 itself
  IdealMap d{make_ideal(R, {6, 8}),
             {make_ideal(R, {3, 8}), make_ideal(R, {3, 4}), make_ideal(R, {6, 8})},
             {3, 5, 2}};
  auto kd = kernel_of_map<Fp>(d, ring_xy(), 30, -1);
  REQUIRE(kd.gens.size() == 4);
  CHECK(kd.gens[0].degree == 8);
  CHECK(kd.gens[1].degree == 9);
  CHECK(kd.gens[2].degree == 10);
  CHECK(kd.gens[3].degree == 11);
  CHECK(kd.rels.size() == 4);
  CHECK(kernel_complete(d, kd));

  Series<Fp> f = sp<Fp>(ring_xy(), 30, "x^4+y^3");
  auto mf = mf_from_presentation(kd.presentation, f);
  REQUIRE(mf.has_value());
  CHECK(validate(*mf).ok);
  CHECK(mf->is_reduced());
  CHECK(mf_rank(*mf) == 2);
  RingPtr rx = make_ring({"x"});
  CHECK(decompose_artinian(quotient_mod_var(*mf, 1, rx), 4) ==
        std::vector<int>{1, 2, 2, 3});
}

TEST_CASE("kernel of the maps into the small ideal, second curve") {
  SemigroupRing R = make_semigroup(3, 5);
  IdealMap d{make_ideal(R, {3, 5}),
             {make_ideal(R, {5, 6}), make_ideal(R, {3, 10})},
             {0, 0}};
  auto kd = kernel_of_map<Rat>(d, ring_xy(), 30, -1);
  REQUIRE(kd.gens.size() == 3);
  CHECK(kd.gens[0].degree == 6);
  CHECK(kd.gens[1].degree == 8);
  CHECK(kd.gens[2].degree == 10);
  REQUIRE(kd.rels.size() == 3);
  CHECK(kd.rels[0].degree == 11);
  CHECK(kd.rels[1].degree == 13);
  CHECK(kd.rels[2].degree == 15);
  CHECK(kernel_complete(d, kd));

  Series<Rat> f = sp<Rat>(ring_xy(), 30, "x^5+y^3");
  auto mf = mf_from_presentation(kd.presentation, f);
  REQUIRE(mf.has_value());
  CHECK(validate(*mf).ok);
  CHECK(mf_rank(*mf) == 1);
  RingPtr rx = make_ring({"x"});
  CHECK(decompose_artinian(quotient_mod_var(*mf, 1, rx), 5) == std::vector<int>{1, 1, 3});
}

TEST_CASE("kernel of an inclusion is zero") {
  SemigroupRing R = make_semigroup(3, 4);
  IdealMap d{make_ideal(R, {0}), {make_ideal(R, {3, 4})}, {0}};
  auto kd = kernel_of_map<Fp>(d, ring_xy(), 30, -1);
  CHECK(kd.gens.empty());
  CHECK(kd.rels.empty());
  CHECK(kernel_complete(d, kd));
}

TEST_CASE("lift of t powers follows the embedding sign") {
  SemigroupRing R = make_semigroup(3, 4);
  auto r = ring_xy();
  CHECK(lift_tpow<Fp>(r, 10, R, 3, -1) == sp<Fp>(r, 10, "x"));
  CHECK(lift_tpow<Fp>(r, 10, R, 4, -1) == sp<Fp>(r, 10, "-y"));
  CHECK(lift_tpow<Fp>(r, 10, R, 8, -1) == sp<Fp>(r, 10, "y^2"));
  CHECK(lift_tpow<Fp>(r, 10, R, 11, -1) == sp<Fp>(r, 10, "x*y^2"));
  CHECK(lift_tpow<Fp>(r, 10, R, 12, -1) == sp<Fp>(r, 10, "x^4"));
  CHECK_THROWS(lift_tpow<Fp>(r, 10, R, 5, -1));
}
