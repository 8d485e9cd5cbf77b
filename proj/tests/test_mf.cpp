#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mfkit/mf.hpp"
#include "mfkit/mf_io.hpp"
#include "test_util.hpp"

using namespace mfkit;
using tu::ring_x;
using tu::ring_xy;
using tu::sp;

namespace {

MF<Fp> mf_xy(int prec, const std::string& f, std::vector<std::vector<std::string>> phi,
             std::vector<std::vector<std::string>> psi) {
  auto r = ring_xy();
  int n = static_cast<int>(phi.size());
  MF<Fp> m{r, sp<Fp>(r, prec, f), Mat<Fp>(n, n, r, prec), Mat<Fp>(n, n, r, prec)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.phi.at(i, j) = sp<Fp>(r, prec, phi[i][j]);
      m.psi.at(i, j) = sp<Fp>(r, prec, psi[i][j]);
    }
  return m;
}

MF<Fp> one_var_cyclic(int prec, int e, int a) {
  // (x^e, x^(a-e)) factoring x^a over k[[x]]
  auto r = ring_x();
  MF<Fp> m{r, sp<Fp>(r, prec, "x^" + std::to_string(a)), Mat<Fp>(1, 1, r, prec),
           Mat<Fp>(1, 1, r, prec)};
  m.phi.at(0, 0) = sp<Fp>(r, prec, "x^" + std::to_string(e));
  m.psi.at(0, 0) = sp<Fp>(r, prec, "x^" + std::to_string(a - e));
  return m;
}

}  // namespace

TEST_CASE("validate accepts the standard 2x2 factorization and reports breakage") {
  Fp::set_modulus(32003);
  auto n1 = mf_xy(12, "x^4+y^3", {{"x^3", "-y"}, {"y^2", "x"}}, {{"x", "y"}, {"-y^2", "x^3"}});
  auto c = validate(n1);
  CHECK(c.ok);
  CHECK(c.reduced);
  CHECK(c.message.empty());

  auto broken = n1;
  broken.phi.at(0, 0) = sp<Fp>(ring_xy(), 12, "x^3+x");
  auto cb = validate(broken);
  CHECK(!cb.ok);
  CHECK(!cb.product_ok);
  CHECK(cb.message.find("(0,0)") != std::string::npos);

  auto unreduced = one_var_cyclic(12, 0, 4);  // phi entry 1 is a unit
  unreduced.phi.at(0, 0) = sp<Fp>(ring_x(), 12, "1");
  unreduced.psi.at(0, 0) = sp<Fp>(ring_x(), 12, "x^4");
  unreduced.f = sp<Fp>(ring_x(), 12, "x^4");
  CHECK(validate(unreduced).ok);
  CHECK(!validate(unreduced).reduced);
}

TEST_CASE("omega is an involution on the nose") {
  Fp::set_modulus(32003);
  auto n1 = mf_xy(10, "x^4+y^3", {{"x^3", "-y"}, {"y^2", "x"}}, {{"x", "y"}, {"-y^2", "x^3"}});
  auto tw = omega(omega(n1));
  CHECK(tw.phi == n1.phi);
  CHECK(tw.psi == n1.psi);
  CHECK(validate(omega(n1)).ok);
}

TEST_CASE("tensor_hat of the two cyclics prints the textbook 2x2 pair") {
  Fp::set_modulus(32003);
  auto X = one_var_cyclic(30, 1, 4);  // (x, x^3) over k[[x]]
  auto Y = [&] {
    auto ry = make_ring({"y"});
    MF<Fp> m{ry, Series<Fp>::var(ry, 30, 0, 3), Mat<Fp>(1, 1, ry, 30), Mat<Fp>(1, 1, ry, 30)};
    m.phi.at(0, 0) = Series<Fp>::var(ry, 30, 0, 1);
    m.psi.at(0, 0) = Series<Fp>::var(ry, 30, 0, 2);
    return m;
  }();
  auto T = tensor_hat(X, Y);
  CHECK(validate(T).ok);
  auto S = omega(T);
  CHECK(print_mf(S) ==
        "ring x,y\n"
        "prec 30\n"
        "field fp:32003\n"
        "potential x^4+y^3\n"
        "phi\n"
        "[x^3, -y]\n"
        "[y^2, x]\n"
        "psi\n"
        "[x, y]\n"
        "[-y^2, x^3]\n");
  CHECK_THROWS(tensor_hat(X, X));  // shared variable
}

TEST_CASE("branched_cover reproduces the displayed M2 factorization") {
  Fp::set_modulus(32003);
  auto M = branched_cover(one_var_cyclic(30, 2, 4), BranchedCoverSpec{3, "y"});
  CHECK(validate(M).ok);
  CHECK(print_mf(M) ==
        "ring x,y\n"
        "prec 30\n"
        "field fp:32003\n"
        "potential x^4+y^3\n"
        "phi\n"
        "[x^2, -y]\n"
        "[y^2, x^2]\n"
        "psi\n"
        "[x^2, y]\n"
        "[-y^2, x^2]\n");
}

TEST_CASE("extension_block satisfies the factorization identity for all k") {
  Fp::set_modulus(32003);
  auto n1 = mf_xy(14, "x^4+y^3", {{"x^3", "-y"}, {"y^2", "x"}}, {{"x", "y"}, {"-y^2", "x^3"}});
  for (int k = 1; k <= 2; ++k) {
    auto e = extension_block(n1, 1, k);
    CHECK(e.size() == 4);
    CHECK(validate(e).ok);
    CHECK(e.is_reduced());
  }
  auto q = quotient_presentation(n1, 1, 2);
  CHECK(q.P.rows == 2);
  CHECK(q.P.cols == 4);
  CHECK(print_poly(q.P.at(0, 2)) == "y^2");
  CHECK(print_poly(q.P.at(1, 3)) == "y^2");
}

TEST_CASE("direct sums and strip_trivial_summands recover hidden frees") {
  Fp::set_modulus(32003);
  auto r = ring_xy();
  auto n1 = mf_xy(12, "x^4+y^3", {{"x^3", "-y"}, {"y^2", "x"}}, {{"x", "y"}, {"-y^2", "x^3"}});

  // free cok(phi) summand: the pair (f, 1)
  MF<Fp> freebie{r, n1.f, Mat<Fp>(1, 1, r, 12), Mat<Fp>(1, 1, r, 12)};
  freebie.phi.at(0, 0) = n1.f;
  freebie.psi.at(0, 0) = sp<Fp>(r, 12, "1");
  auto sum = direct_sum_mf(n1, freebie);
  CHECK(validate(sum).ok);

  std::mt19937_64 rng(31337);
  auto U = tu::random_invertible<Fp>(rng, r, 3, 12, 2);
  auto V = tu::random_invertible<Fp>(rng, r, 3, 12, 2);
  MF<Fp> twisted{r, sum.f, matrix_product(matrix_product(U, sum.phi), V),
                 matrix_product(matrix_product(invert_matrix(V), sum.psi), invert_matrix(U))};
  CHECK(validate(twisted).ok);
  CHECK(!twisted.is_reduced());

  auto rep = strip_trivial_summands(twisted);
  CHECK(rep.free_rank == 1);
  CHECK(rep.cofree_rank == 0);
  CHECK(rep.reduced.size() == 2);
  CHECK(validate(rep.reduced).ok);
  CHECK(rep.reduced.is_reduced());

  // the (1, f) orientation lands in the other counter
  auto rep2 = strip_trivial_summands(omega(twisted));
  CHECK(rep2.free_rank == 0);
  CHECK(rep2.cofree_rank == 1);
}

TEST_CASE("file io round trips byte for byte") {
  Fp::set_modulus(32003);
  auto n1 = mf_xy(30, "x^4+y^3", {{"x^3", "-y"}, {"y^2", "x"}}, {{"x", "y"}, {"-y^2", "x^3"}});
  std::string text = print_mf(n1);
  auto back = parse_mf<Fp>(text);
  CHECK(print_mf(back) == text);
  CHECK(back.phi == n1.phi);
  CHECK(back.psi == n1.psi);
  CHECK(back.f == n1.f);

  std::string wrong_field = text;
  wrong_field.replace(wrong_field.find("fp:32003"), 8, "fp:31991");
  CHECK_THROWS(parse_mf<Fp>(wrong_field));

  std::string ragged = text;
  ragged.replace(ragged.find("[x^3, -y]"), 9, "[x^3]");
  CHECK_THROWS(parse_mf<Fp>(ragged));
}

TEST_CASE("takahashi-style double cover composes") {
  Fp::set_modulus(32003);
  auto base = one_var_cyclic(10, 1, 2);  // (x, x) over x^2
  auto c1 = branched_cover(base, BranchedCoverSpec{2, "y1"});
  CHECK(validate(c1).ok);
  auto c2 = branched_cover(c1, BranchedCoverSpec{2, "y2"});
  CHECK(validate(c2).ok);
  CHECK(c2.ring->nvars() == 3);
  CHECK(print_poly(c2.f) == "x^2+y1^2+y2^2");
  CHECK_THROWS(branched_cover(c1, BranchedCoverSpec{2, "y1"}));
}
