#include <catch2/catch_amalgamated.hpp>

#include "g2kit/g2.hpp"
#include "g2kit/rng.hpp"
#include "g2kit/spin.hpp"

using namespace g2kit;
using R = Rational;

namespace {

TorsionTriple<R> random_torsion(Rng& rng) {
  TorsionTriple<R> t;
  t.tau0 = rng.next_scalar<R>();
  t.tau1 = rng.next_form<R>(1);
  t.tau3 = decompose3(rng.next_form<R>(3)).pi27;
  return t;
}

}  // namespace

TEST_CASE("metric from phi") {
  const auto& m = G2Model<R>::flat();
  CHECK(metric_from_phi(m.phi) == Matrix7<R>::identity());
  CHECK(metric_from_phi(Form<R>(3)).is_zero());
  CHECK_FALSE(metric_is_degenerate(metric_from_phi(m.phi)));
  CHECK(det7(metric_from_phi(m.phi)) == R(1));
  CHECK(metric_is_degenerate(metric_from_phi(Form<R>(3))));
  // scaled form: det(g) responds to the conformal weight, stays nondegenerate
  CHECK_FALSE(metric_is_degenerate(metric_from_phi(m.phi * R(2))));
}

TEST_CASE("cross product") {
  const auto& m = G2Model<R>::flat();
  CHECK(cross(Vector<R>::basis(1), Vector<R>::basis(2), m) == Vector<R>::basis(7));
  CHECK(cross(Vector<R>::basis(3), Vector<R>::basis(4), m) == Vector<R>::basis(7));
  CHECK(cross(Vector<R>::basis(1), Vector<R>::basis(1), m) == Vector<R>());

  Rng rng(201);
  auto dot = [](const Vector<R>& a, const Vector<R>& b) {
    R acc(0);
    for (int i = 1; i <= kDim; ++i) acc += a[i] * b[i];
    return acc;
  };
  for (int t = 0; t < 30; ++t) {
    auto x = rng.next_vector<R>();
    auto y = rng.next_vector<R>();
    auto z = rng.next_vector<R>();
    REQUIRE(dot(cross(x, y, m), x) == R(0));
    REQUIRE(dot(cross(x, y, m), z) == -dot(cross(y, x, m), z));
    // g(XxY, Z) = phi(X,Y,Z) is totally antisymmetric
    REQUIRE(dot(cross(x, y, m), z) == -dot(cross(x, z, m), y));
  }
}

TEST_CASE("2-form decomposition") {
  const auto& m = G2Model<R>::flat();
  Form<R> b7 = interior(Vector<R>::basis(1), m.phi);
  auto d7 = decompose2(b7, m);
  CHECK(d7.pi7 == b7);
  CHECK(d7.pi14.is_zero());

  Form<R> b14 = Form<R>::basis({1, 2}) - Form<R>::basis({3, 4});
  auto d14 = decompose2(b14, m);
  CHECK(d14.pi7.is_zero());
  CHECK(d14.pi14 == b14);

  auto dz = decompose2(Form<R>(2), m);
  CHECK(dz.pi7.is_zero());
  CHECK(dz.pi14.is_zero());

  Rng rng(202);
  for (int t = 0; t < 100; ++t) {
    auto b = rng.next_form<R>(2);
    auto d = decompose2(b, m);
    REQUIRE(d.pi7 + d.pi14 == b);
    REQUIRE(contract(d.pi7, m.psi) == d.pi7 * R(2));
    REQUIRE(contract(d.pi14, m.psi) == -d.pi14);
    REQUIRE(wedge(d.pi14, m.psi).is_zero());
    REQUIRE(inner(d.pi7, d.pi14) == R(0));
  }
}

TEST_CASE("pi7 recovery from the psi-wedge") {
  // pi7(b) = (1/3) psi ⌟ (b ∧ psi): the 14-part is annihilated by ^psi and
  // the 7-part comes back with factor 3
  const auto& m = G2Model<R>::flat();
  Rng rng(209);
  for (int t = 0; t < 50; ++t) {
    auto b = rng.next_form<R>(2);
    REQUIRE(contract(m.psi, wedge(b, m.psi)) * R(1, 3) == decompose2(b).pi7);
  }
}

TEST_CASE("instanton condition: three formulations agree pointwise") {
  // beta ^ psi0 == 0  <=>  beta contract phi0 == 0  <=>  beta . eta0 == 0
  const auto& m = G2Model<R>::flat();
  Rng rng(210);
  int in14 = 0;
  for (int t = 0; t < 200; ++t) {
    Form<R> b = (t % 2 == 0) ? rng.next_form<R>(2) : decompose2(rng.next_form<R>(2)).pi14;
    bool w = wedge(b, m.psi).is_zero();
    bool c = contract(b, m.phi).is_zero();
    bool s = act(b, Spinor<R>::eta0()).is_zero();
    REQUIRE(w == c);
    REQUIRE(c == s);
    if (w) ++in14;
  }
  CHECK(in14 >= 100);  // the projected half all land in the kernel
}

TEST_CASE("Lambda2 ranks and the triple equivalence") {
  const auto& m = G2Model<R>::flat();
  std::vector<Form<R>> im7, im14;
  for (Mask mm : masks_of_grade(2)) {
    auto d = decompose2(Form<R>::basis(mm), m);
    if (!d.pi7.is_zero()) im7.push_back(d.pi7);
    if (!d.pi14.is_zero()) im14.push_back(d.pi14);
  }
  CHECK(rank_of(im7) == 7);
  CHECK(rank_of(im14) == 14);

  for (const auto& b : lambda2_14_basis<R>()) {
    REQUIRE(wedge(b, m.psi).is_zero());
    REQUIRE(contract(b, m.phi).is_zero());
    REQUIRE(contract(b, m.psi) == -b);
  }
  CHECK(rank_of(lambda2_14_basis<R>()) == 14);
}

TEST_CASE("3-form decomposition") {
  const auto& m = G2Model<R>::flat();
  auto dphi = decompose3(m.phi, m);
  CHECK(dphi.pi1 == m.phi);
  CHECK(dphi.pi7.is_zero());
  CHECK(dphi.pi27.is_zero());

  Form<R> l7 = interior(Vector<R>::basis(1), m.psi);
  auto d7 = decompose3(l7, m);
  CHECK(d7.pi1.is_zero());
  CHECK(d7.pi7 == l7);
  CHECK(d7.pi27.is_zero());

  Rng rng(203);
  for (int t = 0; t < 100; ++t) {
    auto g3 = rng.next_form<R>(3);
    auto d = decompose3(g3, m);
    REQUIRE(d.pi1 + d.pi7 + d.pi27 == g3);
    REQUIRE(inner(d.pi1, d.pi7) == R(0));
    REQUIRE(inner(d.pi1, d.pi27) == R(0));
    REQUIRE(inner(d.pi7, d.pi27) == R(0));
    REQUIRE(wedge(d.pi27, m.phi).is_zero());
    REQUIRE(wedge(d.pi27, m.psi).is_zero());
  }
}

TEST_CASE("torsion assembly") {
  const auto& m = G2Model<R>::flat();
  // nearly parallel sphere: (tau0 = 4k, 0, 0) -> (2/3) k phi
  R kappa(5, 3);
  TorsionTriple<R> np;
  np.tau0 = R(4) * kappa;
  CHECK(assemble_H(np) == m.phi * (R(2, 3) * kappa));

  TorsionTriple<R> zero;
  CHECK(assemble_H(zero).is_zero());

  // tau3 outside the 27-part is rejected
  TorsionTriple<R> bad;
  bad.tau3 = m.phi;
  CHECK_THROWS_AS(assemble_H(bad), std::invalid_argument);

  Rng rng(204);
  for (int t = 0; t < 100; ++t) {
    auto tt = random_torsion(rng);
    Form<R> h = assemble_H(tt);
    auto back = decompose_H(h);
    REQUIRE(back.tau0 == tt.tau0);
    REQUIRE(back.tau1 == tt.tau1);
    REQUIRE(back.tau3 == tt.tau3);

    // |H|^2 = (7/36) tau0^2 + 4 |tau1|^2 + |tau3|^2
    REQUIRE(norm2(h) == R(7, 36) * tt.tau0 * tt.tau0 + R(4) * norm2(tt.tau1) + norm2(tt.tau3));

    // sum_j (ej iota H)^(ej iota phi) = tau0 psi + 3 tau1 ^ phi + *tau3
    REQUIRE(dphi_from_H(h) == torsion_dphi(tt));
  }

  // decompose_H of nearly-parallel data inverts to (4 kappa, 0, 0)
  auto nt = decompose_H(m.phi * (R(2, 3) * kappa));
  CHECK(nt.tau0 == R(4) * kappa);
  CHECK(nt.tau1.is_zero());
  CHECK(nt.tau3.is_zero());

  // zero H
  auto zt = decompose_H(Form<R>(3));
  CHECK(zt.tau0 == R(0));
  CHECK(zt.tau1.is_zero());
  CHECK(zt.tau3.is_zero());
}

TEST_CASE("su2 product structure") {
  Form<R> om = Form<R>::basis({4, 5}) + Form<R>::basis({6, 7});
  Form<R> pp = Form<R>::basis({4, 6}) - Form<R>::basis({5, 7});
  Form<R> pm = Form<R>::basis({4, 7}) + Form<R>::basis({5, 6});
  Form<R> phi = su2_to_g2(om, pp, pm);
  CHECK(metric_from_phi(phi) == Matrix7<R>::identity());

  Form<R> dx1 = Form<R>::basis({1}), dx2 = Form<R>::basis({2}), dx3 = Form<R>::basis({3});
  Form<R> star_expect = wedge(om, om) * R(1, 2) + wedge(wedge(dx2, dx3), om) -
                        wedge(wedge(dx1, dx3), pp) - wedge(wedge(dx1, dx2), pm);
  CHECK(hodge(phi) == star_expect);

  // degenerate zero data
  Form<R> z(2);
  Form<R> phi0 = su2_to_g2(z, z, z);
  CHECK(phi0 == Form<R>::basis({1, 2, 3}));
  auto g = metric_from_phi(phi0);
  CHECK(ScalarOps<R>::is_zero(g(4, 4)));
  CHECK(metric_is_degenerate(g));  // degeneracy reported, not rejected

  // support overlap with the complement is rejected
  Form<R> too_big = om + Form<R>::basis({1, 2});
  CHECK_THROWS_AS(su2_to_g2(too_big, pp, pm), std::invalid_argument);
}

TEST_CASE("su3 product structure reproduces the flat model") {
  Form<R> om = Form<R>::basis({1, 2}) + Form<R>::basis({3, 4}) + Form<R>::basis({5, 6});
  Form<R> pp = Form<R>::basis({1, 3, 5}) - Form<R>::basis({1, 4, 6}) - Form<R>::basis({2, 3, 6}) -
               Form<R>::basis({2, 4, 5});
  Form<R> pm = Form<R>::basis({1, 3, 6}) + Form<R>::basis({1, 4, 5}) + Form<R>::basis({2, 3, 5}) -
               Form<R>::basis({2, 4, 6});
  auto built = su3_to_g2(om, pp, pm);
  CHECK(built.phi == G2Model<R>::flat().phi);
  CHECK(built.psi == G2Model<R>::flat().psi);
  CHECK(hodge(built.phi) == built.psi);
  CHECK(metric_from_phi(built.phi) == Matrix7<R>::identity());

  // torsion round trip against this model
  Rng rng(205);
  for (int t = 0; t < 10; ++t) {
    auto h = rng.next_form<R>(3);
    auto tt = decompose_H(h, built);
    REQUIRE(assemble_H(tt, built) == h);
  }

  Form<R> overlap = om + Form<R>::basis({6, 7});
  CHECK_THROWS_AS(su3_to_g2(overlap, pp, pm), std::invalid_argument);
}
