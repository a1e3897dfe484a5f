#include <catch2/catch_amalgamated.hpp>

#include "g2kit/ccy.hpp"
#include "g2kit/rng.hpp"

using namespace g2kit;
using R = Rational;

TEST_CASE("SU(3) coframe forms") {
  auto su3 = su3_coframe_forms<R>();
  CHECK(norm2(su3.omega) == R(3));
  CHECK(norm2(su3.re_omega) == R(4));
  CHECK(norm2(su3.im_omega) == R(4));

  Form<R> vol6 = wedge(su3.omega, wedge(su3.omega, su3.omega)) * R(1, 6);
  CHECK(vol6 == wedge(su3.re_omega, su3.im_omega) * R(1, 4));

  // type orthogonality used throughout: omega ^ ReOmega = 0, ReOmega^2 = 0
  CHECK(wedge(su3.omega, su3.re_omega).is_zero());
  CHECK(wedge(su3.re_omega, su3.re_omega).is_zero());
  CHECK(wedge(su3.im_omega, su3.im_omega).is_zero());

  // ReOmega coefficients from the symbolic complex product e.g. +e1^e2^e3
  // (labels) carries +1 and e1^Je2^Je3 carries -1
  Form<R> e123 = wedge(coframe_1form<R>(1), wedge(coframe_1form<R>(2), coframe_1form<R>(3)));
  CHECK(inner(su3.re_omega, e123) == R(1));
  Form<R> e1J2J3 = wedge(coframe_1form<R>(1), wedge(coframe_1form<R>(5), coframe_1form<R>(6)));
  CHECK(inner(su3.re_omega, e1J2J3) == R(-1));
}

TEST_CASE("coframe G2 structure") {
  auto m = g2_eps<R>();
  CHECK(hodge(m.phi) == m.psi);
  CHECK(metric_from_phi(m.phi) == Matrix7<R>::identity());
  CHECK(norm2(m.phi) == R(7));
  CHECK(norm2(m.psi) == R(7));

  // inherits every flat-model decomposition identity
  Rng rng(601);
  for (int t = 0; t < 25; ++t) {
    auto b = rng.next_form<R>(2);
    auto d = decompose2(b, m);
    REQUIRE(d.pi7 + d.pi14 == b);
    REQUIRE(contract(d.pi14, m.psi) == -d.pi14);
    auto g3 = rng.next_form<R>(3);
    auto d3 = decompose3(g3, m);
    REQUIRE(d3.pi1 + d3.pi7 + d3.pi27 == g3);
    REQUIRE(wedge(d3.pi27, m.phi).is_zero());
  }
}

TEST_CASE("torsion of the fiber-scaled structure") {
  auto m = g2_eps<R>();
  auto su3 = su3_coframe_forms<R>();

  CHECK(torsion_eps(R(7, 6)).tau0 == R(1));
  CHECK_THROWS_AS(torsion_eps(R(0)), std::domain_error);
  CHECK_THROWS_AS(torsion_eps(R(-1)), std::domain_error);

  Rng rng(602);
  for (int t = 0; t < 10; ++t) {
    R eps = ScalarOps<R>::abs(rng.next_scalar<R>());
    if (eps.is_zero()) eps = R(1, 4);
    auto tt = torsion_eps(eps);
    REQUIRE(tt.tau0 == eps * R(6, 7));
    REQUIRE(tt.tau1.is_zero());
    REQUIRE(in_lambda3_27(tt.tau3, m));

    Form<R> h = assemble_H(tt, m);
    Form<R> expect = (su3.re_omega - wedge(coframe_1form<R>(0), su3.omega)) * eps;
    REQUIRE(h == expect);

    // round trip through the coframe model
    auto back = decompose_H(h, m);
    REQUIRE(back.tau0 == tt.tau0);
    REQUIRE(back.tau1 == tt.tau1);
    REQUIRE(back.tau3 == tt.tau3);

    // |H|^2 identity carries over
    REQUIRE(norm2(h) == R(7, 36) * tt.tau0 * tt.tau0 + norm2(tt.tau3));

    // the dphi routes agree and equal eps omega^2
    Form<R> om2eps = wedge(su3.omega, su3.omega) * eps;
    REQUIRE(dphi_from_H(h, m) == om2eps);
    REQUIRE(torsion_dphi(tt, m) == om2eps);
  }
}

TEST_CASE("box3 and the connection matrices") {
  std::array<Form<R>, 3> e{coframe_1form<R>(1), coframe_1form<R>(2), coframe_1form<R>(3)};
  auto b = box3(e);
  CHECK(b[0][1] == e[2]);
  CHECK(b[0][2] == -e[1]);
  CHECK(b[1][2] == e[0]);
  CHECK(b[1][0] == -e[2]);
  std::array<Form<R>, 3> z{Form<R>(1), Form<R>(1), Form<R>(1)};
  for (const auto& row : box3(z))
    for (const auto& f : row) CHECK(f.is_zero());

  CCYParams<R> p{R(1, 3), R(5, 2), R(3, 4), R(-2, 5)};
  auto mats = matrices_BCIM(p);
  CHECK(mats.B.is_skew());
  CHECK(mats.C.is_skew());
  CHECK(mats.Iconst.is_skew());
  CHECK(mats.M.is_skew());

  // M coefficients: top block carries (1+m-5 delta)(1+delta)
  R c1 = (R(1) + p.m - R(5) * p.delta) * (R(1) + p.delta);
  CHECK(mats.M.at(0, 1) == coframe_1form<R>(1) * c1);
  R c2 = p.delta * p.delta - R(2) * (R(2) + p.m) * p.delta - R(1);
  CHECK(mats.M.at(2, 1) == -coframe_1form<R>(6) * c2);  // [Je] block entry

  // delta = -1 kills the top row; case-1 substitution at delta = 1, m = 0 is -8
  CCYParams<R> dm1{R(1), R(1), R(-1), R(2, 3)};
  CHECK(matrices_BCIM(dm1).M.at(0, 1).is_zero());
  CCYParams<R> case1{R(1), R(1), R(1), R(0)};
  CHECK(matrices_BCIM(case1).M.at(0, 1) == coframe_1form<R>(1) * R(-8));
}

TEST_CASE("instanton deviation matrix") {
  // Bismut parameters kill the first term
  CCYParams<R> bis{R(1), R(1), R(1), R(0)};
  CHECK(deviation_first_coefficient(bis) == R(0));
  auto dev = deviation(bis);
  CHECK(dev.is_skew());
  CHECK(!ScalarOps<R>::is_zero(deviation_norm2(bis)));

  // first coefficient vanishes exactly when the polynomial does
  Rng rng(603);
  for (int t = 0; t < 50; ++t) {
    CCYParams<R> p{ScalarOps<R>::abs(rng.next_scalar<R>()) + R(1, 7), rng.next_scalar<R>(),
                   rng.next_scalar<R>(), rng.next_scalar<R>()};
    if (p.k.is_zero()) p.k = R(1);
    R poly = R(6) * (R(1) - p.delta + p.m) + p.k * (R(1) - p.delta) * (R(1) + R(3) * p.delta);
    REQUIRE(deviation_first_coefficient(p).is_zero() == poly.is_zero());
  }

  // norm2 splits into the two Hodge-orthogonal blocks; homogeneity in eps
  auto su3 = su3_coframe_forms<R>();
  Form<R> vol6 = wedge(su3.omega, wedge(su3.omega, su3.omega)) * R(1, 6);
  Form<R> f0om2 = wedge(coframe_1form<R>(0), wedge(su3.omega, su3.omega)) * R(1, 2);
  for (int t = 0; t < 10; ++t) {
    CCYParams<R> p{ScalarOps<R>::abs(rng.next_scalar<R>()) + R(1, 5), rng.next_scalar<R>(),
                   rng.next_scalar<R>(), rng.next_scalar<R>()};
    if (p.k.is_zero()) p.k = R(1, 2);
    auto mats = matrices_BCIM(p);
    R c1 = deviation_first_coefficient(p);
    R c2 = p.k * p.k * p.eps * p.eps * R(1, 4);
    R expect(0);
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b)
        expect += norm2(wedge(mats.Iconst.at(a, b), vol6) * c1) +
                  norm2(wedge(f0om2, mats.M.at(a, b)) * c2);
    expect *= R(1, 2);
    REQUIRE(deviation_norm2(p) == expect);

    CCYParams<R> p3 = p;
    p3.eps = p.eps * R(3);
    REQUIRE(deviation_norm2(p3) == deviation_norm2(p) * R(81));

    // eta normalization differs from e0 by one factor of eps in the M block
    CCYParams<R> unit = p;
    unit.eps = R(1);
    REQUIRE(deviation_norm2(unit, DeviationNormalization::eta) == deviation_norm2(unit));
  }

  CCYParams<R> bad{R(-1), R(1), R(0), R(0)};
  CHECK_THROWS_AS(deviation(bad), std::domain_error);
  CCYParams<R> bad2{R(1), R(0), R(0), R(0)};
  CHECK_THROWS_AS(deviation(bad2), std::domain_error);
}

TEST_CASE("deviation norm against the hand-expanded value") {
  // delta = 1, m = 0, k = eps = 1: the first block vanishes and the second
  // has coefficient 1/4; every matrix entry is a single coframe 1-form whose
  // 6-form completion has unit norm, so
  //   |T|^2 = (1/2)(1/16)(12 * 8^2 + 24 * 4^2) = 36.
  CCYParams<R> p{R(1), R(1), R(1), R(0)};
  CHECK(deviation_norm2(p) == R(36));
  CHECK(deviation_norm(CCYParams<double>{1.0, 1.0, 1.0, 0.0}) == Catch::Approx(6.0));
}

TEST_CASE("case-1 first coefficient closed form") {
  // with m = delta - 1 the polynomial collapses and
  // c1 = 2 (1-delta)(1+3 delta) / (delta^2 (1+delta)^2) * alpha^2 exactly
  for (double delta : {1.0, 2.0, -0.5, 3.0}) {
    for (double alpha : {1e-1, 1e-2, 1e-3}) {
      auto p = regime_params(1, delta, 0.0, alpha);
      double expect = 2.0 * (1.0 - delta) * (1.0 + 3.0 * delta) /
                      (delta * delta * (1.0 + delta) * (1.0 + delta)) * alpha * alpha;
      REQUIRE(deviation_first_coefficient(p) == Catch::Approx(expect).margin(1e-18));
    }
  }
}

TEST_CASE("limit constants of the regimes") {
  auto grid = log_grid(1e-3, 1e-1, 9);

  // case 1, delta = 1: both coefficients tend to alpha^2/2 * (block norms),
  // giving norm/alpha^2 -> sqrt(144) = 12 exactly (no alpha-dependent
  // correction in this regime)
  auto res1 = scaling_sweep(1, 1.0, 0.0, grid);
  for (const auto& row : res1.rows)
    CHECK(row.norm_over_alpha2 == Catch::Approx(12.0).epsilon(1e-9));

  // case 2, m = -2: c_infinity = -2/(1+m) = 2 and
  // norm^2/alpha^4 -> (1/2) c^2 (6 + 12 (1+m)^2 + 24) = 84
  auto res2 = scaling_sweep(2, 0.0, -2.0, grid);
  CHECK(res2.limit_const == Catch::Approx(std::sqrt(84.0)).epsilon(1e-2));

  // at alpha = 1e-2 the ratio is already within 5% of the limit
  auto p = regime_params(2, 0.0, -2.0, 1e-2);
  double val = deviation_norm(p) / 1e-4;
  CHECK(std::fabs(val - std::sqrt(84.0)) / std::sqrt(84.0) < 0.05);
}

TEST_CASE("regime parameters") {
  auto p1 = regime_params(1, 1.0, 0.0, 0.1);
  CHECK(p1.eps * p1.eps == Catch::Approx(2e-5).epsilon(1e-12));
  CHECK(p1.k == Catch::Approx(std::pow(0.1, -1.5)).epsilon(1e-12));
  CHECK(p1.m == -0.0 + 0.0);  // m forced to delta - 1

  auto p2 = regime_params(2, 0.0, -2.0, 0.1);
  CHECK(p2.eps * p2.eps == Catch::Approx(8e-8 / (1.0 + 3e-3)).epsilon(1e-12));

  auto p3 = regime_params(3, -1.0, 0.0, 0.1);
  CHECK(p3.eps * p3.eps == Catch::Approx(8e-8 / (2.0 * (4.0 - 3e-3))).epsilon(1e-12));

  CHECK_THROWS_AS(regime_params(1, 0.0, 0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(regime_params(1, -1.0, 0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(regime_params(2, 0.0, -1.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(regime_params(3, -1.0, -2.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(regime_params(2, 0.0, -2.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(regime_params(4, 0.0, 0.0, 0.1), std::domain_error);
}

TEST_CASE("scaling sweep") {
  auto grid = log_grid(1e-3, 1e-1, 9);
  REQUIRE(grid.size() == 9);
  REQUIRE(grid.front() == Catch::Approx(1e-1));
  REQUIRE(grid.back() == Catch::Approx(1e-3));

  struct Cfg { int c; double d, m; };
  for (Cfg cfg : {Cfg{1, 1.0, 0.0}, Cfg{1, 2.0, 0.0}, Cfg{2, 0.0, -2.0}, Cfg{3, -1.0, 0.0}}) {
    auto res = scaling_sweep(cfg.c, cfg.d, cfg.m, grid);
    INFO("case " << cfg.c << " delta " << cfg.d);
    CHECK(res.slope == Catch::Approx(2.0).margin(0.05));
    CHECK(res.max_ym_residual < 1e-12);
    for (const auto& row : res.rows) CHECK(row.norm > 0.0);
  }

  // the literal-eta normalization does not produce quadratic decay in case 2
  auto res_eta = scaling_sweep(2, 0.0, -2.0, grid, DeviationNormalization::eta);
  CHECK(std::fabs(res_eta.slope - 2.0) > 0.5);

  // threaded evaluation matches the serial one
  auto serial = scaling_sweep(1, 1.0, 0.0, grid, DeviationNormalization::e0, 1);
  auto parallel = scaling_sweep(1, 1.0, 0.0, grid, DeviationNormalization::e0, 4);
  for (size_t i = 0; i < grid.size(); ++i)
    REQUIRE(serial.rows[i].norm == parallel.rows[i].norm);

  CHECK_THROWS_AS(scaling_sweep(1, 1.0, 0.0, {0.1, 0.01}), std::invalid_argument);
  CHECK_THROWS_AS(scaling_sweep(1, 1.0, 0.0, {0.1, 0.2, 0.3, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(log_grid(1e-1, 1e-3, 9), std::invalid_argument);
}
