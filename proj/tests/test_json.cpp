#include <catch2/catch_amalgamated.hpp>

#include "g2kit/json_io.hpp"
#include "g2kit/rng.hpp"

using namespace g2kit;
using R = Rational;

TEST_CASE("form serialization is bit-exact on the exact backend") {
  Rng rng(701);
  for (int g = 0; g <= 7; ++g)
    for (int t = 0; t < 100; ++t) {
      auto f = rng.next_form<R>(g);
      json j = form_to_json(f);
      REQUIRE(form_from_json<R>(j) == f);
      // canonical serialization: dumping twice is byte-identical
      REQUIRE(j.dump() == form_to_json(form_from_json<R>(j)).dump());
    }
}

TEST_CASE("form schema") {
  Form<R> f = Form<R>::basis({1, 2, 7}) - Form<R>::basis({3, 4, 7}) * R(2, 3);
  json j = form_to_json(f);
  CHECK(j.at("grade") == 3);
  CHECK(j.at("dim") == 7);
  CHECK(j.at("backend") == "exact");
  CHECK(j.at("coeffs").at("127") == "1");
  CHECK(j.at("coeffs").at("347") == "-2/3");

  // keys must be strictly increasing digit strings of matching grade
  json bad = j;
  bad["coeffs"]["21"] = "1";
  CHECK_THROWS_AS(form_from_json<R>(bad), std::invalid_argument);
  json bad2 = j;
  bad2["coeffs"]["12"] = "1";
  CHECK_THROWS_AS(form_from_json<R>(bad2), std::invalid_argument);
  json bad3 = j;
  bad3["backend"] = "f64";
  CHECK_THROWS_AS(form_from_json<R>(bad3), std::invalid_argument);
  json bad4 = j;
  bad4["coeffs"]["127"] = "1/0";
  CHECK_THROWS_AS(form_from_json<R>(bad4), std::invalid_argument);
  json bad5 = j;
  bad5["coeffs"]["127"] = "3x";
  CHECK_THROWS_AS(form_from_json<R>(bad5), std::invalid_argument);
}

TEST_CASE("canonical serialization golden string") {
  Form<R> f = Form<R>::basis({1, 2, 7}) - Form<R>::basis({3, 4, 7}) * R(2, 3);
  CHECK(form_to_json(f).dump() ==
        R"({"backend":"exact","coeffs":{"127":"1","347":"-2/3"},"dim":7,"grade":3})");
}

TEST_CASE("f64 forms parse numbers") {
  Form<double> f(2);
  f.set(mask_of({1, 2}), 0.125);
  json j = form_to_json(f);
  CHECK(j.at("backend") == "f64");
  CHECK(form_from_json<double>(j) == f);
}

TEST_CASE("torsion triple round trip") {
  Rng rng(702);
  for (int t = 0; t < 25; ++t) {
    TorsionTriple<R> tt;
    tt.tau0 = rng.next_scalar<R>();
    tt.tau1 = rng.next_form<R>(1);
    tt.tau3 = decompose3(rng.next_form<R>(3)).pi27;
    json j = torsion_to_json(tt);
    auto back = torsion_from_json<R>(j);
    REQUIRE(back.tau0 == tt.tau0);
    REQUIRE(back.tau1 == tt.tau1);
    REQUIRE(back.tau3 == tt.tau3);
  }
}

TEST_CASE("spinor and lie-valued form round trips") {
  Rng rng(703);
  Spinor<R> s;
  for (int i = 1; i <= 8; ++i) s[i] = rng.next_scalar<R>();
  CHECK(spinor_from_json<R>(spinor_to_json(s)) == s);

  LieCoeff<R> lie = LieCoeff<R>::euclidean(3);
  lie.signs[2] = -1;
  lie.scale = R(5, 4);
  LieValuedForm<R> f(lie, 2);
  for (int a = 0; a < 3; ++a) f.comp(a) = rng.next_form<R>(2);
  CHECK(lie_form_from_json<R>(lie_form_to_json(f)) == f);

  json bad = lie_to_json(lie);
  bad["signs"][0] = 2;
  CHECK_THROWS_AS(lie_from_json<R>(bad), std::invalid_argument);
}

TEST_CASE("point fields parse with optional slots") {
  Rng rng(704);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  PointFields<R> p(lie);
  p.H = rng.next_form<R>(3);
  for (int a = 0; a < 2; ++a) p.F.comp(a) = rng.next_form<R>(2);
  p.zeta = rng.next_form<R>(1);
  p.Rg = R(3, 2);

  json j{{"H", form_to_json(p.H)},
         {"F", lie_form_to_json(p.F)},
         {"zeta", form_to_json(p.zeta)},
         {"Rg", scalar_to_json(p.Rg)}};
  auto back = point_fields_from_json<R>(j);
  CHECK(back.H == p.H);
  CHECK(back.F == p.F);
  CHECK(back.zeta == p.zeta);
  CHECK(back.Rg == p.Rg);
  CHECK(back.Ric.is_zero());
  CHECK(back.dH.is_zero());

  // residuals of a parsed bundle match the in-memory ones
  CHECK(ric_plus_residual(back).sup_norm() == ric_plus_residual(p).sup_norm());

  // empty bundle is all-zero with a default one-dimensional gauge space
  auto empty = point_fields_from_json<R>(json::object());
  CHECK(ric_plus_residual(empty).sup_norm() == 0.0);
  CHECK(ScalarOps<R>::is_zero(scalar_splus(empty)));
}
