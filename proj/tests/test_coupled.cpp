#include <catch2/catch_amalgamated.hpp>

#include "g2kit/coupled.hpp"

using namespace g2kit;
using R = Rational;

TEST_CASE("pair indexing") {
  for (int q = 0; q < kNumPairs; ++q) {
    auto [i, j] = index_pairs()[q];
    REQUIRE(pair_index(i, j) == q);
    REQUIRE(pair_index(j, i) == q);
  }
  CHECK_THROWS_AS(pair_index(3, 3), std::invalid_argument);
}

TEST_CASE("curvature symmetry round trip") {
  Rng rng(501);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  for (int t = 0; t < 20; ++t) {
    auto s = GravitinoSample<R>::random(rng, lie);
    REQUIRE(rplus_from_rminus(s.Rminus, s.dH) == s.Rplus);
    auto rm = rminus_from_rplus(s.Rplus, s.dH);
    REQUIRE(rm == s.Rminus);
    // spot-check the defining relation on random index tuples
    for (int n = 0; n < 20; ++n) {
      int i = 1 + static_cast<int>(rng.next_below(7));
      int j = 1 + static_cast<int>(rng.next_below(7));
      int k = 1 + static_cast<int>(rng.next_below(7));
      int l = 1 + static_cast<int>(rng.next_below(7));
      if (i == j || k == l) continue;
      R lhs = s.Rplus.at(i, j, k, l);
      R rhs = s.Rminus.at(k, l, i, j) + s.dH.at({i, j, k, l}) * R(1, 2);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("lie wedge pairing") {
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  LieValuedForm<R> f(lie, 2);
  f.comp(0) = Form<R>::basis({1, 2});
  CHECK(lie_wedge_pairing(f, f).is_zero());  // e12 ^ e12 = 0

  f.comp(1) = Form<R>::basis({3, 4});
  Form<R> sq = lie_wedge_pairing(f, f);
  CHECK(sq.is_zero());  // each block squares to zero separately

  LieValuedForm<R> g(lie, 2);
  g.comp(0) = Form<R>::basis({1, 2}) + Form<R>::basis({3, 4});
  Form<R> got = lie_wedge_pairing(g, g);
  CHECK(got == Form<R>::basis({1, 2, 3, 4}) * R(2));

  LieCoeff<R> other = LieCoeff<R>::euclidean(3);
  CHECK_THROWS_AS(lie_wedge_pairing(f, LieValuedForm<R>(other, 2)), std::invalid_argument);
}

TEST_CASE("gravitino hypotheses hold by construction") {
  Rng rng(502);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(3);
  lie.signs[2] = -1;
  auto s = GravitinoSample<R>::random(rng, lie);
  auto eta = Spinor<R>::eta0();
  for (int p = 0; p < kNumPairs; ++p) REQUIRE(act(s.Rplus.endo_slice(p), eta).is_zero());
  for (int a = 0; a < 3; ++a) REQUIRE(is_g2_2form(s.F.comp(a)).first);
  REQUIRE(s.dH == lie_wedge_pairing(s.F, s.F));
}

TEST_CASE("coupled residuals vanish on gravitino samples") {
  Rng rng(503);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  lie.signs[1] = -1;
  for (int t = 0; t < 50; ++t) {
    auto s = GravitinoSample<R>::random(rng, lie, t % 2 == 1);
    auto res = coupled_residuals(s.inputs());
    for (const auto& f : res.bismut) REQUIRE(f.is_zero());
    for (const auto& lf : res.instanton) REQUIRE(lf.is_zero());
    for (const auto& row : res.quadratic)
      for (const auto& f : row) REQUIRE(f.is_zero());
    REQUIRE(res.bianchi.is_zero());
  }
}

TEST_CASE("spinor residual families vanish on gravitino samples") {
  Rng rng(504);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  lie.signs[1] = -1;
  for (int t = 0; t < 50; ++t) {
    auto s = GravitinoSample<R>::random(rng, lie);
    auto sp = spinor_coupled_check(s.Rminus, s.F);
    REQUIRE(sp.all_zero());
  }
}

TEST_CASE("non-instanton and broken-Bianchi data is flagged") {
  Rng rng(505);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  auto s = GravitinoSample<R>::random(rng, lie);

  // nonzero pi7 in F shows up in the first and third residuals
  CoupledInputs<R> in = s.inputs();
  in.F.comp(0) += interior(Vector<R>::basis(1), G2Model<R>::flat().phi);
  in.dH = lie_wedge_pairing(in.F, in.F);
  auto res = coupled_residuals(in);
  double b1 = 0, b3 = 0;
  for (const auto& f : res.bismut) b1 = std::max(b1, sup_norm(f));
  for (const auto& row : res.quadratic)
    for (const auto& f : row) b3 = std::max(b3, sup_norm(f));
  CHECK(b1 > 0.0);
  CHECK(b3 > 0.0);

  // broken Bianchi: nonzero spinor residual
  Form<R> broken = s.dH + Form<R>::basis({1, 2, 3, 4});
  auto rm = rminus_from_rplus(s.Rplus, broken);
  CHECK_FALSE(spinor_coupled_check(rm, s.F).all_zero());

  // and the fourth residual reports it directly
  CoupledInputs<R> in2 = s.inputs();
  in2.dH = broken;
  CHECK_FALSE(coupled_residuals(in2).bianchi.is_zero());
}

TEST_CASE("F dagger wedge F block") {
  Rng rng(506);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  lie.signs[1] = -1;
  for (int t = 0; t < 10; ++t) {
    LieValuedForm<R> f(lie, 2);
    for (int a = 0; a < 2; ++a) f.comp(a) = rng.next_form<R>(2);
    auto w = fdagger_wedge_f(f);

    // quadruple-loop oracle for the coefficients
    for (int q = 0; q < kNumPairs; ++q) {
      auto [k, l] = index_pairs()[q];
      for (int p = 0; p < kNumPairs; ++p) {
        auto [i, j] = index_pairs()[p];
        R expect = lie.pairing(f.value_at({j, l}), f.value_at({i, k})) -
                   lie.pairing(f.value_at({i, l}), f.value_at({j, k}));
        REQUIRE(w.entry(p, q) == expect);
      }
    }

    // trace identity f^l_k = -<(e_l iota F) ^ (e_k iota F)>
    for (int q = 0; q < kNumPairs; ++q) {
      auto [k, l] = index_pairs()[q];
      LieValuedForm<R> il(lie, 1), ik(lie, 1);
      for (int a = 0; a < 2; ++a) {
        il.comp(a) = interior(Vector<R>::basis(l), f.comp(a));
        ik.comp(a) = interior(Vector<R>::basis(k), f.comp(a));
      }
      REQUIRE(w.form_slice(q) == -lie_wedge_pairing(il, ik));
    }

    // combination with the Bianchi 4-form
    Form<R> dh = lie_wedge_pairing(f, f);
    for (int q = 0; q < kNumPairs; ++q) {
      auto [k, l] = index_pairs()[q];
      for (int p = 0; p < kNumPairs; ++p) {
        auto [i, j] = index_pairs()[p];
        R lhs = w.entry(p, q) + dh.at({l, i, k, j}) * R(1, 2) +
                lie.pairing(f.value_at({l, k}), f.value_at({i, j}));
        REQUIRE(lhs == R(0));
      }
    }
  }
  CHECK(fdagger_wedge_f(LieValuedForm<R>(lie, 2)).is_zero());
}

TEST_CASE("F wedge F dagger block") {
  Rng rng(507);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  lie.signs[1] = -1;
  lie.scale = R(2, 3);
  for (int t = 0; t < 10; ++t) {
    LieValuedForm<R> f(lie, 2);
    for (int a = 0; a < 2; ++a) f.comp(a) = rng.next_form<R>(2);
    auto h = f_wedge_fdagger(f);

    // coefficient oracle: the wedge-sum layout sums the FIRST slot of each
    // factor, which transposes (negates) the row-summed coefficient display
    // h^l_k(i,j) = sum_a F^l_{ja} (F_k)_{ia} - F^l_{ia} (F_k)_{ja}
    for (int l = 0; l < 2; ++l)
      for (int k = 0; k < 2; ++k) {
        R sk = lie.signs[k] > 0 ? lie.scale : -lie.scale;
        for (int i = 1; i <= kDim; ++i)
          for (int j = 1; j <= kDim; ++j) {
            if (i == j) continue;
            R acc(0);
            for (int a = 1; a <= kDim; ++a)
              acc += f.comp(l).at({j, a}) * (f.comp(k).at({i, a}) * sk) -
                     f.comp(l).at({i, a}) * (f.comp(k).at({j, a}) * sk);
            REQUIRE(h[l][k].at({i, j}) == -acc);
          }
        // commutator_form carries a factor 2 against the sum convention here
        Form<R> fk = f.comp(k) * sk;
        REQUIRE(commutator_form(f.comp(l), fk) == h[l][k] * R(2));
      }

    // g2-valued F closes: every slice is annihilated by eta0
    LieValuedForm<R> g(lie, 2);
    for (int a = 0; a < 2; ++a) g.comp(a) = decompose2(rng.next_form<R>(2)).pi14;
    for (const auto& row : f_wedge_fdagger(g))
      for (const auto& piece : row) {
        REQUIRE(decompose2(piece).pi7.is_zero());
        REQUIRE(act(piece, Spinor<R>::eta0()).is_zero());
      }
  }
}

TEST_CASE("I block against the grad+ route") {
  Rng rng(508);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  for (int t = 0; t < 10; ++t) {
    LieValuedForm<R> f(lie, 2);
    for (int a = 0; a < 2; ++a) f.comp(a) = rng.next_form<R>(2);
    Form<R> h = rng.next_form<R>(3);
    std::vector<LieValuedForm<R>> gf(kDim, LieValuedForm<R>(lie, 2));
    for (int c = 0; c < kDim; ++c)
      for (int a = 0; a < 2; ++a) gf[c].comp(a) = rng.next_form<R>(2);
    auto lhs = i_block(gf, f, h);
    auto rhs = grad_plus_f(gf, f, h);
    for (int c = 0; c < kDim; ++c)
      for (int a = 0; a < 2; ++a) REQUIRE(lhs[c].comp(a) == rhs[c].comp(a));
  }
  // zero inputs
  LieValuedForm<R> z(lie, 2);
  std::vector<LieValuedForm<R>> zg(kDim, z);
  for (const auto& blk : i_block(zg, z, Form<R>(3)))
    REQUIRE(blk.is_zero());
  // gradF = 0, H = phi0, F random: pure H-correction, still equal via both routes
  LieValuedForm<R> f(lie, 2);
  f.comp(0) = rng.next_form<R>(2);
  auto a1 = i_block(zg, f, G2Model<R>::flat().phi);
  auto a2 = grad_plus_f(zg, f, G2Model<R>::flat().phi);
  bool nonzero = false;
  for (int c = 0; c < kDim; ++c) {
    REQUIRE(a1[c] == a2[c]);
    nonzero = nonzero || !a1[c].is_zero();
  }
  CHECK(nonzero);
}

TEST_CASE("Bismut-Ricci form") {
  Rng rng(509);
  const auto& m = G2Model<R>::flat();
  CHECK([&] {
    auto rho = rho_bismut(CurvatureTensor<R>(), m);
    for (int l = 1; l <= kDim; ++l)
      if (!rho[l].is_zero()) return false;
    return true;
  }());

  // g2-valued endo slices are annihilated
  LieCoeff<R> lie = LieCoeff<R>::euclidean(1);
  auto s = GravitinoSample<R>::random(rng, lie);
  auto rho = rho_bismut(s.Rplus, m);
  for (int l = 1; l <= kDim; ++l) REQUIRE(rho[l].is_zero());

  // a 7-part slice contracts against phi; check one slice against the
  // direct double-sum oracle
  CurvatureTensor<R> r;
  r.set_endo_slice(pair_index(1, 2), interior(Vector<R>::basis(1), m.phi));
  auto rho2 = rho_bismut(r, m);
  bool nonzero = false;
  for (int l = 1; l <= kDim; ++l) {
    for (int p = 0; p < kNumPairs; ++p) {
      auto [i, j] = index_pairs()[p];
      R acc(0);
      for (int b = 1; b <= kDim; ++b)
        for (int k = 1; k <= kDim; ++k) acc += r.at(i, j, b, k) * m.phi.at({k, b, l});
      acc *= R(1, 2);
      REQUIRE(rho2[l].coeff(static_cast<Mask>(bit_of(i) | bit_of(j))) == acc);
      if (!acc.is_zero()) nonzero = true;
    }
  }
  CHECK(nonzero);

  // linearity
  auto s2 = GravitinoSample<R>::random(rng, lie);
  auto sum = s.Rplus + s2.Rplus;
  auto rho_sum = rho_bismut(sum, m);
  auto rho_a = rho_bismut(s.Rplus, m);
  auto rho_b = rho_bismut(s2.Rplus, m);
  for (int l = 1; l <= kDim; ++l) REQUIRE(rho_sum[l] == rho_a[l] + rho_b[l]);
}

TEST_CASE("instanton tower") {
  CHECK(tower_rank(7, 14, 2) == std::vector<std::int64_t>({14, 189}));
  CHECK(tower_rank(7, 14, 3) == std::vector<std::int64_t>({14, 189, 35539}));
  CHECK(tower_rank(7, 1, 3) == std::vector<std::int64_t>({1, 7, 49}));
  CHECK(tower_rank(6, 8, 2) == std::vector<std::int64_t>({8, 62}));
  CHECK_THROWS_AS(tower_rank(7, 14, 12), std::overflow_error);
  CHECK_THROWS_AS(tower_rank(0, 14, 2), std::invalid_argument);

  // one explicit doubling step
  Rng rng(510);
  LieCoeff<R> lie = LieCoeff<R>::euclidean(2);
  for (int t = 0; t < 10; ++t) {
    LieValuedForm<R> f(lie, 2);
    for (int a = 0; a < 2; ++a) f.comp(a) = decompose2(rng.next_form<R>(2)).pi14;
    auto dbl = tower_double(f);
    REQUIRE(dbl.dim() == 4);
    REQUIRE(lie_wedge_pairing(dbl, dbl).is_zero());
    // doubled gravitino data with R+ := 0, dH := 0 passes the spinor check
    CurvatureTensor<R> zero;
    REQUIRE(spinor_coupled_check(zero, dbl).all_zero());
  }
  CHECK(tower_double(LieValuedForm<R>(lie, 2)).is_zero());

  // two distinct non-g2 components do not pass the doubled check (a single
  // one would, since self-commutators vanish)
  LieValuedForm<R> f(lie, 2);
  f.comp(0) = interior(Vector<R>::basis(1), G2Model<R>::flat().phi);
  f.comp(1) = interior(Vector<R>::basis(2), G2Model<R>::flat().phi);
  auto dbl = tower_double(f);
  CHECK(lie_wedge_pairing(dbl, dbl).is_zero());  // pairing is still neutral
  CurvatureTensor<R> zero;
  CHECK_FALSE(spinor_coupled_check(zero, dbl).all_zero());
}
