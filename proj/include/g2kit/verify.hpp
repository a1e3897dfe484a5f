#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "g2kit/ccy.hpp"
#include "g2kit/coupled.hpp"
#include "g2kit/oracle.hpp"

namespace g2kit {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int trials = 100;
  double rel_tol = 1e-12;   // identity checks on binary64
  double abs_tol = 1e-14;   // quantities expected to vanish
  int threads = 1;
};

struct CheckResult {
  std::string id;
  std::string identity;
  bool pass = false;
  double max_residual = 0.0;
  double ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::string backend;
  std::vector<CheckResult> results;
  bool pass = true;
  double ms = 0.0;
};

namespace detail {

template <class S>
struct Check {
  std::string id;
  std::string identity;
  std::function<double(const VerifyOptions&)> residual;
};

template <class S>
double tolerance(const VerifyOptions& o) {
  // exact backend: literal zero; binary64: the identity-check tolerance
  // (residuals of checks comparing computed quantities dominate).
  return ScalarOps<S>::zero_tol == 0.0 ? 0.0 : std::max(o.rel_tol, o.abs_tol);
}

// All comparisons report residuals relative to the scale of the compared
// quantities, matching the binary64 policy (relative 1e-12 on identities);
// on the exact backend they are literal zeros either way.

template <class S>
double diff(const Form<S>& a, const Form<S>& b) {
  return sup_norm(a - b) / (1.0 + std::max(sup_norm(a), sup_norm(b)));
}

template <class S>
double scalar_diff(const S& a, const S& b) {
  double da = std::fabs(ScalarOps<S>::to_double(a));
  double db = std::fabs(ScalarOps<S>::to_double(b));
  return std::fabs(ScalarOps<S>::to_double(a - b)) / (1.0 + std::max(da, db));
}

template <class S>
double matrix_diff(const Matrix7<S>& a, const Matrix7<S>& b) {
  return (a - b).sup_norm() / (1.0 + std::max(a.sup_norm(), b.sup_norm()));
}

template <class S>
double gv_diff(const GeneralizedVector<S>& a, const GeneralizedVector<S>& b) {
  double worst = diff(flat(a.x), flat(b.x));
  worst = std::max(worst, diff(a.zeta, b.zeta));
  for (int i = 0; i < a.lie.dim(); ++i)
    worst = std::max(worst, scalar_diff(a.r[i], b.r[i]));
  return worst;
}

inline double flag(bool ok) { return ok ? 0.0 : 1.0; }

/// The standard psi0 coefficients, asserted literally against hodge(phi0).
template <class S>
Form<S> psi0_literal() {
  Form<S> psi(4);
  auto one = ScalarOps<S>::one();
  psi.set(mask_of({3, 4, 5, 6}), one);
  psi.set(mask_of({1, 2, 5, 6}), one);
  psi.set(mask_of({1, 2, 3, 4}), one);
  psi.set(mask_of({2, 4, 6, 7}), -one);
  psi.set(mask_of({2, 3, 5, 7}), one);
  psi.set(mask_of({1, 4, 5, 7}), one);
  psi.set(mask_of({1, 3, 6, 7}), one);
  return psi;
}

template <class S>
TorsionTriple<S> random_torsion(Rng& rng) {
  TorsionTriple<S> t;
  t.tau0 = rng.template next_scalar<S>();
  t.tau1 = rng.template next_form<S>(1);
  t.tau3 = decompose3(rng.template next_form<S>(3)).pi27;
  return t;
}

// ---------------------------------------------------------------- forms --

template <class S>
std::vector<Check<S>> forms_checks() {
  using C = Check<S>;
  std::vector<C> cs;
  cs.push_back(C{"forms/star-phi0", "*phi0 == psi0", [](const VerifyOptions&) {
                   return diff(G2Model<S>::flat().psi, psi0_literal<S>());
                 }});
  cs.push_back(C{"forms/star-involution", "**a == a (all grades)",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed);
                   double worst = 0.0;
                   for (int g = 0; g <= kDim; ++g)
                     for (int t = 0; t < o.trials; ++t) {
                       auto a = rng.template next_form<S>(g);
                       worst = std::max(worst, diff(hodge(hodge(a)), a));
                     }
                   return worst;
                 }});
  cs.push_back(C{"forms/wedge-graded-comm", "a^b == (-1)^{pq} b^a",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 1);
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     int p = static_cast<int>(rng.next_below(5));
                     int q = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(kDim - p) + 1));
                     auto a = rng.template next_form<S>(p);
                     auto b = rng.template next_form<S>(q);
                     Form<S> rhs = wedge(b, a);
                     if ((p * q) % 2 == 1) rhs = -rhs;
                     worst = std::max(worst, diff(wedge(a, b), rhs));
                   }
                   return worst;
                 }});
  cs.push_back(C{"forms/wedge-overflow", "grade overflow rejected",
                 [](const VerifyOptions&) {
                   auto a = Form<S>::basis({1, 2, 3, 4});
                   try {
                     wedge(a, a);
                   } catch (const std::invalid_argument&) {
                     return 0.0;
                   }
                   return 1.0;
                 }});
  cs.push_back(C{"forms/interior-vs-contract", "i_x a == flat(x) contract a",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 2);
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     int g = 1 + static_cast<int>(rng.next_below(kDim));
                     auto a = rng.template next_form<S>(g);
                     auto x = rng.template next_vector<S>();
                     worst = std::max(worst, diff(interior(x, a), contract(flat(x), a)));
                   }
                   return worst;
                 }});
  cs.push_back(C{"forms/norm-seven", "|phi0|^2 == |psi0|^2 == 7, phi0^*phi0 == 7 vol",
                 [](const VerifyOptions&) {
                   const auto& m = G2Model<S>::flat();
                   double r = scalar_diff(norm2(m.phi), ScalarOps<S>::from_long(7));
                   r = std::max(r, scalar_diff(norm2(m.psi), ScalarOps<S>::from_long(7)));
                   Form<S> top = wedge(m.phi, m.psi);
                   r = std::max(r, scalar_diff(top.coeff(kFullMask), ScalarOps<S>::from_long(7)));
                   return r;
                 }});
  cs.push_back(C{"forms/contract-examples",
                 "e1 contract e123 == e23; (e1 iota psi0) contract psi0 == -4 e1",
                 [](const VerifyOptions&) {
                   const auto& m = G2Model<S>::flat();
                   double r = diff(contract(Form<S>::basis({1}), Form<S>::basis({1, 2, 3})),
                                   Form<S>::basis({2, 3}));
                   Form<S> e1 = Form<S>::basis({1});
                   r = std::max(r, diff(contract(interior(sharp(e1), m.psi), m.psi),
                                        e1 * ScalarOps<S>::from_long(-4)));
                   return r;
                 }});
  cs.push_back(C{"forms/dense-oracle", "sparse kernel == dense full-range reference",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 3);
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     int p = static_cast<int>(rng.next_below(5));
                     int q = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(kDim - p) + 1));
                     auto a = rng.template next_form<S>(p);
                     auto b = rng.template next_form<S>(q);
                     worst = std::max(worst, diff(wedge(a, b), oracle::wedge(a, b)));
                     auto c = rng.template next_form<S>(std::max(p, q));
                     auto d = rng.template next_form<S>(std::max(p, q));
                     worst = std::max(worst, diff(contract(c, d), oracle::contract(c, d)));
                     worst = std::max(worst, diff(hodge(a), oracle::hodge(a)));
                     if (p >= 1) {
                       auto x = rng.template next_vector<S>();
                       worst = std::max(worst, diff(interior(x, a), oracle::interior(x, a)));
                     }
                   }
                   return worst;
                 }});
  return cs;
}

// ------------------------------------------------------------------- g2 --

template <class S>
std::vector<Check<S>> g2_checks() {
  using C = Check<S>;
  std::vector<C> cs;
  cs.push_back(C{"g2/metric-identity", "g(phi0) == I, g(0) == 0",
                 [](const VerifyOptions&) {
                   double r = matrix_diff(metric_from_phi(G2Model<S>::flat().phi),
                                          Matrix7<S>::identity());
                   r = std::max(r, metric_from_phi(Form<S>(3)).sup_norm());
                   return r;
                 }});
  cs.push_back(C{"g2/cross-antisymmetry", "g(XxY,Z) totally antisymmetric; |ei x ej| == 1",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 10);
                   double worst = 0.0;
                   const auto& m = G2Model<S>::flat();
                   for (int t = 0; t < 20; ++t) {
                     auto x = rng.template next_vector<S>();
                     auto y = rng.template next_vector<S>();
                     auto z = rng.template next_vector<S>();
                     auto dot = [](const Vector<S>& a, const Vector<S>& b) {
                       S acc = ScalarOps<S>::zero();
                       for (int i = 1; i <= kDim; ++i) acc += a[i] * b[i];
                       return acc;
                     };
                     worst = std::max(worst, scalar_diff(dot(cross(x, y, m), z),
                                                         -dot(cross(y, x, m), z)));
                     worst = std::max(worst, scalar_diff(dot(cross(x, y, m), x),
                                                         ScalarOps<S>::zero()));
                     worst = std::max(worst, scalar_diff(dot(cross(x, y, m), z),
                                                         -dot(cross(z, y, m), x)));
                   }
                   for (int i = 1; i <= kDim; ++i)
                     for (int j = 1; j <= kDim; ++j) {
                       if (i == j) continue;
                       auto c = cross(Vector<S>::basis(i), Vector<S>::basis(j), m);
                       S n = ScalarOps<S>::zero();
                       for (int k = 1; k <= kDim; ++k) n += c[k] * c[k];
                       worst = std::max(worst, scalar_diff(n, ScalarOps<S>::one()));
                     }
                   worst = std::max(worst, flag(cross(Vector<S>::basis(1), Vector<S>::basis(2), m) ==
                                                Vector<S>::basis(7)));
                   worst = std::max(worst, flag(cross(Vector<S>::basis(3), Vector<S>::basis(4), m) ==
                                                Vector<S>::basis(7)));
                   return worst;
                 }});
  cs.push_back(C{"g2/pi-eigenvalues",
                 "pi7 psi-eigenvalue 2, pi14 psi-eigenvalue -1, pi14^psi0 == 0",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 11);
                   const auto& m = G2Model<S>::flat();
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     auto b = rng.template next_form<S>(2);
                     auto d = decompose2(b, m);
                     worst = std::max(worst, diff(d.pi7 + d.pi14, b));
                     worst = std::max(worst, diff(contract(d.pi7, m.psi),
                                                  d.pi7 * ScalarOps<S>::from_long(2)));
                     worst = std::max(worst, diff(contract(d.pi14, m.psi), -d.pi14));
                     worst = std::max(worst, sup_norm(wedge(d.pi14, m.psi)));
                   }
                   return worst;
                 }});
  cs.push_back(C{"g2/pi-ranks", "rank pi7 == 7 and rank pi14 == 14 on the 21-basis",
                 [](const VerifyOptions&) {
                   if (ScalarOps<S>::zero_tol != 0.0) return 0.0;  // exact-backend check
                   std::vector<Form<S>> im7, im14;
                   for (Mask mm : masks_of_grade(2)) {
                     auto d = decompose2(Form<S>::basis(mm));
                     if (!d.pi7.is_zero()) im7.push_back(d.pi7);
                     if (!d.pi14.is_zero()) im14.push_back(d.pi14);
                   }
                   return flag(rank_of(im7) == 7 && rank_of(im14) == 14);
                 }});
  cs.push_back(C{"g2/lambda2-triple-equivalence",
                 "beta^psi == 0 <=> beta contract phi == 0 <=> beta contract psi == -beta",
                 [](const VerifyOptions& o) {
                   const auto& m = G2Model<S>::flat();
                   double worst = 0.0;
                   for (const auto& b : lambda2_14_basis<S>()) {
                     worst = std::max(worst, sup_norm(wedge(b, m.psi)));
                     worst = std::max(worst, sup_norm(contract(b, m.phi)));
                     worst = std::max(worst, diff(contract(b, m.psi), -b));
                   }
                   Rng rng(o.seed + 12);
                   for (int t = 0; t < o.trials; ++t) {
                     auto b = rng.template next_form<S>(2);
                     bool w0 = sup_norm(wedge(b, m.psi)) <= 1e-12;
                     bool c0 = sup_norm(contract(b, m.phi)) <= 1e-12;
                     bool e0 = diff(contract(b, m.psi), -b) <= 1e-12;
                     worst = std::max(worst, flag(w0 == c0 && c0 == e0));
                   }
                   return worst;
                 }});
  cs.push_back(C{"g2/decompose3",
                 "3-form pieces recompose, are orthogonal, and satisfy the wedge characterizations",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 13);
                   const auto& m = G2Model<S>::flat();
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     auto g3 = rng.template next_form<S>(3);
                     auto d = decompose3(g3, m);
                     worst = std::max(worst, diff(d.pi1 + d.pi7 + d.pi27, g3));
                     worst = std::max(worst, scalar_diff(inner(d.pi1, d.pi7), ScalarOps<S>::zero()));
                     worst = std::max(worst, scalar_diff(inner(d.pi1, d.pi27), ScalarOps<S>::zero()));
                     worst = std::max(worst, scalar_diff(inner(d.pi7, d.pi27), ScalarOps<S>::zero()));
                     worst = std::max(worst, sup_norm(wedge(d.pi27, m.phi)));
                     worst = std::max(worst, sup_norm(wedge(d.pi27, m.psi)));
                   }
                   auto dphi = decompose3(m.phi, m);
                   worst = std::max(worst, diff(dphi.pi1, m.phi) + sup_norm(dphi.pi7) +
                                               sup_norm(dphi.pi27));
                   Form<S> l7 = interior(Vector<S>::basis(1), m.psi);
                   auto d7 = decompose3(l7, m);
                   worst = std::max(worst, diff(d7.pi7, l7) + sup_norm(d7.pi1) + sup_norm(d7.pi27));
                   return worst;
                 }});
  cs.push_back(C{"g2/torsion-roundtrip", "decompose_H inverts assemble_H, both directions",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 14);
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     auto tt = random_torsion<S>(rng);
                     Form<S> h = assemble_H(tt);
                     auto back = decompose_H(h);
                     worst = std::max(worst, scalar_diff(back.tau0, tt.tau0));
                     worst = std::max(worst, diff(back.tau1, tt.tau1));
                     worst = std::max(worst, diff(back.tau3, tt.tau3));
                     auto h2 = rng.template next_form<S>(3);
                     worst = std::max(worst, diff(assemble_H(decompose_H(h2)), h2));
                   }
                   return worst;
                 }});
  cs.push_back(C{"g2/H-norm-formula", "|H|^2 == (7/36) tau0^2 + 4|tau1|^2 + |tau3|^2",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 15);
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     auto tt = random_torsion<S>(rng);
                     Form<S> h = assemble_H(tt);
                     S expect = ScalarOps<S>::fraction(7, 36) * tt.tau0 * tt.tau0 +
                                ScalarOps<S>::from_long(4) * norm2(tt.tau1) + norm2(tt.tau3);
                     worst = std::max(worst, scalar_diff(norm2(h), expect));
                   }
                   return worst;
                 }});
  cs.push_back(C{"g2/dphi-identity",
                 "sum_j (ej iota H)^(ej iota phi) == tau0 psi + 3 tau1^phi + *tau3",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 16);
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     auto tt = random_torsion<S>(rng);
                     Form<S> h = assemble_H(tt);
                     worst = std::max(worst, diff(dphi_from_H(h), torsion_dphi(tt)));
                   }
                   return worst;
                 }});
  cs.push_back(C{"g2/assemble-examples", "(tau0=4k,0,0) -> (2/3) k phi0; zero -> zero",
                 [](const VerifyOptions&) {
                   TorsionTriple<S> t;
                   t.tau0 = ScalarOps<S>::from_long(4) * ScalarOps<S>::fraction(5, 3);
                   Form<S> h = assemble_H(t);
                   double r = diff(h, G2Model<S>::flat().phi *
                                          (ScalarOps<S>::fraction(2, 3) * ScalarOps<S>::fraction(5, 3)));
                   TorsionTriple<S> z;
                   r = std::max(r, sup_norm(assemble_H(z)));
                   return r;
                 }});
  cs.push_back(C{"g2/su2-builder", "4d product form: hodge formula and induced metric",
                 [](const VerifyOptions&) {
                   // standard flat SU(2) data on span(e4..e7)
                   Form<S> om = Form<S>::basis({4, 5}) + Form<S>::basis({6, 7});
                   Form<S> pp = Form<S>::basis({4, 6}) - Form<S>::basis({5, 7});
                   Form<S> pm = Form<S>::basis({4, 7}) + Form<S>::basis({5, 6});
                   Form<S> phi = su2_to_g2(om, pp, pm);
                   double r = matrix_diff(metric_from_phi(phi), Matrix7<S>::identity());
                   Form<S> dx1 = Form<S>::basis({1}), dx2 = Form<S>::basis({2}),
                           dx3 = Form<S>::basis({3});
                   Form<S> expect = wedge(om, om) * ScalarOps<S>::fraction(1, 2) +
                                    wedge(wedge(dx2, dx3), om) - wedge(wedge(dx1, dx3), pp) -
                                    wedge(wedge(dx1, dx2), pm);
                   r = std::max(r, diff(hodge(phi), expect));
                   Form<S> z2(2);
                   r = std::max(r, diff(su2_to_g2(z2, z2, z2), Form<S>::basis({1, 2, 3})));
                   return r;
                 }});
  cs.push_back(C{"g2/su3-builder", "6d product form: hodge pairing and metric; reproduces phi0",
                 [](const VerifyOptions&) {
                   Form<S> om = Form<S>::basis({1, 2}) + Form<S>::basis({3, 4}) +
                                Form<S>::basis({5, 6});
                   // psi+- = Re/Im (e1+ie2)^(e3+ie4)^(e5+ie6)
                   Form<S> pp = Form<S>::basis({1, 3, 5}) - Form<S>::basis({1, 4, 6}) -
                                Form<S>::basis({2, 3, 6}) - Form<S>::basis({2, 4, 5});
                   Form<S> pm = Form<S>::basis({1, 3, 6}) + Form<S>::basis({1, 4, 5}) +
                                Form<S>::basis({2, 3, 5}) - Form<S>::basis({2, 4, 6});
                   auto built = su3_to_g2(om, pp, pm);
                   double r = diff(hodge(built.phi), built.psi);
                   r = std::max(r, matrix_diff(metric_from_phi(built.phi), Matrix7<S>::identity()));
                   r = std::max(r, diff(built.phi, G2Model<S>::flat().phi));
                   return r;
                 }});
  return cs;
}

// ----------------------------------------------------------------- spin --

template <class S>
std::vector<Check<S>> spin_checks() {
  using C = Check<S>;
  std::vector<C> cs;
  cs.push_back(C{"spin/clifford-relations", "ei ej + ej ei == -2 delta_ij",
                 [](const VerifyOptions&) {
                   double worst = 0.0;
                   for (int i = 1; i <= kDim; ++i)
                     for (int j = i; j <= kDim; ++j) {
                       auto anti = cliff_generator<S>(i) * cliff_generator<S>(j) +
                                   cliff_generator<S>(j) * cliff_generator<S>(i);
                       Matrix8<S> expect;
                       if (i == j) expect = Matrix8<S>::identity() * ScalarOps<S>::from_long(-2);
                       worst = std::max(worst, (anti - expect).sup_norm());
                     }
                   return worst;
                 }});
  cs.push_back(C{"spin/generator-orthogonality", "each generator skew and orthogonal",
                 [](const VerifyOptions&) {
                   double worst = 0.0;
                   for (int i = 1; i <= kDim; ++i) {
                     const auto& g = cliff_generator<S>(i);
                     worst = std::max(worst, (g + g.transposed()).sup_norm());
                     worst = std::max(worst,
                                      (g * g.transposed() - Matrix8<S>::identity()).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"spin/e1-eta0", "e1 . eta0 == (0,...,0,1)",
                 [](const VerifyOptions&) {
                   Spinor<S> expect;
                   expect[8] = ScalarOps<S>::one();
                   return (apply(cliff_generator<S>(1), Spinor<S>::eta0()) - expect).sup_norm();
                 }});
  cs.push_back(C{"spin/phi0-eigenvalue", "phi0 . eta0 == -7 eta0",
                 [](const VerifyOptions&) {
                   auto eta = Spinor<S>::eta0();
                   return (act(G2Model<S>::flat().phi, eta) - eta * ScalarOps<S>::from_long(-7))
                       .sup_norm();
                 }});
  cs.push_back(C{"spin/lambda37-eigenvalue", "(X iota psi0) . eta0 == 4 X . eta0, 7-basis",
                 [](const VerifyOptions&) {
                   double worst = 0.0;
                   auto eta = Spinor<S>::eta0();
                   const auto& m = G2Model<S>::flat();
                   for (int i = 1; i <= kDim; ++i) {
                     auto lhs = act(interior(Vector<S>::basis(i), m.psi), eta);
                     auto rhs = apply(cliff_generator<S>(i), eta) * ScalarOps<S>::from_long(4);
                     worst = std::max(worst, (lhs - rhs).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"spin/lambda327-annihilation", "gamma . eta0 == 0 for gamma in 27-part",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 20);
                   double worst = 0.0;
                   auto eta = Spinor<S>::eta0();
                   for (int t = 0; t < o.trials; ++t) {
                     auto g27 = decompose3(rng.template next_form<S>(3)).pi27;
                     worst = std::max(worst, act(g27, eta).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"spin/slashed-eigenvalues",
                 "slashed phi0 -> -21/2; slashed (X iota psi0) -> 6 X.; slashed 27-part -> 0",
                 [](const VerifyOptions& o) {
                   auto eta = Spinor<S>::eta0();
                   const auto& m = G2Model<S>::flat();
                   double worst = (slashed_act(m.phi, eta) - eta * ScalarOps<S>::fraction(-21, 2))
                                      .sup_norm();
                   for (int i = 1; i <= kDim; ++i) {
                     auto lhs = slashed_act(interior(Vector<S>::basis(i), m.psi), eta);
                     auto rhs = apply(cliff_generator<S>(i), eta) * ScalarOps<S>::from_long(6);
                     worst = std::max(worst, (lhs - rhs).sup_norm());
                   }
                   Rng rng(o.seed + 21);
                   for (int t = 0; t < 25; ++t) {
                     auto g27 = decompose3(rng.template next_form<S>(3)).pi27;
                     worst = std::max(worst, slashed_act(g27, eta).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"spin/g2-kernel-dim", "dim { b : b . eta0 == 0 } == 14",
                 [](const VerifyOptions& o) {
                   if (ScalarOps<S>::zero_tol != 0.0) return 0.0;  // exact-backend rank check
                   for (const auto& b : lambda2_14_basis<S>())
                     if (!is_g2_2form(b).first) return 1.0;
                   double worst = flag(rank_of(lambda2_14_basis<S>()) == 14);
                   worst = std::max(worst, flag(is_g2_2form(Form<S>(2)).first));
                   worst = std::max(
                       worst, flag(is_g2_2form(Form<S>::basis({1, 2}) - Form<S>::basis({3, 4})).first));
                   const auto& m = G2Model<S>::flat();
                   worst = std::max(
                       worst, flag(!is_g2_2form(interior(Vector<S>::basis(1), m.phi)).first));
                   Rng rng(o.seed + 22);
                   for (int t = 0; t < o.trials; ++t) {
                     auto d = decompose2(rng.template next_form<S>(2));
                     worst = std::max(worst, act(d.pi14, Spinor<S>::eta0()).sup_norm());
                     if (!d.pi7.is_zero())
                       worst = std::max(worst, flag(!act(d.pi7, Spinor<S>::eta0()).is_zero()));
                   }
                   return worst;
                 }});
  cs.push_back(C{"spin/commutator-lemma", "[act(a), act(b)] == act(commutator_form(a,b))",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 23);
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     auto a = rng.template next_form<S>(2);
                     auto b = rng.template next_form<S>(2);
                     auto lhs = clifford_operator(a) * clifford_operator(b) -
                                clifford_operator(b) * clifford_operator(a);
                     worst = std::max(worst,
                                      (lhs - clifford_operator(commutator_form(a, b))).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"spin/g2-closure", "commutator_form of two 14-parts stays in the 14-part",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 24);
                   double worst = 0.0;
                   for (int t = 0; t < 25; ++t) {
                     auto a = decompose2(rng.template next_form<S>(2)).pi14;
                     auto b = decompose2(rng.template next_form<S>(2)).pi14;
                     worst = std::max(worst, sup_norm(decompose2(commutator_form(a, b)).pi7));
                   }
                   return worst;
                 }});
  cs.push_back(C{"spin/phi-from-spinor",
                 "eta0 -> phi0; scale invariance; induced metric identity on random spinors",
                 [](const VerifyOptions& o) {
                   const auto& m = G2Model<S>::flat();
                   auto eta = Spinor<S>::eta0();
                   double worst = diff(phi_from_spinor(eta), m.phi);
                   worst = std::max(worst,
                                    diff(phi_from_spinor(eta * ScalarOps<S>::from_long(2)), m.phi));
                   Rng rng(o.seed + 25);
                   for (int t = 0; t < 10; ++t) {
                     Spinor<S> s;
                     for (int i = 1; i <= 8; ++i) s[i] = rng.template next_scalar<S>();
                     if (s.is_zero()) continue;
                     worst = std::max(worst, matrix_diff(metric_from_phi(phi_from_spinor(s)),
                                                         Matrix7<S>::identity()));
                   }
                   return worst;
                 }});
  return cs;
}

// ---------------------------------------------------------- generalized --

template <class S>
std::vector<Check<S>> generalized_checks() {
  using C = Check<S>;
  std::vector<C> cs;
  cs.push_back(C{"generalized/pairing", "<X+r+zeta, X+r+zeta> == zeta(X) + <r,r>; sigma+- norms",
                 [](const VerifyOptions& o) {
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   Rng rng(o.seed + 30);
                   double worst = 0.0;
                   for (int t = 0; t < 25; ++t) {
                     GeneralizedVector<S> a{rng.template next_vector<S>(),
                                            {rng.template next_scalar<S>(), rng.template next_scalar<S>()},
                                            rng.template next_form<S>(1), lie};
                     S zx = ScalarOps<S>::zero();
                     for (int i = 1; i <= kDim; ++i) zx += a.zeta.coeff(bit_of(i)) * a.x[i];
                     S rr = lie.pairing(a.r, a.r);
                     worst = std::max(worst, scalar_diff(gpairing(a, a), zx + rr));
                     auto x = rng.template next_vector<S>();
                     S xx = ScalarOps<S>::zero();
                     for (int i = 1; i <= kDim; ++i) xx += x[i] * x[i];
                     auto sp = GeneralizedVector<S>::sigma_plus(x, lie);
                     auto sm = GeneralizedVector<S>::sigma_minus(x, lie);
                     worst = std::max(worst, scalar_diff(gpairing(sp, sp), xx));
                     worst = std::max(worst, scalar_diff(gpairing(sm, sm), -xx));
                     worst = std::max(worst, scalar_diff(gpairing(sp, sm), ScalarOps<S>::zero()));
                   }
                   return worst;
                 }});
  cs.push_back(C{"generalized/projections", "pi+ + pi- == id, images isotropic-orthogonal",
                 [](const VerifyOptions& o) {
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   Rng rng(o.seed + 31);
                   double worst = 0.0;
                   for (int t = 0; t < 25; ++t) {
                     GeneralizedVector<S> a{rng.template next_vector<S>(),
                                            {rng.template next_scalar<S>(), rng.template next_scalar<S>()},
                                            rng.template next_form<S>(1), lie};
                     auto [p, m] = gprojections(a);
                     worst = std::max(worst, gv_diff(p + m, a));
                     worst = std::max(worst, scalar_diff(gpairing(p, m), ScalarOps<S>::zero()));
                     auto [pp, pm] = gprojections(p);
                     worst = std::max(worst, gv_diff(pp, p));
                     worst = std::max(worst, sup_norm(pm.zeta));
                     // metric endomorphism fixes V+ and negates V-
                     worst = std::max(worst, gv_diff(gmetric_endo(p), p));
                     GeneralizedVector<S> neg = m;
                     for (int i = 1; i <= kDim; ++i) neg.x[i] = -neg.x[i];
                     neg.zeta = -neg.zeta;
                     for (auto& rr : neg.r) rr = -rr;
                     worst = std::max(worst, gv_diff(gmetric_endo(m), neg));
                     worst = std::max(worst, gv_diff(gmetric_endo(gmetric_endo(a)), a));
                   }
                   return worst;
                 }});
  cs.push_back(C{"generalized/eps-split", "eps == sigma+(z+) + z + sigma-(z-), uniquely",
                 [](const VerifyOptions& o) {
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   Rng rng(o.seed + 32);
                   double worst = 0.0;
                   for (int t = 0; t < 25; ++t) {
                     GeneralizedVector<S> a{rng.template next_vector<S>(),
                                            {rng.template next_scalar<S>(), rng.template next_scalar<S>()},
                                            rng.template next_form<S>(1), lie};
                     worst = std::max(worst, gv_diff(eps_reassemble(eps_decompose(a), lie), a));
                   }
                   // tangent embedding of 8 tau1 splits with z+ == z- == 4 tau1
                   Form<S> tau1 = rng.template next_form<S>(1);
                   GeneralizedVector<S> emb = GeneralizedVector<S>{
                       sharp(tau1 * ScalarOps<S>::from_long(8)),
                       std::vector<S>(2, ScalarOps<S>::zero()), Form<S>(1), lie};
                   auto split = eps_decompose(emb);
                   worst = std::max(worst, diff(split.zeta_plus, tau1 * ScalarOps<S>::from_long(4)));
                   worst = std::max(worst, diff(split.zeta_minus, tau1 * ScalarOps<S>::from_long(4)));
                   return worst;
                 }});
  cs.push_back(C{"generalized/h-squared", "phi0 -> 6 I; e123 -> diag(2,2,2,0...); trace == 6|H|^2",
                 [](const VerifyOptions& o) {
                   double worst = matrix_diff(h_squared(G2Model<S>::flat().phi),
                                              Matrix7<S>::identity() * ScalarOps<S>::from_long(6));
                   Matrix7<S> expect;
                   for (int i = 1; i <= 3; ++i) expect(i, i) = ScalarOps<S>::from_long(2);
                   worst = std::max(worst, matrix_diff(h_squared(Form<S>::basis({1, 2, 3})), expect));
                   Rng rng(o.seed + 33);
                   for (int t = 0; t < o.trials; ++t) {
                     auto h = rng.template next_form<S>(3);
                     auto hs = h_squared(h);
                     S tr = ScalarOps<S>::zero();
                     for (int i = 1; i <= kDim; ++i) tr += hs(i, i);
                     worst = std::max(worst,
                                      scalar_diff(tr, ScalarOps<S>::from_long(6) * norm2(h)));
                   }
                   return worst;
                 }});
  cs.push_back(C{"generalized/f-gram", "single-block example and pairing-scale linearity",
                 [](const VerifyOptions&) {
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(1);
                   LieValuedForm<S> f(lie, 2);
                   f.comp(0) = Form<S>::basis({1, 2});
                   Matrix7<S> expect;
                   expect(1, 1) = ScalarOps<S>::one();
                   expect(2, 2) = ScalarOps<S>::one();
                   double worst = matrix_diff(f_gram(f), expect);
                   LieCoeff<S> scaled = lie;
                   scaled.scale = ScalarOps<S>::fraction(3, 7);
                   LieValuedForm<S> g(scaled, 2);
                   g.comp(0) = f.comp(0);
                   worst = std::max(worst, matrix_diff(f_gram(g), expect * scaled.scale));
                   return worst;
                 }});
  cs.push_back(C{"generalized/star-f-wedge-star-h", "*(F ^ *H) == F contract H, componentwise",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 34);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     LieValuedForm<S> f(lie, 2);
                     for (int a = 0; a < 2; ++a) f.comp(a) = rng.template next_form<S>(2);
                     Form<S> h = rng.template next_form<S>(3);
                     auto lhs = star_f_wedge_star_h(f, h);
                     for (int a = 0; a < 2; ++a)
                       worst = std::max(worst, diff(lhs.comp(a), contract(f.comp(a), h)));
                   }
                   LieValuedForm<S> f(LieCoeff<S>::euclidean(1), 2);
                   f.comp(0) = Form<S>::basis({1, 2});
                   auto out = star_f_wedge_star_h(f, Form<S>::basis({1, 2, 3}));
                   worst = std::max(worst, diff(out.comp(0), Form<S>::basis({3})));
                   return worst;
                 }});
  cs.push_back(C{"generalized/ric-plus-zero-sets",
                 "zero fields and constructed cancellations annihilate the Ricci residuals",
                 [](const VerifyOptions& o) {
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   lie.signs[1] = -1;
                   PointFields<S> zero(lie);
                   double worst = ric_plus_residual(zero).sup_norm();
                   Rng rng(o.seed + 35);
                   for (int t = 0; t < 10; ++t) {
                     PointFields<S> p(lie);
                     p.H = rng.template next_form<S>(3);
                     for (int a = 0; a < 2; ++a) p.F.comp(a) = rng.template next_form<S>(2);
                     p.zeta = rng.template next_form<S>(1);
                     p.dzeta = rng.template next_form<S>(2);
                     for (int i = 1; i <= kDim; ++i)
                       for (int j = i; j <= kDim; ++j) {
                         p.LzetaG(i, j) = rng.template next_scalar<S>();
                         p.LzetaG(j, i) = p.LzetaG(i, j);
                       }
                     // solve each equation for its derivative slot
                     p.Ric = h_squared(p.H) * ScalarOps<S>::fraction(1, 4) - f_gram(p.F) -
                             p.LzetaG * ScalarOps<S>::fraction(1, 2);
                     p.dstarH = p.dzeta - interior(sharp(p.zeta), p.H);
                     p.dthetastarF = star_f_wedge_star_h(p.F, p.H) -
                                     interior_lie(sharp(p.zeta), p.F);
                     worst = std::max(worst, ric_plus_residual(p).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"generalized/ric-plus-linearity",
                 "residual is affine-superposable in the derivative slots",
                 [](const VerifyOptions& o) {
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   Rng rng(o.seed + 36);
                   double worst = 0.0;
                   for (int t = 0; t < 10; ++t) {
                     PointFields<S> base(lie);
                     base.H = rng.template next_form<S>(3);
                     for (int a = 0; a < 2; ++a) base.F.comp(a) = rng.template next_form<S>(2);
                     base.zeta = rng.template next_form<S>(1);
                     auto randomize_linear = [&](PointFields<S>& p) {
                       for (int i = 1; i <= kDim; ++i)
                         for (int j = 1; j <= kDim; ++j) {
                           p.Ric(i, j) = rng.template next_scalar<S>();
                           p.LzetaG(i, j) = rng.template next_scalar<S>();
                         }
                       p.dstarH = rng.template next_form<S>(2);
                       p.dzeta = rng.template next_form<S>(2);
                       for (int a = 0; a < 2; ++a)
                         p.dthetastarF.comp(a) = rng.template next_form<S>(1);
                     };
                     PointFields<S> p1 = base, p2 = base, sum = base;
                     randomize_linear(p1);
                     randomize_linear(p2);
                     sum.Ric = p1.Ric + p2.Ric;
                     sum.LzetaG = p1.LzetaG + p2.LzetaG;
                     sum.dstarH = p1.dstarH + p2.dstarH;
                     sum.dzeta = p1.dzeta + p2.dzeta;
                     sum.dthetastarF = p1.dthetastarF + p2.dthetastarF;
                     auto r1 = ric_plus_residual(p1);
                     auto r2 = ric_plus_residual(p2);
                     auto rs = ric_plus_residual(sum);
                     auto rb = ric_plus_residual(base);  // zero linear slots
                     worst = std::max(worst,
                                      detail::matrix_diff(rs.sym + rb.sym, r1.sym + r2.sym));
                     worst = std::max(worst, diff(rs.skew + rb.skew, r1.skew + r2.skew));
                     worst = std::max(
                         worst, (rs.lie1 + rb.lie1 - (r1.lie1 + r2.lie1)).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"generalized/scalar-splus", "S+ examples and heterotic constant 49/36 tau0^2",
                 [](const VerifyOptions& o) {
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(1);
                   PointFields<S> p(lie);
                   double worst = scalar_diff(scalar_splus(p), ScalarOps<S>::zero());
                   p.Rg = ScalarOps<S>::one();
                   worst = std::max(worst, scalar_diff(scalar_splus(p), ScalarOps<S>::one()));
                   Rng rng(o.seed + 37);
                   for (int t = 0; t < o.trials; ++t) {
                     S tau0 = rng.template next_scalar<S>();
                     S t1 = ScalarOps<S>::abs(rng.template next_scalar<S>());
                     S dst1 = rng.template next_scalar<S>();
                     S t3 = ScalarOps<S>::abs(rng.template next_scalar<S>());
                     S splus = heterotic_splus(tau0, t1, dst1, t3);
                     worst = std::max(worst,
                                      scalar_diff(splus, ScalarOps<S>::fraction(49, 36) * tau0 * tau0));
                   }
                   return worst;
                 }});
  cs.push_back(C{"generalized/corollary-routes", "both corollary evaluation routes agree",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 38);
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     // corollary_residual throws if its internal routes split
                     S r = corollary_residual(rng.template next_scalar<S>(),
                                              rng.template next_scalar<S>(),
                                              rng.template next_scalar<S>(),
                                              rng.template next_scalar<S>(),
                                              rng.template next_scalar<S>());
                     (void)r;
                   }
                   S z = ScalarOps<S>::zero();
                   S same = ScalarOps<S>::fraction(5, 3);
                   worst = std::max(worst, scalar_diff(corollary_residual(z, z, z, same, same), z));
                   return worst;
                 }});
  cs.push_back(C{"generalized/ym-identity", "derivative-free Yang-Mills identity vanishes",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 39);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   lie.signs[1] = -1;
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     auto tt = random_torsion<S>(rng);
                     LieValuedForm<S> f(lie, 2);
                     for (int a = 0; a < 2; ++a) f.comp(a) = rng.template next_form<S>(2);
                     worst = std::max(worst, ym_algebraic_identity(f, tt).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"generalized/ym-instanton-case",
                 "g2-valued F: F contract d*psi + F contract H - 4 tau1 contract F == 0",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 40);
                   const auto& m = G2Model<S>::flat();
                   double worst = 0.0;
                   for (int t = 0; t < o.trials; ++t) {
                     auto tt = random_torsion<S>(rng);
                     Form<S> h = assemble_H(tt);
                     Form<S> dstarpsi = m.phi * tt.tau0 -
                                        interior(sharp(tt.tau1), m.psi) * ScalarOps<S>::from_long(3) +
                                        tt.tau3;
                     Form<S> g = decompose2(rng.template next_form<S>(2)).pi14;
                     Form<S> res = contract(g, dstarpsi) + contract(g, h) -
                                   contract(tt.tau1, g) * ScalarOps<S>::from_long(4);
                     worst = std::max(worst, sup_norm(res));
                   }
                   return worst;
                 }});
  cs.push_back(C{"generalized/s7-scale", "kappa = 1 -> -9/4; kappa = 2 -> -9/16; kappa = 0 -> error",
                 [](const VerifyOptions&) {
                   double worst = scalar_diff(s7_pairing_scale(ScalarOps<S>::one()),
                                              ScalarOps<S>::fraction(-9, 4));
                   worst = std::max(worst, scalar_diff(s7_pairing_scale(ScalarOps<S>::from_long(2)),
                                                       ScalarOps<S>::fraction(-9, 16)));
                   try {
                     s7_pairing_scale(ScalarOps<S>::zero());
                     worst = 1.0;
                   } catch (const std::domain_error&) {
                   }
                   return worst;
                 }});
  return cs;
}

// -------------------------------------------------------------- coupled --

template <class S>
std::vector<Check<S>> coupled_checks() {
  using C = Check<S>;
  std::vector<C> cs;
  cs.push_back(C{"coupled/dhpm-roundtrip", "R+ -> R- -> R+ is the identity",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 50);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   double worst = 0.0;
                   for (int t = 0; t < 10; ++t) {
                     auto s = GravitinoSample<S>::random(rng, lie);
                     auto back = rplus_from_rminus(s.Rminus, s.dH);
                     worst = std::max(worst, (back - s.Rplus).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"coupled/gravitino-residuals",
                 "random gravitino samples: all four coupled residuals vanish",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 51);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   lie.signs[1] = -1;
                   double worst = 0.0;
                   int n = std::max(10, o.trials / 2);
                   for (int t = 0; t < n; ++t) {
                     auto s = GravitinoSample<S>::random(rng, lie, t % 2 == 1);
                     worst = std::max(worst, coupled_residuals(s.inputs()).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"coupled/gravitino-spinor",
                 "random gravitino samples: both spinor residual families vanish",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 52);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   lie.signs[1] = -1;
                   double worst = 0.0;
                   int n = std::max(10, o.trials / 2);
                   for (int t = 0; t < n; ++t) {
                     auto s = GravitinoSample<S>::random(rng, lie);
                     worst = std::max(worst, spinor_coupled_check(s.Rminus, s.F).sup_norm());
                   }
                   return worst;
                 }});
  cs.push_back(C{"coupled/broken-bianchi", "dH != <F^F> shows up as a nonzero residual",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 53);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   auto s = GravitinoSample<S>::random(rng, lie);
                   Form<S> broken = s.dH + Form<S>::basis({1, 2, 3, 4});
                   auto rm = rminus_from_rplus(s.Rplus, broken);
                   return flag(!spinor_coupled_check(rm, s.F).all_zero());
                 }});
  cs.push_back(C{"coupled/fdagger-trace", "f^l_k == -<(e_l iota F) ^ (e_k iota F)>",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 54);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   lie.signs[1] = -1;
                   double worst = 0.0;
                   for (int t = 0; t < 10; ++t) {
                     LieValuedForm<S> f(lie, 2);
                     for (int a = 0; a < 2; ++a) f.comp(a) = rng.template next_form<S>(2);
                     auto w = fdagger_wedge_f(f);
                     for (int q = 0; q < kNumPairs; ++q) {
                       auto [k, l] = index_pairs()[q];
                       LieValuedForm<S> il(lie, 1), ik(lie, 1);
                       for (int a = 0; a < 2; ++a) {
                         il.comp(a) = interior(Vector<S>::basis(l), f.comp(a));
                         ik.comp(a) = interior(Vector<S>::basis(k), f.comp(a));
                       }
                       worst = std::max(worst,
                                        diff(-lie_wedge_pairing(il, ik), w.form_slice(q)));
                     }
                   }
                   return worst;
                 }});
  cs.push_back(C{"coupled/fdagger-bianchi",
                 "f^l_k + (1/2)(dH)(l,i,k,j) + <F, F(l,k)> == 0 when dH == <F^F>",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 55);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   double worst = 0.0;
                   for (int t = 0; t < 5; ++t) {
                     LieValuedForm<S> f(lie, 2);
                     for (int a = 0; a < 2; ++a) f.comp(a) = rng.template next_form<S>(2);
                     auto w = fdagger_wedge_f(f);
                     Form<S> dh = lie_wedge_pairing(f, f);
                     for (int q = 0; q < kNumPairs; ++q) {
                       auto [k, l] = index_pairs()[q];
                       for (int pi = 0; pi < kNumPairs; ++pi) {
                         auto [i, j] = index_pairs()[pi];
                         S lhs = w.entry(pi, q) + dh.at({l, i, k, j}) * ScalarOps<S>::fraction(1, 2) +
                                 lie.pairing(f.value_at({l, k}), f.value_at({i, j}));
                         worst = std::max(worst, std::fabs(ScalarOps<S>::to_double(lhs)));
                       }
                     }
                   }
                   return worst;
                 }});
  cs.push_back(C{"coupled/ffdagger-coefficients",
                 "h^l_k matches the quadruple-loop coefficients and closes in g2",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 56);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   lie.signs[1] = -1;
                   double worst = 0.0;
                   for (int t = 0; t < 5; ++t) {
                     LieValuedForm<S> f(lie, 2);
                     for (int a = 0; a < 2; ++a) f.comp(a) = rng.template next_form<S>(2);
                     auto h = f_wedge_fdagger(f);
                     for (int l = 0; l < 2; ++l)
                       for (int k = 0; k < 2; ++k)
                         for (int i = 1; i <= kDim; ++i)
                           for (int j = 1; j <= kDim; ++j) {
                             if (i == j) continue;
                             // wedge-sum layout transposes the row-summed display
                             S acc = ScalarOps<S>::zero();
                             S sk = lie.signs[k] > 0 ? lie.scale : -lie.scale;
                             for (int a = 1; a <= kDim; ++a)
                               acc += f.comp(l).at({j, a}) * f.comp(k).at({i, a}) * sk -
                                      f.comp(l).at({i, a}) * f.comp(k).at({j, a}) * sk;
                             worst = std::max(worst,
                                              std::fabs(ScalarOps<S>::to_double(h[l][k].at({i, j}) + acc)));
                           }
                     // g2-valued F: slices land in the 14-part
                     LieValuedForm<S> g(lie, 2);
                     for (int a = 0; a < 2; ++a)
                       g.comp(a) = decompose2(rng.template next_form<S>(2)).pi14;
                     auto hg = f_wedge_fdagger(g);
                     for (auto& row : hg)
                       for (auto& piece : row)
                         worst = std::max(worst, sup_norm(decompose2(piece).pi7));
                   }
                   return worst;
                 }});
  cs.push_back(C{"coupled/iblock-two-routes", "I-block == grad+ F, computed independently",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 57);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   double worst = 0.0;
                   for (int t = 0; t < 5; ++t) {
                     LieValuedForm<S> f(lie, 2);
                     for (int a = 0; a < 2; ++a) f.comp(a) = rng.template next_form<S>(2);
                     Form<S> h = rng.template next_form<S>(3);
                     std::vector<LieValuedForm<S>> gf(kDim, LieValuedForm<S>(lie, 2));
                     for (int c = 0; c < kDim; ++c)
                       for (int a = 0; a < 2; ++a) gf[c].comp(a) = rng.template next_form<S>(2);
                     auto r1 = i_block(gf, f, h);
                     auto r2 = grad_plus_f(gf, f, h);
                     for (int c = 0; c < kDim; ++c)
                       for (int a = 0; a < 2; ++a)
                         worst = std::max(worst, diff(r1[c].comp(a), r2[c].comp(a)));
                   }
                   return worst;
                 }});
  cs.push_back(C{"coupled/rho-bismut", "rho kills 14-part slices; matches the phi-contraction",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 58);
                   const auto& m = G2Model<S>::flat();
                   double worst = 0.0;
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(1);
                   auto s = GravitinoSample<S>::random(rng, lie);
                   auto rho = rho_bismut(s.Rplus, m);
                   for (int l = 1; l <= kDim; ++l) worst = std::max(worst, sup_norm(rho[l]));
                   // one non-g2 slice against the direct phi contraction
                   CurvatureTensor<S> r;
                   r.set_endo_slice(pair_index(1, 2), interior(Vector<S>::basis(1), m.phi));
                   auto rho2 = rho_bismut(r, m);
                   double got_nonzero = 0.0;
                   for (int l = 1; l <= kDim; ++l) {
                     for (int p = 0; p < kNumPairs; ++p) {
                       auto [i, j] = index_pairs()[p];
                       S acc = ScalarOps<S>::zero();
                       for (int b = 1; b <= kDim; ++b)
                         for (int k = 1; k <= kDim; ++k)
                           acc += r.at(i, j, b, k) * m.phi.at({k, b, l});
                       acc *= ScalarOps<S>::fraction(1, 2);
                       worst = std::max(worst, scalar_diff(
                                                   rho2[l].coeff(static_cast<Mask>(bit_of(i) | bit_of(j))),
                                                   acc));
                       got_nonzero = std::max(got_nonzero,
                                              std::fabs(ScalarOps<S>::to_double(acc)));
                     }
                   }
                   worst = std::max(worst, flag(got_nonzero > 0.0));
                   return worst;
                 }});
  cs.push_back(C{"coupled/tower-ranks", "(7, r1=14) -> 189; (7, 1) -> 7, 49; (6, 8) -> 62",
                 [](const VerifyOptions&) {
                   double worst = flag(tower_rank(7, 14, 2) == std::vector<std::int64_t>({14, 189}));
                   worst = std::max(worst, flag(tower_rank(7, 1, 4) ==
                                                std::vector<std::int64_t>({1, 7, 49, 2359})));
                   worst = std::max(worst, flag(tower_rank(6, 8, 2) ==
                                                std::vector<std::int64_t>({8, 62})));
                   try {
                     tower_rank(7, 14, 12);
                     worst = 1.0;
                   } catch (const std::overflow_error&) {
                   }
                   return worst;
                 }});
  cs.push_back(C{"coupled/tower-double",
                 "doubled field: <F^F> == 0 and the doubled sample passes the spinor check",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 59);
                   LieCoeff<S> lie = LieCoeff<S>::euclidean(2);
                   double worst = 0.0;
                   for (int t = 0; t < 5; ++t) {
                     LieValuedForm<S> f(lie, 2);
                     for (int a = 0; a < 2; ++a)
                       f.comp(a) = decompose2(rng.template next_form<S>(2)).pi14;
                     auto dbl = tower_double(f);
                     worst = std::max(worst, sup_norm(lie_wedge_pairing(dbl, dbl)));
                     CurvatureTensor<S> zero;
                     worst = std::max(worst, spinor_coupled_check(zero, dbl).sup_norm());
                   }
                   auto z = tower_double(LieValuedForm<S>(lie, 2));
                   worst = std::max(worst, flag(z.is_zero()));
                   return worst;
                 }});
  return cs;
}

// ------------------------------------------------------------------ ccy --

template <class S>
std::vector<Check<S>> ccy_checks() {
  using C = Check<S>;
  std::vector<C> cs;
  cs.push_back(C{"ccy/su3-volume", "omega^3/3! == (1/4) ReOmega ^ ImOmega; <omega,omega> == 3",
                 [](const VerifyOptions&) {
                   auto su3 = su3_coframe_forms<S>();
                   Form<S> vol6 = wedge(su3.omega, wedge(su3.omega, su3.omega)) *
                                  ScalarOps<S>::fraction(1, 6);
                   double r = diff(vol6, wedge(su3.re_omega, su3.im_omega) *
                                             ScalarOps<S>::fraction(1, 4));
                   r = std::max(r, scalar_diff(norm2(su3.omega), ScalarOps<S>::from_long(3)));
                   r = std::max(r, scalar_diff(norm2(su3.re_omega), ScalarOps<S>::from_long(4)));
                   return r;
                 }});
  cs.push_back(C{"ccy/g2-eps", "hodge(phi) == psi, metric identity, |phi|^2 == 7",
                 [](const VerifyOptions&) {
                   auto m = g2_eps<S>();
                   double r = diff(hodge(m.phi), m.psi);
                   r = std::max(r, matrix_diff(metric_from_phi(m.phi), Matrix7<S>::identity()));
                   r = std::max(r, scalar_diff(norm2(m.phi), ScalarOps<S>::from_long(7)));
                   return r;
                 }});
  cs.push_back(C{"ccy/torsion-eps", "tau0 == (6/7) eps; H == eps(-f0^omega + ReOmega); 27-membership",
                 [](const VerifyOptions& o) {
                   auto m = g2_eps<S>();
                   auto su3 = su3_coframe_forms<S>();
                   Rng rng(o.seed + 70);
                   double worst = 0.0;
                   for (int t = 0; t < 10; ++t) {
                     S eps = ScalarOps<S>::abs(rng.template next_scalar<S>());
                     if (ScalarOps<S>::is_zero(eps)) eps = ScalarOps<S>::fraction(1, 3);
                     auto tt = torsion_eps(eps);
                     worst = std::max(worst,
                                      scalar_diff(tt.tau0, eps * ScalarOps<S>::fraction(6, 7)));
                     worst = std::max(worst, flag(in_lambda3_27(tt.tau3, m, 1e-13)));
                     Form<S> h = assemble_H(tt, m);
                     Form<S> expect = (su3.re_omega - wedge(coframe_1form<S>(0), su3.omega)) * eps;
                     worst = std::max(worst, diff(h, expect));
                     auto back = decompose_H(h, m);
                     worst = std::max(worst, scalar_diff(back.tau0, tt.tau0));
                     worst = std::max(worst, diff(back.tau1, tt.tau1));
                     worst = std::max(worst, diff(back.tau3, tt.tau3));
                   }
                   double r7_6 = scalar_diff(torsion_eps(ScalarOps<S>::fraction(7, 6)).tau0,
                                             ScalarOps<S>::one());
                   return std::max(worst, r7_6);
                 }});
  cs.push_back(C{"ccy/dphi-omega2", "dphi identity evaluates to eps omega^2",
                 [](const VerifyOptions& o) {
                   auto m = g2_eps<S>();
                   auto su3 = su3_coframe_forms<S>();
                   Rng rng(o.seed + 71);
                   double worst = 0.0;
                   for (int t = 0; t < 10; ++t) {
                     S eps = ScalarOps<S>::abs(rng.template next_scalar<S>());
                     if (ScalarOps<S>::is_zero(eps)) eps = ScalarOps<S>::fraction(2, 5);
                     auto tt = torsion_eps(eps);
                     Form<S> h = assemble_H(tt, m);
                     Form<S> om2eps = wedge(su3.omega, su3.omega) * eps;
                     worst = std::max(worst, diff(dphi_from_H(h, m), om2eps));
                     worst = std::max(worst, diff(torsion_dphi(tt, m), om2eps));
                   }
                   return worst;
                 }});
  cs.push_back(C{"ccy/matrices-skew", "B, C, I, M and the deviation matrix are skew",
                 [](const VerifyOptions&) {
                   CCYParams<S> p{ScalarOps<S>::fraction(1, 2), ScalarOps<S>::from_long(2),
                                  ScalarOps<S>::fraction(3, 4), ScalarOps<S>::fraction(-1, 3)};
                   auto mats = matrices_BCIM(p);
                   double r = flag(mats.B.is_skew() && mats.C.is_skew() && mats.Iconst.is_skew() &&
                                   mats.M.is_skew());
                   r = std::max(r, flag(deviation(p).is_skew()));
                   // box3 entries
                   std::array<Form<S>, 3> e{Form<S>::basis(bit_of(kCoframeSlot[1])),
                                            Form<S>::basis(bit_of(kCoframeSlot[2])),
                                            Form<S>::basis(bit_of(kCoframeSlot[3]))};
                   auto b = box3(e);
                   r = std::max(r, diff(b[0][1], e[2]));
                   r = std::max(r, diff(b[2][0], e[1]));
                   return r;
                 }});
  cs.push_back(C{"ccy/M-coefficients",
                 "(1+m-5d)(1+d) factors: zero at delta == -1; -8 at delta == 1, m == 0",
                 [](const VerifyOptions&) {
                   CCYParams<S> at_m1{ScalarOps<S>::one(), ScalarOps<S>::one(),
                                      ScalarOps<S>::from_long(-1), ScalarOps<S>::fraction(2, 3)};
                   auto m1 = matrices_BCIM(at_m1);
                   double r = sup_norm(m1.M.at(0, 1));  // top row carries the (1+delta) factor
                   CCYParams<S> case1{ScalarOps<S>::one(), ScalarOps<S>::one(), ScalarOps<S>::one(),
                                      ScalarOps<S>::zero()};
                   auto mc = matrices_BCIM(case1);
                   Form<S> expect = coframe_1form<S>(1) * ScalarOps<S>::from_long(-8);
                   r = std::max(r, diff(mc.M.at(0, 1), expect));
                   return r;
                 }});
  cs.push_back(C{"ccy/deviation-first-coefficient",
                 "first deviation coefficient vanishes iff 6(1-d+m) + k(1-d)(1+3d) == 0",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 72);
                   double worst = 0.0;
                   for (int t = 0; t < 25; ++t) {
                     CCYParams<S> p{ScalarOps<S>::abs(rng.template next_scalar<S>()) +
                                        ScalarOps<S>::fraction(1, 7),
                                    rng.template next_scalar<S>(), rng.template next_scalar<S>(),
                                    rng.template next_scalar<S>()};
                     if (ScalarOps<S>::is_zero(p.k)) p.k = ScalarOps<S>::one();
                     S one = ScalarOps<S>::one();
                     S poly = ScalarOps<S>::from_long(6) * (one - p.delta + p.m) +
                              p.k * (one - p.delta) * (one + ScalarOps<S>::from_long(3) * p.delta);
                     bool cz = ScalarOps<S>::is_zero(deviation_first_coefficient(p));
                     worst = std::max(worst, flag(cz == ScalarOps<S>::is_zero(poly)));
                   }
                   // Bismut line delta == 1, m == 0, k arbitrary
                   CCYParams<S> bis{ScalarOps<S>::one(), ScalarOps<S>::fraction(5, 2),
                                    ScalarOps<S>::one(), ScalarOps<S>::zero()};
                   worst = std::max(worst, scalar_diff(deviation_first_coefficient(bis),
                                                       ScalarOps<S>::zero()));
                   return worst;
                 }});
  cs.push_back(C{"ccy/deviation-structure",
                 "|R^psi|^2 splits exactly into the two displayed coefficient blocks",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 73);
                   auto su3 = su3_coframe_forms<S>();
                   Form<S> vol6 = wedge(su3.omega, wedge(su3.omega, su3.omega)) *
                                  ScalarOps<S>::fraction(1, 6);
                   Form<S> f0om2 = wedge(coframe_1form<S>(0), wedge(su3.omega, su3.omega)) *
                                   ScalarOps<S>::fraction(1, 2);
                   double worst = 0.0;
                   for (int t = 0; t < 10; ++t) {
                     CCYParams<S> p{ScalarOps<S>::abs(rng.template next_scalar<S>()) +
                                        ScalarOps<S>::fraction(1, 5),
                                    rng.template next_scalar<S>(), rng.template next_scalar<S>(),
                                    rng.template next_scalar<S>()};
                     if (ScalarOps<S>::is_zero(p.k)) p.k = ScalarOps<S>::fraction(1, 2);
                     auto mats = matrices_BCIM(p);
                     S c1 = deviation_first_coefficient(p);
                     S c2 = p.k * p.k * p.eps * p.eps * ScalarOps<S>::fraction(1, 4);
                     S expect = ScalarOps<S>::zero();
                     for (int a = 0; a < 7; ++a)
                       for (int b = 0; b < 7; ++b) {
                         Form<S> t1 = wedge(mats.Iconst.at(a, b), vol6) * c1;
                         Form<S> t2 = wedge(f0om2, mats.M.at(a, b)) * c2;
                         expect += norm2(t1) + norm2(t2);  // blocks are Hodge-orthogonal
                       }
                     expect *= ScalarOps<S>::fraction(1, 2);
                     worst = std::max(worst, scalar_diff(deviation_norm2(p), expect));
                     // homogeneity in eps: scaling eps by 3 scales |.|^2 by 81
                     CCYParams<S> p3 = p;
                     p3.eps = p.eps * ScalarOps<S>::from_long(3);
                     worst = std::max(worst, scalar_diff(deviation_norm2(p3),
                                                         deviation_norm2(p) *
                                                             ScalarOps<S>::from_long(81)));
                   }
                   return worst;
                 }});
  cs.push_back(C{"ccy/deviation-nonzero", "k eps != 0 forces a nonzero deviation",
                 [](const VerifyOptions& o) {
                   Rng rng(o.seed + 74);
                   double worst = 0.0;
                   for (int t = 0; t < 10; ++t) {
                     CCYParams<S> p{ScalarOps<S>::abs(rng.template next_scalar<S>()) +
                                        ScalarOps<S>::fraction(1, 9),
                                    ScalarOps<S>::abs(rng.template next_scalar<S>()) +
                                        ScalarOps<S>::fraction(1, 9),
                                    rng.template next_scalar<S>(), rng.template next_scalar<S>()};
                     worst = std::max(worst,
                                      flag(!ScalarOps<S>::is_zero(deviation_norm2(p))));
                     worst = std::max(worst, flag(!ScalarOps<S>::is_zero(
                                                deviation_norm2(p, DeviationNormalization::eta))));
                   }
                   return worst;
                 }});
  return cs;
}

/// f64-only scaling checks (they need sqrt and pow).
inline std::vector<Check<double>> ccy_scaling_checks() {
  using C = Check<double>;
  std::vector<C> cs;
  cs.push_back(C{"ccy/regime-params", "case formulas and constraint errors",
                 [](const VerifyOptions&) {
                   auto p1 = regime_params(1, 1.0, 0.0, 0.1);
                   double r = std::fabs(p1.eps * p1.eps - 2e-5) / 2e-5;
                   auto p2 = regime_params(2, 0.0, -2.0, 0.1);
                   double expect2 = 8e-8 / (1.0 + 3e-3);
                   r = std::max(r, std::fabs(p2.eps * p2.eps - expect2) / expect2);
                   try {
                     regime_params(2, 0.0, -1.0, 0.1);
                     r = 1.0;
                   } catch (const std::domain_error&) {
                   }
                   try {
                     regime_params(1, 0.0, 0.0, 0.1);
                     r = 1.0;
                   } catch (const std::domain_error&) {
                   }
                   return r;
                 }});
  cs.push_back(C{"ccy/sweep-slopes", "cases 1-3 fit slope 2.00 +- 0.05 on [1e-3, 1e-1]",
                 [](const VerifyOptions& o) {
                   double worst = 0.0;
                   auto grid = log_grid(1e-3, 1e-1, 9);
                   struct Cfg { int c; double d, m; };
                   for (Cfg cfg : {Cfg{1, 1.0, 0.0}, Cfg{2, 0.0, -2.0}, Cfg{3, -1.0, 0.0}}) {
                     auto res = scaling_sweep(cfg.c, cfg.d, cfg.m, grid,
                                              DeviationNormalization::e0, o.threads);
                     worst = std::max(worst, std::fabs(res.slope - 2.0) / 0.05 > 1.0 ? 1.0 : 0.0);
                     worst = std::max(worst, res.max_ym_residual > o.abs_tol ? 1.0 : 0.0);
                   }
                   return worst;
                 }});
  return cs;
}

template <class S>
std::vector<Check<S>> suite_checks(const std::string& name) {
  if (name == "forms") return forms_checks<S>();
  if (name == "g2") return g2_checks<S>();
  if (name == "spin") return spin_checks<S>();
  if (name == "generalized") return generalized_checks<S>();
  if (name == "coupled") return coupled_checks<S>();
  if (name == "ccy") {
    auto cs = ccy_checks<S>();
    if constexpr (std::is_same_v<S, double>) {
      for (auto& c : ccy_scaling_checks()) cs.push_back(c);
    }
    return cs;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"forms", "g2", "spin",
                                              "generalized", "coupled", "ccy"};
  return names;
}

/// Sign-convention self-test; aborts the verify run with a diagnostic rather
/// than letting convention-dependent checks fail one by one.
template <class S>
void convention_self_test() {
  auto eta = Spinor<S>::eta0();
  auto r = act(G2Model<S>::flat().phi, eta) - eta * ScalarOps<S>::from_long(-7);
  if (r.sup_norm() > ScalarOps<S>::zero_tol)
    throw std::logic_error(
        "convention self-test failed: act(phi0, eta0) != -7 eta0. The Clifford "
        "generator table and the sorted-product action no longer match; fix the "
        "conventions instead of flipping downstream signs.");
}

template <class S>
SuiteReport run_suite(const std::string& name, const VerifyOptions& opts) {
  convention_self_test<S>();
  SuiteReport report;
  report.suite = name;
  report.backend = ScalarOps<S>::backend_name;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& check : detail::suite_checks<S>(name)) {
    auto c0 = std::chrono::steady_clock::now();
    CheckResult r;
    r.id = check.id;
    r.identity = check.identity;
    r.max_residual = check.residual(opts);
    r.pass = r.max_residual <= detail::tolerance<S>(opts);
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - c0).count();
    report.pass = report.pass && r.pass;
    report.results.push_back(std::move(r));
  }
  report.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

template <class S>
std::vector<SuiteReport> run_suites(const std::string& name, const VerifyOptions& opts) {
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite<S>(n, opts));
  } else {
    out.push_back(run_suite<S>(name, opts));
  }
  return out;
}

}  // namespace g2kit
