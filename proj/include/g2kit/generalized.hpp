#pragma once

#include <algorithm>
#include <vector>

#include "g2kit/g2.hpp"
#include "g2kit/matrix.hpp"

namespace g2kit {

/// Quadratic coefficient space for gauge data: a diagonal +-1 pairing times
/// one global scale. Fixed per session; mixing spaces is rejected.
template <class S>
struct LieCoeff {
  std::vector<int> signs;           // entries +1 / -1
  S scale = ScalarOps<S>::one();    // e.g. an alpha' factor

  static LieCoeff euclidean(int dim) {
    LieCoeff c;
    c.signs.assign(dim, +1);
    return c;
  }
  static LieCoeff neutral(int half_dim) {
    LieCoeff c;
    c.signs.assign(half_dim, +1);
    c.signs.insert(c.signs.end(), half_dim, -1);
    return c;
  }

  int dim() const { return static_cast<int>(signs.size()); }

  S pairing(const std::vector<S>& r, const std::vector<S>& t) const {
    if (static_cast<int>(r.size()) != dim() || static_cast<int>(t.size()) != dim())
      throw std::invalid_argument("LieCoeff: coordinate length mismatch");
    S acc = ScalarOps<S>::zero();
    for (int a = 0; a < dim(); ++a) {
      S term = r[a] * t[a];
      acc += signs[a] > 0 ? term : -term;
    }
    return acc * scale;
  }

  friend bool operator==(const LieCoeff& a, const LieCoeff& b) {
    return a.signs == b.signs && a.scale == b.scale;
  }
  friend bool operator!=(const LieCoeff& a, const LieCoeff& b) { return !(a == b); }
};

/// k-form with coefficients in a LieCoeff space: one component form per
/// Lie coordinate, all of a common grade.
template <class S>
class LieValuedForm {
public:
  LieValuedForm() : lie_(LieCoeff<S>::euclidean(0)), grade_(0) {}
  LieValuedForm(LieCoeff<S> lie, int grade)
      : lie_(std::move(lie)), grade_(grade), comps_(lie_.dim(), Form<S>(grade)) {}

  const LieCoeff<S>& lie() const { return lie_; }
  int grade() const { return grade_; }
  int dim() const { return lie_.dim(); }

  Form<S>& comp(int a) { return comps_.at(a); }
  const Form<S>& comp(int a) const { return comps_.at(a); }

  bool is_zero() const {
    for (const auto& f : comps_)
      if (!f.is_zero()) return false;
    return true;
  }

  double sup_norm() const {
    double m = 0.0;
    for (const auto& f : comps_) m = std::max(m, g2kit::sup_norm(f));
    return m;
  }

  /// Lie coordinates of the value at a full index tuple.
  std::vector<S> value_at(const std::vector<int>& idx) const {
    std::vector<S> v(dim());
    for (int a = 0; a < dim(); ++a) v[a] = comps_[a].at(idx);
    return v;
  }

  LieValuedForm operator-() const {
    LieValuedForm out = *this;
    for (auto& f : out.comps_) f = -f;
    return out;
  }
  LieValuedForm& operator+=(const LieValuedForm& o) {
    require_same(o);
    for (int a = 0; a < dim(); ++a) comps_[a] += o.comps_[a];
    return *this;
  }
  LieValuedForm& operator-=(const LieValuedForm& o) {
    require_same(o);
    for (int a = 0; a < dim(); ++a) comps_[a] -= o.comps_[a];
    return *this;
  }
  friend LieValuedForm operator+(LieValuedForm a, const LieValuedForm& b) { return a += b; }
  friend LieValuedForm operator-(LieValuedForm a, const LieValuedForm& b) { return a -= b; }
  friend bool operator==(const LieValuedForm& a, const LieValuedForm& b) {
    return a.lie_ == b.lie_ && a.grade_ == b.grade_ && a.comps_ == b.comps_;
  }

  void require_same(const LieValuedForm& o) const {
    if (lie_ != o.lie_) throw std::invalid_argument("LieValuedForm: Lie space mismatch");
    if (grade_ != o.grade_) throw std::invalid_argument("LieValuedForm: grade mismatch");
  }

  /// |F|^2 under the Lie pairing; indefinite pairings can make it negative.
  S norm2_lie() const {
    S acc = ScalarOps<S>::zero();
    for (int a = 0; a < dim(); ++a) {
      S term = norm2(comps_[a]);
      acc += lie_.signs[a] > 0 ? term : -term;
    }
    return acc * lie_.scale;
  }

private:
  LieCoeff<S> lie_;
  int grade_;
  std::vector<Form<S>> comps_;
};

/// Section value of T + adP + T*.
template <class S>
struct GeneralizedVector {
  Vector<S> x;
  std::vector<S> r;
  Form<S> zeta{1};
  LieCoeff<S> lie = LieCoeff<S>::euclidean(0);

  static GeneralizedVector sigma_plus(const Vector<S>& v, const LieCoeff<S>& lie) {
    GeneralizedVector g{v, std::vector<S>(lie.dim(), ScalarOps<S>::zero()), flat(v), lie};
    return g;
  }
  static GeneralizedVector sigma_minus(const Vector<S>& v, const LieCoeff<S>& lie) {
    GeneralizedVector g{v, std::vector<S>(lie.dim(), ScalarOps<S>::zero()), -flat(v), lie};
    return g;
  }

  GeneralizedVector& operator+=(const GeneralizedVector& o) {
    if (lie != o.lie) throw std::invalid_argument("GeneralizedVector: Lie space mismatch");
    for (int i = 1; i <= kDim; ++i) x[i] += o.x[i];
    for (int a = 0; a < lie.dim(); ++a) r[a] += o.r[a];
    zeta += o.zeta;
    return *this;
  }
  friend GeneralizedVector operator+(GeneralizedVector a, const GeneralizedVector& b) {
    return a += b;
  }
  friend bool operator==(const GeneralizedVector& a, const GeneralizedVector& b) {
    return a.x == b.x && a.r == b.r && a.zeta == b.zeta && a.lie == b.lie;
  }
};

/// <X+r+zeta, X+r+zeta> = zeta(X) + <r,r>, polarized.
template <class S>
S gpairing(const GeneralizedVector<S>& a, const GeneralizedVector<S>& b) {
  if (a.lie != b.lie) throw std::invalid_argument("gpairing: Lie space mismatch");
  S half = ScalarOps<S>::fraction(1, 2);
  S acc = ScalarOps<S>::zero();
  for (int i = 1; i <= kDim; ++i)
    acc += a.zeta.coeff(bit_of(i)) * b.x[i] + b.zeta.coeff(bit_of(i)) * a.x[i];
  return acc * half + a.lie.pairing(a.r, b.r);
}

/// Generalized-metric endomorphism G(X + r + zeta) = (zeta#, -r, X-flat);
/// squares to the identity, fixes V+ and negates V-.
template <class S>
GeneralizedVector<S> gmetric_endo(const GeneralizedVector<S>& a) {
  GeneralizedVector<S> out{sharp(a.zeta), a.r, flat(a.x), a.lie};
  for (auto& r : out.r) r = -r;
  return out;
}

/// Orthogonal projections onto V+ = {X + gX} and V- = {X + r - gX}.
template <class S>
std::pair<GeneralizedVector<S>, GeneralizedVector<S>> gprojections(const GeneralizedVector<S>& a) {
  S half = ScalarOps<S>::fraction(1, 2);
  Vector<S> zs = sharp(a.zeta);
  Vector<S> xp, xm;
  for (int i = 1; i <= kDim; ++i) {
    xp[i] = (a.x[i] + zs[i]) * half;
    xm[i] = (a.x[i] - zs[i]) * half;
  }
  GeneralizedVector<S> plus = GeneralizedVector<S>::sigma_plus(xp, a.lie);
  GeneralizedVector<S> minus = GeneralizedVector<S>::sigma_minus(xm, a.lie);
  minus.r = a.r;
  return {plus, minus};
}

/// Unique divergence-section split eps = sigma_+(zp#) + z + sigma_-(zm#).
template <class S>
struct EpsSplit {
  Form<S> zeta_plus{1};
  std::vector<S> z;
  Form<S> zeta_minus{1};
};

template <class S>
EpsSplit<S> eps_decompose(const GeneralizedVector<S>& eps) {
  S half = ScalarOps<S>::fraction(1, 2);
  EpsSplit<S> out;
  out.zeta_plus = (flat(eps.x) + eps.zeta) * half;
  out.zeta_minus = (flat(eps.x) - eps.zeta) * half;
  out.z = eps.r;
  return out;
}

template <class S>
GeneralizedVector<S> eps_reassemble(const EpsSplit<S>& s, const LieCoeff<S>& lie) {
  GeneralizedVector<S> out =
      GeneralizedVector<S>::sigma_plus(sharp(s.zeta_plus), lie) +
      GeneralizedVector<S>::sigma_minus(sharp(s.zeta_minus), lie);
  out.r = s.z;
  return out;
}

/// (H^2)_ij = sum_{a,b} H_iab H_jab over full index ranges.
template <class S>
Matrix7<S> h_squared(const Form<S>& h) {
  if (h.grade() != 3) throw std::invalid_argument("h_squared: expects a 3-form");
  Matrix7<S> out;
  S two = ScalarOps<S>::from_long(2);
  for (int i = 1; i <= kDim; ++i)
    for (int j = i; j <= kDim; ++j) {
      S acc = ScalarOps<S>::zero();
      for (int a = 1; a <= kDim; ++a)
        for (int b = a + 1; b <= kDim; ++b) acc += h.at({i, a, b}) * h.at({j, a, b});
      acc *= two;
      out(i, j) = acc;
      out(j, i) = acc;
    }
  return out;
}

/// Gram matrix sum_j <i_{e_i} F, i_{e_i'} F>_k.
template <class S>
Matrix7<S> f_gram(const LieValuedForm<S>& f) {
  if (f.grade() != 2) throw std::invalid_argument("f_gram: expects 2-form coefficients");
  Matrix7<S> out;
  for (int i = 1; i <= kDim; ++i)
    for (int ip = i; ip <= kDim; ++ip) {
      S acc = ScalarOps<S>::zero();
      for (int j = 1; j <= kDim; ++j) {
        std::vector<S> u(f.dim()), v(f.dim());
        for (int a = 0; a < f.dim(); ++a) {
          u[a] = f.comp(a).at({i, j});
          v[a] = f.comp(a).at({ip, j});
        }
        acc += f.lie().pairing(u, v);
      }
      out(i, ip) = acc;
      out(ip, i) = acc;
    }
  return out;
}

/// Componentwise ⋆(F_a ∧ ⋆H); equals F_a ⌟ H in dimension 7.
template <class S>
LieValuedForm<S> star_f_wedge_star_h(const LieValuedForm<S>& f, const Form<S>& h) {
  LieValuedForm<S> out(f.lie(), h.grade() - f.grade());
  for (int a = 0; a < f.dim(); ++a) out.comp(a) = hodge(wedge(f.comp(a), hodge(h)));
  return out;
}

/// Componentwise i_{x} F.
template <class S>
LieValuedForm<S> interior_lie(const Vector<S>& x, const LieValuedForm<S>& f) {
  LieValuedForm<S> out(f.lie(), f.grade() - 1);
  for (int a = 0; a < f.dim(); ++a) out.comp(a) = interior(x, f.comp(a));
  return out;
}

/// Sign of the ⋆(F ∧ ⋆H) term in the Ricci system: (-1)^n with n = 7.
inline constexpr int kCurvatureStarSign = -1;

/// Pointwise field bundle: every derivative slot is caller-supplied data,
/// nothing here differentiates.
template <class S>
struct PointFields {
  explicit PointFields(LieCoeff<S> lie_space = LieCoeff<S>::euclidean(1))
      : lie(std::move(lie_space)),
        F(lie, 2),
        dthetastarF(lie, 1),
        gradF(kDim, LieValuedForm<S>(lie, 2)) {}

  LieCoeff<S> lie;
  Form<S> H{3};
  LieValuedForm<S> F;
  Form<S> zeta{1};
  Matrix7<S> Ric;
  Form<S> dstarH{2};
  Form<S> dzeta{2};
  Matrix7<S> LzetaG;
  LieValuedForm<S> dthetastarF;
  Form<S> dH{4};
  std::vector<LieValuedForm<S>> gradF;  // direction-indexed ∇^{theta,g} F
  S Rg = ScalarOps<S>::zero();
  S dstarzeta = ScalarOps<S>::zero();
};

template <class S>
struct RicPlusResidual {
  Matrix7<S> sym;
  Form<S> skew{2};
  LieValuedForm<S> lie1;

  double sup_norm() const {
    return std::max({sym.sup_norm(), g2kit::sup_norm(skew), lie1.sup_norm()});
  }
};

/// The three generalized Ricci-flat residuals
///   Rc - (1/4)H^2 + sum_j <i_j F, i_j F> + (1/2) L_zeta g,
///   d*H - d zeta + i_zeta H,
///   d_theta*F + (-1)^7 ⋆(F ∧ ⋆H) + i_zeta F.
template <class S>
RicPlusResidual<S> ric_plus_residual(const PointFields<S>& p) {
  RicPlusResidual<S> out{Matrix7<S>(), Form<S>(2), LieValuedForm<S>(p.lie, 1)};
  S quarter = ScalarOps<S>::fraction(1, 4);
  S half = ScalarOps<S>::fraction(1, 2);
  out.sym = p.Ric - h_squared(p.H) * quarter + f_gram(p.F) + p.LzetaG * half;
  Vector<S> zs = sharp(p.zeta);
  out.skew = p.dstarH - p.dzeta + interior(zs, p.H);
  LieValuedForm<S> star_term = star_f_wedge_star_h(p.F, p.H);
  out.lie1 = p.dthetastarF + interior_lie(zs, p.F);
  if (kCurvatureStarSign < 0)
    out.lie1 -= star_term;
  else
    out.lie1 += star_term;
  return out;
}

/// Generalized scalar curvature S+ = R_g - (1/2)|H|^2 + |F|^2 - 2 d*zeta - |zeta|^2.
template <class S>
S scalar_splus(const PointFields<S>& p) {
  S two = ScalarOps<S>::from_long(2);
  return p.Rg - norm2(p.H) * ScalarOps<S>::fraction(1, 2) + p.F.norm2_lie() -
         two * p.dstarzeta - norm2(p.zeta);
}

/// Scalar identity (7/6) tau0^2 + 12|tau1|^2 + 4 d*tau1 - |tau3|^2 + |F|^2,
/// cross-checked against the S+ route: substituting the closed forms of R_g
/// and |H|^2 into S+ - (49/36) tau0^2 must reproduce the same value.
template <class S>
S corollary_residual(const S& tau0, const S& norm_tau1_sq, const S& dstar_tau1,
                     const S& norm_tau3_sq, const S& norm_f_sq) {
  S t0sq = tau0 * tau0;
  S direct = ScalarOps<S>::fraction(7, 6) * t0sq + ScalarOps<S>::from_long(12) * norm_tau1_sq +
             ScalarOps<S>::from_long(4) * dstar_tau1 - norm_tau3_sq + norm_f_sq;
  S rg = ScalarOps<S>::fraction(21, 8) * t0sq + ScalarOps<S>::from_long(30) * norm_tau1_sq -
         ScalarOps<S>::fraction(1, 2) * norm_tau3_sq + ScalarOps<S>::from_long(12) * dstar_tau1;
  S hsq = ScalarOps<S>::fraction(7, 36) * t0sq + ScalarOps<S>::from_long(4) * norm_tau1_sq +
          norm_tau3_sq;
  S splus = rg - ScalarOps<S>::fraction(1, 2) * hsq + norm_f_sq -
            ScalarOps<S>::from_long(8) * dstar_tau1 - ScalarOps<S>::from_long(16) * norm_tau1_sq;
  S via_splus = splus - ScalarOps<S>::fraction(49, 36) * t0sq;
  double gap = std::fabs(ScalarOps<S>::to_double(direct - via_splus));
  double tol = ScalarOps<S>::zero_tol == 0.0
                   ? 0.0
                   : 1e-12 * (1.0 + std::fabs(ScalarOps<S>::to_double(direct)));
  if (gap > tol) throw std::logic_error("corollary_residual: evaluation routes disagree");
  return direct;
}

/// Heterotic scalar consistency: S+ assembled from the closed forms of R_g,
/// |H|^2 and the corollary's |F|^2, with zeta = 4 tau1. Equals (49/36) tau0^2.
template <class S>
S heterotic_splus(const S& tau0, const S& norm_tau1_sq, const S& dstar_tau1,
                  const S& norm_tau3_sq) {
  S t0sq = tau0 * tau0;
  S rg = ScalarOps<S>::fraction(21, 8) * t0sq + ScalarOps<S>::from_long(30) * norm_tau1_sq -
         ScalarOps<S>::fraction(1, 2) * norm_tau3_sq + ScalarOps<S>::from_long(12) * dstar_tau1;
  S hsq = ScalarOps<S>::fraction(7, 36) * t0sq + ScalarOps<S>::from_long(4) * norm_tau1_sq +
          norm_tau3_sq;
  S fsq = -(ScalarOps<S>::fraction(7, 6) * t0sq + ScalarOps<S>::from_long(12) * norm_tau1_sq +
            ScalarOps<S>::from_long(4) * dstar_tau1 - norm_tau3_sq);
  return rg - ScalarOps<S>::fraction(1, 2) * hsq + fsq - ScalarOps<S>::from_long(8) * dstar_tau1 -
         ScalarOps<S>::from_long(16) * norm_tau1_sq;
}

/// Derivative-free Yang--Mills identity, as an exact-zero residual:
///   4 tau1⌟F + (F⌟psi)⌟H - F⌟(tau0 phi - 3 tau1⌟psi + tau3)
///     - [ 6 tau1⌟pi7F - (2/3) tau0 (pi7F)⌟phi - 3 (pi7F)⌟tau3 ].
/// The tau0 coefficient -2/3 is the one that vanishes identically under
/// this kernel's contraction layout (pinned by exhaustive rational tests).
template <class S>
LieValuedForm<S> ym_algebraic_identity(const LieValuedForm<S>& f, const TorsionTriple<S>& t,
                                       const G2Model<S>& model = G2Model<S>::flat(),
                                       double tau3_tol = ScalarOps<S>::zero_tol) {
  if (f.grade() != 2) throw std::invalid_argument("ym_algebraic_identity: expects 2-forms");
  Form<S> h = assemble_H(t, model, tau3_tol);
  Form<S> dstarpsi = model.phi * t.tau0 -
                     interior(sharp(t.tau1), model.psi) * ScalarOps<S>::from_long(3) + t.tau3;
  LieValuedForm<S> out(f.lie(), 1);
  for (int a = 0; a < f.dim(); ++a) {
    const Form<S>& g = f.comp(a);
    Form<S> p7 = decompose2(g, model).pi7;
    Form<S> lhs = contract(t.tau1, g) * ScalarOps<S>::from_long(4) +
                  contract(contract(g, model.psi), h) - contract(g, dstarpsi);
    Form<S> rhs = contract(t.tau1, p7) * ScalarOps<S>::from_long(6) -
                  contract(p7, model.phi) * (t.tau0 * ScalarOps<S>::fraction(2, 3)) -
                  contract(p7, t.tau3) * ScalarOps<S>::from_long(3);
    out.comp(a) = lhs - rhs;
  }
  return out;
}

/// Scale on the trace pairing matching dH = (8/3)k^2 psi against
/// tr F∧F = -(32 k^4/27) psi on the round 7-sphere: -(9/4) k^-2.
template <class S>
S s7_pairing_scale(const S& kappa) {
  if (ScalarOps<S>::is_zero(kappa)) throw std::domain_error("s7_pairing_scale: kappa = 0");
  return ScalarOps<S>::fraction(-9, 4) / (kappa * kappa);
}

}  // namespace g2kit
