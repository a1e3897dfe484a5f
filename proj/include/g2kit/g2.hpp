#pragma once

#include <vector>

#include "g2kit/form.hpp"
#include "g2kit/matrix.hpp"

namespace g2kit {

/// A pointwise G2-structure with orthonormal induced metric: the pair
/// (phi, psi = *phi). The flat model carries
///   phi0 = e127 + e347 + e567 + e135 - e146 - e236 - e245,
/// and every decomposition below works verbatim for any other model whose
/// induced metric is the identity (e.g. the contact Calabi-Yau coframe form).
template <class S>
struct G2Model {
  Form<S> phi{3};
  Form<S> psi{4};

  static const G2Model& flat() {
    static const G2Model m = [] {
      Form<S> phi(3);
      auto one = ScalarOps<S>::one();
      phi.set(mask_of({1, 2, 7}), one);
      phi.set(mask_of({3, 4, 7}), one);
      phi.set(mask_of({5, 6, 7}), one);
      phi.set(mask_of({1, 3, 5}), one);
      phi.set(mask_of({1, 4, 6}), -one);
      phi.set(mask_of({2, 3, 6}), -one);
      phi.set(mask_of({2, 4, 5}), -one);
      return G2Model{phi, hodge(phi)};
    }();
    return m;
  }

  static G2Model from_phi(const Form<S>& phi) { return G2Model{phi, hodge(phi)}; }
};

/// g_phi(X,Y) = (i_X phi ∧ i_Y phi ∧ phi) / (6 vol), for an arbitrary 3-form.
/// Degenerate results are returned as-is.
template <class S>
Matrix7<S> metric_from_phi(const Form<S>& phi) {
  if (phi.grade() != 3) throw std::invalid_argument("metric_from_phi: expects a 3-form");
  Matrix7<S> g;
  S six = ScalarOps<S>::from_long(6);
  std::array<Form<S>, kDim + 1> slices;
  for (int i = 1; i <= kDim; ++i) slices[i] = interior(Vector<S>::basis(i), phi);
  for (int i = 1; i <= kDim; ++i)
    for (int j = i; j <= kDim; ++j) {
      Form<S> top = wedge(wedge(slices[i], slices[j]), phi);
      S v = top.coeff(kFullMask) / six;
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

/// Determinant by fraction-free elimination; exact on the rational backend.
template <class S>
S det7(Matrix7<S> m) {
  S det = ScalarOps<S>::one();
  for (int col = 1; col <= kDim; ++col) {
    int pivot = 0;
    for (int row = col; row <= kDim; ++row)
      if (!ScalarOps<S>::is_zero(m(row, col))) {
        pivot = row;
        break;
      }
    if (pivot == 0) return ScalarOps<S>::zero();
    if (pivot != col) {
      for (int j = 1; j <= kDim; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (int row = col + 1; row <= kDim; ++row) {
      S f = m(row, col) / m(col, col);
      for (int j = col; j <= kDim; ++j) m(row, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Degeneracy report for induced metrics (they are returned, never rejected).
template <class S>
bool metric_is_degenerate(const Matrix7<S>& g, double tol = ScalarOps<S>::zero_tol) {
  S d = det7(g);
  if (tol == 0.0) return ScalarOps<S>::is_zero(d);
  return std::fabs(ScalarOps<S>::to_double(d)) <= tol;
}

/// Vector cross product: g(X x Y, Z) = phi(X, Y, Z).
template <class S>
Vector<S> cross(const Vector<S>& x, const Vector<S>& y,
                const G2Model<S>& model = G2Model<S>::flat()) {
  return sharp(interior(y, interior(x, model.phi)));
}

/// Orthogonal pieces of a 2-form: pi7 + pi14 = b with
/// pi7 ⌟ psi = 2 pi7 and pi14 ⌟ psi = -pi14.
template <class S>
struct Decomp2 {
  Form<S> pi7{2};
  Form<S> pi14{2};
};

template <class S>
Decomp2<S> decompose2(const Form<S>& b, const G2Model<S>& model = G2Model<S>::flat()) {
  if (b.grade() != 2) throw std::invalid_argument("decompose2: expects a 2-form");
  S third = ScalarOps<S>::fraction(1, 3);
  Form<S> pi7 = (b + contract(b, model.psi)) * third;
  return Decomp2<S>{pi7, b - pi7};
}

/// Orthogonal pieces of a 3-form: the multiples of phi, the image of
/// X -> X ⌟ psi, and the 27-dimensional rest (wedge-annihilated by phi, psi).
template <class S>
struct Decomp3 {
  Form<S> pi1{3};
  Form<S> pi7{3};
  Form<S> pi27{3};
};

template <class S>
Decomp3<S> decompose3(const Form<S>& g3, const G2Model<S>& model = G2Model<S>::flat()) {
  if (g3.grade() != 3) throw std::invalid_argument("decompose3: expects a 3-form");
  Decomp3<S> d;
  d.pi1 = model.phi * (inner(g3, model.phi) / ScalarOps<S>::from_long(7));
  // (alpha ⌟ psi) ⌟ psi = -4 alpha under this contraction layout, so the
  // Lambda^3_7 reconstruction carries a -1/4.
  Form<S> beta = contract(g3, model.psi);
  d.pi7 = interior(sharp(beta), model.psi) * ScalarOps<S>::fraction(-1, 4);
  d.pi27 = g3 - d.pi1 - d.pi7;
  return d;
}

/// Torsion data (tau0, tau1, tau3) of an integrable structure; tau3 is
/// constrained to the 27-dimensional component.
template <class S>
struct TorsionTriple {
  S tau0 = ScalarOps<S>::zero();
  Form<S> tau1{1};
  Form<S> tau3{3};
};

template <class S>
bool in_lambda3_27(const Form<S>& g3, const G2Model<S>& model,
                   double tol = ScalarOps<S>::zero_tol) {
  Form<S> wphi = wedge(g3, model.phi);
  Form<S> wpsi = wedge(g3, model.psi);
  if (tol == 0.0) return wphi.is_zero() && wpsi.is_zero();
  return sup_norm(wphi) <= tol && sup_norm(wpsi) <= tol;
}

/// H = (1/6) tau0 phi - tau1 ⌟ psi - tau3. Rejects tau3 outside Lambda^3_27.
template <class S>
Form<S> assemble_H(const TorsionTriple<S>& t, const G2Model<S>& model = G2Model<S>::flat(),
                   double tau3_tol = ScalarOps<S>::zero_tol) {
  if (!in_lambda3_27(t.tau3, model, tau3_tol))
    throw std::invalid_argument("assemble_H: tau3 is not in Lambda^3_27");
  return model.phi * (t.tau0 * ScalarOps<S>::fraction(1, 6)) -
         interior(sharp(t.tau1), model.psi) - t.tau3;
}

/// Inverse of assemble_H through the Lambda^3 projections.
template <class S>
TorsionTriple<S> decompose_H(const Form<S>& h, const G2Model<S>& model = G2Model<S>::flat()) {
  if (h.grade() != 3) throw std::invalid_argument("decompose_H: expects a 3-form");
  TorsionTriple<S> t;
  t.tau0 = inner(h, model.phi) * ScalarOps<S>::fraction(6, 7);
  // h ⌟ psi = -(tau1 ⌟ psi) ⌟ psi = 4 tau1
  t.tau1 = contract(h, model.psi) * ScalarOps<S>::fraction(1, 4);
  t.tau3 = model.phi * (t.tau0 * ScalarOps<S>::fraction(1, 6)) -
           interior(sharp(t.tau1), model.psi) - h;
  return t;
}

/// sum_j (e_j ⌟ H) ∧ (e_j ⌟ phi); for H = H_phi this reproduces
/// tau0 psi + 3 tau1 ∧ phi + *tau3.
template <class S>
Form<S> dphi_from_H(const Form<S>& h, const G2Model<S>& model = G2Model<S>::flat()) {
  Form<S> out(4);
  for (int j = 1; j <= kDim; ++j) {
    Vector<S> ej = Vector<S>::basis(j);
    out += wedge(interior(ej, h), interior(ej, model.phi));
  }
  return out;
}

template <class S>
Form<S> torsion_dphi(const TorsionTriple<S>& t, const G2Model<S>& model = G2Model<S>::flat()) {
  return model.psi * t.tau0 + wedge(t.tau1, model.phi) * ScalarOps<S>::from_long(3) +
         hodge(t.tau3);
}

namespace detail {

/// Union of coefficient supports as an index mask.
template <class S>
Mask support_mask(std::initializer_list<const Form<S>*> forms) {
  Mask m = 0;
  for (const Form<S>* f : forms)
    for (const auto& [mask, c] : f->coeffs()) m |= mask;
  return m;
}

/// Grows a support to `want` indices using the highest unused ones, so that
/// vanishing input data still lands on a canonical coordinate block.
inline Mask pad_block(Mask support, int want) {
  for (int i = kDim; i >= 1 && grade_of(support) < want; --i) support |= bit_of(i);
  return support;
}

}  // namespace detail

/// phi = dx1 ∧ dx2 ∧ dx3 + dx1 ∧ omega + dx2 ∧ psiPlus - dx3 ∧ psiMinus for
/// SU(2) data living on a 4-dimensional coordinate block; the dx^i are the
/// complementary coordinates in increasing order.
template <class S>
Form<S> su2_to_g2(const Form<S>& omega, const Form<S>& psi_plus, const Form<S>& psi_minus) {
  if (omega.grade() != 2 || psi_plus.grade() != 2 || psi_minus.grade() != 2)
    throw std::invalid_argument("su2_to_g2: expects three 2-forms");
  Mask block = detail::pad_block(detail::support_mask<S>({&omega, &psi_plus, &psi_minus}), 4);
  if (grade_of(block) > 4)
    throw std::invalid_argument("su2_to_g2: data is not supported on a 4-dim block");
  auto dxs = indices_of(static_cast<Mask>(kFullMask & ~block));
  Form<S> dx1 = Form<S>::basis(bit_of(dxs[0]));
  Form<S> dx2 = Form<S>::basis(bit_of(dxs[1]));
  Form<S> dx3 = Form<S>::basis(bit_of(dxs[2]));
  return wedge(dx1, wedge(dx2, dx3)) + wedge(dx1, omega) + wedge(dx2, psi_plus) -
         wedge(dx3, psi_minus);
}

/// phi = omega ∧ dt + psiPlus and psi = (1/2) omega^2 + psiMinus ∧ dt for
/// SU(3) data on a 6-dimensional block, dt on the remaining coordinate.
template <class S>
G2Model<S> su3_to_g2(const Form<S>& omega, const Form<S>& psi_plus, const Form<S>& psi_minus) {
  if (omega.grade() != 2 || psi_plus.grade() != 3 || psi_minus.grade() != 3)
    throw std::invalid_argument("su3_to_g2: expects a 2-form and two 3-forms");
  Mask block = detail::pad_block(detail::support_mask<S>({&omega, &psi_plus, &psi_minus}), 6);
  if (grade_of(block) > 6)
    throw std::invalid_argument("su3_to_g2: data is not supported on a 6-dim block");
  Form<S> dt = Form<S>::basis(static_cast<Mask>(kFullMask & ~block));
  Form<S> phi = wedge(omega, dt) + psi_plus;
  Form<S> psi = wedge(omega, omega) * ScalarOps<S>::fraction(1, 2) + wedge(psi_minus, dt);
  return G2Model<S>{phi, psi};
}

/// Dimension of the span of a family of forms, by exact incremental
/// elimination (meaningful on the exact backend).
template <class S>
int rank_of(const std::vector<Form<S>>& family) {
  std::vector<Form<S>> rows;
  for (const auto& cand : family) {
    Form<S> r = cand;
    for (const auto& row : rows) {
      Mask pm = row.coeffs().begin()->first;
      S c = r.coeff(pm) / row.coeffs().begin()->second;
      if (!ScalarOps<S>::is_zero(c)) r -= row * c;
    }
    if (!r.is_zero()) rows.push_back(r);
  }
  return static_cast<int>(rows.size());
}

/// Basis of Lambda^2_14 = g2 for the flat model (14 integer-coefficient
/// forms, 3*pi14 of coordinate 2-forms), shared by curvature sampling.
template <class S>
const std::vector<Form<S>>& lambda2_14_basis() {
  static const std::vector<Form<S>> basis = [] {
    std::vector<Form<S>> out;
    std::vector<Form<S>> rows;
    for (Mask m : masks_of_grade(2)) {
      Form<S> cand = decompose2(Form<S>::basis(m) * ScalarOps<S>::from_long(3)).pi14;
      Form<S> r = cand;
      for (const auto& row : rows) {
        Mask pm = row.coeffs().begin()->first;
        S c = r.coeff(pm) / row.coeffs().begin()->second;
        if (!ScalarOps<S>::is_zero(c)) r -= row * c;
      }
      if (!r.is_zero()) {
        rows.push_back(r);
        out.push_back(cand);
      }
      if (out.size() == 14) break;
    }
    return out;
  }();
  return basis;
}

}  // namespace g2kit
