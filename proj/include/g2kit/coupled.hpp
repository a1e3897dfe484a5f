#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "g2kit/generalized.hpp"
#include "g2kit/rng.hpp"
#include "g2kit/spin.hpp"

namespace g2kit {

inline constexpr int kNumPairs = 21;

/// Sorted index pairs (i < j) in lexicographic order.
inline const std::array<std::pair<int, int>, kNumPairs>& index_pairs() {
  static const auto pairs = [] {
    std::array<std::pair<int, int>, kNumPairs> p{};
    int q = 0;
    for (int i = 1; i <= kDim; ++i)
      for (int j = i + 1; j <= kDim; ++j) p[q++] = {i, j};
    return p;
  }();
  return pairs;
}

inline int pair_index(int i, int j) {
  if (i == j || i < 1 || j < 1 || i > kDim || j > kDim)
    throw std::invalid_argument("pair_index: bad pair");
  if (i > j) std::swap(i, j);
  // offset of row i plus position of j within it
  return (i - 1) * kDim - (i * (i - 1)) / 2 + (j - i - 1);
}

/// Curvature-type tensor R(X,Y,Z,W), antisymmetric in (X,Y) and in (Z,W),
/// stored as a 21x21 array over sorted pairs: rows are the 2-form direction
/// pair (i,j), columns the endomorphism pair (k,l), entry g(R(e_i,e_j)e_k, e_l).
template <class S>
class CurvatureTensor {
public:
  CurvatureTensor() {
    for (auto& row : m_) row.fill(ScalarOps<S>::zero());
  }

  S& entry(int dir_pair, int endo_pair) { return m_.at(dir_pair).at(endo_pair); }
  const S& entry(int dir_pair, int endo_pair) const { return m_.at(dir_pair).at(endo_pair); }

  S at(int i, int j, int k, int l) const {
    if (i == j || k == l) return ScalarOps<S>::zero();
    S v = entry(pair_index(i, j), pair_index(k, l));
    if (i > j) v = -v;
    if (k > l) v = -v;
    return v;
  }

  /// The endomorphism 2-form (k,l) -> R(e_i, e_j, e_k, e_l) of one direction pair.
  Form<S> endo_slice(int dir_pair) const {
    Form<S> out(2);
    for (int q = 0; q < kNumPairs; ++q) {
      auto [k, l] = index_pairs()[q];
      out.set(static_cast<Mask>(bit_of(k) | bit_of(l)), entry(dir_pair, q));
    }
    return out;
  }
  void set_endo_slice(int dir_pair, const Form<S>& f) {
    for (int q = 0; q < kNumPairs; ++q) {
      auto [k, l] = index_pairs()[q];
      entry(dir_pair, q) = f.coeff(static_cast<Mask>(bit_of(k) | bit_of(l)));
    }
  }

  /// The 2-form (i,j) -> R(e_i, e_j, e_k, e_l) of one endomorphism pair.
  Form<S> form_slice(int endo_pair) const {
    Form<S> out(2);
    for (int q = 0; q < kNumPairs; ++q) {
      auto [i, j] = index_pairs()[q];
      out.set(static_cast<Mask>(bit_of(i) | bit_of(j)), entry(q, endo_pair));
    }
    return out;
  }

  CurvatureTensor transposed_pairs() const {
    CurvatureTensor out;
    for (int p = 0; p < kNumPairs; ++p)
      for (int q = 0; q < kNumPairs; ++q) out.entry(p, q) = entry(q, p);
    return out;
  }

  CurvatureTensor& operator-=(const CurvatureTensor& o) {
    for (int p = 0; p < kNumPairs; ++p)
      for (int q = 0; q < kNumPairs; ++q) entry(p, q) -= o.entry(p, q);
    return *this;
  }
  CurvatureTensor& operator+=(const CurvatureTensor& o) {
    for (int p = 0; p < kNumPairs; ++p)
      for (int q = 0; q < kNumPairs; ++q) entry(p, q) += o.entry(p, q);
    return *this;
  }
  friend CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b) { return a -= b; }
  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
  friend bool operator==(const CurvatureTensor& a, const CurvatureTensor& b) {
    return a.m_ == b.m_;
  }

  bool is_zero() const {
    for (const auto& row : m_)
      for (const auto& v : row)
        if (!ScalarOps<S>::is_zero(v)) return false;
    return true;
  }

  double sup_norm() const {
    double best = 0.0;
    for (const auto& row : m_)
      for (const auto& v : row)
        best = std::max(best, std::fabs(ScalarOps<S>::to_double(v)));
    return best;
  }

private:
  std::array<std::array<S, kNumPairs>, kNumPairs> m_;
};

/// 4-form as a symmetric pair-pair matrix D[(ij)][(kl)] = dH(e_i,e_j,e_k,e_l).
template <class S>
CurvatureTensor<S> pair_matrix_of_4form(const Form<S>& dh) {
  if (dh.grade() != 4) throw std::invalid_argument("pair_matrix_of_4form: expects a 4-form");
  CurvatureTensor<S> out;
  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = index_pairs()[p];
    for (int q = 0; q < kNumPairs; ++q) {
      auto [k, l] = index_pairs()[q];
      out.entry(p, q) = dh.at({i, j, k, l});
    }
  }
  return out;
}

/// R- from R+ and dH via
///   g(R+(X,Y)Z,W) = g(R-(Z,W)X,Y) + (1/2) dH(X,Y,Z,W).
template <class S>
CurvatureTensor<S> rminus_from_rplus(const CurvatureTensor<S>& rplus, const Form<S>& dh) {
  CurvatureTensor<S> out = rplus.transposed_pairs();
  CurvatureTensor<S> d = pair_matrix_of_4form(dh);
  S half = ScalarOps<S>::fraction(1, 2);
  for (int p = 0; p < kNumPairs; ++p)
    for (int q = 0; q < kNumPairs; ++q) out.entry(p, q) -= half * d.entry(p, q);
  return out;
}

/// Inverse direction of the same symmetry (dH flips sign with H).
template <class S>
CurvatureTensor<S> rplus_from_rminus(const CurvatureTensor<S>& rminus, const Form<S>& dh) {
  CurvatureTensor<S> out = rminus.transposed_pairs();
  CurvatureTensor<S> d = pair_matrix_of_4form(dh);
  S half = ScalarOps<S>::fraction(1, 2);
  for (int p = 0; p < kNumPairs; ++p)
    for (int q = 0; q < kNumPairs; ++q) out.entry(p, q) += half * d.entry(p, q);
  return out;
}

/// <F ∧ G> = sum_a eps_a F_a ∧ G_a.
template <class S>
Form<S> lie_wedge_pairing(const LieValuedForm<S>& f, const LieValuedForm<S>& g) {
  if (f.lie() != g.lie()) throw std::invalid_argument("lie_wedge_pairing: Lie space mismatch");
  Form<S> out(f.grade() + g.grade());
  for (int a = 0; a < f.dim(); ++a) {
    Form<S> w = wedge(f.comp(a), g.comp(a));
    out += f.lie().signs[a] > 0 ? w : -w;
  }
  return out * f.lie().scale;
}

/// F†∧F block of the coupled curvature, in curvature-tensor layout:
///   entry[(i,j)][(k,l)] = <F(e_j,e_l), F(e_i,e_k)> - <F(e_i,e_l), F(e_j,e_k)>.
template <class S>
CurvatureTensor<S> fdagger_wedge_f(const LieValuedForm<S>& f) {
  if (f.grade() != 2) throw std::invalid_argument("fdagger_wedge_f: expects 2-forms");
  CurvatureTensor<S> out;
  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = index_pairs()[p];
    for (int q = 0; q < kNumPairs; ++q) {
      auto [k, l] = index_pairs()[q];
      out.entry(p, q) = f.lie().pairing(f.value_at({j, l}), f.value_at({i, k})) -
                        f.lie().pairing(f.value_at({i, l}), f.value_at({j, k}));
    }
  }
  return out;
}

/// F∧F† block, one 2-form per Lie index pair (l, k):
///   h^l_k = sum_j (e_j ⌟ F^l) ∧ (e_j ⌟ F_k),  F_k = eps_k scale F^k.
template <class S>
std::vector<std::vector<Form<S>>> f_wedge_fdagger(const LieValuedForm<S>& f) {
  if (f.grade() != 2) throw std::invalid_argument("f_wedge_fdagger: expects 2-forms");
  int p = f.dim();
  std::vector<std::vector<Form<S>>> h(p, std::vector<Form<S>>(p, Form<S>(2)));
  for (int l = 0; l < p; ++l)
    for (int k = 0; k < p; ++k) {
      Form<S> acc(2);
      for (int j = 1; j <= kDim; ++j) {
        Vector<S> ej = Vector<S>::basis(j);
        acc += wedge(interior(ej, f.comp(l)), interior(ej, f.comp(k)));
      }
      acc *= f.lie().scale;
      h[l][k] = f.lie().signs[k] > 0 ? acc : -acc;
    }
  return h;
}

/// The I-block of the coupled curvature: per direction Z = e_c and Lie
/// coordinate, the 2-form
///   I(X,Y,Z) = (grad^- F)(X,Y,Z) + F(X, H(Y,Z,.)#) - F(Y, H(X,Z,.)#),
/// where grad^- differs from the supplied grad^{theta,g} tensor by the
/// -H/2 connection correction. Coincides with grad^{theta,+} F.
template <class S>
std::vector<LieValuedForm<S>> i_block(const std::vector<LieValuedForm<S>>& grad_f,
                                      const LieValuedForm<S>& f, const Form<S>& h) {
  if (static_cast<int>(grad_f.size()) != kDim)
    throw std::invalid_argument("i_block: gradF must have 7 direction slots");
  std::vector<LieValuedForm<S>> out(kDim, LieValuedForm<S>(f.lie(), 2));
  S half = ScalarOps<S>::fraction(1, 2);
  for (int c = 1; c <= kDim; ++c) {
    LieValuedForm<S> block(f.lie(), 2);
    for (int a = 0; a < f.dim(); ++a) {
      const Form<S>& fa = f.comp(a);
      Form<S> res(2);
      for (int pi = 0; pi < kNumPairs; ++pi) {
        auto [i, j] = index_pairs()[pi];
        S v = grad_f[c - 1].comp(a).at({i, j});
        S corr = ScalarOps<S>::zero();
        for (int b = 1; b <= kDim; ++b) {
          // grad^- correction
          corr += half * (h.at({c, i, b}) * fa.at({b, j}) + h.at({c, j, b}) * fa.at({i, b}));
          // lemma's H-contraction terms
          corr += h.at({j, c, b}) * fa.at({i, b}) - h.at({i, c, b}) * fa.at({j, b});
        }
        res.set(static_cast<Mask>(bit_of(i) | bit_of(j)), v + corr);
      }
      block.comp(a) = res;
    }
    out[c - 1] = block;
  }
  return out;
}

/// Independent route: grad^{theta,+} F from the same inputs.
template <class S>
std::vector<LieValuedForm<S>> grad_plus_f(const std::vector<LieValuedForm<S>>& grad_f,
                                          const LieValuedForm<S>& f, const Form<S>& h) {
  if (static_cast<int>(grad_f.size()) != kDim)
    throw std::invalid_argument("grad_plus_f: gradF must have 7 direction slots");
  std::vector<LieValuedForm<S>> out(kDim, LieValuedForm<S>(f.lie(), 2));
  S half = ScalarOps<S>::fraction(1, 2);
  for (int c = 1; c <= kDim; ++c) {
    LieValuedForm<S> block(f.lie(), 2);
    for (int a = 0; a < f.dim(); ++a) {
      const Form<S>& fa = f.comp(a);
      Form<S> res(2);
      for (int pi = 0; pi < kNumPairs; ++pi) {
        auto [i, j] = index_pairs()[pi];
        S corr = ScalarOps<S>::zero();
        for (int b = 1; b <= kDim; ++b)
          corr -= half * (h.at({c, i, b}) * fa.at({b, j}) + h.at({c, j, b}) * fa.at({i, b}));
        res.set(static_cast<Mask>(bit_of(i) | bit_of(j)),
                grad_f[c - 1].comp(a).at({i, j}) + corr);
      }
      block.comp(a) = res;
    }
    out[c - 1] = block;
  }
  return out;
}

/// Bismut--Ricci form rho(X,Y) = (1/2) sum_j (R+(X,Y) e_j) x e_j, stored as
/// rho[l][(ij)]. Annihilates curvature tensors with g2-valued endo slices.
template <class S>
std::array<Form<S>, kDim + 1> rho_bismut(const CurvatureTensor<S>& rplus,
                                         const G2Model<S>& model = G2Model<S>::flat()) {
  std::array<Form<S>, kDim + 1> rho;
  for (auto& f : rho) f = Form<S>(2);
  S half = ScalarOps<S>::fraction(1, 2);
  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = index_pairs()[p];
    // R+(e_i, e_j) e_b = sum_k R(i,j,b,k) e_k
    Vector<S> acc;  // rho(e_i, e_j)
    for (int b = 1; b <= kDim; ++b) {
      Vector<S> rb;
      for (int k = 1; k <= kDim; ++k) rb[k] = rplus.at(i, j, b, k);
      Vector<S> c = cross(rb, Vector<S>::basis(b), model);
      for (int k = 1; k <= kDim; ++k) acc[k] += c[k];
    }
    Mask m = static_cast<Mask>(bit_of(i) | bit_of(j));
    for (int l = 1; l <= kDim; ++l) rho[l].set(m, half * acc[l]);
  }
  return rho;
}

/// Pointwise data for the coupled-instanton system.
template <class S>
struct CoupledInputs {
  explicit CoupledInputs(LieCoeff<S> lie = LieCoeff<S>::euclidean(1))
      : F(lie, 2), gradF(kDim, LieValuedForm<S>(lie, 2)) {}

  CurvatureTensor<S> Rplus;
  LieValuedForm<S> F;
  std::vector<LieValuedForm<S>> gradF;
  Form<S> H{3};
  Form<S> dH{4};
};

/// The four coupled-instanton residuals. The Lie coefficients carry no
/// bracket (abelian model), so the commutator term of the third equation
/// vanishes identically and its quadratic part is evaluated in full.
template <class S>
struct CoupledResiduals {
  std::array<Form<S>, kDim + 1> bismut;        // rho + <F,(F⌟phi)#> per output leg
  std::vector<LieValuedForm<S>> instanton;     // (grad+ F)⌟phi per direction
  std::vector<std::vector<Form<S>>> quadratic; // -(F∧F†)^l_k ⌟ phi as 1-forms
  Form<S> bianchi{4};                          // dH - <F∧F>

  double sup_norm() const {
    double best = 0.0;
    for (const auto& f : bismut) best = std::max(best, g2kit::sup_norm(f));
    for (const auto& lf : instanton) best = std::max(best, lf.sup_norm());
    for (const auto& row : quadratic)
      for (const auto& f : row) best = std::max(best, g2kit::sup_norm(f));
    return std::max(best, g2kit::sup_norm(bianchi));
  }
};

template <class S>
CoupledResiduals<S> coupled_residuals(const CoupledInputs<S>& in,
                                      const G2Model<S>& model = G2Model<S>::flat()) {
  CoupledResiduals<S> out;
  // rho(phi,H) + <F, (F⌟phi)#>
  out.bismut = rho_bismut(in.Rplus, model);
  std::vector<Form<S>> fphi(in.F.dim());
  for (int a = 0; a < in.F.dim(); ++a) fphi[a] = contract(in.F.comp(a), model.phi);
  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = index_pairs()[p];
    Mask m = static_cast<Mask>(bit_of(i) | bit_of(j));
    for (int l = 1; l <= kDim; ++l) {
      S acc = ScalarOps<S>::zero();
      for (int a = 0; a < in.F.dim(); ++a) {
        S term = in.F.comp(a).at({i, j}) * fphi[a].coeff(bit_of(l));
        acc += in.F.lie().signs[a] > 0 ? term : -term;
      }
      out.bismut[l].add(m, acc * in.F.lie().scale);
    }
  }
  // (grad+ F) ⌟ phi, via the I-block
  auto iblk = i_block(in.gradF, in.F, in.H);
  out.instanton.assign(kDim, LieValuedForm<S>(in.F.lie(), 1));
  for (int c = 0; c < kDim; ++c)
    for (int a = 0; a < in.F.dim(); ++a)
      out.instanton[c].comp(a) = contract(iblk[c].comp(a), model.phi);
  // [F⌟phi, .] - (F∧F†)⌟phi with abelian bracket
  auto h = f_wedge_fdagger(in.F);
  out.quadratic.assign(in.F.dim(), std::vector<Form<S>>(in.F.dim(), Form<S>(1)));
  for (int l = 0; l < in.F.dim(); ++l)
    for (int k = 0; k < in.F.dim(); ++k) out.quadratic[l][k] = -contract(h[l][k], model.phi);
  // dH - <F ∧ F>
  out.bianchi = in.dH - lie_wedge_pairing(in.F, in.F);
  return out;
}

/// Spinor-level residuals of the coupled system: Clifford action on eta0 of
/// every (R- - F†∧F) endo-pair slice and of every (F∧F†) Lie-pair slice.
template <class S>
struct SpinorResiduals {
  std::vector<Spinor<S>> curvature;  // 21 slices
  std::vector<Spinor<S>> gauge;      // dim^2 slices

  double sup_norm() const {
    double best = 0.0;
    for (const auto& s : curvature) best = std::max(best, s.sup_norm());
    for (const auto& s : gauge) best = std::max(best, s.sup_norm());
    return best;
  }
  bool all_zero() const {
    for (const auto& s : curvature)
      if (!s.is_zero()) return false;
    for (const auto& s : gauge)
      if (!s.is_zero()) return false;
    return true;
  }
};

template <class S>
SpinorResiduals<S> spinor_coupled_check(const CurvatureTensor<S>& rminus,
                                        const LieValuedForm<S>& f) {
  SpinorResiduals<S> out;
  Spinor<S> eta0 = Spinor<S>::eta0();
  CurvatureTensor<S> block = rminus - fdagger_wedge_f(f);
  for (int q = 0; q < kNumPairs; ++q)
    out.curvature.push_back(act(block.form_slice(q), eta0));
  auto h = f_wedge_fdagger(f);
  for (const auto& row : h)
    for (const auto& piece : row) out.gauge.push_back(act(piece, eta0));
  return out;
}

/// Synthetic pointwise solution of the gravitino system: g2-valued R+ and F,
/// dH = <F∧F>, R- through the curvature symmetry. Guarantees the hypotheses
/// exactly in exact arithmetic.
template <class S>
struct GravitinoSample {
  CurvatureTensor<S> Rplus;
  CurvatureTensor<S> Rminus;
  LieValuedForm<S> F;
  Form<S> H{3};
  Form<S> dH{4};
  std::vector<LieValuedForm<S>> gradF;

  static GravitinoSample random(Rng& rng, const LieCoeff<S>& lie, bool with_grad = false) {
    GravitinoSample s;
    const auto& basis = lambda2_14_basis<S>();
    auto random_g2_form = [&] {
      Form<S> f(2);
      for (const auto& b : basis) f += b * rng.next_scalar<S>();
      return f;
    };
    for (int p = 0; p < kNumPairs; ++p) s.Rplus.set_endo_slice(p, random_g2_form());
    s.F = LieValuedForm<S>(lie, 2);
    for (int a = 0; a < lie.dim(); ++a) s.F.comp(a) = random_g2_form();
    s.dH = lie_wedge_pairing(s.F, s.F);
    s.Rminus = rminus_from_rplus(s.Rplus, s.dH);
    s.gradF.assign(kDim, LieValuedForm<S>(lie, 2));
    if (with_grad) {
      // nonzero H, with gradF solved so that grad+ F is pi14-valued: pick
      // the target slices and undo the H-correction of grad+
      s.H = rng.next_form<S>(3);
      std::vector<LieValuedForm<S>> target(kDim, LieValuedForm<S>(lie, 2));
      for (int c = 0; c < kDim; ++c)
        for (int a = 0; a < lie.dim(); ++a)
          target[c].comp(a) = decompose2(rng.next_form<S>(2)).pi14;
      std::vector<LieValuedForm<S>> zero_grad(kDim, LieValuedForm<S>(lie, 2));
      auto correction = grad_plus_f(zero_grad, s.F, s.H);
      for (int c = 0; c < kDim; ++c)
        for (int a = 0; a < lie.dim(); ++a)
          s.gradF[c].comp(a) = target[c].comp(a) - correction[c].comp(a);
    }
    return s;
  }

  CoupledInputs<S> inputs() const {
    CoupledInputs<S> in(F.lie());
    in.Rplus = Rplus;
    in.F = F;
    in.gradF = gradF;
    in.H = H;
    in.dH = dH;
    return in;
  }
};

/// Rank recursion r_k = n + r_{k-1}(r_{k-1} - 1). Throws on int64 overflow,
/// reporting the last safe index.
inline std::vector<std::int64_t> tower_rank(std::int64_t n, std::int64_t r1, int depth) {
  if (n < 1 || r1 < 1 || depth < 1) throw std::invalid_argument("tower_rank: all args >= 1");
  std::vector<std::int64_t> out{r1};
  for (int k = 2; k <= depth; ++k) {
    std::int64_t prev = out.back(), prod = 0, next = 0;
    if (__builtin_mul_overflow(prev, prev - 1, &prod) || __builtin_add_overflow(n, prod, &next))
      throw std::overflow_error("tower_rank: overflow after index " + std::to_string(k - 1));
    out.push_back(next);
  }
  return out;
}

/// Doubled field (F, F) over the neutral pairing (+...+, -...-);
/// <double ∧ double> = 0 identically.
template <class S>
LieValuedForm<S> tower_double(const LieValuedForm<S>& f) {
  LieCoeff<S> doubled;
  doubled.scale = f.lie().scale;
  doubled.signs = f.lie().signs;
  for (int s : f.lie().signs) doubled.signs.push_back(-s);
  LieValuedForm<S> out(doubled, f.grade());
  for (int a = 0; a < f.dim(); ++a) {
    out.comp(a) = f.comp(a);
    out.comp(a + f.dim()) = f.comp(a);
  }
  return out;
}

}  // namespace g2kit
