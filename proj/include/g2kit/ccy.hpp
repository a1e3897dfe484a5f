#pragma once

#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "g2kit/generalized.hpp"

namespace g2kit {

// Contact Calabi-Yau coframe: labels f0..f6 stand for (e0, e1..e3, Je1..Je3).
// Internally the labels interleave into the exterior-kernel slots so that
// the coframe volume f0 ∧ omega^3/3! is +e^{1234567}:
//   f0->1, e1->2, Je1->3, e2->4, Je2->5, e3->6, Je3->7.
inline constexpr std::array<int, 7> kCoframeSlot{1, 2, 4, 6, 3, 5, 7};

template <class S>
Form<S> coframe_1form(int label) {
  if (label < 0 || label > 6) throw std::out_of_range("coframe label out of 0..6");
  return Form<S>::basis(bit_of(kCoframeSlot[label]));
}

template <class S>
struct Su3CoframeForms {
  Form<S> omega{2};
  Form<S> re_omega{3};
  Form<S> im_omega{3};
};

/// omega = sum e^a ∧ Je^a and Omega = (e^1 + i Je^1)∧(e^2 + i Je^2)∧(e^3 + i Je^3),
/// expanded exactly over the coframe.
template <class S>
Su3CoframeForms<S> su3_coframe_forms() {
  Su3CoframeForms<S> out;
  for (int a = 1; a <= 3; ++a)
    out.omega += wedge(coframe_1form<S>(a), coframe_1form<S>(3 + a));
  Form<S> re(0), im(0);
  re.set(0, ScalarOps<S>::one());
  for (int a = 1; a <= 3; ++a) {
    Form<S> ea = coframe_1form<S>(a), jea = coframe_1form<S>(3 + a);
    Form<S> re_next = wedge(re, ea) - wedge(im, jea);
    Form<S> im_next = wedge(re, jea) + wedge(im, ea);
    re = re_next;
    im = im_next;
  }
  out.re_omega = re;
  out.im_omega = im;
  return out;
}

/// phi = f0 ∧ omega + ReOmega, psi = (1/2) omega^2 - f0 ∧ ImOmega; an
/// orthonormal-coframe G2-structure for every fiber scale.
template <class S>
G2Model<S> g2_eps() {
  auto su3 = su3_coframe_forms<S>();
  Form<S> f0 = coframe_1form<S>(0);
  Form<S> phi = wedge(f0, su3.omega) + su3.re_omega;
  Form<S> psi = wedge(su3.omega, su3.omega) * ScalarOps<S>::fraction(1, 2) -
                wedge(f0, su3.im_omega);
  return G2Model<S>{phi, psi};
}

/// Torsion triple of the fiber-scaled structure, in coframe coordinates
/// (eta ∧ omega enters as (1/eps) f0 ∧ omega):
///   tau0 = (6/7) eps, tau1 = 0, tau3 = (8/7) eps f0∧omega - (6/7) eps ReOmega.
template <class S>
TorsionTriple<S> torsion_eps(const S& eps) {
  if (!(ScalarOps<S>::to_double(eps) > 0.0)) throw std::domain_error("torsion_eps: eps <= 0");
  auto su3 = su3_coframe_forms<S>();
  TorsionTriple<S> t;
  t.tau0 = eps * ScalarOps<S>::fraction(6, 7);
  t.tau3 = wedge(coframe_1form<S>(0), su3.omega) * (eps * ScalarOps<S>::fraction(8, 7)) -
           su3.re_omega * (eps * ScalarOps<S>::fraction(6, 7));
  return t;
}

/// 7x7 matrix of forms over the coframe labels (block order e0; e; Je).
template <class S>
struct FormMatrix {
  std::array<std::array<Form<S>, 7>, 7> e;

  explicit FormMatrix(int grade = 1) {
    for (auto& row : e)
      for (auto& f : row) f = Form<S>(grade);
  }

  Form<S>& at(int p, int q) { return e.at(p).at(q); }
  const Form<S>& at(int p, int q) const { return e.at(p).at(q); }

  bool is_skew() const {
    for (int p = 0; p < 7; ++p)
      for (int q = 0; q < 7; ++q)
        if (e[p][q] != -e[q][p]) return false;
    return true;
  }

  double sup_norm() const {
    double best = 0.0;
    for (const auto& row : e)
      for (const auto& f : row) best = std::max(best, g2kit::sup_norm(f));
    return best;
  }
};

/// [(v1 v2 v3)^T] = (0 v3 -v2; -v3 0 v1; v2 -v1 0).
template <class S>
std::array<std::array<Form<S>, 3>, 3> box3(const std::array<Form<S>, 3>& v) {
  for (const auto& f : v)
    if (f.grade() != 1) throw std::invalid_argument("box3: expects 1-forms");
  Form<S> z(1);
  return {{{z, v[2], -v[1]}, {-v[2], z, v[0]}, {v[1], -v[0], z}}};
}

/// Connection-family parameters (eps > 0, k != 0).
template <class S>
struct CCYParams {
  S eps = ScalarOps<S>::one();
  S k = ScalarOps<S>::one();
  S delta = ScalarOps<S>::zero();
  S m = ScalarOps<S>::zero();

  void validate() const {
    if (!(ScalarOps<S>::to_double(eps) > 0.0)) throw std::domain_error("CCYParams: eps <= 0");
    if (ScalarOps<S>::is_zero(k)) throw std::domain_error("CCYParams: k = 0");
  }
};

template <class S>
struct ConnectionMatrices {
  FormMatrix<S> B{1};
  FormMatrix<S> C{1};
  FormMatrix<S> Iconst{0};  // constant entries, stored as 0-forms
  FormMatrix<S> M{1};
};

/// The coframe matrices B, C, I and the deviation block M^delta_m.
template <class S>
ConnectionMatrices<S> matrices_BCIM(const CCYParams<S>& p) {
  ConnectionMatrices<S> out;
  std::array<Form<S>, 3> ef, jef;
  for (int a = 0; a < 3; ++a) {
    ef[a] = coframe_1form<S>(1 + a);
    jef[a] = coframe_1form<S>(4 + a);
  }
  Form<S> f0 = coframe_1form<S>(0);
  Form<S> one(0);
  one.set(0, ScalarOps<S>::one());

  // I = (0 0 0; 0 0 -I; 0 I 0)
  for (int a = 0; a < 3; ++a) {
    out.Iconst.at(1 + a, 4 + a) = -one;
    out.Iconst.at(4 + a, 1 + a) = one;
  }

  // B = (0 Je^T -e^T; -Je 0 -e0 I; e e0 I 0)
  for (int a = 0; a < 3; ++a) {
    out.B.at(0, 1 + a) = jef[a];
    out.B.at(0, 4 + a) = -ef[a];
    out.B.at(1 + a, 0) = -jef[a];
    out.B.at(4 + a, 0) = ef[a];
    out.B.at(1 + a, 4 + a) = -f0;
    out.B.at(4 + a, 1 + a) = f0;
  }

  // C = (0 Je^T -e^T; -Je -[e] [Je]; e [Je] [e]) - e0 I
  auto be = box3(ef), bje = box3(jef);
  for (int a = 0; a < 3; ++a) {
    out.C.at(0, 1 + a) = jef[a];
    out.C.at(0, 4 + a) = -ef[a];
    out.C.at(1 + a, 0) = -jef[a];
    out.C.at(4 + a, 0) = ef[a];
    for (int b = 0; b < 3; ++b) {
      out.C.at(1 + a, 1 + b) = -be[a][b];
      out.C.at(1 + a, 4 + b) = bje[a][b];
      out.C.at(4 + a, 1 + b) = bje[a][b];
      out.C.at(4 + a, 4 + b) = be[a][b];
    }
    out.C.at(1 + a, 4 + a) += f0;
    out.C.at(4 + a, 1 + a) -= f0;
  }

  // M^delta_m: c1 = (1+m-5 delta)(1+delta), c2 = delta^2 - 2(2+m) delta - 1
  S one_s = ScalarOps<S>::one();
  S c1 = (one_s + p.m - ScalarOps<S>::from_long(5) * p.delta) * (one_s + p.delta);
  S c2 = p.delta * p.delta - ScalarOps<S>::from_long(2) * (ScalarOps<S>::from_long(2) + p.m) * p.delta -
         one_s;
  for (int a = 0; a < 3; ++a) {
    out.M.at(0, 1 + a) = ef[a] * c1;
    out.M.at(0, 4 + a) = jef[a] * c1;
    out.M.at(1 + a, 0) = -(ef[a] * c1);
    out.M.at(4 + a, 0) = -(jef[a] * c1);
    for (int b = 0; b < 3; ++b) {
      out.M.at(1 + a, 1 + b) = bje[a][b] * c2;
      out.M.at(1 + a, 4 + b) = be[a][b] * c2;
      out.M.at(4 + a, 1 + b) = be[a][b] * c2;
      out.M.at(4 + a, 4 + b) = -(bje[a][b] * c2);
    }
  }
  return out;
}

/// First-term coefficient of the instanton deviation:
/// k eps^2 (6(1 - delta + m) + k (1 - delta)(1 + 3 delta)) / 4.
template <class S>
S deviation_first_coefficient(const CCYParams<S>& p) {
  S one = ScalarOps<S>::one();
  S poly = ScalarOps<S>::from_long(6) * (one - p.delta + p.m) +
           p.k * (one - p.delta) * (one + ScalarOps<S>::from_long(3) * p.delta);
  return p.k * p.eps * p.eps * poly * ScalarOps<S>::fraction(1, 4);
}

/// Normalization of the second deviation term. `e0` absorbs the fiber scale
/// (eta replaced by f0 = eps eta), giving coefficient k^2 eps^2 / 4; `eta`
/// keeps the literal eta = f0/eps, giving k^2 eps / 4. Only `e0` makes all
/// three small-parameter regimes quadratic (see README).
enum class DeviationNormalization { e0, eta };

/// R ∧ psi as a skew matrix of 6-forms over the coframe labels.
template <class S>
FormMatrix<S> deviation(const CCYParams<S>& p,
                        DeviationNormalization norm = DeviationNormalization::e0) {
  p.validate();
  auto su3 = su3_coframe_forms<S>();
  auto mats = matrices_BCIM(p);
  Form<S> vol6 = wedge(su3.omega, wedge(su3.omega, su3.omega)) * ScalarOps<S>::fraction(1, 6);
  Form<S> half_om2_f0 =
      wedge(coframe_1form<S>(0), wedge(su3.omega, su3.omega)) * ScalarOps<S>::fraction(1, 2);
  S c_first = deviation_first_coefficient(p);
  S c_second = p.k * p.k * p.eps * ScalarOps<S>::fraction(1, 4);
  if (norm == DeviationNormalization::e0) c_second *= p.eps;
  FormMatrix<S> out(6);
  for (int q = 0; q < 7; ++q)
    for (int r = 0; r < 7; ++r) {
      Form<S> entry = wedge(mats.Iconst.at(q, r), vol6) * c_first;
      entry += wedge(half_om2_f0, mats.M.at(q, r)) * c_second;
      out.at(q, r) = entry;
    }
  return out;
}

/// |T|^2 = (1/2) sum_{p,q} |T_pq|^2 with the per-entry Hodge norm.
template <class S>
S matrix_norm2(const FormMatrix<S>& t) {
  S acc = ScalarOps<S>::zero();
  for (int p = 0; p < 7; ++p)
    for (int q = 0; q < 7; ++q) acc += norm2(t.at(p, q));
  return acc * ScalarOps<S>::fraction(1, 2);
}

template <class S>
S deviation_norm2(const CCYParams<S>& p,
                  DeviationNormalization norm = DeviationNormalization::e0) {
  return matrix_norm2(deviation(p, norm));
}

inline double deviation_norm(const CCYParams<double>& p,
                             DeviationNormalization norm = DeviationNormalization::e0) {
  return std::sqrt(deviation_norm2(p, norm));
}

/// Parameter regimes tying (eps, k) to the expansion scale alpha:
///   case 1: delta outside {0,-1}, m = delta-1, k^2 = alpha^-3,
///           eps^2 = 8 alpha^5 / (delta^2 (1+delta)^2)
///   case 2: delta = 0, m < -1, k = alpha^-3,
///           eps^2 = -8 alpha^8 / ((1+m)(1+3 alpha^3))
///   case 3: delta = -1, m > -2, k = alpha^-3,
///           eps^2 = 8 alpha^8 / ((2+m)(4-3 alpha^3))
inline CCYParams<double> regime_params(int case_id, double delta, double m, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("regime_params: requires alpha > 0");
  CCYParams<double> p;
  switch (case_id) {
    case 1: {
      if (delta == 0.0 || delta == -1.0)
        throw std::domain_error("regime_params case 1: requires delta not in {0, -1}");
      p.delta = delta;
      p.m = delta - 1.0;
      p.k = std::pow(alpha, -1.5);
      p.eps = std::sqrt(8.0 / (delta * delta * (1.0 + delta) * (1.0 + delta))) *
              std::pow(alpha, 2.5);
      break;
    }
    case 2: {
      if (!(m < -1.0)) throw std::domain_error("regime_params case 2: requires m < -1");
      p.delta = 0.0;
      p.m = m;
      p.k = std::pow(alpha, -3.0);
      p.eps = std::sqrt(-8.0 * std::pow(alpha, 8.0) / ((1.0 + m) * (1.0 + 3.0 * std::pow(alpha, 3.0))));
      break;
    }
    case 3: {
      if (!(m > -2.0)) throw std::domain_error("regime_params case 3: requires m > -2");
      double denom = 4.0 - 3.0 * std::pow(alpha, 3.0);
      if (!(denom > 0.0)) throw std::domain_error("regime_params case 3: requires 4 - 3 alpha^3 > 0");
      p.delta = -1.0;
      p.m = m;
      p.k = std::pow(alpha, -3.0);
      p.eps = std::sqrt(8.0 * std::pow(alpha, 8.0) / ((2.0 + m) * denom));
      break;
    }
    default:
      throw std::domain_error("regime_params: case must be 1, 2 or 3");
  }
  p.validate();
  return p;
}

struct SweepRow {
  double alpha = 0.0;
  double norm = 0.0;
  double norm_over_alpha2 = 0.0;
  double ym_residual = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double slope = 0.0;
  double limit_const = 0.0;
  double max_ym_residual = 0.0;
};

/// pi7 parts of the connection curvature, recovered from the deviation via
/// pi7 F = (1/3) psi ⌟ (F ∧ psi) (the 14-part drops out of F ∧ psi),
/// flattened into one Lie-valued 2-form over the 21 upper-triangle slots.
inline LieValuedForm<double> deviation_pi7_field(const FormMatrix<double>& dev,
                                                 const G2Model<double>& model) {
  LieValuedForm<double> f(LieCoeff<double>::euclidean(21), 2);
  int a = 0;
  for (int p = 0; p < 7; ++p)
    for (int q = p + 1; q < 7; ++q)
      f.comp(a++) = contract(model.psi, dev.at(p, q)) * (1.0 / 3.0);
  return f;
}

/// Least-squares slope of log(norm) against log(alpha).
inline double loglog_slope(const std::vector<SweepRow>& rows) {
  double n = static_cast<double>(rows.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    double x = std::log(r.alpha), y = std::log(r.norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Deviation-norm sweep over an alpha grid (strictly decreasing, >= 4
/// points), with the fitted log-log slope and the Yang--Mills identity
/// residual evaluated on the pi7 curvature data at every grid point.
/// Grid points are independent; `threads` caps the worker fan-out.
inline SweepResult scaling_sweep(int case_id, double delta, double m,
                                 const std::vector<double>& alpha_grid,
                                 DeviationNormalization norm = DeviationNormalization::e0,
                                 int threads = 1) {
  if (alpha_grid.size() < 4)
    throw std::invalid_argument("scaling_sweep: need at least 4 grid points");
  for (size_t i = 0; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i] > 0.0))
      throw std::invalid_argument("scaling_sweep: grid values must be positive");
    if (i > 0 && !(alpha_grid[i] < alpha_grid[i - 1]))
      throw std::invalid_argument("scaling_sweep: grid must be strictly decreasing");
  }
  SweepResult out;
  out.rows.resize(alpha_grid.size());
  auto eval_point = [&](size_t i) {
    double alpha = alpha_grid[i];
    CCYParams<double> p = regime_params(case_id, delta, m, alpha);
    G2Model<double> model = g2_eps<double>();
    FormMatrix<double> dev = deviation(p, norm);
    SweepRow row;
    row.alpha = alpha;
    row.norm = std::sqrt(matrix_norm2(dev));
    row.norm_over_alpha2 = row.norm / (alpha * alpha);
    LieValuedForm<double> f = deviation_pi7_field(dev, model);
    TorsionTriple<double> t = torsion_eps(p.eps);
    row.ym_residual = ym_algebraic_identity(f, t, model, 1e-9).sup_norm();
    out.rows[i] = row;
  };
  int workers = std::max(1, std::min<int>(threads, static_cast<int>(alpha_grid.size())));
  if (workers == 1) {
    for (size_t i = 0; i < alpha_grid.size(); ++i) eval_point(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (size_t i = static_cast<size_t>(w); i < alpha_grid.size(); i += workers)
          eval_point(i);
      });
    for (auto& th : pool) th.join();
  }
  out.slope = loglog_slope(out.rows);
  const SweepRow& last = out.rows.back();
  out.limit_const = last.norm_over_alpha2;
  for (const auto& r : out.rows) out.max_ym_residual = std::max(out.max_ym_residual, r.ym_residual);
  return out;
}

/// Log-spaced strictly decreasing grid from alpha_max down to alpha_min.
inline std::vector<double> log_grid(double alpha_min, double alpha_max, int points) {
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min))
    throw std::invalid_argument("log_grid: need 0 < alpha_min < alpha_max");
  if (points < 2) throw std::invalid_argument("log_grid: need at least 2 points");
  std::vector<double> g(points);
  double lo = std::log(alpha_min), hi = std::log(alpha_max);
  for (int i = 0; i < points; ++i)
    g[i] = std::exp(hi + (lo - hi) * static_cast<double>(i) / (points - 1));
  return g;
}

}  // namespace g2kit
