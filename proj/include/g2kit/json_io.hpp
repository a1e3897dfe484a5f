#pragma once

#include <string>

#include <json.hpp>

#include "g2kit/coupled.hpp"
#include "g2kit/generalized.hpp"
#include "g2kit/spin.hpp"

namespace g2kit {

using nlohmann::json;

// Scalars serialize as lowest-terms "p/q" strings on the exact backend and
// as plain numbers on f64. Canonical object-key order is lexicographic
// (nlohmann's default), so exact-backend round trips are bit-exact.

inline json scalar_to_json(const Rational& s) { return s.str(); }
inline json scalar_to_json(double s) { return s; }

template <class S>
S scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("exact scalar must be a \"p/q\" string");
}

template <>
inline double scalar_from_json<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return Rational::parse(j.get<std::string>()).to_double();
  throw std::invalid_argument("f64 scalar must be a number");
}

template <class S>
json form_to_json(const Form<S>& f) {
  json coeffs = json::object();
  for (const auto& [m, c] : f.coeffs()) coeffs[mask_key(m)] = scalar_to_json(c);
  return json{{"grade", f.grade()}, {"dim", kDim},
              {"backend", ScalarOps<S>::backend_name}, {"coeffs", coeffs}};
}

template <class S>
Form<S> form_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("form: expected a JSON object");
  if (j.value("dim", kDim) != kDim) throw std::invalid_argument("form: dim must be 7");
  std::string backend = j.value("backend", std::string(ScalarOps<S>::backend_name));
  if (backend != ScalarOps<S>::backend_name)
    throw std::invalid_argument("form: backend '" + backend + "' does not match the session ('" +
                                ScalarOps<S>::backend_name + "')");
  Form<S> f(j.at("grade").get<int>());
  for (const auto& [key, val] : j.at("coeffs").items()) {
    Mask m = parse_mask_key(key);
    if (grade_of(m) != f.grade())
      throw std::invalid_argument("form: key '" + key + "' has wrong grade");
    f.set(m, scalar_from_json<S>(val));
  }
  return f;
}

template <class S>
json torsion_to_json(const TorsionTriple<S>& t) {
  return json{{"tau0", scalar_to_json(t.tau0)}, {"tau1", form_to_json(t.tau1)},
              {"tau3", form_to_json(t.tau3)}};
}

template <class S>
TorsionTriple<S> torsion_from_json(const json& j) {
  TorsionTriple<S> t;
  t.tau0 = scalar_from_json<S>(j.at("tau0"));
  t.tau1 = form_from_json<S>(j.at("tau1"));
  t.tau3 = form_from_json<S>(j.at("tau3"));
  if (t.tau1.grade() != 1 || t.tau3.grade() != 3)
    throw std::invalid_argument("torsion triple: tau1 must be grade 1, tau3 grade 3");
  return t;
}

template <class S>
json spinor_to_json(const Spinor<S>& s) {
  json comps = json::array();
  for (int i = 1; i <= 8; ++i) comps.push_back(scalar_to_json(s[i]));
  return json{{"backend", ScalarOps<S>::backend_name}, {"components", comps}};
}

template <class S>
Spinor<S> spinor_from_json(const json& j) {
  const json& comps = j.at("components");
  if (!comps.is_array() || comps.size() != 8)
    throw std::invalid_argument("spinor: needs 8 components");
  Spinor<S> s;
  for (int i = 1; i <= 8; ++i) s[i] = scalar_from_json<S>(comps[i - 1]);
  return s;
}

template <class S>
json lie_to_json(const LieCoeff<S>& lie) {
  return json{{"dim", lie.dim()}, {"signs", lie.signs}, {"scale", scalar_to_json(lie.scale)}};
}

template <class S>
LieCoeff<S> lie_from_json(const json& j) {
  LieCoeff<S> lie;
  lie.signs = j.at("signs").get<std::vector<int>>();
  for (int s : lie.signs)
    if (s != 1 && s != -1) throw std::invalid_argument("lie: signs must be +-1");
  if (j.contains("scale")) lie.scale = scalar_from_json<S>(j.at("scale"));
  if (j.contains("dim") && j.at("dim").get<int>() != lie.dim())
    throw std::invalid_argument("lie: dim does not match signs");
  return lie;
}

template <class S>
json lie_form_to_json(const LieValuedForm<S>& f) {
  json comps = json::array();
  for (int a = 0; a < f.dim(); ++a) comps.push_back(form_to_json(f.comp(a)));
  return json{{"lie", lie_to_json(f.lie())}, {"grade", f.grade()}, {"comps", comps}};
}

template <class S>
LieValuedForm<S> lie_form_from_json(const json& j) {
  LieCoeff<S> lie = lie_from_json<S>(j.at("lie"));
  int grade = j.at("grade").get<int>();
  LieValuedForm<S> f(lie, grade);
  const json& comps = j.at("comps");
  if (static_cast<int>(comps.size()) != lie.dim())
    throw std::invalid_argument("lie form: comps size must equal lie dim");
  for (int a = 0; a < lie.dim(); ++a) {
    f.comp(a) = form_from_json<S>(comps[a]);
    if (f.comp(a).grade() != grade) throw std::invalid_argument("lie form: member grade mismatch");
  }
  return f;
}

template <class S>
json matrix7_to_json(const Matrix7<S>& m) {
  json rows = json::array();
  for (int i = 1; i <= kDim; ++i) {
    json row = json::array();
    for (int j = 1; j <= kDim; ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class S>
Matrix7<S> matrix7_from_json(const json& j) {
  if (!j.is_array() || j.size() != kDim) throw std::invalid_argument("matrix: needs 7 rows");
  Matrix7<S> m;
  for (int i = 1; i <= kDim; ++i) {
    const json& row = j[i - 1];
    if (!row.is_array() || row.size() != kDim)
      throw std::invalid_argument("matrix: needs 7 columns");
    for (int jj = 1; jj <= kDim; ++jj) m(i, jj) = scalar_from_json<S>(row[jj - 1]);
  }
  return m;
}

/// Point-field bundle; every slot is optional and defaults to zero.
template <class S>
PointFields<S> point_fields_from_json(const json& j) {
  LieCoeff<S> lie = j.contains("lie") ? lie_from_json<S>(j.at("lie"))
                    : j.contains("F") ? lie_from_json<S>(j.at("F").at("lie"))
                                      : LieCoeff<S>::euclidean(1);
  PointFields<S> p(lie);
  if (j.contains("H")) p.H = form_from_json<S>(j.at("H"));
  if (j.contains("F")) p.F = lie_form_from_json<S>(j.at("F"));
  if (j.contains("zeta")) p.zeta = form_from_json<S>(j.at("zeta"));
  if (j.contains("Ric")) p.Ric = matrix7_from_json<S>(j.at("Ric"));
  if (j.contains("dstarH")) p.dstarH = form_from_json<S>(j.at("dstarH"));
  if (j.contains("dzeta")) p.dzeta = form_from_json<S>(j.at("dzeta"));
  if (j.contains("LzetaG")) p.LzetaG = matrix7_from_json<S>(j.at("LzetaG"));
  if (j.contains("dthetastarF")) p.dthetastarF = lie_form_from_json<S>(j.at("dthetastarF"));
  if (j.contains("dH")) p.dH = form_from_json<S>(j.at("dH"));
  if (j.contains("gradF")) {
    const json& g = j.at("gradF");
    if (!g.is_array() || g.size() != kDim)
      throw std::invalid_argument("gradF: needs 7 direction slots");
    for (int c = 0; c < kDim; ++c) p.gradF[c] = lie_form_from_json<S>(g[c]);
  }
  if (j.contains("Rg")) p.Rg = scalar_from_json<S>(j.at("Rg"));
  if (j.contains("dstarzeta")) p.dstarzeta = scalar_from_json<S>(j.at("dstarzeta"));
  return p;
}

}  // namespace g2kit
