// g2kit command line: verification suites, decomposition and torsion
// utilities, spinor actions, generalized Ricci residuals, coupled-instanton
// sample runs, instanton-tower ranks, and contact Calabi-Yau scaling sweeps.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "g2kit/json_io.hpp"
#include "g2kit/verify.hpp"

using namespace g2kit;

namespace {

struct GlobalOpts {
  std::string backend = "exact";
  std::uint64_t seed = 1;
  int threads = 1;
  bool json_out = false;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("input", "cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

void emit(const json& j, bool pretty = true) {
  std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

json report_to_json(const std::vector<SuiteReport>& reports) {
  json out = json::array();
  for (const auto& rep : reports) {
    json checks = json::array();
    for (const auto& r : rep.results)
      checks.push_back(json{{"id", r.id},
                            {"identity", r.identity},
                            {"status", r.pass ? "pass" : "fail"},
                            {"max_residual", r.max_residual},
                            {"ms", r.ms}});
    out.push_back(json{{"suite", rep.suite},
                       {"backend", rep.backend},
                       {"pass", rep.pass},
                       {"ms", rep.ms},
                       {"checks", checks}});
  }
  return out;
}

int print_reports(const std::vector<SuiteReport>& reports, bool as_json) {
  bool pass = true;
  if (as_json) {
    emit(report_to_json(reports));
    for (const auto& rep : reports) pass = pass && rep.pass;
    return pass ? 0 : 1;
  }
  for (const auto& rep : reports) {
    std::cout << "suite " << rep.suite << " [" << rep.backend << "]\n";
    for (const auto& r : rep.results) {
      std::cout << "  " << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(36)
                << r.id << "  max-residual " << std::scientific << std::setprecision(3)
                << r.max_residual << std::defaultfloat << "  (" << std::fixed
                << std::setprecision(1) << r.ms << " ms)  " << r.identity << "\n"
                << std::defaultfloat;
    }
    std::cout << (rep.pass ? "  => pass" : "  => FAIL") << " (" << std::fixed
              << std::setprecision(1) << rep.ms << " ms)\n"
              << std::defaultfloat;
    pass = pass && rep.pass;
  }
  return pass ? 0 : 1;
}

template <class S>
int run_verify(const std::string& suite, const VerifyOptions& opts, bool as_json) {
  auto reports = run_suites<S>(suite, opts);
  return print_reports(reports, as_json);
}

template <class S>
int run_decompose(const std::string& path, int space) {
  json j = load_json(path);
  Form<S> f = form_from_json<S>(j);
  json out;
  if (space == 2) {
    if (f.grade() != 2) throw CLI::ValidationError("input", "space 2 expects a 2-form");
    auto d = decompose2(f);
    out = json{{"pi7", form_to_json(d.pi7)},
               {"pi14", form_to_json(d.pi14)},
               {"norm2", {{"pi7", scalar_to_json(norm2(d.pi7))},
                          {"pi14", scalar_to_json(norm2(d.pi14))}}},
               {"recomposition_exact", (d.pi7 + d.pi14) == f}};
  } else {
    if (f.grade() != 3) throw CLI::ValidationError("input", "space 3 expects a 3-form");
    auto d = decompose3(f);
    out = json{{"pi1", form_to_json(d.pi1)},
               {"pi7", form_to_json(d.pi7)},
               {"pi27", form_to_json(d.pi27)},
               {"norm2", {{"pi1", scalar_to_json(norm2(d.pi1))},
                          {"pi7", scalar_to_json(norm2(d.pi7))},
                          {"pi27", scalar_to_json(norm2(d.pi27))}}},
               {"recomposition_exact", (d.pi1 + d.pi7 + d.pi27) == f}};
  }
  emit(out);
  return 0;
}

template <class S>
int run_torsion(const std::string& decompose_path, const std::string& assemble_path) {
  if (!decompose_path.empty()) {
    Form<S> h = form_from_json<S>(load_json(decompose_path));
    auto t = decompose_H(h);
    emit(torsion_to_json(t));
    return 0;
  }
  TorsionTriple<S> t = torsion_from_json<S>(load_json(assemble_path));
  emit(form_to_json(assemble_H(t)));
  return 0;
}

template <class S>
int run_spin(const std::string& op, const std::string& form_path, const std::string& spinor_path) {
  Form<S> f = form_from_json<S>(load_json(form_path));
  Spinor<S> s = spinor_path.empty() ? Spinor<S>::eta0()
                                    : spinor_from_json<S>(load_json(spinor_path));
  if (op == "act") {
    emit(spinor_to_json(act(f, s)));
  } else if (op == "slashed") {
    emit(spinor_to_json(slashed_act(f, s)));
  } else if (op == "is-g2") {
    auto [ok, residual] = is_g2_2form(f, ScalarOps<S>::zero_tol);
    emit(json{{"is_g2", ok}, {"residual", spinor_to_json(residual)}});
  } else {
    throw CLI::ValidationError("--op", "must be act, slashed or is-g2");
  }
  return 0;
}

template <class S>
int run_residual(const std::string& path) {
  PointFields<S> p = point_fields_from_json<S>(load_json(path));
  auto r = ric_plus_residual(p);
  json lie1 = json::array();
  for (int a = 0; a < r.lie1.dim(); ++a) lie1.push_back(form_to_json(r.lie1.comp(a)));
  double lie1_norm = r.lie1.sup_norm();
  emit(json{{"sym", matrix7_to_json(r.sym)},
            {"skew", form_to_json(r.skew)},
            {"lie1", lie1},
            {"norms", {{"sym", r.sym.sup_norm()},
                       {"skew", sup_norm(r.skew)},
                       {"lie1", lie1_norm}}},
            {"sup_norm", r.sup_norm()},
            {"splus", scalar_to_json(scalar_splus(p))}});
  return 0;
}

template <class S>
int run_coupled(std::uint64_t seed, int samples, bool break_bianchi, int lie_dim, bool as_json) {
  Rng rng(seed);
  LieCoeff<S> lie = LieCoeff<S>::euclidean(lie_dim);
  if (lie_dim > 1) lie.signs[lie_dim - 1] = -1;
  double max_coupled = 0.0, max_spinor = 0.0;
  for (int t = 0; t < samples; ++t) {
    auto s = GravitinoSample<S>::random(rng, lie, t % 2 == 1);
    if (break_bianchi) s.dH += Form<S>::basis({1, 2, 3, 4});
    auto in = s.inputs();
    max_coupled = std::max(max_coupled, coupled_residuals(in).sup_norm());
    auto rm = break_bianchi ? rminus_from_rplus(s.Rplus, s.dH) : s.Rminus;
    max_spinor = std::max(max_spinor, spinor_coupled_check(rm, s.F).sup_norm());
  }
  json out{{"samples", samples},
           {"seed", seed},
           {"lie_dim", lie_dim},
           {"bianchi_broken", break_bianchi},
           {"max_coupled_residual", max_coupled},
           {"max_spinor_residual", max_spinor}};
  if (as_json) {
    emit(out);
  } else {
    std::cout << "samples " << samples << "  max coupled residual " << max_coupled
              << "  max spinor residual " << max_spinor << "\n";
  }
  bool expect_zero = !break_bianchi;
  double tol = ScalarOps<S>::zero_tol;
  bool ok = expect_zero ? (max_coupled <= tol && max_spinor <= tol)
                        : (max_spinor > tol || max_coupled > tol);
  return ok ? 0 : 1;
}

void write_csv(const std::string& path, const SweepResult& res) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("--out", "cannot write '" + path + "'");
  out << "alpha,norm,norm_over_alpha2\n";
  out << std::setprecision(17);
  for (const auto& r : res.rows)
    out << r.alpha << "," << r.norm << "," << r.norm_over_alpha2 << "\n";
}

void write_svg(const std::string& path, const SweepResult& res, int case_id) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("--svg", "cannot write '" + path + "'");
  const double W = 560, H = 420, L = 70, B = 50, T = 30, R = 20;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : res.rows) {
    double x = std::log10(r.alpha), y = std::log10(r.norm);
    xmin = std::min(xmin, x); xmax = std::max(xmax, x);
    ymin = std::min(ymin, y); ymax = std::max(ymax, y);
  }
  double xpad = 0.05 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - B - T); };
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - R << "' y2='" << H - B
      << "' stroke='black'/>\n";
  out << "<line x1='" << L << "' y1='" << T << "' x2='" << L << "' y2='" << H - B
      << "' stroke='black'/>\n";
  out << "<text x='" << (W / 2) << "' y='" << H - 12
      << "' text-anchor='middle' font-size='13'>log10 alpha</text>\n";
  out << "<text x='16' y='" << (H / 2)
      << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 " << (H / 2)
      << ")'>log10 |R ^ psi|</text>\n";
  out << "<text x='" << (W / 2) << "' y='18' text-anchor='middle' font-size='14'>case "
      << case_id << ": fitted slope " << std::fixed << std::setprecision(3) << res.slope
      << "</text>\n";
  // fitted line through the mean point
  double mx = 0, my = 0;
  for (const auto& r : res.rows) {
    mx += std::log10(r.alpha);
    my += std::log10(r.norm);
  }
  mx /= res.rows.size();
  my /= res.rows.size();
  double y1 = my + res.slope * (xmin - mx), y2 = my + res.slope * (xmax - mx);
  out << "<line x1='" << px(xmin) << "' y1='" << py(y1) << "' x2='" << px(xmax) << "' y2='"
      << py(y2) << "' stroke='#c22' stroke-width='1.5'/>\n";
  for (const auto& r : res.rows)
    out << "<circle cx='" << px(std::log10(r.alpha)) << "' cy='" << py(std::log10(r.norm))
        << "' r='4' fill='#137' fill-opacity='0.85'/>\n";
  out << "</svg>\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"g2kit: pointwise G2 / generalized-geometry verification kernel"};
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("G2KIT_THREADS")) g.threads = std::max(1, std::atoi(env));
  app.add_option("--backend", g.backend, "scalar backend: exact | f64")
      ->check(CLI::IsMember({"exact", "f64"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (env G2KIT_THREADS)")
      ->capture_default_str();
  app.add_flag("--json", g.json_out, "structured JSON output");

  // verify
  auto* verify = app.add_subcommand("verify", "run the named invariant suite");
  verify->fallthrough();
  std::string suite = "all";
  VerifyOptions vopts;
  bool list_checks = false;
  verify->add_option("--suite", suite, "forms | g2 | spin | generalized | coupled | ccy | all")
      ->check(CLI::IsMember({"forms", "g2", "spin", "generalized", "coupled", "ccy", "all"}))
      ->capture_default_str();
  verify->add_option("--trials", vopts.trials, "random trials per property")
      ->capture_default_str();
  verify->add_option("--rel-tol", vopts.rel_tol, "relative tolerance (f64 identities)")
      ->capture_default_str();
  verify->add_option("--abs-tol", vopts.abs_tol, "absolute tolerance (f64 zero checks)")
      ->capture_default_str();
  verify->add_flag("--list", list_checks, "list check ids and identities, then exit");

  // decompose
  auto* dec = app.add_subcommand("decompose", "split a 2- or 3-form into irreducible pieces");
  dec->fallthrough();
  std::string dec_input;
  int dec_space = 3;
  dec->add_option("--input", dec_input, "form JSON file")->required();
  dec->add_option("--space", dec_space, "2 or 3")->check(CLI::IsMember({2, 3}))
      ->capture_default_str();

  // torsion
  auto* tor = app.add_subcommand("torsion", "torsion triple <-> H assembly");
  tor->fallthrough();
  std::string tor_dec, tor_asm;
  tor->add_option("--decompose", tor_dec, "3-form JSON to split into (tau0, tau1, tau3)");
  tor->add_option("--assemble", tor_asm, "torsion-triple JSON to assemble into H");

  // spin
  auto* spin = app.add_subcommand("spin", "Clifford actions on spinors");
  spin->fallthrough();
  std::string spin_op, spin_form, spin_spinor;
  spin->add_option("--op", spin_op, "act | slashed | is-g2")->required();
  spin->add_option("--form", spin_form, "form JSON file")->required();
  spin->add_option("--spinor", spin_spinor, "spinor JSON file (default eta0)");

  // residual
  auto* res = app.add_subcommand("residual", "generalized Ricci residuals and S+");
  res->fallthrough();
  std::string res_input;
  res->add_option("--input", res_input, "point-fields JSON bundle")->required();

  // coupled
  auto* cpl = app.add_subcommand("coupled", "gravitino-sample coupled-instanton verification");
  cpl->fallthrough();
  int cpl_samples = 50, cpl_lie_dim = 2;
  bool cpl_break = false;
  cpl->add_option("--samples", cpl_samples, "number of random samples")->capture_default_str();
  cpl->add_flag("--break-bianchi", cpl_break, "perturb dH away from <F^F>");
  cpl->add_option("--lie-dim", cpl_lie_dim, "gauge coefficient dimension")->capture_default_str();

  // tower
  auto* tow = app.add_subcommand("tower", "instanton-tower rank recursion");
  tow->fallthrough();
  std::int64_t tow_n = 7, tow_r1 = 14;
  int tow_depth = 4;
  tow->add_option("--n", tow_n, "base dimension")->capture_default_str();
  tow->add_option("--r1", tow_r1, "seed rank")->capture_default_str();
  tow->add_option("--depth", tow_depth, "sequence length")->capture_default_str();

  // ccy sweep
  auto* ccy = app.add_subcommand("ccy", "contact Calabi-Yau family");
  ccy->fallthrough();
  auto* sweep = ccy->add_subcommand("sweep", "deviation-norm scaling sweep");
  sweep->fallthrough();
  int sw_case = 1, sw_points = 9;
  double sw_delta = 1.0, sw_m = 0.0, sw_amin = 1e-3, sw_amax = 1e-1;
  std::string sw_norm = "e0", sw_out, sw_svg;
  bool sw_fit = false;
  sweep->add_option("--case", sw_case, "regime: 1, 2 or 3")->check(CLI::IsMember({1, 2, 3}))
      ->capture_default_str();
  sweep->add_option("--delta", sw_delta, "delta parameter")->capture_default_str();
  sweep->add_option("--m", sw_m, "m parameter")->capture_default_str();
  sweep->add_option("--alpha-min", sw_amin, "smallest alpha")->capture_default_str();
  sweep->add_option("--alpha-max", sw_amax, "largest alpha")->capture_default_str();
  sweep->add_option("--points", sw_points, "grid size (>= 4)")->capture_default_str();
  sweep->add_option("--normalization", sw_norm, "e0 | eta")
      ->check(CLI::IsMember({"e0", "eta"}))
      ->capture_default_str();
  sweep->add_option("--out", sw_out, "CSV output path");
  sweep->add_option("--svg", sw_svg, "SVG plot path");
  sweep->add_flag("--fit", sw_fit, "print the fitted slope summary");

  CLI11_PARSE(app, argc, argv);

  bool exact = (g.backend == "exact");
  vopts.seed = g.seed;
  vopts.threads = g.threads;

  try {
    if (*verify) {
      if (list_checks) {
        for (const auto& n : suite_names()) {
          if (suite != "all" && suite != n) continue;
          for (const auto& c : detail::suite_checks<Rational>(n))
            std::cout << c.id << "  --  " << c.identity << "\n";
          if (n == "ccy")
            for (const auto& c : detail::ccy_scaling_checks())
              std::cout << c.id << "  --  " << c.identity << " [f64 only]\n";
        }
        return 0;
      }
      return exact ? run_verify<Rational>(suite, vopts, g.json_out)
                   : run_verify<double>(suite, vopts, g.json_out);
    }
    if (*dec)
      return exact ? run_decompose<Rational>(dec_input, dec_space)
                   : run_decompose<double>(dec_input, dec_space);
    if (*tor) {
      if (tor_dec.empty() == tor_asm.empty())
        throw CLI::ValidationError("torsion", "pass exactly one of --decompose / --assemble");
      return exact ? run_torsion<Rational>(tor_dec, tor_asm)
                   : run_torsion<double>(tor_dec, tor_asm);
    }
    if (*spin)
      return exact ? run_spin<Rational>(spin_op, spin_form, spin_spinor)
                   : run_spin<double>(spin_op, spin_form, spin_spinor);
    if (*res)
      return exact ? run_residual<Rational>(res_input) : run_residual<double>(res_input);
    if (*cpl) {
      if (cpl_samples < 1) throw CLI::ValidationError("--samples", "needs samples >= 1");
      return exact ? run_coupled<Rational>(g.seed, cpl_samples, cpl_break, cpl_lie_dim, g.json_out)
                   : run_coupled<double>(g.seed, cpl_samples, cpl_break, cpl_lie_dim, g.json_out);
    }
    if (*tow) {
      auto seq = tower_rank(tow_n, tow_r1, tow_depth);
      emit(json{{"n", tow_n}, {"r1", tow_r1}, {"ranks", seq}});
      return 0;
    }
    if (*sweep) {
      auto norm = sw_norm == "e0" ? DeviationNormalization::e0 : DeviationNormalization::eta;
      auto res2 = scaling_sweep(sw_case, sw_delta, sw_m, log_grid(sw_amin, sw_amax, sw_points),
                                norm, g.threads);
      if (!sw_out.empty()) write_csv(sw_out, res2);
      if (!sw_svg.empty()) write_svg(sw_svg, res2, sw_case);
      if (g.json_out) {
        json rows = json::array();
        for (const auto& r : res2.rows)
          rows.push_back(json{{"alpha", r.alpha}, {"norm", r.norm},
                              {"norm_over_alpha2", r.norm_over_alpha2}});
        emit(json{{"case", sw_case}, {"slope", res2.slope}, {"limit_const", res2.limit_const},
                  {"max_ym_residual", res2.max_ym_residual}, {"rows", rows}});
      } else {
        if (!sw_fit)
          for (const auto& r : res2.rows)
            std::cout << "alpha " << r.alpha << "  norm " << r.norm << "  norm/alpha^2 "
                      << r.norm_over_alpha2 << "\n";
        std::cout << "case=" << sw_case << " slope=" << std::fixed << std::setprecision(4)
                  << res2.slope << " limit_const=" << std::setprecision(6) << res2.limit_const
                  << "\n";
      }
      return 0;
    }
    if (*ccy) {
      std::cerr << "ccy: choose a subcommand (sweep)\n";
      return 2;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
