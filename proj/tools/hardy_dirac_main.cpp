// Command-line front end: builds test fields and potentials from structured
// specs, runs the verifiers and the Neumann solver, and emits JSON/CSV reports.
// Exit codes: 0 all asserted invariants pass, 1 assertion failure or series
// divergence, 2 configuration error, 3 numerical breakdown.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "hardydirac/report.hpp"
#include "hardydirac/specs.hpp"

using namespace hardydirac;

namespace {

struct GridOptions {
  int cart_n = 0;          // 0: profile default
  double cart_l = 0.0;     // 0: 16 / max(1, sqrt(eps^2 + m^2))
  double r_min = 1e-4;
  double r_max = 40.0;
  int r_count = 0;
};

struct ProfileDefaults {
  int cart_n = 64;
  int r_count = 2048;
};

ProfileDefaults profile_defaults() {
  ProfileDefaults d;
  if (const char* env = std::getenv("HARDYDIRAC_GRID_PROFILE")) {
    const std::string p(env);
    if (p == "coarse") {
      d.cart_n = 32;
      d.r_count = 1024;
    } else if (p == "fine") {
      d.cart_n = 96;
      d.r_count = 4096;
    } else if (p != "default") {
      throw SchemaError("HARDYDIRAC_GRID_PROFILE must be coarse, default or fine");
    }
  }
  return d;
}

CartesianGrid make_cartesian(const GridOptions& g, double eps, double m) {
  const auto def = profile_defaults();
  const int n = g.cart_n > 0 ? g.cart_n : def.cart_n;
  if (g.cart_l > 0.0) return CartesianGrid(g.cart_l, n);
  return default_cartesian_grid(eps, m, n);
}

RadialGrid make_radial(const GridOptions& g) {
  const auto def = profile_defaults();
  return RadialGrid(g.r_min, g.r_max, g.r_count > 0 ? g.r_count : def.r_count);
}

void add_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--grid-n", g.cart_n, "Cartesian nodes per axis (default per profile)");
  cmd->add_option("--grid-l", g.cart_l, "Cartesian half-width (default 16/max(1,sqrt(eps^2+m^2)))");
  cmd->add_option("--r-min", g.r_min, "radial grid r_min");
  cmd->add_option("--r-max", g.r_max, "radial grid r_max");
  cmd->add_option("--r-count", g.r_count, "radial grid node count");
}

Json grid_json(const CartesianGrid& g) {
  return Json{{"kind", "cartesian"}, {"half_width", g.half_width()}, {"n", g.n()}};
}

Json grid_json(const RadialGrid& g) {
  return Json{{"kind", "radial"}, {"r_min", g.r_min()}, {"r_max", g.r_max()}, {"count", g.size()}};
}

void emit(const std::string& out_path, const Json& report) {
  if (!out_path.empty()) write_report(out_path, report);
}

void print_inequality(const InequalityReport& rep) {
  std::printf("%-18s lhs=%-14.8g rhs=%-14.8g slack=%-13.6g ratio=%-10.8g quad_err=%.3g\n",
              to_string(rep.id).c_str(), rep.lhs, rep.rhs, rep.slack, rep.ratio, rep.quad_err);
}

int run_algebra_check(const std::string& out_path) {
  double max_residual = 0.0;
  Json residuals = Json::object();
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l <= 3; ++l) {
      const Mat4 anti = dirac_alpha(k) * dirac_alpha(l) + dirac_alpha(l) * dirac_alpha(k);
      const Mat4 expect = k == l ? Mat4(2.0 * Mat4::Identity()) : Mat4(Mat4::Zero());
      const double r = (anti - expect).norm();
      residuals["alpha" + std::to_string(k) + "_alpha" + std::to_string(l)] = r;
      max_residual = std::max(max_residual, r);
    }
  for (int k = 1; k <= 3; ++k) {
    const double r = (dirac_alpha(k) * dirac_beta() + dirac_beta() * dirac_alpha(k)).norm();
    residuals["alpha" + std::to_string(k) + "_beta"] = r;
    max_residual = std::max(max_residual, r);
  }
  {
    const double r = (dirac_beta() * dirac_beta() - Mat4::Identity()).norm();
    residuals["beta_beta"] = r;
    max_residual = std::max(max_residual, r);
  }
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l <= 3; ++l) {
      Mat2 expect = Mat2::Zero();
      if (k == l) {
        expect = Mat2::Identity();
      } else {
        const int m = 6 - k - l;
        const double sign =
            ((k == 1 && l == 2) || (k == 2 && l == 3) || (k == 3 && l == 1)) ? 1.0 : -1.0;
        expect = kImag * sign * pauli(m);
      }
      const double r = (pauli(k) * pauli(l) - expect).norm();
      residuals["sigma" + std::to_string(k) + "_sigma" + std::to_string(l)] = r;
      max_residual = std::max(max_residual, r);
    }
  for (auto& [name, value] : residuals.items())
    std::printf("%-16s residual = %.3g\n", name.c_str(), value.get<double>());
  std::printf("max residual = %.3g (tolerance 1e-14)\n", max_residual);
  Json report;
  report["command"] = "algebra-check";
  report["residuals"] = residuals;
  report["max_residual"] = max_residual;
  report["pass"] = max_residual <= 1e-14;
  emit(out_path, report);
  return max_residual <= 1e-14 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy-Dirac inequality verifier and Dirac-Coulomb Neumann solver"};
  app.require_subcommand(1);

  std::string out_path, csv_path, field_text, potential_text, id_text, family_text, deltas_text;
  std::uint64_t seed = 1;
  double eps = 1.0, mass = 0.0, lambda = 3.0, delta = 0.1, tol = 1e-6;
  int sign = +1;
  GridOptions grid_opts;
  SolverConfig solver_cfg;

  auto* algebra = app.add_subcommand("algebra-check", "verify the Dirac/Pauli matrix relations");
  algebra->add_option("--out", out_path, "JSON report path");

  auto* verify_cmd = app.add_subcommand("verify", "evaluate one inequality on a field");
  verify_cmd->add_option("--id", id_text, "inequality id")->required();
  verify_cmd->add_option("--field", field_text, "field spec (key=value ...)")->required();
  verify_cmd->add_option("--potential", potential_text, "scalar potential spec (general-hip)");
  verify_cmd->add_option("--eps", eps, "shift eps");
  verify_cmd->add_option("--m", mass, "mass");
  verify_cmd->add_option("--sign", sign, "+1 or -1 branch");
  verify_cmd->add_option("--seed", seed, "RNG seed");
  verify_cmd->add_option("--out", out_path, "JSON report path");
  add_grid_options(verify_cmd, grid_opts);

  auto* sharp = app.add_subcommand("sharpness", "delta-sweep of the hardy-dirac ratio");
  sharp->add_option("--eps", eps, "shift eps")->required();
  sharp->add_option("--m", mass, "mass")->required();
  sharp->add_option("--deltas", deltas_text, "comma-separated decreasing deltas")->required();
  sharp->add_option("--sign", sign, "+1 or -1 branch");
  sharp->add_option("--out", out_path, "JSON report path");
  sharp->add_option("--csv", csv_path, "CSV output path (delta,ratio,...)");
  add_grid_options(sharp, grid_opts);

  auto* equality = app.add_subcommand("equality", "evaluate an extremizer family");
  equality->add_option("--id", id_text, "inequality id")->required();
  equality->add_option("--family", family_text, "psi0 | exp-lambda | phi0-radial")->required();
  equality->add_option("--lambda", lambda, "exp-lambda rate");
  equality->add_option("--delta", delta, "regularization exponent");
  equality->add_option("--eps", eps, "shift eps");
  equality->add_option("--m", mass, "mass");
  equality->add_option("--sign", sign, "+1 or -1 branch");
  equality->add_option("--out", out_path, "JSON report path");
  add_grid_options(equality, grid_opts);

  auto* solve_cmd = app.add_subcommand("solve", "Neumann-series solve of (H +- i) psi = f");
  solve_cmd->add_option("--potential", potential_text, "potential spec")->required();
  solve_cmd->add_option("--field", field_text, "right-hand side spec")->required();
  solve_cmd->add_option("--sign", solver_cfg.sign, "+1 or -1");
  solve_cmd->add_option("--m", solver_cfg.mass, "mass");
  solve_cmd->add_option("--max-terms", solver_cfg.max_terms, "series term cap");
  solve_cmd->add_option("--series-tol", solver_cfg.series_tol, "series stopping tolerance");
  solve_cmd->add_option("--residual-tol", solver_cfg.residual_tol, "residual warning threshold");
  solve_cmd->add_option("--divergence-margin", solver_cfg.divergence_margin,
                        "non-contraction threshold is 1 - margin");
  solve_cmd->add_option("--seed", seed, "RNG seed");
  solve_cmd->add_option("--out", out_path, "JSON report path");
  add_grid_options(solve_cmd, grid_opts);

  auto* symmetry = app.add_subcommand("symmetry", "theorem (v) pairing check on seeded fields");
  symmetry->add_option("--potential", potential_text, "potential spec")->required();
  symmetry->add_option("--m", solver_cfg.mass, "mass");
  symmetry->add_option("--seed", seed, "RNG seed");
  symmetry->add_option("--tol", tol, "pass threshold");
  symmetry->add_option("--out", out_path, "JSON report path");
  add_grid_options(symmetry, grid_opts);

  std::vector<std::string> merge_inputs;
  auto* merge = app.add_subcommand("report-merge", "merge report JSON files");
  merge->add_option("--out", out_path, "merged JSON path")->required();
  merge->add_option("inputs", merge_inputs, "input reports")->required();

  try {
    app.parse(argc, argv);

    if (algebra->parsed()) return run_algebra_check(out_path);

    if (verify_cmd->parsed()) {
      const FieldSpec spec = parse_field_spec(field_text);
      const InequalityId id = inequality_from_string(id_text);
      VerifyParams params;
      params.mass = mass;
      params.eps = eps;
      params.sign = sign;
      InequalityReport rep;
      Json grid_echo;
      if (id == InequalityId::GENERAL_HIP) {
        if (potential_text.empty())
          throw SchemaError("general-hip needs --potential (a radial scalar V)");
        if (!spec.is_radial())
          throw SchemaError("general-hip runs on the radial-channel path; use a radial field");
        const RadialGrid rg = make_radial(grid_opts);
        const MatrixPotential pot = parse_potential_spec(potential_text, CartesianGrid(8.0, 16));
        if (!pot.has_channel_form)
          throw SchemaError("general-hip needs a radial scalar potential");
        const RadialScalarPotential scal =
            compute_h_plus_minus(rg, [&](double r) { return pot.radial_a(r); });
        rep = verify_general_hip(build_channel_field(spec, rg), scal, params);
        grid_echo = grid_json(rg);
      } else if (spec.is_radial()) {
        const RadialGrid rg = make_radial(grid_opts);
        if (spec.kind == FieldKind::extremizer_family &&
            spec.family.tag == FamilyTag::phi0_radial) {
          rep = verify(id, rg, build_phi0_radial(rg, spec.family), params);
        } else {
          const RadialChannel ch = build_channel_field(spec, rg);
          if (id == InequalityId::IMPROVED_89 || id == InequalityId::HARDY_DIRAC_FINAL)
            rep = verify(id, ch, params);
          else
            rep = verify(id, rg, ch.kappa, ch.f, params);
        }
        grid_echo = grid_json(rg);
      } else {
        const CartesianGrid g = make_cartesian(grid_opts, eps, mass);
        const SpinorField psi = build_cartesian_field(spec, g, seed);
        if (id == InequalityId::IMPROVED_89 || id == InequalityId::HARDY_DIRAC_FINAL) {
          rep = verify(id, psi, params);
        } else {
          rep = verify(id, upper(psi), params);
        }
        grid_echo = grid_json(g);
      }
      print_inequality(rep);
      const bool pass = rep.slack >= -rep.quad_err;
      Json report;
      report["command"] = "verify";
      report["config"] = {{"id", id_text}, {"field", field_text}, {"potential", potential_text},
                          {"eps", eps},    {"m", mass},           {"sign", sign},
                          {"seed", seed}};
      report["grid"] = grid_echo;
      report["report"] = to_json(rep);
      report["pass"] = pass;
      emit(out_path, report);
      if (!pass) std::printf("FAIL: slack %.6g below -quad_err\n", rep.slack);
      return pass ? 0 : 1;
    }

    if (sharp->parsed()) {
      std::vector<double> deltas;
      std::stringstream ss(deltas_text);
      std::string item;
      while (std::getline(ss, item, ',')) deltas.push_back(std::stod(item));
      const RadialGrid rg = make_radial(grid_opts);
      const auto reports = sharpness_sweep(eps, mass, deltas, rg, sign);
      bool monotone = true;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        print_inequality(reports[i]);
        if (i > 0 && !(reports[i].ratio > reports[i - 1].ratio)) monotone = false;
      }
      Json report;
      report["command"] = "sharpness";
      report["config"] = {{"eps", eps}, {"m", mass}, {"deltas", deltas}, {"sign", sign}};
      report["grid"] = grid_json(rg);
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      report["reports"] = arr;
      report["monotone"] = monotone;
      emit(out_path, report);
      if (!csv_path.empty()) write_text_atomic(csv_path, sweep_csv(reports));
      if (!monotone) std::printf("FAIL: ratios are not strictly increasing\n");
      return monotone ? 0 : 1;
    }

    if (equality->parsed()) {
      ExtremizerFamily fam;
      if (family_text == "psi0")
        fam.tag = FamilyTag::psi0;
      else if (family_text == "exp-lambda")
        fam.tag = FamilyTag::exp_lambda;
      else if (family_text == "phi0-radial")
        fam.tag = FamilyTag::phi0_radial;
      else
        throw SchemaError("unknown family '" + family_text + "'");
      fam.eps = eps;
      fam.mass = mass;
      fam.lambda = lambda;
      fam.delta = delta;
      fam.sign = sign;
      const RadialGrid rg = make_radial(grid_opts);
      const InequalityReport rep = equality_case(inequality_from_string(id_text), fam, rg);
      print_inequality(rep);
      if (rep.id == InequalityId::IMPROVED_89)
        std::printf("measured constant rhs / ||i alpha.grad psi||^2_{|x|} = %.10f\n",
                    rep.measured_constant);
      Json report;
      report["command"] = "equality";
      report["config"] = {{"id", id_text},     {"family", family_text}, {"lambda", lambda},
                          {"delta", delta},    {"eps", eps},            {"m", mass},
                          {"sign", sign}};
      report["grid"] = grid_json(rg);
      report["report"] = to_json(rep);
      emit(out_path, report);
      return 0;
    }

    if (solve_cmd->parsed()) {
      const FieldSpec spec = parse_field_spec(field_text);
      Json report;
      report["command"] = "solve";
      report["config_echo"] = {{"potential", potential_text}, {"field", field_text},
                               {"seed", seed}};
      int exit_code = 0;
      if (spec.is_radial()) {
        const RadialGrid rg = make_radial(grid_opts);
        const MatrixPotential pot = parse_potential_spec(potential_text, CartesianGrid(8.0, 16));
        const ChannelSolverResult res = solve_channel(build_channel_field(spec, rg), pot, solver_cfg);
        std::printf("channel solve: terms=%d converged=%d residual=%.3g contraction=%.4f\n",
                    res.terms_used, int(res.converged), res.residual, res.contraction_factor);
        report["grid"] = grid_json(rg);
        report["result"] = {{"terms_used", res.terms_used},
                            {"converged", res.converged},
                            {"residual", res.residual},
                            {"contraction_factor", res.contraction_factor}};
        exit_code = res.converged && res.residual <= solver_cfg.residual_tol ? 0 : 1;
      } else {
        const CartesianGrid g = make_cartesian(grid_opts, 1.0, solver_cfg.mass);
        const MatrixPotential pot = parse_potential_spec(potential_text, g);
        const SpinorField f = build_cartesian_field(spec, g, seed);
        const SolverResult res = solve(f, pot, solver_cfg);
        std::printf(
            "solve: terms=%d converged=%d residual=%.3g |psi|/|f|=%.6f contraction=%.4f\n",
            res.terms_used, int(res.converged), res.residual, res.norm_ratio,
            res.contraction_factor);
        std::printf("diagnostics: Int|psi|^2/|x|=%.6g  Int_{|x|<1}|x||a.grad psi|^2=%.6g  "
                    "H1/2=%.6g\n",
                    res.inv_weight_integral, res.local_gradient_integral, res.h_half_norm_value);
        report["grid"] = grid_json(g);
        report["result"] = to_json(res, solver_cfg);
        exit_code = res.converged && !res.residual_warning ? 0 : 1;
      }
      emit(out_path, report);
      return exit_code;
    }

    if (symmetry->parsed()) {
      const CartesianGrid g = make_cartesian(grid_opts, 1.0, solver_cfg.mass);
      const MatrixPotential pot = parse_potential_spec(potential_text, g);
      const SpinorField f1 = band_limited_random<4>(g, seed, g.n() / 6);
      const SpinorField f2 = band_limited_random<4>(g, seed + 1, g.n() / 6);
      const double value = symmetry_check(f1, f2, pot, solver_cfg);
      std::printf("symmetry defect = %.6g (tolerance %.3g)\n", value, tol);
      Json report;
      report["command"] = "symmetry";
      report["config"] = {{"potential", potential_text}, {"m", solver_cfg.mass}, {"seed", seed},
                          {"tol", tol}};
      report["grid"] = grid_json(g);
      report["value"] = value;
      report["pass"] = value <= tol;
      emit(out_path, report);
      return value <= tol ? 0 : 1;
    }

    if (merge->parsed()) {
      Json merged;
      merged["command"] = "report-merge";
      Json arr = Json::array();
      for (const auto& path : merge_inputs) {
        std::ifstream in(path);
        if (!in) throw SchemaError("cannot open report " + path);
        Json j;
        in >> j;
        arr.push_back(std::move(j));
      }
      merged["reports"] = arr;
      write_report(out_path, merged);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const NumericalBreakdown& e) {
    std::fprintf(stderr, "numerical breakdown: %s\n", e.what());
    return 3;
  } catch (const DivergenceError& e) {
    std::fprintf(stderr, "divergence: %s\n", e.what());
    return 1;
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
