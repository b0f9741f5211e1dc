#pragma once

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hardydirac/neumann.hpp"
#include "hardydirac/verification.hpp"

namespace hardydirac {

using Json = nlohmann::ordered_json;

// Reports carry no timestamps or other volatile content: two runs with the
// same spec and seed must produce byte-identical payloads.

inline Json to_json(const InequalityReport& rep) {
  Json j;
  j["id"] = to_string(rep.id);
  j["params"] = {{"m", rep.mass}, {"eps", rep.eps}, {"lambda", rep.lambda},
                 {"delta", rep.delta}, {"kappa", rep.kappa}};
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["slack"] = rep.slack;
  j["ratio"] = rep.ratio;
  j["quad_err"] = rep.quad_err;
  j["path"] = rep.path;
  if (rep.id == InequalityId::IMPROVED_89) j["measured_constant"] = rep.measured_constant;
  return j;
}

inline Json to_json(const SolverResult& res, const SolverConfig& cfg) {
  Json j;
  j["config"] = {{"sign", cfg.sign},
                 {"m", cfg.mass},
                 {"max_terms", cfg.max_terms},
                 {"series_tol", cfg.series_tol},
                 {"residual_tol", cfg.residual_tol},
                 {"divergence_margin", cfg.divergence_margin}};
  j["terms_used"] = res.terms_used;
  j["converged"] = res.converged;
  j["residual"] = res.residual;
  j["residual_warning"] = res.residual_warning;
  j["contraction_factor"] = res.contraction_factor;
  j["diagnostics"] = {{"norm_ratio", res.norm_ratio},
                      {"inv_weight_integral", res.inv_weight_integral},
                      {"local_gradient_integral", res.local_gradient_integral},
                      {"h_half_norm", res.h_half_norm_value}};
  j["term_norms"] = res.term_norms;
  return j;
}

/// write-temp-then-rename, so readers never observe a partial report
inline void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp + " for writing");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline void write_report(const std::string& path, const Json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

/// CSV columns (stable order): delta,ratio,lhs,rhs,slack,quad_err
inline std::string sweep_csv(const std::vector<InequalityReport>& reports) {
  std::string out = "delta,ratio,lhs,rhs,slack,quad_err\n";
  char line[256];
  for (const auto& r : reports) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.delta, r.ratio,
                  r.lhs, r.rhs, r.slack, r.quad_err);
    out += line;
  }
  return out;
}

}  // namespace hardydirac
