#pragma once

#include <map>
#include <sstream>
#include <string>

#include "hardydirac/extremizers.hpp"
#include "hardydirac/serialize.hpp"

namespace hardydirac {

// Structured-text specs (schema v1, documented in docs/formats.md): a single
// line of whitespace-separated key=value tokens, e.g. "kind=coulomb nu=0.5".
// Unknown keys are rejected so typos cannot silently change a run.

namespace detail {

struct KeyValues {
  std::map<std::string, std::string> entries;
  std::string source;

  const std::string& require(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end())
      throw SchemaError("missing key '" + key + "' in spec: " + source);
    return it->second;
  }

  bool has(const std::string& key) const { return entries.count(key) > 0; }

  double number(const std::string& key) const {
    const std::string& raw = require(key);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(raw, &used);
    } catch (const std::exception&) {
      throw SchemaError("key '" + key + "': '" + raw + "' is not a number");
    }
    if (used != raw.size()) throw SchemaError("key '" + key + "': '" + raw + "' is not a number");
    return v;
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) const {
    const double v = number(key);
    if (v != std::floor(v)) throw SchemaError("key '" + key + "' must be an integer");
    return static_cast<int>(v);
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [k, v] : entries) {
      bool ok = false;
      for (const char* allowed : keys)
        if (k == allowed) ok = true;
      if (!ok) throw SchemaError("unknown key '" + k + "' in spec: " + source);
    }
  }
};

inline KeyValues parse_key_values(const std::string& text) {
  KeyValues out;
  out.source = text;
  std::istringstream ss(text);
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0)
      throw SchemaError("expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    if (out.entries.count(key)) throw SchemaError("duplicate key '" + key + "'");
    out.entries[key] = token.substr(eq + 1);
  }
  if (out.entries.empty()) throw SchemaError("empty spec");
  return out;
}

}  // namespace detail

/// "kind=coulomb nu=0.5" | "kind=remark14 c=0 eps=1 m=0" |
/// "kind=electromagnetic nu=0.3 a_mag=0.4" (A = a_mag x/|x|^2) |
/// "kind=tabulated file=V.txt" (two-column r V, interpolated, V(r) I4).
inline MatrixPotential parse_potential_spec(const std::string& text,
                                            const CartesianGrid& bound_grid) {
  const auto kv = detail::parse_key_values(text);
  const std::string kind = kv.require("kind");
  if (kind == "coulomb") {
    kv.allow_only({"kind", "nu"});
    return coulomb(kv.number("nu"));
  }
  if (kind == "remark14") {
    kv.allow_only({"kind", "c", "eps", "m"});
    return remark14_family(kv.number("c"), kv.number("eps"), kv.number_or("m", 0.0));
  }
  if (kind == "electromagnetic") {
    kv.allow_only({"kind", "nu", "a_mag"});
    const double a_mag = kv.number_or("a_mag", 0.0);
    return electromagnetic(
        kv.number("nu"),
        [a_mag](const Vec3& x) { return Vec3(a_mag * x / x.squaredNorm()); },
        bound_sample_points(bound_grid));
  }
  if (kind == "tabulated") {
    kv.allow_only({"kind", "file", "bound"});
    std::ifstream in(kv.require("file"));
    if (!in) throw SchemaError("cannot open tabulated potential file " + kv.require("file"));
    std::vector<double> rs, vs;
    double r, v;
    while (in >> r >> v) {
      rs.push_back(r);
      vs.push_back(v);
    }
    if (rs.size() < 4) throw SchemaError("tabulated potential needs at least 4 samples");
    auto eval = [rs, vs](double rr) {
      if (rr <= rs.front()) return vs.front() * rs.front() / rr;  // Coulomb-like continuation
      if (rr >= rs.back()) return vs.back() * rs.back() / rr;
      const auto it = std::lower_bound(rs.begin(), rs.end(), rr);
      const std::size_t i = it - rs.begin();
      const double w = (rr - rs[i - 1]) / (rs[i] - rs[i - 1]);
      return (1.0 - w) * vs[i - 1] + w * vs[i];
    };
    double bound = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) bound = std::max(bound, rs[i] * std::abs(vs[i]));
    return radial_scalar(eval, kv.number_or("bound", bound));
  }
  throw SchemaError("unknown potential kind '" + kind + "'");
}

enum class FieldKind { gaussian_packet, band_limited_random, extremizer_family, radial_channel,
                       from_file };

/// A validated field recipe; the grid and seed are supplied by the run.
struct FieldSpec {
  FieldKind kind = FieldKind::gaussian_packet;
  double width = 1.0;        // gaussian-packet, radial-channel
  int k_max = 8;             // band-limited-random
  bool zero_mean = false;    // band-limited-random
  int kappa = -1;            // radial-channel
  ExtremizerFamily family;   // extremizer-family
  std::string path;          // from-file

  bool is_radial() const {
    return kind == FieldKind::extremizer_family || kind == FieldKind::radial_channel;
  }
};

/// "kind=gaussian-packet width=1" | "kind=band-limited-random kmax=8" |
/// "kind=extremizer-family family=psi0 eps=1 m=0 delta=0.1 [lambda=3 sign=1]" |
/// "kind=radial-channel kappa=-1 width=1" | "kind=from-file path=psi.hdsf".
inline FieldSpec parse_field_spec(const std::string& text) {
  const auto kv = detail::parse_key_values(text);
  const std::string kind = kv.require("kind");
  FieldSpec spec;
  if (kind == "gaussian-packet") {
    kv.allow_only({"kind", "width"});
    spec.kind = FieldKind::gaussian_packet;
    spec.width = kv.number_or("width", 1.0);
    if (!(spec.width > 0.0)) throw SchemaError("gaussian-packet: width must be positive");
    return spec;
  }
  if (kind == "band-limited-random") {
    kv.allow_only({"kind", "kmax", "zero_mean"});
    spec.kind = FieldKind::band_limited_random;
    spec.k_max = kv.has("kmax") ? kv.integer("kmax") : 8;
    spec.zero_mean = kv.has("zero_mean") && kv.integer("zero_mean") != 0;
    if (spec.k_max < 1) throw SchemaError("band-limited-random: kmax must be >= 1");
    return spec;
  }
  if (kind == "extremizer-family") {
    kv.allow_only({"kind", "family", "eps", "m", "lambda", "delta", "sign"});
    spec.kind = FieldKind::extremizer_family;
    const std::string fam = kv.require("family");
    if (fam == "psi0")
      spec.family.tag = FamilyTag::psi0;
    else if (fam == "exp-lambda")
      spec.family.tag = FamilyTag::exp_lambda;
    else if (fam == "phi0-radial")
      spec.family.tag = FamilyTag::phi0_radial;
    else
      throw SchemaError("unknown family '" + fam + "'");
    spec.family.eps = kv.number_or("eps", 1.0);
    spec.family.mass = kv.number_or("m", 0.0);
    spec.family.lambda = kv.number_or("lambda", 3.0);
    spec.family.delta = kv.number_or("delta", 0.0);
    spec.family.sign = kv.has("sign") ? kv.integer("sign") : +1;
    if (spec.family.sign != 1 && spec.family.sign != -1)
      throw SchemaError("extremizer-family: sign must be +1 or -1");
    return spec;
  }
  if (kind == "radial-channel") {
    kv.allow_only({"kind", "kappa", "width"});
    spec.kind = FieldKind::radial_channel;
    spec.kappa = kv.integer("kappa");
    spec.width = kv.number_or("width", 1.0);
    if (spec.kappa == 0) throw SchemaError("radial-channel: kappa must be nonzero");
    if (!(spec.width > 0.0)) throw SchemaError("radial-channel: width must be positive");
    return spec;
  }
  if (kind == "from-file") {
    kv.allow_only({"kind", "path"});
    spec.kind = FieldKind::from_file;
    spec.path = kv.require("path");
    return spec;
  }
  throw SchemaError("unknown field kind '" + kind + "'");
}

/// Gaussian channel profiles smooth at the origin for the requested kappa.
inline RadialChannel build_channel_field(const FieldSpec& spec, const RadialGrid& grid) {
  if (spec.kind == FieldKind::extremizer_family) {
    switch (spec.family.tag) {
      case FamilyTag::psi0: return build_psi0(grid, spec.family);
      case FamilyTag::exp_lambda: return build_exp_lambda(grid, spec.family);
      case FamilyTag::phi0_radial: {
        RadialChannel ch(-1, grid);
        ch.f = build_phi0_radial(grid, spec.family);
        return ch;
      }
    }
  }
  if (spec.kind == FieldKind::radial_channel) {
    const int lu = ell_of_kappa(spec.kappa), ld = ell_of_kappa(-spec.kappa);
    const double w = spec.width;
    return RadialChannel::from_profiles(
        spec.kappa, grid,
        [lu, w](double r) { return Complex(std::pow(r / w, lu) * std::exp(-r * r / (w * w)), 0.0); },
        [ld, w](double r) {
          return Complex(0.5 * std::pow(r / w, ld) * std::exp(-r * r / (w * w)), 0.0);
        });
  }
  throw InvalidArgument("field spec does not describe a radial-channel field");
}

inline SpinorField build_cartesian_field(const FieldSpec& spec, const CartesianGrid& grid,
                                         std::uint64_t seed) {
  switch (spec.kind) {
    case FieldKind::gaussian_packet: {
      Vec4c e1 = Vec4c::Zero();
      e1[0] = 1.0;
      return gaussian_packet<4>(grid, spec.width, Vec3::Zero(), e1);
    }
    case FieldKind::band_limited_random:
      return band_limited_random<4>(grid, seed, spec.k_max, spec.zero_mean);
    case FieldKind::from_file: {
      std::ifstream in(spec.path, std::ios::binary);
      if (!in) throw SchemaError("cannot open field file " + spec.path);
      return read_field<4>(in);
    }
    default:
      throw InvalidArgument("field spec does not describe a cartesian field");
  }
}

}  // namespace hardydirac
