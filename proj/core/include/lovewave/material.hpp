#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lovewave {

// Constitutive and inertial constants of an isotropic Cosserat half-space.
//
// The curvature moduli are stored as the products a_i = mu_e * L_c^2 * alpha_i
// and the rotational inertia as J = j * mu_e * tau_c^2; the length scale L_c,
// the time scale tau_c and j never enter any computation on their own.
// Values are taken verbatim: no unit conversion happens anywhere.
struct MaterialParams {
  double mu_e = 0.0;
  double mu_c = 0.0;
  double lambda_e = 0.0;  // carried for file compatibility, unused by Love waves
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double J = 0.0;
  double rho = 0.0;

  friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

// Wave number paired with the material; every operator assumes k > 0.
struct WaveContext {
  double k = 0.0;
  MaterialParams params;
};

WaveContext make_wave_context(const MaterialParams& params, double k);

struct ConditionRow {
  std::string name;  // e.g. "2*a1+a3 > 0"
  double margin = 0.0;
  bool pass = false;
};

struct ConditionReport {
  std::vector<ConditionRow> rows;
  bool overall = false;

  const ConditionRow* find(std::string_view name) const;
};

// Parses the flat `key = value` material format. Keys are exactly
// mu_e, mu_c, lambda_e, a1, a2, a3, J, rho; lambda_e is optional (default 0).
// `#` starts a comment. Throws Error with Syntax, UnknownKey, Duplicate,
// MissingKey or NonFinite.
MaterialParams parse_material(std::string_view text);

// Shortest round-trip representation of every field, one per line.
std::string serialize_material(const MaterialParams& params);

MaterialParams read_material_file(const std::filesystem::path& path);

// The four strict inequalities under which real plane waves exist for every
// in-plane direction: mu_e > 0, mu_c > 0, a1 + a2 > 0, 2 a1 + a3 > 0.
// A row passes when its margin exceeds `tolerance`.
ConditionReport validate_wave_conditions(const MaterialParams& params,
                                         double tolerance = 0.0);

// Strict positive definiteness of the energy. Informational only.
ConditionReport check_positive_definiteness(const MaterialParams& params,
                                            double tolerance = 0.0);

// Throws InvalidMaterial naming the first failing wave condition.
void require_wave_conditions(const MaterialParams& params);

}  // namespace lovewave
