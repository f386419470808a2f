#pragma once
// Desk-scale parameter schedule: frequencies lambda_q, pipe frequencies rho_q,
// mollification lengths ell_q, epsilon_0, per-level C_0 and the horizon.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mhd/geometry.hpp"
#include "mhd/grid.hpp"

namespace mhd {

struct LevelParams {
  long lambda = 0;
  long rho = 0;
  double ell = 0.0;
};

// How C_0 is fixed at each level n >= 2.  Under the automatic policy a
// vanishing Rw_{n-1} gives C_0 = 0 and zero amplitudes.
struct C0Policy {
  bool automatic = true;
  double safety = 1.25;   // automatic: C_0 = safety * max ||Rw_{n-1}||_F / (1000 sigma)
  std::vector<double> values;  // explicit: one value per level (index 0 = level 1), or a single value
  double value_for(int level) const;
};

struct ParameterSchedule {
  double p = 4.0;
  double r = 0.0;  // recorded exponent, rho_q ~ lambda_q^r
  std::vector<LevelParams> levels;  // index 0 is level 1
  std::string direction_preset = "default4";
  long n_lambda = 1;
  double eps0 = 0.0;
  bool eps0_from_formula = true;
  C0Policy c0;
  double baseline_c = 0.25;
  double sigma = 1e-3;
  int amplitude_order = 2;
  double t_end = 0.0;
  // Cutoff and profile parameters.
  double h_phi = 0.75;          // half-width of the pipe profile in phase units
  int profile_power = 2;        // phi ~ exp(-a / (1 - (s / h)^power))
  double profile_a = 1.0;
  double margin_max = kPi / 8.0;
  double margin_min = 0.0;      // resolved against the grid: max(4h, pi/32)
  // Optional metadata when the level list came from lambda_q = N^M a^{b^q}.
  std::optional<std::array<double, 3>> formula_mab;
  std::vector<std::string> notes;

  int level_count() const { return int(levels.size()); }
  double lambda(int n) const { return double(levels.at(n - 1).lambda); }
  double rho(int n) const { return double(levels.at(n - 1).rho); }
  double ell(int n) const { return levels.at(n - 1).ell; }
  // Margin of the box O_j (j >= 0).
  double margin(int j) const;
};

// Builds and validates the schedule from the "schedule" section of a config.
// Throws std::invalid_argument naming the violated constraint and the level.
ParameterSchedule make_schedule(const nlohmann::json& section, const Grid& grid);

// The super-exponential generator lambda_q = N^M a^{b^q}; throws with an instruction to
// use an explicit list when the values exceed exact integer range.
std::vector<long> formula_levels(long n_lambda, double M, double a, double b, int count);

// ell_q from min(lambda^{-50/(1-2/p)}, lambda^{-50/(2/p)}), clamped to the
// resolvable floor.
double nominal_ell(double lambda, double p);

nlohmann::ordered_json schedule_to_json(const ParameterSchedule& s);
std::string decimal(double x);

}  // namespace mhd
