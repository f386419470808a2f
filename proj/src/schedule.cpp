#include "mhd/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mhd {
namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument("schedule: " + what); }

std::vector<long> int_list(const nlohmann::json& j, const std::string& key) {
  std::vector<long> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) fail("'" + key + "' must be a list of integers");
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) fail("'" + key + "' entries must be integers");
    out.push_back(v.get<long>());
  }
  return out;
}

}  // namespace

double C0Policy::value_for(int level) const {
  if (values.empty()) fail("explicit C_0 policy without values");
  if (values.size() == 1) return values[0];
  if (level < 1 || std::size_t(level) > values.size())
    fail("no C_0 value for level " + std::to_string(level));
  return values[level - 1];
}

double ParameterSchedule::margin(int j) const {
  const int L = level_count();
  const double frac = double(std::min(std::max(j, 0), L + 1)) / double(L + 1);
  return margin_max - (margin_max - margin_min) * frac;
}

std::vector<long> formula_levels(long n_lambda, double M, double a, double b, int count) {
  std::vector<long> out;
  for (int q = 1; q <= count; ++q) {
    const double log10_lambda = M * std::log10(double(n_lambda)) + std::pow(b, q) * std::log10(a);
    if (!(log10_lambda < 15.0)) {
      std::ostringstream os;
      os << "lambda_" << q << " = N^M a^{b^q} has about 10^" << log10_lambda
         << " magnitude and overflows desk scale; supply an explicit 'lambda' list instead";
      fail(os.str());
    }
    out.push_back(std::lround(std::pow(10.0, log10_lambda)));
  }
  return out;
}

double nominal_ell(double lambda, double p) {
  const double a = -50.0 / (1.0 - 2.0 / p) * std::log(lambda);
  const double b = -50.0 / (2.0 / p) * std::log(lambda);
  return std::exp(std::min(a, b));
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ParameterSchedule make_schedule(const nlohmann::json& sec, const Grid& grid) {
  ParameterSchedule s;
  s.p = sec.value("p", 4.0);
  if (!(s.p > 2.0)) fail("p must exceed 2");

  geometry::DirectionSet set;
  if (sec.contains("directions") && sec.at("directions").is_array()) {
    std::vector<std::array<long, 3>> triples;
    for (const auto& t : sec.at("directions")) triples.push_back({t.at(0).get<long>(), t.at(1).get<long>(), t.at(2).get<long>()});
    set = geometry::DirectionSet::from_triples(triples);
    s.direction_preset = "explicit";
  } else {
    s.direction_preset = sec.value("directions", std::string("default4"));
    set = geometry::DirectionSet::preset(s.direction_preset);
  }
  s.n_lambda = set.n_lambda();

  std::vector<long> lam = int_list(sec, "lambda");
  if (sec.contains("formula")) {
    const auto& f = sec.at("formula");
    const double M = f.at("M").get<double>(), a = f.at("a").get<double>(), b = f.at("b").get<double>();
    s.formula_mab = std::array<double, 3>{M, a, b};
    lam = formula_levels(s.n_lambda, M, a, b, f.value("count", 3));
    s.notes.push_back("levels generated by lambda_q = N^M a^{b^q}");
  }
  const std::vector<long> rho = int_list(sec, "rho");
  if (lam.empty()) fail("no levels: supply 'lambda' and 'rho'");
  if (rho.size() != lam.size()) fail("'lambda' and 'rho' must have equal length");

  for (std::size_t q = 0; q < lam.size(); ++q) {
    const std::string lvl = "level " + std::to_string(q + 1);
    if (lam[q] <= 0 || rho[q] <= 0) fail(lvl + ": lambda and rho must be positive");
    if (lam[q] % s.n_lambda != 0)
      fail(lvl + ": lambda = " + std::to_string(lam[q]) + " is not a multiple of N_Lambda = " + std::to_string(s.n_lambda));
    if (rho[q] % s.n_lambda != 0)
      fail(lvl + ": rho = " + std::to_string(rho[q]) + " is not a multiple of N_Lambda = " + std::to_string(s.n_lambda));
    if (q > 0 && lam[q] <= lam[q - 1]) fail(lvl + ": lambda must be strictly increasing");
  }
  const long top = lam.back() + rho.back();
  if (3 * top > grid.N / 2)
    fail("level " + std::to_string(lam.size()) + ": grid admission 3 (lambda + rho) = " + std::to_string(3 * top) +
         " exceeds N/2 = " + std::to_string(grid.N / 2));

  s.h_phi = sec.value("h_phi", 0.75);
  s.profile_power = sec.value("profile_power", 2);
  s.profile_a = sec.value("profile_a", 1.0);
  if (!(s.h_phi > 0.0) || 2.0 * s.h_phi >= kPi) fail("h_phi must lie in (0, pi/2)");
  for (std::size_t q = 1; q < lam.size(); ++q) {
    if (s.h_phi / double(rho[q]) < 4.0 * grid.h) {
      long nmin = 16;
      while (s.h_phi / double(rho[q]) < 4.0 * (2.0 * kPi / double(nmin))) nmin *= 2;
      fail("level " + std::to_string(q + 1) + ": pipe half-width h_phi / rho = " + decimal(s.h_phi / double(rho[q])) +
           " is below 4h; N >= " + std::to_string(nmin) + " would resolve it");
    }
  }

  const double floor_ell = 2.0 * grid.h;
  std::vector<double> ell;
  if (sec.contains("ell") && sec.at("ell").is_array()) {
    for (const auto& v : sec.at("ell")) ell.push_back(v.get<double>());
    if (ell.size() != lam.size()) fail("'ell' must have one entry per level");
  } else {
    for (long l : lam) ell.push_back(std::max(nominal_ell(double(l), s.p), floor_ell));
    s.notes.push_back("ell_q clamped to the resolvable floor 2h");
  }
  for (std::size_t q = 0; q < lam.size(); ++q) {
    if (ell[q] < floor_ell * (1.0 - 1e-12))
      fail("level " + std::to_string(q + 1) + ": ell = " + decimal(ell[q]) + " is below 2h");
    s.levels.push_back({lam[q], rho[q], ell[q]});
  }

  double rsum = 0.0;
  for (std::size_t q = 0; q < lam.size(); ++q) rsum += std::log(double(rho[q])) / std::log(double(lam[q]));
  s.r = sec.value("r", rsum / double(lam.size()));

  if (sec.contains("epsilon0") && sec.at("epsilon0").is_number()) {
    s.eps0 = sec.at("epsilon0").get<double>();
    s.eps0_from_formula = false;
    if (s.eps0 < 0.0) fail("epsilon0 must be nonnegative");
  } else {
    s.eps0 = std::pow(double(lam[0]), -1.0 / 15.0);
  }

  if (sec.contains("c0")) {
    const auto& c = sec.at("c0");
    if (c.is_string()) {
      if (c.get<std::string>() != "auto") fail("'c0' must be \"auto\", a number or a list");
    } else if (c.is_number()) {
      s.c0.automatic = false;
      s.c0.values = {c.get<double>()};
    } else if (c.is_array()) {
      s.c0.automatic = false;
      for (const auto& v : c) s.c0.values.push_back(v.get<double>());
      if (s.c0.values.size() != lam.size()) fail("'c0' list must have one entry per level");
    }
    for (double v : s.c0.values)
      if (!(v > 0.0)) fail("C_0 values must be positive");
  }
  s.c0.safety = sec.value("c0_safety", 1.25);
  if (!(s.c0.safety >= 1.0)) fail("c0_safety must be at least 1");

  s.baseline_c = sec.value("baseline_c", 0.25);
  s.amplitude_order = sec.value("amplitude_order", 2);
  if (s.amplitude_order < 0 || s.amplitude_order > 6) fail("amplitude_order must lie in [0, 6]");

  const double t_auto = -std::log(1e-12) / (double(lam[0]) * double(lam[0]));
  if (sec.contains("t_end") && sec.at("t_end").is_number()) {
    s.t_end = sec.at("t_end").get<double>();
  } else {
    s.t_end = t_auto;
  }
  if (sec.contains("t_end_cap")) s.t_end = std::min(s.t_end, sec.at("t_end_cap").get<double>());
  if (!(s.t_end > 0.0)) fail("t_end must be positive");

  s.margin_max = sec.value("margin_max", kPi / 8.0);
  s.margin_min = sec.value("margin_min", std::max(4.0 * grid.h, kPi / 32.0));
  if (!(s.margin_min < s.margin_max)) fail("margin_min must be below margin_max");
  return s;
}

nlohmann::ordered_json schedule_to_json(const ParameterSchedule& s) {
  nlohmann::ordered_json j;
  j["directions"] = s.direction_preset;
  j["n_lambda"] = s.n_lambda;
  j["p"] = decimal(s.p);
  j["r"] = decimal(s.r);
  j["levels"] = nlohmann::ordered_json::array();
  for (std::size_t q = 0; q < s.levels.size(); ++q) {
    nlohmann::ordered_json l;
    l["q"] = q + 1;
    l["lambda"] = s.levels[q].lambda;
    l["rho"] = s.levels[q].rho;
    l["ell"] = decimal(s.levels[q].ell);
    j["levels"].push_back(l);
  }
  j["epsilon0"] = decimal(s.eps0);
  j["epsilon0_source"] = s.eps0_from_formula ? "lambda_1^(-1/15)" : "override";
  if (s.c0.automatic) {
    j["c0"] = "auto";
    j["c0_safety"] = decimal(s.c0.safety);
  } else {
    j["c0"] = nlohmann::ordered_json::array();
    for (double v : s.c0.values) j["c0"].push_back(decimal(v));
  }
  j["baseline_c"] = decimal(s.baseline_c);
  j["sigma"] = decimal(s.sigma);
  j["amplitude_order"] = s.amplitude_order;
  j["t_end"] = decimal(s.t_end);
  j["h_phi"] = decimal(s.h_phi);
  j["profile_power"] = s.profile_power;
  j["profile_a"] = decimal(s.profile_a);
  j["margin_max"] = decimal(s.margin_max);
  j["margin_min"] = decimal(s.margin_min);
  if (s.formula_mab) {
    j["formula"] = {{"M", decimal((*s.formula_mab)[0])}, {"a", decimal((*s.formula_mab)[1])},
                    {"b", decimal((*s.formula_mab)[2])}};
  }
  j["notes"] = s.notes;
  return j;
}

}  // namespace mhd
