#pragma once
// Box cutoffs eta_j, nested pipe cutoffs chi_m and the Mikado pipe profile
// phi, each available as grid samples and as pointwise Taylor jets.
//
// eta_j(x) = b_j(x1) b_j(x2) with b_j a plateau equal to 1 on the box O_j and
// vanishing outside O_{j+1}.  chi_1 = 1, and for m >= 2
//   chi_m = prod_{l=2..m} U_l^(m),  U_l^(m) = 1 - prod_P (1 - sigma_{l,m}(rho_l k_P . x)),
// where sigma_{l,m} is a 2 pi periodic plateau in the pipe phase that equals 1
// on |s| <= p_{l,m} and vanishes for |s| >= q_{l,m}.  The widths grow with
// m - l so that chi_m = 1 on the support of chi_{m-1} phi_m.

#include <cmath>
#include <cstdint>
#include <vector>

#include "mhd/geometry.hpp"
#include "mhd/grid.hpp"
#include "mhd/jets.hpp"
#include "mhd/schedule.hpp"
#include "mhd/smooth.hpp"

namespace mhd::cutoffs {

// Reduces a phase to [-pi, pi).
inline double wrap_phase(double s) {
  double r = std::fmod(s + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r - kPi;
}

// Even 2 pi periodic pipe profile phi(s) = C exp(-a / (1 - (s / h)^power)) on
// |s| < h, zero elsewhere, with the period mean of phi^2 equal to 1.
class MikadoProfile {
 public:
  MikadoProfile() = default;
  MikadoProfile(double half_width, int power, double a);

  double half_width() const { return h_; }
  double normalization() const { return c_; }
  double value(double s) const;
  // Taylor series of phi about s0 in the increment of s.
  template <int K>
  Taylor1<double, K> series(double s0) const {
    const double s = wrap_phase(s0);
    if (std::abs(s) >= h_) return Taylor1<double, K>{};
    const auto t = Taylor1<double, K>::variable(s) * (1.0 / h_);
    auto u = t;
    for (int i = 1; i < power_; ++i) u = u * t;
    const auto g = reciprocal(Taylor1<double, K>::constant(1.0) - u) * (-a_);
    return exp(g) * c_;
  }
  // Period mean of phi^2 by Gauss-Legendre quadrature (1 by construction).
  double mean_square() const;

 private:
  double raw(double s) const;
  double h_ = 0.75;
  int power_ = 2;
  double a_ = 1.0;
  double c_ = 1.0;
};

struct InvariantReport {
  bool ok = true;
  double max_violation = 0.0;
  std::string detail;
};

class CutoffFamily {
 public:
  CutoffFamily(const ParameterSchedule& schedule, const geometry::DirectionSet& set, const Grid& grid);

  const MikadoProfile& profile() const { return profile_; }
  const geometry::DirectionSet& directions() const { return set_; }
  const Grid& grid() const { return grid_; }
  int level_count() const { return levels_; }

  // Box O_j = [-3 pi / 4 + margin_j, 3 pi / 4 - margin_j]^2.
  double box_half_width(int j) const { return 0.75 * kPi - schedule_.margin(j); }
  bool in_box(int j, double x1, double x2) const {
    const double b = box_half_width(j);
    return std::abs(x1) <= b && std::abs(x2) <= b;
  }
  // Plateau widths of sigma_{l,m} in phase units.
  double inner_width(int l, int m) const;
  double outer_width(int l, int m) const;
  // Pipe phase rho_l k_P . x.
  double phase(int l, std::size_t P, double x1, double x2) const {
    const auto& k = set_.pair_representative(P);
    return schedule_.rho(l) * (k.vec()(0) * x1 + k.vec()(1) * x2);
  }

  double eta(int j, double x1, double x2) const;
  double chi(int m, double x1, double x2) const;
  // phi_{P,l}(x) = phi(rho_l k_P . x)
  double pipe(int l, std::size_t P, double x1, double x2) const { return profile_.value(phase(l, P, x1, x2)); }

  template <int K>
  Jet2<double, K> eta_jet(int j, double x1, double x2) const {
    const double inner = box_half_width(j), outer = box_half_width(j + 1);
    return jet_separable(plateau_series<K>(x1, inner, outer), plateau_series<K>(x2, inner, outer));
  }

  template <int K>
  Jet2<double, K> chi_jet(int m, double x1, double x2) const {
    auto out = Jet2<double, K>::constant(1.0);
    for (int l = 2; l <= m; ++l) {
      const double p = inner_width(l, m), q = outer_width(l, m);
      auto miss = Jet2<double, K>::constant(1.0);
      bool any = false;
      for (std::size_t P = 0; P < set_.pair_count(); ++P) {
        const double s = wrap_phase(phase(l, P, x1, x2));
        if (std::abs(s) >= q) continue;
        any = true;
        const auto& k = set_.pair_representative(P);
        const auto sig = jet_from_linear(plateau_series<K>(s, p, q), schedule_.rho(l) * k.vec()(0),
                                         schedule_.rho(l) * k.vec()(1));
        miss = miss * (Jet2<double, K>::constant(1.0) - sig);
      }
      if (!any) return Jet2<double, K>{};
      out = out * (Jet2<double, K>::constant(1.0) - miss);
    }
    return out;
  }

  template <int K>
  Jet2<double, K> pipe_jet(int l, std::size_t P, double x1, double x2) const {
    const auto& k = set_.pair_representative(P);
    return jet_from_linear(profile_.series<K>(phase(l, P, x1, x2)), schedule_.rho(l) * k.vec()(0),
                           schedule_.rho(l) * k.vec()(1));
  }

  Field eta_field(int j) const;
  Field chi_field(int m) const;
  Field pipe_field(int l, std::size_t P) const;

  // Omega_m: points inside some pipe core |s_l| <= h_phi for every l = 2..m.
  // The wide version uses |s_l| < 2 h_phi, the distance fattening by one
  // pipe half-width.  Omega_1 is the whole cell.
  std::vector<std::uint8_t> omega_mask(int m, bool wide) const;

  // Grid area of {f > threshold}.
  double support_area(const Field& f, double threshold = 0.0) const;

  // Pointwise checks of the box and nested pipe cutoff properties.
  InvariantReport check_eta(int j) const;
  InvariantReport check_chi(int m) const;
  // max ||D^n chi_m|| / rho_m^n over the grid for n = 1, 2.
  std::array<double, 2> chi_derivative_constants(int m) const;

 private:
  ParameterSchedule schedule_;
  geometry::DirectionSet set_;
  Grid grid_;
  MikadoProfile profile_;
  int levels_ = 0;
};

}  // namespace mhd::cutoffs
