#include "mhd/cutoffs.hpp"

#include <sstream>
#include <stdexcept>

#include "mhd/quadrature.hpp"

namespace mhd::cutoffs {

MikadoProfile::MikadoProfile(double half_width, int power, double a) : h_(half_width), power_(power), a_(a) {
  if (!(h_ > 0.0) || 2.0 * h_ >= kPi) throw std::invalid_argument("cutoffs: profile half-width must lie in (0, pi/2)");
  if (power_ < 1 || power_ % 2 != 0) throw std::invalid_argument("cutoffs: profile power must be a positive even integer");
  if (!(a_ > 0.0)) throw std::invalid_argument("cutoffs: profile exponent a must be positive");
  c_ = 1.0;
  c_ = 1.0 / std::sqrt(mean_square());
}

double MikadoProfile::raw(double s) const {
  const double y = std::abs(s) / h_;
  if (y >= 1.0) return 0.0;
  return std::exp(-a_ / (1.0 - std::pow(y, power_)));
}

double MikadoProfile::value(double s) const { return c_ * raw(wrap_phase(s)); }

double MikadoProfile::mean_square() const {
  // Composite Gauss-Legendre over [0, h]; the integrand is even.
  static const GaussLegendre gl(48);
  const int panels = 64;
  double s = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = h_ * i / panels, b = h_ * (i + 1) / panels;
    s += gl.integrate([&](double x) { return c_ * c_ * raw(x) * raw(x); }, a, b);
  }
  return 2.0 * s / (2.0 * kPi);
}

CutoffFamily::CutoffFamily(const ParameterSchedule& schedule, const geometry::DirectionSet& set, const Grid& grid)
    : schedule_(schedule),
      set_(set),
      grid_(grid),
      profile_(schedule.h_phi, schedule.profile_power, schedule.profile_a),
      levels_(schedule.level_count()) {}

double CutoffFamily::inner_width(int l, int m) const {
  return schedule_.h_phi * (1.0 + 2.0 * (m - l) / (2.0 * levels_));
}

double CutoffFamily::outer_width(int l, int m) const {
  return schedule_.h_phi * (1.0 + (2.0 * (m - l) + 1.0) / (2.0 * levels_));
}

double CutoffFamily::eta(int j, double x1, double x2) const {
  const double inner = box_half_width(j), outer = box_half_width(j + 1);
  return plateau(x1, inner, outer) * plateau(x2, inner, outer);
}

double CutoffFamily::chi(int m, double x1, double x2) const {
  double out = 1.0;
  for (int l = 2; l <= m; ++l) {
    const double p = inner_width(l, m), q = outer_width(l, m);
    double miss = 1.0;
    for (std::size_t P = 0; P < set_.pair_count(); ++P)
      miss *= 1.0 - plateau(wrap_phase(phase(l, P, x1, x2)), p, q);
    out *= 1.0 - miss;
  }
  return out;
}

namespace {

template <typename F>
Field sample_grid(const Grid& g, F&& fn) {
  Field out(g.N, g.N);
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) out(i, j) = fn(g.x(j), g.x(i));
  return out;
}

}  // namespace

Field CutoffFamily::eta_field(int j) const {
  return sample_grid(grid_, [&](double x1, double x2) { return eta(j, x1, x2); });
}

Field CutoffFamily::chi_field(int m) const {
  return sample_grid(grid_, [&](double x1, double x2) { return chi(m, x1, x2); });
}

Field CutoffFamily::pipe_field(int l, std::size_t P) const {
  return sample_grid(grid_, [&](double x1, double x2) { return pipe(l, P, x1, x2); });
}

std::vector<std::uint8_t> CutoffFamily::omega_mask(int m, bool wide) const {
  const double width = (wide ? 2.0 : 1.0) * schedule_.h_phi;
  std::vector<std::uint8_t> mask(std::size_t(grid_.N) * grid_.N, 1);
  for (int i = 0; i < grid_.N; ++i)
    for (int j = 0; j < grid_.N; ++j) {
      bool inside = true;
      for (int l = 2; l <= m && inside; ++l) {
        bool any = false;
        for (std::size_t P = 0; P < set_.pair_count() && !any; ++P) {
          const double s = std::abs(wrap_phase(phase(l, P, grid_.x(j), grid_.x(i))));
          any = wide ? (s < width) : (s <= width);
        }
        inside = any;
      }
      mask[std::size_t(i) * grid_.N + j] = inside ? 1 : 0;
    }
  return mask;
}

double CutoffFamily::support_area(const Field& f, double threshold) const {
  return double((f > threshold).count()) * grid_.h * grid_.h;
}

InvariantReport CutoffFamily::check_eta(int j) const {
  InvariantReport r;
  const Field e = eta_field(j);
  std::ostringstream os;
  for (int i = 0; i < grid_.N; ++i)
    for (int c = 0; c < grid_.N; ++c) {
      const double x1 = grid_.x(c), x2 = grid_.x(i), v = e(i, c);
      double bad = 0.0;
      if (v < 0.0 || v > 1.0) bad = std::max(-v, v - 1.0);
      if (in_box(j, x1, x2)) bad = std::max(bad, std::abs(v - 1.0));
      if (!in_box(j + 1, x1, x2)) bad = std::max(bad, std::abs(v));
      r.max_violation = std::max(r.max_violation, bad);
    }
  r.ok = r.max_violation <= 1e-15;
  os << "eta_" << j << ": max violation " << r.max_violation;
  r.detail = os.str();
  return r;
}

InvariantReport CutoffFamily::check_chi(int m) const {
  InvariantReport r;
  std::ostringstream os;
  const Field cm = chi_field(m);
  double range_bad = 0.0;
  for (Eigen::Index n = 0; n < cm.size(); ++n) range_bad = std::max({range_bad, -cm.data()[n], cm.data()[n] - 1.0});
  double one_bad = 0.0, support_bad = 0.0, product_bad = 0.0;
  if (m >= 2) {
    const Field prev = chi_field(m - 1);
    const auto wide = omega_mask(m, true);
    for (int i = 0; i < grid_.N; ++i)
      for (int c = 0; c < grid_.N; ++c) {
        const double x1 = grid_.x(c), x2 = grid_.x(i), v = cm(i, c);
        for (std::size_t P = 0; P < set_.pair_count(); ++P) {
          const double base = prev(i, c) * pipe(m, P, x1, x2);
          if (base != 0.0) one_bad = std::max(one_bad, std::abs(v - 1.0));
          product_bad = std::max(product_bad, std::abs(v * base - base));
        }
        if (v > 0.0 && !wide[std::size_t(i) * grid_.N + c]) support_bad = std::max(support_bad, v);
      }
  } else {
    one_bad = (cm - 1.0).abs().maxCoeff();
  }
  r.max_violation = std::max({range_bad, one_bad, support_bad, product_bad});
  r.ok = r.max_violation <= 1e-14;
  os << "chi_" << m << ": range " << range_bad << ", value-one " << one_bad << ", support " << support_bad
     << ", product " << product_bad;
  r.detail = os.str();
  return r;
}

std::array<double, 2> CutoffFamily::chi_derivative_constants(int m) const {
  double g1 = 0.0, g2 = 0.0;
  for (int i = 0; i < grid_.N; ++i)
    for (int c = 0; c < grid_.N; ++c) {
      const auto j = chi_jet<2>(m, grid_.x(c), grid_.x(i));
      g1 = std::max(g1, std::hypot(j.d(1, 0), j.d(0, 1)));
      g2 = std::max(g2, std::sqrt(j.d(2, 0) * j.d(2, 0) + 2.0 * j.d(1, 1) * j.d(1, 1) + j.d(0, 2) * j.d(0, 2)));
    }
  const double rho = m >= 2 ? schedule_.rho(m) : 1.0;
  return {g1 / rho, g2 / (rho * rho)};
}

}  // namespace mhd::cutoffs
