#include "mhd/geometry.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mhd/fft.hpp"
#include "mhd/fields.hpp"

namespace mhd::geometry {
namespace {

std::string triple_text(long p, long q, long d) {
  std::ostringstream os;
  os << "(" << p << ", " << q << ", " << d << ")";
  return os.str();
}

// Entries (11, 12, 22) of k_perp (x) k_perp.
Eigen::Vector3d perp_square(const Direction& k) {
  const Eigen::Vector2d v = k.perp();
  return Eigen::Vector3d(v(0) * v(0), v(0) * v(1), v(1) * v(1));
}

long scale_or_default(const DirectionSet& set, long scale) {
  const long s = scale == 0 ? set.n_lambda() : scale;
  for (const auto& k : set.directions())
    if ((s * k.p) % k.d != 0 || (s * k.q) % k.d != 0)
      throw std::invalid_argument("geometry: scale " + std::to_string(s) + " does not make direction " +
                                  triple_text(k.p, k.q, k.d) + " integral");
  return s;
}

void check_symmetric_coefficients(const DirectionSet& set, const std::vector<double>& b) {
  if (b.size() != set.size())
    throw std::invalid_argument("geometry: expected " + std::to_string(set.size()) + " coefficients, got " +
                                std::to_string(b.size()));
  for (std::size_t P = 0; P < set.pair_count(); ++P)
    if (b[2 * P] != b[2 * P + 1]) {
      const auto& k = set.pair_representative(P);
      throw std::invalid_argument("geometry: coefficient of " + triple_text(k.p, k.q, k.d) +
                                  " differs from its negation; the flow would not be real");
    }
}

}  // namespace

DirectionSet DirectionSet::preset(const std::string& name) {
  if (name == "default4") {
    DirectionSet s = from_triples({{1, 0, 1}, {0, 1, 1}, {3, 4, 5}, {3, -4, 5}});
    s.default4_ = true;
    return s;
  }
  if (name == "axes") return from_triples({{1, 0, 1}, {0, 1, 1}});
  throw std::invalid_argument("geometry: unknown direction preset '" + name + "'");
}

DirectionSet DirectionSet::from_triples(const std::vector<std::array<long, 3>>& triples) {
  if (triples.empty()) throw std::invalid_argument("geometry: empty direction set");
  DirectionSet s;
  for (const auto& t : triples) {
    long p = t[0], q = t[1], d = t[2];
    if (d <= 0 || p * p + q * q != d * d)
      throw std::invalid_argument("geometry: " + triple_text(p, q, d) + " is not a unit rational direction");
    const long g = std::gcd(std::gcd(std::labs(p), std::labs(q)), d);
    p /= g;
    q /= g;
    d /= g;
    const Direction k{p, q, d};
    bool seen = false;
    for (const auto& e : s.dirs_) seen = seen || e == k || e == k.negated();
    if (seen) continue;
    s.dirs_.push_back(k);
    s.dirs_.push_back(k.negated());
  }
  long n = 1;
  for (const auto& k : s.dirs_) {
    const long a = k.d / std::gcd(std::labs(k.p), k.d);
    const long b = k.d / std::gcd(std::labs(k.q), k.d);
    n = std::lcm(n, std::lcm(a, b));
  }
  s.n_lambda_ = n;
  return s;
}

AffineDecomposition affine_decomposition(const DirectionSet& set, double c) {
  AffineDecomposition out;
  const std::size_t np = set.pair_count();
  out.base.assign(np, 0.0);
  out.linear.assign(np, Eigen::Vector3d::Zero());
  if (set.is_default4()) {
    // Pairs in preset order: (1,0), (0,1), (3,4)/5, (3,-4)/5.
    out.base[0] = 1.0 - 18.0 * c / 25.0;
    out.linear[0] = Eigen::Vector3d(0, 0, 1);
    out.base[1] = 1.0 - 32.0 * c / 25.0;
    out.linear[1] = Eigen::Vector3d(1, 0, 0);
    out.base[2] = c;
    out.linear[2] = Eigen::Vector3d(0, -25.0 / 24.0, 0);
    out.base[3] = c;
    out.linear[3] = Eigen::Vector3d(0, 25.0 / 24.0, 0);
    return out;
  }
  Eigen::MatrixXd A(3, np);
  for (std::size_t P = 0; P < np; ++P) A.col(P) = perp_square(set.pair_representative(P));
  const Eigen::MatrixXd pinv = A.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::VectorXd v0 = Eigen::VectorXd::Constant(np, c);
  const Eigen::VectorXd base = v0 + pinv * (Eigen::Vector3d(1, 0, 1) - A * v0);
  for (std::size_t P = 0; P < np; ++P) {
    out.base[P] = base(P);
    out.linear[P] = pinv.row(P).transpose();
  }
  return out;
}

GeometricDecomposition decompose_symmetric(const DirectionSet& set, const Eigen::Matrix2d& R, double c,
                                           double sigma) {
  const double dist = (R - Eigen::Matrix2d::Identity()).norm();
  if (dist > sigma) {
    std::ostringstream os;
    os << "geometry: ||R - Id||_F = " << dist << " exceeds the ball radius " << sigma;
    throw std::domain_error(os.str());
  }
  const AffineDecomposition aff = affine_decomposition(set, c);
  GeometricDecomposition g;
  g.sigma = sigma;
  g.c = c;
  g.coefficient.assign(set.size(), 0.0);
  for (std::size_t P = 0; P < set.pair_count(); ++P) {
    const double v = aff.pair_value(P, R(0, 0) - 1.0, 0.5 * (R(0, 1) + R(1, 0)), R(1, 1) - 1.0);
    if (!(v > 0.0)) {
      const auto& k = set.pair_representative(P);
      std::ostringstream os;
      os << "geometry: coefficient " << v << " of direction " << triple_text(k.p, k.q, k.d)
         << " is not positive (baseline c = " << c << ")";
      throw std::domain_error(os.str());
    }
    g.coefficient[2 * P] = g.coefficient[2 * P + 1] = 0.5 * v;
  }
  const Eigen::Matrix2d back = reconstruct(set, g);
  if ((back - R).norm() > 1e-10)
    throw std::domain_error("geometry: direction set cannot represent R (rank deficient)");
  return g;
}

Eigen::Matrix2d reconstruct(const DirectionSet& set, const GeometricDecomposition& g) {
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  for (std::size_t n = 0; n < set.size(); ++n) {
    const Eigen::Vector2d v = set.directions()[n].perp();
    M += g.coefficient[n] * v * v.transpose();
  }
  return M;
}

StationaryFlow stationary_flow(const DirectionSet& set, const std::vector<double>& b, const Grid& grid,
                               long scale) {
  check_symmetric_coefficients(set, b);
  const long s = scale_or_default(set, scale);
  StationaryFlow out{grid.zero_vector(), grid.zeros()};
  Field scalar = grid.zeros();
  for (std::size_t P = 0; P < set.pair_count(); ++P) {
    const double bp = b[2 * P];
    if (bp == 0.0) continue;
    const Direction& k = set.pair_representative(P);
    const double k1 = double(s * k.p / k.d), k2 = double(s * k.q / k.d);
    const Eigen::Vector2d kp = k.perp();
    for (int i = 0; i < grid.N; ++i)
      for (int j = 0; j < grid.N; ++j) {
        const double th = k1 * grid.x(j) + k2 * grid.x(i);
        // b i k_perp e^{i th} + b i (-k_perp) e^{-i th} = -2 b sin(th) k_perp
        const double sn = std::sin(th), cs = std::cos(th);
        out.W[0](i, j) += -2.0 * bp * sn * kp(0);
        out.W[1](i, j) += -2.0 * bp * sn * kp(1);
        scalar(i, j) += 2.0 * bp * cs;
      }
  }
  out.p = 0.5 * (out.W[0].square() + out.W[1].square() + scalar.square());
  return out;
}

double verify_mikado_identity(const DirectionSet& set, const std::vector<double>& b, const Grid& grid,
                              long scale) {
  const StationaryFlow f = stationary_flow(set, b, grid, scale);
  const long s = scale_or_default(set, scale);
  // Oscillatory part: sum over ordered pairs with j + k != 0 of
  // -b_j b_k e^{i(j+k).xi} j_perp (x) k_perp; the imaginary parts cancel.
  SymTensorField osc = grid.zero_tensor();
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  const auto& dirs = set.directions();
  for (std::size_t a = 0; a < dirs.size(); ++a)
    for (std::size_t c = 0; c < dirs.size(); ++c) {
      const double w = b[a] * b[c];
      if (w == 0.0) continue;
      const Eigen::Vector2d jp = dirs[a].perp(), kp = dirs[c].perp();
      if (dirs[a] == dirs[c].negated()) {
        mean += w * Eigen::Vector3d(kp(0) * kp(0), kp(0) * kp(1), kp(1) * kp(1));
        continue;
      }
      const double m1 = double(s * dirs[a].p / dirs[a].d + s * dirs[c].p / dirs[c].d);
      const double m2 = double(s * dirs[a].q / dirs[a].d + s * dirs[c].q / dirs[c].d);
      const double t11 = -w * jp(0) * kp(0), t12 = -0.5 * w * (jp(0) * kp(1) + jp(1) * kp(0)),
                   t22 = -w * jp(1) * kp(1);
      for (int i = 0; i < grid.N; ++i)
        for (int j = 0; j < grid.N; ++j) {
          const double cs = std::cos(m1 * grid.x(j) + m2 * grid.x(i));
          osc[0](i, j) += t11 * cs;
          osc[1](i, j) += t12 * cs;
          osc[2](i, j) += t22 * cs;
        }
    }
  const double e11 = (f.W[0] * f.W[0] - osc[0] - mean(0)).abs().maxCoeff();
  const double e12 = (f.W[0] * f.W[1] - osc[1] - mean(1)).abs().maxCoeff();
  const double e22 = (f.W[1] * f.W[1] - osc[2] - mean(2)).abs().maxCoeff();
  return std::max({e11, e12, e22});
}

double verify_stationary_pressure(const DirectionSet& set, const std::vector<double>& b, const Grid& grid,
                                  long scale) {
  const StationaryFlow f = stationary_flow(set, b, grid, scale);
  const SymTensorField T{f.W[0] * f.W[0], f.W[0] * f.W[1], f.W[1] * f.W[1]};
  const VectorField divT = fields::divergence(grid, T);
  const VectorField gp = fields::gradient(grid, f.p);
  const double err = std::max((divT[0] - gp[0]).abs().maxCoeff(), (divT[1] - gp[1]).abs().maxCoeff());
  const double scale_ref = std::max(1.0, (f.W[0].square() + f.W[1].square()).maxCoeff() * double(scale_or_default(set, scale)));
  return err / scale_ref;
}

}  // namespace mhd::geometry
