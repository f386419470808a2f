#pragma once
// Rational direction sets, the positive decomposition of symmetric matrices
// near the identity into rank-one tensors k_perp (x) k_perp, and the stationary
// Mikado-type Fourier flow with its quadratic identity.

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "mhd/grid.hpp"

namespace mhd::geometry {

// A unit direction (p, q) / d with p^2 + q^2 = d^2 in integers.
struct Direction {
  long p = 0, q = 0, d = 1;
  Eigen::Vector2d vec() const { return Eigen::Vector2d(double(p) / double(d), double(q) / double(d)); }
  // k_perp = (-k2, k1)
  Eigen::Vector2d perp() const { return Eigen::Vector2d(-double(q) / double(d), double(p) / double(d)); }
  Direction negated() const { return Direction{-p, -q, d}; }
  bool operator==(const Direction& o) const { return p * o.d == o.p * d && q * o.d == o.q * d; }
};

class DirectionSet {
 public:
  // Named presets: "default4" and "axes".
  static DirectionSet preset(const std::string& name);
  // Builds from integer triples; symmetrizes under negation.  Throws
  // std::invalid_argument naming the offending triple for non-unit input.
  static DirectionSet from_triples(const std::vector<std::array<long, 3>>& triples);

  // Directions ordered as (k_0, -k_0, k_1, -k_1, ...).
  const std::vector<Direction>& directions() const { return dirs_; }
  std::size_t size() const { return dirs_.size(); }
  std::size_t pair_count() const { return dirs_.size() / 2; }
  const Direction& pair_representative(std::size_t P) const { return dirs_[2 * P]; }
  std::size_t pair_of(std::size_t direction_index) const { return direction_index / 2; }
  long n_lambda() const { return n_lambda_; }
  bool is_default4() const { return default4_; }

 private:
  std::vector<Direction> dirs_;
  long n_lambda_ = 1;
  bool default4_ = false;
};

// The decomposition restricted to the affine form used everywhere downstream:
// pair value v_P(R) = base_P + L_P : (R - Id), with L_P acting on
// (x11, x12, x22).  Per-direction coefficient a_k^2 = v_P / 2.
struct AffineDecomposition {
  std::vector<double> base;                  // pair values at R = Id
  std::vector<Eigen::Vector3d> linear;       // coefficients of (x11, x12, x22)
  double pair_value(std::size_t P, double x11, double x12, double x22) const {
    return base[P] + linear[P](0) * x11 + linear[P](1) * x12 + linear[P](2) * x22;
  }
};

struct GeometricDecomposition {
  std::vector<double> coefficient;  // a_k^2 per direction (half the pair value)
  double sigma = 1e-3;
  double c = 0.25;
};

constexpr double kSigmaBall = 1e-3;

// Affine solve of sum_P v_P k_perp (x) k_perp = R.  default4 uses the closed
// form with gamma_+ + gamma_- = 2c; other sets use the minimum-norm deviation
// from the baseline c.
AffineDecomposition affine_decomposition(const DirectionSet& set, double c);

// Throws if ||R - Id||_F > sigma or any coefficient is not positive.
GeometricDecomposition decompose_symmetric(const DirectionSet& set, const Eigen::Matrix2d& R, double c,
                                           double sigma = kSigmaBall);

Eigen::Matrix2d reconstruct(const DirectionSet& set, const GeometricDecomposition& g);

struct StationaryFlow {
  VectorField W;
  Field p;
};

// W(xi) = sum_k b_k i k_perp e^{i k.xi} evaluated at xi = scale * x, with
// pressure p = (|W|^2 + |sum_k b_k e^{i k.xi}|^2) / 2 so div(W (x) W) = grad p.
// b is indexed by direction; b_k must equal b_{-k}.  scale must make
// scale * k integral for every direction.
StationaryFlow stationary_flow(const DirectionSet& set, const std::vector<double>& b, const Grid& grid,
                               long scale = 0);

// Max deviation between W (x) W and the sum of its oscillatory (j + k != 0)
// and mean (j + k = 0) parts, over all grid points and tensor entries.
double verify_mikado_identity(const DirectionSet& set, const std::vector<double>& b, const Grid& grid,
                              long scale = 0);

// Max of |div(W (x) W) - grad p| computed spectrally, relative to max |W|^2 scale.
double verify_stationary_pressure(const DirectionSet& set, const std::vector<double>& b, const Grid& grid,
                                  long scale = 0);

}  // namespace mhd::geometry
