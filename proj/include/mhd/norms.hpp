#pragma once
// Discrete Littlewood-Paley blocks and Besov, Lebesgue and mixed time-space
// norm estimators.  Every number produced here is relative to the smooth
// dyadic partition tagged by kPartitionVersion.

#include <limits>
#include <string>
#include <vector>

#include "mhd/grid.hpp"

namespace mhd::norms {

inline const std::string kPartitionVersion = "lp-smoothstep-v1";
constexpr double kInf = std::numeric_limits<double>::infinity();

// Radial low-pass profile: 1 for |xi| <= 1, 0 for |xi| >= 2, smooth between.
double low_pass(double xi);
// Dyadic bump of block j >= 0: low_pass(xi / 2^j) - low_pass(xi / 2^{j-1}).
double block_symbol(int j, double xi);
// Index of the last block, the first j with 2^j >= max |k| on the grid.
int top_block(const Grid& g);
// Highest block treated as representable (2^j <= N / 3).
int representable_block(const Grid& g);

struct Block {
  int j = 0;
  Field band;
};

// Blocks j = 0..top_block plus the mean; sum of bands + mean reproduces f.
std::vector<Block> lp_blocks(const Grid& g, const Field& f, double* mean_out = nullptr);
Spectrum block_spectrum(const Grid& g, const Spectrum& s, int j);

// Grid L^p with weight h^2 (p = inf gives the max).
double lebesgue(const Grid& g, const Field& f, double p);
double lebesgue(const Grid& g, const VectorField& v, double p);

struct BesovSpec {
  double s = 0.0;
  double p = kInf;
  double q = 1.0;
  bool homogeneous = true;
  int j_min = 0;
  int j_max = -1;  // -1: representable_block(grid)
};

void validate(const Grid& g, const BesovSpec& spec);

double besov_norm(const Grid& g, const Field& f, const BesovSpec& spec);
// Vector fields: per-block L^p of the Euclidean norm of the band.
double besov_norm(const Grid& g, const VectorField& v, const BesovSpec& spec);

enum class Ordering { CheminLerner, Standard };

struct TimeSeriesNorm {
  double r = 1.0;  // 1, 2 or inf
  BesovSpec spatial;
  bool lebesgue_only = false;  // spatial norm is plain L^p with p = spatial.p
  Ordering order = Ordering::Standard;
};

struct Snapshot {
  double t = 0.0;
  VectorField v;
};

// Trapezoid in time over the snapshot times.  Throws with fewer than two
// snapshots or non-increasing times.
double space_time_norm(const Grid& g, const std::vector<Snapshot>& series, const TimeSeriesNorm& spec);

// L^r over the sample times of scalar values (trapezoid; r = inf gives max).
double time_norm(const std::vector<double>& t, const std::vector<double>& values, double r);

}  // namespace mhd::norms
