#include "mhd/fields.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

#include "mhd/quadrature.hpp"

namespace mhd::fields {
namespace {

using cd = std::complex<double>;

template <typename F>
void for_each_mode(const Grid& g, F&& f) {
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.nc(); ++j) f(i, j);
}

}  // namespace

Spectrum apply(const Grid& g, const Spectrum& s, Op op) {
  Spectrum out(s.rows(), s.cols());
  for_each_mode(g, [&](int i, int j) {
    const double k1 = g.ke1(j), k2 = g.ke2(i);
    const double kk = double(g.k1(j)) * g.k1(j) + double(g.k2(i)) * g.k2(i);
    switch (op) {
      case Op::D1: out(i, j) = cd(0, k1) * s(i, j); break;
      case Op::D2: out(i, j) = cd(0, k2) * s(i, j); break;
      case Op::Laplacian: out(i, j) = -kk * s(i, j); break;
      case Op::InverseLaplacian: out(i, j) = (kk == 0.0) ? cd(0) : s(i, j) / (-kk); break;
    }
  });
  return out;
}

Field apply(const Grid& g, const Field& f, Op op) { return inverse(apply(g, forward(f), op)); }

Field d1(const Grid& g, const Field& f) { return apply(g, f, Op::D1); }
Field d2(const Grid& g, const Field& f) { return apply(g, f, Op::D2); }
Field laplacian(const Grid& g, const Field& f) { return apply(g, f, Op::Laplacian); }

Field inverse_laplacian(const Grid& g, const Field& f, double tol) {
  const double m = f.mean();
  const double scale = std::max(f.abs().maxCoeff(), 1e-300);
  if (std::abs(m) > tol * scale) {
    std::ostringstream os;
    os << "fields: inverse Laplacian of a field with nonzero mean " << m;
    throw std::domain_error(os.str());
  }
  return apply(g, f, Op::InverseLaplacian);
}

VectorField gradient(const Grid& g, const Field& f) {
  const Spectrum s = forward(f);
  return {inverse(apply(g, s, Op::D1)), inverse(apply(g, s, Op::D2))};
}

VectorField perp_gradient(const Grid& g, const Field& f) {
  const Spectrum s = forward(f);
  return {inverse(apply(g, s, Op::D2)), Field(-inverse(apply(g, s, Op::D1)))};
}

Field divergence(const Grid& g, const VectorField& v) {
  Spectrum s = apply(g, forward(v[0]), Op::D1);
  s += apply(g, forward(v[1]), Op::D2);
  return inverse(s);
}

Field curl(const Grid& g, const VectorField& v) {
  Spectrum s = apply(g, forward(v[1]), Op::D1);
  s -= apply(g, forward(v[0]), Op::D2);
  return inverse(s);
}

VectorField laplacian(const Grid& g, const VectorField& v) { return {laplacian(g, v[0]), laplacian(g, v[1])}; }

VectorField divergence(const Grid& g, const SymTensorField& T) {
  const Spectrum s11 = forward(T[0]), s12 = forward(T[1]), s22 = forward(T[2]);
  Spectrum a = apply(g, s11, Op::D1) + apply(g, s12, Op::D2);
  Spectrum b = apply(g, s12, Op::D1) + apply(g, s22, Op::D2);
  return {inverse(a), inverse(b)};
}

VectorSpectrum forward(const VectorField& v) { return {mhd::forward(v[0]), mhd::forward(v[1])}; }
VectorField inverse(const VectorSpectrum& v) { return {mhd::inverse(v[0]), mhd::inverse(v[1])}; }

void leray_project_inplace(const Grid& g, VectorSpectrum& v) {
  for_each_mode(g, [&](int i, int j) {
    const double k1 = g.ke1(j), k2 = g.ke2(i);
    const double kk = k1 * k1 + k2 * k2;
    if (kk == 0.0) {
      // Nyquist lines carry no derivative information; keep only the mean.
      if (i != 0 || j != 0) v[0](i, j) = v[1](i, j) = 0.0;
      return;
    }
    const cd dot = k1 * v[0](i, j) + k2 * v[1](i, j);
    v[0](i, j) -= k1 * dot / kk;
    v[1](i, j) -= k2 * dot / kk;
  });
}

VectorField leray_project(const Grid& g, const VectorField& v) {
  VectorSpectrum s = forward(v);
  leray_project_inplace(g, s);
  return inverse(s);
}

void dealias_inplace(const Grid& g, Spectrum& s) {
  for_each_mode(g, [&](int i, int j) {
    if (!g.retained(i, j)) s(i, j) = 0.0;
  });
}

Field dealias(const Grid& g, const Field& f) {
  Spectrum s = mhd::forward(f);
  dealias_inplace(g, s);
  return mhd::inverse(s);
}

SymTensorField tensor_potential(const Grid& g, const VectorField& w, double tol) {
  const double scale = std::max(max_abs(w), 1e-300);
  const double m0 = w[0].mean(), m1 = w[1].mean();
  if (std::abs(m0) > tol * scale || std::abs(m1) > tol * scale) {
    std::ostringstream os;
    os << "fields: tensor potential of a field with nonzero mean (" << m0 << ", " << m1 << ")";
    throw std::domain_error(os.str());
  }
  const VectorSpectrum s = forward(w);
  Spectrum div = apply(g, s[0], Op::D1) + apply(g, s[1], Op::D2);
  const double dmax = mhd::inverse(div).abs().maxCoeff();
  if (dmax > tol * scale * g.N) {
    std::ostringstream os;
    os << "fields: tensor potential of a field with divergence " << dmax;
    throw std::domain_error(os.str());
  }
  // T = (grad f + grad f^T) with f = Delta^{-1} w, so div T = Delta f + grad div f = w.
  const Spectrum f1 = apply(g, s[0], Op::InverseLaplacian), f2 = apply(g, s[1], Op::InverseLaplacian);
  const Spectrum t11 = 2.0 * apply(g, f1, Op::D1);
  const Spectrum t12 = apply(g, f1, Op::D2) + apply(g, f2, Op::D1);
  const Spectrum t22 = 2.0 * apply(g, f2, Op::D2);
  return {mhd::inverse(t11), mhd::inverse(t12), mhd::inverse(t22)};
}

double max_abs(const Field& f) { return f.size() ? f.abs().maxCoeff() : 0.0; }
double max_abs(const VectorField& v) { return std::max(max_abs(v[0]), max_abs(v[1])); }
double max_norm(const VectorField& v) { return std::sqrt((v[0].square() + v[1].square()).maxCoeff()); }
// Both norms divide by the largest sample first, so fields far below 1e-154
// do not underflow when squared.
double l2_norm(const Grid& g, const Field& f) {
  const double m = f.abs().maxCoeff();
  if (!(m > 0.0)) return 0.0;
  return m * std::sqrt((f / m).square().sum() * g.h * g.h);
}
double l2_norm(const Grid& g, const VectorField& v) {
  const double m = std::max(v[0].abs().maxCoeff(), v[1].abs().maxCoeff());
  if (!(m > 0.0)) return 0.0;
  return m * std::sqrt(((v[0] / m).square().sum() + (v[1] / m).square().sum()) * g.h * g.h);
}
double mean(const Field& f) { return f.mean(); }

Field sample(const Grid& g, const std::function<double(double, double)>& fn) {
  Field f(g.N, g.N);
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) f(i, j) = fn(g.x(j), g.x(i));
  return f;
}

// ---------------------------------------------------------------- mollifiers

namespace {

double bump(double s, int m) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::pow(1.0 - s * s, m);
}

// Continuum mass of the unit bump on [-1, 1].
double bump_mass_1d(int m) {
  static const GaussLegendre gl(64);
  return gl.integrate([&](double s) { return bump(s, m); }, -1.0, 1.0);
}

}  // namespace

double MollifierPair::time_kernel(double tau) const {
  // Bump centered at -eps/2 with radius eps/2, so the support is (-eps, 0).
  const double s = (2.0 * tau + eps_time) / eps_time;
  return bump(s, exponent) * 2.0 / (eps_time * bump_mass_1d(exponent));
}

double MollifierPair::time_kernel_derivative(double tau) const {
  const double s = (2.0 * tau + eps_time) / eps_time;
  if (std::abs(s) >= 1.0) return 0.0;
  const double ds = 2.0 / eps_time;
  const double dbump = -2.0 * exponent * s * std::pow(1.0 - s * s, exponent - 1);
  return dbump * ds * 2.0 / (eps_time * bump_mass_1d(exponent));
}

double MollifierPair::exponential_weight(double mu) const {
  // kappa(mu) = int_0^eps phi(-u) e^{-mu u} du.  Panels refine geometrically
  // toward u = 0 when mu * eps is large.
  static const GaussLegendre gl(24);
  auto integrand = [&](double u) { return time_kernel(-u) * std::exp(-mu * u); };
  std::vector<double> edges{0.0};
  const double a = mu * eps_time;
  if (a > 4.0) {
    double e = 1.0 / mu;
    while (e < eps_time) {
      edges.push_back(e);
      e *= 2.0;
    }
  }
  edges.push_back(eps_time);
  double s = 0.0, mass = 0.0;
  for (std::size_t n = 0; n + 1 < edges.size(); ++n) {
    s += gl.integrate(integrand, edges[n], edges[n + 1]);
    mass += gl.integrate([&](double u) { return time_kernel(-u); }, edges[n], edges[n + 1]);
  }
  return s / mass;
}

Spectrum MollifierPair::space_multiplier(const Grid& g) const {
  static std::map<std::pair<int, double>, Spectrum> cache;
  const auto key = std::make_pair(g.N, eps_space);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Field K(g.N, g.N);
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      const double y2 = (i <= g.N / 2 ? i : i - g.N) * g.h;
      const double y1 = (j <= g.N / 2 ? j : j - g.N) * g.h;
      K(i, j) = bump(std::sqrt(y1 * y1 + y2 * y2) / eps_space, exponent);
    }
  K /= K.sum();
  // Discrete convolution sum_y K(y) f(x - y) in spectral form.
  Spectrum m = mhd::forward(K) * double(g.N) * double(g.N);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = cd(m(i, j).real(), 0.0);
  cache.emplace(key, m);
  return m;
}

double MollifierPair::space_mass(const Grid& g) const {
  const Spectrum m = space_multiplier(g);
  return m(0, 0).real();
}

MollifierPair make_mollifiers(const Grid& g, double eps_space, double eps_time, double dt) {
  if (eps_space < 2.0 * g.h * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "fields: space mollifier scale " << eps_space << " is below 2h = " << 2.0 * g.h;
    throw std::invalid_argument(os.str());
  }
  if (dt > 0.0 && eps_time < 4.0 * dt * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "fields: time mollifier scale " << eps_time << " is below 4 dt = " << 4.0 * dt;
    throw std::invalid_argument(os.str());
  }
  if (!(eps_time > 0.0)) throw std::invalid_argument("fields: time mollifier scale must be positive");
  MollifierPair m;
  m.eps_space = eps_space;
  m.eps_time = eps_time;
  return m;
}

Spectrum mollify_space_spectrum(const Grid& g, const Field& f, const MollifierPair& m) {
  return mhd::forward(f) * m.space_multiplier(g);
}

Field mollify_space(const Grid& g, const Field& f, const MollifierPair& m) {
  return mhd::inverse(mollify_space_spectrum(g, f, m));
}

std::vector<double> mollify_time(const std::vector<double>& values, double dt, const MollifierPair& m) {
  if (!(dt > 0.0) || m.eps_time < 4.0 * dt * (1.0 - 1e-12))
    throw std::invalid_argument("fields: time series spacing does not resolve the time mollifier");
  const int width = int(std::ceil(m.eps_time / dt - 1e-12));
  std::vector<double> w(width + 1);
  double mass = 0.0;
  for (int s = 0; s <= width; ++s) {
    w[s] = m.time_kernel(-s * dt);
    mass += w[s];
  }
  for (auto& x : w) x /= mass;
  std::vector<double> out;
  for (std::size_t n = 0; n + width < values.size(); ++n) {
    double acc = 0.0;
    for (int s = 0; s <= width; ++s) acc += w[s] * values[n + s];
    out.push_back(acc);
  }
  return out;
}

// ------------------------------------------------------------- serialization

namespace {

void write_le(std::ofstream& os, const double* data, std::size_t n) {
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(data), std::streamsize(n * sizeof(double)));
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t u;
      std::memcpy(&u, data + k, 8);
      u = __builtin_bswap64(u);
      os.write(reinterpret_cast<const char*>(&u), 8);
    }
  }
}

void read_le(std::ifstream& is, double* data, std::size_t n) {
  is.read(reinterpret_cast<char*>(data), std::streamsize(n * sizeof(double)));
  if constexpr (std::endian::native != std::endian::little) {
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t u;
      std::memcpy(&u, data + k, 8);
      u = __builtin_bswap64(u);
      std::memcpy(data + k, &u, 8);
    }
  }
}

}  // namespace

void write_field(const std::string& stem, const Grid& g, const std::vector<const Field*>& components,
                 const std::vector<std::string>& component_names, double time, const std::string& semantic_name) {
  if (components.size() != component_names.size())
    throw std::invalid_argument("fields: component and name counts differ");
  nlohmann::ordered_json side;
  side["grid"] = {{"N", g.N}};
  side["components"] = nlohmann::json::array();
  for (std::size_t c = 0; c < components.size(); ++c) {
    const std::string file = stem + "." + component_names[c] + ".f64";
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("fields: cannot write " + file);
    write_le(os, components[c]->data(), std::size_t(g.N) * g.N);
    side["components"].push_back(component_names[c]);
  }
  side["time"] = time;
  side["semantic_name"] = semantic_name;
  side["layout"] = "row-major, float64 little-endian, rows along x2";
  std::ofstream js(stem + ".json");
  js << side.dump(2) << "\n";
}

std::vector<Field> read_field(const std::string& stem, Grid* grid_out) {
  std::ifstream js(stem + ".json");
  if (!js) throw std::runtime_error("fields: cannot read " + stem + ".json");
  const nlohmann::json side = nlohmann::json::parse(js);
  const Grid g(side["grid"]["N"].get<int>());
  std::vector<Field> out;
  for (const auto& name : side["components"]) {
    const std::string file = stem + "." + name.get<std::string>() + ".f64";
    std::ifstream is(file, std::ios::binary);
    if (!is) throw std::runtime_error("fields: cannot read " + file);
    Field f(g.N, g.N);
    read_le(is, f.data(), std::size_t(g.N) * g.N);
    out.push_back(std::move(f));
  }
  if (grid_out) *grid_out = g;
  return out;
}

}  // namespace mhd::fields
