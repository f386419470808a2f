#pragma once
// Truncated Taylor arithmetic in one and two variables.
//
// Taylor1<T, K> stores c[m] = f^(m)(x0) / m!.
// Jet2<T, K> stores c[idx(i, j)] = d1^i d2^j f(x0) / (i! j!) for i + j <= K.
// Products and compositions are exact up to the truncation order, which is how
// the explicit flows obtain derivatives that are exact to roundoff on the grid.

#include <array>
#include <cmath>
#include <cstddef>

namespace mhd {

constexpr int jet_size(int K) { return (K + 1) * (K + 2) / 2; }
constexpr int jet_index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }

constexpr double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

constexpr double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

template <typename T, int K>
struct Taylor1 {
  std::array<T, K + 1> c{};

  static Taylor1 constant(T v) {
    Taylor1 r;
    r.c[0] = v;
    return r;
  }
  static Taylor1 variable(T x0) {
    Taylor1 r;
    r.c[0] = x0;
    if constexpr (K >= 1) r.c[1] = T(1);
    return r;
  }

  Taylor1 operator+(const Taylor1& o) const {
    Taylor1 r;
    for (int m = 0; m <= K; ++m) r.c[m] = c[m] + o.c[m];
    return r;
  }
  Taylor1 operator-(const Taylor1& o) const {
    Taylor1 r;
    for (int m = 0; m <= K; ++m) r.c[m] = c[m] - o.c[m];
    return r;
  }
  Taylor1 operator-() const {
    Taylor1 r;
    for (int m = 0; m <= K; ++m) r.c[m] = -c[m];
    return r;
  }
  Taylor1 operator*(T s) const {
    Taylor1 r;
    for (int m = 0; m <= K; ++m) r.c[m] = c[m] * s;
    return r;
  }
  Taylor1 operator+(T s) const {
    Taylor1 r = *this;
    r.c[0] += s;
    return r;
  }
  Taylor1 operator*(const Taylor1& o) const {
    Taylor1 r;
    for (int m = 0; m <= K; ++m) {
      T acc = T(0);
      for (int i = 0; i <= m; ++i) acc += c[i] * o.c[m - i];
      r.c[m] = acc;
    }
    return r;
  }
  // Coefficients of f(x0 + a*dy) as a series in dy.
  Taylor1 scaled(T a) const {
    Taylor1 r;
    T p = T(1);
    for (int m = 0; m <= K; ++m) {
      r.c[m] = c[m] * p;
      p *= a;
    }
    return r;
  }
};

template <typename T, int K>
Taylor1<T, K> reciprocal(const Taylor1<T, K>& f) {
  Taylor1<T, K> r;
  const T inv0 = T(1) / f.c[0];
  r.c[0] = inv0;
  for (int m = 1; m <= K; ++m) {
    T acc = T(0);
    for (int i = 1; i <= m; ++i) acc += f.c[i] * r.c[m - i];
    r.c[m] = -acc * inv0;
  }
  return r;
}

template <typename T, int K>
Taylor1<T, K> exp(const Taylor1<T, K>& f) {
  using std::exp;
  Taylor1<T, K> r;
  r.c[0] = exp(f.c[0]);
  for (int m = 1; m <= K; ++m) {
    T acc = T(0);
    for (int i = 1; i <= m; ++i) acc += T(i) * f.c[i] * r.c[m - i];
    r.c[m] = acc / T(m);
  }
  return r;
}

template <typename T, int K>
Taylor1<T, K> sqrt(const Taylor1<T, K>& f) {
  using std::sqrt;
  Taylor1<T, K> r;
  r.c[0] = sqrt(f.c[0]);
  for (int m = 1; m <= K; ++m) {
    T acc = f.c[m];
    for (int i = 1; i < m; ++i) acc -= r.c[i] * r.c[m - i];
    r.c[m] = acc / (T(2) * r.c[0]);
  }
  return r;
}

// Series of cos and sin about theta0 in the variable dtheta.
template <typename T, int K>
void cos_sin_series(T theta0, Taylor1<T, K>& cs, Taylor1<T, K>& sn) {
  using std::cos;
  using std::sin;
  const T c0 = cos(theta0), s0 = sin(theta0);
  for (int m = 0; m <= K; ++m) {
    const T inv = T(1) / T(factorial(m));
    switch (m % 4) {
      case 0: cs.c[m] = c0 * inv; sn.c[m] = s0 * inv; break;
      case 1: cs.c[m] = -s0 * inv; sn.c[m] = c0 * inv; break;
      case 2: cs.c[m] = -c0 * inv; sn.c[m] = -s0 * inv; break;
      default: cs.c[m] = s0 * inv; sn.c[m] = -c0 * inv; break;
    }
  }
}

template <typename T, int K>
struct Jet2 {
  static constexpr int size = jet_size(K);
  std::array<T, jet_size(K)> c{};

  static Jet2 constant(T v) {
    Jet2 r;
    r.c[0] = v;
    return r;
  }

  T& at(int i, int j) { return c[jet_index(i, j)]; }
  const T& at(int i, int j) const { return c[jet_index(i, j)]; }
  T value() const { return c[0]; }
  // Partial derivative d1^i d2^j at the expansion point.
  T d(int i, int j) const { return c[jet_index(i, j)] * T(factorial(i) * factorial(j)); }

  Jet2 operator+(const Jet2& o) const {
    Jet2 r;
    for (int n = 0; n < size; ++n) r.c[n] = c[n] + o.c[n];
    return r;
  }
  Jet2 operator-(const Jet2& o) const {
    Jet2 r;
    for (int n = 0; n < size; ++n) r.c[n] = c[n] - o.c[n];
    return r;
  }
  Jet2 operator-() const {
    Jet2 r;
    for (int n = 0; n < size; ++n) r.c[n] = -c[n];
    return r;
  }
  Jet2& operator+=(const Jet2& o) {
    for (int n = 0; n < size; ++n) c[n] += o.c[n];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    for (int n = 0; n < size; ++n) c[n] -= o.c[n];
    return *this;
  }
  Jet2 operator*(T s) const {
    Jet2 r;
    for (int n = 0; n < size; ++n) r.c[n] = c[n] * s;
    return r;
  }
  Jet2& operator*=(T s) {
    for (int n = 0; n < size; ++n) c[n] *= s;
    return *this;
  }
  Jet2 operator*(const Jet2& o) const {
    Jet2 r;
    for (int a = 0; a <= K; ++a)
      for (int b = 0; a + b <= K; ++b) {
        const T x = c[jet_index(a, b)];
        if (x == T(0)) continue;
        for (int e = 0; a + b + e <= K; ++e)
          for (int f = 0; a + b + e + f <= K; ++f) r.c[jet_index(a + e, b + f)] += x * o.c[jet_index(e, f)];
      }
    return r;
  }
  // r += s * x * y, the fused form used in sums of products.
  void add_product(const Jet2& x, const Jet2& y, T s = T(1)) {
    for (int a = 0; a <= K; ++a)
      for (int b = 0; a + b <= K; ++b) {
        const T xv = x.c[jet_index(a, b)] * s;
        if (xv == T(0)) continue;
        for (int e = 0; a + b + e <= K; ++e)
          for (int f = 0; a + b + e + f <= K; ++f) c[jet_index(a + e, b + f)] += xv * y.c[jet_index(e, f)];
      }
  }

  // First partial derivatives as jets; the top order is lost (set to zero).
  Jet2 d1() const {
    Jet2 r;
    for (int i = 0; i < K; ++i)
      for (int j = 0; i + 1 + j <= K; ++j) r.at(i, j) = T(i + 1) * at(i + 1, j);
    return r;
  }
  Jet2 d2() const {
    Jet2 r;
    for (int i = 0; i < K; ++i)
      for (int j = 0; i + j + 1 <= K; ++j) r.at(i, j) = T(j + 1) * at(i, j + 1);
    return r;
  }
  Jet2 laplacian() const { return d1().d1() + d2().d2(); }
};

// Jet of F(alpha . x + beta) at a point, given the 1D series of F at the
// argument value.  (alpha1 dx + alpha2 dy)^m expands binomially.
template <typename T, int K>
Jet2<T, K> jet_from_linear(const Taylor1<T, K>& F, T alpha1, T alpha2) {
  Jet2<T, K> r;
  std::array<T, K + 1> p1{}, p2{};
  p1[0] = p2[0] = T(1);
  for (int m = 1; m <= K; ++m) {
    p1[m] = p1[m - 1] * alpha1;
    p2[m] = p2[m - 1] * alpha2;
  }
  for (int m = 0; m <= K; ++m)
    for (int i = 0; i <= m; ++i) r.at(i, m - i) = F.c[m] * T(binomial(m, i)) * p1[i] * p2[m - i];
  return r;
}

// Jet of a function of x1 only times a function of x2 only.
template <typename T, int K>
Jet2<T, K> jet_separable(const Taylor1<T, K>& f1, const Taylor1<T, K>& f2) {
  Jet2<T, K> r;
  for (int i = 0; i <= K; ++i)
    for (int j = 0; i + j <= K; ++j) r.at(i, j) = f1.c[i] * f2.c[j];
  return r;
}

// g(u) for a univariate g with series g at u.value(), by Horner in (u - u0).
template <typename T, int K>
Jet2<T, K> compose(const Taylor1<T, K>& g, const Jet2<T, K>& u) {
  Jet2<T, K> du = u;
  du.c[0] = T(0);
  Jet2<T, K> r = Jet2<T, K>::constant(g.c[K]);
  for (int m = K - 1; m >= 0; --m) {
    r = r * du;
    r.c[0] += g.c[m];
  }
  return r;
}

}  // namespace mhd
