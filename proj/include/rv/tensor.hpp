#pragma once

#include <array>
#include <cstddef>
#include <numbers>

#include "rv/dual.hpp"
#include "rv/errors.hpp"

namespace rv {

inline constexpr double kPi = std::numbers::pi;

template <class T, std::size_t N> using Vec = std::array<T, N>;
template <class T, std::size_t N> using Mat = std::array<std::array<T, N>, N>;
template <class T, std::size_t N> using Ten3 = std::array<Mat<T, N>, N>;
template <class T, std::size_t N> using Ten4 = std::array<Ten3<T, N>, N>;

template <class T, std::size_t N> Mat<T, N> zero_mat() {
  Mat<T, N> m{};
  for (auto& row : m)
    for (auto& x : row) x = T(0.0);
  return m;
}
template <class T, std::size_t N> Vec<T, N> zero_vec() {
  Vec<T, N> v{};
  for (auto& x : v) x = T(0.0);
  return v;
}
template <class T, std::size_t N> Ten3<T, N> zero_ten3() {
  Ten3<T, N> t{};
  for (auto& m : t) m = zero_mat<T, N>();
  return t;
}
template <class T, std::size_t N> Ten4<T, N> zero_ten4() {
  Ten4<T, N> t{};
  for (auto& m : t) m = zero_ten3<T, N>();
  return t;
}
template <class T, std::size_t N> Mat<T, N> identity() {
  auto m = zero_mat<T, N>();
  for (std::size_t i = 0; i < N; ++i) m[i][i] = T(1.0);
  return m;
}

template <class T, std::size_t N> T dot(const Mat<T, N>& g, const Vec<T, N>& a, const Vec<T, N>& b) {
  T s(0.0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) s += g[i][j] * a[i] * b[j];
  return s;
}

template <class T, std::size_t N> Vec<T, N> matvec(const Mat<T, N>& m, const Vec<T, N>& v) {
  auto r = zero_vec<T, N>();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i] += m[i][j] * v[j];
  return r;
}

template <class T, std::size_t N> Mat<T, N> matmul(const Mat<T, N>& a, const Mat<T, N>& b) {
  auto r = zero_mat<T, N>();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t j = 0; j < N; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

template <class T, std::size_t N> T trace(const Mat<T, N>& m) {
  T s(0.0);
  for (std::size_t i = 0; i < N; ++i) s += m[i][i];
  return s;
}

// Gauss-Jordan with partial pivoting on the primal value; works for any dual depth.
template <class T, std::size_t N> Mat<T, N> inverse(const Mat<T, N>& m) {
  Mat<T, N> a = m;
  Mat<T, N> inv = identity<T, N>();
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t p = c;
    double best = std::abs(value(a[c][c]));
    for (std::size_t r = c + 1; r < N; ++r) {
      double v = std::abs(value(a[r][c]));
      if (v > best) { best = v; p = r; }
    }
    if (best == 0.0) throw SingularMetric("matrix inverse: zero pivot");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    T piv = a[c][c];
    for (std::size_t j = 0; j < N; ++j) { a[c][j] = a[c][j] / piv; inv[c][j] = inv[c][j] / piv; }
    for (std::size_t r = 0; r < N; ++r) {
      if (r == c) continue;
      T f = a[r][c];
      for (std::size_t j = 0; j < N; ++j) {
        a[r][j] = a[r][j] - f * a[c][j];
        inv[r][j] = inv[r][j] - f * inv[c][j];
      }
    }
  }
  return inv;
}

template <class T, std::size_t N> T determinant(const Mat<T, N>& m) {
  if constexpr (N == 1) {
    return m[0][0];
  } else if constexpr (N == 2) {
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  } else if constexpr (N == 3) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  } else {
    Mat<T, N> a = m;
    T det(1.0);
    for (std::size_t c = 0; c < N; ++c) {
      std::size_t p = c;
      double best = std::abs(value(a[c][c]));
      for (std::size_t r = c + 1; r < N; ++r) {
        double v = std::abs(value(a[r][c]));
        if (v > best) { best = v; p = r; }
      }
      if (best == 0.0) return T(0.0);
      if (p != c) { std::swap(a[p], a[c]); det = -det; }
      det = det * a[c][c];
      for (std::size_t r = c + 1; r < N; ++r) {
        T f = a[r][c] / a[c][c];
        for (std::size_t j = c; j < N; ++j) a[r][j] = a[r][j] - f * a[c][j];
      }
    }
    return det;
  }
}

// sub-block extraction / raising helpers
template <class T, std::size_t N> Mat<T, N> scale(const Mat<T, N>& m, const T& s) {
  Mat<T, N> r = m;
  for (auto& row : r)
    for (auto& x : row) x = x * s;
  return r;
}

template <class T, std::size_t N> Mat<T, N> add(const Mat<T, N>& a, const Mat<T, N>& b) {
  Mat<T, N> r = a;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

// |A|^2 = g^ik g^jl A_ij A_kl
template <class T, std::size_t N> T norm2_cov(const Mat<T, N>& ginv, const Mat<T, N>& a) {
  T s(0.0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l) s += ginv[i][k] * ginv[j][l] * a[i][j] * a[k][l];
  return s;
}

// mixed tensor A^i_j = g^ik A_kj
template <class T, std::size_t N> Mat<T, N> raise_first(const Mat<T, N>& ginv, const Mat<T, N>& a) { return matmul(ginv, a); }

// tr (g^-1 A)^3
template <class T, std::size_t N> T trace_cubed(const Mat<T, N>& ginv, const Mat<T, N>& a) {
  auto m = matmul(ginv, a);
  return trace(matmul(matmul(m, m), m));
}

// <A,B> = g^ik g^jl A_ij B_kl
template <class T, std::size_t N> T inner_cov(const Mat<T, N>& ginv, const Mat<T, N>& a, const Mat<T, N>& b) {
  T s(0.0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l) s += ginv[i][k] * ginv[j][l] * a[i][j] * b[k][l];
  return s;
}

}  // namespace rv
