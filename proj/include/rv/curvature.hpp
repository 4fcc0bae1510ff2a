#pragma once

// Chart-based Riemannian geometry. Every routine is generic in the scalar type so
// it can be nested inside further forward-mode differentiation.
//
// Conventions (see docs/conventions.md):
//   R_ijkl = g(R(d_i,d_j)d_l, d_k), R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]
//   so the unit sphere has R_ijkl = g_ik g_jl - g_il g_jk.
//   Ric_jl = g^ik R_ijkl,  Laplacian = trace of the Hessian.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstddef>
#include <type_traits>

#include "rv/dual.hpp"
#include "rv/errors.hpp"
#include "rv/tensor.hpp"

namespace rv {

inline constexpr double kEigenFloor = 1e-12;

template <class M> constexpr std::size_t dim_of() { return std::remove_cvref_t<M>::dim; }

template <class M> concept HasDomain = requires(const M& m, const Vec<double, M::dim>& x) { m.in_domain(x); };

// Validates a chart point: finite, in the chart domain, metric SPD with eigenvalues above the floor.
template <class M> void check_point(const M& m, const Vec<double, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  for (double c : x)
    if (!std::isfinite(c)) throw OutOfDomain("non-finite chart coordinate");
  if constexpr (HasDomain<M>) {
    if (!m.in_domain(x)) throw OutOfDomain("chart point outside model domain");
  }
  Mat<double, N> g = m(x);
  Eigen::Matrix<double, N, N> e;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (!std::isfinite(g[i][j])) throw SingularMetric("non-finite metric component");
      e(i, j) = 0.5 * (g[i][j] + g[j][i]);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> es(e, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < kEigenFloor) throw SingularMetric("metric eigenvalue below floor");
}

template <class M, class T> void maybe_check(const M& m, const Vec<T, M::dim>& x) {
  if constexpr (std::is_same_v<T, double>) check_point(m, x);
}

template <class M, class T> Mat<T, M::dim> metric_at(const M& m, const Vec<T, M::dim>& x) { return m(x); }

// dg[k][i][j] = d_k g_ij
template <class M, class T> Ten3<T, M::dim> metric_derivative(const M& m, const Vec<T, M::dim>& x) {
  auto f = [&m](const auto& y) { return m(y); };
  return jacobian(f, x);
}

// Gamma[k][i][j] = Gamma^k_ij
template <class M, class T> Ten3<T, M::dim> christoffel(const M& m, const Vec<T, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  maybe_check(m, x);
  auto g = m(x);
  auto gi = inverse(g);
  auto dg = metric_derivative(m, x);
  Ten3<T, N> G = zero_ten3<T, N>();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) {
      for (std::size_t l = 0; l < N; ++l) {
        T c = 0.5 * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        for (std::size_t k = 0; k < N; ++k) G[k][i][j] += gi[k][l] * c;
      }
      for (std::size_t k = 0; k < N; ++k) G[k][j][i] = G[k][i][j];
    }
  return G;
}

template <class M, class T> Ten4<T, M::dim> riemann(const M& m, const Vec<T, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  maybe_check(m, x);
  auto G = christoffel(m, x);
  auto gam = [&m](const auto& y) { return christoffel(m, y); };
  auto dG = jacobian(gam, x);  // dG[i][m][j][k] = d_i Gamma^m_jk
  auto g = m(x);
  // A[m][i][j][k] = (R(d_i,d_j) d_k)^m
  Ten4<T, N> R = zero_ten4<T, N>();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (i == j) continue;
      for (std::size_t l = 0; l < N; ++l) {
        Vec<T, N> A = zero_vec<T, N>();
        for (std::size_t mm = 0; mm < N; ++mm) {
          T a = dG[i][mm][j][l] - dG[j][mm][i][l];
          for (std::size_t p = 0; p < N; ++p) a += G[mm][i][p] * G[p][j][l] - G[mm][j][p] * G[p][i][l];
          A[mm] = a;
        }
        for (std::size_t k = 0; k < N; ++k) {
          T s(0.0);
          for (std::size_t mm = 0; mm < N; ++mm) s += g[k][mm] * A[mm];
          R[i][j][k][l] = s;
        }
      }
    }
  return R;
}

template <class T, std::size_t N> Mat<T, N> ricci_from(const Mat<T, N>& gi, const Ten4<T, N>& R) {
  Mat<T, N> ric = zero_mat<T, N>();
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t l = j; l < N; ++l) {
      T s(0.0);
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) s += gi[i][k] * R[i][j][k][l];
      ric[j][l] = s;
      ric[l][j] = s;
    }
  return ric;
}

template <class T, std::size_t N> struct RicciScalar {
  Mat<T, N> ricci;
  T scalar;
};

template <class M, class T> RicciScalar<T, M::dim> ricci_scalar(const M& m, const Vec<T, M::dim>& x) {
  auto R = riemann(m, x);
  auto gi = inverse(m(x));
  auto ric = ricci_from(gi, R);
  T s(0.0);
  for (std::size_t i = 0; i < M::dim; ++i)
    for (std::size_t j = 0; j < M::dim; ++j) s += gi[i][j] * ric[i][j];
  return {ric, s};
}

template <class M, class T> T scalar_curvature(const M& m, const Vec<T, M::dim>& x) { return ricci_scalar(m, x).scalar; }

// (P wedge g)_ijkl = P_ik g_jl + P_jl g_ik - P_il g_jk - P_jk g_il
template <class T, std::size_t N> Ten4<T, N> kulkarni_nomizu(const Mat<T, N>& P, const Mat<T, N>& g) {
  Ten4<T, N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l)
          r[i][j][k][l] = P[i][k] * g[j][l] + P[j][l] * g[i][k] - P[i][l] * g[j][k] - P[j][k] * g[i][l];
  return r;
}

template <class T, std::size_t N> Ten4<T, N> weyl_from(const Mat<T, N>& g, const Ten4<T, N>& R) {
  auto gi = inverse(g);
  auto ric = ricci_from(gi, R);
  T s(0.0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) s += gi[i][j] * ric[i][j];
  const double n = double(N);
  Mat<T, N> P{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) P[i][j] = (ric[i][j] - s / (2.0 * (n - 1.0)) * g[i][j]) / (n - 2.0);
  auto kn = kulkarni_nomizu(P, g);
  Ten4<T, N> W{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l) W[i][j][k][l] = R[i][j][k][l] - kn[i][j][k][l];
  return W;
}

template <class M, class T> Ten4<T, M::dim> weyl(const M& m, const Vec<T, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  if constexpr (N == 2) {
    throw UnsupportedDimension("weyl: dimension 2");
  } else if constexpr (N == 3) {
    maybe_check(m, x);
    return zero_ten4<T, N>();
  } else {
    return weyl_from(m(x), riemann(m, x));
  }
}

// W^ijkl W_ijkl
template <class T, std::size_t N> T full_norm2(const Mat<T, N>& gi, const Ten4<T, N>& W) {
  // raise all four indices then contract
  Ten4<T, N> U = W;
  for (int slot = 0; slot < 4; ++slot) {
    Ten4<T, N> V = zero_ten4<T, N>();
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k)
          for (std::size_t l = 0; l < N; ++l) {
            T s(0.0);
            for (std::size_t a = 0; a < N; ++a) {
              switch (slot) {
                case 0: s += gi[i][a] * U[a][j][k][l]; break;
                case 1: s += gi[j][a] * U[i][a][k][l]; break;
                case 2: s += gi[k][a] * U[i][j][a][l]; break;
                default: s += gi[l][a] * U[i][j][k][a]; break;
              }
            }
            V[i][j][k][l] = s;
          }
    U = V;
  }
  T s(0.0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l) s += U[i][j][k][l] * W[i][j][k][l];
  return s;
}

template <class M, class T> T weyl_norm_sq(const M& m, const Vec<T, M::dim>& x) {
  if constexpr (M::dim != 4) {
    throw UnsupportedDimension("weyl_norm_sq: requires dimension 4");
  } else {
    auto W = weyl(m, x);
    return full_norm2(inverse(m(x)), W);
  }
}

// P = Ric - (1/4) R h in three dimensions
template <class M, class T> Mat<T, 3> schouten_3d(const M& m, const Vec<T, M::dim>& x) {
  if constexpr (M::dim != 3) {
    throw UnsupportedDimension("schouten_3d: requires dimension 3");
  } else {
    auto rs = ricci_scalar(m, x);
    auto g = m(x);
    Mat<T, 3> P{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) P[i][j] = rs.ricci[i][j] - 0.25 * rs.scalar * g[i][j];
    return P;
  }
}

// gradient and Hessian of scalar fields
template <class F, class T, std::size_t N> Vec<T, N> grad_coords(const F& f, const Vec<T, N>& x) { return jacobian(f, x); }

template <class M, class F, class T> Mat<T, M::dim> hessian_cov(const M& m, const F& f, const Vec<T, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  auto G = christoffel(m, x);
  auto df = jacobian(f, x);
  auto ddf = hessian(f, x);
  Mat<T, N> H{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      T s = ddf[i][j];
      for (std::size_t k = 0; k < N; ++k) s -= G[k][i][j] * df[k];
      H[i][j] = s;
    }
  return H;
}

template <class M, class F, class T> T laplace_beltrami(const M& m, const F& f, const Vec<T, M::dim>& x) {
  auto H = hessian_cov(m, f, x);
  auto gi = inverse(m(x));
  T s(0.0);
  for (std::size_t i = 0; i < M::dim; ++i)
    for (std::size_t j = 0; j < M::dim; ++j) s += gi[i][j] * H[i][j];
  return s;
}

// Q = -(1/6) Lap R + (1/6) R^2 - (1/2) |Ric|^2
template <class M, class T> T q_curvature_4d(const M& m, const Vec<T, M::dim>& x) {
  if constexpr (M::dim != 4) {
    throw UnsupportedDimension("q_curvature_4d: requires dimension 4");
  } else {
    auto rs = ricci_scalar(m, x);
    auto gi = inverse(m(x));
    auto Rf = [&m](const auto& y) { return scalar_curvature(m, y); };
    T lap = laplace_beltrami(m, Rf, x);
    T ric2 = norm2_cov(gi, rs.ricci);
    return -lap / 6.0 + rs.scalar * rs.scalar / 6.0 - 0.5 * ric2;
  }
}

// e^{2 omega} base
template <class M, class W> struct ConformalRescale {
  static constexpr std::size_t dim = M::dim;
  M base;
  W omega;
  template <class T> Mat<T, dim> operator()(const Vec<T, dim>& x) const {
    T f = exp(2.0 * omega(x));
    return scale(base(x), f);
  }
  bool in_domain(const Vec<double, dim>& x) const {
    if constexpr (HasDomain<M>) return base.in_domain(x);
    return true;
  }
};

template <class M, class W> ConformalRescale<M, W> conformal_rescale(const M& m, const W& w) { return {m, w}; }

// covariant derivative of a covariant 2-tensor field A (callable) : out[c][a][b] = nabla_c A_ab
template <class M, class F, class T> Ten3<T, M::dim> covd2(const M& m, const F& A, const Vec<T, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  auto G = christoffel(m, x);
  auto a = A(x);
  auto dA = jacobian(A, x);
  Ten3<T, N> r{};
  for (std::size_t c = 0; c < N; ++c)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        T s = dA[c][i][j];
        for (std::size_t d = 0; d < N; ++d) s -= G[d][c][i] * a[d][j] + G[d][c][j] * a[i][d];
        r[c][i][j] = s;
      }
  return r;
}

// covariant derivative of a covariant 3-tensor field B: out[d][c][a][b] = nabla_d B_cab
template <class M, class F, class T> Ten4<T, M::dim> covd3(const M& m, const F& B, const Vec<T, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  auto G = christoffel(m, x);
  auto b = B(x);
  auto dB = jacobian(B, x);
  Ten4<T, N> r{};
  for (std::size_t d = 0; d < N; ++d)
    for (std::size_t c = 0; c < N; ++c)
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
          T s = dB[d][c][i][j];
          for (std::size_t e = 0; e < N; ++e) s -= G[e][d][c] * b[e][i][j] + G[e][d][i] * b[c][e][j] + G[e][d][j] * b[c][i][e];
          r[d][c][i][j] = s;
        }
  return r;
}

// rough Laplacian of a 2-tensor field: g^cd nabla_d nabla_c A_ab
template <class M, class F, class T> Mat<T, M::dim> rough_laplacian2(const M& m, const F& A, const Vec<T, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  auto nA = [&m, &A](const auto& y) { return covd2(m, A, y); };
  auto nnA = covd3(m, nA, x);
  auto gi = inverse(m(x));
  Mat<T, N> r = zero_mat<T, N>();
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c)
        for (std::size_t d = 0; d < N; ++d) r[a][b] += gi[c][d] * nnA[d][c][a][b];
  return r;
}

}  // namespace rv
