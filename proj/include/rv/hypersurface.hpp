#pragma once

// Extrinsic geometry of hypersurfaces given by a parametrization plus a defining
// function F (F = 0 on the surface, F > 0 on the inside). The unit normal mu is
// the inward one and L(A,B) = -<nabla_A mu, B> = <mu, nabla_A B>.

#include <cmath>
#include <cstddef>
#include <utility>

#include "rv/curvature.hpp"
#include "rv/errors.hpp"
#include "rv/tensor.hpp"

namespace rv {

template <std::size_t N, class E, class F> struct Surface {
  static constexpr std::size_t ambient_dim = N;
  static constexpr std::size_t dim = N - 1;
  E embed;
  F side;
};

template <std::size_t N, class E, class F> Surface<N, E, F> make_surface(E e, F f) { return {std::move(e), std::move(f)}; }

// pullback of an ambient metric through a map of P parameters; itself a metric model
template <class M, class Map, std::size_t P> struct Pullback {
  static constexpr std::size_t dim = P;
  const M* metric;
  const Map* map;
  template <class T> Mat<T, P> operator()(const Vec<T, P>& q) const {
    constexpr std::size_t N = M::dim;
    auto E = jacobian(*map, q);  // E[a][i]
    auto g = (*metric)((*map)(q));
    Mat<T, P> h{};
    for (std::size_t a = 0; a < P; ++a)
      for (std::size_t b = a; b < P; ++b) {
        T s(0.0);
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j) s += g[i][j] * E[a][i] * E[b][j];
        h[a][b] = s;
        h[b][a] = s;
      }
    return h;
  }
};

template <class M, class S> auto induced_metric(const M& m, const S& s) {
  return Pullback<M, decltype(s.embed), S::dim>{&m, &s.embed};
}

// directional derivative of a scalar field along v at x
template <class F, class T, std::size_t N> T directional(const F& f, const Vec<T, N>& x, const Vec<T, N>& v) {
  return tangent_of(f(seed(x, v)));
}

template <class F, class T, std::size_t N> Vec<T, N> gradient_cov(const F& f, const Vec<T, N>& x) { return jacobian(f, x); }

// normal covector to the span of N-1 vectors (generalized cross product)
template <class T, std::size_t N> Vec<T, N> cofactor_normal(const std::array<Vec<T, N>, N - 1>& E) {
  Vec<T, N> n{};
  for (std::size_t i = 0; i < N; ++i) {
    Mat<T, N - 1> m{};
    for (std::size_t a = 0; a < N - 1; ++a) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < N; ++j) {
        if (j == i) continue;
        m[a][c++] = E[a][j];
      }
    }
    T d = determinant(m);
    n[i] = (i % 2 == 0) ? d : -d;
  }
  return n;
}

template <class T, std::size_t N> struct ShapeData {
  static constexpr std::size_t P = N - 1;
  Vec<T, N> X{};
  std::array<Vec<T, N>, P> E{};  // tangent vectors d_a X
  Mat<T, N> g{}, gi{};
  Ten3<T, N> Gam{};
  Mat<T, P> h{}, hi{};
  Vec<T, N> mu{};      // contravariant inward unit normal
  Vec<T, N> mu_cov{};  // g(mu, .)
  Mat<T, P> L{}, L0{};
  T H{};
};

template <class M, class S, class T>
ShapeData<T, M::dim> shape_data(const M& m, const S& s, const Vec<T, M::dim - 1>& q) {
  constexpr std::size_t N = M::dim;
  constexpr std::size_t P = N - 1;
  static_assert(S::ambient_dim == N);
  ShapeData<T, N> sd;
  sd.X = s.embed(q);
  auto J = jacobian(s.embed, q);
  auto D2 = hessian(s.embed, q);  // D2[a][b][i]
  for (std::size_t a = 0; a < P; ++a) sd.E[a] = J[a];
  maybe_check(m, sd.X);
  sd.g = m(sd.X);
  sd.gi = inverse(sd.g);
  sd.Gam = christoffel(m, sd.X);
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = a; b < P; ++b) {
      sd.h[a][b] = dot(sd.g, sd.E[a], sd.E[b]);
      sd.h[b][a] = sd.h[a][b];
    }
  if (std::abs(value(determinant(sd.h))) < 1e-14) throw DegenerateImmersion("induced metric degenerate");
  sd.hi = inverse(sd.h);
  auto n = cofactor_normal<T, N>(sd.E);
  auto nu = matvec(sd.gi, n);
  T len2(0.0);
  for (std::size_t i = 0; i < N; ++i) len2 += nu[i] * n[i];
  if (value(len2) <= 0.0) throw DegenerateImmersion("normal has zero length");
  T len = sqrt(len2);
  // orientation from the defining function
  auto dF = jacobian(s.side, to_double(sd.X));
  double side = 0.0;
  for (std::size_t i = 0; i < N; ++i) side += dF[i] * value(nu[i]);
  if (side == 0.0) throw DegenerateImmersion("defining function does not separate sides");
  double sg = side > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < N; ++i) {
    sd.mu[i] = sg * nu[i] / len;
    sd.mu_cov[i] = sg * n[i] / len;
  }
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = a; b < P; ++b) {
      T s2(0.0);
      for (std::size_t k = 0; k < N; ++k) {
        T acc = D2[a][b][k];
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j) acc += sd.Gam[k][i][j] * sd.E[a][i] * sd.E[b][j];
        s2 += sd.mu_cov[k] * acc;
      }
      sd.L[a][b] = s2;
      sd.L[b][a] = s2;
    }
  sd.H = T(0.0);
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b) sd.H += sd.hi[a][b] * sd.L[a][b];
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b) sd.L0[a][b] = sd.L[a][b] - sd.H / double(P) * sd.h[a][b];
  return sd;
}

// ambient (0,2) tensor restricted to the tangent frame
template <class T, std::size_t N> Mat<T, N - 1> tangential(const Mat<T, N>& A, const std::array<Vec<T, N>, N - 1>& E) {
  Mat<T, N - 1> r{};
  for (std::size_t a = 0; a < N - 1; ++a)
    for (std::size_t b = 0; b < N - 1; ++b) {
      T s(0.0);
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) s += A[i][j] * E[a][i] * E[b][j];
      r[a][b] = s;
    }
  return r;
}

// mean curvature of the level sets of F as an ambient function, H = -div mu
template <class M, class F, class T> T level_mean_curvature(const M& m, const F& Ffun, const Vec<T, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  auto mu_field = [&m, &Ffun](const auto& y) {
    using U = std::remove_cvref_t<decltype(y[0])>;
    auto gi = inverse(m(y));
    auto dF = jacobian(Ffun, y);
    auto v = matvec(gi, dF);
    U n2(0.0);
    for (std::size_t i = 0; i < N; ++i) n2 += v[i] * dF[i];
    U n = sqrt(n2);
    U vol = sqrt(determinant(m(y)));
    for (auto& c : v) c = c * vol / n;  // sqrt(g) mu
    return v;
  };
  auto D = jacobian(mu_field, x);
  T div(0.0);
  for (std::size_t i = 0; i < N; ++i) div += D[i][i];
  return -div / sqrt(determinant(m(x)));
}

// inward unit normal field of the level sets of F (contravariant)
template <class M, class F, class T> Vec<T, M::dim> level_normal(const M& m, const F& Ffun, const Vec<T, M::dim>& x) {
  constexpr std::size_t N = M::dim;
  auto gi = inverse(m(x));
  auto dF = jacobian(Ffun, x);
  auto v = matvec(gi, dF);
  T n2(0.0);
  for (std::size_t i = 0; i < N; ++i) n2 += v[i] * dF[i];
  T n = sqrt(n2);
  for (auto& c : v) c = c / n;
  return v;
}

}  // namespace rv
