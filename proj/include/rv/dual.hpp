#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace rv {

// Forward-mode dual number; nest Dual<Dual<double>> for higher derivatives.
template <class T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  template <class S, std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>
  constexpr Dual(S x) : v(T(x)), d(T(0)) {}
  constexpr Dual(const T& val, const T& der) : v(val), d(der) {}
  template <class U, std::enable_if_t<!std::is_arithmetic_v<U> && std::is_convertible_v<U, T> &&
                                          !std::is_same_v<U, T>,
                                      int> = 0>
  constexpr Dual(const U& x) : v(T(x)), d(T(0)) {}
  constexpr Dual(const T& x) requires(!std::is_arithmetic_v<T>) : v(x), d(T(0)) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }
};

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};
template <class T> inline constexpr bool is_dual_v = is_dual<T>::value;

template <class T> struct dual_depth { static constexpr int value = 0; };
template <class T> struct dual_depth<Dual<T>> { static constexpr int value = 1 + dual_depth<T>::value; };

inline double value(double x) { return x; }
template <class T> double value(const Dual<T>& x) { return value(x.v); }

template <class T> Dual<T> operator+(const Dual<T>& a) { return a; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  T q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

// mixed operations with anything convertible to the inner type (double, lower duals)
#define RV_DUAL_MIXED(OP)                                                                  \
  template <class T, class S, std::enable_if_t<std::is_convertible_v<S, T> && !is_dual_v<S>, int> = 0> \
  Dual<T> operator OP(const Dual<T>& a, const S& b) { return a OP Dual<T>(T(b), T(0)); } \
  template <class T, class S, std::enable_if_t<std::is_convertible_v<S, T> && !is_dual_v<S>, int> = 0> \
  Dual<T> operator OP(const S& b, const Dual<T>& a) { return Dual<T>(T(b), T(0)) OP a; }
RV_DUAL_MIXED(+)
RV_DUAL_MIXED(-)
RV_DUAL_MIXED(*)
RV_DUAL_MIXED(/)
#undef RV_DUAL_MIXED

// lower-depth dual mixed with higher-depth dual
template <class T> Dual<Dual<T>> operator*(const Dual<Dual<T>>& a, const Dual<T>& b) { return a * Dual<Dual<T>>(b); }
template <class T> Dual<Dual<T>> operator*(const Dual<T>& b, const Dual<Dual<T>>& a) { return Dual<Dual<T>>(b) * a; }
template <class T> Dual<Dual<T>> operator+(const Dual<Dual<T>>& a, const Dual<T>& b) { return a + Dual<Dual<T>>(b); }
template <class T> Dual<Dual<T>> operator+(const Dual<T>& b, const Dual<Dual<T>>& a) { return Dual<Dual<T>>(b) + a; }
template <class T> Dual<Dual<T>> operator-(const Dual<Dual<T>>& a, const Dual<T>& b) { return a - Dual<Dual<T>>(b); }
template <class T> Dual<Dual<T>> operator-(const Dual<T>& b, const Dual<Dual<T>>& a) { return Dual<Dual<T>>(b) - a; }
template <class T> Dual<Dual<T>> operator/(const Dual<Dual<T>>& a, const Dual<T>& b) { return a / Dual<Dual<T>>(b); }
template <class T> Dual<Dual<T>> operator/(const Dual<T>& b, const Dual<Dual<T>>& a) { return Dual<Dual<T>>(b) / a; }

template <class A, class B> bool operator<(const A& a, const B& b) requires(is_dual_v<A> || is_dual_v<B>) { return value(a) < value(b); }
template <class A, class B> bool operator>(const A& a, const B& b) requires(is_dual_v<A> || is_dual_v<B>) { return value(a) > value(b); }
template <class A, class B> bool operator<=(const A& a, const B& b) requires(is_dual_v<A> || is_dual_v<B>) { return value(a) <= value(b); }
template <class A, class B> bool operator>=(const A& a, const B& b) requires(is_dual_v<A> || is_dual_v<B>) { return value(a) >= value(b); }

using std::acos;
using std::asin;
using std::atan;
using std::atan2;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;
using std::abs;

template <class T> Dual<T> sqrt(const Dual<T>& a) { T s = sqrt(a.v); return {s, a.d / (2.0 * s)}; }
template <class T> Dual<T> exp(const Dual<T>& a) { T e = exp(a.v); return {e, e * a.d}; }
template <class T> Dual<T> log(const Dual<T>& a) { return {log(a.v), a.d / a.v}; }
template <class T> Dual<T> sin(const Dual<T>& a) { return {sin(a.v), cos(a.v) * a.d}; }
template <class T> Dual<T> cos(const Dual<T>& a) { return {cos(a.v), -sin(a.v) * a.d}; }
template <class T> Dual<T> tan(const Dual<T>& a) { T t = tan(a.v); return {t, (1.0 + t * t) * a.d}; }
template <class T> Dual<T> sinh(const Dual<T>& a) { return {sinh(a.v), cosh(a.v) * a.d}; }
template <class T> Dual<T> cosh(const Dual<T>& a) { return {cosh(a.v), sinh(a.v) * a.d}; }
template <class T> Dual<T> tanh(const Dual<T>& a) { T t = tanh(a.v); return {t, (1.0 - t * t) * a.d}; }
template <class T> Dual<T> atan(const Dual<T>& a) { return {atan(a.v), a.d / (1.0 + a.v * a.v)}; }
template <class T> Dual<T> asin(const Dual<T>& a) { return {asin(a.v), a.d / sqrt(1.0 - a.v * a.v)}; }
template <class T> Dual<T> acos(const Dual<T>& a) { return {acos(a.v), -a.d / sqrt(1.0 - a.v * a.v)}; }
template <class T> Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
  T r2 = x.v * x.v + y.v * y.v;
  return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
}
template <class T> Dual<T> pow(const Dual<T>& a, double p) {
  T q = pow(a.v, p - 1.0);
  return {q * a.v, p * q * a.d};
}
template <class T> Dual<T> abs(const Dual<T>& a) { return value(a) < 0 ? -a : a; }

// integer powers without going through log
template <class T> T ipow(const T& x, int n) {
  if (n < 0) return T(1.0) / ipow(x, -n);
  T r(1.0);
  T b = x;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}
template <class T> T sqr(const T& x) { return x * x; }

// ---- extracting primal and tangent parts of (nested containers of) duals ----

template <class T> T primal_of(const Dual<T>& x) { return x.v; }
template <class T> T tangent_of(const Dual<T>& x) { return x.d; }
template <class A, std::size_t N> auto primal_of(const std::array<A, N>& a) {
  std::array<decltype(primal_of(a[0])), N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = primal_of(a[i]);
  return r;
}
template <class A, std::size_t N> auto tangent_of(const std::array<A, N>& a) {
  std::array<decltype(tangent_of(a[0])), N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = tangent_of(a[i]);
  return r;
}

inline double to_double(double x) { return x; }
template <class T> double to_double(const Dual<T>& x) { return value(x); }
template <class A, std::size_t N> auto to_double(const std::array<A, N>& a) {
  std::array<decltype(to_double(a[0])), N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = to_double(a[i]);
  return r;
}

// lift a double-valued array (any nesting) to scalar type T
template <class T> T lift(double x) { return T(x); }
template <class T, class A, std::size_t N> auto lift(const std::array<A, N>& a) {
  std::array<decltype(lift<T>(a[0])), N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = lift<T>(a[i]);
  return r;
}

// ---- directional derivatives of generic callables ----

template <class T, std::size_t N> std::array<Dual<T>, N> seed(const std::array<T, N>& x, const std::array<T, N>& dir) {
  std::array<Dual<T>, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = Dual<T>(x[i], dir[i]);
  return r;
}

template <class T, std::size_t N> std::array<Dual<T>, N> seed_axis(const std::array<T, N>& x, std::size_t k) {
  std::array<Dual<T>, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = Dual<T>(x[i], T(i == k ? 1.0 : 0.0));
  return r;
}

// d/dx_k f(x)
template <class F, class T, std::size_t N> auto partial(const F& f, const std::array<T, N>& x, std::size_t k) {
  return tangent_of(f(seed_axis(x, k)));
}

// returns {f(x), d/dx_k f(x)} from one evaluation
template <class F, class T, std::size_t N> auto value_and_partial(const F& f, const std::array<T, N>& x, std::size_t k) {
  auto y = f(seed_axis(x, k));
  return std::make_pair(primal_of(y), tangent_of(y));
}

// gradient-like: result[k] = d_k f
template <class F, class T, std::size_t N> auto jacobian(const F& f, const std::array<T, N>& x) {
  using R = decltype(partial(f, x, 0));
  std::array<R, N> r{};
  for (std::size_t k = 0; k < N; ++k) r[k] = partial(f, x, k);
  return r;
}

// hessian-like: result[k][l] = d_k d_l f (symmetric, 10 evaluations in 4D)
template <class F, class T, std::size_t N> auto hessian(const F& f, const std::array<T, N>& x) {
  using R = decltype(partial(f, x, 0));
  std::array<std::array<R, N>, N> r{};
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = k; l < N; ++l) {
      auto fk = [&f, k](const auto& y) { return partial(f, y, k); };
      r[k][l] = partial(fk, x, l);
      r[l][k] = r[k][l];
    }
  }
  return r;
}

// derivative of a scalar-parameter function
template <class F, class T> auto derivative(const F& f, const T& t) { return tangent_of(f(Dual<T>(t, T(1.0)))); }

}  // namespace rv
