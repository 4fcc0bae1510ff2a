#include <cmath>

#include "rv/curvature.hpp"
#include "rv/hypersurface.hpp"
#include "rv/identities.hpp"
#include "rv/models.hpp"
#include "rv/quadrature.hpp"
#include "rv/suite.hpp"
#include "rv/surfaces.hpp"

namespace rv {

namespace {

// Sigma = {psi = pi/2} in the unit round S^3; 1/2 oint f~ g3(nu, nu) dv_k with nu = d_psi
template <class Gfun> double boundary_term(const Gfun& g3nn) {
  auto g = gauss_legendre(16);
  CompensatedSum acc;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    double th = 0.5 * kPi * (1.0 + g.x[i]);
    double ftil = 1.0 + 0.5 * std::cos(th);
    // integrand independent of phi
    acc.add(0.5 * kPi * g.w[i] * 2.0 * kPi * std::sin(th) * 0.5 * ftil * g3nn(th));
  }
  return acc.value();
}

struct FormalSliceEmbed {
  template <class T> Vec<T, 4> operator()(const Vec<T, 3>& q) const { return {q[0], T(0.5 * kPi), q[1], q[2]}; }
};
struct FormalSliceLevel {
  template <class T> T operator()(const Vec<T, 4>& x) const { return x[1] - 0.5 * kPi; }
};

// -1/3 f.p. int_{Y, r > eps} f |L0|^2 dv on the slice {psi = pi/2} of a normal form, f = f~/r
double slice_bulk(const NormalForm<RoundS3>& nf, const Ladder& lad, double& log_coeff) {
  auto s = make_surface<4>(FormalSliceEmbed{}, FormalSliceLevel{});
  auto gt = gauss_legendre(8), gr = gauss_legendre(12);
  std::vector<Rung> data;
  for (double e : lad.epsilons()) {
    CompensatedSum acc;
    double a = std::log(e), b = std::log(1.5);
    for (std::size_t j = 0; j < gr.x.size(); ++j) {
      double lr = 0.5 * (a + b) + 0.5 * (b - a) * gr.x[j];
      double r = std::exp(lr);
      for (std::size_t i = 0; i < gt.x.size(); ++i) {
        double th = 0.5 * kPi * (1.0 + gt.x[i]);
        Vec<double, 3> q{r, th, 0.3};
        auto sd = shape_data(nf, s, q);
        double f = (1.0 + 0.5 * std::cos(th)) / r;
        acc.add(0.5 * (b - a) * gr.w[j] * r * 0.5 * kPi * gt.w[i] * 2.0 * kPi * std::sqrt(determinant(sd.h)) * f *
                norm2_cov(sd.hi, sd.L0));
      }
    }
    data.push_back({e, acc.value()});
  }
  auto fit = fit_expansion(data, volume_basis(true, 1), 1e12, false);
  log_coeff = -fit.c_log / 3.0;
  return -fit.V / 3.0;
}

// cap family at t = 0: normal speed f = -d_t F / |dF|_{g+}, bulk term over the cap
double cap_bulk(const Ladder& lad, double& log_coeff) {
  HyperbolicBall hb;
  auto surf = cap_surface(0.0);
  auto speed = [&](const Vec<double, 4>& x) {
    const double d = 1e-5;
    double dt = (CapLevel{d}(x) - CapLevel{-d}(x)) / (2 * d);
    auto g = jacobian(CapLevel{0.0}, x);
    auto gi = inverse(hb(x));
    double n2 = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) n2 += gi[i][j] * g[i] * g[j];
    return -dt / std::sqrt(n2);
  };
  auto g2 = gauss_legendre(6), g3 = gauss_legendre(4);
  std::vector<Rung> data;
  for (double e : lad.epsilons()) {
    auto cc = cap_corner(0.0, ball_radius_of_eps(e));
    auto radial = [&](double rho) {
      CompensatedSum acc;
      for (std::size_t j = 0; j < g2.x.size(); ++j)
        for (std::size_t k = 0; k < g3.x.size(); ++k) {
          double th = 0.5 * kPi * (1.0 + g2.x[j]), ph = kPi * (1.0 + g3.x[k]);
          Vec<double, 3> y{rho * std::sin(th) * std::cos(ph), rho * std::sin(th) * std::sin(ph), rho * std::cos(th)};
          auto sd = shape_data(hb, surf, y);
          acc.add(0.5 * kPi * g2.w[j] * kPi * g3.w[k] * rho * rho * std::sin(th) * std::sqrt(determinant(sd.h)) *
                  speed(sd.X) * norm2_cov(sd.hi, sd.L0));
        }
      return acc.value();
    };
    data.push_back({e, integrate_graded(radial, 0.0, cc.rho0, 6, 4)});
  }
  auto fit = fit_expansion(data, volume_basis(true, 1), 1e12, false);
  log_coeff = -fit.c_log / 3.0;
  return -fit.V / 3.0;
}

}  // namespace

VariationReport variation_two_sides(const VariationOptions& opt) {
  validate_ladder(opt.ladder);
  VariationReport rep;
  rep.family = opt.family;
  if (opt.family == "caps") {
    if (!(opt.delta > 0.0 && opt.delta <= 0.2)) throw ConfigError("delta must lie in (0, 0.2]");
    auto V = [&](double t) {
      RenvolOptions ro;
      ro.cap_t = t;
      ro.ladder = opt.ladder;
      double v = renormalized_volume_half(ro).fit.V;
      rep.t_samples.push_back(t);
      rep.v_samples.push_back(v);
      return v;
    };
    double d = opt.delta;
    CentralSamples s{V(d), V(-d), V(0.5 * d), V(-0.5 * d)};
    rep.lhs = central_derivative(s, d);
    rep.lhs_error = std::abs(rep.lhs - (s.fp_h2 - s.fm_h2) / d);
    rep.lhs_available = true;
    auto nf = hyperbolic_normal_form();
    rep.rhs_boundary = boundary_term([&](double th) {
      return nf.g3_amp * nf.boundary.g3_shape(Vec<double, 3>{0.5 * kPi, th, 0.0})[0][0];
    });
    rep.rhs_bulk = cap_bulk(opt.ladder, rep.bulk_log_coeff);
    rep.residual = rep.lhs - rep.rhs_boundary - rep.rhs_bulk;
    rep.boundary_closed = 0.0;
    rep.boundary_weyl = 0.0;
    return rep;
  }
  if (opt.family == "formal") {
    if (opt.g3_amp == 0.0) throw ConfigError("formal family needs g3_amp != 0");
    rep.formal = true;
    auto nf = hyperbolic_normal_form(1.0, opt.g3_amp);
    rep.rhs_boundary = boundary_term([&](double th) {
      return nf.g3_amp * nf.boundary.g3_shape(Vec<double, 3>{0.5 * kPi, th, 0.0})[0][0];
    });
    rep.boundary_closed = 2.0 * kPi * opt.g3_amp;
    // g3(nu, nu) = -2/3 lim r W^{g+}(d_psi, d_r, d_psi, d_r)
    rep.boundary_weyl = boundary_term([&](double th) {
      std::vector<Rung> data;
      Ladder lad{0.05, 0.8, 8};
      for (double r : lad.epsilons()) {
        auto W = weyl(nf, Vec<double, 4>{r, 0.5 * kPi, th, 0.0});
        data.push_back({r, r * W[1][0][1][0]});
      }
      std::vector<BasisTerm> basis{{0.0, 0}, {1.0, 0}, {2.0, 0}, {3.0, 0}};
      return -2.0 / 3.0 * fit_expansion(data, basis, 1e10, false).coeff(0.0);
    });
    rep.weyl_rel_error = std::abs(rep.boundary_weyl / rep.rhs_boundary - 1.0);
    rep.rhs_bulk = slice_bulk(nf, opt.ladder, rep.bulk_log_coeff);
    rep.lhs_available = false;
    rep.residual = 0.0;
    return rep;
  }
  throw ConfigError("unknown variation family '" + opt.family + "'");
}

// ---------------- first-variation formulas ----------------

namespace {

// embedding pushed along f mu for time t (mu the unit normal of the level sets of F)
template <class M, class E, class Fs, class Ff> struct FlowEmbed {
  const M* m;
  E embed;
  Fs side;
  Ff f;
  double t = 0.0;
  template <class T> auto operator()(const Vec<T, M::dim - 1>& q) const {
    auto X = embed(q);
    auto mu = level_normal(*m, side, X);
    auto fx = f(X);
    for (std::size_t i = 0; i < M::dim; ++i) X[i] = X[i] + t * fx * mu[i];
    return X;
  }
};

template <std::size_t P> double max_abs(const Mat<double, P>& a) {
  double m = 0;
  for (auto& r : a)
    for (double v : r) m = std::max(m, std::abs(v));
  return m;
}
template <std::size_t P> Mat<double, P> sub(const Mat<double, P>& a, const Mat<double, P>& b) {
  Mat<double, P> r{};
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < P; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

template <std::size_t P> struct Quantities {
  Mat<double, P> h, hi, L, ric;
  double H, dv;
};

template <class M, class E, class Fs, class Ff>
Quantities<M::dim - 1> quantities(const M& m, const E& embed, const Fs& side, const Ff& f, double t,
                                  const Vec<double, M::dim - 1>& q) {
  constexpr std::size_t P = M::dim - 1;
  FlowEmbed<M, E, Fs, Ff> fe{&m, embed, side, f, t};
  auto s = make_surface<M::dim>(fe, side);
  auto sd = shape_data(m, s, q);
  Quantities<P> out;
  out.h = sd.h;
  out.hi = sd.hi;
  out.L = sd.L;
  out.H = sd.H;
  out.dv = std::sqrt(determinant(sd.h));
  auto hm = induced_metric(m, s);
  out.ric = ricci_scalar(hm, q).ricci;
  return out;
}

template <std::size_t P> VariationResidual compare(const std::string& name, const Mat<double, P>& fp, const Mat<double, P>& fm,
                                                 const Mat<double, P>& fp2, const Mat<double, P>& fm2, double dt,
                                                 const Mat<double, P>& formula) {
  VariationResidual r;
  r.quantity = name;
  Mat<double, P> d1{}, d2{}, rich{};
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < P; ++j) {
      d1[i][j] = (fp[i][j] - fm[i][j]) / (2 * dt);
      d2[i][j] = (fp2[i][j] - fm2[i][j]) / dt;
      rich[i][j] = (4.0 * d2[i][j] - d1[i][j]) / 3.0;
    }
  r.finite_difference = max_abs(rich);
  r.formula = max_abs(formula);
  r.residual = max_abs(sub(rich, formula));
  r.err_h = max_abs(sub(d1, formula));
  r.err_h2 = max_abs(sub(d2, formula));
  r.second_order = r.err_h < 1e-9 || r.err_h2 < r.err_h / 3.0;
  return r;
}

VariationResidual compare_scalar(const std::string& name, double fp, double fm, double fp2, double fm2, double dt, double formula) {
  Mat<double, 1> a{{{fp}}}, b{{{fm}}}, c{{{fp2}}}, d{{{fm2}}}, e{{{formula}}};
  auto r = compare<1>(name, a, b, c, d, dt, e);
  r.finite_difference = (4.0 * (fp2 - fm2) / dt - (fp - fm) / (2 * dt)) / 3.0;
  r.formula = formula;
  return r;
}

template <class M, class E, class Fs, class Ff>
AppendixReport run_family(const std::string& name, const M& m, const E& embed, const Fs& side, const Ff& f,
                          const Vec<double, M::dim - 1>& q, double dt) {
  constexpr std::size_t N = M::dim;
  constexpr std::size_t P = N - 1;
  AppendixReport rep;
  rep.family = name;
  auto Qp = quantities(m, embed, side, f, dt, q), Qm = quantities(m, embed, side, f, -dt, q);
  auto Qp2 = quantities(m, embed, side, f, 0.5 * dt, q), Qm2 = quantities(m, embed, side, f, -0.5 * dt, q);

  auto s = make_surface<N>(embed, side);
  auto sd = shape_data(m, s, q);
  auto hm = induced_metric(m, s);
  double fx = f(sd.X);
  // h' = -2 f L
  Mat<double, P> hdot{}, hinvdot{}, hinv_printed{}, Ldot{};
  auto Lup = matmul(matmul(sd.hi, sd.L), sd.hi);      // L^{ab}
  auto Lmix = matmul(sd.hi, sd.L);                    // L^a_b
  auto L2 = matmul(matmul(sd.L, sd.hi), sd.L);        // L_a^c L_cb
  auto fY = [&s, &f](const auto& qq) { return f(s.embed(qq)); };
  auto hess = hessian_cov(hm, fY, q);
  auto R = riemann(m, sd.X);
  auto rs = ricci_scalar(m, sd.X);
  Mat<double, P> Rn{};
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b) {
      double acc = 0;
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
          for (std::size_t k = 0; k < N; ++k)
            for (std::size_t l = 0; l < N; ++l) acc += R[i][j][k][l] * sd.mu[i] * sd.E[a][j] * sd.mu[k] * sd.E[b][l];
      Rn[a][b] = acc;  // <R(nu, e_a) e_b, nu>
    }
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b) {
      hdot[a][b] = -2.0 * fx * sd.L[a][b];
      hinvdot[a][b] = 2.0 * fx * Lup[a][b];
      double pr = 0;
      for (std::size_t c = 0; c < P; ++c)
        for (std::size_t d = 0; d < P; ++d) pr += Lmix[a][c] * sd.hi[b][d] * Lmix[d][c];
      hinv_printed[a][b] = 2.0 * fx * pr;  // 2 f L^a_c L^{bc}
      Ldot[a][b] = hess[a][b] - fx * L2[a][b] + fx * Rn[a][b];
    }
  rep.rows.push_back(compare<P>("hdot", Qp.h, Qm.h, Qp2.h, Qm2.h, dt, hdot));
  auto hr = compare<P>("hinvdot", Qp.hi, Qm.hi, Qp2.hi, Qm2.hi, dt, hinvdot);
  {
    Mat<double, P> rich{};
    for (std::size_t a = 0; a < P; ++a)
      for (std::size_t b = 0; b < P; ++b)
        rich[a][b] = (4.0 * (Qp2.hi[a][b] - Qm2.hi[a][b]) / dt - (Qp.hi[a][b] - Qm.hi[a][b]) / (2 * dt)) / 3.0;
    hr.printed_residual = max_abs(sub(rich, hinv_printed));
  }
  rep.rows.push_back(hr);
  rep.rows.push_back(compare<P>("Ldot", Qp.L, Qm.L, Qp2.L, Qm2.L, dt, Ldot));
  double ricnn = dot(rs.ricci, sd.mu, sd.mu);
  double Hdot = laplace_beltrami(hm, fY, q) + (norm2_cov(sd.hi, sd.L) + ricnn) * fx;
  rep.rows.push_back(compare_scalar("Hdot", Qp.H, Qm.H, Qp2.H, Qm2.H, dt, Hdot));
  double dv = std::sqrt(determinant(sd.h));
  rep.rows.push_back(compare_scalar("dVdot", Qp.dv, Qm.dv, Qp2.dv, Qm2.dv, dt, -fx * sd.H * dv));

  // Ricci variation with h' = -2 f L as input
  auto kfield = [&m, &s, &f](const auto& qq) {
    auto sq = shape_data(m, s, qq);
    auto fq = f(sq.X);
    auto k = sq.L;
    for (auto& row : k)
      for (auto& v : row) v = -2.0 * fq * v;
    return k;
  };
  auto divk = [&hm, &kfield](const auto& qq) {
    using T = std::remove_cvref_t<decltype(qq[0])>;
    auto nk = covd2(hm, kfield, qq);
    auto hi = inverse(hm(qq));
    Vec<T, P> w{};
    for (std::size_t b = 0; b < P; ++b)
      for (std::size_t c = 0; c < P; ++c)
        for (std::size_t e = 0; e < P; ++e) w[b] += hi[c][e] * nk[e][b][c];
    return w;
  };
  auto trk = [&hm, &kfield](const auto& qq) { return trace(matmul(inverse(hm(qq)), kfield(qq))); };
  auto lapk = rough_laplacian2(hm, kfield, q);
  auto dw = jacobian(divk, q);
  auto w = divk(q);
  auto Gh = christoffel(hm, q);
  auto htr = hessian_cov(hm, trk, q);
  auto Rh = riemann(hm, q);
  auto rh = ricci_scalar(hm, q);
  auto k = kfield(q);
  Mat<double, P> ricdot{};
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b) {
      double nwab = dw[a][b], nwba = dw[b][a];
      for (std::size_t c = 0; c < P; ++c) {
        nwab -= Gh[c][a][b] * w[c];
        nwba -= Gh[c][b][a] * w[c];
      }
      double v = -0.5 * (lapk[a][b] - nwab - nwba + htr[a][b]);
      for (std::size_t c = 0; c < P; ++c)
        for (std::size_t e = 0; e < P; ++e)
          for (std::size_t g = 0; g < P; ++g)
            for (std::size_t z = 0; z < P; ++z) v -= sd.hi[c][e] * sd.hi[g][z] * Rh[a][c][b][g] * k[e][z];
      for (std::size_t e = 0; e < P; ++e)
        for (std::size_t z = 0; z < P; ++z) v += 0.5 * sd.hi[e][z] * (rh.ricci[a][e] * k[b][z] + rh.ricci[b][e] * k[a][z]);
      ricdot[a][b] = v;
    }
  rep.rows.push_back(compare<P>("ricci_dot", Qp.ric, Qm.ric, Qp2.ric, Qm2.ric, dt, ricdot));
  for (const auto& r : rep.rows) rep.max_residual = std::max(rep.max_residual, r.residual);
  return rep;
}

struct SphereEmbed {
  double rho;
  template <class T> Vec<T, 3> operator()(const Vec<T, 2>& q) const {
    return {rho * sin(q[0]) * cos(q[1]), rho * sin(q[0]) * sin(q[1]), rho * cos(q[0])};
  }
};
struct SphereInside {
  double rho;
  template <class T> T operator()(const Vec<T, 3>& x) const { return rho - sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }
};
struct One {
  template <class T> T operator()(const Vec<T, 3>&) const { return T(1.0); }
};
// cosh of the hyperbolic distance to the origin of the ball
struct CoshDist {
  template <class T> T operator()(const Vec<T, 4>& x) const {
    T s(0.0);
    for (const auto& c : x) s += c * c;
    return (1.0 + s) / (1.0 - s);
  }
};
struct WobbleGraph {
  template <class T> Vec<T, 4> operator()(const Vec<T, 3>& y) const {
    return {y[0], y[1], y[2], 0.1 * sin(y[0] + 2.0 * y[1]) + 0.05 * y[2] * y[2] + 0.03 * y[0] * y[2]};
  }
};
struct WobbleLevel {
  template <class T> T operator()(const Vec<T, 4>& x) const {
    return x[3] - (0.1 * sin(x[0] + 2.0 * x[1]) + 0.05 * x[2] * x[2] + 0.03 * x[0] * x[2]);
  }
};
struct WobbleSpeed {
  template <class T> T operator()(const Vec<T, 4>& x) const { return 1.0 + 0.3 * x[0] - 0.2 * x[2] * x[2] + 0.1 * sin(x[1]); }
};

}  // namespace

AppendixReport appendix_variations(const std::string& family, double dt) {
  if (!(dt > 1e-6 && dt < 0.1)) throw ConfigError("dt must lie in (1e-6, 0.1)");
  if (family == "sphere") {
    Flat<3> fl;
    return run_family("sphere", fl, SphereEmbed{1.5}, SphereInside{1.5}, One{}, Vec<double, 2>{0.9, 0.4}, dt);
  }
  if (family == "cap") {
    HyperbolicBall hb;
    return run_family("cap", hb, CapGraph{0.0}, CapLevel{0.0}, CoshDist{}, Vec<double, 3>{0.2, -0.1, 0.3}, dt);
  }
  if (family == "random") {
    RandomMetric<4> rm(7, 0.1);
    return run_family("random", rm, WobbleGraph{}, WobbleLevel{}, WobbleSpeed{}, Vec<double, 3>{0.2, -0.1, 0.3}, dt);
  }
  throw ConfigError("unknown variation family '" + family + "'");
}

}  // namespace rv
