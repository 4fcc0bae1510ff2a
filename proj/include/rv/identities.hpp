#pragma once

// Global checks assembled from the kernel, surface and regularization pieces.

#include <optional>
#include <string>
#include <vector>

#include "rv/fit.hpp"

namespace rv {

struct QuadOrders {
  int psi = 16;
  int radial = 8;  // per radial panel
  int radial_levels = 4;
  int theta = 6;
  int phi = 2;
  int face = 16;   // per-axis order on faces
  int corner = 8;  // per-axis order on the corner
};

enum class GBRoute { GPlus, GBar };

struct GBOptions {
  std::optional<double> cap_t;  // dividing cap latitude; none = whole ball
  double eps = 0.1;
  GBRoute route = GBRoute::GPlus;
  QuadOrders orders{};
};

struct GaussBonnetBreakdown {
  double eps = 0.0;
  std::optional<double> cap_t;
  std::string route;
  double interior_W = 0.0;
  double interior_Q = 0.0;
  double face_Y = 0.0;
  double face_M = 0.0;
  double corner = 0.0;
  double chi_target = 0.0;
  double residual = 0.0;
  // split of face_M and corner in the gbar route: conformal correction parts
  double face_M_correction = 0.0;
  double corner_correction = 0.0;
};

GaussBonnetBreakdown gauss_bonnet_breakdown(const GBOptions& opt);

// closed-form pieces for the equatorial split of the ball, s = hyperbolic radius of {r = eps}
struct EquatorialClosedForm {
  double interior, face_M, corner;
};
EquatorialClosedForm equatorial_closed_form(double eps);

// ---- renormalized volume of X^+ ----

struct RenvolOptions {
  std::optional<double> cap_t;
  Ladder ladder{};
  int psi_order = 32;
  int radial_order = 32;
  int tail_order = 3;  // extra eps^1..eps^k columns in the fit
};

struct RenvolReport {
  SeriesFit fit;
  double target_V = 0.0;
  double vol_M_plus = 0.0;  // vol_hbar(M^+)
  double eta_integral = 0.0;  // closed integral of eta_M over Sigma
  double Rh_integral = 0.0;   // integral of R_hbar over M^+
  double c0_target = 0.0;  // vol(M^+)/3
  double c2_target = 0.0;  // -(3/8 int R + 3/4 oint eta)/3
};

RenvolReport renormalized_volume_half(const RenvolOptions& opt);

// vol_{g+}(X^+ n {r > eps}) for the ball with cap t (or whole ball)
double truncated_volume(std::optional<double> cap_t, double eps, int psi_order, int radial_order);

struct GbrvReport {
  RenvolReport renvol;
  double chi_X = 1.0;
  double chi_Sigma = 2.0;
  double lhs = 0.0;       // pi^2 (4 chi(X+) - chi(Sigma))
  double three_V = 0.0;
  double weyl_term = 0.0;   // 1/8 int |W|^2, eps -> 0
  double c_term = 0.0;      // int_Y C
  double residual = 0.0;
};

GbrvReport gbrv_residual(const RenvolOptions& opt);

}  // namespace rv
