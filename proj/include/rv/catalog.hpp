#pragma once

// Model-space operations that are not plain metric closed forms.

#include <optional>
#include <string>
#include <vector>

#include "rv/fit.hpp"

namespace rv {

// Member t of the latitude cap family. Sigma_t = {x4 = sin t} in the unit S^3; M^+ is
// the north side. eta_M is the mean curvature of Sigma_t in (S^3, round) for the unit
// normal pointing into M^+, measured by shape_data on the boundary sphere.
struct CapMember {
  double t = 0.0;
  double sigma_colatitude = 0.0;  // psi_0 = pi/2 - t
  double sigma_radius = 0.0;      // sin psi_0
  double eta_M = 0.0;
  double eta_M_closed = 0.0;  // 2 tan t
  double cap_radius = 0.0;    // |cot t| in the ball chart (infinite for t = 0)
  double vertex_height = 0.0; // x4 of the cap on the axis, tan(t/2)
  double max_abs_H = 0.0;     // minimality check over sample points
  double max_abs_L = 0.0;     // total geodesy check
  double vol_M_plus = 0.0;    // vol of M^+ in the unit round S^3
  double sigma_area = 0.0;
};

CapMember cap_family(double t, bool check_samples = true);

// v2 of sqrt(det hbar_r / det hbar) at a boundary point
struct V2Options {
  std::string boundary = "round";  // round | random
  double round_radius = 1.0;
  unsigned seed = 1;
  double amp = 0.05;
};
struct V2Result {
  double fitted = 0.0;
  double direct = 0.0;  // -1/2 tr(h^-1 P)
  double target = 0.0;  // -R/8
  double condition = 0.0;
};
V2Result volume_coefficient_v2(const V2Options& opt, const std::vector<double>& y);

// Eikonal collar of the latitude sphere Sigma_t in the unit S^3, built by geodesic
// shooting along the normal into M^+.
struct CollarSample {
  double theta, phi, w;
  double psi;           // colatitude reached
  double w_exact;       // psi_0 - psi
  double grad_residual; // | |dw|^2 - 1 |
  double cross_term;    // h(d_w x, d_zeta x) / |d_zeta x|
};
struct CollarReport {
  double t = 0.0;
  double width = 0.0;
  std::vector<CollarSample> samples;
  double max_grad_residual = 0.0;
  double max_cross_term = 0.0;
  double max_w_error = 0.0;
};
// throws CausticReached if the normal flow degenerates before `width`
CollarReport collar_coordinates(double t, double width, int n_samples = 12);

// Y as a graph w = u(r, zeta) over the collar, for the latitude cap
struct GraphExpansion {
  double eta_M = 0.0;
  double c2 = 0.0;        // coefficient of r^2
  double c4_log = 0.0;    // coefficient of r^4 log r (reported only)
  double c4 = 0.0;
  double c2_target = 0.0; // eta_M / 4
  double rel_error = 0.0;
  double condition = 0.0;
  std::string route;      // "closed_form" or "ode"
  double ode_psi_end = 0.0;
};
GraphExpansion minimal_graph_expansion(double t);
// independent route: rotationally symmetric minimal hypersurface ODE shot from the axis
GraphExpansion minimal_graph_expansion_ode(double axis_radius);

}  // namespace rv
