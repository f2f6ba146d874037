#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fieldlab/errors.hpp"

namespace fieldlab::waves {

using Complex = std::complex<double>;

/// Uniform 1-D grid. Natural units (hbar = c = 1) throughout.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int points = 2;

  void validate() const;
  double dx() const { return (x_max - x_min) / (points - 1); }
  double x(int k) const { return x_min + k * dx(); }
  bool contains(double x) const { return x >= x_min && x <= x_max; }
  /// Nearest grid index; domain_error when x lies outside the grid.
  int nearest_index(double x) const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// A c-number mode function sampled on a grid, L2-normalized:
/// sum |v|^2 dx = 1 to 1e-9.
class WaveMode {
 public:
  WaveMode(Grid1D grid, std::vector<Complex> values, std::string label = "");

  /// Normalizes the given samples before constructing.
  static WaveMode normalized(Grid1D grid, std::vector<Complex> values, std::string label = "");

  const Grid1D& grid() const { return grid_; }
  const std::vector<Complex>& values() const { return values_; }
  const std::string& label() const { return label_; }
  Complex value(int k) const { return values_.at(k); }
  Complex at(double x) const { return values_.at(grid_.nearest_index(x)); }
  double norm_sq() const;

 private:
  Grid1D grid_;
  std::vector<Complex> values_;
  std::string label_;
};

/// Fraunhofer two-slit geometry: separation d, width a, wavenumber p,
/// screen distance L. The far-field pattern lives on an angle grid.
struct SlitGeometry {
  double slit_separation = 1.0;   // d
  double slit_width = 0.2;        // a
  double wavenumber = 50.0;       // p
  double screen_distance = 100.0; // L, recorded for the far-field validity flag

  void validate() const;
  bool far_field_valid() const { return screen_distance > 10.0 * slit_separation; }
};

/// Unnormalized far-field amplitudes as functions of screen angle.
double two_slit_amplitude(const SlitGeometry& g, double theta);
double one_slit_amplitude(const SlitGeometry& g, double theta);

/// k = 2: A ~ cos(p d sin(theta)/2) sinc(p a sin(theta)/2)
/// k = 1: A ~ sinc(p a sin(theta)/2)
/// normalized on the screen grid.
WaveMode slit_pattern(const SlitGeometry& g, int k, const Grid1D& screen);

/// First zero of the two-slit cosine factor: sin(theta) = pi / (p d).
double first_fringe_zero_angle(const SlitGeometry& g);

/// Finite-energy-window superposition of free eigenmodes,
/// w(E_k;x,t) = N * integral over [E_k - dE, E_k + dE] of e^{i(px - E'(t-t0))}.
struct WeylPacket {
  double energy = 1.25;      // E_k
  double half_width = 0.2;   // dE
  double mass = 1.0;
  double t0 = 0.0;
  int direction = +1;
  int quadrature_points = 64;

  void validate() const;  // requires energy - half_width > mass >= 0, dE > 0
  double central_momentum() const;
  double phase_velocity() const;  // E/p
  double group_velocity() const;  // p/E
};

/// Quadrature evaluation of the packet integral, unnormalized.
Complex weyl_raw(const WeylPacket& p, double x, double t);

/// Normalization constant fixing unit L2 norm on `grid` at t = t0.
double weyl_norm_constant(const WeylPacket& p, const Grid1D& grid);

/// w(E_k; x, t) with the t0-fixed normalization constant.
Complex weyl_evaluate(const WeylPacket& p, double x, double t, double norm_constant);

/// Bare samples N * w_raw on the grid. The sum |w|^2 dx of a snapshot is
/// what the norm-conservation checks measure; it is 1 at t = t0 by
/// construction and stays 1 within tolerance on a wide enough grid.
std::vector<Complex> weyl_snapshot(const WeylPacket& p, const Grid1D& grid, double t,
                                   double norm_constant);

/// Snapshot wrapped as a WaveMode (renormalized on the grid, as every
/// WaveMode is). Use weyl_snapshot when the raw norm matters.
WaveMode weyl_mode(const WeylPacket& p, const Grid1D& grid, double t);

/// Position of |amplitude|^2 maximum with parabolic refinement.
double packet_peak_position(const WaveMode& mode);

/// Max deviation of sum_n conj(psi_n(x)) psi_n(y) from delta_xy / dx.
/// Zero only for a complete orthonormal set (count == grid points).
double completeness_defect(const std::vector<WaveMode>& modes);

/// Discrete plane-wave basis on the grid: complete and orthonormal.
std::vector<WaveMode> plane_wave_basis(const Grid1D& grid);

/// C_ab = sum_x conj(psi_a) phi_b dx between two orthonormal bases.
/// Every entry obeys |C_ab| <= 1; rows are unit-norm when B is complete.
class OverlapMatrix {
 public:
  explicit OverlapMatrix(Eigen::MatrixXcd c);

  const Eigen::MatrixXcd& matrix() const { return c_; }
  double max_magnitude() const;
  Eigen::VectorXd row_norms_sq() const;

 private:
  Eigen::MatrixXcd c_;
};

OverlapMatrix overlap_matrix(const std::vector<WaveMode>& basis_a,
                             const std::vector<WaveMode>& basis_b,
                             double orthonormality_tol = 1e-6);

}  // namespace fieldlab::waves
