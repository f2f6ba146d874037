#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fieldlab/fock.hpp"
#include "fieldlab/waves.hpp"

namespace fieldlab::density {

using Complex = std::complex<double>;

/// Hermitian, positive-semidefinite, unit-trace matrix over a labelled
/// basis. The invariants are checked on construction: hermiticity and
/// trace to 1e-12, eigenvalues above -1e-10.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<std::string> basis, Eigen::MatrixXcd rho);

  static DensityMatrix diagonal(std::vector<std::string> basis, const Eigen::VectorXd& weights);
  static DensityMatrix pure(std::vector<std::string> basis, const Eigen::VectorXcd& amplitudes);

  const std::vector<std::string>& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  double purity() const;  // Tr rho^2

 private:
  std::vector<std::string> basis_;
  Eigen::MatrixXcd rho_;
};

/// Boltzmann-weighted diagonal state, omega_ii = e^{-E_i/T} / Z.
struct ThermalConfig {
  double temperature = 1.0;
  std::vector<double> energies;
  std::vector<std::string> labels;  // optional; defaults to "E0", "E1", ...
};

DensityMatrix thermal_density(const ThermalConfig& cfg);

/// -sum_j w_jj log w_jj over the diagonal, natural log, 0 log 0 = 0.
/// This is the quantum Boltzmann form; the eigenvalue-based entropy is
/// the separate helper below.
double boltzmann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);

/// |sum_j C_j psi_j(x) e^{-i E_j t}|^2 for a pure superposition.
double probability_density(std::span<const Complex> coefficients,
                           std::span<const waves::WaveMode> modes,
                           std::span<const double> energies, int x_index, double t);

/// sum_jk rho_jk D_kj(x,t); time-independent for a diagonal mixture.
double probability_density(const DensityMatrix& rho, std::span<const waves::WaveMode> modes,
                           std::span<const double> energies, int x_index, double t);

/// Fock-dressed density matrix: sum_ij B_i|V> w_ij <V|B_j with the B_i
/// given as creation strings.
class DensityStateVector {
 public:
  DensityStateVector(fock::ModeSet set, std::vector<fock::OpString> creators,
                     Eigen::MatrixXcd weights);

  const Eigen::MatrixXcd& weights() const { return weights_; }

  /// Tr(rho O) evaluated through the Fock algebra:
  /// sum_ij w_ij <V| B_j O B_i |V>.
  Complex expectation(const fock::OpSum& op) const;

  /// Reduction to a plain matrix; requires the dressed kets to be
  /// orthonormal (checked), in which case the weights are the entries.
  DensityMatrix reduce(std::vector<std::string> basis) const;

 private:
  fock::ModeSet set_;
  std::vector<fock::OpString> creators_;
  std::vector<fock::Ket> kets_;  // B_i |V>
  Eigen::MatrixXcd weights_;
};

/// Partial trace of a state over basis A (x) B laid out row-major
/// (index = a * dim_b + b). keep_first selects which factor survives.
DensityMatrix partial_trace(const DensityMatrix& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                            bool keep_first = true);

/// Thermal de Broglie length sqrt(2 pi / (m T)) in natural units, plus
/// the comparison against atomic dimensions that decides whether a gas
/// molecule counts as localized.
struct LocalizationResult {
  double lambda_natural;  // 1/eV
  double lambda_nm;
  bool below_atomic;  // lambda < 0.1 nm
};

/// mass in eV, temperature in eV (natural units).
LocalizationResult thermal_localization(double mass_ev, double temperature_ev);

/// Convenience wrapper: argon gas at the given temperature in kelvin.
LocalizationResult argon_localization(double temperature_kelvin);

}  // namespace fieldlab::density
