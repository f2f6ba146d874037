#include "fieldlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fieldlab/units.hpp"

namespace fieldlab::density {

namespace {

void check_density_invariants(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) throw domain_error("DensityMatrix: matrix not square");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    throw invariant_violation("DensityMatrix: hermiticity defect " + std::to_string(herm));
  const double trace_defect = std::abs(rho.trace() - Complex(1.0));
  if (trace_defect > 1e-12)
    throw invariant_violation("DensityMatrix: trace defect " + std::to_string(trace_defect));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -1e-10)
    throw invariant_violation("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
}

double entropy_term(double w) {
  if (w <= 0.0) return 0.0;  // 0 log 0 := 0
  return -w * std::log(w);
}

}  // namespace

DensityMatrix::DensityMatrix(std::vector<std::string> basis, Eigen::MatrixXcd rho)
    : basis_(std::move(basis)), rho_(std::move(rho)) {
  if (basis_.size() != static_cast<std::size_t>(rho_.rows()))
    throw domain_error("DensityMatrix: basis size does not match matrix");
  check_density_invariants(rho_);
}

DensityMatrix DensityMatrix::diagonal(std::vector<std::string> basis,
                                      const Eigen::VectorXd& weights) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(weights.size(), weights.size());
  for (Eigen::Index i = 0; i < weights.size(); ++i) rho(i, i) = weights(i);
  return DensityMatrix(std::move(basis), std::move(rho));
}

DensityMatrix DensityMatrix::pure(std::vector<std::string> basis,
                                  const Eigen::VectorXcd& amplitudes) {
  const double n = amplitudes.squaredNorm();
  if (n <= 0.0) throw domain_error("DensityMatrix: zero state vector");
  Eigen::VectorXcd v = amplitudes / std::sqrt(n);
  return DensityMatrix(std::move(basis), v * v.adjoint());
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

DensityMatrix thermal_density(const ThermalConfig& cfg) {
  if (!(cfg.temperature > 0.0)) throw domain_error("thermal_density: temperature must be positive");
  if (cfg.energies.empty()) throw domain_error("thermal_density: no energy levels");
  std::vector<std::string> labels = cfg.labels;
  if (labels.empty()) {
    for (std::size_t i = 0; i < cfg.energies.size(); ++i) labels.push_back("E" + std::to_string(i));
  }
  if (labels.size() != cfg.energies.size())
    throw domain_error("thermal_density: label/energy count mismatch");

  // subtract the minimum energy before exponentiating
  const double e0 = *std::min_element(cfg.energies.begin(), cfg.energies.end());
  Eigen::VectorXd w(cfg.energies.size());
  for (std::size_t i = 0; i < cfg.energies.size(); ++i)
    w(i) = std::exp(-(cfg.energies[i] - e0) / cfg.temperature);
  w /= w.sum();
  return DensityMatrix::diagonal(std::move(labels), w);
}

double boltzmann_entropy(const DensityMatrix& rho) {
  double e = 0.0;
  for (Eigen::Index j = 0; j < rho.dim(); ++j) {
    const double w = rho.matrix()(j, j).real();
    if (w < -1e-12) throw domain_error("boltzmann_entropy: negative diagonal entry");
    e += entropy_term(w);
  }
  return e;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  double e = 0.0;
  for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j)
    e += entropy_term(solver.eigenvalues()(j));
  return e;
}

double probability_density(std::span<const Complex> coefficients,
                           std::span<const waves::WaveMode> modes,
                           std::span<const double> energies, int x_index, double t) {
  if (coefficients.size() != modes.size() || modes.size() != energies.size())
    throw domain_error("probability_density: coefficient/mode/energy count mismatch");
  Complex psi = 0.0;
  for (std::size_t j = 0; j < modes.size(); ++j) {
    psi += coefficients[j] * modes[j].value(x_index) * std::polar(1.0, -energies[j] * t);
  }
  return std::norm(psi);
}

double probability_density(const DensityMatrix& rho, std::span<const waves::WaveMode> modes,
                           std::span<const double> energies, int x_index, double t) {
  if (static_cast<std::size_t>(rho.dim()) != modes.size() || modes.size() != energies.size())
    throw domain_error("probability_density: density/mode/energy count mismatch");
  Complex p = 0.0;
  for (Eigen::Index j = 0; j < rho.dim(); ++j) {
    for (Eigen::Index k = 0; k < rho.dim(); ++k) {
      // D_kj(x,t) = psi_j(x) e^{-i E_j t} conj(psi_k(x)) e^{+i E_k t}
      const Complex d = modes[j].value(x_index) * std::conj(modes[k].value(x_index)) *
                        std::polar(1.0, (energies[k] - energies[j]) * t);
      p += rho.matrix()(j, k) * d;
    }
  }
  return p.real();
}

DensityStateVector::DensityStateVector(fock::ModeSet set, std::vector<fock::OpString> creators,
                                       Eigen::MatrixXcd weights)
    : set_(std::move(set)), creators_(std::move(creators)), weights_(std::move(weights)) {
  if (weights_.rows() != weights_.cols() ||
      weights_.rows() != static_cast<Eigen::Index>(creators_.size()))
    throw domain_error("DensityStateVector: weight matrix size mismatch");
  const double herm = (weights_ - weights_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw invariant_violation("DensityStateVector: weights not hermitian");
  kets_.reserve(creators_.size());
  const fock::Ket vac = fock::Ket::vacuum(set_);
  for (const auto& op : creators_) kets_.push_back(fock::apply(op, vac));
}

Complex DensityStateVector::expectation(const fock::OpSum& op) const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < kets_.size(); ++i) {
    const fock::Ket transformed = fock::apply(op, kets_[i]);
    for (std::size_t j = 0; j < kets_.size(); ++j) {
      const Complex w = weights_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (w == Complex(0.0)) continue;
      sum += w * fock::inner(kets_[j], transformed);
    }
  }
  return sum;
}

DensityMatrix DensityStateVector::reduce(std::vector<std::string> basis) const {
  for (std::size_t i = 0; i < kets_.size(); ++i) {
    for (std::size_t j = i; j < kets_.size(); ++j) {
      const Complex g = fock::inner(kets_[i], kets_[j]);
      const Complex target = i == j ? Complex(1.0) : Complex(0.0);
      if (std::abs(g - target) > 1e-10)
        throw domain_error("DensityStateVector: dressed kets are not orthonormal");
    }
  }
  return DensityMatrix(std::move(basis), weights_);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                            bool keep_first) {
  if (dim_a * dim_b != rho.dim())
    throw domain_error("partial_trace: basis does not factor into the given dimensions");
  const Eigen::Index keep = keep_first ? dim_a : dim_b;
  const Eigen::Index traced = keep_first ? dim_b : dim_a;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep, keep);
  for (Eigen::Index i = 0; i < keep; ++i) {
    for (Eigen::Index j = 0; j < keep; ++j) {
      Complex sum = 0.0;
      for (Eigen::Index e = 0; e < traced; ++e) {
        const Eigen::Index row = keep_first ? i * dim_b + e : e * dim_b + i;
        const Eigen::Index col = keep_first ? j * dim_b + e : e * dim_b + j;
        sum += rho.matrix()(row, col);
      }
      out(i, j) = sum;
    }
  }
  std::vector<std::string> labels(keep);
  for (Eigen::Index i = 0; i < keep; ++i)
    labels[i] = (keep_first ? "A" : "B") + std::to_string(i);
  return DensityMatrix(std::move(labels), std::move(out));
}

LocalizationResult thermal_localization(double mass_ev, double temperature_ev) {
  if (!(mass_ev > 0.0 && temperature_ev > 0.0))
    throw domain_error("thermal_localization: mass and temperature must be positive");
  LocalizationResult r{};
  r.lambda_natural = std::sqrt(2.0 * std::numbers::pi / (mass_ev * temperature_ev));
  r.lambda_nm = r.lambda_natural * units::kHbarCEvNm;
  r.below_atomic = r.lambda_nm < units::kAtomicDimensionNm;
  return r;
}

LocalizationResult argon_localization(double temperature_kelvin) {
  return thermal_localization(units::kArgonMassAmu * units::kAmuInEv,
                              temperature_kelvin * units::kBoltzmannEvPerKelvin);
}

}  // namespace fieldlab::density
