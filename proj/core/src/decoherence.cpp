#include "fieldlab/decoherence.hpp"

#include <algorithm>
#include <cmath>

namespace fieldlab::decoherence {

void ChainStep::validate() const {
  if (unitary.rows() != unitary.cols()) throw domain_error("ChainStep: unitary not square");
  const Eigen::MatrixXcd residual =
      unitary * unitary.adjoint() - Eigen::MatrixXcd::Identity(unitary.rows(), unitary.cols());
  const double defect = residual.cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw domain_error("ChainStep: step is not unitary (defect " + std::to_string(defect) + ")");
}

DensityMatrix evolve_chain(const DensityMatrix& rho0, std::span<const ChainStep> steps) {
  Eigen::MatrixXcd rho = rho0.matrix();
  for (const auto& step : steps) {
    step.validate();
    if (step.unitary.rows() != rho.rows())
      throw domain_error("evolve_chain: step dimension does not match the state");
    rho = step.unitary * rho * step.unitary.adjoint();
    // keep hermiticity exact against rounding drift
    rho = 0.5 * (rho + rho.adjoint()).eval();
  }
  return DensityMatrix(rho0.basis(), std::move(rho));
}

DensityMatrix branch_truncate(const DensityMatrix& rho, int branch) {
  if (branch < 0 || branch >= rho.dim())
    throw domain_error("branch_truncate: branch index outside the basis");
  Eigen::MatrixXcd out = rho.matrix();
  for (Eigen::Index k = 0; k < out.rows(); ++k) {
    if (k == branch) continue;
    out(branch, k) = 0.0;
    out(k, branch) = 0.0;
  }
  return DensityMatrix(rho.basis(), std::move(out));
}

DensityMatrix branch_truncate(const DensityMatrix& rho, const ChainStep& step) {
  if (!step.decoupled_branch)
    throw domain_error("branch_truncate: step has no decoupled branch recorded");
  return branch_truncate(rho, *step.decoupled_branch);
}

EnvironmentModel::EnvironmentModel(std::vector<double> overlaps) : overlaps_(std::move(overlaps)) {
  if (overlaps_.empty()) throw domain_error("EnvironmentModel: N must be >= 1");
  for (double c : overlaps_) {
    if (!(c >= 0.0))
      throw domain_error("EnvironmentModel: overlap magnitudes must be non-negative");
    if (c >= 1.0)
      throw invariant_violation(
          "EnvironmentModel: cross-branch overlap magnitude must stay strictly below 1");
  }
}

EnvironmentModel EnvironmentModel::uniform(double overlap, int n) {
  if (n < 1) throw domain_error("EnvironmentModel: N must be >= 1");
  return EnvironmentModel(std::vector<double>(static_cast<std::size_t>(n), overlap));
}

EnvironmentModel EnvironmentModel::with_overlaps(std::vector<double> overlaps) {
  return EnvironmentModel(std::move(overlaps));
}

double EnvironmentModel::overlap_product() const {
  double p = 1.0;
  for (double c : overlaps_) p *= c;
  return p;
}

double EnvironmentModel::bound() const {
  const double c_max = *std::max_element(overlaps_.begin(), overlaps_.end());
  return std::pow(c_max, static_cast<double>(overlaps_.size()));
}

OffdiagonalDecay offdiagonal_suppression(const EnvironmentModel& env, bool same_branch) {
  if (same_branch) {
    // i = j: every factor is <d|d> = 1, the diagonal persists
    return {1.0, 1.0};
  }
  return {env.overlap_product(), env.bound()};
}

MeasurementOutcome measure_with_chain(const DensityMatrix& system, const EnvironmentModel& env,
                                      double efficiency_1, double efficiency_2) {
  if (system.dim() != 2) throw domain_error("measure_with_chain: system must be two-branch");
  if (efficiency_1 < 0.0 || efficiency_1 > 1.0 || efficiency_2 < 0.0 || efficiency_2 > 1.0)
    throw domain_error("measure_with_chain: efficiencies must lie in [0, 1]");

  const double p1 = system.matrix()(0, 0).real();
  const double p2 = system.matrix()(1, 1).real();
  const Complex coherence = system.matrix()(0, 1);
  const double gamma = env.overlap_product();

  Eigen::MatrixXcd pointer(2, 2);
  pointer(0, 0) = efficiency_1 * p1;
  pointer(1, 1) = efficiency_2 * p2;
  pointer(0, 1) = coherence * std::sqrt(efficiency_1 * efficiency_2) * gamma;
  pointer(1, 0) = std::conj(pointer(0, 1));

  const double trace = pointer.real().trace();
  if (trace <= 0.0)
    throw invariant_violation("measure_with_chain: no branch survives the efficiencies");
  pointer /= trace;

  MeasurementOutcome out{
      DensityMatrix({"pointer1", "pointer2"}, pointer),
      {efficiency_1, efficiency_2},
      {p1, p2},
      std::abs(pointer(0, 1)),
  };
  return out;
}

EntropyCheck entropy_increase_check(const DensityMatrix& before, const DensityMatrix& after) {
  EntropyCheck c{};
  c.initial = density::boltzmann_entropy(before);
  c.final_ = density::boltzmann_entropy(after);
  c.delta = c.final_ - c.initial;
  c.non_decreasing = c.delta >= -1e-12;
  return c;
}

}  // namespace fieldlab::decoherence
