#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fieldlab/density.hpp"

namespace fieldlab::decoherence {

using density::Complex;
using density::DensityMatrix;

/// One link of the amplification chain: a unitary over the step's channel
/// basis plus bookkeeping about which output decouples into a side chain.
struct ChainStep {
  Eigen::MatrixXcd unitary;
  std::vector<int> observed;
  std::optional<int> decoupled_branch;

  void validate() const;  // U U^dagger = 1 to 1e-10
};

/// rho -> U rho U^dagger per step; the composition equals one step with
/// the product unitary (the group property of the evolution operator).
DensityMatrix evolve_chain(const DensityMatrix& rho0, std::span<const ChainStep> steps);

/// Break off the side chain at branch j0: zero the off-diagonal elements
/// in row and column j0, keep the diagonal. A pinching, so the result is
/// still a density matrix; decoherence is partial unless every branch is
/// truncated.
DensityMatrix branch_truncate(const DensityMatrix& rho, int branch);

/// Same, with the branch read from the step's branch map.
DensityMatrix branch_truncate(const DensityMatrix& rho, const ChainStep& step);

/// Unobserved environment picked up along the chain: N degrees of
/// freedom whose branch-1/branch-2 states overlap with magnitude < 1
/// factor by factor.
class EnvironmentModel {
 public:
  static EnvironmentModel uniform(double overlap, int n);
  static EnvironmentModel with_overlaps(std::vector<double> overlaps);

  int size() const { return static_cast<int>(overlaps_.size()); }
  std::span<const double> overlaps() const { return overlaps_; }

  /// Product of the per-factor overlap magnitudes (the realized
  /// off-diagonal suppression) -- 1 on the diagonal branch.
  double overlap_product() const;
  /// c_max^N bound on the product.
  double bound() const;

 private:
  explicit EnvironmentModel(std::vector<double> overlaps);
  std::vector<double> overlaps_;
};

struct OffdiagonalDecay {
  double realized;
  double bound;
};

/// Cross-branch environment factor Tr'(eta_i rho eta_j^dagger): the product of N
/// overlap magnitudes and its c^N bound. same_branch = true gives the
/// diagonal case where every factor is 1.
OffdiagonalDecay offdiagonal_suppression(const EnvironmentModel& env, bool same_branch = false);

struct MeasurementOutcome {
  DensityMatrix reduced;                      // normalized pointer state
  std::array<double, 2> efficiency;           // E_i
  std::array<double, 2> branch_probability;   // P_i = rho_ii
  double off_diagonal_magnitude;              // of the normalized reduced state
};

/// End-to-end two-branch measurement: pointer density matrix with
/// diagonal E_i P_i and off-diagonal rho_12 sqrt(E1 E2) times the
/// environment overlap product, then normalized.
MeasurementOutcome measure_with_chain(const DensityMatrix& system, const EnvironmentModel& env,
                                      double efficiency_1 = 1.0, double efficiency_2 = 1.0);

struct EntropyCheck {
  double initial;
  double final_;
  double delta;
  bool non_decreasing;  // delta >= -1e-12
};

EntropyCheck entropy_increase_check(const DensityMatrix& before, const DensityMatrix& after);

}  // namespace fieldlab::decoherence
