#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fieldlab/decoherence.hpp"
#include "fieldlab/density.hpp"
#include "fieldlab/waves.hpp"

namespace fieldlab::pointer_cat {

using density::Complex;
using density::DensityMatrix;

/// Transition matrix elements <n l | T | p k> between (recoil class,
/// emission channel) and (photon polarization, recoil-initial) indices,
/// stored flattened row-major: row = n * channels + l, col = p * recoils + k.
class TransitionModel {
 public:
  TransitionModel(int classes, int channels, int polarizations, int recoils,
                  Eigen::MatrixXcd elements);

  /// Polarization p feeds only class n = p: the "which polarization fired
  /// the chain" structure that splits the final state into u/d blocks.
  /// The per-class blocks are unitary, so pure inputs stay pure.
  static TransitionModel class_selective(int channels, int recoils);

  int classes() const { return classes_; }
  int channels() const { return channels_; }
  int polarizations() const { return polarizations_; }
  int recoils() const { return recoils_; }
  const Eigen::MatrixXcd& elements() const { return t_; }

 private:
  int classes_, channels_, polarizations_, recoils_;
  Eigen::MatrixXcd t_;
};

/// rho_{n'l',n''l''} = sum T <n'l'|T|p'k'> sigma_{p'p''} beta_{k'k''}
/// conj(<n''l''|T|p''k''>), normalized to unit trace. Diagonal sigma and a
/// class-selective T make the u-d off-blocks exactly zero.
DensityMatrix final_state_density(const TransitionModel& t, const DensityMatrix& sigma,
                                  const DensityMatrix& beta);

/// Measurement operator acting on the emitted particle only: direction
/// selection on a grid, a polarization kernel tau (delta by default), a
/// free class-sector weight kappa (all-ones by default), and the overlap
/// matrix of the unobserved recoil states (identity = orthonormal).
struct PointerMeasurement {
  std::vector<waves::WaveMode> emission_waves;  // phi_l on the direction grid
  Eigen::MatrixXcd tau;                         // over classes; empty = delta
  Eigen::MatrixXcd kappa;                       // over classes; empty = all ones
  Eigen::MatrixXcd recoil_overlap;              // over classes; empty = identity

  void validate(int classes, int channels) const;
};

struct PointerReading {
  std::vector<double> direction_probability;  // P(theta) over the grid
  DensityMatrix reduced;                      // class-pinched post-measurement state
};

PointerReading measure_pointer(const DensityMatrix& rho, const PointerMeasurement& m,
                               int classes, int channels);

/// The pointer read as a classical two-state object.
struct CatState {
  DensityMatrix rho;        // over {live, dead}
  double p_live;
  double p_dead;
  double off_diagonal;
  bool classical;           // off-diagonal below 1e-9
};

/// Threshold below which a cat counts as a classical mixture.
inline constexpr double kClassicalOffdiagonal = 1e-9;

CatState cat_verdict(const decoherence::MeasurementOutcome& chain_output);

}  // namespace fieldlab::pointer_cat
