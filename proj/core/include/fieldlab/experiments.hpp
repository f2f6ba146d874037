#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fieldlab/fock.hpp"
#include "fieldlab/waves.hpp"

namespace fieldlab::experiments {

using fock::Complex;
using fock::Ket;
using fock::ModeId;
using fock::ModeSet;
using fock::OpSum;

/// A mode together with its wave function on the shared screen grid.
struct ModeWave {
  ModeId mode;
  waves::WaveMode wave;
};

/// Detector at a grid position: D_m = sum_n eta_n f_n(x_m) a_n over the
/// accepted modes. The response eta is a complex scalar per mode,
/// |eta| <= 1; `efficiency` applies to every accepted mode unless a
/// per-mode entry overrides it.
struct DetectorSpec {
  double position = 0.0;
  Complex efficiency = 1.0;
  std::vector<ModeId> accepted_modes;
  std::vector<std::pair<ModeId, Complex>> per_mode_efficiency;

  void validate() const;
  Complex mode_efficiency(ModeId m) const;
};

OpSum detector_operator(const DetectorSpec& det, std::span<const ModeWave> waves);

/// <V| D_m |state>; f_n(x_m) times eta for a one-particle state.
Complex detector_amplitude(const DetectorSpec& det, std::span<const ModeWave> waves,
                           const Ket& state);

/// <V| D_b D_a |state>. Exactly zero on the whole one-particle sector:
/// one photon cannot fire two counters.
Complex coincidence_amplitude(const DetectorSpec& det_a, const DetectorSpec& det_b,
                              std::span<const ModeWave> waves, const Ket& state);

/// Which-path Compton channel: absorb the photon at x_s out of the
/// `absorb` modes, re-emit into the `emit` modes weighted by their values
/// at x_s, and excite the recoil mode. The emitted pattern carries the
/// one-slit boundary conditions, so the two-slit fringes are gone.
Ket compton_channel(const Ket& state, double x_s, std::span<const ModeWave> absorb,
                    std::span<const ModeWave> emit, ModeId recoil);

/// ||phi(x) |ket>||^2 per screen point: the counting-rate profile for a
/// detector array, insensitive to unobserved leftover excitations.
std::vector<double> screen_intensity(const Ket& state, std::span<const ModeWave> waves);

double fringe_visibility(double intensity_max, double intensity_min);

/// Spin-axis filter inserted in one arm. `projection` transmits the "up"
/// state along the axis (F = a+' dagger a+'), `spin_flip` swaps up and
/// down (T = a+' dagger a-' + a-' dagger a+'). Axis angles follow the
/// standard spinor rotation.
struct FilterSpec {
  enum class Kind { projection, spin_flip };
  Kind kind = Kind::projection;
  double theta = 0.0;
  double phi = 0.0;
};

/// Annihilation operator for spin `sign` (+1 up, -1 down) along the
/// rotated axis: a+' = cos(t/2) a+ + e^{i phi} sin(t/2) a-.
OpSum rotated_annihilation(ModeId plus, ModeId minus, int sign, double theta, double phi);

OpSum filter_operator(const FilterSpec& f, ModeId plus, ModeId minus);

Ket apply_filter(const FilterSpec& f, ModeId plus, ModeId minus, const Ket& state);

/// The four-mode singlet bench: modes a+, a-, b+, b- and the state
/// (a+ b- - a- b+)|V> / sqrt(2). Every term has total spin-z zero.
class EprState {
 public:
  static EprState singlet();

  const ModeSet& mode_set() const { return ket_.mode_set(); }
  const Ket& ket() const { return ket_; }
  ModeId a_plus() const { return a_plus_; }
  ModeId a_minus() const { return a_minus_; }
  ModeId b_plus() const { return b_plus_; }
  ModeId b_minus() const { return b_minus_; }

 private:
  EprState(Ket ket, ModeId ap, ModeId am, ModeId bp, ModeId bm);
  Ket ket_;
  ModeId a_plus_, a_minus_, b_plus_, b_minus_;
};

/// Analyzer angles; the four CHSH settings default to the canonical
/// (0, pi/4), (0, 3pi/4), (pi/2, pi/4), (pi/2, 3pi/4) combinations built
/// from analyzer orientations 0, pi/4, pi/2, 3pi/4.
struct BellConfig {
  double alpha = 0.0;
  double beta = 0.0;
  std::array<std::pair<double, double>, 4> chsh_settings = canonical_chsh_settings();

  static std::array<std::pair<double, double>, 4> canonical_chsh_settings();
};

/// Normalized coincidence probabilities over (spin at X, spin at -X).
struct CoincidenceTable {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;

  double sum() const { return pp + pm + mp + mm; }
  double correlation() const { return pp + mm - pm - mp; }
};

/// Optional per-arm packet amplitudes model the Weyl wave function values
/// at the detectors; they cancel in the normalized table, which is how
/// the filter-insertion time drops out of every observable.
CoincidenceTable epr_coincidence_table(const EprState& state,
                                       const std::optional<FilterSpec>& filter, double alpha,
                                       double beta, Complex arm1_packet = 1.0,
                                       Complex arm2_packet = 1.0);

/// E(alpha, beta) = P(++) + P(--) - P(+-) - P(-+); -cos(alpha - beta)
/// for the singlet.
double bell_correlation(const EprState& state, double alpha, double beta);

struct ChshResult {
  std::array<double, 4> correlations{};
  double signed_sum = 0.0;  // E1 - E2 + E3 + E4 over the four settings
  double statistic = 0.0;   // |signed_sum|, the CHSH value
};

ChshResult chsh(const EprState& state, const BellConfig& config);

/// Preparation as filtering: keep the beam components the filter transmits,
/// reject the rest. Non-dissipative on the transmitted components.
struct PreparedEnsemble {
  std::vector<Ket> surviving;              // renormalized
  std::vector<double> survival_probability;
  int rejected = 0;
};

PreparedEnsemble prepare_by_filter(std::span<const Ket> beam, const FilterSpec& f, ModeId plus,
                                   ModeId minus);

}  // namespace fieldlab::experiments
