#include "fieldlab/experiments.hpp"

#include <cmath>
#include <numbers>

namespace fieldlab::experiments {

using fock::FockState;
using fock::OpString;

void DetectorSpec::validate() const {
  if (std::abs(efficiency) > 1.0 + 1e-12)
    throw domain_error("DetectorSpec: |efficiency| must not exceed 1");
  for (const auto& [mode, eta] : per_mode_efficiency) {
    if (std::abs(eta) > 1.0 + 1e-12)
      throw domain_error("DetectorSpec: |efficiency| must not exceed 1");
  }
  if (accepted_modes.empty()) throw domain_error("DetectorSpec: no accepted modes");
}

Complex DetectorSpec::mode_efficiency(ModeId m) const {
  for (const auto& [mode, eta] : per_mode_efficiency) {
    if (mode == m) return eta;
  }
  return efficiency;
}

OpSum detector_operator(const DetectorSpec& det, std::span<const ModeWave> waves) {
  det.validate();
  std::vector<std::pair<ModeId, Complex>> weighted;
  weighted.reserve(det.accepted_modes.size());
  for (ModeId m : det.accepted_modes) {
    Complex f = 0.0;
    bool found = false;
    for (const auto& mw : waves) {
      if (mw.mode == m) {
        f = mw.wave.at(det.position);
        found = true;
        break;
      }
    }
    // an accepted mode with no wave on this screen contributes nothing
    if (found) weighted.emplace_back(m, det.mode_efficiency(m) * f);
  }
  return fock::annihilation_sum(weighted);
}

Complex detector_amplitude(const DetectorSpec& det, std::span<const ModeWave> waves,
                           const Ket& state) {
  return fock::interrogate(detector_operator(det, waves), state);
}

Complex coincidence_amplitude(const DetectorSpec& det_a, const DetectorSpec& det_b,
                              std::span<const ModeWave> waves, const Ket& state) {
  const Ket after_a = fock::apply(detector_operator(det_a, waves), state);
  return fock::apply(detector_operator(det_b, waves), after_a).vacuum_amplitude();
}

Ket compton_channel(const Ket& state, double x_s, std::span<const ModeWave> absorb,
                    std::span<const ModeWave> emit, ModeId recoil) {
  if (state.terms().empty()) return state;
  if (absorb.empty() || emit.empty()) throw domain_error("compton_channel: empty mode list");
  // position check throws domain_error when x_s is off the grid
  (void)absorb.front().wave.grid().nearest_index(x_s);

  // absorb: phi^(k)(x_s) annihilates out of the incident modes
  std::vector<std::pair<ModeId, Complex>> absorb_weights;
  absorb_weights.reserve(absorb.size());
  for (const auto& mw : absorb) absorb_weights.emplace_back(mw.mode, mw.wave.at(x_s));
  const Ket absorbed = fock::apply(fock::annihilation_sum(absorb_weights), state);
  if (absorbed.terms().empty()) return state;  // nothing to scatter

  // emit: phi^(-)(s)(x_s) re-creates in the new boundary-condition modes,
  // and the recoiling scatterer is excited alongside
  Ket out(state.mode_set());
  for (const auto& mw : emit) {
    const OpString emit_op =
        OpString::create(mw.mode, std::conj(mw.wave.at(x_s))) * OpString::create(recoil);
    out += fock::apply(emit_op, absorbed);
  }
  out.prune();
  if (out.terms().empty()) return out;
  return out.normalized();
}

std::vector<double> screen_intensity(const Ket& state, std::span<const ModeWave> waves) {
  if (waves.empty()) throw domain_error("screen_intensity: no modes");
  const waves::Grid1D grid = waves.front().wave.grid();
  std::vector<double> intensity(grid.points, 0.0);
  for (int k = 0; k < grid.points; ++k) {
    std::vector<std::pair<ModeId, Complex>> weighted;
    weighted.reserve(waves.size());
    for (const auto& mw : waves) weighted.emplace_back(mw.mode, mw.wave.value(k));
    intensity[k] = fock::apply(fock::annihilation_sum(weighted), state).norm_sq();
  }
  return intensity;
}

double fringe_visibility(double intensity_max, double intensity_min) {
  const double sum = intensity_max + intensity_min;
  if (sum <= 0.0) return 0.0;
  return (intensity_max - intensity_min) / sum;
}

OpSum rotated_annihilation(ModeId plus, ModeId minus, int sign, double theta, double phi) {
  if (sign != 1 && sign != -1) throw domain_error("rotated_annihilation: sign must be +-1");
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex ephi = std::polar(1.0, phi);
  OpSum op;
  if (sign == 1) {
    op += OpString::annihilate(plus, c);
    op += OpString::annihilate(minus, ephi * s);
  } else {
    op += OpString::annihilate(plus, -std::conj(ephi) * s);
    op += OpString::annihilate(minus, c);
  }
  return op;
}

OpSum filter_operator(const FilterSpec& f, ModeId plus, ModeId minus) {
  if (f.kind == FilterSpec::Kind::projection) {
    const OpSum up = rotated_annihilation(plus, minus, +1, f.theta, f.phi);
    return up.adjoint() * up;
  }
  const OpSum up = rotated_annihilation(plus, minus, +1, f.theta, f.phi);
  const OpSum down = rotated_annihilation(plus, minus, -1, f.theta, f.phi);
  OpSum t = up.adjoint() * down;
  t += down.adjoint() * up;
  return t;
}

Ket apply_filter(const FilterSpec& f, ModeId plus, ModeId minus, const Ket& state) {
  return fock::apply(filter_operator(f, plus, minus), state);
}

EprState::EprState(Ket ket, ModeId ap, ModeId am, ModeId bp, ModeId bm)
    : ket_(std::move(ket)), a_plus_(ap), a_minus_(am), b_plus_(bp), b_minus_(bm) {
  if (std::abs(ket_.norm() - 1.0) > 1e-12)
    throw invariant_violation("EprState: ket is not normalized");
  for (const auto& [state, amp] : ket_.terms()) {
    const int spin_z = static_cast<int>(state.count(a_plus_)) - static_cast<int>(state.count(a_minus_)) +
                       static_cast<int>(state.count(b_plus_)) - static_cast<int>(state.count(b_minus_));
    if (spin_z != 0) throw invariant_violation("EprState: term with non-zero total spin-z");
  }
}

EprState EprState::singlet() {
  ModeSet set = ModeSet::fermionic({"a+", "a-", "b+", "b-"});
  const ModeId ap = set.id("a+"), am = set.id("a-"), bp = set.id("b+"), bm = set.id("b-");
  const Ket vac = Ket::vacuum(set);
  const double n = 1.0 / std::sqrt(2.0);
  Ket ket = fock::apply(OpString::create(ap, n) * OpString::create(bm), vac);
  ket += fock::apply(OpString::create(am, -n) * OpString::create(bp), vac);
  ket.prune();
  return EprState(std::move(ket), ap, am, bp, bm);
}

std::array<std::pair<double, double>, 4> BellConfig::canonical_chsh_settings() {
  const double q = std::numbers::pi / 4.0;
  return {{{0.0, q}, {0.0, 3.0 * q}, {2.0 * q, q}, {2.0 * q, 3.0 * q}}};
}

CoincidenceTable epr_coincidence_table(const EprState& state,
                                       const std::optional<FilterSpec>& filter, double alpha,
                                       double beta, Complex arm1_packet, Complex arm2_packet) {
  Ket source = state.ket();
  if (filter) source = apply_filter(*filter, state.a_plus(), state.a_minus(), source);

  auto amp = [&](int s1, int s2) {
    const OpSum d1 = arm1_packet *
                     rotated_annihilation(state.a_plus(), state.a_minus(), s1, alpha, 0.0);
    const OpSum d2 = arm2_packet *
                     rotated_annihilation(state.b_plus(), state.b_minus(), s2, beta, 0.0);
    const Ket after_2 = fock::apply(d2, source);
    return fock::apply(d1, after_2).vacuum_amplitude();
  };

  CoincidenceTable t;
  t.pp = std::norm(amp(+1, +1));
  t.pm = std::norm(amp(+1, -1));
  t.mp = std::norm(amp(-1, +1));
  t.mm = std::norm(amp(-1, -1));
  const double total = t.sum();
  if (total <= 0.0) throw invariant_violation("epr_coincidence_table: all branches vanish");
  t.pp /= total;
  t.pm /= total;
  t.mp /= total;
  t.mm /= total;
  return t;
}

double bell_correlation(const EprState& state, double alpha, double beta) {
  return epr_coincidence_table(state, std::nullopt, alpha, beta).correlation();
}

ChshResult chsh(const EprState& state, const BellConfig& config) {
  ChshResult r;
  for (std::size_t i = 0; i < config.chsh_settings.size(); ++i) {
    const auto& [a, b] = config.chsh_settings[i];
    r.correlations[i] = bell_correlation(state, a, b);
  }
  r.signed_sum = r.correlations[0] - r.correlations[1] + r.correlations[2] + r.correlations[3];
  r.statistic = std::abs(r.signed_sum);
  return r;
}

PreparedEnsemble prepare_by_filter(std::span<const Ket> beam, const FilterSpec& f, ModeId plus,
                                   ModeId minus) {
  PreparedEnsemble out;
  const OpSum filter = filter_operator(f, plus, minus);
  for (const Ket& component : beam) {
    Ket passed = fock::apply(filter, component);
    const double p = passed.norm_sq();
    if (p < fock::kAmplitudeFloor) {
      ++out.rejected;
      continue;
    }
    out.surviving.push_back(passed.normalized());
    out.survival_probability.push_back(p / component.norm_sq());
  }
  return out;
}

}  // namespace fieldlab::experiments
