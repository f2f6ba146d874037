#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fieldlab/errors.hpp"

namespace fieldlab::fock {

using Complex = std::complex<double>;

/// Amplitudes below this are dropped after every operator application.
inline constexpr double kAmplitudeFloor = 1e-14;

enum class Statistics { fermionic, bosonic };
enum class OpKind { create, annihilate };

/// Index of a single-particle mode within a ModeSet.
struct ModeId {
  std::uint32_t index{0};
  friend auto operator<=>(const ModeId&, const ModeId&) = default;
};

/// An ordered, labelled collection of modes sharing one statistics.
/// Bosonic sets carry a per-mode occupation cutoff used by the enumerated
/// basis; exceeding it during application is an error, never a truncation.
class ModeSet {
 public:
  ModeSet(Statistics statistics, std::vector<std::string> labels, int boson_cutoff = 8);

  static ModeSet fermionic(std::initializer_list<std::string> labels);
  static ModeSet fermionic(std::size_t count, std::string_view prefix = "m");
  static ModeSet bosonic(std::initializer_list<std::string> labels, int cutoff = 8);

  Statistics statistics() const { return statistics_; }
  std::size_t size() const { return labels_.size(); }
  int boson_cutoff() const { return boson_cutoff_; }

  bool contains(ModeId m) const { return m.index < labels_.size(); }
  ModeId id(std::string_view label) const;  // throws domain_error if unknown
  const std::string& label(ModeId m) const;

  /// Dimension of the enumerated occupation basis (2^n fermionic,
  /// (cutoff+1)^n bosonic). Throws resource_error past `limit`.
  std::size_t dimension(std::size_t limit = 1u << 20) const;

  friend bool operator==(const ModeSet&, const ModeSet&) = default;

 private:
  Statistics statistics_;
  std::vector<std::string> labels_;
  int boson_cutoff_;
};

/// One occupied mode of a FockState.
struct ModeOccupation {
  std::uint32_t mode{0};
  std::uint32_t count{0};
  friend auto operator<=>(const ModeOccupation&, const ModeOccupation&) = default;
};

/// Canonical occupation pattern: sorted by mode index, zero counts absent,
/// fermionic counts are 0/1. Equality of canonical forms is state equality.
class FockState {
 public:
  static FockState vacuum(Statistics s) { return FockState(s, {}); }
  FockState(Statistics s, std::vector<ModeOccupation> occ);

  Statistics statistics() const { return statistics_; }
  std::span<const ModeOccupation> occupations() const { return occupations_; }
  std::uint32_t count(ModeId m) const;
  std::uint32_t total() const;
  bool is_vacuum() const { return occupations_.empty(); }

  friend auto operator<=>(const FockState&, const FockState&) = default;

 private:
  Statistics statistics_;
  std::vector<ModeOccupation> occupations_;  // canonical form
};

struct LadderResult {
  double factor;  // fermionic sign or bosonic sqrt factor
  FockState state;
};

/// b_m† |state>. Null when the result vanishes (Pauli exclusion).
/// Fermionic sign: (-1)^(occupied modes with strictly smaller index).
std::optional<LadderResult> apply_create(const ModeSet& set, ModeId m, const FockState& state);

/// b_m |state>. Null when the mode is unoccupied (kills the vacuum).
std::optional<LadderResult> apply_annihilate(const ModeSet& set, ModeId m, const FockState& state);

/// Sparse superposition of FockStates.
class Ket {
 public:
  explicit Ket(ModeSet set) : set_(std::move(set)) {}
  static Ket vacuum(ModeSet set);
  static Ket single(ModeSet set, FockState state, Complex amplitude = 1.0);

  const ModeSet& mode_set() const { return set_; }
  const std::map<FockState, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Complex amplitude(const FockState& s) const;
  Complex vacuum_amplitude() const;
  double norm_sq() const;
  double norm() const;

  Ket& accumulate(const FockState& s, Complex amplitude);
  Ket& operator+=(const Ket& other);  // same ModeSet required
  Ket& operator*=(Complex scale);
  Ket& prune(double floor = kAmplitudeFloor);
  Ket normalized() const;  // throws domain_error on the zero ket

 private:
  ModeSet set_;
  std::map<FockState, Complex> terms_;
};

/// <bra|ket>, conjugate-linear in the bra. Mode sets must agree.
Complex inner(const Ket& bra, const Ket& ket);

struct OpFactor {
  ModeId mode;
  OpKind kind;
};

/// Scalar times an ordered product of ladder operators, applied
/// right-to-left (operator-on-ket convention). Empty product = identity.
class OpString {
 public:
  OpString() = default;
  OpString(Complex scalar, std::vector<OpFactor> factors)
      : scalar_(scalar), factors_(std::move(factors)) {}

  static OpString identity(Complex scalar = 1.0) { return OpString(scalar, {}); }
  static OpString create(ModeId m, Complex scalar = 1.0);
  static OpString annihilate(ModeId m, Complex scalar = 1.0);

  Complex scalar() const { return scalar_; }
  std::span<const OpFactor> factors() const { return factors_; }

  OpString adjoint() const;
  /// Concatenation: (a * b) applies b first, then a.
  friend OpString operator*(const OpString& a, const OpString& b);
  friend OpString operator*(Complex c, OpString s);

 private:
  Complex scalar_{1.0};
  std::vector<OpFactor> factors_;
};

/// Linear combination of OpStrings.
struct OpSum {
  std::vector<OpString> terms;

  OpSum() = default;
  OpSum(std::initializer_list<OpString> t) : terms(t) {}
  explicit OpSum(OpString t) : terms{std::move(t)} {}

  OpSum adjoint() const;
  OpSum& operator+=(const OpString& t);
  OpSum& operator+=(const OpSum& other);
  friend OpSum operator*(const OpSum& a, const OpSum& b);
  friend OpSum operator*(Complex c, OpSum s);
};

/// Sum of weighted annihilation operators, e.g. a field evaluated at a point.
OpSum annihilation_sum(std::span<const std::pair<ModeId, Complex>> weighted);

Ket apply(const OpString& op, const Ket& ket);
Ket apply(const OpSum& op, const Ket& ket);

/// <V| field |state> -- extracts the wave function from the field when
/// `field` is an annihilation sum and `state` is a one-particle ket.
Complex interrogate(const OpSum& field, const Ket& state);

/// Every occupation state of the set, ordered by the canonical basis index
/// (mode 0 is the least significant digit). Throws resource_error when the
/// dimension exceeds `limit`.
std::vector<FockState> enumerate_basis(const ModeSet& set, std::size_t limit = 4096);

/// Max deviation of [A, B]_+ (fermionic) or [A, B]_- (bosonic) from the
/// canonical delta on every basis state of the set. Exact zero for a
/// correct algebra; signs are integer-valued so no float noise enters.
double canonical_algebra_defect(const ModeSet& set, OpFactor a, OpFactor b,
                                std::size_t basis_limit = 4096);

}  // namespace fieldlab::fock
