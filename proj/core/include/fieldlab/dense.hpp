#pragma once

#include <Eigen/Dense>

#include "fieldlab/fock.hpp"

namespace fieldlab::fock {

/// Enumerated occupation basis with O(1) index lookup. Basis index is the
/// mixed-radix occupation number, mode 0 least significant.
class FockBasis {
 public:
  explicit FockBasis(ModeSet set, std::size_t limit = 4096);

  const ModeSet& mode_set() const { return set_; }
  std::size_t size() const { return states_.size(); }
  const FockState& state(std::size_t i) const { return states_.at(i); }
  std::size_t index(const FockState& s) const;

 private:
  ModeSet set_;
  std::vector<FockState> states_;
};

/// Explicit matrix of an operator over the enumerated basis. Built from
/// direct occupation-number arithmetic, independent of the sparse apply
/// path, so the two implementations can check each other.
Eigen::MatrixXcd dense_operator(const FockBasis& basis, const OpString& op);
Eigen::MatrixXcd dense_operator(const FockBasis& basis, const OpSum& op);

/// Column vector of a ket in the enumerated basis.
Eigen::VectorXcd dense_vector(const FockBasis& basis, const Ket& ket);

}  // namespace fieldlab::fock
