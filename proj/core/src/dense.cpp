#include "fieldlab/dense.hpp"

#include <cmath>

namespace fieldlab::fock {

namespace {

std::uint32_t radix(const ModeSet& set) {
  return set.statistics() == Statistics::fermionic
             ? 2u
             : static_cast<std::uint32_t>(set.boson_cutoff()) + 1u;
}

std::uint32_t digit(std::size_t basis_index, std::uint32_t mode, std::uint32_t base) {
  std::size_t rest = basis_index;
  for (std::uint32_t m = 0; m < mode; ++m) rest /= base;
  return static_cast<std::uint32_t>(rest % base);
}

// parity of the total occupation strictly below `mode`
int parity_below(std::size_t basis_index, std::uint32_t mode, std::uint32_t base) {
  std::size_t rest = basis_index;
  std::uint32_t sum = 0;
  for (std::uint32_t m = 0; m < mode; ++m) {
    sum += static_cast<std::uint32_t>(rest % base);
    rest /= base;
  }
  return sum % 2 == 0 ? 1 : -1;
}

std::size_t stride(std::uint32_t mode, std::uint32_t base) {
  std::size_t s = 1;
  for (std::uint32_t m = 0; m < mode; ++m) s *= base;
  return s;
}

// Single ladder-operator matrix from digit arithmetic alone.
Eigen::MatrixXcd ladder_matrix(const FockBasis& basis, OpFactor f) {
  const ModeSet& set = basis.mode_set();
  if (!set.contains(f.mode)) throw domain_error("dense_operator: unknown mode");
  const std::uint32_t base = radix(set);
  const std::size_t dim = basis.size();
  const std::size_t step = stride(f.mode.index, base);
  const bool fermionic = set.statistics() == Statistics::fermionic;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint32_t n = digit(col, f.mode.index, base);
    if (f.kind == OpKind::create) {
      // Pauli exclusion (fermionic) or cutoff (bosonic): element absent
      if (n + 1 >= base) continue;
      const std::size_t row = col + step;
      const double factor =
          fermionic ? parity_below(col, f.mode.index, base) : std::sqrt(n + 1.0);
      m(row, col) = factor;
    } else {
      if (n == 0) continue;
      const std::size_t row = col - step;
      const double factor =
          fermionic ? parity_below(col, f.mode.index, base) : std::sqrt(static_cast<double>(n));
      m(row, col) = factor;
    }
  }
  return m;
}

}  // namespace

FockBasis::FockBasis(ModeSet set, std::size_t limit) : set_(std::move(set)) {
  states_ = enumerate_basis(set_, limit);
}

std::size_t FockBasis::index(const FockState& s) const {
  if (s.statistics() != set_.statistics()) throw domain_error("FockBasis: statistics mismatch");
  const std::uint32_t base = radix(set_);
  std::size_t idx = 0;
  for (const auto& o : s.occupations()) {
    if (o.mode >= set_.size()) throw domain_error("FockBasis: state has unknown mode");
    if (o.count >= base) throw domain_error("FockBasis: occupation past cutoff");
    idx += o.count * stride(o.mode, base);
  }
  return idx;
}

Eigen::MatrixXcd dense_operator(const FockBasis& basis, const OpString& op) {
  const std::size_t dim = basis.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  // right-to-left application: rightmost factor acts first
  const auto factors = op.factors();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    m = ladder_matrix(basis, *it) * m;
  }
  return op.scalar() * m;
}

Eigen::MatrixXcd dense_operator(const FockBasis& basis, const OpSum& op) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (const auto& term : op.terms) m += dense_operator(basis, term);
  return m;
}

Eigen::VectorXcd dense_vector(const FockBasis& basis, const Ket& ket) {
  if (ket.mode_set() != basis.mode_set()) throw domain_error("dense_vector: mode set mismatch");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
  for (const auto& [state, amp] : ket.terms()) v(basis.index(state)) += amp;
  return v;
}

}  // namespace fieldlab::fock
