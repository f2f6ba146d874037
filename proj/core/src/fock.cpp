#include "fieldlab/fock.hpp"

#include <algorithm>
#include <cmath>

namespace fieldlab::fock {

namespace {

std::string mode_name(const ModeSet& set, ModeId m) {
  return set.contains(m) ? set.label(m) : "#" + std::to_string(m.index);
}

}  // namespace

ModeSet::ModeSet(Statistics statistics, std::vector<std::string> labels, int boson_cutoff)
    : statistics_(statistics), labels_(std::move(labels)), boson_cutoff_(boson_cutoff) {
  if (labels_.empty()) throw domain_error("ModeSet: no modes");
  if (boson_cutoff_ < 1) throw domain_error("ModeSet: boson cutoff must be >= 1");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = i + 1; j < labels_.size(); ++j) {
      if (labels_[i] == labels_[j])
        throw domain_error("ModeSet: duplicate mode label '" + labels_[i] + "'");
    }
  }
}

ModeSet ModeSet::fermionic(std::initializer_list<std::string> labels) {
  return ModeSet(Statistics::fermionic, std::vector<std::string>(labels));
}

ModeSet ModeSet::fermionic(std::size_t count, std::string_view prefix) {
  std::vector<std::string> labels(count);
  for (std::size_t i = 0; i < count; ++i) labels[i] = std::string(prefix) + std::to_string(i);
  return ModeSet(Statistics::fermionic, std::move(labels));
}

ModeSet ModeSet::bosonic(std::initializer_list<std::string> labels, int cutoff) {
  return ModeSet(Statistics::bosonic, std::vector<std::string>(labels), cutoff);
}

ModeId ModeSet::id(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return ModeId{static_cast<std::uint32_t>(i)};
  }
  throw domain_error("ModeSet: unknown mode label '" + std::string(label) + "'");
}

const std::string& ModeSet::label(ModeId m) const {
  if (!contains(m)) throw domain_error("ModeSet: mode index out of range");
  return labels_[m.index];
}

std::size_t ModeSet::dimension(std::size_t limit) const {
  std::size_t dim = 1;
  const std::size_t per_mode =
      statistics_ == Statistics::fermionic ? 2 : static_cast<std::size_t>(boson_cutoff_) + 1;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (dim > limit / per_mode) throw resource_error("ModeSet: enumerated basis too large");
    dim *= per_mode;
  }
  if (dim > limit) throw resource_error("ModeSet: enumerated basis too large");
  return dim;
}

FockState::FockState(Statistics s, std::vector<ModeOccupation> occ)
    : statistics_(s), occupations_(std::move(occ)) {
  std::sort(occupations_.begin(), occupations_.end());
  std::erase_if(occupations_, [](const ModeOccupation& o) { return o.count == 0; });
  for (std::size_t i = 0; i + 1 < occupations_.size(); ++i) {
    if (occupations_[i].mode == occupations_[i + 1].mode)
      throw domain_error("FockState: duplicate mode in occupation list");
  }
  if (statistics_ == Statistics::fermionic) {
    for (const auto& o : occupations_) {
      if (o.count > 1) throw domain_error("FockState: fermionic count above 1");
    }
  }
}

std::uint32_t FockState::count(ModeId m) const {
  for (const auto& o : occupations_) {
    if (o.mode == m.index) return o.count;
    if (o.mode > m.index) break;
  }
  return 0;
}

std::uint32_t FockState::total() const {
  std::uint32_t n = 0;
  for (const auto& o : occupations_) n += o.count;
  return n;
}

std::optional<LadderResult> apply_create(const ModeSet& set, ModeId m, const FockState& state) {
  if (!set.contains(m)) throw domain_error("apply_create: unknown mode " + mode_name(set, m));
  if (state.statistics() != set.statistics())
    throw domain_error("apply_create: statistics mismatch");

  std::vector<ModeOccupation> occ(state.occupations().begin(), state.occupations().end());
  if (set.statistics() == Statistics::fermionic) {
    std::uint32_t below = 0;
    for (const auto& o : occ) {
      if (o.mode == m.index) return std::nullopt;  // Pauli exclusion
      if (o.mode < m.index) below += o.count;
    }
    occ.push_back({m.index, 1});
    const double sign = (below % 2 == 0) ? 1.0 : -1.0;
    return LadderResult{sign, FockState(Statistics::fermionic, std::move(occ))};
  }

  const std::uint32_t n = state.count(m);
  if (static_cast<int>(n) >= set.boson_cutoff())
    throw resource_error("apply_create: boson occupation past cutoff on mode " +
                         mode_name(set, m));
  bool found = false;
  for (auto& o : occ) {
    if (o.mode == m.index) {
      ++o.count;
      found = true;
      break;
    }
  }
  if (!found) occ.push_back({m.index, 1});
  return LadderResult{std::sqrt(static_cast<double>(n) + 1.0),
                      FockState(Statistics::bosonic, std::move(occ))};
}

std::optional<LadderResult> apply_annihilate(const ModeSet& set, ModeId m,
                                             const FockState& state) {
  if (!set.contains(m)) throw domain_error("apply_annihilate: unknown mode " + mode_name(set, m));
  if (state.statistics() != set.statistics())
    throw domain_error("apply_annihilate: statistics mismatch");

  const std::uint32_t n = state.count(m);
  if (n == 0) return std::nullopt;

  std::vector<ModeOccupation> occ(state.occupations().begin(), state.occupations().end());
  if (set.statistics() == Statistics::fermionic) {
    std::uint32_t below = 0;
    for (const auto& o : occ) {
      if (o.mode < m.index) below += o.count;
    }
    std::erase_if(occ, [&](const ModeOccupation& o) { return o.mode == m.index; });
    const double sign = (below % 2 == 0) ? 1.0 : -1.0;
    return LadderResult{sign, FockState(Statistics::fermionic, std::move(occ))};
  }

  for (auto& o : occ) {
    if (o.mode == m.index) {
      --o.count;
      break;
    }
  }
  return LadderResult{std::sqrt(static_cast<double>(n)),
                      FockState(Statistics::bosonic, std::move(occ))};
}

Ket Ket::vacuum(ModeSet set) {
  Ket k(std::move(set));
  k.terms_[FockState::vacuum(k.set_.statistics())] = 1.0;
  return k;
}

Ket Ket::single(ModeSet set, FockState state, Complex amplitude) {
  Ket k(std::move(set));
  if (std::abs(amplitude) > 0.0) k.terms_[std::move(state)] = amplitude;
  return k;
}

Complex Ket::amplitude(const FockState& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

Complex Ket::vacuum_amplitude() const {
  return amplitude(FockState::vacuum(set_.statistics()));
}

double Ket::norm_sq() const {
  double n = 0.0;
  for (const auto& [state, amp] : terms_) n += std::norm(amp);
  return n;
}

double Ket::norm() const { return std::sqrt(norm_sq()); }

Ket& Ket::accumulate(const FockState& s, Complex amplitude) {
  auto [it, inserted] = terms_.try_emplace(s, amplitude);
  if (!inserted) it->second += amplitude;
  return *this;
}

Ket& Ket::operator+=(const Ket& other) {
  if (set_ != other.set_) throw domain_error("Ket: mode set mismatch in sum");
  for (const auto& [state, amp] : other.terms_) accumulate(state, amp);
  return *this;
}

Ket& Ket::operator*=(Complex scale) {
  for (auto& [state, amp] : terms_) amp *= scale;
  return *this;
}

Ket& Ket::prune(double floor) {
  std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) < floor; });
  return *this;
}

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw domain_error("Ket: cannot normalize the zero ket");
  Ket k = *this;
  k *= 1.0 / n;
  return k;
}

Complex inner(const Ket& bra, const Ket& ket) {
  if (bra.mode_set() != ket.mode_set()) throw domain_error("inner: mode set mismatch");
  // iterate the smaller map
  const Ket& a = bra.terms().size() <= ket.terms().size() ? bra : ket;
  const Ket& b = &a == &bra ? ket : bra;
  Complex sum = 0.0;
  for (const auto& [state, amp] : a.terms()) {
    const Complex other = b.amplitude(state);
    if (&a == &bra) {
      sum += std::conj(amp) * other;
    } else {
      sum += std::conj(other) * amp;
    }
  }
  return sum;
}

OpString OpString::create(ModeId m, Complex scalar) {
  return OpString(scalar, {{m, OpKind::create}});
}

OpString OpString::annihilate(ModeId m, Complex scalar) {
  return OpString(scalar, {{m, OpKind::annihilate}});
}

OpString OpString::adjoint() const {
  std::vector<OpFactor> rev(factors_.rbegin(), factors_.rend());
  for (auto& f : rev) f.kind = f.kind == OpKind::create ? OpKind::annihilate : OpKind::create;
  return OpString(std::conj(scalar_), std::move(rev));
}

OpString operator*(const OpString& a, const OpString& b) {
  std::vector<OpFactor> factors = a.factors_;
  factors.insert(factors.end(), b.factors_.begin(), b.factors_.end());
  return OpString(a.scalar_ * b.scalar_, std::move(factors));
}

OpString operator*(Complex c, OpString s) {
  s.scalar_ *= c;
  return s;
}

OpSum OpSum::adjoint() const {
  OpSum out;
  out.terms.reserve(terms.size());
  for (const auto& t : terms) out.terms.push_back(t.adjoint());
  return out;
}

OpSum& OpSum::operator+=(const OpString& t) {
  terms.push_back(t);
  return *this;
}

OpSum& OpSum::operator+=(const OpSum& other) {
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

OpSum operator*(const OpSum& a, const OpSum& b) {
  OpSum out;
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) out.terms.push_back(ta * tb);
  }
  return out;
}

OpSum operator*(Complex c, OpSum s) {
  for (auto& t : s.terms) t = c * t;
  return s;
}

OpSum annihilation_sum(std::span<const std::pair<ModeId, Complex>> weighted) {
  OpSum field;
  field.terms.reserve(weighted.size());
  for (const auto& [mode, value] : weighted) field += OpString::annihilate(mode, value);
  return field;
}

Ket apply(const OpString& op, const Ket& ket) {
  Ket out(ket.mode_set());
  const auto factors = op.factors();
  for (const auto& [state, amp] : ket.terms()) {
    FockState current = state;
    Complex coeff = amp * op.scalar();
    bool alive = true;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      const auto step = it->kind == OpKind::create
                            ? apply_create(ket.mode_set(), it->mode, current)
                            : apply_annihilate(ket.mode_set(), it->mode, current);
      if (!step) {
        alive = false;
        break;
      }
      coeff *= step->factor;
      current = step->state;
    }
    if (alive) out.accumulate(current, coeff);
  }
  out.prune();
  return out;
}

Ket apply(const OpSum& op, const Ket& ket) {
  Ket out(ket.mode_set());
  for (const auto& term : op.terms) out += apply(term, ket);
  out.prune();
  return out;
}

Complex interrogate(const OpSum& field, const Ket& state) {
  return apply(field, state).vacuum_amplitude();
}

std::vector<FockState> enumerate_basis(const ModeSet& set, std::size_t limit) {
  const std::size_t dim = set.dimension(limit);
  const std::uint32_t per_mode =
      set.statistics() == Statistics::fermionic ? 2 : static_cast<std::uint32_t>(set.boson_cutoff()) + 1;
  std::vector<FockState> basis;
  basis.reserve(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::vector<ModeOccupation> occ;
    std::size_t rest = idx;
    for (std::uint32_t m = 0; m < set.size(); ++m) {
      const auto digit = static_cast<std::uint32_t>(rest % per_mode);
      rest /= per_mode;
      if (digit > 0) occ.push_back({m, digit});
    }
    basis.emplace_back(set.statistics(), std::move(occ));
  }
  return basis;
}

double canonical_algebra_defect(const ModeSet& set, OpFactor a, OpFactor b,
                                std::size_t basis_limit) {
  const bool fermionic = set.statistics() == Statistics::fermionic;
  const bool canonical_pair =
      a.kind == OpKind::annihilate && b.kind == OpKind::create && a.mode == b.mode;
  const double delta = canonical_pair ? 1.0 : 0.0;

  const OpString ab = OpString(1.0, {a}) * OpString(1.0, {b});
  const OpString ba = OpString(1.0, {b}) * OpString(1.0, {a});

  // Bosonic checks stay below the cutoff so creation never overflows.
  auto basis = enumerate_basis(set, basis_limit);
  if (!fermionic) {
    std::erase_if(basis, [&](const FockState& s) {
      for (const auto& o : s.occupations()) {
        if (static_cast<int>(o.count) + 2 > set.boson_cutoff()) return true;
      }
      return false;
    });
  }

  double defect = 0.0;
  for (const auto& state : basis) {
    const Ket in = Ket::single(set, state);
    Ket lhs = apply(ab, in);
    if (fermionic) {
      lhs += apply(ba, in);
    } else {
      Ket rhs = apply(ba, in);
      rhs *= -1.0;
      lhs += rhs;
    }
    lhs.accumulate(state, -delta);
    lhs.prune(0.0);
    for (const auto& [state, amp] : lhs.terms()) defect = std::max(defect, std::abs(amp));
  }
  return defect;
}

}  // namespace fieldlab::fock
