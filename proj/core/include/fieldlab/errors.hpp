#pragma once

#include <stdexcept>
#include <string>

namespace fieldlab {

/// Bad input: unknown mode, mismatched mode sets, invalid geometry, ...
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Request exceeds a hard size limit (enumerated basis too large, boson
/// occupation past the cutoff, ...).
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical invariant failed mid-computation (non-unitary step,
/// non-orthonormal basis, negative probability, ...).
class invariant_violation : public std::runtime_error {
 public:
  explicit invariant_violation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fieldlab
