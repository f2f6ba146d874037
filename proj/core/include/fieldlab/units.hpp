#pragma once

namespace fieldlab::units {

// Conversion constants between natural units (hbar = c = 1, energies in
// eV) and laboratory units. Collected here so every conversion in the
// project goes through one table.
inline constexpr double kBoltzmannEvPerKelvin = 8.617333262e-5;
inline constexpr double kAmuInEv = 931.49410242e6;
inline constexpr double kHbarCEvNm = 197.3269804;  // hbar c in eV nm
inline constexpr double kArgonMassAmu = 39.948;
inline constexpr double kAtomicDimensionNm = 0.1;

}  // namespace fieldlab::units
