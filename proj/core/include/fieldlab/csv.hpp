#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fieldlab/density.hpp"
#include "fieldlab/waves.hpp"

namespace fieldlab::csv {

/// CSV body builder: header row enforced, floating values printed with 17
/// significant digits so re-runs are byte-identical.
class Table {
 public:
  explicit Table(std::vector<std::string> header);

  Table& begin_row();
  Table& cell(double value);
  Table& cell(const std::string& value);
  Table& cell(std::int64_t value);

  std::string body();  // header + rows; closes any open row
  void write(const std::filesystem::path& file);

 private:
  std::size_t columns_;
  std::ostringstream out_;
  std::size_t cells_in_row_ = 0;
  bool in_row_ = false;
  void end_row_if_open();
};

std::string format_double(double value);  // %.17g

/// FNV-1a 64-bit checksum of a byte string, hex-encoded; used by run
/// manifests to pin output bodies.
std::string fnv1a_hex(std::string_view bytes);

/// Wave snapshot table: columns x, re, im, abs2.
Table wave_table(const waves::Grid1D& grid, std::span<const std::complex<double>> values);
void write_wave(const std::filesystem::path& file, const waves::Grid1D& grid,
                std::span<const std::complex<double>> values);

/// Density matrix table: row label, col label, re, im.
Table density_table(const density::DensityMatrix& rho);
void write_density(const std::filesystem::path& file, const density::DensityMatrix& rho);

}  // namespace fieldlab::csv
