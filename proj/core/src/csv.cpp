#include "fieldlab/csv.hpp"

#include <cstdio>

#include "fieldlab/errors.hpp"

namespace fieldlab::csv {

Table::Table(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw domain_error("csv::Table: empty header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

void Table::end_row_if_open() {
  if (!in_row_) return;
  if (cells_in_row_ != columns_)
    throw domain_error("csv::Table: row has " + std::to_string(cells_in_row_) + " cells, expected " +
                       std::to_string(columns_));
  out_ << '\n';
  in_row_ = false;
}

Table& Table::begin_row() {
  end_row_if_open();
  in_row_ = true;
  cells_in_row_ = 0;
  return *this;
}

Table& Table::cell(double value) { return cell(format_double(value)); }

Table& Table::cell(std::int64_t value) { return cell(std::to_string(value)); }

Table& Table::cell(const std::string& value) {
  if (!in_row_) throw domain_error("csv::Table: cell outside a row");
  if (cells_in_row_ >= columns_) throw domain_error("csv::Table: too many cells in row");
  if (cells_in_row_) out_ << ',';
  out_ << value;
  ++cells_in_row_;
  return *this;
}

std::string Table::body() {
  end_row_if_open();
  return out_.str();
}

void Table::write(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw domain_error("csv::Table: cannot open " + file.string());
  out << body();
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

Table wave_table(const waves::Grid1D& grid, std::span<const std::complex<double>> values) {
  if (values.size() != static_cast<std::size_t>(grid.points))
    throw domain_error("wave_table: sample count does not match grid");
  Table t({"x", "re", "im", "abs2"});
  for (int k = 0; k < grid.points; ++k) {
    t.begin_row()
        .cell(grid.x(k))
        .cell(values[k].real())
        .cell(values[k].imag())
        .cell(std::norm(values[k]));
  }
  return t;
}

void write_wave(const std::filesystem::path& file, const waves::Grid1D& grid,
                std::span<const std::complex<double>> values) {
  wave_table(grid, values).write(file);
}

Table density_table(const density::DensityMatrix& rho) {
  Table t({"row", "col", "re", "im"});
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      t.begin_row()
          .cell(rho.basis()[i])
          .cell(rho.basis()[j])
          .cell(rho.matrix()(i, j).real())
          .cell(rho.matrix()(i, j).imag());
    }
  }
  return t;
}

void write_density(const std::filesystem::path& file, const density::DensityMatrix& rho) {
  density_table(rho).write(file);
}

}  // namespace fieldlab::csv
