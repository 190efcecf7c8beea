#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "holoframe/fields.hpp"

namespace holo {

/// In-memory image of a GFLD file.
///
/// Layout: an ASCII header line `GFLD <n> <m> <kind>\n` followed by
/// little-endian complex64 values (float32 real, float32 imaginary). Nodes
/// are written in row-major order (y rows, x fastest). Per node:
///   scalar  - 1 value
///   matrix  - m*m values, row-major
///   oneform - m*m values of cx then m*m values of cy, each row-major
///   twoform - m*m values, row-major
///   vector  - m values
struct GfldRecord {
  int n = 0;
  int m = 0;
  std::string kind;
  std::vector<std::complex<float>> values;

  int values_per_node() const;
};

void write_gfld(const std::filesystem::path& path, const MatrixField& f);
void write_gfld(const std::filesystem::path& path, const MatrixOneForm& w);
void write_gfld(const std::filesystem::path& path, const MatrixTwoForm& t);
void write_gfld(const std::filesystem::path& path, const VectorField& v);

GfldRecord read_gfld(const std::filesystem::path& path);

/// Pointwise Frobenius magnitude of any record, on the grid it describes.
ScalarField magnitude(const GfldRecord& rec, const GridPtr& grid);
/// Matrix or scalar record back to a field (exact up to float32 rounding).
MatrixField to_matrix_field(const GfldRecord& rec, const GridPtr& grid);

/// 8-bit binary PGM of |f| over the whole grid, min -> 0 and max -> 255.
void write_pgm(const std::filesystem::path& path, const ScalarField& magnitude);

}  // namespace holo
