#include "holoframe/gfld.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace holo {

namespace {

void put_f32(std::ostream& os, float v) {
  std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  os.write(b, 4);
}

float get_f32(const unsigned char* b) {
  std::uint32_t bits = 0;
  for (int i = 0; i < 4; ++i) bits |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return std::bit_cast<float>(bits);
}

struct Writer {
  std::ofstream os;
  Writer(const std::filesystem::path& p, int n, int m, const char* kind)
      : os(p, std::ios::binary) {
    if (!os) throw FormatError("cannot open " + p.string() + " for writing");
    os << "GFLD " << n << ' ' << m << ' ' << kind << '\n';
  }
  void put(cplx v) {
    put_f32(os, static_cast<float>(v.real()));
    put_f32(os, static_cast<float>(v.imag()));
  }
  void put_matrix(ConstMatMap a) {
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) put(a(r, c));
  }
};

}  // namespace

int GfldRecord::values_per_node() const {
  if (kind == "scalar") return 1;
  if (kind == "matrix" || kind == "twoform") return m * m;
  if (kind == "oneform") return 2 * m * m;
  if (kind == "vector") return m;
  throw FormatError("unknown GFLD kind '" + kind + "'");
}

void write_gfld(const std::filesystem::path& path, const MatrixField& f) {
  Writer w(path, f.grid().n(), f.m(), f.m() == 1 ? "scalar" : "matrix");
  for (int k = 0; k < f.grid().size(); ++k) w.put_matrix(f.at(k));
}

void write_gfld(const std::filesystem::path& path, const MatrixOneForm& form) {
  Writer w(path, form.grid().n(), form.m(), "oneform");
  for (int k = 0; k < form.grid().size(); ++k) {
    w.put_matrix(form.cx.at(k));
    w.put_matrix(form.cy.at(k));
  }
}

void write_gfld(const std::filesystem::path& path, const MatrixTwoForm& t) {
  Writer w(path, t.c.grid().n(), t.c.m(), "twoform");
  for (int k = 0; k < t.c.grid().size(); ++k) w.put_matrix(t.c.at(k));
}

void write_gfld(const std::filesystem::path& path, const VectorField& v) {
  Writer w(path, v.grid().n(), v.m(), "vector");
  for (int k = 0; k < v.grid().size(); ++k)
    for (int e = 0; e < v.m(); ++e) w.put(v.at(k)(e));
}

GfldRecord read_gfld(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  std::string header;
  std::getline(is, header);
  std::istringstream hs(header);
  std::string magic;
  GfldRecord rec;
  if (!(hs >> magic >> rec.n >> rec.m >> rec.kind) || magic != "GFLD" || rec.n < 5 || rec.m < 1)
    throw FormatError("bad GFLD header in " + path.string());
  const std::size_t count =
      static_cast<std::size_t>(rec.n) * rec.n * static_cast<std::size_t>(rec.values_per_node());
  std::vector<unsigned char> bytes(count * 8);
  is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(is.gcount()) != bytes.size())
    throw FormatError("truncated GFLD payload in " + path.string());
  rec.values.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    rec.values[i] = {get_f32(&bytes[8 * i]), get_f32(&bytes[8 * i + 4])};
  return rec;
}

ScalarField magnitude(const GfldRecord& rec, const GridPtr& grid) {
  if (grid->n() != rec.n) throw DimensionMismatch("GFLD grid size differs from target grid");
  const int per = rec.values_per_node();
  ScalarField out(grid, 1);
  for (int k : grid->interior_nodes()) {
    double s = 0.0;
    for (int e = 0; e < per; ++e) s += std::norm(rec.values[static_cast<std::size_t>(k) * per + e]);
    out[k] = std::sqrt(s);
  }
  return out;
}

MatrixField to_matrix_field(const GfldRecord& rec, const GridPtr& grid) {
  if (rec.kind != "scalar" && rec.kind != "matrix" && rec.kind != "twoform")
    throw FormatError("GFLD kind '" + rec.kind + "' is not a matrix field");
  if (grid->n() != rec.n) throw DimensionMismatch("GFLD grid size differs from target grid");
  const int m = rec.kind == "scalar" ? 1 : rec.m;
  MatrixField f(grid, m);
  for (int k = 0; k < grid->size(); ++k)
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        const auto v = rec.values[static_cast<std::size_t>(k) * m * m + r * m + c];
        f.at(k)(r, c) = cplx(v.real(), v.imag());
      }
  return f;
}

void write_pgm(const std::filesystem::path& path, const ScalarField& mag) {
  const int n = mag.grid().n();
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n * n; ++k) a[k] = std::abs(mag[k]);
  const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
  const double span = *hi - *lo;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  os << "P5\n" << n << ' ' << n << "\n255\n";
  // image rows run top to bottom, grid rows bottom to top
  for (int j = n - 1; j >= 0; --j)
    for (int i = 0; i < n; ++i) {
      const double v = span > 0.0 ? (a[j * n + i] - *lo) / span : 0.0;
      os.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v))));
    }
}

}  // namespace holo
