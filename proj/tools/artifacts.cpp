#include "artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "holoframe/errors.hpp"
#include "holoframe/gfld.hpp"

namespace holo::cli {

Cell::Cell(double v) {
  if (std::isnan(v)) {
    text_ = "nan";
  } else if (std::isinf(v)) {
    text_ = v > 0 ? "inf" : "-inf";
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    text_ = buf;
  }
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != header_.size())
    throw DimensionMismatch("csv row has " + std::to_string(row.size()) + " cells, header has " +
                            std::to_string(header_.size()));
  rows_.push_back(std::move(row));
}

std::string Table::render() const {
  std::string s;
  auto line = [&s](auto first, auto last, auto text) {
    for (auto it = first; it != last; ++it) {
      if (it != first) s += ',';
      s += text(*it);
    }
    s += '\n';
  };
  line(header_.begin(), header_.end(), [](const std::string& h) { return h; });
  for (const auto& r : rows_) line(r.begin(), r.end(), [](const Cell& c) { return c.text(); });
  return s;
}

Artifacts::Artifacts(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void Artifacts::write(const std::string& name, const Table& table) {
  std::ofstream os(dir_ / name, std::ios::binary);
  os << table.render();
  if (!os) throw FormatError("cannot write " + (dir_ / name).string());
  outputs_.push_back(name);
}

void Artifacts::dump(const std::string& name, const MatrixField& f) {
  write_gfld(dir_ / (name + ".gfld"), f);
  write_pgm(dir_ / (name + ".pgm"), pointwise_norm(f));
  outputs_.push_back(name + ".gfld");
  outputs_.push_back(name + ".pgm");
}

void Artifacts::dump(const std::string& name, const MatrixOneForm& w) {
  write_gfld(dir_ / (name + ".gfld"), w);
  write_pgm(dir_ / (name + ".pgm"), pointwise_norm(w));
  outputs_.push_back(name + ".gfld");
  outputs_.push_back(name + ".pgm");
}

void Artifacts::dump(const std::string& name, const VectorField& v) {
  write_gfld(dir_ / (name + ".gfld"), v);
  write_pgm(dir_ / (name + ".pgm"), pointwise_norm(v));
  outputs_.push_back(name + ".gfld");
  outputs_.push_back(name + ".pgm");
}

void Artifacts::write_manifest(const nlohmann::ordered_json& manifest) {
  std::ofstream os(dir_ / "manifest.json", std::ios::binary);
  os << manifest.dump(2) << '\n';
  if (!os) throw FormatError("cannot write manifest.json");
}

}  // namespace holo::cli
