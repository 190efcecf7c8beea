#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "holoframe/fields.hpp"

namespace holo::cli {

/// One CSV cell, formatted on construction so that output is reproducible.
class Cell {
 public:
  Cell(double v);
  Cell(int v) : text_(std::to_string(v)) {}
  Cell(std::uint64_t v) : text_(std::to_string(v)) {}
  Cell(std::string v) : text_(std::move(v)) {}
  Cell(const char* v) : text_(v) {}
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<Cell> row);
  std::size_t size() const noexcept { return rows_.size(); }
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

/// Output directory of one run; remembers every file it writes.
class Artifacts {
 public:
  explicit Artifacts(std::filesystem::path dir);

  void write(const std::string& name, const Table& table);
  /// name.gfld plus a name.pgm preview of the pointwise magnitude.
  void dump(const std::string& name, const MatrixField& f);
  void dump(const std::string& name, const MatrixOneForm& w);
  void dump(const std::string& name, const VectorField& v);
  void write_manifest(const nlohmann::ordered_json& manifest);

  const std::vector<std::string>& outputs() const noexcept { return outputs_; }
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> outputs_;
};

}  // namespace holo::cli
