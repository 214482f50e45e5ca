#pragma once

// Fixed-column CSV with locale-independent, round-trip (17 significant digit)
// real formatting.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wnf::csv {

std::string format_real(double x);

using Cell = std::variant<double, long long, std::string>;

class Writer {
 public:
  Writer(const std::filesystem::path& path, std::vector<std::string> header);
  void row(std::initializer_list<Cell> cells);
  void row(const std::vector<Cell>& cells);
  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::filesystem::path path_;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Column index by name; throws ValidationError when absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> values(std::string_view name) const;
};

// Numeric CSV with a header line.
Table read(const std::filesystem::path& path);

}  // namespace wnf::csv
