#include "wnf/csv.hpp"

#include <charconv>
#include <sstream>

#include "wnf/errors.hpp"

namespace wnf::csv {

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Writer::Writer(const std::filesystem::path& path, std::vector<std::string> header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()), path_(path) {
  if (!out_) throw NumericalError("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void Writer::row(std::initializer_list<Cell> cells) { row(std::vector<Cell>(cells)); }

void Writer::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw NumericalError("csv row width mismatch in " + path_.string());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    if (const auto* d = std::get_if<double>(&cells[i]))
      out_ << format_real(*d);
    else if (const auto* n = std::get_if<long long>(&cells[i]))
      out_ << *n;
    else
      out_ << std::get<std::string>(cells[i]);
  }
  out_ << '\n';
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ValidationError("csv: missing column '" + std::string(name) + "'");
}

std::vector<double> Table::values(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

Table read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty file");
  t.header = split(line);
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size())
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(t.header.size()) + " columns");
    std::vector<double> row;
    for (const auto& c : cells) {
      double x = 0.0;
      const auto r = std::from_chars(c.data(), c.data() + c.size(), x);
      if (r.ec != std::errc() || r.ptr != c.data() + c.size())
        throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": not a number: '" + c + "'");
      row.push_back(x);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace wnf::csv
