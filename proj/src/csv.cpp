#include "bsmobo/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bsmobo {

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::runtime_error("csv: missing column '" + name + "'");
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write " + path.string());
  auto write_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

namespace {

CsvTable archive_table(const Archive& archive, const std::vector<std::size_t>& indices) {
  CsvTable table;
  const std::size_t n = archive.empty() ? 0 : archive[0].x.size();
  const std::size_t m = archive.empty() ? 0 : archive[0].f.size();
  table.header.push_back("eval_index");
  for (std::size_t d = 0; d < n; ++d) table.header.push_back("x_" + std::to_string(d));
  for (std::size_t j = 0; j < m; ++j) table.header.push_back("f_" + std::to_string(j));
  for (std::size_t idx : indices) {
    std::vector<std::string> row;
    row.push_back(std::to_string(idx));
    for (double v : archive[idx].x) row.push_back(format_double(v));
    for (double v : archive[idx].f) row.push_back(format_double(v));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

void write_archive_csv(const std::filesystem::path& path, const Archive& archive) {
  std::vector<std::size_t> all(archive.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  write_csv(path, archive_table(archive, all));
}

void write_front_csv(const std::filesystem::path& path, const Archive& archive) {
  write_csv(path, archive_table(archive, archive.nondominated_indices()));
}

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<IterationTrace>& traces) {
  CsvTable table;
  table.header = {"iter",          "archive_size",  "igd",           "hypervolume",
                  "train_seconds", "inner_seconds", "select_seconds"};
  for (const auto& trace : traces) {
    table.rows.push_back({std::to_string(trace.iteration), std::to_string(trace.archive_size),
                          format_double(trace.igd), format_double(trace.hypervolume),
                          format_double(trace.train_seconds), format_double(trace.inner_seconds),
                          format_double(trace.select_seconds)});
  }
  write_csv(path, table);
}

void write_points_csv(const std::filesystem::path& path,
                      const std::vector<ObjectiveVector>& points) {
  CsvTable table;
  const std::size_t m = points.empty() ? 0 : points.front().size();
  for (std::size_t j = 0; j < m; ++j) table.header.push_back("f_" + std::to_string(j));
  for (const auto& p : points) {
    std::vector<std::string> row;
    for (double v : p) row.push_back(format_double(v));
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table);
}

std::vector<ObjectiveVector> read_points_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  std::vector<ObjectiveVector> points;
  points.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    ObjectiveVector p;
    p.reserve(row.size());
    for (const auto& field : row) p.push_back(std::stod(field));
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace bsmobo
