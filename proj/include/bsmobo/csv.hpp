#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bsmobo/core.hpp"
#include "bsmobo/optimizer.hpp"

namespace bsmobo {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
};

/// Doubles are written with 17 significant digits so every value re-parses
/// to the identical bit pattern.
std::string format_double(double value);

CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// eval_index, x_0..x_{n-1}, f_0..f_{m-1} in evaluation order.
void write_archive_csv(const std::filesystem::path& path, const Archive& archive);

/// The nondominated rows of archive.csv, same schema.
void write_front_csv(const std::filesystem::path& path, const Archive& archive);

/// iter, archive_size, igd, hypervolume, train_seconds, inner_seconds,
/// select_seconds; one row per outer iteration.
void write_trace_csv(const std::filesystem::path& path, const std::vector<IterationTrace>& traces);

/// f_0..f_{m-1} rows.
void write_points_csv(const std::filesystem::path& path,
                      const std::vector<ObjectiveVector>& points);
std::vector<ObjectiveVector> read_points_csv(const std::filesystem::path& path);

}  // namespace bsmobo
