#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <vector>

namespace spectro::io {

/// Shortest round-trip decimal form, independent of the global locale.
/// NaN is written as "nan".
std::string format_double(double v);

/// Comma-joined row of formatted values.
std::string csv_row(const std::vector<double>& values);

/// Creates parent directories and replaces `path` with `content`.
void write_text(const std::filesystem::path& path, const std::string& content);

/// Matrix CSV with a header of column-axis values and the row-axis value as
/// the first field of every line.
std::string matrix_csv(const std::string& corner, const std::vector<double>& row_axis,
                       const std::vector<double>& col_axis, const Eigen::MatrixXd& values);

}  // namespace spectro::io
