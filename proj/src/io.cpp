#include "spectro/io.hpp"

#include "spectro/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace spectro::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_row(const std::vector<double>& values) {
  std::string line;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) line += ',';
    line += format_double(values[k]);
  }
  return line;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

std::string matrix_csv(const std::string& corner, const std::vector<double>& row_axis,
                       const std::vector<double>& col_axis, const Eigen::MatrixXd& values) {
  std::string text = corner;
  for (double c : col_axis) text += ',' + format_double(c);
  text += '\n';
  for (std::size_t r = 0; r < row_axis.size(); ++r) {
    text += format_double(row_axis[r]);
    for (std::size_t c = 0; c < col_axis.size(); ++c) {
      text += ',' + format_double(values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    }
    text += '\n';
  }
  return text;
}

}  // namespace spectro::io
