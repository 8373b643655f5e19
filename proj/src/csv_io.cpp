// SPDX-License-Identifier: Apache-2.0

#include "eimkit/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace eimkit {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

// Strict double parse; the full field must be consumed.
double parse_double(const std::string& field, const std::string& what,
                    std::size_t line_no, std::size_t field_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    std::ostringstream msg;
    msg << what << ": line " << line_no << ", field " << field_no
        << ": cannot parse '" << field << "' as a number";
    throw ParseError(msg.str());
  }
  return value;
}

double parse_finite(const std::string& field, const std::string& what,
                    std::size_t line_no, std::size_t field_no) {
  const double value = parse_double(field, what, line_no, field_no);
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << what << ": line " << line_no << ", field " << field_no
        << ": value '" << field << "' is not finite";
    throw ValueError(msg.str());
  }
  return value;
}

std::vector<double> parse_coordinates(const std::string& label,
                                      const std::string& what,
                                      std::size_t line_no,
                                      std::size_t field_no) {
  std::vector<double> coords;
  for (const std::string& part : split(label, ';')) {
    coords.push_back(parse_finite(part, what, line_no, field_no));
  }
  return coords;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_coordinates(const std::vector<double>& coords) {
  std::string out;
  for (std::size_t c = 0; c < coords.size(); ++c) {
    if (c > 0) out += ';';
    out += format_double(coords[c]);
  }
  return out;
}

// getline with CRLF tolerance.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

SnapshotData ingest_snapshots(std::istream& in) {
  const std::string what = "snapshot csv";
  std::string line;
  if (!next_line(in, line)) {
    throw ParseError(what + ": empty input, expected a header row");
  }

  const std::vector<std::string> header = split(line, ',');
  if (header.empty() || header[0] != "x\\y") {
    throw ParseError(what + ": line 1, field 1: header must start with 'x\\y'");
  }
  if (header.size() < 2) {
    throw ParseError(what + ": line 1: needs at least one y column label");
  }

  std::vector<std::vector<double>> y_points;
  for (std::size_t j = 1; j < header.size(); ++j) {
    y_points.push_back(parse_coordinates(header[j], what, 1, j + 1));
    if (y_points.back().size() != y_points.front().size()) {
      std::ostringstream msg;
      msg << what << ": line 1, field " << j + 1 << ": y label has dimension "
          << y_points.back().size() << ", expected " << y_points.front().size();
      throw DimensionError(msg.str());
    }
  }
  const std::size_t ny = y_points.size();

  std::vector<std::vector<double>> x_points;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;  // tolerate a trailing blank line
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != ny + 1) {
      std::ostringstream msg;
      msg << what << ": line " << line_no << ": has " << fields.size()
          << " fields, expected " << ny + 1;
      throw DimensionError(msg.str());
    }
    x_points.push_back(parse_coordinates(fields[0], what, line_no, 1));
    if (x_points.back().size() != x_points.front().size()) {
      std::ostringstream msg;
      msg << what << ": line " << line_no << ", field 1: x label has dimension "
          << x_points.back().size() << ", expected " << x_points.front().size();
      throw DimensionError(msg.str());
    }
    std::vector<double> values;
    values.reserve(ny);
    for (std::size_t j = 1; j < fields.size(); ++j) {
      values.push_back(parse_finite(fields[j], what, line_no, j + 1));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) {
    throw ParseError(what + ": no data rows");
  }

  Matrix values(static_cast<Index>(rows.size()), static_cast<Index>(ny));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return SnapshotData(SampleSet("X", std::move(x_points)),
                      SampleSet("Y", std::move(y_points)),
                      SnapshotMatrix(std::move(values)));
}

SnapshotData load_snapshot_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("snapshot csv: cannot open '" + path + "'");
  return ingest_snapshots(in);
}

void write_snapshot_csv(std::ostream& out, const SnapshotData& data) {
  out << "x\\y";
  for (Index j = 0; j < data.ys.size(); ++j) {
    out << ',' << format_coordinates(data.ys.point(j));
  }
  out << '\n';
  for (Index i = 0; i < data.xs.size(); ++i) {
    out << format_coordinates(data.xs.point(i));
    for (Index j = 0; j < data.ys.size(); ++j) {
      out << ',' << format_double(data.matrix(i, j));
    }
    out << '\n';
  }
}

Matrix read_matrix_csv(std::istream& in, const std::string& what) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, ',');
    if (!rows.empty() && fields.size() != rows.front().size()) {
      std::ostringstream msg;
      msg << what << ": line " << line_no << ": has " << fields.size()
          << " fields, expected " << rows.front().size();
      throw DimensionError(msg.str());
    }
    std::vector<double> values;
    values.reserve(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      values.push_back(parse_finite(fields[j], what, line_no, j + 1));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError(what + ": no rows");

  Matrix m(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Matrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("matrix csv: cannot open '" + path + "'");
  return read_matrix_csv(in, path);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace eimkit
