#include "hamspec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hamspec::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

// Imaginary coefficient text: "", "+" and "-" stand for +-1.
bool parse_coefficient(std::string_view s, double& out) {
  if (s.empty() || s == "+") {
    out = 1.0;
    return true;
  }
  if (s == "-") {
    out = -1.0;
    return true;
  }
  return parse_double(s, out);
}

}  // namespace

RealMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::size_t blank_run = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty()) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0 && !rows.empty()) {
      throw Error(ErrorKind::kParse,
                  "CSV line " + std::to_string(line_no - 1) + ": empty line inside matrix");
    }
    blank_run = 0;
    std::vector<double> row;
    std::size_t cell_start = 0;
    while (true) {
      const auto comma = line.find(',', cell_start);
      const std::string_view cell = trim(line.substr(cell_start, comma - cell_start));
      double v = 0.0;
      if (!parse_double(cell, v)) {
        throw Error(ErrorKind::kParse, "CSV line " + std::to_string(line_no) +
                                           ": not a finite decimal number: '" +
                                           std::string(cell) + "'");
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      cell_start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::kParse, "CSV line " + std::to_string(line_no) + ": ragged row (" +
                                         std::to_string(row.size()) + " entries, expected " +
                                         std::to_string(rows.front().size()) + ")");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::kParse, "CSV: no rows");

  RealMatrix m(static_cast<Eigen::Index>(rows.size()),
               static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RealMatrix read_matrix_csv(const std::filesystem::path& path) {
  return parse_matrix_csv(read_text_file(path));
}

std::string format_matrix_csv(const RealMatrix& m) {
  std::string out;
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j) == 0.0 ? 0.0 : m(i, j));
      if (j > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const std::filesystem::path& path, const RealMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << format_matrix_csv(m);
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  auto fail = [&]() -> Complex {
    throw Error(ErrorKind::kParse, "malformed complex number '" + std::string(text) + "'");
  };
  if (s.empty()) return fail();

  if (s.back() != 'i') {
    double re = 0.0;
    if (!parse_double(s, re)) return fail();
    return {re, 0.0};
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not leading and not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0.0;
  double im = 0.0;
  if (split == std::string_view::npos) {
    if (!parse_coefficient(body, im)) return fail();
  } else {
    if (!parse_double(body.substr(0, split), re)) return fail();
    if (!parse_coefficient(body.substr(split), im)) return fail();
  }
  return {re, im};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  std::size_t index = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma - start);
    try {
      out.push_back(parse_complex(item));
    } catch (const Error& e) {
      throw Error(ErrorKind::kParse,
                  "list entry " + std::to_string(index) + ": " + e.what());
    }
    ++index;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Spectrum parse_spectrum_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("spectrum JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorKind::kParse, "spectrum JSON: expected an array of strings");
  }
  Spectrum s;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_string()) {
      throw Error(ErrorKind::kParse,
                  "spectrum JSON: entry " + std::to_string(i) + " is not a string");
    }
    try {
      s.entries.push_back(parse_complex(doc[i].get<std::string>()));
    } catch (const Error& e) {
      throw Error(ErrorKind::kParse,
                  "spectrum JSON: entry " + std::to_string(i) + ": " + e.what());
    }
  }
  return s;
}

Spectrum read_spectrum_json(const std::filesystem::path& path) {
  return parse_spectrum_json(read_text_file(path));
}

}  // namespace hamspec::io
