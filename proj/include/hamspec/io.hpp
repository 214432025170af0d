#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hamspec/matcore.hpp"
#include "hamspec/realize.hpp"

namespace hamspec::io {

/// Headerless CSV, one matrix row per line. Ragged rows, empty cells and
/// non-numeric cells are kParse errors carrying the line number.
RealMatrix parse_matrix_csv(std::string_view text);
RealMatrix read_matrix_csv(const std::filesystem::path& path);

/// Each entry printed with 17 significant digits.
std::string format_matrix_csv(const RealMatrix& m);
void write_matrix_csv(const std::filesystem::path& path, const RealMatrix& m);

/// "a", "bi", "a+bi" or "a-bi"; a bare "i" stands for 1i.
Complex parse_complex(std::string_view text);

/// Comma-separated list of complex numbers, e.g. "2i,-2i,1+1i".
std::vector<Complex> parse_complex_list(std::string_view text);

/// JSON array of complex-number strings, e.g. ["1+1i","1-1i","-1-1i","-1+1i"].
Spectrum parse_spectrum_json(std::string_view text);
Spectrum read_spectrum_json(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace hamspec::io
