#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace hamspec::cli {

/// exit_code: 0 success, 1 domain error, 2 I/O or parse error. The report's
/// "status" is "ok" exactly when exit_code is 0.
struct CommandOutcome {
  int exit_code = 0;
  nlohmann::json report;
  std::string diagnostics;
};

using Path = std::filesystem::path;

CommandOutcome cmd_realize(const Path& spectrum_file, const Path& out_matrix_file);

CommandOutcome cmd_check(const Path& matrix_file);

/// With x_file the eigenvector basis is taken verbatim (Omega fitted by least
/// squares) and must reproduce the targets; otherwise X is assembled from
/// normalized eigenvectors of the targets.
CommandOutcome cmd_perturb(const Path& matrix_file, std::string_view targets,
                           const Path& c_file, const Path& out_file,
                           const std::optional<Path>& x_file = std::nullopt);

struct ForceOptions {
  double alpha = 0.0;
  std::array<double, 3> core{};  // a, b, c of [[a, b], [c, -a]]
};

CommandOutcome cmd_radius(const Path& matrix_file, double tol,
                          std::optional<double> alpha_max = std::nullopt,
                          const std::optional<ForceOptions>& force = std::nullopt);

CommandOutcome cmd_halpha(const Path& matrix_file, double alpha);

}  // namespace hamspec::cli
