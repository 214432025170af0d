// hamspec: realize Hamiltonian spectra, check structure, apply structured
// rank-r perturbations and bound stability radii.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hamspec/cli/commands.hpp"
#include "hamspec/io.hpp"

namespace {

int emit(const hamspec::cli::CommandOutcome& outcome) {
  std::cout << outcome.report.dump(2) << "\n";
  if (!outcome.diagnostics.empty()) std::cerr << outcome.diagnostics << "\n";
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hamspec::cli;

  CLI::App app{"Hamiltonian matrices with prescribed spectra, structured perturbations and "
               "stability-radius bounds"};
  app.require_subcommand(1);

  std::string spectrum_file, matrix_file, out_file, c_file, x_file, targets, force_core;
  double tol = 1e-6;
  double alpha = 0.0;
  std::optional<double> alpha_max;
  std::optional<double> force_alpha;

  auto* realize = app.add_subcommand("realize", "Build a Hamiltonian matrix with a given spectrum");
  realize->add_option("spectrum", spectrum_file, "JSON array of complex strings")->required();
  realize->add_option("out", out_file, "Output CSV matrix")->required();

  auto* check = app.add_subcommand("check", "Report Hamiltonian structure and spectral symmetry");
  check->add_option("matrix", matrix_file, "CSV matrix")->required();

  auto* perturb = app.add_subcommand("perturb", "Replace eigenvalues by A + X C X^H");
  perturb->add_option("matrix", matrix_file, "Hamiltonian CSV matrix")->required();
  perturb->add_option("--targets", targets, "Comma-separated eigenvalues to replace")->required();
  perturb->add_option("--c", c_file, "Hamiltonian core C as CSV")->required();
  perturb->add_option("--out", out_file, "Output CSV for the updated matrix")->required();
  perturb->add_option("--x", x_file, "Explicit eigenvector basis X as CSV");

  auto* radius = app.add_subcommand("radius", "Bisection bracket for the stability radius");
  radius->add_option("matrix", matrix_file, "CSV system matrix")->required();
  radius->add_option("--tol", tol, "Bracket width")->capture_default_str();
  radius->add_option("--alpha-max", alpha_max, "Upper start (default: auto-doubling)");
  auto* core_opt =
      radius->add_option("--force-core", force_core, "a,b,c of C = [[a,b],[c,-a]] for the bound");
  radius->add_option("--force-alpha", force_alpha, "alpha for the forcing perturbation")
      ->needs(core_opt);

  auto* halpha = app.add_subcommand("halpha", "Spectrum of H(alpha) and imaginary-axis test");
  halpha->add_option("matrix", matrix_file, "CSV system matrix")->required();
  halpha->add_option("--alpha", alpha, "alpha >= 0")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*realize) return emit(cmd_realize(spectrum_file, out_file));
  if (*check) return emit(cmd_check(matrix_file));
  if (*perturb) {
    std::optional<Path> x;
    if (!x_file.empty()) x = x_file;
    return emit(cmd_perturb(matrix_file, targets, c_file, out_file, x));
  }
  if (*radius) {
    std::optional<ForceOptions> force;
    if (!force_core.empty()) {
      std::vector<hamspec::Complex> entries;
      try {
        entries = hamspec::io::parse_complex_list(force_core);
      } catch (const hamspec::Error& e) {
        std::cerr << "radius: --force-core: " << e.what() << "\n";
        return 2;
      }
      if (entries.size() != 3 || !force_alpha) {
        std::cerr << "radius: --force-core needs three reals a,b,c and --force-alpha\n";
        return 2;
      }
      force = ForceOptions{*force_alpha,
                           {entries[0].real(), entries[1].real(), entries[2].real()}};
    }
    return emit(cmd_radius(matrix_file, tol, alpha_max, force));
  }
  if (*halpha) return emit(cmd_halpha(matrix_file, alpha));
  return 2;
}
