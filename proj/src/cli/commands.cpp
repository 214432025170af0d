#include "hamspec/cli/commands.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "hamspec/eig.hpp"
#include "hamspec/io.hpp"
#include "hamspec/matcore.hpp"
#include "hamspec/perturb.hpp"
#include "hamspec/realize.hpp"
#include "hamspec/stability.hpp"

namespace hamspec::cli {
namespace {

using nlohmann::json;

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json complex_list_json(std::span<const Complex> values) {
  json out = json::array();
  for (Complex z : values) out.push_back(complex_json(z));
  return out;
}

json matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

CommandOutcome guarded(std::string_view command, const std::function<json()>& body) {
  CommandOutcome outcome;
  try {
    outcome.report = body();
    outcome.report["command"] = command;
    outcome.report["status"] = "ok";
    return outcome;
  } catch (const Error& e) {
    const bool io_like = e.kind() == ErrorKind::kParse || e.kind() == ErrorKind::kIo;
    outcome.exit_code = io_like ? 2 : 1;
    outcome.report = {{"command", command},
                      {"status", "error"},
                      {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
    outcome.diagnostics = std::string(command) + ": " + e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 1;
    outcome.report = {{"command", command},
                      {"status", "error"},
                      {"error", {{"kind", "internal"}, {"message", e.what()}}}};
    outcome.diagnostics = std::string(command) + ": " + e.what();
  }
  return outcome;
}

}  // namespace

CommandOutcome cmd_realize(const Path& spectrum_file, const Path& out_matrix_file) {
  return guarded("realize", [&] {
    const Spectrum s = io::read_spectrum_json(spectrum_file);
    const RealizationPlan plan = validate_h_realizable(s);
    const HamMatrix h = realize_spectrum(s);
    const auto achieved = eigenvalues(h.body()).values;
    std::vector<Complex> requested = s.entries;
    sort_spectrum(requested);
    io::write_matrix_csv(out_matrix_file, h.body());

    json quads = json::array();
    for (const auto& q : plan.quadruples) quads.push_back({{"a", q.re}, {"b", q.im}});
    return json{{"dimension", h.dim()},
                {"hamiltonian_residual", h.residual()},
                {"requested_spectrum", complex_list_json(requested)},
                {"achieved_spectrum", complex_list_json(achieved)},
                {"pairing_error", pairing_distance(requested, achieved)},
                {"plan",
                 {{"real_pairs", plan.real_pairs},
                  {"imag_pairs", plan.imag_pairs},
                  {"quadruples", quads}}},
                {"output", out_matrix_file.string()}};
  });
}

CommandOutcome cmd_check(const Path& matrix_file) {
  return guarded("check", [&] {
    const RealMatrix a = io::read_matrix_csv(matrix_file);
    const HamiltonianCheck check = is_hamiltonian(a, default_hamiltonian_tol(a));
    const auto spectrum = eigenvalues(a).values;

    json report{{"dimension", a.rows()},
                {"hamiltonian", check.hamiltonian},
                {"hamiltonian_residual", check.residual},
                {"spectrum", complex_list_json(spectrum)}};
    try {
      validate_h_realizable(Spectrum{spectrum}, 1e-8 * std::max(1.0, a.norm()));
      report["spectrum_closed"] = true;
    } catch (const Error& e) {
      report["spectrum_closed"] = false;
      report["closure_error"] = e.what();
    }
    if (a.rows() <= kOracleMaxDim) {
      const auto coeffs = charpoly_coefficients(a);
      const auto n = static_cast<std::size_t>(a.rows());
      json odd = json::array();
      double worst = 0.0;
      for (std::size_t power = 1; power <= n; power += 2) {
        const double mag = std::abs(coeffs[n - power]);
        odd.push_back({{"power", power}, {"magnitude", mag}});
        worst = std::max(worst, mag);
      }
      report["odd_charpoly_coefficients"] = odd;
      report["max_odd_charpoly_coefficient"] = worst;
    } else {
      report["odd_charpoly_coefficients"] = nullptr;
    }
    return report;
  });
}

CommandOutcome cmd_perturb(const Path& matrix_file, std::string_view targets,
                           const Path& c_file, const Path& out_file,
                           const std::optional<Path>& x_file) {
  return guarded("perturb", [&] {
    const HamMatrix a = HamMatrix::certify(io::read_matrix_csv(matrix_file));
    const std::vector<Complex> wanted = io::parse_complex_list(targets);
    const RealMatrix c = io::read_matrix_csv(c_file);

    PerturbationSpec spec;
    if (x_file) {
      spec = spec_from_basis(a, io::read_matrix_csv(*x_file), c);
      const double gap = pairing_distance(spec.targets, wanted);
      if (!(gap <= default_eigen_tol(a.body()))) {
        throw Error(ErrorKind::kNotEigenvalue,
                    "perturb: the supplied X spans eigenvalues that differ from --targets");
      }
    } else {
      spec = with_core(select_targets(a, wanted), c);
    }
    const PerturbationReport report = apply_rado(a, spec);
    io::write_matrix_csv(out_file, report.updated.body());

    return json{{"dimension", a.dim()},
                {"targets", complex_list_json(spec.targets)},
                {"replaced", complex_list_json(report.replaced)},
                {"retained", complex_list_json(report.retained)},
                {"achieved_spectrum", complex_list_json(report.achieved)},
                {"prediction_error", report.prediction_error},
                {"core_matrix", matrix_json(report.core_matrix)},
                {"update_norm", report.update_norm},
                {"hamiltonian_residual", report.updated.residual()},
                {"output", out_file.string()}};
  });
}

CommandOutcome cmd_radius(const Path& matrix_file, double tol, std::optional<double> alpha_max,
                          const std::optional<ForceOptions>& force) {
  return guarded("radius", [&] {
    const RealMatrix a = io::read_matrix_csv(matrix_file);
    const BisectionResult r = stability_radius_bisection(a, tol, alpha_max);
    if (r.degenerate) {
      throw Error(ErrorKind::kDomain, r.diagnostic);
    }
    json certs = json::array();
    for (const auto& c : r.certificates) {
      certs.push_back({{"alpha", c.alpha}, {"min_abs_re", c.min_abs_re}, {"on_axis", c.on_axis}});
    }
    json report{{"alpha_lower", r.lower},
                {"alpha_upper", r.upper},
                {"iterations", r.iterations},
                {"alpha_max", r.alpha_max},
                {"certificates", certs}};
    if (force) {
      const auto& [ca, cb, cc] = force->core;
      const ForcedPerturbation f =
          force_imaginary_axis(build_h_alpha(a, force->alpha), ca, cb, cc);
      report["bound_alpha_plus_2C"] = f.bound;
      report["forcing"] = {{"alpha", force->alpha},
                           {"lambda1", f.lambda1},
                           {"beta_plus", f.beta_plus},
                           {"beta_minus", f.beta_minus},
                           {"injected", complex_list_json(f.injected)},
                           {"reaches_axis", f.reaches_axis},
                           {"witness", complex_json(f.witness)},
                           {"raw_update_norm", f.raw_update_norm},
                           {"orthonormal_update_norm", f.orthonormal_update_norm},
                           {"orthonormal_injected", complex_list_json(f.orthonormal_injected)},
                           {"orthonormal_reaches_axis", f.orthonormal_reaches_axis}};
    }
    return report;
  });
}

CommandOutcome cmd_halpha(const Path& matrix_file, double alpha) {
  return guarded("halpha", [&] {
    const RealMatrix a = io::read_matrix_csv(matrix_file);
    const HAlphaSystem sys = build_h_alpha(a, alpha);
    const auto spectrum = eigenvalues(sys.h.body()).values;
    const AxisTest axis =
        has_imaginary_axis_eigenvalue(sys.h.body(), default_axis_tol(sys.h.body()));

    json report{{"alpha", alpha},
                {"dimension", sys.h.dim()},
                {"spectrum", complex_list_json(spectrum)},
                {"imaginary_axis", axis.on_axis},
                {"witness", complex_json(axis.witness)},
                {"min_abs_re", axis.min_abs_re}};

    // The closed form needs real eigenvectors, i.e. a normal A with real spectrum.
    const auto eigs_a = eigenvalues(a).values;
    const bool real_spectrum =
        std::all_of(eigs_a.begin(), eigs_a.end(), [](Complex z) { return z.imag() == 0.0; });
    report["normal"] = is_normal(a);
    if (is_normal(a) && real_spectrum) {
      auto closed = spectrum_normal_closed_form(eigs_a, alpha);
      sort_spectrum(closed);
      report["closed_form_spectrum"] = complex_list_json(closed);
      report["closed_form_error"] = pairing_distance(closed, spectrum);
    }
    return report;
  });
}

}  // namespace hamspec::cli
