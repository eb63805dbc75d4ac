#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "symest/config.hpp"
#include "symest/dynamics.hpp"
#include "symest/error.hpp"
#include "symest/grid_search.hpp"
#include "symest/pipeline.hpp"
#include "symest/polish_mcmc.hpp"
#include "symest/strength.hpp"
#include "symest/strength_mcmc.hpp"

namespace py = pybind11;
using namespace symest;

namespace {

SymbolicData to_data(const std::vector<int>& bits) { return SymbolicData(bits); }

RunConfig config_from(const py::dict& settings) {
  RunConfig c;
  for (const auto& [k, v] : settings) {
    apply_setting(c, py::str(k).cast<std::string>(), py::str(v).cast<std::string>());
  }
  c.validate();
  return c;
}

py::dict zoom_dict(const ZoomResult& z) {
  py::list levels;
  for (const auto& l : z.levels) {
    py::list pts;
    for (const auto& p : l.points) pts.append(py::make_tuple(p.theta, p.best_ces));
    levels.append(py::dict(py::arg("points") = pts, py::arg("argmax") = l.argmax));
  }
  return py::dict(py::arg("theta_star") = z.theta_star, py::arg("y0") = z.y0, py::arg("ces") = z.ces,
                  py::arg("truncation") = py::make_tuple(z.truncation.lower, z.truncation.upper),
                  py::arg("candidate") = z.candidate.values, py::arg("levels") = levels);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parameter and initial-condition estimation for 1 + theta * y^2 from binary symbols";

  auto base = py::register_exception<Error>(m, "SymestError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<EscapeError>(m, "EscapeError", base.ptr());
  py::register_exception<InversionDomainError>(m, "InversionDomainError", base.ptr());
  py::register_exception<AnchorNotFoundError>(m, "AnchorNotFoundError", base.ptr());
  py::register_exception<EdgeOfGridError>(m, "EdgeOfGridError", base.ptr());
  py::register_exception<FeasibilityError>(m, "FeasibilityError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<StageError>(m, "StageError", base.ptr());

  m.def("evaluate", &evaluate, py::arg("theta"), py::arg("y"));
  m.def("iterate", [](double theta, double y0, std::size_t k) { return iterate(theta, y0, k).values; },
        py::arg("theta"), py::arg("y0"), py::arg("k"));
  m.def("simulate_symbolic", &simulate_symbolic, py::arg("theta"), py::arg("y0"), py::arg("n"));
  m.def("inverse_branch", &inverse_branch, py::arg("theta"), py::arg("y_next"), py::arg("sign"));

  m.def("point_strength",
        [](double theta, double y, std::size_t index, const std::vector<int>& bits) {
          return point_strength(theta, y, index, to_data(bits));
        },
        py::arg("theta"), py::arg("y"), py::arg("index"), py::arg("bits"));
  m.def("cumulative_strength",
        [](double theta, const std::vector<double>& candidate, const std::vector<int>& bits) {
          const StrengthProfile p = cumulative_strength(theta, CandidateVector{candidate}, to_data(bits));
          return py::make_tuple(p.per_index, p.ces);
        },
        py::arg("theta"), py::arg("candidate"), py::arg("bits"),
        "Returns (per_index strengths, CES).");
  m.def("select_anchor",
        [](const std::vector<std::size_t>& per_index, std::size_t threshold) {
          StrengthProfile p;
          p.per_index = per_index;
          return select_anchor(p, threshold);
        },
        py::arg("per_index"), py::arg("threshold"));
  m.def("backward_refine",
        [](double theta_star, const std::vector<double>& candidate, std::size_t kappa) {
          return backward_refine(theta_star, CandidateVector{candidate}, kappa).values;
        },
        py::arg("theta_star"), py::arg("candidate"), py::arg("kappa"));

  m.def("run_strength_chain",
        [](double theta, const std::vector<int>& bits, double sigma, std::size_t burn_in, std::size_t sweeps,
           std::uint64_t seed) {
          GibbsConfig c;
          c.sigma = sigma;
          c.burn_in = burn_in;
          c.total_sweeps = sweeps;
          c.validate();
          StrengthChainResult r;
          {
            py::gil_scoped_release release;
            r = run_strength_chain(theta, to_data(bits), c, RngStream(seed));
          }
          return py::dict(py::arg("best_ces") = r.best_ces, py::arg("best_sweep") = r.best_sweep,
                          py::arg("candidate") = r.best_candidate.values, py::arg("y0") = r.best_y0);
        },
        py::arg("theta"), py::arg("bits"), py::arg("sigma") = 1e-3, py::arg("burn_in") = 40'000,
        py::arg("sweeps") = 200'000, py::arg("seed") = 1);

  m.def("run_zooming",
        [](const std::vector<int>& bits, double start, double step, std::size_t points, std::size_t levels,
           double sigma, std::size_t burn_in, std::size_t sweeps, std::uint64_t seed, std::size_t workers) {
          GibbsConfig c;
          c.sigma = sigma;
          c.burn_in = burn_in;
          c.total_sweeps = sweeps;
          c.validate();
          ZoomResult z;
          {
            py::gil_scoped_release release;
            z = run_zooming(GridSpec{start, step, points}, levels, to_data(bits), c, RngStream(seed), workers);
          }
          return zoom_dict(z);
        },
        py::arg("bits"), py::arg("start") = -1.5, py::arg("step") = -0.045, py::arg("points") = 12,
        py::arg("levels") = 3, py::arg("sigma") = 1e-3, py::arg("burn_in") = 40'000, py::arg("sweeps") = 200'000,
        py::arg("seed") = 1, py::arg("workers") = 1);

  m.def("default_config", [] { return serialize_config(RunConfig{}); },
        "Default configuration in the flat key = value format.");
  m.def("simulate",
        [](const py::dict& settings) { return cmd_simulate(config_from(settings)).bits(); },
        py::arg("settings") = py::dict(),
        "Write bits.txt and cells.csv; returns the bits. Settings use config-file keys.");
  m.def("full",
        [](const py::dict& settings) {
          const RunConfig c = config_from(settings);
          RunReport r;
          {
            py::gil_scoped_release release;
            r = cmd_full(c);
          }
          return py::dict(py::arg("theta_star") = r.estimate.zoom.theta_star,
                          py::arg("kappa") = r.estimate.kappa, py::arg("kappa_selected") = r.estimate.kappa_selected,
                          py::arg("theta_hat") = r.polish.estimate.theta_hat,
                          py::arg("y0_hat") = r.polish.estimate.y0_hat,
                          py::arg("refined") = r.estimate.refined.values);
        },
        py::arg("settings") = py::dict(), "Run simulate, estimate and polish; artifacts go to output_dir.");
  m.def("report", &cmd_report, py::arg("dir"));
}
