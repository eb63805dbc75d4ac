#include "symest/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "symest/dynamics.hpp"
#include "symest/error.hpp"
#include "symest/format.hpp"

namespace symest {
namespace fs = std::filesystem;

namespace {

// Ordered `key = value` file; later writes replace earlier values in place.
class ReportFile {
 public:
  static ReportFile load(const fs::path& path) {
    ReportFile report;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.front() == '#') continue;
      const auto eq = line.find(" = ");
      if (eq == std::string::npos) continue;
      report.set(line.substr(0, eq), line.substr(eq + 3));
    }
    return report;
  }

  void set(const std::string& key, const std::string& value) {
    for (auto& entry : entries_) {
      if (entry.first == key) {
        entry.second = value;
        return;
      }
    }
    entries_.emplace_back(key, value);
  }
  void set(const std::string& key, double value) { set(key, format_real(value)); }
  void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }

  bool has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
  }

  const std::string& get(const std::string& key) const {
    for (const auto& entry : entries_) {
      if (entry.first == key) return entry.second;
    }
    throw IoError("report is missing key '" + key + "'");
  }
  double get_real(const std::string& key) const { return parse_real(get(key)); }
  std::size_t get_count(const std::string& key) const { return std::stoul(get(key)); }

  void save(const fs::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "# symest run report\n";
    for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

fs::path prepare_dir(const std::string& dir) {
  fs::path path(dir);
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return path;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<Interval> cells_of(const SymbolicData& data) {
  std::vector<Interval> cells;
  cells.reserve(data.size());
  for (std::size_t i = 1; i <= data.size(); ++i) cells.push_back(data.cell(i));
  return cells;
}

template <typename F>
auto run_stage(const std::string& stage, double& seconds, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    auto result = body();
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  } catch (...) {
    std::throw_with_nested(StageError(stage));
  }
}

}  // namespace

std::string grid_level_file(std::size_t level) {
  return "grid_level" + std::to_string(level) + ".csv";
}

SymbolicData cmd_simulate(const RunConfig& config) {
  config.validate();
  SymbolicData data(simulate_symbolic(config.true_theta, config.true_y0, config.n));
  const fs::path dir = prepare_dir(config.output_dir);
  open_output(dir / kBitsFile) << format_bits(data.bits()) << '\n';
  auto cells_out = open_output(dir / kCellsFile);
  write_cells_csv(cells_out, cells_of(data), 1);
  return data;
}

AnchoredRefinement refine_from_anchor(double theta_star, const CandidateVector& candidate,
                                      const StrengthProfile& profile, std::size_t threshold) {
  AnchoredRefinement out;
  out.kappa_selected = select_anchor(profile, threshold);
  out.kappa = out.kappa_selected;
  for (;;) {
    try {
      out.refined = backward_refine(theta_star, candidate, out.kappa);
      return out;
    } catch (const InversionDomainError&) {
      std::size_t k = out.kappa;
      while (k > 0 && profile.per_index[k - 1] <= threshold) --k;
      if (k == 0) throw;
      out.kappa = k - 1;
    }
  }
}

EstimateResult cmd_estimate(const RunConfig& config, const SymbolicData& data) {
  config.validate();
  if (data.size() < config.m) throw DomainError("data shorter than the grid-search sample m");
  const RngStream master(config.seed);

  const fs::path dir = prepare_dir(config.output_dir);
  EstimateResult out;
  out.zoom = run_zooming(config.grid, config.levels, data.prefix(config.m), config.gibbs, master,
                         config.workers);
  for (const auto& level : out.zoom.levels) {
    auto os = open_output(dir / grid_level_file(level.level));
    write_grid_level_csv(os, level);
  }

  StrengthChainResult full = run_strength_chain(out.zoom.theta_star, data, config.gibbs,
                                                master.split(kFullSampleStream));
  out.full_candidate = std::move(full.best_candidate);
  out.full_ces = full.best_ces;
  out.profile = cumulative_strength(out.zoom.theta_star, out.full_candidate, data);
  {
    auto os = open_output(dir / kStrengthsFile);
    write_strengths_csv(os, out.profile);
  }

  AnchoredRefinement anchored =
      refine_from_anchor(out.zoom.theta_star, out.full_candidate, out.profile, config.anchor_threshold);
  out.kappa_selected = anchored.kappa_selected;
  out.kappa = anchored.kappa;
  out.refined = std::move(anchored.refined);

  {
    auto os = open_output(dir / kCandidateFile);
    os << "index,ybar,ytilde\n";
    for (std::size_t i = 0; i < out.full_candidate.size(); ++i) {
      os << i << ',' << format_real(out.full_candidate[i]) << ',';
      if (i <= out.kappa) os << format_real(out.refined[i]);
      os << '\n';
    }
  }

  ReportFile report;
  report.set("true_theta", config.true_theta);
  report.set("true_y0", config.true_y0);
  report.set("n", data.size());
  report.set("m", config.m);
  report.set("seed", std::to_string(config.seed));
  for (const auto& level : out.zoom.levels) {
    const std::string prefix = "level" + std::to_string(level.level) + "_";
    const std::size_t k = level.argmax;
    report.set(prefix + "theta", level.points[k].theta);
    report.set(prefix + "y0", level.points[k].best_y0);
    report.set(prefix + "ces", level.points[k].best_ces);
    if (k > 0 && k + 1 < level.grid.points) {
      report.set(prefix + "interval_lower", std::min(level.grid.at(k - 1), level.grid.at(k + 1)));
      report.set(prefix + "interval_upper", std::max(level.grid.at(k - 1), level.grid.at(k + 1)));
    }
  }
  report.set("levels", out.zoom.levels.size());
  report.set("theta_star", out.zoom.theta_star);
  report.set("y0_bar", out.zoom.y0);
  report.set("truncation_lower", out.zoom.truncation.lower);
  report.set("truncation_upper", out.zoom.truncation.upper);
  report.set("ces_full", out.profile.ces);
  report.set("kappa_selected", out.kappa_selected);
  report.set("kappa", out.kappa);
  report.save(dir / kReportFile);
  return out;
}

SymbolicData load_bits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open bit file " + path);
  std::string line;
  std::getline(in, line);
  auto bits = parse_bits(line);
  if (bits.empty()) throw IoError("bit file " + path + " is empty");
  return SymbolicData(std::move(bits));
}

EstimateArtifacts load_estimate_artifacts(const std::string& dir_name) {
  const fs::path dir(dir_name);
  EstimateArtifacts art;
  art.data = load_bits((dir / kBitsFile).string());

  const ReportFile report = ReportFile::load(dir / kReportFile);
  art.theta_star = report.get_real("theta_star");
  art.truncation = Interval::open(report.get_real("truncation_lower"), report.get_real("truncation_upper"));
  art.kappa = report.get_count("kappa");

  std::ifstream in(dir / kCandidateFile);
  if (!in) throw IoError("cannot open " + (dir / kCandidateFile).string());
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto fields = split_csv_line(line);
    if (fields.size() < 3 || fields[2].empty()) continue;
    const std::size_t index = std::stoul(fields[0]);
    if (index != art.refined.size()) throw IoError("candidate.csv: refined indices are not contiguous");
    art.refined.values.push_back(parse_real(fields[2]));
  }
  if (art.refined.size() != art.kappa + 1) {
    throw IoError("candidate.csv: expected " + std::to_string(art.kappa + 1) + " refined values");
  }
  return art;
}

PolishResult cmd_polish(const RunConfig& config, const EstimateArtifacts& art) {
  config.validate();
  PolishResult out;
  out.sites = config.polish_sites == 0 ? art.kappa : std::min(config.polish_sites, art.kappa);
  if (out.sites == 0) throw DomainError("polishing needs at least one observation");

  CandidateVector init{std::vector<double>(art.refined.values.begin(),
                                           art.refined.values.begin() + static_cast<std::ptrdiff_t>(out.sites + 1))};
  out.cells = refine_cells(init, config.polish.epsilon, art.data.prefix(out.sites));

  PolishConfig polish = config.polish;
  polish.truncation = art.truncation;
  out.estimate = run_polish(art.theta_star, init, out.cells, polish,
                            RngStream(config.seed).split(kPolishStream));

  const fs::path dir = prepare_dir(config.output_dir);
  {
    auto os = open_output(dir / kRefinedCellsFile);
    write_cells_csv(os, out.cells.cells, 0);
  }
  {
    auto os = open_output(dir / kPolishTraceFile);
    write_polish_trace_csv(os, out.estimate.trace);
  }
  ReportFile report = ReportFile::load(dir / kReportFile);
  report.set("polish_sites", out.sites);
  report.set("polish_sweeps", config.polish.sweeps);
  report.set("polish_samples", out.estimate.samples);
  report.set("theta_hat", out.estimate.theta_hat);
  report.set("y0_hat", out.estimate.y0_hat);
  report.save(dir / kReportFile);
  return out;
}

RunReport cmd_full(const RunConfig& config) {
  config.validate();
  RunReport out;
  out.data = run_stage("simulate", out.timings.simulate_s, [&] { return cmd_simulate(config); });
  out.estimate = run_stage("estimate", out.timings.estimate_s, [&] { return cmd_estimate(config, out.data); });
  out.polish = run_stage("polish", out.timings.polish_s, [&] {
    EstimateArtifacts art{out.data, out.estimate.zoom.theta_star, out.estimate.zoom.truncation,
                          out.estimate.kappa, out.estimate.refined};
    return cmd_polish(config, art);
  });

  const fs::path dir(config.output_dir);
  ReportFile report = ReportFile::load(dir / kReportFile);
  report.set("time_simulate_s", out.timings.simulate_s);
  report.set("time_estimate_s", out.timings.estimate_s);
  report.set("time_polish_s", out.timings.polish_s);
  report.save(dir / kReportFile);
  return out;
}

std::string cmd_report(const std::string& dir_name) {
  const fs::path dir(dir_name);
  if (!fs::exists(dir / kReportFile)) throw IoError("no report.txt in " + dir_name);
  const ReportFile report = ReportFile::load(dir / kReportFile);
  std::ostringstream os;
  char buf[256];

  const double true_theta = report.get_real("true_theta");
  const double true_y0 = report.get_real("true_y0");
  os << "Grid search (sample m = " << report.get("m") << ")\n";
  os << "  level  interval                     theta        y0\n";
  const std::size_t levels = report.get_count("levels");
  for (std::size_t l = 1; l <= levels; ++l) {
    const std::string p = "level" + std::to_string(l) + "_";
    if (report.has(p + "interval_lower")) {
      std::snprintf(buf, sizeof buf, "  %5zu  (%.5f, %.5f)   %10.5f  %8.5f\n", l,
                    report.get_real(p + "interval_lower"), report.get_real(p + "interval_upper"),
                    report.get_real(p + "theta"), report.get_real(p + "y0"));
    } else {
      std::snprintf(buf, sizeof buf, "  %5zu  (edge)                     %10.5f  %8.5f\n", l,
                    report.get_real(p + "theta"), report.get_real(p + "y0"));
    }
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "  true theta = %.10g, true y0 = %.10g\n\n", true_theta, true_y0);
  os << buf;

  os << "Anchor kappa = " << report.get("kappa");
  if (report.has("kappa_selected") && report.get("kappa_selected") != report.get("kappa")) {
    os << " (largest qualifying index " << report.get("kappa_selected") << " could not be refined)";
  }
  os << ", CES at theta* on the full sample = " << report.get("ces_full") << "\n";

  std::ifstream in(dir / kCandidateFile);
  std::string line;
  std::getline(in, line);
  double y_true = true_y0;
  os << "  i    y*_i         ybar_i       ytilde_i     |y*-ybar|   |y*-ytilde|\n";
  for (std::size_t i = 0; i < 5 && std::getline(in, line); ++i) {
    const auto f = split_csv_line(line);
    const double ybar = parse_real(f.at(1));
    const double ytilde = f.size() > 2 && !f[2].empty() ? parse_real(f[2]) : std::nan("");
    std::snprintf(buf, sizeof buf, "  %zu  %11.8f  %11.8f  %11.8f  %10.8f  %10.8f\n", i, y_true, ybar,
                  ytilde, std::abs(y_true - ybar), std::abs(y_true - ytilde));
    os << buf;
    y_true = map_value(true_theta, y_true);
  }

  if (report.has("theta_hat")) {
    os << "\nPolishing on " << report.get("polish_sites") << " observations, "
       << report.get("polish_samples") << " post-burn-in sweeps\n";
    std::snprintf(buf, sizeof buf, "  theta_hat = %.8f  (error %.2e)\n  y0_hat    = %.8f  (error %.2e)\n",
                  report.get_real("theta_hat"), std::abs(report.get_real("theta_hat") - true_theta),
                  report.get_real("y0_hat"), std::abs(report.get_real("y0_hat") - true_y0));
    os << buf;
  }
  if (report.has("time_estimate_s")) {
    std::snprintf(buf, sizeof buf, "\nTimings: simulate %.3f s, estimate %.1f s, polish %.1f s\n",
                  report.get_real("time_simulate_s"), report.get_real("time_estimate_s"),
                  report.get_real("time_polish_s"));
    os << buf;
  }
  return os.str();
}

}  // namespace symest
