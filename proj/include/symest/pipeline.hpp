#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "symest/candidate.hpp"
#include "symest/config.hpp"
#include "symest/grid_search.hpp"
#include "symest/polish_mcmc.hpp"
#include "symest/strength.hpp"
#include "symest/symbolic.hpp"

namespace symest {

// Files written into RunConfig::output_dir.
inline constexpr const char* kBitsFile = "bits.txt";
inline constexpr const char* kCellsFile = "cells.csv";
inline constexpr const char* kStrengthsFile = "strengths.csv";
inline constexpr const char* kCandidateFile = "candidate.csv";
inline constexpr const char* kRefinedCellsFile = "refined_cells.csv";
inline constexpr const char* kPolishTraceFile = "polish_trace.csv";
inline constexpr const char* kReportFile = "report.txt";
std::string grid_level_file(std::size_t level);

// Stream ids below 1000 (level 0) belong to the non-grid stages.
inline constexpr std::uint64_t kFullSampleStream = grid_stream_id(0, 0);
inline constexpr std::uint64_t kPolishStream = grid_stream_id(0, 1);

struct EstimateResult {
  ZoomResult zoom;
  /// Running-mean candidate over all n observations at theta_star.
  CandidateVector full_candidate;
  std::size_t full_ces = 0;
  StrengthProfile profile;
  /// Largest index whose strength exceeds the anchor threshold.
  std::size_t kappa_selected = 0;
  /// Anchor actually refined from: kappa_selected, or the next lower
  /// qualifying index when the inverse map leaves the domain on the way down.
  std::size_t kappa = 0;
  /// Inverse-map refinement y~_0..y~_kappa.
  CandidateVector refined;
};

/// What the polishing stage reads back from an estimate run.
struct EstimateArtifacts {
  SymbolicData data;
  double theta_star = 0.0;
  Interval truncation;
  std::size_t kappa = 0;
  CandidateVector refined;
};

struct PolishResult {
  std::size_t sites = 0;
  RefinedCells cells;
  PolishEstimate estimate;
};

struct StageTimings {
  double simulate_s = 0.0;
  double estimate_s = 0.0;
  double polish_s = 0.0;
};

struct RunReport {
  SymbolicData data;
  EstimateResult estimate;
  PolishResult polish;
  StageTimings timings;
};

struct AnchoredRefinement {
  std::size_t kappa_selected = 0;
  std::size_t kappa = 0;
  CandidateVector refined;
};

/// select_anchor, then backward_refine from the anchor. When the inverse map
/// leaves its domain on the way down, retries from the next lower index whose
/// strength still exceeds `threshold`; rethrows once none is left.
AnchoredRefinement refine_from_anchor(double theta_star, const CandidateVector& candidate,
                                      const StrengthProfile& profile, std::size_t threshold);

/// Symbolic sequence of length n from (true_theta, true_y0); writes bits.txt
/// and cells.csv.
SymbolicData cmd_simulate(const RunConfig& config);

/// Zooming on the first m observations, then the strength profile, anchor and
/// backward refinement on all of `data`. Writes grid_level{l}.csv,
/// strengths.csv, candidate.csv and report.txt.
EstimateResult cmd_estimate(const RunConfig& config, const SymbolicData& data);

/// Read bits.txt, candidate.csv and report.txt from `dir`.
EstimateArtifacts load_estimate_artifacts(const std::string& dir);
SymbolicData load_bits(const std::string& path);

/// Polishing chain on the first `polish_sites` observations (kappa if 0).
/// Writes refined_cells.csv, polish_trace.csv and updates report.txt.
PolishResult cmd_polish(const RunConfig& config, const EstimateArtifacts& artifacts);

/// simulate -> estimate -> polish with one master seed. Failures are
/// rethrown as StageError with the original exception nested.
RunReport cmd_full(const RunConfig& config);

/// Human-readable summary of the artifacts in `dir`.
std::string cmd_report(const std::string& dir);

}  // namespace symest
