#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ehp/core.hpp"
#include "ehp/integrator.hpp"
#include "ehp/rkf45.hpp"

namespace ehp::experiments {

enum class OscillatorType { Hard, Soft, Inverted };

// One catalog entry: a fully specified forced-damped Duffing run.
struct ExperimentSpec {
  std::string id;
  DuffingSystem system;
  Forcing forcing;
  double u0;
  double v0;
  double dt_default;
  double t_total_default;
  OscillatorType type;
};

// The built-in benchmark catalog: four hard-spring runs (T1E1..T1E4), four
// softening-spring runs (T2E1..T2E4) and six inverted-well runs
// (T3E1..T3E6) at increasing forcing amplitude, the last two chaotic.
const std::vector<ExperimentSpec>& catalog();

// nullptr when the id is unknown.
const ExperimentSpec* find(std::string_view id);

// Pointwise difference metrics between two equal-length series; rel_rms is
// rms(a - b) / rms(b) and zero when both series are identically zero.
struct SeriesDiff {
  double max_abs;
  double rms;
  double rel_rms;
};

SeriesDiff diff_series(std::span<const double> a, std::span<const double> b);

struct ComparisonReport {
  std::string id;
  double dt;
  double horizon;
  std::vector<double> grid;  // shared sample times
  double max_abs_diff_u;
  double rms_diff_u;
  double rel_rms_u;
};

// Runs the stepper on [0, horizon] at step dt and the adaptive reference
// sampled on the same grid, then reports displacement differences.
ComparisonReport run_comparison(const ExperimentSpec& spec, double dt,
                                double horizon, const rkf45::Config& config);

struct ConvergenceReport {
  std::string id;
  std::vector<double> dt_list;
  double reference_dt;
  double t_total;
  // RMS displacement difference of each dt run against the reference run,
  // taken on the coarse run's own grid nodes.
  std::vector<double> rms_vs_reference;
  // Least-squares slope of log(rms) vs log(dt); empty for a single dt or a
  // zero rms entry.
  std::optional<double> observed_order;
};

// Integrates the spec at every dt in dt_list plus reference_dt (fanning out
// one worker per run, capped by EHP_DUFFING_THREADS). Every dt must be an
// integer multiple of reference_dt so grids nest.
ConvergenceReport convergence_study(const ExperimentSpec& spec,
                                    std::span<const double> dt_list,
                                    double reference_dt, double t_total);

}  // namespace ehp::experiments
