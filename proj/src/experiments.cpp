#include "ehp/experiments.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include "ehp/parallel.hpp"

namespace ehp::experiments {

namespace {

ExperimentSpec hard(std::string id, double u0, double v0) {
  return {std::move(id),
          DuffingSystem(1.0, 0.2, 1.0, 0.1),
          Forcing::harmonic(0.5, 2.00649),
          u0,
          v0,
          0.01,
          100.0,
          OscillatorType::Hard};
}

ExperimentSpec soft(std::string id, double c, double u0, double v0) {
  return {std::move(id),
          DuffingSystem(1.0, c, 1.0, -1.0 / 6.0),
          Forcing::harmonic(1.0 / 3.0, 0.6),
          u0,
          v0,
          0.01,
          100.0,
          OscillatorType::Soft};
}

ExperimentSpec inverted(std::string id, double f0, double dt, double t_total) {
  return {std::move(id),
          DuffingSystem(1.0, 0.3, -1.0, 1.0),
          Forcing::harmonic(f0, 1.2),
          1.0,
          0.0,
          dt,
          t_total,
          OscillatorType::Inverted};
}

std::vector<ExperimentSpec> build_catalog() {
  std::vector<ExperimentSpec> v;
  v.push_back(hard("T1E1", 3.0, 0.0));
  v.push_back(hard("T1E2", -3.0, 0.0));
  v.push_back(hard("T1E3", -1.0, 1.0));
  v.push_back(hard("T1E4", 1.0, 1.0));
  v.push_back(soft("T2E1", 0.24, 0.519674, 0.072267));
  v.push_back(soft("T2E2", 0.24, 1.0, 0.0));
  v.push_back(soft("T2E3", 0.002, 0.55404958, 0.0011051));
  v.push_back(soft("T2E4", 0.002, 1.0, -0.531));
  v.push_back(inverted("T3E1", 0.2, 0.01, 100.0));
  v.push_back(inverted("T3E2", 0.28, 0.01, 100.0));
  v.push_back(inverted("T3E3", 0.29, 0.01, 100.0));
  v.push_back(inverted("T3E4", 0.37, 0.01, 100.0));
  v.push_back(inverted("T3E5", 0.5, 0.001, 40.0));
  v.push_back(inverted("T3E6", 0.65, 0.001, 100.0));
  return v;
}

std::vector<double> displacement_series(const Trajectory& tr) {
  std::vector<double> u;
  u.reserve(tr.states.size());
  for (const State& s : tr.states) u.push_back(s.u);
  return u;
}

}  // namespace

const std::vector<ExperimentSpec>& catalog() {
  static const std::vector<ExperimentSpec> entries = build_catalog();
  return entries;
}

const ExperimentSpec* find(std::string_view id) {
  for (const ExperimentSpec& spec : catalog()) {
    if (spec.id == id) return &spec;
  }
  return nullptr;
}

SeriesDiff diff_series(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw InvalidArgument("series must be non-empty and equal length");
  }
  double max_abs = 0.0;
  double sum_sq = 0.0;
  double ref_sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    max_abs = std::max(max_abs, std::fabs(d));
    sum_sq += d * d;
    ref_sq += b[i] * b[i];
  }
  const double n = static_cast<double>(a.size());
  const double rms = std::sqrt(sum_sq / n);
  const double ref_rms = std::sqrt(ref_sq / n);
  double rel;
  if (ref_rms > 0.0) {
    rel = rms / ref_rms;
  } else {
    rel = (rms == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return {max_abs, rms, rel};
}

ComparisonReport run_comparison(const ExperimentSpec& spec, double dt,
                                double horizon, const rkf45::Config& config) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("horizon must be finite and positive");
  }
  const State init = initial_state(spec.system, spec.u0, spec.v0);
  const Trajectory tr = integrate(spec.system, init, dt, horizon, spec.forcing);

  std::vector<double> grid;
  grid.reserve(tr.states.size());
  for (const State& s : tr.states) grid.push_back(s.t);

  const std::vector<rkf45::Sample> ref = rkf45::integrate_adaptive(
      spec.system, spec.u0, spec.v0, grid.back(), spec.forcing, config, grid);

  std::vector<double> u_ref;
  u_ref.reserve(ref.size());
  for (const rkf45::Sample& s : ref) u_ref.push_back(s.u);

  const std::vector<double> u = displacement_series(tr);
  const SeriesDiff d = diff_series(u, u_ref);

  ComparisonReport rep;
  rep.id = spec.id;
  rep.dt = dt;
  rep.horizon = horizon;
  rep.grid = std::move(grid);
  rep.max_abs_diff_u = d.max_abs;
  rep.rms_diff_u = d.rms;
  rep.rel_rms_u = d.rel_rms;
  return rep;
}

ConvergenceReport convergence_study(const ExperimentSpec& spec,
                                    std::span<const double> dt_list,
                                    double reference_dt, double t_total) {
  if (dt_list.empty()) throw InvalidArgument("dt list must be non-empty");
  std::vector<std::size_t> ratios(dt_list.size());
  for (std::size_t i = 0; i < dt_list.size(); ++i) {
    const double ratio = dt_list[i] / reference_dt;
    const double rounded = std::round(ratio);
    if (!(ratio > 1.0) || std::fabs(ratio - rounded) > 1e-9 * ratio) {
      throw InvalidArgument(
          "every dt must be a whole multiple of the reference dt");
    }
    ratios[i] = static_cast<std::size_t>(rounded);
  }

  // One worker per run: every dt plus the reference, joined in input order.
  const std::size_t n_runs = dt_list.size() + 1;
  std::vector<Trajectory> runs(n_runs);
  std::exception_ptr failure;
  parallel::for_each_index(n_runs, [&](std::size_t i) {
    try {
      const double dt = (i < dt_list.size()) ? dt_list[i] : reference_dt;
      const State init = initial_state(spec.system, spec.u0, spec.v0);
      runs[i] = integrate(spec.system, init, dt, t_total, spec.forcing);
    } catch (...) {
      #pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);

  const Trajectory& ref = runs.back();

  ConvergenceReport rep;
  rep.id = spec.id;
  rep.dt_list.assign(dt_list.begin(), dt_list.end());
  rep.reference_dt = reference_dt;
  rep.t_total = t_total;
  rep.rms_vs_reference.resize(dt_list.size());

  for (std::size_t i = 0; i < dt_list.size(); ++i) {
    const Trajectory& coarse = runs[i];
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < coarse.states.size(); ++j) {
      const std::size_t jr = j * ratios[i];
      if (jr >= ref.states.size()) {
        throw InvalidArgument("reference grid does not cover the coarse grid");
      }
      const double d = coarse.states[j].u - ref.states[jr].u;
      sum_sq += d * d;
    }
    rep.rms_vs_reference[i] =
        std::sqrt(sum_sq / static_cast<double>(coarse.states.size()));
  }

  if (dt_list.size() >= 2) {
    bool positive = true;
    for (const double r : rep.rms_vs_reference) positive = positive && r > 0.0;
    if (positive) {
      // Least-squares slope of log(rms) against log(dt).
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      const double n = static_cast<double>(dt_list.size());
      for (std::size_t i = 0; i < dt_list.size(); ++i) {
        const double x = std::log(dt_list[i]);
        const double y = std::log(rep.rms_vs_reference[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      rep.observed_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
  }
  return rep;
}

}  // namespace ehp::experiments
