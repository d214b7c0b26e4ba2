// Command-line front end: catalog listing, single simulations with CSV/JSON/
// SVG output, stepper-vs-reference comparisons and step-size convergence
// studies. Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ehp/experiments.hpp"
#include "ehp/io.hpp"

namespace {

using nlohmann::json;

const char* type_name(ehp::experiments::OscillatorType t) {
  switch (t) {
    case ehp::experiments::OscillatorType::Hard: return "hard";
    case ehp::experiments::OscillatorType::Soft: return "soft";
    case ehp::experiments::OscillatorType::Inverted: return "inverted";
  }
  return "?";
}

// Sample grid matching the stepper's node times: accumulated addition with a
// shorter final interval when t_total is off-grid.
std::vector<double> uniform_grid(double dt, double t_total) {
  const double ratio = t_total / dt;
  const double rounded = std::round(ratio);
  std::size_t n_full;
  bool truncated = false;
  if (std::fabs(ratio - rounded) <= 1e-9 * ratio && rounded >= 1.0) {
    n_full = static_cast<std::size_t>(rounded);
  } else {
    n_full = static_cast<std::size_t>(std::floor(ratio));
    truncated = true;
  }
  std::vector<double> grid;
  grid.reserve(n_full + 2);
  double t = 0.0;
  grid.push_back(t);
  for (std::size_t i = 0; i < n_full; ++i) {
    t += dt;
    grid.push_back(t);
  }
  if (truncated) grid.push_back(t_total);
  return grid;
}

struct SimulateOptions {
  std::string example;
  double m = 1.0, c = 0.0, k = 1.0, beta = 0.0;
  double u0 = 0.0, v0 = 0.0;
  double f0 = 0.0, omega = 0.0, phase = 0.0;
  double dt = 0.0;      // 0: use default
  double t_end = 0.0;   // 0: use default
  std::string method = "ehp";
  double abserr = 1e-7, relerr = 1e-6;
  std::string csv_path, json_path, svg_path;
  bool custom_given = false;
};

struct ResolvedRun {
  std::string id;
  ehp::DuffingSystem system;
  ehp::Forcing forcing;
  double u0, v0, dt, t_end;
};

ResolvedRun resolve_run(const SimulateOptions& opt) {
  if (!opt.example.empty() && opt.custom_given) {
    throw ehp::InvalidArgument(
        "--example cannot be combined with custom system flags");
  }
  if (!opt.example.empty()) {
    const ehp::experiments::ExperimentSpec* spec =
        ehp::experiments::find(opt.example);
    if (spec == nullptr) {
      throw ehp::InvalidArgument("unknown example id: " + opt.example);
    }
    return {spec->id,
            spec->system,
            spec->forcing,
            spec->u0,
            spec->v0,
            opt.dt > 0.0 ? opt.dt : spec->dt_default,
            opt.t_end > 0.0 ? opt.t_end : spec->t_total_default};
  }
  if (!opt.custom_given) {
    throw ehp::InvalidArgument("pass --example ID or a custom system");
  }
  ehp::Forcing f = (opt.f0 == 0.0)
                       ? ehp::Forcing::zero()
                       : ehp::Forcing::harmonic(opt.f0, opt.omega, opt.phase);
  return {"custom",
          ehp::DuffingSystem(opt.m, opt.c, opt.k, opt.beta),
          std::move(f),
          opt.u0,
          opt.v0,
          opt.dt > 0.0 ? opt.dt : 0.01,
          opt.t_end > 0.0 ? opt.t_end : 100.0};
}

std::filesystem::path with_suffix(const std::filesystem::path& p,
                                  const std::string& tag) {
  std::filesystem::path out = p;
  out.replace_extension();
  out += "." + tag;
  out += p.extension();
  return out;
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    ehp::io::write_file(path, j.dump(2) + "\n");
  }
}

int cmd_catalog(const std::string& type_filter, const std::string& format) {
  json items = json::array();
  if (format != "json") {
    std::printf("%-6s %-9s %6s %6s %6s %9s %-22s %9s %9s %7s %8s\n", "id",
                "type", "m", "c", "k", "beta", "forcing", "u0", "v0", "dt",
                "t_total");
  }
  for (const auto& spec : ehp::experiments::catalog()) {
    if (!type_filter.empty() && type_filter != type_name(spec.type)) continue;
    if (format == "json") {
      items.push_back({{"id", spec.id},
                       {"type", type_name(spec.type)},
                       {"m", spec.system.m()},
                       {"c", spec.system.c()},
                       {"k", spec.system.k()},
                       {"beta", spec.system.beta()},
                       {"forcing", spec.forcing.describe()},
                       {"u0", spec.u0},
                       {"v0", spec.v0},
                       {"dt", spec.dt_default},
                       {"t_total", spec.t_total_default}});
    } else {
      std::printf("%-6s %-9s %6g %6g %6g %9.6g %-22s %9.6g %9.6g %7g %8g\n",
                  spec.id.c_str(), type_name(spec.type), spec.system.m(),
                  spec.system.c(), spec.system.k(), spec.system.beta(),
                  spec.forcing.describe().c_str(), spec.u0, spec.v0,
                  spec.dt_default, spec.t_total_default);
    }
  }
  if (format == "json") {
    std::cout << items.dump(2) << "\n";
  }
  return 0;
}

int cmd_simulate(const SimulateOptions& opt) {
  if (opt.csv_path.empty() && opt.json_path.empty() && opt.svg_path.empty()) {
    throw ehp::InvalidArgument(
        "simulate needs at least one of --csv, --json, --svg");
  }
  const ResolvedRun run = resolve_run(opt);
  const bool want_ehp = opt.method == "ehp" || opt.method == "both";
  const bool want_ref = opt.method == "rkf45" || opt.method == "both";

  std::optional<ehp::Trajectory> trajectory;
  std::vector<ehp::rkf45::Sample> samples;

  if (want_ehp) {
    const ehp::State init = ehp::initial_state(run.system, run.u0, run.v0);
    trajectory =
        ehp::integrate(run.system, init, run.dt, run.t_end, run.forcing);
  }
  if (want_ref) {
    ehp::rkf45::Config cfg;
    cfg.abserr = opt.abserr;
    cfg.relerr = opt.relerr;
    std::vector<double> grid;
    if (trajectory) {
      for (const ehp::State& s : trajectory->states) grid.push_back(s.t);
    } else {
      grid = uniform_grid(run.dt, run.t_end);
    }
    samples = ehp::rkf45::integrate_adaptive(run.system, run.u0, run.v0,
                                             grid.back(), run.forcing, cfg,
                                             grid);
  }

  if (!opt.csv_path.empty()) {
    if (trajectory) {
      const auto rows = ehp::io::csv_rows(*trajectory, run.system.m());
      ehp::io::write_file(opt.csv_path, ehp::io::to_csv(rows));
    }
    if (want_ref) {
      const auto rows = ehp::io::csv_rows(samples);
      const auto path = trajectory
                            ? with_suffix(opt.csv_path, "rkf45").string()
                            : opt.csv_path;
      ehp::io::write_file(path, ehp::io::to_csv(rows));
    }
  }

  if (!opt.json_path.empty()) {
    json j{{"id", run.id},
           {"method", opt.method},
           {"dt", run.dt},
           {"t_total", run.t_end}};
    if (trajectory) {
      std::size_t ambiguous = 0;
      double max_res = 0.0;
      for (const auto& d : trajectory->diagnostics) {
        if (d.was_ambiguous) ++ambiguous;
        max_res = std::max({max_res, std::fabs(d.residuals.r28),
                            std::fabs(d.residuals.r29),
                            std::fabs(d.residuals.r30)});
      }
      j["steps"] = trajectory->diagnostics.size();
      j["ambiguous_root_steps"] = ambiguous;
      j["max_residual"] = max_res;
    }
    if (want_ref) j["reference_samples"] = samples.size();
    emit_json(j, opt.json_path);
  }

  if (!opt.svg_path.empty()) {
    std::vector<ehp::io::Panel> panels(2);
    panels[0].title = run.id + " displacement history";
    panels[0].x_label = "t";
    panels[0].y_label = "u";
    panels[1].title = run.id + " phase portrait";
    panels[1].x_label = "u";
    panels[1].y_label = "v";
    if (trajectory) {
      ehp::io::Series hist{"ehp", {}};
      ehp::io::Series phase{"ehp", {}};
      for (const ehp::State& s : trajectory->states) {
        hist.points.emplace_back(s.t, s.u);
        phase.points.emplace_back(s.u, s.p / run.system.m());
      }
      panels[0].series.push_back(std::move(hist));
      panels[1].series.push_back(std::move(phase));
    }
    if (want_ref) {
      ehp::io::Series hist{"rkf45", {}};
      ehp::io::Series phase{"rkf45", {}};
      for (const auto& s : samples) {
        hist.points.emplace_back(s.t, s.u);
        phase.points.emplace_back(s.u, s.v);
      }
      panels[0].series.push_back(std::move(hist));
      panels[1].series.push_back(std::move(phase));
    }
    ehp::io::write_file(opt.svg_path, ehp::io::render_svg(panels));
  }
  return 0;
}

int cmd_compare(const std::string& example, double dt, double horizon,
                double abserr, double relerr, const std::string& json_path) {
  const ehp::experiments::ExperimentSpec* spec =
      ehp::experiments::find(example);
  if (spec == nullptr) {
    throw ehp::InvalidArgument("unknown example id: " + example);
  }
  const double dt_eff = dt > 0.0 ? dt : spec->dt_default;
  const double horizon_eff = horizon != 0.0 ? horizon : spec->t_total_default;
  if (!(horizon_eff > 0.0)) {
    throw ehp::InvalidArgument("horizon must be positive");
  }
  ehp::rkf45::Config cfg;
  cfg.abserr = abserr;
  cfg.relerr = relerr;
  const ehp::experiments::ComparisonReport rep =
      ehp::experiments::run_comparison(*spec, dt_eff, horizon_eff, cfg);
  const json j{{"id", rep.id},
               {"dt", rep.dt},
               {"horizon", rep.horizon},
               {"samples", rep.grid.size()},
               {"max_abs_diff_u", rep.max_abs_diff_u},
               {"rms_diff_u", rep.rms_diff_u},
               {"rel_rms_u", rep.rel_rms_u}};
  emit_json(j, json_path);
  return 0;
}

int cmd_convergence(const std::string& example, std::vector<double> dts,
                    double reference_dt, double t_end,
                    const std::string& json_path,
                    const std::string& svg_path) {
  const ehp::experiments::ExperimentSpec* spec =
      ehp::experiments::find(example);
  if (spec == nullptr) {
    throw ehp::InvalidArgument("unknown example id: " + example);
  }
  if (dts.empty()) dts = {0.5, 0.2, 0.1};
  std::sort(dts.begin(), dts.end(), std::greater<>());
  const double t_total = t_end > 0.0 ? t_end : spec->t_total_default;

  const ehp::experiments::ConvergenceReport rep =
      ehp::experiments::convergence_study(*spec, dts, reference_dt, t_total);

  json j{{"id", rep.id},
         {"dt_list", rep.dt_list},
         {"reference_dt", rep.reference_dt},
         {"t_total", rep.t_total},
         {"rms_vs_reference", rep.rms_vs_reference}};
  j["observed_order"] =
      rep.observed_order ? json(*rep.observed_order) : json(nullptr);
  emit_json(j, json_path);

  if (!svg_path.empty()) {
    ehp::io::Panel panel;
    panel.title = rep.id + " phase portraits by step size";
    panel.x_label = "u";
    panel.y_label = "v";
    auto add_run = [&](double dt, const std::string& label) {
      const ehp::State init =
          ehp::initial_state(spec->system, spec->u0, spec->v0);
      const ehp::Trajectory tr =
          ehp::integrate(spec->system, init, dt, t_total, spec->forcing);
      ehp::io::Series series{label, {}};
      for (const ehp::State& s : tr.states) {
        series.points.emplace_back(s.u, s.p / spec->system.m());
      }
      panel.series.push_back(std::move(series));
    };
    for (const double dt : dts) add_run(dt, "dt=" + ehp::io::format_double(dt));
    add_run(reference_dt,
            "reference dt=" + ehp::io::format_double(reference_dt));
    const std::vector<ehp::io::Panel> panels{std::move(panel)};
    ehp::io::write_file(svg_path, ehp::io::render_svg(panels));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-iterative mixed-variable stepper for forced-damped "
               "Duffing oscillators, with an adaptive RKF45 reference"};
  app.require_subcommand(1);

  // catalog
  std::string cat_type, cat_format = "table";
  CLI::App* cat = app.add_subcommand("catalog", "List built-in examples");
  cat->add_option("--type", cat_type, "Filter by type")
      ->check(CLI::IsMember({"hard", "soft", "inverted"}));
  cat->add_option("--format", cat_format, "Output format")
      ->check(CLI::IsMember({"table", "json"}));

  // simulate
  SimulateOptions sim;
  CLI::App* s = app.add_subcommand("simulate", "Integrate one system");
  s->add_option("--example", sim.example, "Catalog example id");
  s->add_option("--m", sim.m, "Mass");
  s->add_option("--c", sim.c, "Damping");
  s->add_option("--k", sim.k, "Linear stiffness");
  s->add_option("--beta", sim.beta, "Cubic stiffness");
  s->add_option("--u0", sim.u0, "Initial displacement");
  s->add_option("--v0", sim.v0, "Initial velocity");
  s->add_option("--f0", sim.f0, "Forcing amplitude");
  s->add_option("--omega", sim.omega, "Forcing frequency");
  s->add_option("--phase", sim.phase, "Forcing phase");
  s->add_option("--dt", sim.dt, "Step size")->check(CLI::PositiveNumber);
  s->add_option("--t-end", sim.t_end, "Integration horizon")
      ->check(CLI::PositiveNumber);
  s->add_option("--method", sim.method, "Integrator")
      ->check(CLI::IsMember({"ehp", "rkf45", "both"}));
  s->add_option("--abserr", sim.abserr, "Reference absolute tolerance")
      ->check(CLI::PositiveNumber);
  s->add_option("--relerr", sim.relerr, "Reference relative tolerance")
      ->check(CLI::NonNegativeNumber);
  s->add_option("--csv", sim.csv_path, "CSV output path");
  s->add_option("--json", sim.json_path, "JSON diagnostics path");
  s->add_option("--svg", sim.svg_path, "SVG plot path");

  // compare
  std::string cmp_example, cmp_json;
  double cmp_dt = 0.0, cmp_horizon = 0.0, cmp_abserr = 1e-7,
         cmp_relerr = 1e-6;
  CLI::App* cmp =
      app.add_subcommand("compare", "Stepper vs adaptive reference");
  cmp->add_option("--example", cmp_example, "Catalog example id")->required();
  cmp->add_option("--dt", cmp_dt, "Step size")->check(CLI::PositiveNumber);
  cmp->add_option("--horizon", cmp_horizon, "Comparison horizon")
      ->check(CLI::PositiveNumber);
  cmp->add_option("--abserr", cmp_abserr, "Reference absolute tolerance")
      ->check(CLI::PositiveNumber);
  cmp->add_option("--relerr", cmp_relerr, "Reference relative tolerance")
      ->check(CLI::NonNegativeNumber);
  cmp->add_option("--json", cmp_json, "Report path (stdout when omitted)");

  // convergence
  std::string cnv_example, cnv_json, cnv_svg;
  std::vector<double> cnv_dts;
  double cnv_ref_dt = 0.01, cnv_t_end = 0.0;
  CLI::App* cnv =
      app.add_subcommand("convergence", "Step-size refinement study");
  cnv->add_option("--example", cnv_example, "Catalog example id")->required();
  cnv->add_option("--dts", cnv_dts, "Step sizes, comma separated")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cnv->add_option("--reference-dt", cnv_ref_dt, "Reference step size")
      ->check(CLI::PositiveNumber);
  cnv->add_option("--t-end", cnv_t_end, "Integration horizon")
      ->check(CLI::PositiveNumber);
  cnv->add_option("--json", cnv_json, "Report path (stdout when omitted)");
  cnv->add_option("--svg", cnv_svg, "Phase-portrait overlay path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  sim.custom_given = s->count("--m") || s->count("--c") || s->count("--k") ||
                     s->count("--beta") || s->count("--u0") ||
                     s->count("--v0") || s->count("--f0") ||
                     s->count("--omega") || s->count("--phase");

  try {
    if (cat->parsed()) return cmd_catalog(cat_type, cat_format);
    if (s->parsed()) return cmd_simulate(sim);
    if (cmp->parsed()) {
      return cmd_compare(cmp_example, cmp_dt, cmp_horizon, cmp_abserr,
                         cmp_relerr, cmp_json);
    }
    if (cnv->parsed()) {
      return cmd_convergence(cnv_example, cnv_dts, cnv_ref_dt, cnv_t_end,
                             cnv_json, cnv_svg);
    }
  } catch (const ehp::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ehp::IntegrationError& e) {
    std::cerr << "numerical failure at step " << e.step_index << ": "
              << e.what() << "\n";
    return 2;
  } catch (const ehp::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
