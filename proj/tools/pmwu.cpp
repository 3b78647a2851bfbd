// Copyright 2026 The pmwu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pmwu: simulate learning dynamics on periodic zero-sum games and check
// their convergence properties.
//
// Exit codes: 0 success or property passed, 1 usage/config error,
// 2 numerical failure, 3 property check failed.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmwu/analysis.hpp"
#include "pmwu/harness.hpp"

namespace {

using namespace pmwu;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitProperty = 3;

struct Overrides {
  std::string config;
  std::string algo;
  std::optional<double> eta;
  std::optional<std::int64_t> steps;
  std::optional<std::int64_t> record_every;
  std::string out_csv;
  std::string out_svg;
  std::optional<std::uint64_t> seed;
  bool log_y = false;

  void Register(CLI::App* app, bool with_outputs = true) {
    app->add_option("--algo", algo, "mwu|omwu|extra");
    app->add_option("--eta", eta, "step size");
    app->add_option("--steps", steps, "number of rounds");
    app->add_option("--record-every", record_every, "record stride");
    app->add_option("--seed", seed, "seed for random initial points");
    if (with_outputs) {
      app->add_option("--out-csv", out_csv, "trajectory CSV path");
      app->add_option("--out-svg", out_svg, "SVG plot path");
      app->add_flag("--log-y", log_y, "log10 y axis in plots");
    }
  }

  void Apply(RunConfig& cfg) const {
    if (!algo.empty()) cfg.algo = ParseAlgorithm(algo);
    if (eta) {
      if (!(*eta > 0.0)) throw InputError("--eta must be positive");
      cfg.eta = eta;
    }
    if (steps) cfg.steps = steps;
    if (record_every) cfg.record_every = record_every;
    if (seed) cfg.seed = seed;
    if (!out_csv.empty()) cfg.out_csv = out_csv;
    if (!out_svg.empty()) cfg.out_svg = out_svg;
    cfg.log_y = cfg.log_y || log_y;
  }
};

void PrintState(const char* label, const JointState& s) {
  std::printf("%s x1=(", label);
  const auto p1 = s.x1.probabilities();
  for (std::size_t i = 0; i < p1.size(); ++i) std::printf("%s%.10g", i ? ", " : "", p1[i]);
  std::printf(") x2=(");
  const auto p2 = s.x2.probabilities();
  for (std::size_t i = 0; i < p2.size(); ++i) std::printf("%s%.10g", i ? ", " : "", p2[i]);
  std::printf(")\n");
}

void PrintRun(const RunResult& r) {
  const auto& run = r.run;
  std::printf("run %s algo=%s eta=%.6g steps=%lld record_every=%lld\n", run.name.c_str(),
              ToString(run.algo).c_str(), run.eta, static_cast<long long>(run.steps),
              static_cast<long long>(run.record_every));
  if (r.equilibrium) PrintState("reference", r.equilibrium->joint());
  PrintState("final    ", r.trajectory.back().state);
  std::printf("final kl_to_ref=%.6g min_component=%.6g\n", r.trajectory.back().kl_to_ref,
              r.trajectory.back().min_component);
  std::fflush(stdout);
  for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const auto& f : r.written) std::printf("wrote %s\n", f.c_str());
}

int ReportExit(const PropertyReport& rep) {
  std::printf("%s: %s (checked %lld, violations %zu)\n", rep.name.c_str(),
              rep.passed ? "PASS" : "FAIL", static_cast<long long>(rep.checked_steps),
              rep.violations.size());
  for (const auto& [k, v] : rep.metrics) std::printf("  %s = %.6g\n", k.c_str(), v);
  for (std::size_t i = 0; i < rep.violations.size() && i < 10; ++i) {
    const auto& v = rep.violations[i];
    std::printf("  t=%lld %s lhs=%.17g rhs=%.17g slack=%.3g\n", static_cast<long long>(v.t),
                v.item.c_str(), v.lhs, v.rhs, v.slack);
  }
  return rep.passed ? kExitOk : kExitProperty;
}

void PrintMatrix(const SquareMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) std::printf("%s%.12g", j ? "  " : "  ", m(i, j));
    std::printf("\n");
  }
}

JointState InitFromSeed(std::optional<std::uint64_t> seed, const JointState& fallback) {
  if (!seed) return fallback;
  std::mt19937_64 rng(*seed);
  return {RandomInteriorSimplex(fallback.x1.size(), rng),
          RandomInteriorSimplex(fallback.x2.size(), rng)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning dynamics on periodic zero-sum games"};
  app.require_subcommand(1);

  Overrides sim_ov;
  auto* simulate = app.add_subcommand("simulate", "run a JSON configuration");
  simulate->add_option("--config", sim_ov.config, "configuration file")->required();
  sim_ov.Register(simulate);

  Overrides exp_ov;
  std::string exp_name;
  bool exp_all = false;
  std::string out_dir = ".";
  auto* experiment = app.add_subcommand("experiment", "run a builtin experiment");
  experiment->add_option("name", exp_name, "game2x2|exp1|exp2|nocommon3");
  experiment->add_flag("--all", exp_all, "run every builtin experiment");
  experiment->add_option("--out-dir", out_dir, "output directory for --all");
  exp_ov.Register(experiment);

  double an_eta = 0.1;
  std::vector<double> an_point = {0.5, 0.5, 0.5, 0.5};
  int an_samples = 20;
  double an_h = 1e-6;
  auto* analyze = app.add_subcommand("analyze", "spectra of the reduced OMWU map");
  analyze->require_subcommand(1);
  auto* an_jac = analyze->add_subcommand("jacobian", "Jacobian of G1 o G2 at a point");
  auto* an_eig = analyze->add_subcommand("eigen", "eigenvalues at the interior equilibrium");
  auto* an_curve = analyze->add_subcommand("fixed-curve", "boundary fixed-point curve");
  for (auto* c : {an_jac, an_eig, an_curve}) {
    c->add_option("--eta", an_eta, "step size")->check(CLI::PositiveNumber);
    c->add_option("--fd-step", an_h, "finite-difference step")->check(CLI::PositiveNumber);
  }
  an_jac->add_option("--point", an_point, "z1,z2,z3,z4")->expected(4)->delimiter(',');
  an_curve->add_option("--samples", an_samples, "number of a values")->check(CLI::Range(1, 10000));

  Overrides ver_ov;
  std::string ver_experiment = "game2x2";
  std::string ver_expect;
  double ver_p = 0.025;
  int ver_cases = 1000;
  auto* verify = app.add_subcommand("verify", "check a property; exit 3 on failure");
  verify->require_subcommand(1);
  auto* v_ident = verify->add_subcommand("identities", "OMWU ratio identities");
  auto* v_incr = verify->add_subcommand("increments", "OMWU increment bounds near the boundary");
  auto* v_kl = verify->add_subcommand("kl-monotone", "Extra-MWU per-step KL decrease");
  auto* v_breg = verify->add_subcommand("bregman", "three-points and step identities");
  auto* v_orbit = verify->add_subcommand("orbit", "classify the long-run behavior");
  for (auto* c : {v_ident, v_incr, v_kl, v_breg, v_orbit}) ver_ov.Register(c, false);
  v_incr->add_option("--p", ver_p, "distance parameter p (init second coordinates 1/2 + 2p)");
  v_kl->add_option("--experiment", ver_experiment, "builtin with a common equilibrium");
  v_orbit->add_option("--experiment", ver_experiment, "builtin experiment");
  v_orbit->add_option("--expect", ver_expect,
                      "converged_point|converged_orbit|diverging_boundary");
  v_breg->add_option("--cases", ver_cases, "random cases")->check(CLI::Range(1, 10000000));

  std::string plot_csv, plot_svg, plot_title;
  std::vector<std::string> plot_columns;
  bool plot_log = false;
  auto* plot = app.add_subcommand("plot", "render a trajectory CSV as SVG");
  plot->add_option("--csv", plot_csv, "input CSV")->required();
  plot->add_option("--out-svg", plot_svg, "output SVG")->required();
  plot->add_option("--columns", plot_columns, "columns to plot")->delimiter(',');
  plot->add_option("--title", plot_title, "plot title");
  plot->add_flag("--log-y", plot_log, "log10 y axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      RunConfig cfg = ParseConfig(sim_ov.config);
      sim_ov.Apply(cfg);
      PrintRun(RunExperiment(cfg));
      return kExitOk;
    }

    if (experiment->parsed()) {
      std::vector<std::string> names;
      if (exp_all) {
        for (const auto& s : BuiltinExperiments()) names.push_back(s.name);
      } else if (!exp_name.empty()) {
        names.push_back(exp_name);
      } else {
        throw InputError("experiment needs a name or --all");
      }
      for (const auto& name : names) {
        RunConfig cfg;
        cfg.experiment = name;
        exp_ov.Apply(cfg);
        if (exp_all) {
          const std::string stem = out_dir + "/" + name + "_" +
                                   ToString(cfg.algo.value_or(Algorithm::kExtraMwu));
          cfg.out_csv = stem + ".csv";
          if (!exp_ov.out_svg.empty()) cfg.out_svg = stem + ".svg";
        }
        PrintRun(RunExperiment(cfg));
      }
      return kExitOk;
    }

    if (analyze->parsed()) {
      if (an_jac->parsed()) {
        ReducedState4 z{an_point[0], an_point[1], an_point[2], an_point[3]};
        const auto jac = ComposedMapJacobian(z, an_eta, an_h);
        std::printf("Jacobian of G1 o G2 at (%g, %g, %g, %g), eta=%g\n", z[0], z[1], z[2],
                    z[3], an_eta);
        PrintMatrix(jac);
        const auto c = CharPolyCoefficients(jac);
        std::printf("characteristic polynomial:");
        for (double ck : c) std::printf(" %.12g", ck);
        std::printf("\neigenvalues:\n");
        for (const auto& l : EigenvaluesSmall(jac)) {
          std::printf("  %.15g %+.3g i  |.|=%.15g\n", l.real(), l.imag(), std::abs(l));
        }
        return kExitOk;
      }
      if (an_eig->parsed()) {
        const auto jac = ComposedMapJacobian({0.5, 0.5, 0.5, 0.5}, an_eta, an_h);
        const auto lam = InteriorEigenvalues(an_eta);
        std::printf("eta=%g analytic eigenvalues (each double): %.15g %.15g\n", an_eta,
                    lam[0], lam[1]);
        for (double l : lam) {
          std::printf("  |det(J - %.15g I)| = %.3g\n", l, std::abs(CharPolyEval(jac, l)));
        }
        const auto ev = EigenvaluesSmall(jac);
        std::printf("numerical eigenvalues:\n");
        for (const auto& l : ev) {
          std::printf("  %.15g %+.3g i  |.|=%.15g\n", l.real(), l.imag(), std::abs(l));
        }
        const double excess = std::abs(ev.front()) - 1.0;
        std::printf("largest modulus - 1 = %.6g (eta^2/4 = %.6g)\n", excess,
                    an_eta * an_eta / 4.0);
        return excess >= an_eta * an_eta / 4.0 ? kExitOk : kExitProperty;
      }
      if (an_curve->parsed()) {
        bool ok = true;
        std::printf("a,fixed_residual,ev1,ev2,ev3,ev4,mu,eigvec_12_max\n");
        for (int k = 0; k < an_samples; ++k) {
          const double a = (k + 1.0) / (an_samples + 1.0);
          const auto bp = BoundaryFixedPoint(a, an_eta);
          const auto img = OmwuComposedMap(bp, an_eta);
          double res = 0.0;
          for (int i = 0; i < 4; ++i) res = std::max(res, std::abs(img[i] - bp[i]));
          const auto jac = ComposedMapJacobian(bp, an_eta, an_h);
          const auto ev = EigenvaluesSmall(jac);
          const auto v = InverseIterationEigenvector(jac, 1.0 + 1e-9);
          const double mu = BoundaryContractionEigenvalue(a, an_eta);
          const double v12 = std::max(std::abs(v[0]), std::abs(v[1]));
          std::printf("%.6g,%.3g,%.12g,%.12g,%.3g,%.3g,%.12g,%.3g\n", a, res, std::abs(ev[0]),
                      std::abs(ev[1]), std::abs(ev[2]), std::abs(ev[3]), mu, v12);
          ok = ok && res <= 1e-12 && std::abs(std::abs(ev[0]) - 1.0) <= 1e-6 &&
               std::abs(std::abs(ev[1]) - mu) <= 1e-6 && std::abs(ev[2]) <= 1e-6 &&
               std::abs(ev[3]) <= 1e-6 && v12 <= 1e-8;
        }
        return ok ? kExitOk : kExitProperty;
      }
    }

    if (verify->parsed()) {
      const PeriodicGame g2 = AlternatingGame2x2();
      const JointState divergence_init = JointState::FromProbabilities({0.45, 0.55}, {0.45, 0.55});
      if (v_ident->parsed()) {
        const double eta = ver_ov.eta.value_or(1e-3);
        const auto steps = ver_ov.steps.value_or(1000);
        const JointState x0 = InitFromSeed(ver_ov.seed, divergence_init);
        const auto traj = RunTrajectory(g2, Algorithm::kOmwu, x0, eta, steps, 1);
        return ReportExit(CheckOmwuRatioIdentities(traj, eta));
      }
      if (v_incr->parsed()) {
        const double y0 = 0.5 + 2.0 * ver_p;
        const JointState x0 = JointState::FromProbabilities({1.0 - y0, y0}, {1.0 - y0, y0});
        const double eta = ver_ov.eta.value_or((ver_p / 16.0) * (ver_p / 16.0));
        const auto steps = ver_ov.steps.value_or(2000);
        const auto traj = RunTrajectory(g2, Algorithm::kOmwu, x0, eta, steps, 1);
        return ReportExit(CheckOmwuIncrements(traj, ver_p, eta));
      }
      if (v_kl->parsed()) {
        const ExperimentSpec spec = FindExperiment(ver_experiment);
        const auto eq = CommonEquilibrium(spec.game);
        if (!eq) throw PreconditionError(ver_experiment + " has no common equilibrium");
        const double eta = ver_ov.eta.value_or(0.9 * MaxStepSize(spec.game));
        const auto steps = ver_ov.steps.value_or(10000);
        const JointState x0 =
            InitFromSeed(ver_ov.seed, DefaultInit(spec.game.rows(), spec.game.cols()));
        const auto traj = RunTrajectory(spec.game, Algorithm::kExtraMwu, x0, eta, steps, 1);
        return ReportExit(CheckExtraKlDecrease(traj, eq->joint()));
      }
      if (v_breg->parsed()) {
        std::mt19937_64 rng(ver_ov.seed.value_or(7));
        std::uniform_int_distribution<int> dim(2, 5);
        std::normal_distribution<double> gauss(0.0, 1.0);
        PropertyReport total;
        total.name = "bregman_identities";
        double worst = 0.0;
        for (int c = 0; c < ver_cases; ++c) {
          const auto m = static_cast<std::size_t>(dim(rng));
          const Simplex p = RandomInteriorSimplex(m, rng, 0.05);
          const Simplex x = RandomInteriorSimplex(m, rng, 0.05);
          const Simplex xp = RandomInteriorSimplex(m, rng, 0.05);
          std::vector<double> y(m);
          for (double& v : y) v = gauss(rng);
          auto rep = CheckBregmanIdentities(p, x, xp, y);
          for (auto& v : rep.violations) {
            v.t = c;
            total.Add(v);
          }
          total.checked_steps += rep.checked_steps;
          for (const auto& [k, v] : rep.metrics) worst = std::max(worst, v);
        }
        total.metrics["max_residual"] = worst;
        return ReportExit(total);
      }
      if (v_orbit->parsed()) {
        const ExperimentSpec spec = FindExperiment(ver_experiment);
        const Algorithm algo =
            ver_ov.algo.empty() ? Algorithm::kExtraMwu : ParseAlgorithm(ver_ov.algo);
        const double eta = ver_ov.eta.value_or(0.1);
        const auto steps = ver_ov.steps.value_or(30000);
        const JointState x0 =
            InitFromSeed(ver_ov.seed, DefaultInit(spec.game.rows(), spec.game.cols()));
        const auto traj = RunTrajectory(spec.game, algo, x0, eta, steps, 1);
        const auto rep = DetectPeriodicOrbit(traj, spec.game.period());
        std::printf("verdict: %s\n  period_gap = %.6g\n  consecutive_gap = %.6g\n"
                    "  final_min_component = %.6g\n",
                    ToString(rep.verdict).c_str(), rep.period_gap, rep.consecutive_gap,
                    rep.final_min_component);
        const bool ok = ver_expect.empty() ? rep.verdict != OrbitVerdict::kInconclusive
                                           : ToString(rep.verdict) == ver_expect;
        return ok ? kExitOk : kExitProperty;
      }
    }

    if (plot->parsed()) {
      const CsvTable table = ParseCsvFile(plot_csv);
      EmitSvgPlot(SeriesFromCsv(table, plot_columns), plot_svg, plot_log, plot_title);
      std::printf("wrote %s\n", plot_svg.c_str());
      return kExitOk;
    }
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "precondition not met: %s\n", e.what());
    return kExitUsage;
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
