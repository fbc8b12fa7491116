#include "polygame/verify.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "polygame/catalog.hpp"
#include "polygame/rng.hpp"
#include "polygame/runner.hpp"
#include "polygame/serialize.hpp"

namespace polygame {

namespace {

struct Recorder {
  std::vector<CheckResult>* out;

  // measured must stay at or below limit
  void upper(const std::string& id, double measured, double limit, const std::string& detail = "") {
    std::ostringstream c;
    c << "<= " << limit;
    out->push_back({id, measured <= limit, measured, c.str(), detail});
  }
  // measured must stay at or above limit
  void lower(const std::string& id, double measured, double limit, const std::string& detail = "") {
    std::ostringstream c;
    c << ">= " << limit;
    out->push_back({id, measured >= limit, measured, c.str(), detail});
  }
  // measured must fall inside [lo, hi]
  void range(const std::string& id, double measured, double lo, double hi,
             const std::string& detail = "") {
    std::ostringstream c;
    c << "in [" << lo << ", " << hi << "]";
    out->push_back({id, measured >= lo && measured <= hi, measured, c.str(), detail});
  }
  void flag(const std::string& id, bool ok, const std::string& detail = "") {
    out->push_back({id, ok, ok ? 1.0 : 0.0, "== true", detail});
  }
};

// ---- shared generators -----------------------------------------------------

Vec random_interior_simplex(Xoshiro256pp& rng, int dim) {
  Vec x(dim);
  for (int a = 0; a < dim; ++a) x[a] = rng.uniform(0.3, 1.0);
  return x / x.sum();
}

// A dual point inside the validity region of the given regularizer.
Vec random_dual_point(Xoshiro256pp& rng, const RegularizerSpec& reg) {
  if (reg.kind == RegKind::Entropic) {
    Vec y(reg.dim);
    for (int a = 0; a < reg.dim; ++a) y[a] = rng.uniform(-2.0, 2.0);
    return y;
  }
  Vec y = random_interior_simplex(rng, reg.dim);
  for (int a = 0; a < reg.dim; ++a) y[a] += rng.uniform(-0.02, 0.02);
  return y;
}

PayoffProfile random_dual_profile(Xoshiro256pp& rng, const std::vector<RegularizerSpec>& regs) {
  PayoffProfile y;
  y.reserve(regs.size());
  for (const RegularizerSpec& reg : regs) y.push_back(random_dual_point(rng, reg));
  return y;
}

double profile_max_norm(const PayoffProfile& a, const PayoffProfile& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return m;
}

double profile_norm(const PayoffProfile& a, const PayoffProfile& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
  return std::sqrt(s);
}

struct CatalogEntry {
  std::string name;
  GameSpec game;
  StrategyProfile nash;  // a verified fully-mixed representative
};

std::vector<CatalogEntry> catalog_games() {
  Vec half(2);
  half << 0.5, 0.5;
  return {
      {"rps", weighted_rps(1, 1, 1), weighted_rps_nash(1, 1, 1)},
      {"wrps", weighted_rps(1, 2, 3), weighted_rps_nash(1, 2, 3)},
      {"mp3", matching_pennies_3(1.0), {half, half, half}},
  };
}

std::vector<RegularizerSpec> entropic_regs(const GameSpec& game) {
  std::vector<RegularizerSpec> regs;
  for (int c : game.action_counts) regs.push_back({RegKind::Entropic, c});
  return regs;
}

FlowSystem preset_system(const PresetExperiment& exp, Variant variant, double alpha, int m = 0) {
  return make_flow_system(exp.game, exp.regs, FlowParams{variant, alpha, m});
}

struct PresetRun {
  Trajectory traj;
  std::vector<ObservableSeries> obs;
};

PresetRun run_preset(const std::string& name, Variant variant, double alpha, double horizon,
                     int m = 0) {
  PresetExperiment exp = preset(name);
  const FlowSystem sys = preset_system(exp, variant, alpha, m);
  IntegratorConfig cfg = exp.integrator;
  cfg.horizon = horizon;
  PresetRun run;
  run.traj = integrate(sys, init_dual_state(exp.regs, exp.x0), cfg);
  run.obs = standard_series(run.traj, sys, exp.reference);
  return run;
}

const ObservableSeries& find_series(const std::vector<ObservableSeries>& all, const std::string& name) {
  for (const ObservableSeries& s : all)
    if (s.name == name) return s;
  throw StructuralError("missing series " + name);
}

// ---- regularizers ----------------------------------------------------------

void suite_regularizers(Recorder& rec) {
  const std::vector<RegularizerSpec> kinds = {{RegKind::Entropic, 3},
                                              {RegKind::Euclidean, 3},
                                              {RegKind::Entropic, 4},
                                              {RegKind::Euclidean, 2}};
  Xoshiro256pp rng(7001);

  // Exact translation invariance needs exactly representable shifts of
  // exactly representable inputs; dyadic points provide that.
  double exact_shift = 0.0;
  for (const RegularizerSpec& reg : kinds) {
    if (reg.kind != RegKind::Entropic) continue;
    for (int trial = 0; trial < 20; ++trial) {
      Vec y(reg.dim);
      for (int a = 0; a < reg.dim; ++a)
        y[a] = static_cast<double>(static_cast<long>(rng.next() % 4096)) / 1024.0 - 2.0;
      const Vec base = mirror_map(reg, y);
      for (double eps : {1.0, -1.0, 10.0, -10.0}) {
        const Vec shifted = mirror_map(reg, Vec(y.array() + eps));
        exact_shift = std::max(exact_shift, (shifted - base).cwiseAbs().maxCoeff());
      }
    }
  }
  rec.upper("regularizer/translation-invariance-exact", exact_shift, 0.0,
            "entropic mirror, dyadic inputs, eps in {±1, ±10}");

  double shift_dev = 0.0, norm_dev = 0.0, grad_fd = 0.0, hess_fd = 0.0, fenchel_dev = 0.0;
  double min_eig = 0.0, kernel_dev = 0.0, roundtrip_dev = 0.0;
  for (const RegularizerSpec& reg : kinds) {
    for (int trial = 0; trial < 25; ++trial) {
      const Vec y = random_dual_point(rng, reg);
      const Vec x = mirror_map(reg, y);

      for (double eps : {1.0, -1.0, 10.0, -10.0})
        shift_dev = std::max(shift_dev, (mirror_map(reg, Vec(y.array() + eps)) - x).cwiseAbs().maxCoeff());

      norm_dev = std::max(norm_dev, std::abs(x.sum() - 1.0));

      const double h = 1e-5;
      Vec fd_grad(reg.dim);
      Mat fd_hess(reg.dim, reg.dim);
      for (int a = 0; a < reg.dim; ++a) {
        Vec yp = y, ym = y;
        yp[a] += h;
        ym[a] -= h;
        fd_grad[a] = (dual_value(reg, yp) - dual_value(reg, ym)) / (2 * h);
        fd_hess.col(a) = (mirror_map(reg, yp) - mirror_map(reg, ym)) / (2 * h);
      }
      grad_fd = std::max(grad_fd, (fd_grad - x).cwiseAbs().maxCoeff());
      const Mat hess = dual_hessian(reg, y);
      hess_fd = std::max(hess_fd, (fd_hess - hess).cwiseAbs().maxCoeff());

      fenchel_dev = std::max(fenchel_dev,
                             std::abs(dual_value(reg, y) - (x.dot(y) - primal_value(reg, x))));

      const Eigen::SelfAdjointEigenSolver<Mat> eig(hess);
      min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
      kernel_dev = std::max(kernel_dev, (hess * Vec::Ones(reg.dim)).cwiseAbs().maxCoeff());

      const Vec x_interior = random_interior_simplex(rng, reg.dim);
      roundtrip_dev = std::max(
          roundtrip_dev, (mirror_map(reg, primal_gradient(reg, x_interior)) - x_interior).cwiseAbs().maxCoeff());
    }
  }
  rec.upper("regularizer/translation-invariance", shift_dev, 1e-12, "both kinds, random points");
  rec.upper("regularizer/normalization", norm_dev, 1e-12);
  rec.upper("regularizer/mirror-matches-fd-gradient", grad_fd, 1e-8, "central differences, step 1e-5");
  rec.upper("regularizer/hessian-matches-fd-jacobian", hess_fd, 1e-6, "central differences, step 1e-5");
  rec.upper("regularizer/fenchel-young-equality", fenchel_dev, 1e-10);
  rec.lower("regularizer/hessian-psd", min_eig, -1e-10, "smallest eigenvalue");
  rec.upper("regularizer/hessian-kernel-ones", kernel_dev, 1e-10);
  rec.upper("regularizer/mirror-gradient-roundtrip", roundtrip_dev, 1e-10);
}

// ---- conservation ----------------------------------------------------------

void suite_conservation(Recorder& rec) {
  Xoshiro256pp rng(7002);

  {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const int n = 2 + static_cast<int>(seed % 2);
      const std::vector<int> counts = n == 2 ? std::vector<int>{3, 4} : std::vector<int>{3, 2, 4};
      const GameSpec game = random_zero_sum(seed, n, counts, 1.5);
      for (int trial = 0; trial < 10; ++trial) {
        StrategyProfile x;
        for (int c : game.action_counts) x.push_back(random_interior_simplex(rng, c));
        worst = std::max(worst, std::abs(total_utility(game, x)));
      }
    }
    rec.upper("game/total-utility-zero", worst, 1e-10, "random zero-sum games, random profiles");
  }

  {
    double worst_residual = 0.0, worst_lambda = 0.0;
    int solved = 0;
    for (const CatalogEntry& entry : catalog_games()) {
      const NashCertificate cert = solve_fully_mixed_nash(entry.game);
      const NashCertificate check = verify_nash(entry.game, cert.strategy, 1e-8);
      worst_residual = std::max(worst_residual, check.residual);
      worst_lambda = std::max(worst_lambda, std::abs(check.multipliers.sum()));
      ++solved;
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const GameSpec game = random_zero_sum(seed, 2, {3, 3}, 1.0);
      try {
        const NashCertificate cert = solve_fully_mixed_nash(game);
        const NashCertificate check = verify_nash(game, cert.strategy, 1e-8);
        worst_residual = std::max(worst_residual, check.residual);
        worst_lambda = std::max(worst_lambda, std::abs(check.multipliers.sum()));
        ++solved;
      } catch (const SolveError&) {
        // no interior equilibrium for this draw
      }
    }
    rec.upper("game/solve-then-verify", worst_residual, 1e-8,
              std::to_string(solved) + " games solved");
    rec.upper("game/nash-multiplier-sum", worst_lambda, 3 * 1e-8, "|sum lambda| <= n*tol");
  }

  {
    // Coarse best-response scan: no grid profile may beat the solved
    // equilibrium by more than 1e-2.
    double worst_gain = 0.0;
    int scanned = 0;
    std::vector<GameSpec> drawn;
    for (std::uint64_t seed = 1; seed <= 20 && drawn.size() < 2; ++seed)
      drawn.push_back(random_zero_sum(seed, 2, {3, 3}, 1.0));
    drawn.push_back(random_zero_sum(6, 2, {4, 4}, 1.0));
    for (const GameSpec& game : drawn) {
      NashCertificate cert;
      try {
        cert = solve_fully_mixed_nash(game);
      } catch (const SolveError&) {
        continue;
      }
      ++scanned;
      const int resolution = 50;
      for (int agent = 0; agent < 2; ++agent) {
        const double base = utility(game, cert.strategy, agent);
        const int dim = game.action_counts[static_cast<std::size_t>(agent)];
        std::function<void(int, int, Vec&)> scan = [&](int coord, int left, Vec& z) {
          if (coord == dim - 1) {
            z[coord] = static_cast<double>(left) / resolution;
            StrategyProfile x = cert.strategy;
            x[static_cast<std::size_t>(agent)] = z;
            worst_gain = std::max(worst_gain, utility(game, x, agent) - base);
            return;
          }
          for (int k = 0; k <= left; ++k) {
            z[coord] = static_cast<double>(k) / resolution;
            scan(coord + 1, left - k, z);
          }
        };
        Vec z(dim);
        scan(0, resolution, z);
      }
    }
    rec.upper("game/grid-best-response", worst_gain, 1e-2,
              std::to_string(scanned) + " games, grid 1/50");
  }

  {
    bool all_valid = true;
    double worst_residual = 0.0;
    for (const std::string& name : preset_names()) {
      const PresetExperiment exp = preset(name);
      all_valid = all_valid && validate_zero_sum(exp.game).valid();
      StrategyProfile points[3];
      if (exp.reference.mode == RefMode::FixedPoint) {
        points[0] = points[1] = points[2] = exp.reference.fixed_point;
      } else {
        const Layout layout = exp.game.layout();
        int k = 0;
        for (double p : {0.3, 0.5, 0.7})
          points[k++] = layout.unpack(exp.reference.line_base + p * exp.reference.line_direction);
      }
      for (const StrategyProfile& x_star : points) {
        const NashCertificate cert = verify_nash(exp.game, x_star, 1e-10);
        all_valid = all_valid && cert.valid;
        worst_residual = std::max(worst_residual, cert.residual);
      }
    }
    rec.flag("catalog/presets-zero-sum", all_valid, "validate_zero_sum + equilibrium certificates");
    rec.upper("catalog/presets-certify", worst_residual, 1e-10);
  }

  {
    const GameSpec a = random_zero_sum(99, 2, {3, 3}, 2.0);
    const GameSpec b = random_zero_sum(99, 2, {3, 3}, 2.0);
    const GameSpec c = random_zero_sum(100, 2, {3, 3}, 2.0);
    const bool identical = (a.block(0, 1) - b.block(0, 1)).cwiseAbs().maxCoeff() == 0.0;
    const bool different = (a.block(0, 1) - c.block(0, 1)).cwiseAbs().maxCoeff() > 0.0;
    rec.flag("catalog/rng-reproducible", identical && different,
             "same seed identical, next seed distinct");
  }

  {
    const VectorField decay = [](double, const Vec& y) { return Vec(-y); };
    IntegratorConfig cfg;
    cfg.horizon = 1.0;
    cfg.record_stride = 1000000;
    const double exact = std::exp(-1.0);
    cfg.dt = 0.1;
    const double err_coarse = std::abs(rk4_path(decay, Vec::Ones(1), cfg).states.back()[0] - exact);
    cfg.dt = 0.05;
    const double err_fine = std::abs(rk4_path(decay, Vec::Ones(1), cfg).states.back()[0] - exact);
    rec.range("integrate/rk4-order", err_coarse / err_fine, 14.0, 18.0, "error ratio under dt halving");
  }

  {
    PresetExperiment exp = preset("rps");
    const FlowSystem sys = preset_system(exp, Variant::Ftrl, 0.0);
    const PayoffProfile y0 = init_dual_state(exp.regs, exp.x0);
    IntegratorConfig cfg = exp.integrator;
    const Trajectory coarse = integrate(sys, y0, cfg);
    cfg.dt /= 2;
    const Trajectory fine = integrate(sys, y0, cfg);
    rec.upper("integrate/dt-refinement",
              profile_max_norm(coarse.y_states.back(), fine.y_states.back()), 1e-6,
              "final y shift under dt halving, rps T=100");

    const Trajectory again = integrate(sys, init_dual_state(exp.regs, exp.x0), exp.integrator);
    bool identical = again.size() == coarse.size();
    for (std::size_t k = 0; identical && k < again.size(); ++k)
      identical = again.times[k] == coarse.times[k] &&
                  profile_max_norm(again.y_states[k], coarse.y_states[k]) == 0.0;
    rec.flag("integrate/trajectory-determinism", identical, "bit-identical repeated integration");
  }

  {
    double worst = 0.0;
    for (const CatalogEntry& entry : catalog_games()) {
      const FlowSystem sys = make_flow_system(entry.game, entropic_regs(entry.game), {});
      for (int trial = 0; trial < 30; ++trial) {
        const PayoffProfile y = random_dual_profile(rng, sys.regs);
        worst = std::min(worst, fenchel_coupling(sys, entry.nash, y));
      }
    }
    rec.lower("observe/fenchel-nonnegative", worst, -1e-12, "minimum over random points");
  }

  for (const std::string& name : preset_names()) {
    const PresetRun run = run_preset(name, Variant::Ftrl, 0.0, 100.0);
    const ObservableSeries& fenchel = find_series(run.obs, "fenchel");
    double drift = 0.0;
    for (double v : fenchel.values) drift = std::max(drift, std::abs(v - fenchel.values.front()));
    rec.upper("observe/fenchel-conserved-" + name,
              drift / std::max(1.0, std::abs(fenchel.values.front())), 1e-6,
              "relative drift over T=100");

    double energy = 0.0;
    for (double v : find_series(run.obs, "energy").values) energy = std::max(energy, std::abs(v));
    rec.upper("observe/energy-zero-" + name, energy, 1e-10);

    double simplex_dev = 0.0;
    for (const StrategyProfile& x : run.traj.x_states)
      for (double s : simplex_sums(x)) simplex_dev = std::max(simplex_dev, std::abs(s - 1.0));
    rec.upper("observe/simplex-sums-" + name, simplex_dev, 1e-8);
  }

  {
    // Energy vanishes for every variant because x = mirror(y) by construction.
    PresetExperiment exp = preset("rps");
    double worst = 0.0;
    for (Variant variant : {Variant::Dftrl, Variant::Co, Variant::Ceg, Variant::Cnm}) {
      const FlowSystem sys = preset_system(exp, variant, 0.05);
      IntegratorConfig cfg = exp.integrator;
      cfg.horizon = 20.0;
      const Trajectory traj = integrate(sys, init_dual_state(exp.regs, exp.x0), cfg);
      for (std::size_t k = 0; k < traj.size(); ++k)
        worst = std::max(worst, std::abs(hamiltonian(sys, traj.x_states[k], traj.y_states[k])));
    }
    rec.upper("observe/energy-zero-variants", worst, 1e-10, "dftrl/co/ceg/cnm at alpha=0.05");
  }

  {
    double worst = 0.0;
    for (const CatalogEntry& entry : catalog_games()) {
      const FlowSystem sys = make_flow_system(entry.game, entropic_regs(entry.game), {});
      for (int trial = 0; trial < 100; ++trial) {
        const PayoffProfile y = random_dual_profile(rng, sys.regs);
        const StrategyProfile x = mirror_map(sys.regs, y);
        const PayoffProfile field = ftrl_field(sys, y);
        double pairing = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
          pairing += (x[i] - entry.nash[i]).dot(field[i]);
        worst = std::max(worst, std::abs(pairing));
      }
    }
    rec.upper("observe/noether-pairing-ftrl", worst, 1e-9, "100 points per catalog game");
  }

  {
    json cfg_json = {{"game", "rps"},
                     {"variant", "dftrl"},
                     {"alpha", 0.15},
                     {"integrator", {{"T", 10.0}, {"dt", 0.01}, {"stride", 10}}}};
    const RunConfig cfg = parse_run_config(cfg_json);
    const RunResult first = execute_run(cfg);
    const RunResult second = execute_run(cfg);
    std::ostringstream t1, t2, o1, o2;
    write_trajectory_csv(t1, first.trajectory);
    write_trajectory_csv(t2, second.trajectory);
    write_observables_csv(o1, first.observables);
    write_observables_csv(o2, second.observables);
    rec.flag("cli/run-deterministic", t1.str() == t2.str() && o1.str() == o2.str(),
             "repeated runs give byte-identical CSVs");
  }
}

// ---- dissipation -----------------------------------------------------------

void suite_dissipation(Recorder& rec) {
  const struct {
    const char* preset;
    double alpha;
    int m;
  } runs[] = {
      {"rps", 0.15, 0},      {"wrps", 0.05, 0},       {"wrps", 0.15, 0},       {"mp3", 0.1, 0},
      {"mp3-euclid", 0.05, 0}, {"mp3-euclid", 0.1, 0}, {"rps", 0.05, 1},
  };
  for (const auto& r : runs) {
    const PresetRun run = run_preset(r.preset, Variant::Dftrl, r.alpha, 200.0, r.m);
    const ObservableSeries& fenchel = find_series(run.obs, "fenchel");
    double max_increase = 0.0;
    for (std::size_t k = 1; k < fenchel.values.size(); ++k)
      max_increase = std::max(max_increase, fenchel.values[k] - fenchel.values[k - 1]);
    std::ostringstream id;
    id << "observe/fenchel-monotone-" << r.preset << "-a" << r.alpha;
    if (r.m > 0) id << "-m" << r.m;
    rec.upper(id.str(), max_increase, 1e-7, "max per-step increase over T=200");
  }

  {
    Xoshiro256pp rng(7003);
    double worst = -1e300;
    for (const CatalogEntry& entry : catalog_games()) {
      for (const auto& [alpha, m] : std::vector<std::pair<double, int>>{{0.15, 0}, {0.05, 1}}) {
        const FlowSystem sys =
            make_flow_system(entry.game, entropic_regs(entry.game), {Variant::Dftrl, alpha, m});
        for (int trial = 0; trial < 100; ++trial) {
          const PayoffProfile y = random_dual_profile(rng, sys.regs);
          const StrategyProfile x = mirror_map(sys.regs, y);
          const PayoffProfile field = dftrl_field(sys, y);
          double pairing = 0.0;
          for (std::size_t i = 0; i < y.size(); ++i)
            pairing += (x[i] - entry.nash[i]).dot(field[i]);
          worst = std::max(worst, pairing);
        }
      }
    }
    rec.upper("observe/noether-pairing-dftrl", worst, 1e-12,
              "dG_F/dt pairing stays nonpositive, m in {0,1}");
  }
}

// ---- equivalence -----------------------------------------------------------

void suite_equivalence(Recorder& rec) {
  Xoshiro256pp rng(7004);

  {
    double worst = 0.0;
    for (const CatalogEntry& entry : catalog_games()) {
      const FlowSystem sys = make_flow_system(entry.game, entropic_regs(entry.game), {});
      for (int trial = 0; trial < 10; ++trial) {
        const PayoffProfile y = random_dual_profile(rng, sys.regs);
        const PayoffProfile base = ftrl_field(sys, y);
        FlowSystem dftrl = sys;
        dftrl.params = {Variant::Dftrl, 0.0, 0};
        worst = std::max(worst, profile_max_norm(dftrl_field(dftrl, y), base));
        worst = std::max(worst, profile_max_norm(co_field(sys, y, 0.0), base));
        worst = std::max(worst, profile_max_norm(ceg_field(sys, y, 0.0), base));
        worst = std::max(worst, profile_max_norm(cnm_field(sys, y, 0.0), base));
      }
    }
    rec.upper("dynamics/alpha-zero-degeneracy", worst, 1e-14);
  }

  {
    double lo_co = 1.0, hi_co = 0.0, lo_ceg = 1.0, hi_ceg = 0.0;
    for (const CatalogEntry& entry : catalog_games()) {
      const FlowSystem base = make_flow_system(entry.game, entropic_regs(entry.game), {});
      for (int trial = 0; trial < 20; ++trial) {
        const PayoffProfile y = random_dual_profile(rng, base.regs);
        for (double alpha : {1e-2, 5e-3}) {
          const auto delta = [&](double a) {
            FlowSystem dftrl = base;
            dftrl.params = {Variant::Dftrl, a, 0};
            const PayoffProfile d = dftrl_field(dftrl, y);
            return std::make_pair(profile_norm(co_field(base, y, a), d),
                                  profile_norm(ceg_field(base, y, a), d));
          };
          const auto [co_full, ceg_full] = delta(alpha);
          const auto [co_half, ceg_half] = delta(alpha / 2);
          lo_co = std::min(lo_co, co_half / co_full);
          hi_co = std::max(hi_co, co_half / co_full);
          lo_ceg = std::min(lo_ceg, ceg_half / ceg_full);
          hi_ceg = std::max(hi_ceg, ceg_half / ceg_full);
        }
      }
    }
    rec.range("dynamics/co-quadratic-order", lo_co, 0.2, 0.3, "min halving ratio");
    rec.range("dynamics/co-quadratic-order-max", hi_co, 0.2, 0.3, "max halving ratio");
    rec.range("dynamics/ceg-quadratic-order", lo_ceg, 0.2, 0.3, "min halving ratio");
    rec.range("dynamics/ceg-quadratic-order-max", hi_ceg, 0.2, 0.3, "max halving ratio");
  }

  {
    double worst = 0.0;
    for (const CatalogEntry& entry : catalog_games()) {
      const FlowSystem sys = make_flow_system(entry.game, entropic_regs(entry.game), {});
      for (double alpha : {0.05, 0.5, 2.0}) {
        for (int trial = 0; trial < 10; ++trial) {
          const PayoffProfile y = random_dual_profile(rng, sys.regs);
          const PayoffProfile base = ftrl_field(sys, y);
          const PayoffProfile cnm = cnm_field(sys, y, alpha);
          for (std::size_t i = 0; i < y.size(); ++i)
            worst = std::max(worst,
                             ((1.0 + alpha) * cnm[i] - base[i]).cwiseAbs().maxCoeff());
        }
      }
    }
    rec.upper("dynamics/cnm-identity", worst, 1e-15, "(1+alpha)*cnm == ftrl");
  }

  {
    // m=0 chain against the perturbation written out as in its defining
    // expression, and the full field against the effective-matrix form.
    double chain_dev = 0.0, effective_dev = 0.0;
    for (const CatalogEntry& entry : catalog_games()) {
      FlowSystem sys = make_flow_system(entry.game, entropic_regs(entry.game), {Variant::Dftrl, 0.15, 0});
      const int n = entry.game.n_agents;
      for (int trial = 0; trial < 10; ++trial) {
        const PayoffProfile y = random_dual_profile(rng, sys.regs);
        const StrategyProfile x = mirror_map(sys.regs, y);
        std::vector<Mat> hess;
        for (int j = 0; j < n; ++j)
          hess.push_back(dual_hessian(sys.regs[static_cast<std::size_t>(j)], y[static_cast<std::size_t>(j)]));

        PayoffProfile direct;
        for (int i = 0; i < n; ++i) {
          Vec gi = Vec::Zero(entry.game.action_counts[static_cast<std::size_t>(i)]);
          for (int j = 0; j < n; ++j) {
            Vec inner = Vec::Zero(entry.game.action_counts[static_cast<std::size_t>(j)]);
            for (int k = 0; k < n; ++k) inner += entry.game.block(j, k) * x[static_cast<std::size_t>(k)];
            gi += entry.game.block(i, j) * (hess[static_cast<std::size_t>(j)] * inner);
          }
          direct.push_back(gi);
        }
        chain_dev = std::max(chain_dev, profile_max_norm(dftrl_perturbation(sys, y, 0), direct));

        PayoffProfile effective;
        for (int i = 0; i < n; ++i) {
          Vec vi = Vec::Zero(entry.game.action_counts[static_cast<std::size_t>(i)]);
          for (int j = 0; j < n; ++j) {
            Mat tuned = entry.game.block(i, j);
            for (int k = 0; k < n; ++k)
              tuned += sys.params.alpha * entry.game.block(i, k) * hess[static_cast<std::size_t>(k)] *
                       entry.game.block(k, j);
            vi += tuned * x[static_cast<std::size_t>(j)];
          }
          effective.push_back(vi);
        }
        effective_dev = std::max(effective_dev, profile_max_norm(dftrl_field(sys, y), effective));
      }
    }
    rec.upper("dynamics/power-chain-m0", chain_dev, 1e-14, "chain vs direct double sum");
    rec.upper("dynamics/effective-matrix-form", effective_dev, 1e-12, "field vs tuned-payoff form");
  }

  {
    double worst = 0.0;
    for (const CatalogEntry& entry : catalog_games()) {
      for (RegKind kind : {RegKind::Entropic, RegKind::Euclidean}) {
        std::vector<RegularizerSpec> regs;
        for (int c : entry.game.action_counts) regs.push_back({kind, c});
        for (Variant variant : {Variant::Ftrl, Variant::Dftrl, Variant::Co, Variant::Ceg, Variant::Cnm}) {
          const FlowSystem sys = make_flow_system(entry.game, regs,
                                                  {variant, variant == Variant::Ftrl ? 0.0 : 0.05, 0});
          for (int trial = 0; trial < 5; ++trial) {
            const PayoffProfile y = random_dual_profile(rng, regs);
            for (const Vec& component : derived_x_field(sys, y))
              worst = std::max(worst, std::abs(component.sum()));
          }
        }
      }
    }
    rec.upper("dynamics/tangency", worst, 1e-12, "derived x-field components sum to zero");
  }

  {
    double worst = 0.0;
    for (const CatalogEntry& entry : catalog_games()) {
      for (RegKind kind : {RegKind::Entropic, RegKind::Euclidean}) {
        std::vector<RegularizerSpec> regs;
        for (int c : entry.game.action_counts) regs.push_back({kind, c});
        const PayoffProfile y_star = init_dual_state(regs, entry.nash);
        for (Variant variant : {Variant::Ftrl, Variant::Dftrl, Variant::Co, Variant::Ceg, Variant::Cnm})
          for (double alpha : {0.0, 0.05, 0.15}) {
            const FlowSystem sys = make_flow_system(
                entry.game, regs, {variant, variant == Variant::Ftrl ? 0.0 : alpha, 0});
            for (const Vec& component : derived_x_field(sys, y_star))
              worst = std::max(worst, component.cwiseAbs().maxCoeff());
          }
      }
    }
    rec.upper("dynamics/nash-fixed-point", worst, 1e-10,
              "derived x-field vanishes at equilibrium, all variants");
  }

  {
    // The discrete extra-gradient rule is forward Euler on the CEG field, so
    // one step reproduces y + eps * ceg_field exactly.
    double worst = 0.0;
    for (const CatalogEntry& entry : catalog_games()) {
      const FlowSystem sys = make_flow_system(entry.game, entropic_regs(entry.game), {});
      for (int trial = 0; trial < 10; ++trial) {
        const PayoffProfile y = random_dual_profile(rng, sys.regs);
        const double eps = 0.1, alpha = 0.05;
        StepHistory history;
        const PayoffProfile stepped = discrete_step(sys, DiscreteRule::ExtraGradient, y, history, eps, alpha);
        const PayoffProfile field = ceg_field(sys, y, alpha);
        for (std::size_t i = 0; i < y.size(); ++i)
          worst = std::max(worst, (stepped[i] - (y[i] + eps * field[i])).cwiseAbs().maxCoeff());
      }
    }
    rec.upper("dynamics/euler-matches-extragradient", worst, 1e-15);
  }
}

using SuiteFn = void (*)(Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"regularizers", suite_regularizers},
      {"conservation", suite_conservation},
      {"dissipation", suite_dissipation},
      {"equivalence", suite_equivalence},
  };
  return table;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  names.emplace_back("all");
  return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite) {
  std::vector<CheckResult> results;
  Recorder rec{&results};
  bool found = false;
  for (const auto& [name, fn] : suites()) {
    if (suite == "all" || suite == name) {
      fn(rec);
      found = true;
    }
  }
  if (!found) {
    std::string available;
    for (const std::string& name : verify_suite_names())
      available += (available.empty() ? "" : ", ") + name;
    throw ConfigError("suite", "unknown suite '" + suite + "' (available: " + available + ")");
  }
  return results;
}

std::vector<std::string> verify_registry() {
  std::vector<std::string> ids;
  for (const CheckResult& result : run_verify_suite("all")) ids.push_back(result.id);
  return ids;
}

bool print_check_results(std::ostream& out, const std::vector<CheckResult>& results) {
  bool all_pass = true;
  for (const CheckResult& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  measured=" << format_double(r.measured)
        << "  required " << r.constraint;
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << '\n';
    all_pass = all_pass && r.pass;
  }
  out << (all_pass ? "all checks passed" : "some checks FAILED") << " (" << results.size()
      << " checks)\n";
  return all_pass;
}

}  // namespace polygame
