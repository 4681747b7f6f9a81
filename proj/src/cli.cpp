#include "ndnoma/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ndnoma/comparison.hpp"
#include "ndnoma/config.hpp"
#include "ndnoma/csv.hpp"
#include "ndnoma/errors.hpp"
#include "ndnoma/sweep.hpp"
#include "ndnoma/validate.hpp"

namespace ndnoma::harness {

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool timing = false;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "master seed");
    app->add_option("--workers", workers, "worker threads (default: NDNOMA_WORKERS or all cores)")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--timing", timing, "record wall_s per point (output no longer reproducible)");
  }
  void apply(SweepConfig& cfg) const {
    if (seed) cfg.master_seed = *seed;
    if (workers) cfg.workers = *workers;
    if (timing) cfg.record_timing = true;
  }
};

struct PointArgs {
  std::string scheme;
  std::optional<std::string> k_db;
  std::optional<std::size_t> n;
  std::optional<double> delta_db;
  std::optional<double> gamma_bar_db;
  double bits = 100000;
  double j = 100000;
  double alpha = 10.0;
  double beta = 0.01;
  double psi = 0.5;
  double p_dbm = 30.0;
  double rho_far = 0.8;
  std::string threshold = "equal-error";
};

std::uint64_t as_count(double v, const char* what) {
  if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError(std::string(what) + " must be a whole number");
  return static_cast<std::uint64_t>(v);
}

SweepConfig point_config(const PointArgs& a) {
  SweepConfig cfg;
  cfg.scheme = parse_scheme(a.scheme);
  const bool comparison = cfg.scheme == Scheme::kPdNomaComparison;
  cfg.k_db_list = {parse_k_db(a.k_db.value_or(comparison ? "rayleigh" : "10"))};
  cfg.n_list = {a.n.value_or(comparison ? comparison::kComparisonSamples : 100)};
  if (comparison) {
    if (a.delta_db) throw ConfigError("pdnoma-comparison takes --gamma-bar-db, not --delta-db");
    cfg.x_db_grid = {a.gamma_bar_db.value_or(10.0)};
  } else {
    if (a.gamma_bar_db) throw ConfigError("--gamma-bar-db only applies to pdnoma-comparison");
    cfg.x_db_grid = {a.delta_db.value_or(0.0)};
  }
  cfg.bits_per_point = as_count(a.bits, "--bits");
  cfg.j_points = as_count(a.j, "--j");
  cfg.alpha = a.alpha;
  cfg.beta = a.beta;
  cfg.psi = a.psi;
  cfg.p_dbm = a.p_dbm;
  cfg.rho_far = a.rho_far;
  cfg.threshold = parse_threshold(a.threshold);
  return cfg;
}

// Small grids over every scheme; cheap enough to run three times.
std::vector<SweepConfig> determinism_configs(std::uint64_t seed) {
  std::vector<SweepConfig> cfgs(4);
  const Scheme schemes[] = {Scheme::kUplink, Scheme::kDownlink, Scheme::kOmaNoiseMod,
                            Scheme::kPdNomaComparison};
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    auto& c = cfgs[i];
    c.scheme = schemes[i];
    c.master_seed = seed;
    c.bits_per_point = 20000;
    c.j_points = 2000;
    c.k_db_list = {-INFINITY, 10.0};
    c.n_list = {50};
    c.x_db_grid = {-10.0, 0.0};
  }
  cfgs[3].n_list = {150};
  cfgs[3].x_db_grid = {0.0, 20.0};
  return cfgs;
}

std::string determinism_run(const std::vector<SweepConfig>& cfgs, int workers) {
  std::string text;
  for (auto cfg : cfgs) {
    cfg.workers = workers;
    text += format_csv(run_sweep(cfg));
  }
  return text;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noise-domain NOMA link simulator and BEP analysis"};
  app.name("ndnoma");
  app.require_subcommand(1);

  Common common_sweep, common_point, common_validate, common_selftest;

  auto* sweep = app.add_subcommand("sweep", "run a configured sweep and write CSV");
  std::string config_path, out_path;
  sweep->add_option("config", config_path, "key = value config file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  common_sweep.attach(sweep);

  auto* point = app.add_subcommand("point", "run one operating point and print its rows");
  PointArgs pa;
  point->add_option("--scheme", pa.scheme,
                    "uplink-ndnoma | downlink-ndnoma | oma-noisemod | pdnoma-comparison")
      ->required();
  point->add_option("--k-db", pa.k_db, "Rician K in dB, or rayleigh (default 10; rayleigh for pdnoma-comparison)");
  point->add_option("--n", pa.n, "samples per bit (default 100; 150 for pdnoma-comparison)");
  point->add_option("--delta-db", pa.delta_db, "delta in dB (default 0)");
  point->add_option("--gamma-bar-db", pa.gamma_bar_db, "average SNR in dB (default 10)");
  point->add_option("--bits", pa.bits, "bits per user")->capture_default_str();
  point->add_option("--j", pa.j, "theory integration points")->capture_default_str();
  point->add_option("--alpha", pa.alpha)->capture_default_str();
  point->add_option("--beta", pa.beta)->capture_default_str();
  point->add_option("--psi", pa.psi)->capture_default_str();
  point->add_option("--p-dbm", pa.p_dbm)->capture_default_str();
  point->add_option("--rho-far", pa.rho_far)->capture_default_str();
  point->add_option("--threshold", pa.threshold, "equal-error | static-chi")
      ->capture_default_str();
  common_point.attach(point);

  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  common_validate.attach(validate);

  auto* selftest = app.add_subcommand(
      "selftest-determinism", "check byte-identical output across runs and worker counts");
  common_selftest.attach(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfigError;
  }

  try {
    if (*sweep) {
      SweepConfig cfg = load_config(config_path);
      common_sweep.apply(cfg);
      const auto rows = run_sweep(cfg);
      write_csv(rows, out_path);
      out << "wrote " << rows.size() << " rows to " << out_path << '\n';
      return kExitOk;
    }
    if (*point) {
      SweepConfig cfg;
      try {
        cfg = point_config(pa);
        common_point.apply(cfg);
        cfg.validate();
      } catch (const ParameterError& e) {
        throw ConfigError(e.what());
      }
      out << format_csv(run_sweep(cfg));
      return kExitOk;
    }
    if (*validate) {
      SuiteOptions opt;
      opt.seed = common_validate.seed.value_or(1);
      opt.workers = common_validate.workers.value_or(0);
      bool all = true;
      for (const auto& r : run_invariant_suite(opt)) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " -- " << r.detail << '\n';
        all = all && r.passed;
      }
      return all ? kExitOk : kExitRuntimeError;
    }
    if (*selftest) {
      const auto cfgs = determinism_configs(common_selftest.seed.value_or(1));
      std::vector<int> worker_counts{1, 1, 8};
      if (common_selftest.workers) worker_counts.push_back(*common_selftest.workers);
      std::string reference;
      bool same = true;
      for (std::size_t i = 0; i < worker_counts.size(); ++i) {
        const std::string text = determinism_run(cfgs, worker_counts[i]);
        out << "run " << i + 1 << " workers=" << worker_counts[i] << " digest=" << digest(text)
            << '\n';
        if (i == 0)
          reference = text;
        else
          same = same && text == reference;
      }
      out << "digest " << digest(reference) << '\n';
      out << (same ? "determinism: PASS" : "determinism: FAIL") << '\n';
      return same ? kExitOk : kExitRuntimeError;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitRuntimeError;
}

}  // namespace ndnoma::harness
