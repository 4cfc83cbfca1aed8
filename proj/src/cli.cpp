#include "momlab/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "momlab/config.hpp"
#include "momlab/errors.hpp"
#include "momlab/format.hpp"
#include "momlab/harness.hpp"
#include "momlab/quantlab.hpp"
#include "momlab/rng.hpp"
#include "momlab/svg.hpp"
#include "momlab/theory.hpp"
#include "momlab/verify.hpp"
#include "momlab/version.hpp"

namespace momlab {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kContract = 3;

// A bad MOMLAB_SEED is a usage error.
std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("MOMLAB_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::uint64_t v = 0;
  const char* end = raw + std::char_traits<char>::length(raw);
  auto [ptr, ec] = std::from_chars(raw, end, v);
  if (ec != std::errc() || ptr != end)
    throw ParameterError("MOMLAB_SEED must be an unsigned 64-bit integer, got '" +
                         std::string(raw) + "'");
  return v;
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
  os << content;
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string results_text(const std::vector<ErrorQuantileRecord>& records) {
  std::ostringstream os;
  write_results_csv(os, records);
  return os.str();
}

std::string slopes_text(const std::vector<SlopeFit>& fits) {
  std::ostringstream os;
  write_slopes_csv(os, fits);
  return os.str();
}

void progress(std::ostream& err, const std::vector<ErrorQuantileRecord>& records) {
  for (const auto& r : records) {
    err << r.label << "  " << r.estimator << "  alpha=" << format_double(r.alpha) << "  k=" << r.k
        << "  error_q=" << format_double(r.error_q) << '\n';
  }
}

struct SweepArgs {
  std::string config;
  bool dump = false;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load_config(args.config);
  if (auto s = seed_from_env()) cfg.plan.master_seed = *s;
  if (args.dump) {
    out << dump_config(cfg);
    return kOk;
  }
  ExperimentPlan plan = cfg.plan;
  plan.n = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(plan.n) * cfg.scale)));
  const auto records = run_sweep(plan, cfg.threads);
  progress(err, records);
  const fs::path dir(cfg.out);
  write_file(dir / "results.csv", results_text(records));

  // slopes over the positive part of the grid, when there are enough points
  std::vector<double> positive;
  for (double a : plan.alpha_grid)
    if (a > 0.0) positive.push_back(a);
  if (positive.size() >= 3) {
    try {
      write_file(dir / "slopes.csv",
                 slopes_text(fit_slopes(records, positive.front(), positive.back())));
    } catch (const ParameterError& e) {
      err << "slopes skipped: " << e.what() << '\n';
    }
  }
  if (cfg.svg) {
    auto fig = figure_from_records(records, plan.label, std::nullopt);
    fig.version = kVersion;
    write_file(dir / "results.svg", render_svg(fig));
  }
  out << "wrote " << (dir / "results.csv").string() << '\n';
  return kOk;
}

struct FigureArgs {
  std::string id;
  double scale = 0.1;
  std::string out = "figures";
  unsigned threads = 0;
};

int cmd_figure(const FigureArgs& args, std::ostream& out, std::ostream& err) {
  FigurePreset preset = figure_preset(args.id, args.scale);
  if (auto s = seed_from_env())
    for (auto& p : preset.plans) p.master_seed = *s;
  const unsigned threads = args.threads ? args.threads : default_threads();
  std::vector<ErrorQuantileRecord> records;
  for (const auto& plan : preset.plans) {
    const auto part = run_sweep(plan, threads);
    progress(err, part);
    records.insert(records.end(), part.begin(), part.end());
  }
  const auto fits = fit_slopes(records, preset.window_lo, preset.window_hi);
  const fs::path dir(args.out);
  write_file(dir / "results.csv", results_text(records));
  write_file(dir / "slopes.csv", slopes_text(fits));
  auto fig = figure_from_records(records, "figure " + preset.id + ", n = " +
                                              std::to_string(preset.plans.front().n),
                                 SvgReference{preset.reference_slope, preset.reference_label});
  fig.version = kVersion;
  write_file(dir / ("figure_" + preset.id + ".svg"), render_svg(fig));
  for (const auto& f : fits) {
    out << f.estimator << "  slope=" << format_double(f.slope)
        << "  r2=" << format_double(f.r_squared) << "  reference=" << format_double(preset.reference_slope)
        << '\n';
  }
  out << "wrote " << dir.string() << '\n';
  return kOk;
}

struct VerifyArgs {
  std::string suite;
  std::string out = ".";
  unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream&) {
  VerifyOptions opt;
  if (auto s = seed_from_env()) opt.seed = *s;
  opt.threads = args.threads ? args.threads : default_threads();
  const auto results = run_verify(args.suite, opt);
  std::size_t width = 5;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << r.name << std::setw(22) << r.anchor
        << std::setw(24) << format_double(r.measured) << ' ' << r.relation << ' ' << std::setw(24)
        << format_double(r.threshold) << ' ' << (r.pass ? "pass" : "FAIL") << '\n';
  }
  std::ostringstream csv;
  write_verify_csv(csv, results);
  const fs::path path = fs::path(args.out) / ("verify_" + args.suite + ".csv");
  write_file(path, csv.str());
  const bool ok = all_passed(results);
  out << (ok ? "all checks passed" : "some checks FAILED") << "; report " << path.string() << '\n';
  return ok ? kOk : kVerifyFailed;
}

struct BoundArgs {
  std::string theorem;
  std::size_t n = 0;
  double alpha = 0.0;
  double delta = 0.05;
  std::optional<double> gamma;
  std::optional<double> sigma;
  std::optional<double> r;
  std::optional<double> v_r;
  std::optional<double> constant;
  std::optional<std::string> dist;
  std::optional<std::size_t> k;
  std::size_t reps = 100000;
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  std::optional<DistributionSpec> dist;
  if (a.dist) dist = parse_distribution(*a.dist);
  std::string params;
  std::string constant;
  std::string regime;
  double value = 0.0;

  if (a.theorem == "3.2") {
    const double gamma = a.gamma.value_or(2.5);
    const double sigma = a.sigma ? *a.sigma : dist ? dist->sigma() : 1.0;
    const auto b = bound_finite_variance(a.n, a.alpha, a.delta, gamma, sigma);
    params = "gamma=" + format_double(gamma) + ";sigma=" + format_double(sigma);
    constant = format_double(b.constant_used);
    regime = to_string(b.regime);
    value = b.value;
  } else if (a.theorem == "3.3") {
    const double gamma = a.gamma.value_or(2.5);
    std::optional<double> r = a.r, v = a.v_r;
    if (dist && dist->moments().v_r) {
      if (!r) r = dist->moments().v_r->r;
      if (!v && *r == dist->moments().v_r->r) v = dist->moments().v_r->value;
    }
    if (!r || !v) throw ParameterError("theorem 3.3 needs --r and --v-r (or a --dist with a known v_r)");
    const auto b = bound_infinite_variance(a.n, a.alpha, a.delta, gamma, *v, *r, a.constant);
    params = "gamma=" + format_double(gamma) + ";r=" + format_double(*r) + ";v_r=" + format_double(*v);
    constant = format_double(b.constant_used);
    regime = to_string(b.regime);
    value = b.value;
  } else {
    const DistributionSpec d = dist.value_or(DistributionSpec::gaussian());
    const std::size_t k = a.k ? *a.k : resolve_blocks(HeavyTail{a.gamma.value_or(3.0)}, a.n, a.alpha, a.delta).k;
    if (k < 1 || k > a.n) throw ParameterError("--k must lie in [1, n]");
    const std::size_t m = a.n / k;
    QuantileAccessor q_m;
    if (block_mean_quantile_analytic(d, m, 0.5)) {
      q_m = [&](double q) { return *block_mean_quantile_analytic(d, m, q); };
    } else {
      const std::uint64_t seed = seed_from_env().value_or(kDefaultSeed);
      auto draws = std::make_shared<std::vector<double>>(
          block_mean_draws(d, m, a.reps, derive_seed(seed, "bound", 0), default_threads()));
      q_m = [draws](double q) { return sorted_quantile(*draws, q); };
    }
    value = bound_general_quantile(q_m, k, m, a.alpha, a.delta);
    params = "dist=" + d.to_string() + ";k=" + std::to_string(k) + ";m=" + std::to_string(m);
  }
  out << "theorem,n,alpha,delta,params,constant,value,regime\n";
  out << a.theorem << ',' << a.n << ',' << format_double(a.alpha) << ',' << format_double(a.delta)
      << ',' << csv_field(params) << ',' << constant << ',' << format_double(value) << ','
      << regime << '\n';
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Median-of-means under adversarial contamination: sweeps, figures, bounds, checks",
               "momlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment sweep from a config file");
  sweep_cmd->add_option("config", sweep.config, "Config file")->required();
  sweep_cmd->add_flag("--dump-config", sweep.dump, "Print the normalized config and exit");

  FigureArgs figure;
  auto* figure_cmd = app.add_subcommand("figure", "Reproduce a figure preset (1a, 1b, 1c, 4)");
  figure_cmd->add_option("id", figure.id, "Figure id")->required();
  figure_cmd->add_option("--scale", figure.scale, "Sample-size scale in (0, 1]")->capture_default_str();
  figure_cmd->add_option("--out", figure.out, "Output directory")->capture_default_str();
  figure_cmd->add_option("--threads", figure.threads, "Worker threads (0: all cores)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", verify.suite, "lemmas, bounds, invariants or all")->required();
  verify_cmd->add_option("--out", verify.out, "Directory for the CSV report")->capture_default_str();
  verify_cmd->add_option("--threads", verify.threads, "Worker threads (0: all cores)");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate an error bound");
  bound_cmd->add_option("--theorem", bound.theorem, "3.2, 3.3 or 3.1")
      ->required()
      ->check(CLI::IsMember({"3.2", "3.3", "3.1"}));
  bound_cmd->add_option("--n", bound.n, "Sample size")->required();
  bound_cmd->add_option("--alpha", bound.alpha, "Contamination level")->required();
  bound_cmd->add_option("--delta", bound.delta, "Failure probability")->required();
  bound_cmd->add_option("--gamma", bound.gamma, "Block-rule gamma");
  bound_cmd->add_option("--sigma", bound.sigma, "Standard deviation (3.2)");
  bound_cmd->add_option("--r", bound.r, "Moment order r in (0,1) (3.3)");
  bound_cmd->add_option("--v-r", bound.v_r, "Absolute (1+r)-th central moment (3.3)");
  bound_cmd->add_option("--constant", bound.constant, "Constant override (3.3)");
  bound_cmd->add_option("--dist", bound.dist, "Distribution, e.g. 'gaussian(0, 1)'");
  bound_cmd->add_option("--k", bound.k, "Block count (3.1; default from heavy_tail(gamma))");
  bound_cmd->add_option("--reps", bound.reps, "Draws for an empirical Q_m (3.1)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(sweep, out, err);
    if (*figure_cmd) return cmd_figure(figure, out, err);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    return cmd_bound(bound, out);
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    err << "hypothesis violated: " << e.hypothesis() << '\n';
    return kContract;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
}

}  // namespace momlab
