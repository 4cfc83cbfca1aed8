#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "momlab/contamination.hpp"
#include "momlab/distributions.hpp"
#include "momlab/estimators.hpp"

namespace momlab {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct ExperimentPlan {
  std::string label = "sweep";
  DistributionSpec dist = DistributionSpec::gaussian();
  std::vector<EstimatorSpec> estimators;
  AttackKind attack = Identity{};
  std::vector<double> alpha_grid;  ///< strictly increasing, in [0, 1/2)
  std::size_t n = 10000;
  double delta = 0.05;
  std::size_t n_rep = 100;
  std::uint64_t master_seed = kDefaultSeed;

  bool operator==(const ExperimentPlan&) const = default;
};

/// Throws ParameterError for malformed fields and ContractError when an
/// estimator's block rule rejects some alpha of the grid.
void validate(const ExperimentPlan& plan);

struct ErrorQuantileRecord {
  std::string label;
  std::string estimator;
  std::string attack;
  double alpha = 0.0;
  std::size_t n = 0;
  std::size_t k = 0;  ///< 0 for estimators without blocks
  double delta = 0.0;
  std::size_t n_rep = 0;
  double error_q = 0.0;       ///< ceil((1-delta) n_rep)-th smallest error
  double error_median = 0.0;  ///< ceil(n_rep/2)-th smallest error
  std::uint64_t master_seed = 0;
};

/// |estimate - mu| for one replication. The clean draw, the attack and the
/// partition each use their own substream of (master_seed, replication_index).
double run_replication(const DistributionSpec& dist, const EstimatorSpec& estimator,
                       const AttackKind& attack, double alpha, std::size_t n, double delta,
                       std::size_t replication_index, std::uint64_t master_seed);

/// errors[e][a][rep] for estimator e and alpha_grid[a]; each entry equals the
/// corresponding run_replication value bit for bit.
using ErrorTable = std::vector<std::vector<std::vector<double>>>;
ErrorTable run_errors(const ExperimentPlan& plan, unsigned threads = 1);

/// One record per (estimator, alpha), sorted by estimator label then alpha.
/// The output does not depend on `threads`.
std::vector<ErrorQuantileRecord> run_sweep(const ExperimentPlan& plan, unsigned threads = 1);

/// Block count used for `estimator` at this alpha (0 when it has none).
std::size_t blocks_used(const EstimatorSpec& estimator, std::size_t n, double alpha, double delta);

enum class SlopeStatistic { Quantile, Median };

struct SlopeFit {
  std::string label;
  std::string estimator;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Least squares of log(error) on log(alpha) over records with alpha in
/// [lo, hi] and a positive error. Needs at least three such records.
SlopeFit fit_slope(const std::vector<ErrorQuantileRecord>& records, double lo, double hi,
                   SlopeStatistic statistic = SlopeStatistic::Quantile);

/// Fits every (label, estimator) group of the records separately.
std::vector<SlopeFit> fit_slopes(const std::vector<ErrorQuantileRecord>& records, double lo,
                                 double hi, SlopeStatistic statistic = SlopeStatistic::Quantile);

/// count points from lo to hi evenly spaced in log; the ends are exact.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

struct FigurePreset {
  std::string id;
  std::vector<ExperimentPlan> plans;
  double reference_slope = 0.5;
  std::string reference_label;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Configurations for figures "1a", "1b", "1c" and "4" with n scaled by
/// `scale` in (0, 1]. Unknown ids throw ParameterError.
FigurePreset figure_preset(const std::string& id, double scale);

void write_results_csv(std::ostream& os, const std::vector<ErrorQuantileRecord>& records);
void write_slopes_csv(std::ostream& os, const std::vector<SlopeFit>& fits);

}  // namespace momlab
