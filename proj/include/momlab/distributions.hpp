#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "momlab/rng.hpp"

namespace momlab {

struct Gaussian {
  double mean = 0.0;
  double sd = 1.0;
  bool operator==(const Gaussian&) const = default;
};
struct StudentT {
  double nu = 3.0;
  bool operator==(const StudentT&) const = default;
};
/// Generalized Pareto with shape xi, scale and location; finite mean needs xi < 1.
struct GeneralizedPareto {
  double shape = 0.0;
  double scale = 1.0;
  double location = 0.0;
  bool operator==(const GeneralizedPareto&) const = default;
};
/// |Z| for standard normal Z.
struct HalfNormal {
  bool operator==(const HalfNormal&) const = default;
};
/// X such that -X ~ Exp(rate).
struct NegativeExponential {
  double rate = 1.0;
  bool operator==(const NegativeExponential&) const = default;
};
struct PointMass {
  double value = 0.0;
  bool operator==(const PointMass&) const = default;
};

using Family = std::variant<Gaussian, StudentT, GeneralizedPareto, HalfNormal,
                            NegativeExponential, PointMass>;

enum class ClassTag { P2, P1PlusR, SubGaussian, SubExponential, Symmetric, P3 };

std::string to_string(ClassTag tag);

/// Absolute (1+r)-th central moment E|X - mu|^{1+r}.
struct AbsoluteMoment {
  double r = 0.0;
  double value = 0.0;
};

struct Moments {
  double mu = 0.0;
  double sigma = 0.0;  ///< +inf when the variance is infinite
  std::optional<AbsoluteMoment> v_r;
  std::set<ClassTag> class_tags;

  bool finite_variance() const;
  bool has(ClassTag tag) const { return class_tags.count(tag) != 0; }
};

/// A sampleable distribution together with its exact moment metadata.
/// Construction validates the family parameters and throws ParameterError.
class DistributionSpec {
 public:
  explicit DistributionSpec(Family family);

  static DistributionSpec gaussian(double mean = 0.0, double sd = 1.0) {
    return DistributionSpec(Gaussian{mean, sd});
  }
  static DistributionSpec student_t(double nu) { return DistributionSpec(StudentT{nu}); }
  static DistributionSpec gpd(double shape, double scale = 1.0, double location = 0.0) {
    return DistributionSpec(GeneralizedPareto{shape, scale, location});
  }
  static DistributionSpec half_normal() { return DistributionSpec(HalfNormal{}); }
  static DistributionSpec negative_exponential(double rate = 1.0) {
    return DistributionSpec(NegativeExponential{rate});
  }
  static DistributionSpec point_mass(double value) { return DistributionSpec(PointMass{value}); }

  const Family& family() const { return family_; }
  const Moments& moments() const { return moments_; }
  double mu() const { return moments_.mu; }
  double sigma() const { return moments_.sigma; }
  bool has(ClassTag tag) const { return moments_.has(tag); }
  bool is_continuous() const { return !std::holds_alternative<PointMass>(family_); }

  /// Config-grammar form, e.g. "gpd(0.45, 1, 0)".
  std::string to_string() const;

  bool operator==(const DistributionSpec& other) const { return family_ == other.family_; }

 private:
  Family family_;
  Moments moments_;
};

/// `count` i.i.d. draws, deterministic in (spec, count, seed).
std::vector<double> sample(const DistributionSpec& spec, std::size_t count, std::uint64_t seed);

/// Fills `out` with i.i.d. draws from the given stream.
void sample_into(const DistributionSpec& spec, std::span<double> out, Stream& rng);

/// One draw from the given stream.
double draw(const DistributionSpec& spec, Stream& rng);

inline const Moments& moments(const DistributionSpec& spec) { return spec.moments(); }

/// Exact quantile Q_m(q) of the centred block mean B_m = mean(X_1..X_m) - mu.
/// Supported for Gaussian and NegativeExponential; nullopt otherwise.
std::optional<double> block_mean_quantile_analytic(const DistributionSpec& spec, std::size_t m,
                                                   double q);

/// Population quantile of X; nullopt for PointMass.
std::optional<double> quantile(const DistributionSpec& spec, double q);

}  // namespace momlab
