#include "momlab/distributions.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "momlab/errors.hpp"
#include "momlab/format.hpp"

namespace momlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// r used for the v_r metadata: 90% of the largest admissible exponent, capped below 1.
double moment_exponent(double r_sup) { return 0.9 * std::min(1.0, r_sup); }

double gpd_quantile(const GeneralizedPareto& g, double q) {
  const double tail = -std::log1p(-q);  // -log(1-q)
  if (g.shape == 0.0) return g.location + g.scale * tail;
  return g.location + g.scale * std::expm1(g.shape * tail) / g.shape;
}

double gpd_absolute_moment(const GeneralizedPareto& g, double r) {
  // Standardized Y = (X - location) / scale with density (1 + xi y)^{-q},
  // q = 1/xi + 1, and mean mu_y = 1/(1 - xi). Above the mean the integral is a
  // Beta function: int_0^inf t^p (1 + b t)^{-q} dt = b^{-(p+1)} B(p+1, q-p-1)
  // after factoring c = 1 + xi mu_y. Quadrature alone is unreliable here
  // because the integrand decays only like t^{p-q}.
  const double xi = g.shape;
  const double p = 1.0 + r;
  const double q = 1.0 / xi + 1.0;
  const double mu_y = 1.0 / (1.0 - xi);
  const double c = 1.0 + xi * mu_y;
  const double b = xi / c;
  const double upper = std::pow(c, -q) * std::pow(b, -(p + 1.0)) *
                       boost::math::beta(p + 1.0, q - p - 1.0);
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double lower = integrator.integrate(
      [&](double y) { return std::pow(mu_y - y, p) * std::pow(1.0 + xi * y, -q); }, 0.0, mu_y);
  return std::pow(g.scale, p) * (upper + lower);
}

double student_t_absolute_moment(double nu, double p) {
  using boost::math::tgamma;
  return std::pow(nu, p / 2.0) * tgamma((p + 1.0) / 2.0) * tgamma((nu - p) / 2.0) /
         (std::sqrt(std::numbers::pi) * tgamma(nu / 2.0));
}

Moments compute_moments(const Family& family) {
  using enum ClassTag;
  Moments mo;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          if (!(f.sd > 0.0) || !std::isfinite(f.mean) || !std::isfinite(f.sd))
            throw ParameterError("gaussian: sd must be positive and finite");
          mo.mu = f.mean;
          mo.sigma = f.sd;
          mo.class_tags = {P2, P1PlusR, SubGaussian, SubExponential, Symmetric, P3};
        } else if constexpr (std::is_same_v<T, StudentT>) {
          if (!(f.nu > 1.0) || !std::isfinite(f.nu))
            throw ParameterError("t: degrees of freedom must exceed 1 for a finite mean");
          mo.mu = 0.0;
          mo.class_tags = {Symmetric, P1PlusR};
          if (f.nu > 2.0) {
            mo.sigma = std::sqrt(f.nu / (f.nu - 2.0));
            mo.class_tags.insert(P2);
          } else {
            mo.sigma = kInf;
            const double r = moment_exponent(f.nu - 1.0);
            mo.v_r = AbsoluteMoment{r, student_t_absolute_moment(f.nu, 1.0 + r)};
          }
          if (f.nu > 3.0) mo.class_tags.insert(P3);
        } else if constexpr (std::is_same_v<T, GeneralizedPareto>) {
          if (!(f.scale > 0.0) || !std::isfinite(f.scale) || !std::isfinite(f.location) ||
              !std::isfinite(f.shape))
            throw ParameterError("gpd: scale must be positive and finite");
          if (!(f.shape < 1.0)) throw ParameterError("gpd: shape must be < 1 for a finite mean");
          mo.mu = f.location + f.scale / (1.0 - f.shape);
          mo.class_tags = {P1PlusR};
          if (f.shape < 0.5) {
            mo.sigma = f.scale / ((1.0 - f.shape) * std::sqrt(1.0 - 2.0 * f.shape));
            mo.class_tags.insert(P2);
          } else {
            mo.sigma = kInf;
            const double r = moment_exponent(1.0 / f.shape - 1.0);
            mo.v_r = AbsoluteMoment{r, gpd_absolute_moment(f, r)};
          }
          if (f.shape < 1.0 / 3.0) mo.class_tags.insert(P3);
          if (f.shape <= 0.0) mo.class_tags.insert(SubExponential);
          if (f.shape < 0.0) mo.class_tags.insert(SubGaussian);
        } else if constexpr (std::is_same_v<T, HalfNormal>) {
          mo.mu = std::sqrt(2.0 / std::numbers::pi);
          mo.sigma = std::sqrt(1.0 - 2.0 / std::numbers::pi);
          mo.class_tags = {P2, P1PlusR, SubGaussian, SubExponential, P3};
        } else if constexpr (std::is_same_v<T, NegativeExponential>) {
          if (!(f.rate > 0.0) || !std::isfinite(f.rate))
            throw ParameterError("negexp: rate must be positive and finite");
          mo.mu = -1.0 / f.rate;
          mo.sigma = 1.0 / f.rate;
          mo.class_tags = {P2, P1PlusR, SubExponential, P3};
        } else {
          if (!std::isfinite(f.value)) throw ParameterError("point: value must be finite");
          mo.mu = f.value;
          mo.sigma = 0.0;
          mo.class_tags = {P2, P1PlusR, SubGaussian, SubExponential, Symmetric, P3};
        }
      },
      family);
  return mo;
}

// Marsaglia-Tsang; shape < 1 handled by the U^{1/shape} boost.
double gamma_variate(double shape, Stream& rng) {
  if (shape < 1.0) {
    const double u = rng.uniform();
    return gamma_variate(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double chi_square_variate(double nu, Stream& rng) {
  if (nu == std::floor(nu) && nu <= 1000.0) {
    double sum = 0.0;
    for (int i = 0; i < static_cast<int>(nu); ++i) {
      const double z = rng.normal();
      sum += z * z;
    }
    return sum;
  }
  return 2.0 * gamma_variate(nu / 2.0, rng);
}

}  // namespace

std::string to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::P2: return "P2";
    case ClassTag::P1PlusR: return "P_1plus_r";
    case ClassTag::SubGaussian: return "SubGaussian";
    case ClassTag::SubExponential: return "SubExponential";
    case ClassTag::Symmetric: return "Symmetric";
    case ClassTag::P3: return "P3";
  }
  return "?";
}

bool Moments::finite_variance() const { return std::isfinite(sigma); }

DistributionSpec::DistributionSpec(Family family)
    : family_(std::move(family)), moments_(compute_moments(family_)) {}

std::string DistributionSpec::to_string() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Gaussian>)
          return "gaussian(" + format_double(f.mean) + ", " + format_double(f.sd) + ")";
        else if constexpr (std::is_same_v<T, StudentT>)
          return "t(" + format_double(f.nu) + ")";
        else if constexpr (std::is_same_v<T, GeneralizedPareto>)
          return "gpd(" + format_double(f.shape) + ", " + format_double(f.scale) + ", " +
                 format_double(f.location) + ")";
        else if constexpr (std::is_same_v<T, HalfNormal>)
          return "halfnormal";
        else if constexpr (std::is_same_v<T, NegativeExponential>)
          return "negexp(" + format_double(f.rate) + ")";
        else
          return "point(" + format_double(f.value) + ")";
      },
      family_);
}

double draw(const DistributionSpec& spec, Stream& rng) {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return f.mean + f.sd * rng.normal();
        } else if constexpr (std::is_same_v<T, StudentT>) {
          const double z = rng.normal();
          return z / std::sqrt(chi_square_variate(f.nu, rng) / f.nu);
        } else if constexpr (std::is_same_v<T, GeneralizedPareto>) {
          const double tail = -std::log(rng.uniform());
          if (f.shape == 0.0) return f.location + f.scale * tail;
          return f.location + f.scale * std::expm1(f.shape * tail) / f.shape;
        } else if constexpr (std::is_same_v<T, HalfNormal>) {
          return std::abs(rng.normal());
        } else if constexpr (std::is_same_v<T, NegativeExponential>) {
          return std::log(rng.uniform()) / f.rate;
        } else {
          return f.value;
        }
      },
      spec.family());
}

void sample_into(const DistributionSpec& spec, std::span<double> out, Stream& rng) {
  for (double& x : out) x = draw(spec, rng);
}

std::vector<double> sample(const DistributionSpec& spec, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw ParameterError("sample: count must be at least 1");
  std::vector<double> out(count);
  Stream rng(seed);
  sample_into(spec, out, rng);
  return out;
}

std::optional<double> block_mean_quantile_analytic(const DistributionSpec& spec, std::size_t m,
                                                   double q) {
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("block mean quantile: q must lie in (0,1)");
  if (m == 0) throw ParameterError("block mean quantile: m must be at least 1");
  const auto md = static_cast<double>(m);
  if (const auto* g = std::get_if<Gaussian>(&spec.family())) {
    return g->sd / std::sqrt(md) * boost::math::quantile(boost::math::normal(), q);
  }
  if (const auto* e = std::get_if<NegativeExponential>(&spec.family())) {
    // -(block mean) ~ Gamma(m, 1/(m rate)); B_m = 1/rate - Gamma.
    const boost::math::gamma_distribution<> block(md, 1.0 / (md * e->rate));
    return 1.0 / e->rate - boost::math::quantile(boost::math::complement(block, q));
  }
  return std::nullopt;
}

std::optional<double> quantile(const DistributionSpec& spec, double q) {
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("quantile: q must lie in (0,1)");
  const boost::math::normal standard;
  return std::visit(
      [&](const auto& f) -> std::optional<double> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Gaussian>)
          return f.mean + f.sd * boost::math::quantile(standard, q);
        else if constexpr (std::is_same_v<T, StudentT>)
          return boost::math::quantile(boost::math::students_t(f.nu), q);
        else if constexpr (std::is_same_v<T, GeneralizedPareto>)
          return gpd_quantile(f, q);
        else if constexpr (std::is_same_v<T, HalfNormal>)
          return boost::math::quantile(standard, 0.5 + 0.5 * q);
        else if constexpr (std::is_same_v<T, NegativeExponential>)
          return std::log(q) / f.rate;  // P(X <= x) = exp(rate x) on x <= 0
        else
          return std::nullopt;
      },
      spec.family());
}

}  // namespace momlab
