#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace momlab {

/// k = max{ceil(log(2/delta) / (1/2 - 1/gamma)^2), ceil(gamma alpha n)}.
struct HeavyTail {
  double gamma = 3.0;
  bool operator==(const HeavyTail&) const = default;
};
/// k = ceil(xi alpha^exponent n).
struct PowerLaw {
  double xi = 4.0;
  double exponent = 2.0 / 3.0;
  bool operator==(const PowerLaw&) const = default;
};
/// k = ceil(beta n).
struct Fraction {
  double beta = 0.2;
  bool operator==(const Fraction&) const = default;
};

using BlockRule = std::variant<HeavyTail, PowerLaw, Fraction>;

/// Config-grammar form, e.g. "heavy_tail(3)".
std::string to_string(const BlockRule& rule);

struct BlockCount {
  std::size_t k = 1;
  bool clamped = false;  ///< the raw formula fell outside [1, n]
};

/// Evaluates the rule and clamps to [1, n]. Throws ContractError naming the
/// failed hypothesis (alpha range, delta range, rule parameter range).
BlockCount resolve_blocks(const BlockRule& rule, std::size_t n, double alpha, double delta);

enum class Regime { IidTermDominant, BiasTermDominant };
std::string to_string(Regime regime);

struct BoundValue {
  double value = 0.0;
  double constant_used = 0.0;
  Regime regime = Regime::IidTermDominant;
};

/// 2 sqrt(2 + sqrt 2) ((1/2 - 1/gamma)^{-3/2} + sqrt(gamma) (1/2 - 1/gamma)^{-1/2}).
double finite_variance_constant(double gamma);

/// C(gamma) sigma (sqrt(log(2/delta)/n) + sqrt(alpha)), gamma in (2, 2.5], alpha <= 0.4.
BoundValue bound_finite_variance(std::size_t n, double alpha, double delta, double gamma,
                                 double sigma);

/// C v_r^{1/(1+r)} ((log(2/delta)/n)^{r/(1+r)} + alpha^{r/(1+r)}). Only the order
/// of C is known, so the default is (1/2 - 1/gamma)^{-(2r+1)/(1+r)} with a unit
/// prefactor; pass `constant_override` to supply another value.
BoundValue bound_infinite_variance(std::size_t n, double alpha, double delta, double gamma,
                                   double v_r, double r,
                                   std::optional<double> constant_override = std::nullopt);

using QuantileAccessor = std::function<double(double)>;

/// max{Q_m(1/2 + s), -Q_m(1/2 - s)} with s = sqrt(log(2/delta)/(2k)) + alpha m.
/// Requires s < 1/2.
double bound_general_quantile(const QuantileAccessor& q_m, std::size_t k, std::size_t m,
                              double alpha, double delta);

enum class BiasClass { P2, P1PlusR, SubExponential, SubGaussianS, Symmetric };

/// Parses "P2", "P_1plus_r", "SubExponential", "SG_s", "Symmetric".
BiasClass parse_bias_class(std::string_view name);

/// Exponent e of the MoM asymptotic bias alpha^e for the class.
double asymptotic_bias_order(BiasClass cls, std::optional<double> r = std::nullopt,
                             std::optional<int> s = std::nullopt);

}  // namespace momlab
