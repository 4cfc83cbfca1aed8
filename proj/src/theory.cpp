#include "momlab/theory.hpp"

#include <algorithm>
#include <cmath>

#include "momlab/errors.hpp"
#include "momlab/format.hpp"

namespace momlab {

namespace {

// ceil that forgives products like 3 * 0.01 * 1e6 = 30000.000000000004
double tolerant_ceil(double x) { return std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))); }

void check_common(double alpha, double delta) {
  if (!(alpha >= 0.0 && alpha < 0.5)) throw ContractError("requires 0 <= α < 1/2");
  if (!(delta > 0.0 && delta < 1.0)) throw ContractError("requires δ in (0,1)");
}

void check_heavy_tail_hypotheses(std::size_t n, double alpha, double delta, double gamma) {
  if (alpha > 0.4) throw ContractError("Theorem 3.2 requires α ≤ 0.4");
  const double gap = 0.5 - 1.0 / gamma;
  if (!(delta > 2.0 * std::exp(-gap * gap * static_cast<double>(n))))
    throw ContractError("Theorem 3.2 requires δ > 2exp(-(1/2-1/γ)^2 n)");
}

}  // namespace

std::string to_string(const BlockRule& rule) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, HeavyTail>)
          return "heavy_tail(" + format_double(r.gamma) + ")";
        else if constexpr (std::is_same_v<T, PowerLaw>)
          return "power(" + format_double(r.xi) + ", " + format_double(r.exponent) + ")";
        else
          return "fraction(" + format_double(r.beta) + ")";
      },
      rule);
}

std::string to_string(Regime regime) {
  return regime == Regime::IidTermDominant ? "iid_term_dominant" : "bias_term_dominant";
}

BlockCount resolve_blocks(const BlockRule& rule, std::size_t n, double alpha, double delta) {
  if (n == 0) throw ParameterError("resolve_blocks: n must be at least 1");
  check_common(alpha, delta);
  const auto nd = static_cast<double>(n);
  double raw = 0.0;
  if (const auto* ht = std::get_if<HeavyTail>(&rule)) {
    if (!(ht->gamma > 2.0)) throw ContractError("heavy_tail rule requires γ > 2");
    check_heavy_tail_hypotheses(n, alpha, delta, ht->gamma);
    const double gap = 0.5 - 1.0 / ht->gamma;
    raw = std::max(tolerant_ceil(std::log(2.0 / delta) / (gap * gap)),
                   tolerant_ceil(ht->gamma * alpha * nd));
  } else if (const auto* pl = std::get_if<PowerLaw>(&rule)) {
    if (!(pl->xi > 0.0)) throw ContractError("power rule requires ξ > 0");
    if (!(pl->exponent > 0.0 && pl->exponent <= 1.0))
      throw ContractError("power rule requires exponent in (0,1]");
    raw = tolerant_ceil(pl->xi * std::pow(alpha, pl->exponent) * nd);
  } else {
    const double beta = std::get<Fraction>(rule).beta;
    if (!(beta > 0.0 && beta <= 1.0)) throw ContractError("fraction rule requires β in (0,1]");
    raw = tolerant_ceil(beta * nd);
  }
  BlockCount out;
  if (raw < 1.0) {
    out.k = 1;
    out.clamped = true;
  } else if (raw > nd) {
    out.k = n;
    out.clamped = true;
  } else {
    out.k = static_cast<std::size_t>(raw);
  }
  return out;
}

double finite_variance_constant(double gamma) {
  const double gap = 0.5 - 1.0 / gamma;
  return 2.0 * std::sqrt(2.0 + std::sqrt(2.0)) *
         (std::pow(gap, -1.5) + std::sqrt(gamma) / std::sqrt(gap));
}

BoundValue bound_finite_variance(std::size_t n, double alpha, double delta, double gamma,
                                 double sigma) {
  if (n == 0) throw ParameterError("bound: n must be at least 1");
  check_common(alpha, delta);
  if (!(gamma > 2.0 && gamma <= 2.5)) throw ContractError("Theorem 3.2 requires γ in (2, 2.5]");
  check_heavy_tail_hypotheses(n, alpha, delta, gamma);
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw ContractError("Theorem 3.2 requires finite variance");
  const double iid = std::sqrt(std::log(2.0 / delta) / static_cast<double>(n));
  const double bias = std::sqrt(alpha);
  BoundValue out;
  out.constant_used = finite_variance_constant(gamma);
  out.value = out.constant_used * sigma * (iid + bias);
  out.regime = iid >= bias ? Regime::IidTermDominant : Regime::BiasTermDominant;
  return out;
}

BoundValue bound_infinite_variance(std::size_t n, double alpha, double delta, double gamma,
                                   double v_r, double r, std::optional<double> constant_override) {
  if (n == 0) throw ParameterError("bound: n must be at least 1");
  check_common(alpha, delta);
  if (!(r > 0.0 && r < 1.0)) throw ContractError("Theorem 3.3 requires r in (0,1)");
  if (!(gamma > 2.0 && gamma <= 2.5)) throw ContractError("Theorem 3.3 requires γ in (2, 2.5]");
  if (alpha > 0.4) throw ContractError("Theorem 3.3 requires α ≤ 0.4");
  const double gap = 0.5 - 1.0 / gamma;
  if (!(delta > 2.0 * std::exp(-gap * gap * static_cast<double>(n))))
    throw ContractError("Theorem 3.3 requires δ > 2exp(-(1/2-1/γ)^2 n)");
  if (!(v_r > 0.0) || !std::isfinite(v_r))
    throw ContractError("Theorem 3.3 requires a finite positive v_r");
  if (constant_override && !(*constant_override > 0.0))
    throw ParameterError("bound: constant override must be positive");
  const double e = r / (1.0 + r);
  const double iid = std::pow(std::log(2.0 / delta) / static_cast<double>(n), e);
  const double bias = std::pow(alpha, e);
  BoundValue out;
  out.constant_used =
      constant_override.value_or(std::pow(gap, -(2.0 * r + 1.0) / (1.0 + r)));
  out.value = out.constant_used * std::pow(v_r, 1.0 / (1.0 + r)) * (iid + bias);
  out.regime = iid >= bias ? Regime::IidTermDominant : Regime::BiasTermDominant;
  return out;
}

double bound_general_quantile(const QuantileAccessor& q_m, std::size_t k, std::size_t m,
                              double alpha, double delta) {
  if (k == 0 || m == 0) throw ParameterError("bound: k and m must be at least 1");
  check_common(alpha, delta);
  const double s = std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(k))) +
                   alpha * static_cast<double>(m);
  if (!(s < 0.5))
    throw ContractError("Theorem 3.1 requires sqrt(log(2/δ)/2k) + αm < 1/2");
  return std::max(q_m(0.5 + s), -q_m(0.5 - s));
}

BiasClass parse_bias_class(std::string_view name) {
  if (name == "P2") return BiasClass::P2;
  if (name == "P_1plus_r") return BiasClass::P1PlusR;
  if (name == "SubExponential") return BiasClass::SubExponential;
  if (name == "SG_s") return BiasClass::SubGaussianS;
  if (name == "Symmetric") return BiasClass::Symmetric;
  throw ParameterError("unknown distribution class: " + std::string(name));
}

double asymptotic_bias_order(BiasClass cls, std::optional<double> r, std::optional<int> s) {
  switch (cls) {
    case BiasClass::P2: return 0.5;
    case BiasClass::P1PlusR:
      if (!r || !(*r > 0.0 && *r < 1.0)) throw ParameterError("P_1plus_r needs r in (0,1)");
      return *r / (1.0 + *r);
    case BiasClass::SubExponential: return 2.0 / 3.0;
    case BiasClass::SubGaussianS:
      if (!s || *s < 3) throw ParameterError("SG_s needs an integer s >= 3");
      return static_cast<double>(*s) / (*s + 1.0);
    case BiasClass::Symmetric: return 1.0;
  }
  throw ParameterError("unknown distribution class");
}

}  // namespace momlab
