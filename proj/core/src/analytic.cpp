#include "dipent/analytic.hpp"

#include "dipent/errors.hpp"
#include "dipent/hamiltonian.hpp"
#include "dipent/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace dipent {
namespace {

ConcurrenceBreakdown breakdown_from(std::array<double, 4> lambdas) {
  ConcurrenceBreakdown out;
  out.lambdas = lambdas;
  std::stable_sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>{});
  out.f = out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3];
  out.c = std::isnan(out.f) ? out.f : std::clamp(out.f, 0.0, 1.0);
  return out;
}

void check_finite(double beta) {
  if (!std::isfinite(beta)) throw ArgumentError("beta must be finite");
}

}  // namespace

TwoSpinZeroFieldEigs zero_field_eigs(double beta) {
  check_finite(beta);
  // Divide every exponential by e^shift, the largest of e^b, e^{|b|/2}.
  const double shift = std::max(beta, std::abs(beta) / 2.0);
  const double e1 = std::exp(beta - shift);
  const double em = std::exp(-beta / 2.0 - shift);
  const double ep = std::exp(beta / 2.0 - shift);
  const double z = 2.0 * e1 + em + ep;

  TwoSpinZeroFieldEigs out;
  out.lambdas = {e1 / z, em / z, e1 / z, ep / z};
  out.z0 = 2.0 * (std::cosh(beta / 2.0) + std::exp(beta));
  return out;
}

ConcurrenceBreakdown zero_field_concurrence_analytic(double beta) {
  ConcurrenceBreakdown out = breakdown_from(zero_field_eigs(beta).lambdas);
  if (beta >= 0.0) out.c = 0.0;
  return out;
}

double critical_beta_zero_field_exact() {
  const auto g = [](double x) { return (2.0 * x + 1.0) * x * x - 1.0; };
  double lo = 0.0;  // g < 0
  double hi = 1.0;  // g > 0
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 2.0 * std::log(0.5 * (lo + hi));
}

TwoSpinInFieldEigs two_spin_infield_eigs(double beta, double alpha, InFieldForm form) {
  check_finite(beta);
  if (!std::isfinite(alpha) || alpha < 0.0) throw ArgumentError("alpha must be finite and >= 0");

  TwoSpinInFieldEigs out;
  out.a = std::sqrt(9.0 + 16.0 * alpha * alpha);
  const double x = out.a * beta / 4.0;

  if (form == InFieldForm::legacy) {
    const double ch = std::cosh(x);
    const double sh = std::sinh(x);
    out.z = 2.0 * out.a * (std::exp(beta / 2.0) * std::cosh(beta / 4.0) + ch);
    out.b = std::sqrt(9.0 * ch + 16.0 * alpha * alpha);
    out.lambdas = {std::exp(beta / 4.0) / out.z, std::exp(3.0 * beta / 4.0) / out.z,
                   std::sqrt(2.0 * out.b * (out.b + 3.0 * sh) - out.a * out.a) / out.z,
                   std::sqrt(2.0 * out.b * (out.b - 3.0 * sh) - out.a * out.a) / out.z};
    return out;
  }

  const double shift = std::max({std::abs(x), beta / 4.0, 3.0 * beta / 4.0});
  const double ch = 0.5 * (std::exp(x - shift) + std::exp(-x - shift));
  const double sh = 0.5 * (std::exp(x - shift) - std::exp(-x - shift));
  const double e1 = std::exp(beta / 4.0 - shift);
  const double e3 = std::exp(3.0 * beta / 4.0 - shift);
  const double field = 4.0 * alpha * std::exp(-shift);

  out.log_shift = shift;
  out.z = out.a * (e3 + e1 + 2.0 * ch);
  out.b = std::sqrt(9.0 * ch * ch + field * field);
  out.lambdas = {out.a * e1 / out.z, out.a * e3 / out.z, (out.b + 3.0 * sh) / out.z,
                 (out.b - 3.0 * sh) / out.z};
  return out;
}

ConcurrenceBreakdown two_spin_infield_concurrence_analytic(double beta, double alpha,
                                                           InFieldForm form) {
  return breakdown_from(two_spin_infield_eigs(beta, alpha, form).lambdas);
}

InFieldDiscrepancy compare_infield_with_pipeline(double beta, double alpha, InFieldForm form) {
  const auto closed = two_spin_infield_concurrence_analytic(beta, alpha, form);
  const auto h = total_hamiltonian(build_chain(2), ModelParams{alpha, beta});
  const auto numeric = pair_concurrence(gibbs_state(h, beta), 1, 2);

  InFieldDiscrepancy d;
  for (std::size_t k = 0; k < 4; ++k) {
    const double diff = std::abs(closed.lambdas[k] - numeric.lambdas[k]);
    d.max_lambda_difference =
        std::isnan(diff) ? std::numeric_limits<double>::quiet_NaN()
                         : std::max(d.max_lambda_difference, diff);
    if (std::isnan(d.max_lambda_difference)) break;
  }
  d.concurrence_difference = std::abs(closed.c - numeric.c);
  d.significant = !(d.max_lambda_difference <= 1e-8) || !(d.concurrence_difference <= 1e-8);
  return d;
}

std::optional<double> critical_beta(const ThermalPairConcurrence& curve, BetaSide side) {
  const double sign = side == BetaSide::negative ? -1.0 : 1.0;
  const double limit = std::min(kCriticalScanLimit, curve.max_abs_beta());
  const auto f = [&](double magnitude) { return curve.at(sign * magnitude).f; };

  double prev = 0.0;
  double f_prev = f(0.0);
  const int steps = static_cast<int>(std::floor(limit / kCriticalScanStep + 1e-12));
  for (int k = 1; k <= steps; ++k) {
    const double cur = k * kCriticalScanStep;
    const double f_cur = f(cur);
    if (f_prev <= 0.0 && f_cur > 0.0) {
      double lo = prev;
      double hi = cur;
      while (hi - lo > kCriticalTolerance) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? hi : lo) = mid;
      }
      return sign * 0.5 * (lo + hi);
    }
    prev = cur;
    f_prev = f_cur;
  }
  return std::nullopt;
}

std::optional<double> critical_beta(const SpinCluster& cluster, double alpha, SpinPair pair,
                                    BetaSide side) {
  const auto h = total_hamiltonian(cluster, ModelParams{alpha, 0.0});
  return critical_beta(ThermalPairConcurrence(hermitian_eigensystem(h), pair), side);
}

void PhysicalUnits::validate() const {
  if (!(gamma_khz_per_gauss > 0.0) || !(coupling_khz > 0.0) ||
      !std::isfinite(gamma_khz_per_gauss) || !std::isfinite(coupling_khz)) {
    throw ArgumentError("gyromagnetic ratio and coupling must be positive and finite");
  }
}

double beta_to_temperature(double beta, const PhysicalUnits& units) {
  units.validate();
  check_finite(beta);
  if (beta == 0.0) throw DomainError("beta = 0 corresponds to infinite temperature");
  const double kelvin = kPlanck * units.coupling_khz * 1e3 / (kBoltzmann * beta);
  return kelvin * 1e6;
}

double alpha_to_field_gauss(double alpha, const PhysicalUnits& units) {
  units.validate();
  return alpha * units.coupling_khz / units.gamma_khz_per_gauss;
}

}  // namespace dipent
