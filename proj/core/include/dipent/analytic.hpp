#pragma once

#include "dipent/entanglement.hpp"
#include "dipent/geometry.hpp"

#include <array>
#include <optional>

namespace dipent {

// ---------------------------------------------------------------------------
// Zero-field two-spin closed form
// ---------------------------------------------------------------------------

/// R-operator eigenvalues of the zero-field two-spin Gibbs state, in the
/// fixed order (e^b, e^{-b/2}, e^b, e^{b/2}) / Z0 with
/// Z0 = 2 (cosh(b/2) + e^b).
struct TwoSpinZeroFieldEigs {
  std::array<double, 4> lambdas{};
  double z0 = 0.0;  ///< may be +inf for |beta| beyond ~700
};

TwoSpinZeroFieldEigs zero_field_eigs(double beta);

/// max(0, (e^{-b/2} - e^{b/2} - 2 e^b) / Z0) for b < 0, and 0 otherwise.
ConcurrenceBreakdown zero_field_concurrence_analytic(double beta);

/// Root of 2x^3 + x^2 - 1 = 0 (x = e^{beta/2}) mapped to beta = 2 ln x.
/// This is where the zero-field pair becomes entangled; approx -0.8392.
double critical_beta_zero_field_exact();

// ---------------------------------------------------------------------------
// Two spins perpendicular to the field
// ---------------------------------------------------------------------------

enum class InFieldForm {
  /// Rederived from alpha * (I1z + I2z) + I1.I2 - 3 I1x I2x. Agrees with the
  /// numeric pipeline to rounding.
  exact,
  /// Legacy expressions with lambda1,2 missing the factor A and cosh
  /// unsquared inside B. Kept only for comparison; does not reduce to the
  /// zero-field result.
  legacy,
};

/// The closed-form quantities for a pair perpendicular to the field.
/// A = sqrt(9 + 16 alpha^2). `b` and `z` are reported divided by
/// exp(log_shift) so they stay finite at large |A beta|; the legacy form
/// uses log_shift = 0.
struct TwoSpinInFieldEigs {
  double a = 0.0;
  double b = 0.0;
  double z = 0.0;
  double log_shift = 0.0;
  std::array<double, 4> lambdas{};  ///< formula order lambda1..lambda4
};

TwoSpinInFieldEigs two_spin_infield_eigs(double beta, double alpha,
                                         InFieldForm form = InFieldForm::exact);

ConcurrenceBreakdown two_spin_infield_concurrence_analytic(double beta, double alpha,
                                                           InFieldForm form = InFieldForm::exact);

struct InFieldDiscrepancy {
  double max_lambda_difference = 0.0;  ///< over descending-sorted lambdas
  double concurrence_difference = 0.0;
  bool significant = false;  ///< either difference above 1e-8 or non-finite
};

/// Compares a closed form against build_chain(2) run through the numeric
/// pipeline at the same (beta, alpha).
InFieldDiscrepancy compare_infield_with_pipeline(double beta, double alpha,
                                                 InFieldForm form = InFieldForm::exact);

// ---------------------------------------------------------------------------
// Critical inverse temperature
// ---------------------------------------------------------------------------

enum class BetaSide { negative, positive };

inline constexpr double kCriticalScanLimit = 60.0;
inline constexpr double kCriticalScanStep = 0.25;
inline constexpr double kCriticalTolerance = 1e-8;

/// First beta, moving outward from 0 on `side`, where F for `pair` changes
/// sign from negative to positive. Scans in steps of 0.25 up to |beta| = 60
/// (or the overflow limit of the spectrum, if smaller), then bisects to
/// 1e-8. Returns nullopt when F stays non-positive.
std::optional<double> critical_beta(const ThermalPairConcurrence& curve, BetaSide side);

std::optional<double> critical_beta(const SpinCluster& cluster, double alpha, SpinPair pair,
                                    BetaSide side);

// ---------------------------------------------------------------------------
// Physical units
// ---------------------------------------------------------------------------

struct PhysicalUnits {
  double gamma_khz_per_gauss = 4.2577;  ///< proton gyromagnetic ratio
  double coupling_khz = 10.0;           ///< dipolar energy unit in frequency units

  void validate() const;
};

inline constexpr double kPlanck = 6.62607015e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K

/// Spin temperature T = h * coupling / (k_B * beta), in microkelvin.
/// Throws DomainError for beta == 0.
double beta_to_temperature(double beta, const PhysicalUnits& units);

/// Magnetic field (gauss) corresponding to a dimensionless alpha.
double alpha_to_field_gauss(double alpha, const PhysicalUnits& units);

}  // namespace dipent
