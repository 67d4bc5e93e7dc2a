#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "mrproj/rng.hpp"
#include "mrproj/tensor.hpp"

namespace mrproj {

// One square-function measurement: both norms and their ratio, with the
// lattice cap it was computed under. The lattice tail above the cap is
// exactly the reconstruction error at the cap; reports carry both numbers.
struct RatioRecord {
  double p = 0.0;
  std::string f_id;
  double norm_f = 0.0;
  double norm_sf = 0.0;
  double ratio = 0.0;
  MultiIndex kappa_cap;
};

// One randomized sign-sum trial.
struct SignTrialRecord {
  std::uint64_t seed = 0;  // per-trial stream seed, reproduces the pattern
  double p = 0.0;
  double norm_tf = 0.0;  // || sum_kappa sigma_kappa (detail at kappa) ||_p
  double ratio = 0.0;    // norm_tf / ||f||_p
};

// Pointwise sqrt of the sum of |detail|^2 over the lattice {0..k_cap}.
// Output samples are real (imaginary parts are exactly zero).
SampledFunction square_function(const TensorContext& ctx, const SampledFunction& f,
                                const MultiIndex& k_cap);

// Both sides of the norm equivalence at exponent p. Only 1 < p < infinity is
// admitted; the equivalence fails at the endpoints, so p <= 1 and the
// infinity sentinel raise exponent_range_error.
RatioRecord lp_ratio(const TensorContext& ctx, const SampledFunction& f,
                     const std::string& f_id, double p, const MultiIndex& k_cap);

// The Rademacher symbol: sign of sin(2^{kappa+1} pi t) for t in (0,1),
// evaluated by integer parity of floor(2^{kappa+1} t), never by floating
// sin near its zeros. Dyadic breakpoints return 0 (a measure-zero set).
int rademacher(int kappa, double t);

// Product of 1-D Rademacher symbols, one per axis.
int rademacher_tensor(const MultiIndex& kappa, const std::vector<double>& t);

// p-th moment of |sum_k a_k w_k| over the 2^{|a|} equal-measure sign atoms,
// enumerated in a frozen order that independent implementations must match
// bitwise: atom index m runs 0, 1, ..., 2^n - 1; bit k of m (LSB first)
// flips a_k (0 -> +a_k, 1 -> -a_k); within an atom, terms are summed in
// ascending k; moments are accumulated in ascending m; the result is the
// plain mean (sum * 2^-n). Requires |a| <= 20 (enumeration cost).
double khintchine_moment(const std::vector<double>& a, double p);

// Ratio of the enumerated (or, above 12 entries, Monte-Carlo with the given
// seed) L_p norm to the Euclidean size of a, normalized by the optimal
// moment-comparison constants: first = ratio / upper constant (<= 1),
// second = ratio / lower constant (>= 1). Empty a gives (0, 0).
std::pair<double, double> khintchine_check(const std::vector<double>& a, double p,
                                           std::uint64_t mc_seed = 1,
                                           int mc_trials = 200000);

// Optimal constants for the two-sided moment comparison (Haagerup): the
// lower constant is 2^{1/2 - 1/p} below the crossover exponent p0 ~= 1.8474
// and the Gaussian moment g(p) = sqrt(2) (Gamma((p+1)/2)/sqrt(pi))^{1/p}
// between p0 and 2, then 1 above 2; the upper constant is 1 up to 2 and
// g(p) beyond. p0 is the root of g(p) = 2^{1/2 - 1/p}.
double khintchine_lower_constant(double p);
double khintchine_upper_constant(double p);

// sum over the lattice {0..k_cap} of sigma_kappa * (detail at kappa), where
// sigma_kappa is the product of per-axis signs. Same lattice order and
// accumulation as partial_sum, so the all-plus pattern reproduces it bitwise.
SampledFunction sign_sum(const TensorContext& ctx, const SampledFunction& f,
                         const SignPattern& pattern, const MultiIndex& k_cap);

// Exploratory variant with one independent sign per lattice point (row-major
// rank). Tensor-product patterns are the ones the uniform bound speaks
// about; free per-point signs at d >= 2 sit outside it and are reported as
// such. At d = 1 the two parametrizations coincide.
SampledFunction sign_sum_free(const TensorContext& ctx, const SampledFunction& f,
                              const std::vector<int>& lattice_signs,
                              const MultiIndex& k_cap);

// Draws tensor patterns for every axis entry up to k_cap from the given stream.
SignPattern random_sign_pattern(const MultiIndex& k_cap, XorShift64Star& rng);

// `trials` independent tensor patterns; per-trial stream seed is derived from
// `seed` and the trial number, recorded in the trial row.
std::vector<SignTrialRecord> sign_sweep(const TensorContext& ctx, const SampledFunction& f,
                                        double p, const MultiIndex& k_cap, int trials,
                                        std::uint64_t seed, bool free_signs = false);

struct SweepSummary {
  double min = 0.0, max = 0.0, median = 0.0;
};
SweepSummary summarize(const std::vector<SignTrialRecord>& trials);

// Level-set products alpha * mes{ |T f| > alpha } / ||f||_1 for the signed
// detail sum T at d = 1; the max over alpha is the measured weak-type
// constant. Measures are sample counts times the step.
std::vector<std::pair<double, double>> weak11_check(const TensorContext& ctx,
                                                    const SampledFunction& f,
                                                    const SignPattern& signs,
                                                    const MultiIndex& k_cap,
                                                    const std::vector<double>& alphas);

}  // namespace mrproj
