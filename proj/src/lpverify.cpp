#include "mrproj/lpverify.hpp"

#include <algorithm>
#include <cmath>

#include "mrproj/errors.hpp"

namespace mrproj {
namespace {

void check_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw exponent_range_error("norm equivalence requires 1 < p < infinity");
}

// L_p norm of a standard Gaussian: sqrt(2) (Gamma((p+1)/2) / Gamma(1/2))^{1/p};
// increasing in p and equal to 1 at p = 2.
double gaussian_moment(double p) {
  return std::sqrt(2.0) *
         std::exp((std::lgamma((p + 1.0) / 2.0) - std::lgamma(0.5)) / p);
}

void check_pattern(const TensorContext& ctx, const SignPattern& pattern,
                   const MultiIndex& k_cap) {
  if (pattern.axis_signs.size() < static_cast<std::size_t>(ctx.dim()))
    throw structural_error("sign pattern has fewer axes than the context");
  for (int j = 0; j < ctx.dim(); ++j) {
    const auto& axis = pattern.axis_signs[static_cast<std::size_t>(j)];
    const int cap = k_cap[static_cast<std::size_t>(j)];
    if (static_cast<int>(axis.size()) <= cap)
      throw structural_error("sign pattern shorter than the requested scale range");
    for (int kj = 0; kj <= cap; ++kj)
      if (axis[static_cast<std::size_t>(kj)] != 1 && axis[static_cast<std::size_t>(kj)] != -1)
        throw structural_error("sign pattern entries must be -1 or +1");
  }
}

std::int64_t lattice_size(const MultiIndex& k_cap) {
  std::int64_t s = 1;
  for (int kj : k_cap) s *= kj + 1;
  return s;
}

void check_arity(const TensorContext& ctx, const MultiIndex& k) {
  if (static_cast<int>(k.size()) != ctx.dim())
    throw structural_error("multi-index arity does not match the context dimension");
}

}  // namespace

SampledFunction square_function(const TensorContext& ctx, const SampledFunction& f,
                                const MultiIndex& k_cap) {
  const std::vector<double> energy = detail_energy(ctx, f, k_cap);
  SampledFunction out = SampledFunction::zeros(ctx.box);
  for (std::size_t i = 0; i < energy.size(); ++i) out.samples[i] = std::sqrt(energy[i]);
  return out;
}

RatioRecord lp_ratio(const TensorContext& ctx, const SampledFunction& f,
                     const std::string& f_id, double p, const MultiIndex& k_cap) {
  check_exponent(p);
  RatioRecord rec;
  rec.p = p;
  rec.f_id = f_id;
  rec.kappa_cap = k_cap;
  rec.norm_f = lp_norm(f, p);
  rec.norm_sf = lp_norm(square_function(ctx, f, k_cap), p);
  rec.ratio = rec.norm_f > 0.0 ? rec.norm_sf / rec.norm_f : 0.0;
  return rec;
}

int rademacher(int kappa, double t) {
  if (kappa < 0 || kappa > 60) throw structural_error("rademacher index outside 0..60");
  const double s = std::ldexp(t, kappa + 1);
  const double n = std::floor(s);
  if (s == n)  // dyadic breakpoint, a measure-zero set
    return 0;
  return std::fmod(n, 2.0) == 0.0 ? +1 : -1;
}

int rademacher_tensor(const MultiIndex& kappa, const std::vector<double>& t) {
  if (kappa.size() != t.size())
    throw structural_error("one evaluation point per axis required");
  int s = 1;
  for (std::size_t j = 0; j < kappa.size(); ++j) s *= rademacher(kappa[j], t[j]);
  return s;
}

double khintchine_moment(const std::vector<double>& a, double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw structural_error("moment exponent must be positive and finite");
  const std::size_t n = a.size();
  if (n > 20) throw structural_error("exhaustive enumeration is capped at 20 entries");
  if (n == 0) return 0.0;
  // Frozen order: atom m = 0..2^n-1, bit k (LSB first) negates a_k; terms
  // summed in ascending k, atoms accumulated in ascending m.
  const std::uint64_t atoms = std::uint64_t{1} << n;
  double acc = 0.0;
  for (std::uint64_t m = 0; m < atoms; ++m) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      s += (m >> k) & 1u ? -a[k] : a[k];
    acc += std::pow(std::abs(s), p);
  }
  return acc / static_cast<double>(atoms);
}

double khintchine_lower_constant(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw structural_error("moment exponent must be positive and finite");
  if (p >= 2.0) return 1.0;
  return std::min(std::exp2(0.5 - 1.0 / p), gaussian_moment(p));
}

double khintchine_upper_constant(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw structural_error("moment exponent must be positive and finite");
  if (p <= 2.0) return 1.0;
  return gaussian_moment(p);
}

std::pair<double, double> khintchine_check(const std::vector<double>& a, double p,
                                           std::uint64_t mc_seed, int mc_trials) {
  const std::size_t n = a.size();
  if (n == 0) return {0.0, 0.0};
  double moment = 0.0;
  if (n <= 12) {
    moment = khintchine_moment(a, p);
  } else {
    if (mc_trials < 1) throw structural_error("Monte-Carlo needs at least one trial");
    XorShift64Star rng(mc_seed);
    double acc = 0.0;
    for (int t = 0; t < mc_trials; ++t) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += rng.sign() * a[k];
      acc += std::pow(std::abs(s), p);
    }
    moment = acc / static_cast<double>(mc_trials);
  }
  double l2 = 0.0;
  for (double v : a) l2 += v * v;
  l2 = std::sqrt(l2);
  const double r = l2 > 0.0 ? std::pow(moment, 1.0 / p) / l2 : 0.0;
  return {r / khintchine_upper_constant(p), r / khintchine_lower_constant(p)};
}

SampledFunction sign_sum(const TensorContext& ctx, const SampledFunction& f,
                         const SignPattern& pattern, const MultiIndex& k_cap) {
  check_arity(ctx, k_cap);
  check_pattern(ctx, pattern, k_cap);
  SampledFunction acc = SampledFunction::zeros(ctx.box);
  for_each_detail(ctx, f, k_cap,
                  [&](const MultiIndex& kappa, const SampledFunction& det) {
                    accumulate(acc, det, static_cast<double>(pattern.at(kappa)));
                  });
  return acc;
}

SampledFunction sign_sum_free(const TensorContext& ctx, const SampledFunction& f,
                              const std::vector<int>& lattice_signs,
                              const MultiIndex& k_cap) {
  check_arity(ctx, k_cap);
  const std::int64_t need = lattice_size(k_cap);
  if (static_cast<std::int64_t>(lattice_signs.size()) < need)
    throw structural_error("one sign per lattice point required");
  for (std::int64_t i = 0; i < need; ++i)
    if (lattice_signs[static_cast<std::size_t>(i)] != 1 &&
        lattice_signs[static_cast<std::size_t>(i)] != -1)
      throw structural_error("sign pattern entries must be -1 or +1");
  SampledFunction acc = SampledFunction::zeros(ctx.box);
  std::size_t rank = 0;  // row-major visitation rank, last axis fastest
  for_each_detail(ctx, f, k_cap,
                  [&](const MultiIndex&, const SampledFunction& det) {
                    accumulate(acc, det, static_cast<double>(lattice_signs[rank++]));
                  });
  return acc;
}

SignPattern random_sign_pattern(const MultiIndex& k_cap, XorShift64Star& rng) {
  SignPattern pat;
  for (int cap : k_cap) {
    std::vector<int> axis(static_cast<std::size_t>(cap) + 1);
    for (int& s : axis) s = rng.sign();
    pat.axis_signs.push_back(std::move(axis));
  }
  return pat;
}

std::vector<SignTrialRecord> sign_sweep(const TensorContext& ctx, const SampledFunction& f,
                                        double p, const MultiIndex& k_cap, int trials,
                                        std::uint64_t seed, bool free_signs) {
  check_exponent(p);
  if (trials < 1) throw structural_error("at least one trial required");
  const double norm_f = lp_norm(f, p);
  std::vector<SignTrialRecord> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    SignTrialRecord rec;
    rec.seed = seed + static_cast<std::uint64_t>(t) * 0x9E3779B97F4A7C15ULL;
    rec.p = p;
    XorShift64Star rng(rec.seed);
    SampledFunction tf;
    if (free_signs) {
      std::vector<int> signs(static_cast<std::size_t>(lattice_size(k_cap)));
      for (int& s : signs) s = rng.sign();
      tf = sign_sum_free(ctx, f, signs, k_cap);
    } else {
      tf = sign_sum(ctx, f, random_sign_pattern(k_cap, rng), k_cap);
    }
    rec.norm_tf = lp_norm(tf, p);
    rec.ratio = norm_f > 0.0 ? rec.norm_tf / norm_f : 0.0;
    out.push_back(std::move(rec));
  }
  return out;
}

SweepSummary summarize(const std::vector<SignTrialRecord>& trials) {
  SweepSummary s;
  if (trials.empty()) return s;
  std::vector<double> r;
  r.reserve(trials.size());
  for (const SignTrialRecord& t : trials) r.push_back(t.ratio);
  std::sort(r.begin(), r.end());
  s.min = r.front();
  s.max = r.back();
  const std::size_t n = r.size();
  s.median = n % 2 ? r[n / 2] : 0.5 * (r[n / 2 - 1] + r[n / 2]);
  return s;
}

std::vector<std::pair<double, double>> weak11_check(const TensorContext& ctx,
                                                    const SampledFunction& f,
                                                    const SignPattern& signs,
                                                    const MultiIndex& k_cap,
                                                    const std::vector<double>& alphas) {
  if (ctx.dim() != 1)
    throw structural_error("weak-type measurement is one dimensional");
  const SampledFunction tf = sign_sum(ctx, f, signs, k_cap);
  const double l1 = lp_norm(f, 1.0);
  const double h = ctx.box.cell_measure();
  std::vector<std::pair<double, double>> out;
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) throw structural_error("levels must be positive");
    std::int64_t count = 0;
    for (const Complex& v : tf.samples)
      if (std::abs(v) > alpha) ++count;
    const double product = l1 > 0.0 ? alpha * static_cast<double>(count) * h / l1 : 0.0;
    out.emplace_back(alpha, product);
  }
  return out;
}

}  // namespace mrproj
