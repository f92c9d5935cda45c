#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>

namespace banditnash {

struct ScheduleValues {
  double gamma;  // stepsize
  double sigma;  // sampling standard deviation
  double eps;    // Tikhonov regularization weight
  double r;      // shrinkage radius (already capped)
  double beta;   // gamma * sigma^2
};

struct PowerLawExponents {
  double a1, a2, a3, a4;  // gamma, sigma, eps, r decay exponents
};

// The four coupled decay sequences gamma_t, sigma_t, eps_t, r_t.
class Schedule {
 public:
  using Generator = std::function<double(long)>;

  // gamma_t = (t + t_offset - 1)^(-a1) and analogously for the others;
  // r_t is capped at r_cap. Iterations start at t = 1.
  static Schedule power_law(const PowerLawExponents& e, long t_offset = 1,
                            double r_cap = std::numeric_limits<double>::infinity());
  static Schedule custom(Generator gamma, Generator sigma, Generator eps,
                         Generator r,
                         double r_cap = std::numeric_limits<double>::infinity());

  ScheduleValues evaluate(long t) const;

  const std::optional<PowerLawExponents>& exponents() const { return exponents_; }
  long t_offset() const { return t_offset_; }
  double r_cap() const { return r_cap_; }

  Schedule with_r_cap(double r_cap) const;

 private:
  Schedule() = default;

  std::optional<PowerLawExponents> exponents_;
  Generator gamma_, sigma_, eps_, r_;
  long t_offset_ = 1;
  double r_cap_ = std::numeric_limits<double>::infinity();
};

struct ConditionResult {
  bool satisfied = false;
  double margin = 0.0;  // distance of the exponent inequality from its threshold
};

// The four sufficient exponent conditions for the summability assumptions.
struct ScheduleReport {
  ConditionResult i, ii, iii, iv;

  // iii only matters for the stochastic recursion (it controls the
  // martingale noise); deterministic reference iterations need i, ii, iv.
  bool valid() const {
    return i.satisfied && ii.satisfied && iii.satisfied && iv.satisfied;
  }
  bool valid_deterministic() const {
    return i.satisfied && ii.satisfied && iv.satisfied;
  }

  // Name of the first violated condition (for error messages), or "".
  std::string first_violated(bool deterministic_mode = false) const;
};

// Checks, with strict inequalities:
//   i)   a1 + 2 a2 < 1           and a1 + 2 a2 + a3 < 1
//   ii)  a1 + 2 a2 + a3 < 1      and a1 + 2 a2 + 6 a3 - 2 a4 < 1
//   iii) 2 a1 > 1                and a1 + 3 a2 > 1
//   iv)  a3 < a4 < a2
// Throws if any exponent is outside (0, 1).
ScheduleReport validate_exponents(double a1, double a2, double a3, double a4);

struct SummabilityProbe {
  double sum_beta = 0;           // should diverge
  double sum_beta_eps = 0;       // should diverge
  double sum_gamma_sq = 0;       // should converge
  double sum_beta_sigma = 0;     // should converge
  double sum_deps_sq = 0;        // sum (eps_t-eps_{t-1})^2/(beta_t eps_t^3), converges
  double sum_dr_sq = 0;          // sum (r_t-r_{t-1})^2/(beta_t eps_t^6), converges
};

// Numerical partial sums up to T for divergence/convergence inspection.
SummabilityProbe summability_probe(const Schedule& s, long T);

}  // namespace banditnash
