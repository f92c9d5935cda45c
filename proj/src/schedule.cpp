#include "banditnash/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace banditnash {

Schedule Schedule::power_law(const PowerLawExponents& e, long t_offset, double r_cap) {
  for (double a : {e.a1, e.a2, e.a3, e.a4}) {
    if (!(a > 0.0 && a < 1.0)) {
      throw std::invalid_argument("power-law exponents must lie in (0, 1)");
    }
  }
  if (t_offset < 1) throw std::invalid_argument("t_offset must be >= 1");
  if (!(r_cap > 0)) throw std::invalid_argument("r_cap must be positive");
  Schedule s;
  s.exponents_ = e;
  s.t_offset_ = t_offset;
  s.r_cap_ = r_cap;
  return s;
}

Schedule Schedule::custom(Generator gamma, Generator sigma, Generator eps,
                          Generator r, double r_cap) {
  Schedule s;
  s.gamma_ = std::move(gamma);
  s.sigma_ = std::move(sigma);
  s.eps_ = std::move(eps);
  s.r_ = std::move(r);
  s.r_cap_ = r_cap;
  return s;
}

ScheduleValues Schedule::evaluate(long t) const {
  if (t < 1) throw std::invalid_argument("schedule time must be >= 1");
  ScheduleValues v{};
  if (exponents_) {
    const double base = static_cast<double>(t + t_offset_ - 1);
    v.gamma = std::pow(base, -exponents_->a1);
    v.sigma = std::pow(base, -exponents_->a2);
    v.eps = std::pow(base, -exponents_->a3);
    v.r = std::pow(base, -exponents_->a4);
  } else {
    v.gamma = gamma_(t);
    v.sigma = sigma_(t);
    v.eps = eps_(t);
    v.r = r_(t);
  }
  v.r = std::min({v.r, r_cap_});
  v.beta = v.gamma * v.sigma * v.sigma;
  return v;
}

Schedule Schedule::with_r_cap(double r_cap) const {
  Schedule s = *this;
  if (!(r_cap > 0)) throw std::invalid_argument("r_cap must be positive");
  s.r_cap_ = r_cap;
  return s;
}

std::string ScheduleReport::first_violated(bool deterministic_mode) const {
  if (!i.satisfied) return "condition i: a1 + 2a2 < 1 and a1 + 2a2 + a3 < 1";
  if (!ii.satisfied) return "condition ii: a1 + 2a2 + a3 < 1 and a1 + 2a2 + 6a3 - 2a4 < 1";
  if (!deterministic_mode && !iii.satisfied) return "condition iii: 2a1 > 1 and a1 + 3a2 > 1";
  if (!iv.satisfied) return "condition iv: a3 < a4 < a2";
  return "";
}

ScheduleReport validate_exponents(double a1, double a2, double a3, double a4) {
  for (double a : {a1, a2, a3, a4}) {
    if (!(a > 0.0 && a < 1.0)) {
      throw std::invalid_argument("exponents must lie in (0, 1)");
    }
  }
  auto both = [](double m1, double m2) {
    ConditionResult c;
    c.margin = std::min(m1, m2);
    c.satisfied = c.margin > 0.0;
    return c;
  };
  ScheduleReport rep;
  rep.i = both(1.0 - (a1 + 2 * a2), 1.0 - (a1 + 2 * a2 + a3));
  rep.ii = both(1.0 - (a1 + 2 * a2 + a3), 1.0 - (a1 + 2 * a2 + 6 * a3 - 2 * a4));
  rep.iii = both(2 * a1 - 1.0, a1 + 3 * a2 - 1.0);
  rep.iv = both(a4 - a3, a2 - a4);
  return rep;
}

SummabilityProbe summability_probe(const Schedule& s, long T) {
  if (T < 2) throw std::invalid_argument("probe horizon must be >= 2");
  SummabilityProbe p;
  ScheduleValues prev = s.evaluate(1);
  p.sum_beta = prev.beta;
  p.sum_beta_eps = prev.beta * prev.eps;
  p.sum_gamma_sq = prev.gamma * prev.gamma;
  p.sum_beta_sigma = prev.beta * prev.sigma;
  for (long t = 2; t <= T; ++t) {
    const ScheduleValues v = s.evaluate(t);
    p.sum_beta += v.beta;
    p.sum_beta_eps += v.beta * v.eps;
    p.sum_gamma_sq += v.gamma * v.gamma;
    p.sum_beta_sigma += v.beta * v.sigma;
    const double deps = v.eps - prev.eps;
    const double dr = v.r - prev.r;
    p.sum_deps_sq += deps * deps / (v.beta * std::pow(v.eps, 3));
    p.sum_dr_sq += dr * dr / (v.beta * std::pow(v.eps, 6));
    prev = v;
  }
  return p;
}

}  // namespace banditnash
