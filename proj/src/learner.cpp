#include "banditnash/learner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "banditnash/vi.hpp"

namespace banditnash {

Learner::Learner(JointLayout layout, ProductSet action_sets, Schedule schedule,
                 std::uint64_t seed, std::optional<Vector> mu0,
                 LearnerOptions options)
    : layout_(layout),
      sets_(std::move(action_sets)),
      schedule_(apply_default_r_cap(schedule, sets_)),
      options_(options) {
  if (sets_.total_dim() != layout_.total_dim() ||
      static_cast<int>(sets_.factors().size()) != layout_.players) {
    throw std::invalid_argument("action sets do not match the layout");
  }
  rngs_.reserve(layout_.players);
  for (int i = 0; i < layout_.players; ++i) {
    rngs_.emplace_back(seed, static_cast<std::uint64_t>(i));
  }
  const ScheduleValues v = schedule_.evaluate(1);
  if (mu0) {
    if (mu0->size() != layout_.total_dim() || !mu0->allFinite()) {
      throw std::invalid_argument("mu0 must be finite with matching dimension");
    }
    mu_ = *mu0;
  } else {
    mu_ = sets_.shrink(effective_r(v.r)).project(Vector::Zero(layout_.total_dim()));
  }
}

double Learner::effective_r(double r) const {
  return options_.fixed_r ? *options_.fixed_r : r;
}

const Vector& Learner::sample_states() {
  const ScheduleValues v = schedule_.evaluate(t_);
  RoundSample s;
  s.x.resize(layout_.total_dim());
  const int d = layout_.dim_per_player;
  for (int i = 0; i < layout_.players; ++i) {
    s.x.segment(i * d, d) =
        layout_.player(mu_, i) + v.sigma * rngs_[i].normal_vector(d);
  }
  last_ = std::move(s);
  return last_->x;
}

const Vector& Learner::play_actions() {
  if (!last_) {
    throw std::logic_error("play_actions called before sample_states");
  }
  last_->a = sets_.project(last_->x);
  return last_->a;
}

void Learner::observe_and_update(const Vector& payoffs) {
  if (!last_ || last_->a.size() == 0) {
    throw std::logic_error("observe_and_update called before sample/play");
  }
  if (payoffs.size() != layout_.players) {
    throw std::invalid_argument("need one payoff per player");
  }
  if (!payoffs.allFinite()) {
    throw std::runtime_error("non-finite payoff observed: learner state poisoned");
  }
  const ScheduleValues v = schedule_.evaluate(t_);
  const int d = layout_.dim_per_player;
  const ProductSet shrunk = sets_.shrink(effective_r(v.r));
  // gamma sigma^2 * J (x - mu) / sigma^2 collapses to gamma * J (x - mu).
  Vector inner(layout_.total_dim());
  for (int i = 0; i < layout_.players; ++i) {
    auto mu_i = layout_.player(mu_, i);
    auto x_i = layout_.player(last_->x, i);
    const double eps = options_.eps_enabled ? v.eps : 0.0;
    inner.segment(i * d, d) =
        mu_i - v.gamma * payoffs[i] * (x_i - mu_i) - v.beta * eps * mu_i;
  }
  mu_ = shrunk.project(inner);
  last_.reset();
  ++t_;
}

RunTrace run_bandit(const Game& game, const Schedule& schedule, std::uint64_t seed,
                    long T, long log_every, std::optional<Vector> target,
                    std::optional<Vector> mu0, LearnerOptions options) {
  if (T < 0 || log_every < 1) {
    throw std::invalid_argument("need T >= 0 and log_every >= 1");
  }
  Learner learner(game.layout, game.action_sets, schedule, seed, std::move(mu0),
                  options);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  GaussianStream noise(seed, /*stream=*/0xe9c0);

  RunTrace trace;
  trace.algo = options.eps_enabled ? "bandit" : "bandit-no-eps";
  trace.game = game.name;
  trace.seed = seed;
  trace.T = T;
  trace.log_every = log_every;

  auto log_row = [&](long t, const Vector& a) {
    trace.rows.push_back({t, learner.mu(), a,
                          target ? (learner.mu() - *target).norm() : nan,
                          learner.schedule().evaluate(std::max<long>(t, 1))});
  };
  log_row(0, learner.mu());

  for (long t = 1; t <= T; ++t) {
    learner.sample_states();
    const Vector& a = learner.play_actions();
    Vector payoffs(game.layout.players);
    for (int i = 0; i < game.layout.players; ++i) {
      payoffs[i] = game.evaluate_cost(i, a);
      if (options.payoff_noise > 0) {
        // bounded zero-mean observation noise
        payoffs[i] += options.payoff_noise * (2.0 * noise.uniform() - 1.0);
      }
    }
    const Vector a_copy = a;
    try {
      learner.observe_and_update(payoffs);
    } catch (const std::runtime_error&) {
      trace.aborted = true;
      log_row(t, a_copy);
      return trace;
    }
    if (t % log_every == 0 || t == T) log_row(t, a_copy);
  }
  return trace;
}

}  // namespace banditnash
