#pragma once

#include <optional>
#include <string>
#include <vector>

#include "banditnash/convex_set.hpp"
#include "banditnash/game.hpp"
#include "banditnash/rng.hpp"
#include "banditnash/schedule.hpp"

namespace banditnash {

struct LearnerOptions {
  // Ablation: drop the eps_t mu term (recovers the strictly-monotone-only
  // update) or pin the shrinkage radius.
  bool eps_enabled = true;
  std::optional<double> fixed_r;
  // Optional bounded zero-mean payoff noise added by the environment
  // (experimental; off by default).
  double payoff_noise = 0.0;
};

// One round of sampled states and played actions.
struct RoundSample {
  Vector x;  // states, Gaussian around the means
  Vector a;  // played actions, per-player projection onto the unshrunk set
};

// The state of the payoff-based recursion. The update consumes only each
// player's own (payoff scalar, state, mean) plus the public schedule: it
// never sees the game.
class Learner {
 public:
  // mu0 defaults to the projection of the origin onto the first shrunk set.
  Learner(JointLayout layout, ProductSet action_sets, Schedule schedule,
          std::uint64_t seed, std::optional<Vector> mu0 = std::nullopt,
          LearnerOptions options = {});

  long t() const { return t_; }
  const Vector& mu() const { return mu_; }
  const std::optional<RoundSample>& last_sample() const { return last_; }
  const Schedule& schedule() const { return schedule_; }

  // Draws x^i_k ~ Normal(mu^i_k, sigma_t), one substream per player.
  const Vector& sample_states();

  // a^i = Proj_{A_i}(x^i); what the environment evaluates costs at.
  const Vector& play_actions();

  // mu^i <- Proj_{shrink(A_i, r_t)}[mu^i - gamma_t sigma_t^2 (J_i (x^i - mu^i)/sigma_t^2
  //                                  + eps_t mu^i)], with the sigma^2 cancellation
  // applied so underflowing sigma cannot poison the estimator term.
  void observe_and_update(const Vector& payoffs);

 private:
  JointLayout layout_;
  ProductSet sets_;
  Schedule schedule_;
  LearnerOptions options_;
  long t_ = 1;
  Vector mu_;
  std::vector<GaussianStream> rngs_;  // one per player
  std::optional<RoundSample> last_;

  double effective_r(double r) const;
};

struct TraceRow {
  long t;
  Vector mu;
  Vector a;
  double dist_to_target;  // NaN when no target
  ScheduleValues sched;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  std::string algo;
  std::string game;
  std::uint64_t seed = 0;
  long T = 0;
  long log_every = 1;
  bool aborted = false;
};

// Executes T rounds of sample -> play -> cost oracle -> update. The only
// game information crossing into the learner is the payoff vector.
RunTrace run_bandit(const Game& game, const Schedule& schedule, std::uint64_t seed,
                    long T, long log_every,
                    std::optional<Vector> target = std::nullopt,
                    std::optional<Vector> mu0 = std::nullopt,
                    LearnerOptions options = {});

}  // namespace banditnash
