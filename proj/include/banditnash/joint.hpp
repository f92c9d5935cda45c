#pragma once

#include <Eigen/Dense>

namespace banditnash {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Layout of a stacked joint point in R^(N*d): player i owns the
/// contiguous slice [i*d, (i+1)*d).
struct JointLayout {
  int players = 0;
  int dim_per_player = 0;

  int total_dim() const { return players * dim_per_player; }

  auto player(Vector& v, int i) const {
    return v.segment(i * dim_per_player, dim_per_player);
  }
  auto player(const Vector& v, int i) const {
    return v.segment(i * dim_per_player, dim_per_player);
  }
};

}  // namespace banditnash
