#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "banditnash/joint.hpp"

namespace banditnash {

// Deterministic Gaussian stream. std::normal_distribution output is
// implementation-defined, so the Marsaglia polar transform is coded out
// here to make traces reproducible byte for byte.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{seed, stream};
    engine_.seed(seq);
  }

  double uniform() {  // (0, 1)
    // 53-bit mantissa, never exactly 0.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  Vector normal_vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace banditnash
