#include "enumerate.hpp"

#include <cmath>
#include <stdexcept>

namespace heckelab {

void enumerate_quadform(const std::vector<std::vector<double>>& gram,
                        double bound, bool half,
                        const std::function<bool(const std::vector<long>&)>& cb) {
  int n = (int)gram.size();
  // Cholesky-style decomposition Q(c) = sum_i q_ii (c_i + sum_{j>i} q_ij c_j)^2.
  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) q[i][j] = gram[i][j];
  for (int i = 0; i < n; i++) {
    if (q[i][i] <= 0) throw std::runtime_error("enumerate_quadform: not positive definite");
    for (int j = i + 1; j < n; j++) {
      double t = q[i][j] / q[i][i];
      for (int k = j; k < n; k++) q[j][k] -= t * q[i][k];
      q[i][j] = t;
    }
  }
  // Enumerate from the last coordinate down (so `half` can clamp it to >= 0).
  std::vector<long> c(n, 0);
  std::vector<double> center(n, 0.0), partial(n + 1, 0.0);
  // partial[i] = contribution of coordinates > i.
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i < 0) {
      for (int j = 0; j < n; j++)
        if (c[j] != 0) return cb(c);
      return true;  // skip the zero vector
    }
    // center_i = -sum_{j>i} q[i][j] c_j
    double ctr = 0;
    for (int j = i + 1; j < n; j++) ctr -= q[i][j] * c[j];
    double room = bound - partial[i + 1];
    if (room < -1e-9) return true;
    double halfwidth = std::sqrt(std::max(0.0, room) / q[i][i]) + 1e-9;
    long lo = (long)std::ceil(ctr - halfwidth);
    long hi = (long)std::floor(ctr + halfwidth);
    if (half) {
      // Keep only the representative with last nonzero coordinate positive.
      bool higher_zero = true;
      for (int j = i + 1; j < n; j++)
        if (c[j] != 0) { higher_zero = false; break; }
      if (higher_zero) lo = std::max(lo, 0L);
    }
    for (long v = lo; v <= hi; v++) {
      c[i] = v;
      double t = v - ctr;
      partial[i] = partial[i + 1] + q[i][i] * t * t;
      if (partial[i] > bound + 1e-9) continue;
      if (!rec(i - 1)) return false;
    }
    c[i] = 0;
    return true;
  };
  rec(n - 1);
}

}  // namespace heckelab
