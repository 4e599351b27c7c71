#pragma once

#include <functional>

#include <Eigen/Dense>

namespace oacs {

struct NelderMeadOptions {
  int budget = 1000;            // objective evaluations
  double initial_step = 0.1;    // simplex edge length
  double restart_size = 1e-9;   // simplex diameter that triggers a shrink restart
  double restart_shrink = 0.5;  // edge factor applied at each shrink restart
};

struct NelderMeadResult {
  Eigen::VectorXd best_x;
  double best_value = 0.0;
  double initial_value = 0.0;
  int evaluations = 0;
  int shrink_restarts = 0;
};

/// Nelder-Mead with dimension-adaptive coefficients (reflection 1,
/// expansion 1 + 2/n, contraction 0.75 - 1/(2n), shrink 1 - 1/n). When the
/// simplex collapses the search restarts from the best vertex with a shrunken
/// simplex. Non-finite values rank as +inf. The result is the best point over
/// every evaluation, and no step depends on the remaining budget, so a larger
/// budget extends the same trajectory.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options);

}  // namespace oacs
