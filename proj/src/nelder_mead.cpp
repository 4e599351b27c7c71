#include "oacs/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "oacs/errors.hpp"

namespace oacs {

namespace {

struct BudgetExhausted {};

class CountedObjective {
 public:
  CountedObjective(const std::function<double(const Eigen::VectorXd&)>& f, int budget, NelderMeadResult& r)
      : f_(f), budget_(budget), r_(r) {}

  double operator()(const Eigen::VectorXd& x) {
    if (r_.evaluations >= budget_) throw BudgetExhausted{};
    double v = f_(x);
    ++r_.evaluations;
    if (!std::isfinite(v)) v = std::numeric_limits<double>::infinity();
    if (r_.evaluations == 1) r_.initial_value = v;
    if (r_.evaluations == 1 || v < r_.best_value) {
      r_.best_value = v;
      r_.best_x = x;
    }
    return v;
  }

 private:
  const std::function<double(const Eigen::VectorXd&)>& f_;
  int budget_;
  NelderMeadResult& r_;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  if (options.budget < 1) throw ContractViolation("nelder_mead: budget must be >= 1");
  if (!(options.initial_step > 0.0)) throw ContractViolation("nelder_mead: initial_step must be > 0");

  NelderMeadResult result;
  result.best_x = start;
  CountedObjective f(objective, options.budget, result);
  const auto n = start.size();

  try {
    const double f0 = f(start);
    if (n == 0) return result;

    const double nd = static_cast<double>(n);
    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / nd;
    const double rho = 0.75 - 1.0 / (2.0 * nd);
    const double sigma = 1.0 - 1.0 / nd;

    std::vector<Eigen::VectorXd> simplex(n + 1);
    std::vector<double> values(n + 1);
    double step = options.initial_step;
    simplex[0] = start;
    values[0] = f0;

    for (;;) {
      for (Eigen::Index k = 0; k < n; ++k) {
        simplex[k + 1] = simplex[0];
        simplex[k + 1](k) += step;
        values[k + 1] = f(simplex[k + 1]);
      }

      for (;;) {
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<Eigen::VectorXd> s2(n + 1);
        std::vector<double> v2(n + 1);
        for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
          s2[k] = std::move(simplex[order[k]]);
          v2[k] = values[order[k]];
        }
        simplex.swap(s2);
        values.swap(v2);

        double diameter = 0.0;
        for (Eigen::Index k = 1; k <= n; ++k) {
          diameter = std::max(diameter, (simplex[k] - simplex[0]).cwiseAbs().maxCoeff());
        }
        if (diameter < options.restart_size) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (Eigen::Index k = 0; k < n; ++k) centroid += simplex[k];
        centroid /= nd;
        const Eigen::VectorXd& worst = simplex[n];

        const Eigen::VectorXd xr = centroid + alpha * (centroid - worst);
        const double fr = f(xr);
        if (fr < values[0]) {
          const Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
          const double fe = f(xe);
          if (fe < fr) {
            simplex[n] = xe;
            values[n] = fe;
          } else {
            simplex[n] = xr;
            values[n] = fr;
          }
          continue;
        }
        if (fr < values[n - 1]) {
          simplex[n] = xr;
          values[n] = fr;
          continue;
        }
        if (fr < values[n]) {
          const Eigen::VectorXd xc = centroid + rho * (xr - centroid);
          const double fc = f(xc);
          if (fc <= fr) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
          }
        } else {
          const Eigen::VectorXd xc = centroid - rho * (centroid - worst);
          const double fc = f(xc);
          if (fc < values[n]) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
          }
        }
        for (Eigen::Index k = 1; k <= n; ++k) {
          simplex[k] = simplex[0] + sigma * (simplex[k] - simplex[0]);
          values[k] = f(simplex[k]);
        }
      }

      ++result.shrink_restarts;
      step *= options.restart_shrink;
      if (step < options.restart_size) step = options.initial_step;
    }
  } catch (const BudgetExhausted&) {
  }
  return result;
}

}  // namespace oacs
