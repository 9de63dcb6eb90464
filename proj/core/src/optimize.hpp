#pragma once

// Thin wrappers over the GSL multidimensional minimizers. Internal to the
// library; objectives see a contiguous span of real parameters.

#include <functional>
#include <span>
#include <vector>

namespace mschmidt::detail {

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free simplex search (nmsimplex2). Stops when the simplex size
/// drops below `size_tol`, the value reaches `target`, or after `max_iter`.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, double step, int max_iter,
                           double size_tol, double target = -1e300);

/// BFGS (vector_bfgs2) with a forward-difference gradient. Also stops when 25
/// iterations in a row improve the value by less than 1%.
MinimizeResult bfgs(const Objective& f, std::vector<double> x0, int max_iter, double grad_tol,
                    double target = -1e300);

}  // namespace mschmidt::detail
