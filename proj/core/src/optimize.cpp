#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace mschmidt::detail {
namespace {

struct GslVectorDeleter {
  void operator()(gsl_vector* v) const noexcept { gsl_vector_free(v); }
};
using GslVector = std::unique_ptr<gsl_vector, GslVectorDeleter>;

GslVector to_gsl(const std::vector<double>& x) {
  GslVector v(gsl_vector_alloc(x.size()));
  std::copy(x.begin(), x.end(), v->data);
  return v;
}

std::vector<double> from_gsl(const gsl_vector* v) { return {v->data, v->data + v->size}; }

double guarded(const Objective& f, const gsl_vector* x) {
  const double value = f(std::span<const double>(x->data, x->size));
  return std::isfinite(value) ? value : std::numeric_limits<double>::max();
}

double f_trampoline(const gsl_vector* x, void* params) {
  return guarded(*static_cast<const Objective*>(params), x);
}

void df_impl(const Objective& f, const gsl_vector* x, double fx, gsl_vector* grad) {
  std::vector<double> probe(x->data, x->data + x->size);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double h = 1e-7 * std::max(1.0, std::abs(probe[i]));
    const double saved = probe[i];
    probe[i] = saved + h;
    const double fp = f(probe);
    probe[i] = saved;
    gsl_vector_set(grad, i, std::isfinite(fp) ? (fp - fx) / h : 0.0);
  }
}

void df_trampoline(const gsl_vector* x, void* params, gsl_vector* grad) {
  const auto& f = *static_cast<const Objective*>(params);
  df_impl(f, x, guarded(f, x), grad);
}

void fdf_trampoline(const gsl_vector* x, void* params, double* fx, gsl_vector* grad) {
  const auto& f = *static_cast<const Objective*>(params);
  *fx = guarded(f, x);
  df_impl(f, x, *fx, grad);
}

// GSL's default handler aborts; minimizer failures are reported via status codes.
struct ErrorHandlerGuard {
  gsl_error_handler_t* previous = gsl_set_error_handler_off();
  ~ErrorHandlerGuard() { gsl_set_error_handler(previous); }
};

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, double step, int max_iter,
                           double size_tol, double target) {
  ErrorHandlerGuard guard;
  const std::size_t n = x0.size();
  if (n == 0) return {x0, f(x0), 0};

  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n),
      gsl_multimin_fminimizer_free);
  auto x = to_gsl(x0);
  GslVector steps(gsl_vector_alloc(n));
  gsl_vector_set_all(steps.get(), step);

  gsl_multimin_function fn{&f_trampoline, n, const_cast<Objective*>(&f)};
  gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), steps.get());

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
    if (solver->fval <= target) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver.get()), size_tol) == GSL_SUCCESS)
      break;
  }
  return {from_gsl(solver->x), solver->fval, iter};
}

MinimizeResult bfgs(const Objective& f, std::vector<double> x0, int max_iter, double grad_tol,
                    double target) {
  ErrorHandlerGuard guard;
  const std::size_t n = x0.size();
  if (n == 0) return {x0, f(x0), 0};

  std::unique_ptr<gsl_multimin_fdfminimizer, decltype(&gsl_multimin_fdfminimizer_free)> solver(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n),
      gsl_multimin_fdfminimizer_free);
  auto x = to_gsl(x0);
  gsl_multimin_function_fdf fn{&f_trampoline, &df_trampoline, &fdf_trampoline, n,
                               const_cast<Objective*>(&f)};
  gsl_multimin_fdfminimizer_set(solver.get(), &fn, x.get(), 0.05, 0.1);

  // Give up once a window of iterations gains less than 1% relative
  // progress: the run has settled on a positive local minimum.
  constexpr int kStallWindow = 25;
  double window_start = solver->f;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    if (solver->f <= target) break;
    if (gsl_multimin_fdfminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_gradient(solver->gradient, grad_tol) == GSL_SUCCESS) break;
    if ((iter + 1) % kStallWindow == 0) {
      if (solver->f > 0.99 * window_start) break;
      window_start = solver->f;
    }
  }
  return {from_gsl(solver->x), solver->f, iter};
}

}  // namespace mschmidt::detail
