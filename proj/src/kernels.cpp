#include "expsum/kernels.hpp"

#include <cmath>
#include <cstdint>

#include "expsum/parallel.hpp"
#include "expsum/strip.hpp"

namespace expsum::kernels {

void eval_scaled_batch_serial(const ExpSum& f, std::span<const Complex> pts,
                              std::span<ScaledEval> out) {
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = eval_scaled_full(f, pts[i]);
}

void eval_scaled_batch_parallel(const ExpSum& f, std::span<const Complex> pts,
                                std::span<ScaledEval> out) {
  const std::int64_t n = static_cast<std::int64_t>(pts.size());
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = eval_scaled_full(f, pts[static_cast<std::size_t>(i)]);
}

void eval_scaled_batch(const ExpSum& f, std::span<const Complex> pts,
                       std::span<ScaledEval> out) {
  if (parallel_worthwhile(pts.size()))
    eval_scaled_batch_parallel(f, pts, out);
  else
    eval_scaled_batch_serial(f, pts, out);
}

void trace_eval_batch_serial(const ExpSum& f, std::span<const Complex> pts,
                             std::span<ScaledTraceEval> out) {
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = eval_scaled_trace(f, pts[i]);
}

void trace_eval_batch_parallel(const ExpSum& f, std::span<const Complex> pts,
                               std::span<ScaledTraceEval> out) {
  const std::int64_t n = static_cast<std::int64_t>(pts.size());
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = eval_scaled_trace(f, pts[static_cast<std::size_t>(i)]);
}

void trace_eval_batch(const ExpSum& f, std::span<const Complex> pts,
                      std::span<ScaledTraceEval> out) {
  if (parallel_worthwhile(pts.size()))
    trace_eval_batch_parallel(f, pts, out);
  else
    trace_eval_batch_serial(f, pts, out);
}

void margin_grid_serial(const ExpSum& f, int k, std::span<const double> xs,
                        std::span<double> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = dominance_margin(f, k, xs[i]);
}

void margin_grid_parallel(const ExpSum& f, int k, std::span<const double> xs,
                          std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = dominance_margin(f, k, xs[static_cast<std::size_t>(i)]);
}

void margin_grid(const ExpSum& f, int k, std::span<const double> xs,
                 std::span<double> out) {
  if (parallel_worthwhile(xs.size()))
    margin_grid_parallel(f, k, xs, out);
  else
    margin_grid_serial(f, k, xs, out);
}

void circle_logmod_serial(const ExpSum& f, Complex center, double radius,
                          std::span<const double> thetas, std::span<double> out) {
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const Complex z = center + radius * Complex(std::cos(thetas[i]), std::sin(thetas[i]));
    out[i] = eval_scaled_full(f, z).logmod;
  }
}

void circle_logmod_parallel(const ExpSum& f, Complex center, double radius,
                            std::span<const double> thetas, std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(thetas.size());
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::int64_t i = 0; i < n; ++i) {
    const double th = thetas[static_cast<std::size_t>(i)];
    const Complex z = center + radius * Complex(std::cos(th), std::sin(th));
    out[static_cast<std::size_t>(i)] = eval_scaled_full(f, z).logmod;
  }
}

void circle_logmod(const ExpSum& f, Complex center, double radius,
                   std::span<const double> thetas, std::span<double> out) {
  if (parallel_worthwhile(thetas.size()))
    circle_logmod_parallel(f, center, radius, thetas, out);
  else
    circle_logmod_serial(f, center, radius, thetas, out);
}

}  // namespace expsum::kernels
