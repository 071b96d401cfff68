#pragma once

#include <span>

#include "expsum/core.hpp"

namespace expsum::kernels {

// Data-parallel inner loops. Every kernel comes in a serial reference
// version and an OpenMP version writing the same per-slot values, so the two
// must agree bitwise; the unsuffixed entry point dispatches on input size and
// the thread budget. Outputs go to disjoint slots, which keeps results
// independent of the schedule.

void eval_scaled_batch_serial(const ExpSum& f, std::span<const Complex> pts,
                              std::span<ScaledEval> out);
void eval_scaled_batch_parallel(const ExpSum& f, std::span<const Complex> pts,
                                std::span<ScaledEval> out);
void eval_scaled_batch(const ExpSum& f, std::span<const Complex> pts,
                       std::span<ScaledEval> out);

void trace_eval_batch_serial(const ExpSum& f, std::span<const Complex> pts,
                             std::span<ScaledTraceEval> out);
void trace_eval_batch_parallel(const ExpSum& f, std::span<const Complex> pts,
                               std::span<ScaledTraceEval> out);
void trace_eval_batch(const ExpSum& f, std::span<const Complex> pts,
                      std::span<ScaledTraceEval> out);

void margin_grid_serial(const ExpSum& f, int k, std::span<const double> xs,
                        std::span<double> out);
void margin_grid_parallel(const ExpSum& f, int k, std::span<const double> xs,
                          std::span<double> out);
void margin_grid(const ExpSum& f, int k, std::span<const double> xs,
                 std::span<double> out);

/// log |f(center + radius * exp(i*theta))| for each theta.
void circle_logmod_serial(const ExpSum& f, Complex center, double radius,
                          std::span<const double> thetas, std::span<double> out);
void circle_logmod_parallel(const ExpSum& f, Complex center, double radius,
                            std::span<const double> thetas, std::span<double> out);
void circle_logmod(const ExpSum& f, Complex center, double radius,
                   std::span<const double> thetas, std::span<double> out);

}  // namespace expsum::kernels
