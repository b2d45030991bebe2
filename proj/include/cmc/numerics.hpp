#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cmc {

struct QuadratureSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
};

void validate(const QuadratureSettings& settings);

/**
 * @brief Globally adaptive 15-point Gauss–Kronrod on [a,b].
 *
 * Falls back to doubling composite Simpson when the subdivision budget runs
 * out. Throws QuadratureError if neither meets max(abs_tol, rel_tol·|I|).
 */
[[nodiscard]] double integrate(const std::function<double(double)>& f, double a, double b,
                               const QuadratureSettings& settings);

/// Sum of integrate() over consecutive breakpoints.
[[nodiscard]] double integrate_pieces(const std::function<double(double)>& f,
                                      const std::vector<double>& breaks,
                                      const QuadratureSettings& settings);

/// TOMS 748 on a sign-changing bracket; stops when the bracket is below xtol.
[[nodiscard]] double refine_root(const std::function<double(double)>& f, double lo, double hi,
                                 double flo, double fhi, double xtol, int max_iter);

/// Worker count: CMC_TUBES_THREADS if set, else hardware concurrency.
[[nodiscard]] unsigned worker_count();

/// Runs body(i) for i in [0,n) on worker_count() threads. Each index is
/// visited exactly once, so writing to slot i of a presized vector is
/// deterministic. The exception from the lowest failing index is rethrown
/// after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

[[nodiscard]] std::vector<double> linspace(double lo, double hi, int n);
[[nodiscard]] std::vector<double> logspace(double lo, double hi, int n);

}  // namespace cmc
