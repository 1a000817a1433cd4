#pragma once

#include <cstddef>
#include <span>

namespace thetarep::series {

/// Real Gaussian series on a batch of points:
///   S(x) = sum_{n=n_lo}^{n_lo+len-1} exp(log_w[n-n_lo] - eps n^2 + n x).
/// Per point we return log S, the mean index <n> and the variance <n^2>-<n>^2
/// under the probability weights of the terms, so (ln S)' = <n> and
/// (ln S)'' = var.  `tail` is the log-ratio of the larger end term to the
/// peak term; callers use it to confirm the window was wide enough.
struct BatchOut {
  double* log_s;
  double* mean;
  double* var;
  double* tail;
};

enum class Backend { Auto, Scalar, Avx2 };

void evaluate(std::span<const double> x, double eps, int n_lo, std::span<const double> log_w, const BatchOut& out,
              Backend backend = Backend::Auto);

/// True when the binary carries the AVX2 kernel and the CPU supports it.
bool avx2_available();

/// The backend Auto resolves to.
Backend resolved_backend();

namespace detail {
void evaluate_scalar(const double* x, std::size_t count, double eps, int n_lo, const double* log_w, std::size_t len,
                     const BatchOut& out);
#if defined(THETAREP_BUILD_AVX2)
void evaluate_avx2(const double* x, std::size_t count, double eps, int n_lo, const double* log_w, std::size_t len,
                   const BatchOut& out);
#endif
}  // namespace detail

}  // namespace thetarep::series
