#include <algorithm>
#include <cmath>
#include <limits>

#include "thetarep/series_batch.hpp"

namespace thetarep::series::detail {

// Reference kernel.  Three passes per point: peak exponent, weighted sum and
// first moment, then the central second moment about the mean.  Each pass
// visits the indices from both ends inward, so the smallest terms go first.
void evaluate_scalar(const double* x, std::size_t count, double eps, int n_lo, const double* log_w, std::size_t len,
                     const BatchOut& out) {
  for (std::size_t p = 0; p < count; ++p) {
    const double xp = x[p];
    const auto expo = [&](std::size_t i) {
      const double n = static_cast<double>(n_lo + static_cast<int>(i));
      return log_w[i] - eps * n * n + n * xp;
    };
    double peak = -std::numeric_limits<double>::infinity();
    double n_peak = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      const double e = expo(i);
      if (e > peak) {
        peak = e;
        n_peak = static_cast<double>(n_lo + static_cast<int>(i));
      }
    }
    double s = 0.0;
    double m1 = 0.0;
    std::size_t lo = 0;
    std::size_t hi = len - 1;
    const auto visit1 = [&](std::size_t i) {
      const double w = std::exp(std::max(expo(i) - peak, -700.0));
      const double d = static_cast<double>(n_lo + static_cast<int>(i)) - n_peak;
      s += w;
      m1 += d * w;
    };
    while (lo < hi) {
      visit1(lo++);
      visit1(hi--);
    }
    if (lo == hi) visit1(lo);
    const double shift = m1 / s;
    const double mean = n_peak + shift;
    double m2 = 0.0;
    lo = 0;
    hi = len - 1;
    const auto visit2 = [&](std::size_t i) {
      const double w = std::exp(std::max(expo(i) - peak, -700.0));
      const double d = static_cast<double>(n_lo + static_cast<int>(i)) - n_peak - shift;
      m2 += d * d * w;
    };
    while (lo < hi) {
      visit2(lo++);
      visit2(hi--);
    }
    if (lo == hi) visit2(lo);
    out.log_s[p] = peak + std::log(s);
    out.mean[p] = mean;
    out.var[p] = m2 / s;
    out.tail[p] = std::max(expo(0), expo(len - 1)) - peak;
  }
}

}  // namespace thetarep::series::detail
