#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "thetarep/series_batch.hpp"

namespace thetarep::series::detail {

namespace {

// exp(v) for v in [-700, 0]: Cody-Waite reduction v = k ln2 + r with
// |r| <= ln2/2, degree-13 Taylor polynomial for e^r, then 2^k via the
// exponent bits.  Relative error is a few ulp.
inline __m256d exp_nonpositive(__m256d v) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  v = _mm256_max_pd(v, _mm256_set1_pd(-700.0));
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(v, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, v);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  static constexpr double kInvFact[14] = {1.0,
                                          1.0,
                                          1.0 / 2.0,
                                          1.0 / 6.0,
                                          1.0 / 24.0,
                                          1.0 / 120.0,
                                          1.0 / 720.0,
                                          1.0 / 5040.0,
                                          1.0 / 40320.0,
                                          1.0 / 362880.0,
                                          1.0 / 3628800.0,
                                          1.0 / 39916800.0,
                                          1.0 / 479001600.0,
                                          1.0 / 6227020800.0};
  __m256d p = _mm256_set1_pd(kInvFact[13]);
  for (int j = 12; j >= 0; --j) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFact[j]));

  const __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i bits = _mm256_cvtepi32_epi64(k32);
  bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

inline __m256d exponent(double lw, double n, double eps, __m256d x) {
  const __m256d base = _mm256_set1_pd(lw - eps * n * n);
  return _mm256_add_pd(base, _mm256_mul_pd(_mm256_set1_pd(n), x));
}

void block4(const double* xin, double eps, int n_lo, const double* log_w, std::size_t len, double* log_s,
            double* mean, double* var, double* tail) {
  const __m256d x = _mm256_loadu_pd(xin);
  __m256d peak = _mm256_set1_pd(-1e308);
  __m256d n_peak = _mm256_setzero_pd();
  for (std::size_t i = 0; i < len; ++i) {
    const double n = static_cast<double>(n_lo + static_cast<int>(i));
    const __m256d e = exponent(log_w[i], n, eps, x);
    const __m256d gt = _mm256_cmp_pd(e, peak, _CMP_GT_OQ);
    peak = _mm256_blendv_pd(peak, e, gt);
    n_peak = _mm256_blendv_pd(n_peak, _mm256_set1_pd(n), gt);
  }

  __m256d s = _mm256_setzero_pd();
  __m256d m1 = _mm256_setzero_pd();
  const auto visit1 = [&](std::size_t i) {
    const double n = static_cast<double>(n_lo + static_cast<int>(i));
    const __m256d w = exp_nonpositive(_mm256_sub_pd(exponent(log_w[i], n, eps, x), peak));
    const __m256d d = _mm256_sub_pd(_mm256_set1_pd(n), n_peak);
    s = _mm256_add_pd(s, w);
    m1 = _mm256_add_pd(m1, _mm256_mul_pd(d, w));
  };
  std::size_t lo = 0;
  std::size_t hi = len - 1;
  while (lo < hi) {
    visit1(lo++);
    visit1(hi--);
  }
  if (lo == hi) visit1(lo);
  const __m256d shift = _mm256_div_pd(m1, s);

  __m256d m2 = _mm256_setzero_pd();
  const auto visit2 = [&](std::size_t i) {
    const double n = static_cast<double>(n_lo + static_cast<int>(i));
    const __m256d w = exp_nonpositive(_mm256_sub_pd(exponent(log_w[i], n, eps, x), peak));
    const __m256d d = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(n), n_peak), shift);
    m2 = _mm256_add_pd(m2, _mm256_mul_pd(_mm256_mul_pd(d, d), w));
  };
  lo = 0;
  hi = len - 1;
  while (lo < hi) {
    visit2(lo++);
    visit2(hi--);
  }
  if (lo == hi) visit2(lo);

  alignas(32) double peak_a[4], s_a[4], np_a[4], sh_a[4], m2_a[4];
  _mm256_store_pd(peak_a, peak);
  _mm256_store_pd(s_a, s);
  _mm256_store_pd(np_a, n_peak);
  _mm256_store_pd(sh_a, shift);
  _mm256_store_pd(m2_a, m2);
  const double n_first = static_cast<double>(n_lo);
  const double n_last = static_cast<double>(n_lo + static_cast<int>(len) - 1);
  for (int l = 0; l < 4; ++l) {
    // std::log here keeps the scalar and vector paths bit-close on log S.
    log_s[l] = peak_a[l] + std::log(s_a[l]);
    mean[l] = np_a[l] + sh_a[l];
    var[l] = m2_a[l] / s_a[l];
    const double e0 = log_w[0] - eps * n_first * n_first + n_first * xin[l];
    const double e1 = log_w[len - 1] - eps * n_last * n_last + n_last * xin[l];
    tail[l] = std::max(e0, e1) - peak_a[l];
  }
}

}  // namespace

void evaluate_avx2(const double* x, std::size_t count, double eps, int n_lo, const double* log_w, std::size_t len,
                   const BatchOut& out) {
  std::size_t p = 0;
  for (; p + 4 <= count; p += 4) {
    block4(x + p, eps, n_lo, log_w, len, out.log_s + p, out.mean + p, out.var + p, out.tail + p);
  }
  if (p < count) {
    double xb[4], ls[4], mn[4], vr[4], tl[4];
    for (int l = 0; l < 4; ++l) xb[l] = x[std::min(p + l, count - 1)];
    block4(xb, eps, n_lo, log_w, len, ls, mn, vr, tl);
    for (std::size_t l = 0; p + l < count; ++l) {
      out.log_s[p + l] = ls[l];
      out.mean[p + l] = mn[l];
      out.var[p + l] = vr[l];
      out.tail[p + l] = tl[l];
    }
  }
}

}  // namespace thetarep::series::detail
