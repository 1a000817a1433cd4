#include "thetarep/errors.hpp"
#include "thetarep/series_batch.hpp"

namespace thetarep::series {

bool avx2_available() {
#if defined(THETAREP_BUILD_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend resolved_backend() { return avx2_available() ? Backend::Avx2 : Backend::Scalar; }

void evaluate(std::span<const double> x, double eps, int n_lo, std::span<const double> log_w, const BatchOut& out,
              Backend backend) {
  if (log_w.empty()) throw InputError("series::evaluate: empty index window");
  if (!(eps > 0.0)) throw DomainError("series::evaluate: eps must be positive");
  if (backend == Backend::Auto) backend = resolved_backend();
  if (backend == Backend::Avx2) {
#if defined(THETAREP_BUILD_AVX2)
    if (!avx2_available()) throw InputError("series::evaluate: AVX2 backend requested but unsupported by this CPU");
    detail::evaluate_avx2(x.data(), x.size(), eps, n_lo, log_w.data(), log_w.size(), out);
    return;
#else
    throw InputError("series::evaluate: AVX2 backend not compiled in");
#endif
  }
  detail::evaluate_scalar(x.data(), x.size(), eps, n_lo, log_w.data(), log_w.size(), out);
}

}  // namespace thetarep::series
