#include "thetarep/weights.hpp"

#include <string>

#include "thetarep/errors.hpp"

namespace thetarep {

WeightSequence WeightSequence::unit(double hbar) {
  WeightSequence w;
  w.unit_ = true;
  w.hbar_ = hbar;
  w.rho_ = [](cplx) { return cplx(1.0, 0.0); };
  w.continuous_ = [](cplx) { return cplx(1.0, 0.0); };
  return w;
}

WeightSequence WeightSequence::from_logs(int n_min, std::vector<cplx> log_values, double hbar) {
  if (log_values.empty()) throw InputError("WeightSequence: empty lattice");
  if (n_min > 0 || n_min + static_cast<int>(log_values.size()) - 1 < 0) {
    throw InputError("WeightSequence: lattice must contain n = 0");
  }
  WeightSequence w;
  w.n_min_ = n_min;
  w.logs_ = std::move(log_values);
  w.hbar_ = hbar;
  return w;
}

WeightSequence WeightSequence::factorial_of(ComplexFn rho, int n_min, int n_max, double hbar) {
  if (n_min > 0 || n_max < 0) throw InputError("factorial_of: range must contain 0");
  std::vector<cplx> logs(static_cast<std::size_t>(n_max - n_min + 1));
  const auto at = [&](int n) -> cplx& { return logs[static_cast<std::size_t>(n - n_min)]; };
  const auto log_rho = [&](int k) {
    const cplx v = rho(cplx(k * hbar, 0.0));
    if (v == cplx(0.0, 0.0)) {
      throw DomainError("generalized factorial: rho vanishes at lattice index k = " + std::to_string(k));
    }
    return std::log(v);
  };
  at(0) = 0.0;
  for (int n = 1; n <= n_max; ++n) at(n) = at(n - 1) + log_rho(n);
  for (int n = -1; n >= n_min; --n) at(n) = at(n + 1) - log_rho(n + 1);
  WeightSequence w = from_logs(n_min, std::move(logs), hbar);
  w.rho_ = std::move(rho);
  return w;
}

cplx WeightSequence::log_at(int n) const {
  if (unit_) return 0.0;
  if (n < n_min_ || n > n_max()) {
    throw InputError("WeightSequence: no lattice value for n = " + std::to_string(n) + " (stored range [" +
                     std::to_string(n_min_) + ", " + std::to_string(n_max()) + "])");
  }
  return logs_[static_cast<std::size_t>(n - n_min_)];
}

WeightSequence WeightSequence::modulus_squared() const {
  if (unit_) return unit(hbar_);
  std::vector<cplx> logs(logs_.size());
  for (std::size_t i = 0; i < logs_.size(); ++i) logs[i] = 2.0 * logs_[i].real();
  WeightSequence w = from_logs(n_min_, std::move(logs), hbar_);
  if (rho_) {
    auto rho = rho_;
    w.rho_ = [rho](cplx t) { return cplx(std::norm(rho(cplx(t.real(), 0.0))), 0.0); };
  }
  if (continuous_) {
    auto f = continuous_;
    w.continuous_ = [f](cplx t) { return f(t) * std::conj(f(std::conj(t))); };
  }
  return w;
}

}  // namespace thetarep
