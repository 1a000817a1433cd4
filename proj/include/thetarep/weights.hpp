#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace thetarep {

using cplx = std::complex<double>;
using ComplexFn = std::function<cplx(cplx)>;

/// Lattice values of a generalized factorial rho_!(n hbar), kept in log space
/// (log-modulus + accumulated phase) so that Gamma-like growth never
/// overflows.  Optionally carries the pointwise factor rho and a continuous
/// evaluator t -> rho_!(t) for complex t.
class WeightSequence {
 public:
  WeightSequence() = default;

  /// rho == 1: every lattice value is 1, on all of Z.
  static WeightSequence unit(double hbar);

  /// Explicit lattice: log_values[i] = log rho_!((n_min + i) hbar).
  static WeightSequence from_logs(int n_min, std::vector<cplx> log_values, double hbar);

  /// rho_!(n hbar) = rho(hbar)...rho(n hbar), rho_!(0) = 1, and the inverse
  /// products for n < 0.  Phases are accumulated step by step, so arg
  /// rho_!(n hbar) is the continuous sum of principal arguments.
  /// Throws DomainError naming k when rho(k hbar) == 0.
  static WeightSequence factorial_of(ComplexFn rho, int n_min, int n_max, double hbar);

  bool is_unit() const { return unit_; }
  bool has(int n) const { return unit_ || (n >= n_min_ && n <= n_max()); }
  int n_min() const { return n_min_; }
  int n_max() const { return n_min_ + static_cast<int>(logs_.size()) - 1; }
  double hbar() const { return hbar_; }

  /// log rho_!(n hbar); InputError if n is outside the stored range.
  cplx log_at(int n) const;
  cplx value_at(int n) const { return std::exp(log_at(n)); }

  const ComplexFn& pointwise() const { return rho_; }
  const ComplexFn& continuous() const { return continuous_; }
  void set_pointwise(ComplexFn rho) { rho_ = std::move(rho); }
  void set_continuous(ComplexFn f) { continuous_ = std::move(f); }

  /// |rho_!|^2 on the lattice.  The pointwise factor becomes |rho(t)|^2 for
  /// real t; the continuous evaluator t -> rho_!(t) * conj(rho_!(conj t)) is
  /// carried over when present.
  WeightSequence modulus_squared() const;

 private:
  bool unit_ = false;
  int n_min_ = 0;
  std::vector<cplx> logs_;
  double hbar_ = 1.0;
  ComplexFn rho_;
  ComplexFn continuous_;
};

}  // namespace thetarep
