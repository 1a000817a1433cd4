#include "thetarep/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "thetarep/errors.hpp"
#include "thetarep/quadrature.hpp"
#include "thetarep/special.hpp"

namespace thetarep {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double x) { return x - 2.0 * kPi * std::floor((x + kPi) / (2.0 * kPi)); }

}  // namespace

double FactorizationData::re_g_prime(double t) const {
  if (g_prime) return g_prime(cplx(t, 0.0)).real();
  if (!g || nu_is_unit) return 0.0;
  const double h = hbar / 100.0;
  return ((g(cplx(t + h, 0.0)) - g(cplx(t - h, 0.0))) / (2.0 * h)).real();
}

ComplexFn mu_su11(double a0, double a, double hbar) {
  const double lambda2 = a0 - (a - hbar / 2.0) * (a - hbar / 2.0);
  if (!(lambda2 > 0.0)) throw ParameterError("mu_su11: lambda^2 = a0 - (a - hbar/2)^2 must be positive");
  const double lambda = std::sqrt(lambda2);
  return [a, hbar, lambda](cplx t) { return t + a - hbar / 2.0 - cplx(0.0, lambda); };
}

ComplexFn sklyanin_mu_from(double phi, double kappa1, double psi, cplx zeta, cplx xi) {
  const cplx a = std::sqrt(kappa1) * std::exp(cplx(0.0, psi / 2.0));
  const cplx za = zeta * a;
  const cplx xa_bar = std::conj(xi * a);
  return [phi, za, xa_bar](cplx t) {
    const cplx e = std::exp(cplx(0.0, phi) * t);
    return za * e - xa_bar / e;
  };
}

SklyaninMu mu_sklyanin(double phi, double kappa1, double psi, double a0) {
  if (!(phi > 0.0 && phi < kPi)) throw ParameterError("mu_sklyanin: phi must lie in (0, pi)");
  if (!(kappa1 > 0.0)) throw ParameterError("mu_sklyanin: kappa1 must be positive");
  const double sin_phi = std::sin(phi);
  const double S = a0 / kappa1 + std::cos(psi - phi) / sin_phi;
  const double disc = S * S - 1.0 / (sin_phi * sin_phi);
  if (!(disc > 0.0) || !(S > 0.0)) {
    throw ParameterError("mu_sklyanin: system for (zeta, xi) has no solution; condition a0 > kappa1 (1 - cos(psi - "
                         "phi)) / sin(phi) fails");
  }
  const double x_large = 0.5 * (S + std::sqrt(disc));
  const cplx zeta(std::sqrt(x_large), 0.0);
  const cplx xi = std::exp(cplx(0.0, -phi)) / (2.0 * sin_phi * zeta);
  return {sklyanin_mu_from(phi, kappa1, psi, zeta, xi), zeta, xi};
}

ComplexFn numeric_log_derivative(ComplexFn nu) {
  return [nu](cplx t) {
    const double h = 1e-3 * std::max(1.0, std::abs(t));
    const cplx l_m2 = std::log(nu(t - 2.0 * h));
    const cplx l_m1 = std::log(nu(t - h));
    const cplx l_p1 = std::log(nu(t + h));
    const cplx l_p2 = std::log(nu(t + 2.0 * h));
    // Branch jumps between neighbouring samples are removed against l_p1 - l_m1.
    const auto unwrap = [](cplx d) { return cplx(d.real(), wrap_angle(d.imag())); };
    const cplx d1 = unwrap(l_p1 - l_m1);
    const cplx d2 = unwrap(l_p2 - l_m2);
    return (8.0 * d1 - d2) / (12.0 * h);
  };
}

ComplexFn solve_g_series(ComplexFn dlog, const GAsymptotics& asym, double hbar) {
  if (!(hbar > 0.0)) throw ParameterError("solve_g_series: hbar must be positive");
  return [dlog, asym, hbar](cplx t) -> cplx {
    const bool plus = asym.side == AsymptoticSide::PlusInfinity;
    const auto term = [&](long k) -> cplx {
      const double kd = static_cast<double>(k);
      if (plus) return -hbar * dlog(t + kd * hbar) + asym.b / kd + hbar * asym.p;
      return hbar * dlog(t - kd * hbar) + asym.b / kd - hbar * asym.p;
    };
    constexpr long kCap = 1000000;
    long K = std::max<long>(16, static_cast<long>(std::ceil(4.0 * std::abs(t) / hbar)));
    long done = 0;
    cplx partial = 0.0;
    std::vector<cplx> prev_row;
    cplx value = 0.0;
    for (int j = 0;; ++j) {
      if (K > kCap) {
        throw ConvergenceError("solve_g_series: series did not settle within 1e6 terms at t = (" +
                               std::to_string(t.real()) + ", " + std::to_string(t.imag()) + ")");
      }
      double block_max = 0.0;
      for (long k = done + 1; k <= K; ++k) {
        const cplx tk = term(k);
        block_max = std::max(block_max, std::abs(tk));
        partial += tk;
      }
      done = K;
      if (block_max < 1e-14) {
        value = partial;
        break;
      }
      // Richardson table in 1/K, K doubling per row.
      std::vector<cplx> row(static_cast<std::size_t>(j) + 1);
      row[0] = partial;
      for (int m = 1; m <= j; ++m) {
        const double f = std::ldexp(1.0, m) - 1.0;
        row[m] = row[m - 1] + (row[m - 1] - prev_row[m - 1]) / f;
      }
      if (j >= 2) {
        const cplx diff = row[j] - prev_row[j - 1];
        if (std::abs(diff) <= 1e-13 * std::max(1.0, std::abs(row[j]))) {
          value = row[j];
          break;
        }
      }
      prev_row = std::move(row);
      K *= 2;
    }
    const double log_part = asym.b * (std::log(hbar) - special::kEulerGamma) + asym.l;
    if (plus) return value + log_part + asym.p * (t + hbar / 2.0);
    return value + hbar * dlog(t) + log_part + asym.p * (t - hbar / 2.0);
  };
}

WeightSequence nu_factorial_lattice(ComplexFn nu, int n_min, int n_max, double hbar) {
  return WeightSequence::factorial_of(std::move(nu), n_min, n_max, hbar);
}

cplx nu_factorial_continuous(const ComplexFn& g, cplx t, double hbar) {
  if (t == cplx(0.0, 0.0)) return 1.0;
  const auto integrand = [&](double s) { return g(s * t); };
  const cplx integral = t * quad::integrate_gk(integrand, 0.0, 1.0, 1e-13, 1e-13, 30);
  return std::exp(integral / hbar);
}

double tau_min(const ComplexFn& g, const ScanSpec& scan, double hbar) {
  const double h = hbar / 100.0;
  double lowest = 0.0;
  bool first = true;
  for (int i = 0; i < scan.samples; ++i) {
    const double t = scan.t_min + (scan.t_max - scan.t_min) * i / std::max(1, scan.samples - 1);
    const double d = ((g(cplx(t + h, 0.0)) - g(cplx(t - h, 0.0))) / (2.0 * h)).real();
    if (first || d < lowest) lowest = d;
    first = false;
  }
  return lowest == 0.0 ? 0.0 : -lowest;
}

FactorizationData normalize_resonant(const FactorizationData& fact, long N, double alpha) {
  if (N < 1) throw ParameterError("normalize_resonant: N must be positive");
  const double h = fact.hbar;
  double arg_sum = 0.0;
  for (long n = 1; n <= N; ++n) {
    const cplx b = fact.factor_B(cplx(n * h, 0.0));
    if (b == cplx(0.0, 0.0)) {
      throw DomainError("normalize_resonant: factor B vanishes at lattice index " + std::to_string(n));
    }
    arg_sum += std::arg(b);
  }
  const double rho = fact.nu_factorial.log_at(static_cast<int>(N)).real() / static_cast<double>(N);
  const double sigma = (alpha - arg_sum) / static_cast<double>(N);
  const cplx log_c(rho, sigma);
  const cplx c = std::exp(log_c);

  FactorizationData out = fact;
  const auto B = fact.factor_B;
  const auto C = fact.factor_C;
  out.factor_B = [B, c](cplx t) { return c * B(t); };
  out.factor_C = [C, c](cplx t) { return C(t) / c; };
  if (!(rho == 0.0 && sigma == 0.0)) {
    const auto nu = fact.nu;
    out.nu = [nu, c](cplx t) { return nu(t) / c; };
    out.nu_is_unit = false;
    if (fact.g) {
      const auto g = fact.g;
      out.g = [g, log_c](cplx t) { return g(t) - log_c; };
    } else {
      out.g = [log_c](cplx) { return -log_c; };
    }
    if (!fact.g_prime) out.g_prime = [](cplx) { return cplx(0.0, 0.0); };
    if (fact.nu_factorial.is_unit()) {
      out.nu_factorial = nu_factorial_lattice(out.nu, -256, 256, h);
    } else {
      const WeightSequence& w = fact.nu_factorial;
      std::vector<cplx> logs;
      for (int n = w.n_min(); n <= w.n_max(); ++n) logs.push_back(w.log_at(n) - static_cast<double>(n) * log_c);
      out.nu_factorial = WeightSequence::from_logs(w.n_min(), std::move(logs), h);
      out.nu_factorial.set_pointwise(out.nu);
    }
    if (fact.nu_factorial.continuous()) {
      const auto cont = fact.nu_factorial.continuous();
      out.nu_factorial.set_continuous([cont, log_c, h](cplx t) { return cont(t) * std::exp(-t / h * log_c); });
    }
  }
  out.alpha = alpha;
  out.period_N = N;
  return out;
}

FactorizationResiduals check_factorization(const FactorizationData& fact, double t_min, double t_max, int samples) {
  FactorizationResiduals r{0.0, 0.0, 0.0};
  for (int i = 0; i < samples; ++i) {
    const double t = t_min + (t_max - t_min) * i / std::max(1, samples - 1);
    const double F = fact.profile(t);
    const cplx m = fact.mu(cplx(t, 0.0));
    r.mu_modulus = std::max(r.mu_modulus, std::abs(std::norm(m) - F) / F);
    const cplx bc = fact.factor_B(cplx(t, 0.0)) * fact.factor_C(cplx(t, 0.0));
    r.factor_product = std::max(r.factor_product, std::abs(bc - F) / F);
  }
  const WeightSequence& w = fact.nu_factorial;
  if (!w.is_unit()) {
    for (int n = w.n_min(); n < w.n_max(); ++n) {
      const cplx d = w.log_at(n + 1) - w.log_at(n) - std::log(fact.nu(cplx((n + 1) * fact.hbar, 0.0)));
      r.recurrence = std::max(r.recurrence, std::abs(std::exp(d) - 1.0));
    }
  }
  return r;
}

FactorizationData factorization_unit(std::string name, std::function<double(double)> profile, ComplexFn mu,
                                     double hbar, double tau, int lattice_half_width) {
  (void)lattice_half_width;
  if (!(tau > 0.0)) throw ParameterError("factorization: tau must be positive");
  FactorizationData f;
  f.name = std::move(name);
  f.hbar = hbar;
  f.profile = std::move(profile);
  f.mu = mu;
  f.factor_B = mu;
  f.factor_C = [mu](cplx t) { return std::conj(mu(std::conj(t))); };
  f.nu = [](cplx) { return cplx(1.0, 0.0); };
  f.nu_log_derivative = [](cplx) { return cplx(0.0, 0.0); };
  f.g = [](cplx) { return cplx(0.0, 0.0); };
  f.g_prime = [](cplx) { return cplx(0.0, 0.0); };
  f.nu_is_unit = true;
  f.nu_factorial = WeightSequence::unit(hbar);
  f.tau = tau;
  f.tau0 = 0.0;
  return f;
}

FactorizationData factorization_su11_v1(double a0, double a, double hbar, double tau, int lattice_half_width) {
  const DeformationFlow flow = su11_flow(a0, a, hbar);
  return factorization_unit(
      "su11-v1", [flow](double t) { return surface_profile(flow, t); }, mu_su11(a0, a, hbar), hbar, tau,
      lattice_half_width);
}

FactorizationData factorization_su11_v2(double a0, double a, double hbar, double tau, int lattice_half_width) {
  const DeformationFlow flow = su11_flow(a0, a, hbar);
  if (!(tau > 0.0)) throw ParameterError("factorization: tau must be positive");
  const double lambda = flow.params.at("lambda");
  FactorizationData f;
  f.name = "su11-v2";
  f.hbar = hbar;
  f.profile = [flow](double t) { return surface_profile(flow, t); };
  f.mu = mu_su11(a0, a, hbar);
  // w(t) = conj(mu(conj t)); B = F = mu w, C = 1, nu = 1/w.
  const auto w = [a, hbar, lambda](cplx t) { return t + a - hbar / 2.0 + cplx(0.0, lambda); };
  const auto mu = f.mu;
  f.factor_B = [mu, w](cplx t) { return mu(t) * w(t); };
  f.factor_C = [](cplx) { return cplx(1.0, 0.0); };
  f.nu = [w](cplx t) { return 1.0 / w(t); };
  f.nu_log_derivative = [w](cplx t) { return -1.0 / w(t); };
  const double log_h = std::log(hbar);
  f.g = [w, hbar, log_h](cplx t) { return -special::digamma(1.0 + w(t) / hbar) - log_h; };
  f.g_prime = [w, hbar](cplx t) { return -special::trigamma(1.0 + w(t) / hbar) / hbar; };
  f.nu_factorial = nu_factorial_lattice(f.nu, -lattice_half_width, lattice_half_width, hbar);
  const cplx c = a / hbar + 0.5 + cplx(0.0, lambda / hbar);
  const cplx log_gamma_c = special::log_gamma(c);
  f.nu_factorial.set_continuous([c, log_gamma_c, hbar, log_h](cplx t) {
    return std::exp(log_gamma_c - special::log_gamma(t / hbar + c) - t / hbar * log_h);
  });
  f.tau = tau;
  f.tau0 = tau_min(f.g, ScanSpec{-60.0 * hbar - a, 60.0 * hbar - a, 2401}, hbar);
  if (!(tau > *f.tau0)) {
    throw ParameterError("factorization su11-v2: tau = " + std::to_string(tau) + " must exceed tau0 = " +
                         std::to_string(*f.tau0));
  }
  return f;
}

FactorizationData factorization_sklyanin(double phi, double kappa1, double psi, double a0, double tau, long N,
                                         double alpha) {
  const DeformationFlow flow = sklyanin_flow(phi, kappa1, psi, a0);
  const SklyaninMu base = mu_sklyanin(phi, kappa1, psi, a0);
  double delta = 0.0;
  for (long n = 1; n <= N; ++n) delta += std::arg(base.mu(cplx(static_cast<double>(n), 0.0)));
  const double theta = (alpha - delta) / static_cast<double>(N);
  const cplx zeta = base.zeta * std::exp(cplx(0.0, theta));
  const cplx xi = base.xi * std::exp(cplx(0.0, -theta));
  FactorizationData f = factorization_unit(
      "sklyanin", [flow](double t) { return surface_profile(flow, t); },
      sklyanin_mu_from(phi, kappa1, psi, zeta, xi), 1.0, tau);
  f.alpha = alpha;
  f.period_N = N;
  return f;
}

}  // namespace thetarep
