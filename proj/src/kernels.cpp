#include "thetarep/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "thetarep/errors.hpp"
#include "thetarep/parallel.hpp"
#include "thetarep/quadrature.hpp"
#include "thetarep/theta.hpp"

namespace thetarep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);
constexpr double kLogTol = 39.14;  // -ln 1e-17

int mod_floor(long j, long n) {
  const long r = j % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

cplx log_nu_factorial(const KernelContext& ctx, int n) {
  return ctx.fact.nu_factorial.is_unit() ? cplx(0.0) : ctx.fact.nu_factorial.log_at(n);
}

// Monomial range covering Re zbar in [u_lo, u_hi] for the torus series
// sum_j c_j e^{j zbar}, c_j ~ exp(-eps j^2 / 2).
std::pair<long, long> torus_window(const KernelContext& ctx, double u_lo, double u_hi) {
  const double eps = ctx.eps();
  const double w = std::sqrt(2.0 * kLogTol / eps) + 5.0;
  return {static_cast<long>(std::floor(u_lo / eps - w)), static_cast<long>(std::ceil(u_hi / eps + w))};
}

// Log of the torus monomial coefficient c_j = nu_!(j mod N)^{-1} exp(-eps j^2 / 2).
cplx torus_log_coeff(const KernelContext& ctx, long j) {
  const double jd = static_cast<double>(j);
  return -log_nu_factorial(ctx, mod_floor(j, ctx.N)) - 0.5 * ctx.eps() * jd * jd;
}

cplx cylinder_basis_value(const KernelContext& ctx, int n, cplx zbar) {
  const double nd = n;
  return std::exp(-log_nu_factorial(ctx, n) - 0.5 * ctx.eps() * nd * nd + nd * zbar);
}

void require_torus(const KernelContext& ctx, const char* who) {
  if (ctx.geometry != Geometry::Torus) throw InputError(std::string(who) + ": needs a torus context");
}

double rel_residual(double diff, double scale) { return diff / std::max(1.0, scale); }

}  // namespace

KernelContext make_cylinder_context(const FactorizationData& fact, int M) {
  if (M < 1) throw ParameterError("make_cylinder_context: M must be positive");
  if (fact.tau0 && !(fact.tau > *fact.tau0)) {
    throw ParameterError("make_cylinder_context: tau = " + std::to_string(fact.tau) + " must exceed tau0 = " +
                         std::to_string(*fact.tau0));
  }
  KernelContext ctx;
  ctx.geometry = Geometry::Cylinder;
  ctx.M = M;
  ctx.fact = fact;
  ctx.hbar = fact.hbar;
  ctx.tau = fact.tau;
  ctx.weights = fact.nu_factorial.modulus_squared();
  const double eps = ctx.eps();
  ctx.grid = GridSpec{-(2.0 * eps + 4.0 * std::sqrt(eps)), 2.0 * eps + 4.0 * std::sqrt(eps), 64, 64, 1};
  return ctx;
}

KernelContext make_torus_context(const FactorizationData& fact, long N, long m) {
  if (N < 1) throw ParameterError("make_torus_context: N must be positive");
  if (m < 1) throw ParameterError("make_torus_context: m must be positive");
  if (!fact.nu_factorial.is_unit()) {
    if (!fact.nu_factorial.has(0) || !fact.nu_factorial.has(static_cast<int>(N))) {
      throw InputError("make_torus_context: nu_! lattice does not cover 0..N");
    }
    const double r = fact.nu_factorial.log_at(static_cast<int>(N)).real();
    if (std::abs(r) > 1e-10) {
      throw InputError("make_torus_context: |nu_!(N hbar)| != 1 (log modulus " + std::to_string(r) +
                       "); normalize the factorization for this N first");
    }
  }
  KernelContext ctx;
  ctx.geometry = Geometry::Torus;
  ctx.N = N;
  ctx.m = m;
  ctx.fact = fact;
  ctx.hbar = fact.hbar;
  ctx.tau = fact.tau;
  ctx.weights = fact.nu_factorial.modulus_squared();
  ctx.grid = GridSpec{0.0, ctx.eps() * static_cast<double>(N), 128, 128, 1};
  return ctx;
}

cplx kernel_cylinder(const KernelContext& ctx, cplx zbar, cplx z) {
  return theta_mod(ThetaArgs{-kI * (zbar + z), ctx.eps()}, ctx.weights);
}

std::vector<cplx> basis_values(const KernelContext& ctx, cplx zbar) {
  std::vector<cplx> out(static_cast<std::size_t>(ctx.basis_size()), 0.0);
  if (ctx.geometry == Geometry::Cylinder) {
    for (int n = -ctx.M; n <= ctx.M; ++n) out[static_cast<std::size_t>(n + ctx.M)] = cylinder_basis_value(ctx, n, zbar);
    return out;
  }
  const auto [lo, hi] = torus_window(ctx, zbar.real(), zbar.real());
  for (long j = lo; j <= hi; ++j) {
    out[static_cast<std::size_t>(mod_floor(j, ctx.N))] +=
        std::exp(torus_log_coeff(ctx, j) + static_cast<double>(j) * zbar);
  }
  return out;
}

std::vector<cplx> basis_derivatives(const KernelContext& ctx, cplx zbar) {
  std::vector<cplx> out(static_cast<std::size_t>(ctx.basis_size()), 0.0);
  if (ctx.geometry == Geometry::Cylinder) {
    for (int n = -ctx.M; n <= ctx.M; ++n) {
      out[static_cast<std::size_t>(n + ctx.M)] = static_cast<double>(n) * cylinder_basis_value(ctx, n, zbar);
    }
    return out;
  }
  const auto [lo, hi] = torus_window(ctx, zbar.real(), zbar.real());
  for (long j = lo; j <= hi; ++j) {
    out[static_cast<std::size_t>(mod_floor(j, ctx.N))] +=
        static_cast<double>(j) * std::exp(torus_log_coeff(ctx, j) + static_cast<double>(j) * zbar);
  }
  return out;
}

cplx kernel_torus(const KernelContext& ctx, cplx zbar, cplx z) {
  require_torus(ctx, "kernel_torus");
  const auto f = basis_values(ctx, zbar);
  const auto g = basis_values(ctx, std::conj(z));
  cplx sum = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) sum += f[n] * std::conj(g[n]);
  return sum;
}

cplx kernel_torus_fourier(const KernelContext& ctx, cplx zbar, cplx z) {
  require_torus(ctx, "kernel_torus_fourier");
  const long N = ctx.N;
  const double eps = ctx.eps();
  const cplx zc = std::conj(z);
  const auto fourier = [&](cplx arg, long k) {
    const double shift = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(N);
    if (ctx.weights.is_unit()) return theta(-kI * arg + shift, 0.5 * eps);
    const auto [lo, hi] = torus_window(ctx, arg.real(), arg.real());
    cplx s = 0.0;
    for (long j = lo; j <= hi; ++j) {
      const double jd = static_cast<double>(j);
      s += std::exp(torus_log_coeff(ctx, j) + jd * arg + kI * (jd * shift));
    }
    return s;
  };
  cplx sum = 0.0;
  for (long k = 0; k < N; ++k) sum += fourier(zbar, k) * std::conj(fourier(zc, k));
  return sum / static_cast<double>(N);
}

cplx kernel_torus_closed_form(const KernelContext& ctx, cplx zbar, cplx z) {
  require_torus(ctx, "kernel_torus_closed_form");
  if (!ctx.weights.is_unit()) throw InputError("kernel_torus_closed_form: only defined for unit weights");
  const double eps = ctx.eps();
  const double Nd = static_cast<double>(ctx.N);
  const cplx x = zbar + z;
  const cplx y = zbar - z;
  if (ctx.N % 2 == 0) return theta(-kI * x, eps) * theta(-kI * Nd * y / 2.0, eps * Nd * Nd / 4.0);
  return theta(-kI * x, eps) * theta(-kI * Nd * y, eps * Nd * Nd) +
         theta_sharp(-kI * x, eps) * theta_sharp(-kI * Nd * y, eps * Nd * Nd);
}

cplx kernel(const KernelContext& ctx, cplx zbar, cplx z) {
  return ctx.geometry == Geometry::Torus ? kernel_torus(ctx, zbar, z) : kernel_cylinder(ctx, zbar, z);
}

MonomialExpansion monomial_expansion(const KernelContext& ctx, const std::vector<cplx>& psi, double u_lo,
                                     double u_hi) {
  if (psi.size() != static_cast<std::size_t>(ctx.basis_size())) {
    throw InputError("monomial_expansion: coefficient vector has the wrong length");
  }
  MonomialExpansion f;
  if (ctx.geometry == Geometry::Cylinder) {
    f.j_lo = -ctx.M;
    f.a.resize(psi.size());
    for (int n = -ctx.M; n <= ctx.M; ++n) {
      const double nd = n;
      f.a[static_cast<std::size_t>(n + ctx.M)] =
          psi[static_cast<std::size_t>(n + ctx.M)] * std::exp(-log_nu_factorial(ctx, n) - 0.5 * ctx.eps() * nd * nd);
    }
    return f;
  }
  const auto [lo, hi] = torus_window(ctx, u_lo, u_hi);
  f.j_lo = static_cast<int>(lo);
  f.a.resize(static_cast<std::size_t>(hi - lo + 1));
  for (long j = lo; j <= hi; ++j) {
    f.a[static_cast<std::size_t>(j - lo)] =
        psi[static_cast<std::size_t>(mod_floor(j, ctx.N))] * std::exp(torus_log_coeff(ctx, j));
  }
  return f;
}

cplx evaluate_expansion(const MonomialExpansion& f, cplx zbar) {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < f.a.size(); ++i) {
    if (f.a[i] == cplx(0.0)) continue;
    sum += f.a[i] * std::exp(static_cast<double>(f.j_lo + static_cast<int>(i)) * zbar);
  }
  return sum;
}

std::vector<CheckReport> kernel_torus_difference_system_check(const KernelContext& ctx, int n_u, int n_v, double tol) {
  require_torus(ctx, "kernel_torus_difference_system_check");
  if (n_u < 1 || n_v < 1) throw InputError("difference system check: grid must be non-empty");
  const long N = ctx.N;
  const double Nd = static_cast<double>(N);
  const double eps = ctx.eps();
  const double period = eps * Nd;

  // |nu(r hbar)|^{-2} on residue classes r mod N.
  std::vector<double> inv_nu2(static_cast<std::size_t>(N), 1.0);
  if (!ctx.fact.nu_is_unit) {
    for (long r = 0; r < N; ++r) {
      const long k = r == 0 ? N : r;
      inv_nu2[static_cast<std::size_t>(r)] = 1.0 / std::norm(ctx.fact.nu(cplx(static_cast<double>(k) * ctx.hbar, 0.0)));
    }
  }

  const auto K = [&](cplx zb, cplx w) { return kernel_torus(ctx, zb, w); };
  const std::size_t count = static_cast<std::size_t>(n_u) * static_cast<std::size_t>(n_v);
  std::vector<double> d1(count), d2(count), d3(count), d4(count), scale(count);
  parallel_for(count, [&](std::size_t idx) {
    const int iu = static_cast<int>(idx / static_cast<std::size_t>(n_v));
    const int iv = static_cast<int>(idx % static_cast<std::size_t>(n_v));
    const double u = period * (iu + 0.5) / n_u;
    const double v = 2.0 * kPi * iv / n_v;
    const cplx zb(u, v);
    const cplx w(std::fmod(u + period / 3.0, period), 1.1 - v);
    const cplx k0 = K(zb, w);
    // Shift equation: sum_r |nu(r hbar)|^{-2} P_r[exp(zbar + w - eps) K(zbar - eps | w - eps)].
    const auto G = [&](cplx a) { return std::exp(a + w - eps) * K(a - eps, w - eps); };
    cplx lhs = 0.0;
    if (ctx.fact.nu_is_unit) {
      lhs = G(zb);
    } else {
      std::vector<cplx> shifted(static_cast<std::size_t>(N));
      for (long q = 0; q < N; ++q) shifted[static_cast<std::size_t>(q)] = G(zb + 2.0 * kPi * kI * (double(q) / Nd));
      for (long r = 0; r < N; ++r) {
        cplx proj = 0.0;
        for (long q = 0; q < N; ++q) {
          proj += std::exp(-2.0 * kPi * kI * (double(q * r) / Nd)) * shifted[static_cast<std::size_t>(q)];
        }
        lhs += inv_nu2[static_cast<std::size_t>(r)] * proj / Nd;
      }
    }
    d1[idx] = std::abs(lhs - k0);
    d2[idx] = std::abs(K(zb + 2.0 * kPi * kI, w) - k0);
    d3[idx] = std::abs(std::exp(Nd * zb - 0.5 * eps * Nd * Nd) * K(zb - period, w) - k0);
    d4[idx] = std::abs(K(zb + 2.0 * kPi * kI / Nd, w) - K(zb, w + 2.0 * kPi * kI / Nd));
    scale[idx] = std::abs(k0);
  });
  double s = 0.0;
  double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    s = std::max(s, scale[i]);
    r1 = std::max(r1, d1[i]);
    r2 = std::max(r2, d2[i]);
    r3 = std::max(r3, d3[i]);
    r4 = std::max(r4, d4[i]);
  }

  // (1/(2 pi)^2) double integral of K(i alpha | i beta): trapezoid, exact for
  // the band-limited part once n exceeds the effective bandwidth.
  const int n_avg = std::max(64, 2 * static_cast<int>(std::ceil(std::sqrt(4.0 * kLogTol / eps))) + 8);
  std::vector<cplx> rows(static_cast<std::size_t>(n_avg));
  parallel_for(rows.size(), [&](std::size_t a) {
    cplx acc = 0.0;
    const double al = 2.0 * kPi * static_cast<double>(a) / n_avg;
    for (int b = 0; b < n_avg; ++b) acc += K(cplx(0.0, al), cplx(0.0, 2.0 * kPi * b / n_avg));
    rows[a] = acc;
  });
  cplx avg = 0.0;
  for (const auto& r : rows) avg += r;
  avg /= static_cast<double>(n_avg) * n_avg;

  std::vector<CheckReport> out;
  const auto tag = [&](CheckReport c) {
    c.with("example", ctx.fact.name).with("N", N).with("m", ctx.m).with("grid_u", long(n_u)).with("grid_v", long(n_v));
    return c;
  };
  out.push_back(tag(make_check("kernel_shift_equation", rel_residual(r1, s), tol)));
  out.push_back(tag(make_check("kernel_periodicity_2pi_i", rel_residual(r2, s), tol)));
  out.push_back(tag(make_check("kernel_quasiperiodicity", rel_residual(r3, s), tol)));
  out.push_back(tag(make_check("kernel_exchange_symmetry", rel_residual(r4, s), tol)));
  out.push_back(tag(make_check("kernel_normalization", std::abs(avg - 1.0), tol)));
  return out;
}

double q_function(const KernelContext& ctx, double x) {
  if (ctx.geometry != Geometry::Cylinder) throw InputError("q_function: use q_function_torus on a torus");
  const double eps = ctx.eps();
  const LogSeries ls = theta_log_series(x, eps, ctx.weights.is_unit() ? nullptr : &ctx.weights);
  return std::exp(0.5 * std::log(eps / kPi) - x * x / (4.0 * eps) + ls.log_s);
}

double q_function_torus(const KernelContext& ctx, cplx zbar) {
  require_torus(ctx, "q_function_torus");
  const double eps = ctx.eps();
  const double x = 2.0 * zbar.real();
  return std::sqrt(eps / kPi) * std::exp(-x * x / (4.0 * eps)) * kernel_torus(ctx, zbar, std::conj(zbar)).real();
}

double p_function(const KernelContext& ctx, double x) {
  if (ctx.fact.nu_is_unit || ctx.fact.nu_factorial.is_unit()) return 1.0;
  ComplexFn nu_fact = ctx.fact.nu_factorial.continuous();
  if (!nu_fact) {
    if (!ctx.fact.g) throw InputError("p_function: no continuous nu_! and no g to build one");
    const ComplexFn g = ctx.fact.g;
    const double h = ctx.hbar;
    nu_fact = [g, h](cplx t) { return nu_factorial_continuous(g, t, h); };
  }
  const double tau = ctx.tau;
  const double scale = 2.0 * std::sqrt(ctx.hbar * tau);
  const auto R = [&](cplx s) { return nu_fact(s) * std::conj(nu_fact(std::conj(s))); };
  const auto estimate = [&](int n) {
    const auto& rule = quad::gauss_hermite(n);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights[i] * R(cplx(x, scale * rule.nodes[i]) / (2.0 * tau));
    }
    return acc.real() / std::sqrt(kPi);
  };
  double prev = estimate(32);
  for (int n = 64; n <= 1024; n *= 2) {
    const double cur = estimate(n);
    if (std::abs(cur - prev) <= 1e-9 * std::abs(cur)) return cur;
    prev = cur;
  }
  throw ConvergenceError("p_function: Gauss-Hermite estimate did not settle by 1024 nodes at x = " +
                         std::to_string(x));
}

double u_from_t(const KernelContext& ctx, double t) {
  double u = ctx.tau * t;
  if (ctx.fact.g && !ctx.fact.nu_is_unit) u += ctx.fact.g(cplx(t, 0.0)).real();
  return u;
}

double t_from_u(const KernelContext& ctx, double u) {
  if (!ctx.fact.g || ctx.fact.nu_is_unit) return u / ctx.tau;
  double t = u / ctx.tau;
  for (int it = 0; it < 100; ++it) {
    const double f = u_from_t(ctx, t) - u;
    const double df = ctx.tau + ctx.fact.re_g_prime(t);
    const double step = f / df;
    t -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) return t;
  }
  throw ConvergenceError("t_from_u: Newton iteration did not converge at u = " + std::to_string(u));
}

double kahler_deviation(const KernelContext& ctx, double t) {
  if (!ctx.weights.is_unit()) throw InputError("kahler_deviation: only defined for unit weights");
  const double eps = ctx.eps();
  const double x = 2.0 * u_from_t(ctx, t);
  const double c = kPi / eps;
  return 2.0 * eps * c * c * dual_log_d2(c * x, kPi * c);
}

double kahler_density(const KernelContext& ctx, double t) {
  if (ctx.geometry != Geometry::Cylinder) throw InputError("kahler_density: use kahler_density_torus on a torus");
  if (ctx.weights.is_unit()) return 1.0 + kahler_deviation(ctx, t);
  const double x = 2.0 * u_from_t(ctx, t);
  return 2.0 * ctx.hbar * (ctx.tau + ctx.fact.re_g_prime(t)) * theta_log_d2(x, ctx.eps(), &ctx.weights);
}

double kahler_density_torus(const KernelContext& ctx, double t, double s) {
  require_torus(ctx, "kahler_density_torus");
  const cplx zbar(u_from_t(ctx, t), s);
  const auto f = basis_values(ctx, zbar);
  const auto df = basis_derivatives(ctx, zbar);
  double k = 0.0;
  double dd = 0.0;
  cplx cross = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    k += std::norm(f[n]);
    dd += std::norm(df[n]);
    cross += df[n] * std::conj(f[n]);
  }
  const double laplace = (dd * k - std::norm(cross)) / (k * k);
  return 2.0 * ctx.hbar * (ctx.tau + ctx.fact.re_g_prime(t)) * laplace;
}

double quantization_integral(const KernelContext& ctx, int n_t, int n_s) {
  require_torus(ctx, "quantization_integral");
  if (n_t < 1 || n_s < 1) throw InputError("quantization_integral: grid must be non-empty");
  const double T = static_cast<double>(ctx.N) * ctx.hbar;
  std::vector<double> rows(static_cast<std::size_t>(n_t));
  parallel_for(rows.size(), [&](std::size_t i) {
    const double t = T * static_cast<double>(i) / n_t;
    double acc = 0.0;
    for (int j = 0; j < n_s; ++j) acc += kahler_density_torus(ctx, t, 2.0 * kPi * j / n_s);
    rows[i] = acc;
  });
  double sum = 0.0;
  for (double r : rows) sum += r;
  return sum * (T / n_t) * (2.0 * kPi / n_s) / (2.0 * kPi * ctx.hbar);
}

MeasureGrid measure_grid(const KernelContext& ctx, int n_max, int n_u_min, int n_v_min) {
  const double eps = ctx.eps();
  // p_nu can change sign for Gamma-type weights (it averages nu_! along a
  // vertical line), so the weight is signed and the envelope uses |p|.
  const auto weight = [&](double u) {
    return p_function(ctx, 2.0 * u) * std::exp(-u * u / eps) / (2.0 * kPi * std::sqrt(kPi * eps));
  };
  const auto log_weight = [&](double u) {
    const double p = std::abs(p_function(ctx, 2.0 * u));
    return std::log(std::max(p, 1e-300)) - u * u / eps - std::log(2.0 * kPi * std::sqrt(kPi * eps));
  };
  MeasureGrid g;
  double u_lo = 0.0;
  double u_hi = 0.0;
  int n_u = 0;
  int n_v = std::max(n_v_min, 2 * static_cast<int>(std::ceil(std::sqrt(4.0 * kLogTol / eps))) + 8);
  if (ctx.geometry == Geometry::Torus) {
    u_lo = 0.0;
    u_hi = eps * static_cast<double>(ctx.N);
    n_u = std::max(n_u_min, static_cast<int>(std::ceil((u_hi - u_lo) / (0.25 * std::sqrt(eps)))));
    const double du = (u_hi - u_lo) / n_u;
    for (int k = 0; k < n_u; ++k) g.u.push_back(u_lo + du * k);
  } else {
    n_max = std::clamp(n_max, 0, ctx.M);
    n_v = std::max(n_v, 4 * n_max + 8);
    // log of the largest |e^(n)(u)|^2 W(u) over |n| <= n_max.
    const auto envelope = [&](double u) {
      double best = -1e300;
      for (int n = -n_max; n <= n_max; ++n) {
        const double nd = n;
        best = std::max(best, -2.0 * log_nu_factorial(ctx, n).real() - eps * nd * nd + 2.0 * nd * u);
      }
      return best + log_weight(u);
    };
    const double step = std::sqrt(eps);
    u_lo = -eps * n_max - 6.0 * step;
    u_hi = eps * n_max + 6.0 * step;
    double peak = -1e300;
    for (int k = 0; k <= 64; ++k) peak = std::max(peak, envelope(u_lo + (u_hi - u_lo) * k / 64.0));
    const double cut = std::log(1e-14);
    int grow = 0;
    while (envelope(u_lo) - peak > cut) {
      u_lo -= step;
      if (++grow > 400) throw ConvergenceError("measure_grid: integrand does not decay for u -> -inf");
    }
    grow = 0;
    while (envelope(u_hi) - peak > cut) {
      u_hi += step;
      if (++grow > 400) throw ConvergenceError("measure_grid: integrand does not decay for u -> +inf");
    }
    g.window_tail = std::exp(std::max(envelope(u_lo), envelope(u_hi)) - peak);
    n_u = std::max(n_u_min, static_cast<int>(std::ceil((u_hi - u_lo) / (0.25 * step))));
    const double du = (u_hi - u_lo) / n_u;
    for (int k = 0; k <= n_u; ++k) g.u.push_back(u_lo + du * k);
  }
  const double du = g.u.size() > 1 ? g.u[1] - g.u[0] : 0.0;
  const double dv = 2.0 * kPi / n_v;
  for (int l = 0; l < n_v; ++l) g.v.push_back(dv * l);
  g.weight_u.resize(g.u.size());
  parallel_for(g.u.size(), [&](std::size_t k) { g.weight_u[k] = weight(g.u[k]) * du * dv; });
  if (ctx.geometry == Geometry::Cylinder) {
    // Trapezoid end weights; the ends are negligible but keep the rule honest.
    g.weight_u.front() *= 0.5;
    g.weight_u.back() *= 0.5;
  }
  return g;
}

double norm_quadrature(const KernelContext& ctx, const std::vector<cplx>& psi, int n_u_min, int n_v_min) {
  if (psi.size() != static_cast<std::size_t>(ctx.basis_size())) {
    throw InputError("norm_quadrature: coefficient vector has the wrong length");
  }
  int n_max = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (psi[i] != cplx(0.0)) n_max = std::max(n_max, std::abs(ctx.basis_lo() + static_cast<int>(i)));
  }
  const MeasureGrid g = measure_grid(ctx, n_max, n_u_min, n_v_min);
  const MonomialExpansion f = monomial_expansion(ctx, psi, g.u.front(), g.u.back());
  std::vector<double> rows(g.u.size());
  parallel_for(g.u.size(), [&](std::size_t k) {
    double acc = 0.0;
    for (double v : g.v) acc += std::norm(evaluate_expansion(f, cplx(g.u[k], v)));
    rows[k] = acc * g.weight_u[k];
  });
  double sum = 0.0;
  for (double r : rows) sum += r;
  return sum;
}

std::vector<GridRow> evaluate_grid(const KernelContext& ctx, const GridSpec& grid) {
  if (grid.n_u < 1 || grid.n_v < 1) throw InputError("evaluate_grid: grid must be non-empty");
  if (!(grid.u_max > grid.u_min)) throw InputError("evaluate_grid: need u_max > u_min");
  const double sign = grid.orientation_sign < 0 ? -1.0 : 1.0;
  std::vector<GridRow> rows(static_cast<std::size_t>(grid.n_u) * static_cast<std::size_t>(grid.n_v));
  parallel_for(static_cast<std::size_t>(grid.n_u), [&](std::size_t iu) {
    const double u = grid.u_min + (grid.u_max - grid.u_min) * static_cast<double>(iu) / grid.n_u;
    const double t = t_from_u(ctx, u);
    const double p = p_function(ctx, 2.0 * u);
    const bool cyl = ctx.geometry == Geometry::Cylinder;
    const double q_cyl = cyl ? q_function(ctx, 2.0 * u) : 0.0;
    const double kahler_cyl = cyl ? kahler_density(ctx, t) : 0.0;
    for (int iv = 0; iv < grid.n_v; ++iv) {
      const double v = 2.0 * kPi * iv / grid.n_v;
      const double s = iv == 0 ? 0.0 : 2.0 * kPi - v;
      const cplx zbar(u, s);
      GridRow& r = rows[iu * static_cast<std::size_t>(grid.n_v) + static_cast<std::size_t>(iv)];
      r.t = t;
      r.s = s;
      r.u = u;
      r.v = v;
      r.K = kernel(ctx, zbar, std::conj(zbar));
      r.kahler = cyl ? kahler_cyl : kahler_density_torus(ctx, t, s);
      const double q = cyl ? q_cyl : q_function_torus(ctx, zbar);
      r.measure = sign * q * p / ctx.tau;
    }
  });
  return rows;
}

}  // namespace thetarep
