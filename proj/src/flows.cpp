#include "thetarep/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thetarep/errors.hpp"

namespace thetarep {

FlowPoint DeformationFlow::apply(double t, const FlowPoint& p) const {
  return {zero_component(t, p.a0, p.a), vector_component(t, p.a0, p.a)};
}

double surface_profile(const DeformationFlow& flow, double t) { return flow.zero_component(t, flow.base.a0, flow.base.a); }

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Plane:
      return "plane";
    case SurfaceKind::Sphere:
      return "sphere";
    case SurfaceKind::Cylinder:
      return "cylinder";
    case SurfaceKind::Torus:
      return "torus";
  }
  return "unknown";
}

double return_distance(const DeformationFlow& flow, double T) {
  const FlowPoint p = flow.at(T);
  double d = std::abs(p.a0 - flow.base.a0);
  for (std::size_t j = 0; j < p.a.size(); ++j) d += std::abs(p.a[j] - flow.base.a[j]);
  return d;
}

std::optional<double> find_period(const DeformationFlow& flow) {
  const double h = flow.hbar;
  double scale = 1.0 + std::abs(flow.base.a0);
  for (const cplx& v : flow.base.a) scale += std::abs(v);
  const double step = h / 50.0;
  const double t_lo = h / 10.0;
  const double t_hi = 1000.0 * h;
  double prev2 = return_distance(flow, t_lo);
  double prev1 = return_distance(flow, t_lo + step);
  for (double t = t_lo + 2.0 * step; t <= t_hi + step; t += step) {
    const double cur = return_distance(flow, t);
    const double mid = t - step;
    if (prev1 <= prev2 && prev1 <= cur && prev1 < 0.5 * scale) {
      // Golden-section refinement on [mid - step, mid + step].
      const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
      double a = mid - step;
      double b = mid + step;
      double c = b - gr * (b - a);
      double d = a + gr * (b - a);
      double fc = return_distance(flow, c);
      double fd = return_distance(flow, d);
      for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(mid)); ++it) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - gr * (b - a);
          fc = return_distance(flow, c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + gr * (b - a);
          fd = return_distance(flow, d);
        }
      }
      const double best = fc < fd ? c : d;
      if (return_distance(flow, best) < 1e-9 * scale) return best;
    }
    prev2 = prev1;
    prev1 = cur;
  }
  return std::nullopt;
}

std::optional<Resonance> detect_resonance(double T, double hbar, double tol) {
  if (!(T > 0.0) || !(hbar > 0.0)) return std::nullopt;
  const double r = T / hbar;
  constexpr double kMaxDen = 1000.0;
  // Convergents p_k / q_k of the continued fraction of r.
  double p_prev = 1.0, q_prev = 0.0;
  double p = std::floor(r), q = 1.0;
  double frac = r - std::floor(r);
  for (int it = 0; it < 64; ++it) {
    if (q > kMaxDen) break;
    if (p > 0.0 && std::abs(r - p / q) <= tol * r) {
      return Resonance{static_cast<long>(p), static_cast<long>(q)};
    }
    if (frac < 1e-300) break;
    const double inv = 1.0 / frac;
    const double a = std::floor(inv);
    frac = inv - a;
    const double p_next = a * p + p_prev;
    const double q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return std::nullopt;
}

SurfaceClass classify_surface(const DeformationFlow& flow, const ScanSpec& scan, double resonance_tol) {
  if (scan.samples < 100) throw InputError("classify_surface: at least 100 scan samples required");
  std::vector<double> ts(static_cast<std::size_t>(scan.samples));
  std::vector<double> fs(ts.size());
  for (int i = 0; i < scan.samples; ++i) {
    ts[i] = scan.t_min + (scan.t_max - scan.t_min) * i / (scan.samples - 1);
    fs[i] = surface_profile(flow, ts[i]);
  }
  SurfaceClass out;
  if (flow.base.a0 == 0.0) {
    bool pos_right = true, pos_left = true, any_right = false, any_left = false;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (ts[i] > 0.0) {
        any_right = true;
        pos_right = pos_right && fs[i] > 0.0;
      } else if (ts[i] < 0.0) {
        any_left = true;
        pos_left = pos_left && fs[i] > 0.0;
      }
    }
    if ((any_right && pos_right) || (any_left && pos_left)) {
      out.kind = SurfaceKind::Plane;
      return out;
    }
    // F > 0 on (0, t0) then vanishing, on either side of 0.
    const auto bounded = [&](int dir) {
      bool started = false;
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const std::size_t i = dir > 0 ? k : ts.size() - 1 - k;
        if (dir * ts[i] <= 0.0) continue;
        if (fs[i] > 0.0) {
          started = true;
        } else {
          return started;
        }
      }
      return false;
    };
    if (bounded(+1) || bounded(-1)) {
      out.kind = SurfaceKind::Sphere;
      return out;
    }
    throw UnsupportedSurfaceError("classify_surface: a0 = 0 with no positive half-trajectory");
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(fs[i] > 0.0)) {
      throw UnsupportedSurfaceError("classify_surface: F(t) <= 0 at t = " + std::to_string(ts[i]) +
                                    " (degenerate leaf)");
    }
  }
  const auto period = find_period(flow);
  if (!period) {
    out.kind = SurfaceKind::Cylinder;
    return out;
  }
  out.kind = SurfaceKind::Torus;
  out.minimal_period = *period;
  out.period = *period;
  if (auto res = detect_resonance(*period, flow.hbar, resonance_tol)) {
    out.resonance = res;
    out.period = static_cast<double>(res->N) * flow.hbar;
    out.minimal_period = static_cast<double>(res->N) * flow.hbar / static_cast<double>(res->m);
  }
  return out;
}

DeformationFlow rotation_flow(double omega, std::function<double(cplx)> h, double a0, cplx a, double hbar) {
  if (!(hbar > 0.0)) throw ParameterError("rotation_flow: hbar must be positive");
  DeformationFlow f;
  f.name = "rotation";
  f.k = 1;
  f.hbar = hbar;
  f.base = {a0, {a}};
  f.kinds = {ComponentKind::Normal};
  f.params = {{"omega", omega}};
  f.zero_component = [omega, h](double t, double A0, std::span<const cplx> A) {
    const cplx rotated = std::exp(cplx(0.0, omega * t)) * A[0];
    return A0 + h(rotated) - h(A[0]);
  };
  f.vector_component = [omega](double t, double, std::span<const cplx> A) {
    return std::vector<cplx>{std::exp(cplx(0.0, omega * t)) * A[0]};
  };
  f.casimirs = {
      {"kappa0", [h](double A0, std::span<const cplx> A) { return cplx(A0 - h(A[0]), 0.0); }},
      {"kappa1", [](double, std::span<const cplx> A) { return cplx(std::norm(A[0]), 0.0); }},
  };
  return f;
}

double sklyanin_v0(double phi, cplx A) {
  const cplx q = std::exp(cplx(0.0, phi));
  const cplx num = std::conj(q) * A * A + q * std::conj(A) * std::conj(A);
  return (num / (cplx(0.0, 1.0) * (q - std::conj(q)))).real();
}

DeformationFlow sklyanin_flow(double phi, double kappa1, double psi, double a0) {
  if (!(phi > 0.0 && phi < std::numbers::pi)) {
    throw ParameterError("sklyanin_flow: phi must lie in (0, pi), got " + std::to_string(phi));
  }
  if (!(kappa1 > 0.0)) throw ParameterError("sklyanin_flow: kappa1 must be positive");
  const double bound = kappa1 * (1.0 - std::cos(psi - phi)) / std::sin(phi);
  if (!(a0 > bound)) {
    throw ParameterError("sklyanin_flow: need a0 > kappa1 (1 - cos(psi - phi)) / sin(phi) = " + std::to_string(bound));
  }
  const cplx a = std::sqrt(kappa1) * std::exp(cplx(0.0, psi / 2.0));
  DeformationFlow f = rotation_flow(phi, [phi](cplx A) { return sklyanin_v0(phi, A); }, a0, a, 1.0);
  f.name = "sklyanin";
  f.params = {{"phi", phi}, {"kappa1", kappa1}, {"psi", psi}, {"a0", a0}};
  return f;
}

DeformationFlow su11_flow(double a0, double a, double hbar) {
  if (!(hbar > 0.0)) throw ParameterError("su11_flow: hbar must be positive");
  const double lambda2 = a0 - (a - hbar / 2.0) * (a - hbar / 2.0);
  if (!(lambda2 > 0.0)) {
    throw ParameterError("su11_flow: lambda^2 = a0 - (a - hbar/2)^2 must be positive, got " + std::to_string(lambda2));
  }
  DeformationFlow f;
  f.name = "su11";
  f.k = 1;
  f.hbar = hbar;
  f.base = {a0, {cplx(a, 0.0)}};
  f.kinds = {ComponentKind::Hermitian};
  f.params = {{"a0", a0}, {"a", a}, {"hbar", hbar}, {"lambda", std::sqrt(lambda2)}};
  f.zero_component = [hbar](double t, double A0, std::span<const cplx> A) {
    return t * t + t * (2.0 * A[0].real() - hbar) + A0;
  };
  f.vector_component = [](double t, double, std::span<const cplx> A) { return std::vector<cplx>{A[0] + t}; };
  f.casimirs = {{"hyperboloid", [hbar](double A0, std::span<const cplx> A) {
                   const cplx d = A[0] - hbar / 2.0;
                   return cplx(A0, 0.0) - d * d;
                 }}};
  return f;
}

}  // namespace thetarep
