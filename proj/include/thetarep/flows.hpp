#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thetarep {

using cplx = std::complex<double>;

/// A point (A0, A) of R^{k+1}, A stored as k complex components.
struct FlowPoint {
  double a0 = 0.0;
  std::vector<cplx> a;
};

/// Hermitian components satisfy A* = A in a representation; normal ones only
/// [A, A*] = 0 (the Sklyanin generator A = A1 + i A2).
enum class ComponentKind { Hermitian, Normal };

struct Casimir {
  std::string name;
  std::function<cplx(double a0, std::span<const cplx> a)> eval;
};

/// One-parameter group Phi_t(A0, A) = (phi0_t(A0, A), phi_t(A0, A)) with the
/// base point (a0, a) of the leaf.  Evaluators must be pure.
struct DeformationFlow {
  using ZeroFn = std::function<double(double t, double a0, std::span<const cplx> a)>;
  using VectorFn = std::function<std::vector<cplx>(double t, double a0, std::span<const cplx> a)>;

  std::string name;
  ZeroFn zero_component;
  VectorFn vector_component;
  std::vector<Casimir> casimirs;
  std::vector<ComponentKind> kinds;
  int k = 1;
  double hbar = 1.0;
  FlowPoint base;
  /// Construction parameters of the example flows (phi, kappa1, ...).
  std::map<std::string, double> params;

  FlowPoint apply(double t, const FlowPoint& p) const;
  FlowPoint at(double t) const { return apply(t, base); }
};

/// F(t) = phi0_t(a0, a).
double surface_profile(const DeformationFlow& flow, double t);

enum class SurfaceKind { Plane, Sphere, Cylinder, Torus };
std::string to_string(SurfaceKind kind);

struct Resonance {
  long N = 0;
  long m = 0;
};

struct SurfaceClass {
  SurfaceKind kind = SurfaceKind::Cylinder;
  std::optional<double> period;
  std::optional<double> minimal_period;
  std::optional<Resonance> resonance;
};

struct ScanSpec {
  double t_min = -10.0;
  double t_max = 10.0;
  int samples = 1001;
};

/// |phi0_T - a0| + sum_j |phi_T,j - a_j| at the base point.
double return_distance(const DeformationFlow& flow, double T);

/// First return time of the base point in [hbar/10, 1000 hbar], if any.
std::optional<double> find_period(const DeformationFlow& flow);

/// Plane/sphere for a0 = 0 by the sign pattern of F, otherwise cylinder or
/// torus depending on whether a period is found.  A resonant torus reports
/// period = N hbar and minimal_period = N hbar / m.
SurfaceClass classify_surface(const DeformationFlow& flow, const ScanSpec& scan, double resonance_tol = 1e-9);

/// Continued-fraction reconstruction of T/hbar = N/m with denominator at
/// most 1000; the first convergent within tol * T/hbar wins.
std::optional<Resonance> detect_resonance(double T, double hbar, double tol);

/// phi_t(A) = e^{i omega t} A (k = 1), phi0_t = A0 + h(phi_t(A)) - h(A).
/// Casimirs A0 - h(A) and |A|^2.
DeformationFlow rotation_flow(double omega, std::function<double(cplx)> h, double a0, cplx a, double hbar);

/// v0(A) = (conj(q) A^2 + q conj(A)^2) / (i (q - conj(q))), q = e^{i phi}.
double sklyanin_v0(double phi, cplx A);

/// Sklyanin flow with hbar = 1 and a = sqrt(kappa1) e^{i psi / 2}.
/// ParameterError unless 0 < phi < pi and a0 > kappa1 (1 - cos(psi - phi)) / sin(phi).
DeformationFlow sklyanin_flow(double phi, double kappa1, double psi, double a0);

/// Phi_t(A0, A) = (t^2 + t (2A - hbar) + A0, A + t).  ParameterError unless
/// lambda^2 = a0 - (a - hbar/2)^2 > 0.
DeformationFlow su11_flow(double a0, double a, double hbar);

}  // namespace thetarep
