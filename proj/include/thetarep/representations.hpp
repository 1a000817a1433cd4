#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "thetarep/check_report.hpp"
#include "thetarep/factorization.hpp"
#include "thetarep/flows.hpp"

namespace thetarep {

enum class Geometry { Cylinder, Torus };

/// Diagonal-plus-weighted-shift representation in the orthonormal basis
/// e^(n), n = n_lo .. n_lo + dim - 1:
///   B e^(n) = mu((n+1) hbar) e^(n+1),  C = B^*,  A_j e^(n) = phi_{n hbar}(a0, a)_j e^(n).
/// On the torus indices are taken mod N and the wrap entry carries
/// mu(N hbar) / nu_!(N hbar), so that B^N = F_!(N hbar)^{1/2} e^{i alpha} I.
struct Representation {
  Geometry geometry = Geometry::Cylinder;
  int n_lo = 0;
  int dim = 0;
  int M = 0;        // cylinder truncation, n in [-M, M]
  long N = 0;       // torus dimension
  double alpha = 0.0;
  int margin = 0;   // boundary band excluded from checks (cylinder: 2)
  double hbar = 1.0;
  double tau = 1.0;
  FactorizationData fact;
  DeformationFlow flow;

  std::vector<cplx> shift_up;    // B weight n -> n+1, indexed by n - n_lo
  std::vector<cplx> shift_down;  // C weight n -> n-1, indexed by n - n_lo
  std::vector<Eigen::MatrixXcd> A;
  Eigen::MatrixXcd B;
  Eigen::MatrixXcd C;

  int index(int n) const { return n - n_lo; }
  /// Index range checked by the verifiers.
  int check_lo() const { return n_lo + margin; }
  int check_hi() const { return n_lo + dim - 1 - margin; }
};

/// ParameterError if M < 8 or tau <= tau0.
Representation build_cylinder_rep(const DeformationFlow& flow, const FactorizationData& fact, int M);

/// ParameterError if Phi_{N' hbar} = id for some N' < N, or if fact is not
/// normalized for (N, alpha).
Representation build_torus_rep(const DeformationFlow& flow, const FactorizationData& fact, long N, double alpha);

/// Relations C B = phi0_hbar(BC, A), C A_j = phi_hbar(BC, A)_j C,
/// A_j B = B phi_hbar(BC, A)_j, [A_j, A_l] = 0, B^* = C, and A_j^* = A_j
/// (hermitian components) or [A_j, A_j^*] = 0 (normal ones).  Residuals are
/// max-abs entry differences divided by max(1, largest entry of the terms).
std::vector<CheckReport> verify_relations(const Representation& rep, double tol);

/// Relations of the original four-generator Sklyanin algebra and the
/// quadratic relations in (A, B, C).  InputError for non-Sklyanin reps.
std::vector<CheckReport> verify_sklyanin_original(const Representation& rep, double tol);

struct CasimirValue {
  std::string name;
  cplx value;
  double deviation;
};

/// Casimirs evaluated on the joint diagonal; the torus also reports B^N and A^N.
std::vector<CasimirValue> casimir_scalars(const Representation& rep);

/// Indicator of n = 0, checked against A P0 = a P0, BC P0 = a0 P0, |P0| = 1.
Eigen::VectorXcd fiducial_state(const Representation& rep);

/// mu(t)^{-1} B: must be the unweighted shift e^(n) -> e^(n+1).
Eigen::MatrixXcd pure_shift(const Representation& rep);

/// Generators acting on the monomials e^{n zbar}, n in [-M, M], straight
/// from B = B(t) exp(-tau t + zbar), C = exp(tau t - zbar) C(t), t = hbar d/dzbar:
///   B e^{n zbar} = B((n+1) hbar) e^{-tau hbar (n + 1/2)} e^{(n+1) zbar},
///   C e^{n zbar} = C(n hbar) e^{tau hbar (n - 1/2)} e^{(n-1) zbar}.
struct MonomialOperators {
  Eigen::MatrixXcd B;
  Eigen::MatrixXcd C;
  Eigen::MatrixXcd A;
};
MonomialOperators monomial_operators(const DeformationFlow& flow, const FactorizationData& fact, int M);

/// Diagonal change of basis e^(n) = D_n e^{n zbar}, D_n = nu_!(n hbar)^{-1} e^{-tau hbar n^2 / 2}.
Eigen::VectorXcd orthonormal_scaling(const FactorizationData& fact, int M);

}  // namespace thetarep
