#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "thetarep/check_report.hpp"
#include "thetarep/kernels.hpp"
#include "thetarep/representations.hpp"

namespace thetarep {

/// Coefficients of P_z in the orthonormal basis of the representation,
/// indexed like rep (n = rep.n_lo + i).
struct CoherentState {
  cplx z;
  int n_lo = 0;
  Eigen::VectorXcd coefficients;
};

/// c_n = conj(e^(n)(conj z)): theta_{conj nu}(z/i + s, eps/2) P0 written out
/// in the basis.  InputError if rep and ctx describe different spaces.
CoherentState coherent_state(const Representation& rep, const KernelContext& ctx, cplx z);

/// Same state built literally as sum_j conj(nu_!(j hbar))^{-1} e^{-eps j^2/2 + j z} S^j P0
/// with S the pure shift (torus: S wraps mod N and is unitary).
CoherentState coherent_state_via_shift(const Representation& rep, const KernelContext& ctx, cplx z);

/// (P_w, P_z) from the coefficient vectors.
cplx coherent_overlap(const CoherentState& w, const CoherentState& z);

/// Integrated projector (1/(2 pi hbar)) int Pi(zbar|z) dm on the verified
/// index range: all of 0..N-1 on the torus, |n| <= n_check on the cylinder.
struct PartitionResult {
  Eigen::MatrixXcd integral;
  int n_lo = 0;
  double window_tail = 0.0;
  CheckReport report;
};
PartitionResult partition_of_unity(const Representation& rep, const KernelContext& ctx, int n_u, int n_v,
                                   int n_check, double tol);

/// Coherent transform T(psi) = int psi(zbar)/K(zbar|z) P_z dm of functions
/// psi given by basis coefficients (columns of psi, rows indexed like rep).
/// Rows of the result cover the verified range only (see PartitionResult).
struct TransformResult {
  Eigen::MatrixXcd values;
  int n_lo = 0;
  double window_tail = 0.0;
};
TransformResult coherent_transform(const Representation& rep, const KernelContext& ctx, const Eigen::MatrixXcd& psi,
                                   int n_u, int n_v, int n_check);

/// Inverse direction P -> (P, P_z), a function of zbar = conj(z).
cplx inverse_map(const KernelContext& ctx, const Eigen::VectorXcd& p, cplx zbar);

/// Round trip T(e_n) = e_n and unitarity (Gram of T(e_n) = I) on the verified range.
std::vector<CheckReport> transform_checks(const Representation& rep, const KernelContext& ctx, int n_u, int n_v,
                                          int n_check, double tol);

enum class Generator { Identity, A, B, C };
std::string to_string(Generator g);

/// max |T(G psi) - G T(psi)| over basis psi in the verified range, with G
/// applied to psi on the function side (the operators acting on e^{j zbar})
/// and as a matrix on the other side.  component selects A_j.
CheckReport intertwining_check(const Representation& rep, const KernelContext& ctx, Generator g, int component,
                               int n_u, int n_v, int n_check, double tol);

/// Transform into a block-diagonal double copy L = V + V, generated by
/// (P0, 0): transformed basis vectors must land in the first block.
CheckReport embedding_check(const Representation& rep, const KernelContext& ctx, int n_u, int n_v, int n_check,
                            double tol);

}  // namespace thetarep
