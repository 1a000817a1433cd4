#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thetarep/check_report.hpp"
#include "thetarep/factorization.hpp"
#include "thetarep/flows.hpp"
#include "thetarep/kernels.hpp"
#include "thetarep/representations.hpp"

namespace thetarep {

/// The worked examples: the Sklyanin resonant torus and the su(1,1)
/// cylinder with nu = 1 ("su11-v1") or Gamma weights ("su11-v2").
///
/// Keys accepted in params (defaults in brackets):
///   sklyanin: phi [pi/2], kappa1 [1], psi [0], a0 [2], alpha [0], tau [1], N, hbar [1]
///   su11-v1 / su11-v2: a0 [1.25], a [0], hbar [1], tau [1], M [64]
/// N for the Sklyanin leaf is read off the resonance of phi; a supplied N
/// must agree with it.  Unknown keys are an InputError.
struct Scenario {
  std::string example;
  DeformationFlow flow;
  FactorizationData fact;
  SurfaceClass surface;
  Representation rep;
  KernelContext ctx;
};

Scenario build_scenario(const std::string& example, const std::map<std::string, double>& params);

/// Names of the examples build_scenario knows.
std::vector<std::string> example_names();

/// max |B^N - F_!(N hbar)^{1/2} e^{i alpha} I| / |F_!(N hbar)|^{1/2} on a torus rep.
double power_identity_residual(const Representation& rep);

/// Full verification suite of a scenario: algebra relations, Casimirs,
/// kernel identities, norms, partition of unity, coherent transform and
/// intertwining (plus the torus quantization and difference system, or the
/// g-series and nu_! cross-checks on the cylinder).  Tolerance overrides
/// are keyed by check_name.
std::vector<CheckReport> run_verify_suite(const Scenario& s, const std::map<std::string, double>& tol_overrides = {});

}  // namespace thetarep
