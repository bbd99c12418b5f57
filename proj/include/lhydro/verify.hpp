#pragma once

#include "lhydro/io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace lhydro {

struct VerifyOptions {
  RunConfig config;        // n (<= 8), h, seed and solver_tol are used
  bool corrupt_star = false;  // debug hook: negates the star block on one-chains
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

/// The structural test suite: dimension table, nilpotency, adjointness,
/// star identities and involution, harmonic ranks, Hodge reconstruction
/// and orthogonality, parity-component partition and equal-block form of
/// the Laplacian, nonlinear-term oracle, degree-0 stencil comparison.
/// Operator matrices are assembled in integers from the production kernels,
/// so "exact" checks are exact.
VerifyReport run_verify(const VerifyOptions& opts);

/// Prints one PASS/FAIL line per check plus a summary line.
/// Returns 0 iff every check passed.
int cmd_verify(const VerifyOptions& opts, std::ostream& out);

}  // namespace lhydro
