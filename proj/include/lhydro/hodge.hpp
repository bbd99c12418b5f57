#pragma once

#include "lhydro/lattice.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace lhydro {

struct SolverOptions {
  double tol = 1e-10;  // relative residual
  long max_iter = 0;   // 0 resolves to 10 * number of cells
};

struct SolverError : std::runtime_error {
  double residual;
  long iterations;
  SolverError(const std::string& msg, double res, long iters)
      : std::runtime_error(msg + " (relative residual " + std::to_string(res) + " after " +
                           std::to_string(iters) + " iterations)"),
        residual(res),
        iterations(iters) {}
};

/// Orthogonal splitting of a chain into its image-of-boundary,
/// image-of-coboundary and Laplacian-kernel components.
struct HodgeParts {
  Chain exact;     // in im boundary
  Chain coexact;   // in im coboundary
  Chain harmonic;  // in ker laplacian
};

/// Projection onto the Laplacian kernel. Closed form: the kernel at each
/// degree is spanned by the chains that are uniform over one (axis slot,
/// center parity) bucket -- 8 disjoint buckets in degrees 0 and 3, 24 in
/// degrees 1 and 2 -- so the projection replaces each coefficient by its
/// bucket mean.
Chain harmonic_project(const Lattice& lat, const Chain& c);

/// Solve laplacian(y) = rhs for the unique y orthogonal to the kernel.
/// Conjugate gradients on the positive-semidefinite operator, with the
/// harmonic component projected out of the initial residual and again
/// every 50 iterations. rhs must be orthogonal to the kernel.
Chain solve_laplacian(const Lattice& lat, const Chain& rhs, const SolverOptions& opts = {});

/// Pressure-convention Poisson solve: returns P with laplacian(-P) = rhs
/// and harmonic_project(P) = 0. Errors if rhs has a significant harmonic
/// component (inconsistent source) or the iteration fails to converge.
Chain solve_poisson_deg0(const Lattice& lat, const Chain& rhs, const SolverOptions& opts = {});

HodgeParts hodge_decompose(const Lattice& lat, const Chain& c, const SolverOptions& opts = {});

/// Numerical nullity of the assembled Laplacian at the given degree
/// (dense eigendecomposition, eigenvalues below 1e-8 count as null).
/// Requires n <= 8.
int harmonic_rank(const Lattice& lat, int degree);

/// Eigenvalues of the degree-0 Laplacian restricted to one parity class:
/// lambda(k) = sum_axis (2 - 2 cos(2 pi k_axis / M)) with M = n/2 and
/// k in {0..M-1}^3. The full spectrum is 8 copies of this multiset.
std::vector<double> analytic_eigenvalues_deg0(const Lattice& lat);

}  // namespace lhydro
