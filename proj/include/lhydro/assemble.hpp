#pragma once

#include "lhydro/lattice.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace lhydro {

// Assembled copies of the lattice operators, in the canonical cell ordering.
// Coefficients are {-1, 0, +1}; the integer representation keeps the
// nilpotency, adjointness and duality checks exact.
using SparseInt = Eigen::SparseMatrix<long long>;

/// Matrix of boundary on the given degree (maps degree -> degree-1).
SparseInt assemble_boundary(const Lattice& lat, int degree);
/// Matrix of coboundary on the given degree (maps degree -> degree+1).
SparseInt assemble_coboundary(const Lattice& lat, int degree);
/// Matrix of star on the given degree (maps degree -> 3-degree).
SparseInt assemble_star(const Lattice& lat, int degree);
/// Matrix of the Laplacian on the given degree.
SparseInt assemble_laplacian(const Lattice& lat, int degree);

Eigen::MatrixXd dense_laplacian(const Lattice& lat, int degree);

/// Orthonormal basis of the Laplacian kernel at the given degree, from a
/// dense eigendecomposition; eigenvalues below `threshold` count as null.
Eigen::MatrixXd dense_nullspace(const Lattice& lat, int degree, double threshold = 1e-8);

/// Dense pseudo-inverse solve of laplacian(y) = rhs, dropping eigenmodes
/// below `threshold`. Verification-scale fallback (n <= 8) and the oracle
/// for the iterative path.
Chain dense_laplacian_pinv(const Lattice& lat, const Chain& rhs, double threshold = 1e-8);

}  // namespace lhydro
