#pragma once

#include "lhydro/fields.hpp"
#include "lhydro/lattice.hpp"

#include <utility>
#include <vector>

// Serial reference implementations kept for testing and benchmarking the
// OpenMP kernels. These are written scatter-style from the explicit cell
// incidence lists, the opposite routing of the fused gather stencils in
// Lattice, so the two paths share no index arithmetic.
namespace lhydro::ref {

/// Signed list of the cells in the algebraic boundary of one generator:
/// 2 vertices for an edge, 4 edges for a face, 6 faces for a cube.
std::vector<std::pair<CellId, int>> boundary_cells(const CellId& cell);

Chain boundary(const Lattice& lat, const Chain& c);
Chain coboundary(const Lattice& lat, const Chain& c);
Chain star(const Lattice& lat, const Chain& c);
/// Composition form boundary(coboundary(c)) + coboundary(boundary(c)).
Chain laplacian(const Lattice& lat, const Chain& c);

/// Brute-force momentum-flux divergence: walks every cube, sums the
/// face-velocity product over its six outward-oriented faces, places the
/// result at the center and reads it into a one-chain.
Chain nonlinear_term(const Lattice& lat, const VectorField& V);

/// Per-vertex Kirchhoff balance: signed sum of the six edge coefficients
/// incident to each site.
Chain divergence(const Lattice& lat, const VectorField& V);

}  // namespace lhydro::ref
