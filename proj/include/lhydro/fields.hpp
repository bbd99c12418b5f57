#pragma once

#include "lhydro/lattice.hpp"

#include <array>

namespace lhydro {

/// Per-site 3-vector field: the average velocity over the side-2h cube
/// centered at each site. Component-major storage, comp[axis][site], so
/// the braces bijection with one-chains is an index-preserving reshape.
struct VectorField {
  int n = 0;
  std::array<std::vector<double>, 3> comp;

  VectorField() = default;
  explicit VectorField(int n_)
      : n(n_), comp{std::vector<double>(static_cast<std::size_t>(n_) * n_ * n_, 0.0),
                    std::vector<double>(static_cast<std::size_t>(n_) * n_ * n_, 0.0),
                    std::vector<double>(static_cast<std::size_t>(n_) * n_ * n_, 0.0)} {}

  int sites() const { return n * n * n; }
  double& at(int axis, int site) { return comp[static_cast<std::size_t>(axis)][static_cast<std::size_t>(site)]; }
  double at(int axis, int site) const { return comp[static_cast<std::size_t>(axis)][static_cast<std::size_t>(site)]; }
};

/// Per-face (degree 2) or per-cube (degree 3) 3-vector values, stored as
/// three parallel scalar chains, one per tangent direction.
struct VectorCochain {
  int degree = 2;
  std::array<Chain, 3> comp;
};

/// The bijection between lattice vector fields and one-chains: component d
/// of V(q) becomes the coefficient of the edge of length 2h centered at q
/// in direction d.
Chain braces(const VectorField& V);
VectorField unbraces(const Lattice& lat, const Chain& u);

struct FaceVelocity {
  std::array<double, 3> vector;  // V_F = 2h * V(center of face)
  double normal = 0.0;           // v_F, signed component along the oriented normal
};

/// Face velocity data for a degree-2 cell; orientation +1 is the canonical
/// (positive normal) face, -1 the reversed one. Reversal negates the normal
/// component and leaves the vector unchanged.
FaceVelocity face_velocity(const Lattice& lat, const VectorField& V, const CellId& face,
                           int orientation = +1);

/// Product-of-averages momentum flux V_F * v_F on every canonical face.
VectorCochain momentum_flux(const Lattice& lat, const VectorField& V);

/// Componentwise coboundary of a degree-2 vector cochain: per cube, the sum
/// of the face values oriented by the outward-pointing right-hand rule.
VectorCochain coboundary(const Lattice& lat, const VectorCochain& w);

/// Componentwise star of a degree-3 vector cochain: places each cube value
/// at the center site with the orientation sign.
VectorField star_at_centers(const Lattice& lat, const VectorCochain& w);

/// The momentum transfer term: braces(star(coboundary(momentum_flux(V)))).
/// Quadratic in V.
Chain nonlinear_term(const Lattice& lat, const VectorField& V);

/// boundary(braces(V)); zero iff V is volume preserving.
Chain divergence(const Lattice& lat, const VectorField& V);

/// Coboundary of a scalar chain, exposed under its calculus name.
Chain gradient(const Lattice& lat, const Chain& f);

/// The unique vector field with braces(curl V) = star(coboundary(braces(V))).
VectorField curl(const Lattice& lat, const VectorField& V);

/// The 7-point stencil over sites 2h away: sum of the six neighbor values
/// minus six times the center value. Equals -(boundary(coboundary(f)))
/// under this module's sign conventions.
Chain scalar_laplacian(const Lattice& lat, const Chain& f);

}  // namespace lhydro
