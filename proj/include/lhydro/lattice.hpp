#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lhydro {

enum class Axis : int { X = 0, Y = 1, Z = 2 };

constexpr int axis_index(Axis a) { return static_cast<int>(a); }
constexpr Axis next_axis(Axis a) { return static_cast<Axis>((static_cast<int>(a) + 1) % 3); }

/// Triply periodic cubical lattice: n sites per axis (n even, >= 4),
/// spacing h, fixed right-handed orientation of (x, y, z).
struct LatticeConfig {
  int n = 4;
  double h = 1.0;

  void validate() const;
  int sites() const { return n * n * n; }
};

/// Integer site coordinates; reduced modulo n on use.
struct SiteIndex {
  int i = 0;
  int j = 0;
  int k = 0;
};

/// Canonical oriented cell of side 2h centered at a lattice site.
/// Degrees 1 (edge) and 2 (face) carry an axis tag: the edge direction
/// or the face normal. The canonical generator is positively oriented
/// (edge in positive axis sense, face by right-hand rule about the
/// positive normal, vertex and cube by the global orientation); the
/// opposite orientation is represented by negating the coefficient.
struct CellId {
  int degree = 0;
  SiteIndex center;
  Axis axis = Axis::X;
};

/// Coordinate parities mod 2; labels one of the 8 disjoint subcomplexes.
struct ParityClass {
  int px = 0;
  int py = 0;
  int pz = 0;

  int code() const { return px * 4 + py * 2 + pz; }
  friend bool operator==(const ParityClass&, const ParityClass&) = default;
};

/// Scalar coefficients over the canonical cells of one degree.
/// Length n^3 for degrees 0 and 3, 3*n^3 for degrees 1 and 2
/// (axis-major, then site-lexicographic with k fastest).
struct Chain {
  int degree = 0;
  std::vector<double> coeffs;

  double& operator[](std::size_t i) { return coeffs[i]; }
  double operator[](std::size_t i) const { return coeffs[i]; }
  std::size_t size() const { return coeffs.size(); }
};

// Elementwise arithmetic; degrees must match.
Chain& operator+=(Chain& a, const Chain& b);
Chain& operator-=(Chain& a, const Chain& b);
Chain& operator*=(Chain& a, double s);
Chain operator+(Chain a, const Chain& b);
Chain operator-(Chain a, const Chain& b);
Chain operator*(double s, Chain a);

/// y += s * x
void axpy(Chain& y, double s, const Chain& x);
/// Inner product in the cellular basis (which is orthonormal).
double dot(const Chain& a, const Chain& b);
double norm(const Chain& a);

/// The chain complex of overlapping side-2h cells on the periodic lattice,
/// with the four linear operators: boundary, its adjoint coboundary, the
/// duality star, and the Laplacian (boundary*coboundary + coboundary*boundary).
class Lattice {
 public:
  explicit Lattice(LatticeConfig config);

  const LatticeConfig& config() const { return config_; }
  int n() const { return config_.n; }
  double h() const { return config_.h; }
  int sites() const { return nsites_; }

  /// Number of canonical cells of the given degree: n^3, 3n^3, 3n^3, n^3.
  int dims(int degree) const;

  // Canonical indexing: site s = (i*n + j)*n + k with coordinates wrapped;
  // degree-1/2 cells at index axis*n^3 + s.
  int site_index(const SiteIndex& q) const;
  SiteIndex site_coords(int s) const;
  int cell_index(const CellId& cell) const;
  CellId cell_from_index(int degree, int index) const;

  Chain zero_chain(int degree) const;
  /// 1.0 on the given cell, 0 elsewhere.
  Chain basis_chain(const CellId& cell) const;

  /// Boundary operator, degree k -> k-1 (k >= 1).
  Chain boundary(const Chain& c) const;
  /// Coboundary, the adjoint of boundary in the cellular basis, k -> k+1 (k <= 2).
  Chain coboundary(const Chain& c) const;
  /// Duality star: pairs vertex q <-> cube at q and edge(q,d) <-> face(q,d),
  /// with the sign constants below.
  Chain star(const Chain& c) const;
  /// Laplacian at any degree. Acts as the 7-point stencil over the six
  /// sites 2h away, independently per axis slot:
  ///   (Lc)(cell at p) = sum_d ( 2 c(p) - c(p + 2e_d) - c(p - 2e_d) ).
  /// Equal to boundary(coboundary(c)) + coboundary(boundary(c)) and
  /// positive semidefinite.
  Chain laplacian(const Chain& c) const;

  /// Label of the connected subcomplex containing the cell. Both boundary
  /// and coboundary preserve this label; the complex splits into 8 disjoint
  /// copies of the cubical torus complex of extent n/2.
  ParityClass component_of(const CellId& cell) const;

  // Star sign constants per degree pair, frozen from solving the
  // intertwining identities (star*coboundary = boundary*star and
  // star*boundary = coboundary*star) on a 4^3 lattice: the constant-sign
  // solutions are unique up to a global flip, pinned by star(vertex) = +cube.
  static constexpr int kStarSignScalar = +1;  // degrees 0 <-> 3
  static constexpr int kStarSignVector = -1;  // degrees 1 <-> 2

 private:
  LatticeConfig config_;
  int nsites_ = 0;

  void check_chain(const Chain& c, int degree) const;

  Chain boundary1(const Chain& c) const;
  Chain boundary2(const Chain& c) const;
  Chain boundary3(const Chain& c) const;
  Chain coboundary0(const Chain& c) const;
  Chain coboundary1(const Chain& c) const;
  Chain coboundary2(const Chain& c) const;
};

}  // namespace lhydro
