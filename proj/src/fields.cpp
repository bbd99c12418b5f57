#include "lhydro/fields.hpp"

#include <algorithm>
#include <cstring>

namespace lhydro {

Chain braces(const VectorField& V) {
  const std::size_t N = static_cast<std::size_t>(V.sites());
  Chain u{1, std::vector<double>(3 * N)};
  for (int d = 0; d < 3; ++d)
    std::memcpy(u.coeffs.data() + static_cast<std::size_t>(d) * N, V.comp[static_cast<std::size_t>(d)].data(),
                N * sizeof(double));
  return u;
}

VectorField unbraces(const Lattice& lat, const Chain& u) {
  if (u.degree != 1 || static_cast<int>(u.coeffs.size()) != lat.dims(1))
    throw std::invalid_argument("unbraces expects a degree-1 chain on this lattice");
  VectorField V(lat.n());
  const std::size_t N = static_cast<std::size_t>(lat.sites());
  for (int d = 0; d < 3; ++d)
    std::memcpy(V.comp[static_cast<std::size_t>(d)].data(), u.coeffs.data() + static_cast<std::size_t>(d) * N,
                N * sizeof(double));
  return V;
}

FaceVelocity face_velocity(const Lattice& lat, const VectorField& V, const CellId& face,
                           int orientation) {
  if (face.degree != 2) throw std::invalid_argument("face_velocity expects a degree-2 cell");
  if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation must be +-1");
  const int s = lat.site_index(face.center);
  const double scale = 2.0 * lat.h();
  FaceVelocity fv;
  for (int c = 0; c < 3; ++c) fv.vector[static_cast<std::size_t>(c)] = scale * V.at(c, s);
  fv.normal = orientation * fv.vector[static_cast<std::size_t>(axis_index(face.axis))];
  return fv;
}

VectorCochain momentum_flux(const Lattice& lat, const VectorField& V) {
  const int N = lat.sites();
  const double scale = 4.0 * lat.h() * lat.h();  // (2h)^2 from V_F and v_F
  VectorCochain flux;
  flux.degree = 2;
  for (int c = 0; c < 3; ++c) flux.comp[static_cast<std::size_t>(c)] = lat.zero_chain(2);
  for (int c = 0; c < 3; ++c) {
    double* out = flux.comp[static_cast<std::size_t>(c)].coeffs.data();
    for (int d = 0; d < 3; ++d) {
      const double* vc = V.comp[static_cast<std::size_t>(c)].data();
      const double* vd = V.comp[static_cast<std::size_t>(d)].data();
#pragma omp parallel for schedule(static)
      for (int s = 0; s < N; ++s) out[d * N + s] = scale * vd[s] * vc[s];
    }
  }
  return flux;
}

VectorCochain coboundary(const Lattice& lat, const VectorCochain& w) {
  VectorCochain out;
  out.degree = w.degree + 1;
  for (int c = 0; c < 3; ++c)
    out.comp[static_cast<std::size_t>(c)] = lat.coboundary(w.comp[static_cast<std::size_t>(c)]);
  return out;
}

VectorField star_at_centers(const Lattice& lat, const VectorCochain& w) {
  if (w.degree != 3) throw std::invalid_argument("star_at_centers expects a degree-3 cochain");
  VectorField V(lat.n());
  const int N = lat.sites();
  for (int c = 0; c < 3; ++c) {
    const Chain placed = lat.star(w.comp[static_cast<std::size_t>(c)]);
    std::copy_n(placed.coeffs.data(), N, V.comp[static_cast<std::size_t>(c)].data());
  }
  return V;
}

Chain nonlinear_term(const Lattice& lat, const VectorField& V) {
  return braces(star_at_centers(lat, coboundary(lat, momentum_flux(lat, V))));
}

Chain divergence(const Lattice& lat, const VectorField& V) { return lat.boundary(braces(V)); }

Chain gradient(const Lattice& lat, const Chain& f) {
  if (f.degree != 0) throw std::invalid_argument("gradient expects a degree-0 chain");
  return lat.coboundary(f);
}

VectorField curl(const Lattice& lat, const VectorField& V) {
  return unbraces(lat, lat.star(lat.coboundary(braces(V))));
}

Chain scalar_laplacian(const Lattice& lat, const Chain& f) {
  if (f.degree != 0 || static_cast<int>(f.coeffs.size()) != lat.dims(0))
    throw std::invalid_argument("scalar_laplacian expects a degree-0 chain on this lattice");
  const int n = lat.n();
  Chain out = lat.zero_chain(0);
  const double* in = f.coeffs.data();
  double* o = out.coeffs.data();
  auto w = [n](int i) { return (i + n) % n; };
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int im = w(i - 2), ip = w(i + 2);
      const int jm = w(j - 2), jp = w(j + 2);
      for (int k = 0; k < n; ++k) {
        const int km = w(k - 2), kp = w(k + 2);
        const double center = in[(i * n + j) * n + k];
        double acc = in[(im * n + j) * n + k] + in[(ip * n + j) * n + k] - 2.0 * center;
        acc += in[(i * n + jm) * n + k] + in[(i * n + jp) * n + k] - 2.0 * center;
        acc += in[(i * n + j) * n + km] + in[(i * n + j) * n + kp] - 2.0 * center;
        o[(i * n + j) * n + k] = acc;
      }
    }
  }
  return out;
}

}  // namespace lhydro
