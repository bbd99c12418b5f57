#include "lhydro/reference.hpp"

namespace lhydro::ref {

namespace {

SiteIndex offset(const SiteIndex& q, int axis, int delta) {
  SiteIndex r = q;
  switch (axis) {
    case 0: r.i += delta; break;
    case 1: r.j += delta; break;
    default: r.k += delta; break;
  }
  return r;
}

}  // namespace

std::vector<std::pair<CellId, int>> boundary_cells(const CellId& cell) {
  std::vector<std::pair<CellId, int>> out;
  const SiteIndex q = cell.center;
  switch (cell.degree) {
    case 1: {
      const int d = axis_index(cell.axis);
      out.push_back({CellId{0, offset(q, d, +1)}, +1});
      out.push_back({CellId{0, offset(q, d, -1)}, -1});
      break;
    }
    case 2: {
      // rim of the 2h x 2h square, right-hand circulation about +normal
      const int d = axis_index(cell.axis);
      const int a = (d + 1) % 3, b = (d + 2) % 3;
      out.push_back({CellId{1, offset(q, a, +1), static_cast<Axis>(b)}, +1});
      out.push_back({CellId{1, offset(q, a, -1), static_cast<Axis>(b)}, -1});
      out.push_back({CellId{1, offset(q, b, +1), static_cast<Axis>(a)}, -1});
      out.push_back({CellId{1, offset(q, b, -1), static_cast<Axis>(a)}, +1});
      break;
    }
    case 3: {
      for (int d = 0; d < 3; ++d) {
        out.push_back({CellId{2, offset(q, d, +1), static_cast<Axis>(d)}, +1});
        out.push_back({CellId{2, offset(q, d, -1), static_cast<Axis>(d)}, -1});
      }
      break;
    }
    default:
      throw std::invalid_argument("boundary_cells requires degree in 1..3");
  }
  return out;
}

Chain boundary(const Lattice& lat, const Chain& c) {
  if (c.degree < 1 || c.degree > 3) throw std::invalid_argument("boundary requires degree in 1..3");
  Chain out = lat.zero_chain(c.degree - 1);
  for (int idx = 0; idx < lat.dims(c.degree); ++idx) {
    const double v = c.coeffs[static_cast<std::size_t>(idx)];
    if (v == 0.0) continue;
    for (const auto& [bc, sign] : boundary_cells(lat.cell_from_index(c.degree, idx)))
      out.coeffs[static_cast<std::size_t>(lat.cell_index(bc))] += sign * v;
  }
  return out;
}

Chain coboundary(const Lattice& lat, const Chain& c) {
  if (c.degree < 0 || c.degree > 2) throw std::invalid_argument("coboundary requires degree in 0..2");
  Chain out = lat.zero_chain(c.degree + 1);
  // adjoint of boundary: gather over the boundary of each higher cell
  for (int idx = 0; idx < lat.dims(c.degree + 1); ++idx) {
    double acc = 0.0;
    for (const auto& [bc, sign] : boundary_cells(lat.cell_from_index(c.degree + 1, idx)))
      acc += sign * c.coeffs[static_cast<std::size_t>(lat.cell_index(bc))];
    out.coeffs[static_cast<std::size_t>(idx)] = acc;
  }
  return out;
}

Chain star(const Lattice& lat, const Chain& c) {
  const double sign =
      (c.degree == 0 || c.degree == 3) ? Lattice::kStarSignScalar : Lattice::kStarSignVector;
  Chain out = c;
  out.degree = 3 - c.degree;
  for (double& v : out.coeffs) v *= sign;
  (void)lat;
  return out;
}

Chain laplacian(const Lattice& lat, const Chain& c) {
  Chain out = lat.zero_chain(c.degree);
  if (c.degree >= 1) out += coboundary(lat, boundary(lat, c));
  if (c.degree <= 2) out += boundary(lat, coboundary(lat, c));
  return out;
}

Chain nonlinear_term(const Lattice& lat, const VectorField& V) {
  const int N = lat.sites();
  const double h = lat.h();
  VectorField placed(lat.n());
  for (int s = 0; s < N; ++s) {
    const SiteIndex q = lat.site_coords(s);
    double total[3] = {0.0, 0.0, 0.0};
    for (int d = 0; d < 3; ++d) {
      for (int sgn : {+1, -1}) {
        // face of the cube at q on its +-d side; outward normal is sgn * e_d
        const int fs = lat.site_index(offset(q, d, sgn));
        const double vf[3] = {2.0 * h * V.at(0, fs), 2.0 * h * V.at(1, fs), 2.0 * h * V.at(2, fs)};
        const double vn = sgn * vf[d];
        for (int c = 0; c < 3; ++c) total[c] += vf[c] * vn;
      }
    }
    for (int c = 0; c < 3; ++c) placed.at(c, s) = Lattice::kStarSignScalar * total[c];
  }
  return braces(placed);
}

Chain divergence(const Lattice& lat, const VectorField& V) {
  const int N = lat.sites();
  Chain out = lat.zero_chain(0);
  for (int s = 0; s < N; ++s) {
    const SiteIndex p = lat.site_coords(s);
    double acc = 0.0;
    for (int d = 0; d < 3; ++d) {
      // incoming edge centered at p - e_d, outgoing edge at p + e_d
      acc += V.at(d, lat.site_index(offset(p, d, -1)));
      acc -= V.at(d, lat.site_index(offset(p, d, +1)));
    }
    out.coeffs[static_cast<std::size_t>(s)] = acc;
  }
  return out;
}

}  // namespace lhydro::ref
