#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lhydro/assemble.hpp"
#include "lhydro/fields.hpp"
#include "lhydro/hodge.hpp"
#include "lhydro/io.hpp"
#include "lhydro/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace lhydro;

namespace {

VectorField random_field(const Lattice& lat, SplitMix64& rng) {
  VectorField V(lat.n());
  for (int s = 0; s < lat.sites(); ++s) {
    for (int c = 0; c < 3; ++c) V.at(c, s) = rng.uniform(-1.0, 1.0);
  }
  return V;
}

VectorField random_int_field(const Lattice& lat, SplitMix64& rng) {
  VectorField V(lat.n());
  for (int s = 0; s < lat.sites(); ++s) {
    for (int c = 0; c < 3; ++c) {
      V.at(c, s) = static_cast<double>(static_cast<long>(rng.next() % 9) - 4);
    }
  }
  return V;
}

Chain random_int_chain(const Lattice& lat, int degree, SplitMix64& rng) {
  Chain c = lat.zero_chain(degree);
  for (double& x : c.coeffs) x = static_cast<double>(static_cast<long>(rng.next() % 17) - 8);
  return c;
}

bool exactly_zero(const Chain& c) {
  for (double x : c.coeffs) {
    if (x != 0.0) return false;
  }
  return true;
}

std::vector<double> apply_sparse(const SparseInt& m, const std::vector<double>& x) {
  std::vector<double> y(static_cast<std::size_t>(m.rows()), 0.0);
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseInt::InnerIterator it(m, k); it; ++it) {
      y[static_cast<std::size_t>(it.row())] +=
          static_cast<double>(it.value()) * x[static_cast<std::size_t>(it.col())];
    }
  }
  return y;
}

}  // namespace

TEST_CASE("braces is an index-preserving bijection") {
  Lattice lat(LatticeConfig{4, 1.0});
  SplitMix64 rng(31);

  SUBCASE("single-site placement") {
    VectorField V(4);
    int s = lat.site_index({1, 2, 3});
    V.at(0, s) = 5.0;
    V.at(1, s) = -2.0;
    V.at(2, s) = 0.25;
    Chain u = braces(V);
    CHECK(u.degree == 1);
    CHECK(u[static_cast<std::size_t>(lat.cell_index({1, {1, 2, 3}, Axis::X}))] == 5.0);
    CHECK(u[static_cast<std::size_t>(lat.cell_index({1, {1, 2, 3}, Axis::Y}))] == -2.0);
    CHECK(u[static_cast<std::size_t>(lat.cell_index({1, {1, 2, 3}, Axis::Z}))] == 0.25);
  }

  SUBCASE("round trip, linearity, norm agreement") {
    VectorField V = random_field(lat, rng);
    VectorField W = random_field(lat, rng);
    Chain u = braces(V);
    VectorField back = unbraces(lat, u);
    for (int c = 0; c < 3; ++c) CHECK(back.comp[static_cast<std::size_t>(c)] == V.comp[static_cast<std::size_t>(c)]);
    Chain sum = braces(V) + braces(W);
    VectorField VW(4);
    for (int c = 0; c < 3; ++c) {
      for (int s = 0; s < lat.sites(); ++s) VW.at(c, s) = V.at(c, s) + W.at(c, s);
    }
    CHECK(braces(VW).coeffs == sum.coeffs);
    double site_sq = 0.0;
    for (int c = 0; c < 3; ++c) {
      for (int s = 0; s < lat.sites(); ++s) site_sq += V.at(c, s) * V.at(c, s);
    }
    CHECK(dot(u, u) == doctest::Approx(site_sq).epsilon(1e-14));
  }
}

TEST_CASE("face velocity carries the 2h factor and the orientation sign") {
  {
    Lattice lat(LatticeConfig{4, 1.0});
    VectorField V(4);
    int s = lat.site_index({0, 0, 0});
    V.at(0, s) = 3.0;
    FaceVelocity fv = face_velocity(lat, V, CellId{2, {0, 0, 0}, Axis::X});
    CHECK(fv.vector[0] == 6.0);
    CHECK(fv.vector[1] == 0.0);
    CHECK(fv.vector[2] == 0.0);
    CHECK(fv.normal == 6.0);
    FaceVelocity rev = face_velocity(lat, V, CellId{2, {0, 0, 0}, Axis::X}, -1);
    CHECK(rev.vector[0] == 6.0);
    CHECK(rev.normal == -6.0);
  }
  {
    Lattice lat(LatticeConfig{4, 0.5});
    VectorField V(4);
    int s = lat.site_index({2, 1, 0});
    V.at(1, s) = 2.0;
    FaceVelocity fv = face_velocity(lat, V, CellId{2, {2, 1, 0}, Axis::X});
    CHECK(fv.vector[1] == 2.0);  // 2h = 1
    CHECK(fv.normal == 0.0);     // tangential flow
  }
}

TEST_CASE("momentum flux is the product of averages") {
  Lattice lat(LatticeConfig{4, 0.5});
  SplitMix64 rng(32);

  SUBCASE("constant x-flow") {
    VectorField V(4);
    for (int s = 0; s < lat.sites(); ++s) V.at(0, s) = 3.0;
    VectorCochain flux = momentum_flux(lat, V);
    const double scale = 4.0 * lat.h() * lat.h();  // = 1 at h = 0.5
    for (int s = 0; s < lat.sites(); ++s) {
      int fx = lat.cell_index({2, lat.site_coords(s), Axis::X});
      CHECK(flux.comp[0][static_cast<std::size_t>(fx)] == scale * 9.0);
      CHECK(flux.comp[1][static_cast<std::size_t>(fx)] == 0.0);
      int fy = lat.cell_index({2, lat.site_coords(s), Axis::Y});
      CHECK(flux.comp[0][static_cast<std::size_t>(fy)] == 0.0);
      CHECK(flux.comp[1][static_cast<std::size_t>(fy)] == 0.0);
    }
  }

  SUBCASE("random field against direct per-face recomputation") {
    VectorField V = random_field(lat, rng);
    VectorCochain flux = momentum_flux(lat, V);
    const double scale = 4.0 * lat.h() * lat.h();
    for (int d = 0; d < 3; ++d) {
      for (int s = 0; s < lat.sites(); ++s) {
        int f = lat.cell_index({2, lat.site_coords(s), static_cast<Axis>(d)});
        for (int c = 0; c < 3; ++c) {
          CHECK(flux.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(f)] ==
                scale * V.at(d, s) * V.at(c, s));
        }
      }
    }
  }
}

TEST_CASE("componentwise cochain operators agree with the scalar kernels") {
  Lattice lat(LatticeConfig{4, 1.0});
  SplitMix64 rng(33);
  VectorCochain w;
  w.degree = 2;
  for (int c = 0; c < 3; ++c) w.comp[static_cast<std::size_t>(c)] = random_int_chain(lat, 2, rng);
  VectorCochain dw = coboundary(lat, w);
  CHECK(dw.degree == 3);
  for (int c = 0; c < 3; ++c) {
    CHECK(dw.comp[static_cast<std::size_t>(c)].coeffs ==
          lat.coboundary(w.comp[static_cast<std::size_t>(c)]).coeffs);
  }
  VectorField placed = star_at_centers(lat, dw);
  for (int c = 0; c < 3; ++c) {
    Chain starred = lat.star(dw.comp[static_cast<std::size_t>(c)]);
    CHECK(placed.comp[static_cast<std::size_t>(c)] == starred.coeffs);
  }
}

TEST_CASE("nonlinear term") {
  Lattice lat(LatticeConfig{4, 1.0});
  SplitMix64 rng(34);

  SUBCASE("constant field cancels exactly") {
    VectorField V(4);
    for (int s = 0; s < lat.sites(); ++s) {
      V.at(0, s) = 1.5;
      V.at(1, s) = -0.75;
      V.at(2, s) = 2.0;
    }
    CHECK(exactly_zero(nonlinear_term(lat, V)));
  }

  SUBCASE("single-site source stays within one lattice step") {
    VectorField V(4);
    SiteIndex q{2, 1, 3};
    int s = lat.site_index(q);
    V.at(0, s) = 2.0;
    V.at(1, s) = -1.0;
    V.at(2, s) = 3.0;
    Chain nl = nonlinear_term(lat, V);
    CHECK(nl.coeffs == ref::nonlinear_term(lat, V).coeffs);
    auto wrap_dist = [](int a, int b) {
      int d = ((a - b) % 4 + 4) % 4;
      return std::min(d, 4 - d);
    };
    for (int idx = 0; idx < lat.dims(1); ++idx) {
      if (nl[static_cast<std::size_t>(idx)] == 0.0) continue;
      SiteIndex p = lat.cell_from_index(1, idx).center;
      CHECK(wrap_dist(p.i, q.i) + wrap_dist(p.j, q.j) + wrap_dist(p.k, q.k) == 1);
    }
  }

  SUBCASE("shear field matches the brute-force oracle") {
    VectorField V(4);
    for (int s = 0; s < lat.sites(); ++s) {
      SiteIndex p = lat.site_coords(s);
      V.at(0, s) = 0.8 * std::sin(2.0 * std::numbers::pi * p.j / 4.0);
    }
    Chain nl = nonlinear_term(lat, V);
    Chain want = ref::nonlinear_term(lat, V);
    CHECK(norm(nl - want) <= 1e-12 * (1.0 + norm(want)));
  }

  SUBCASE("quadratic scaling and oracle agreement on random fields") {
    for (int trial = 0; trial < 10; ++trial) {
      VectorField V = random_field(lat, rng);
      Chain nl = nonlinear_term(lat, V);
      Chain want = ref::nonlinear_term(lat, V);
      CHECK(norm(nl - want) <= 1e-12 * norm(want));
      VectorField V2(4);
      for (int c = 0; c < 3; ++c) {
        for (int s = 0; s < lat.sites(); ++s) V2.at(c, s) = 3.0 * V.at(c, s);
      }
      CHECK(norm(nonlinear_term(lat, V2) - 9.0 * nl) <= 1e-12 * norm(nl));
    }
  }
}

TEST_CASE("divergence, gradient, curl") {
  Lattice lat(LatticeConfig{4, 1.0});
  SplitMix64 rng(35);

  SUBCASE("constant field has zero divergence and curl") {
    VectorField V(4);
    for (int s = 0; s < lat.sites(); ++s) {
      V.at(0, s) = 1.0;
      V.at(1, s) = 2.0;
      V.at(2, s) = 3.0;
    }
    CHECK(exactly_zero(divergence(lat, V)));
    VectorField c = curl(lat, V);
    for (int d = 0; d < 3; ++d) {
      for (double x : c.comp[static_cast<std::size_t>(d)]) CHECK(x == 0.0);
    }
  }

  SUBCASE("divergence of a coboundary field is the degree-0 laplacian") {
    Chain f = random_int_chain(lat, 0, rng);
    VectorField V = unbraces(lat, lat.coboundary(f));
    CHECK(divergence(lat, V).coeffs == lat.laplacian(f).coeffs);
  }

  SUBCASE("matches the per-vertex balance oracle exactly on integer fields") {
    VectorField V = random_int_field(lat, rng);
    CHECK(divergence(lat, V).coeffs == ref::divergence(lat, V).coeffs);
  }

  SUBCASE("divergence is orthogonal to every harmonic chain") {
    VectorField V = random_int_field(lat, rng);
    CHECK(exactly_zero(harmonic_project(lat, divergence(lat, V))));
  }

  SUBCASE("gradient is the degree-0 coboundary") {
    Chain f = random_int_chain(lat, 0, rng);
    CHECK(gradient(lat, f).coeffs == lat.coboundary(f).coeffs);
  }

  SUBCASE("curl of a gradient vanishes exactly") {
    Chain f = random_int_chain(lat, 0, rng);
    VectorField g = unbraces(lat, gradient(lat, f));
    VectorField c = curl(lat, g);
    for (int d = 0; d < 3; ++d) {
      for (double x : c.comp[static_cast<std::size_t>(d)]) CHECK(x == 0.0);
    }
  }

  SUBCASE("curl equals the assembled star.coboundary path") {
    VectorField V = random_int_field(lat, rng);
    SparseInt d1 = assemble_coboundary(lat, 1);
    SparseInt s2 = assemble_star(lat, 2);
    std::vector<double> want = apply_sparse(s2, apply_sparse(d1, braces(V).coeffs));
    CHECK(braces(curl(lat, V)).coeffs == want);
  }

  SUBCASE("divergence of a boundary field vanishes exactly") {
    Chain w = random_int_chain(lat, 2, rng);
    VectorField V = unbraces(lat, lat.boundary(w));
    CHECK(exactly_zero(divergence(lat, V)));
  }
}

TEST_CASE("degree-0 stencil") {
  Lattice lat(LatticeConfig{6, 1.0});
  SplitMix64 rng(36);

  SUBCASE("indicator pattern") {
    Chain f = lat.basis_chain(CellId{0, {1, 2, 3}, Axis::X});
    Chain lf = scalar_laplacian(lat, f);
    CHECK(lf[static_cast<std::size_t>(lat.site_index({1, 2, 3}))] == -6.0);
    CHECK(lf[static_cast<std::size_t>(lat.site_index({3, 2, 3}))] == 1.0);
    CHECK(lf[static_cast<std::size_t>(lat.site_index({5, 2, 3}))] == 1.0);
    CHECK(lf[static_cast<std::size_t>(lat.site_index({1, 4, 3}))] == 1.0);
    CHECK(lf[static_cast<std::size_t>(lat.site_index({1, 2, 5}))] == 1.0);
  }

  SUBCASE("negated boundary.coboundary path, exactly") {
    for (int trial = 0; trial < 10; ++trial) {
      Chain f = random_int_chain(lat, 0, rng);
      Chain stencil = scalar_laplacian(lat, f);
      Chain composed = -1.0 * lat.boundary(lat.coboundary(f));
      CHECK(stencil.coeffs == composed.coeffs);
    }
  }
}
