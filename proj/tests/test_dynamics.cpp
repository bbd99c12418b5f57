#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lhydro/dynamics.hpp"
#include "lhydro/io.hpp"

#include <cmath>
#include <limits>

using namespace lhydro;

namespace {

Chain random_chain(const Lattice& lat, int degree, SplitMix64& rng) {
  Chain c = lat.zero_chain(degree);
  for (double& x : c.coeffs) x = rng.uniform(-1.0, 1.0);
  return c;
}

bool exactly_zero(const Chain& c) {
  for (double x : c.coeffs) {
    if (x != 0.0) return false;
  }
  return true;
}

Chain constant_velocity(const Lattice& lat, double a, double b, double c) {
  VectorField V(lat.n());
  for (int s = 0; s < lat.sites(); ++s) {
    V.at(0, s) = a;
    V.at(1, s) = b;
    V.at(2, s) = c;
  }
  return braces(V);
}

// x-velocity sin(2 pi j / n) at n=4: the values {0,1,0,-1} make the chain an
// exact integer eigenvector, laplacian(u) = 4 u with no rounding.
Chain diffusion_mode(const Lattice& lat) {
  VectorField V(lat.n());
  const int n = lat.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double v = j == 1 ? 1.0 : j == 3 ? -1.0 : 0.0;
        V.at(0, (i * n + j) * n + k) = v;
      }
    }
  }
  return braces(V);
}

}  // namespace

TEST_CASE("pressure solve cancels the nonlinear divergence") {
  Lattice lat(LatticeConfig{4, 1.0});
  SplitMix64 rng(41);

  SUBCASE("zero and constant fields need no pressure") {
    CHECK(exactly_zero(compute_pressure(lat, lat.zero_chain(1))));
    CHECK(exactly_zero(compute_pressure(lat, constant_velocity(lat, 1.0, -2.0, 0.5))));
  }

  SUBCASE("random field") {
    for (int trial = 0; trial < 5; ++trial) {
      Chain u = random_chain(lat, 1, rng);
      Chain p = compute_pressure(lat, u);
      CHECK(p.degree == 0);
      Chain nl = nonlinear_term(lat, unbraces(lat, u));
      CHECK(norm(lat.boundary(nl + lat.coboundary(p))) <= 1e-8 * norm(nl));
      CHECK(norm(harmonic_project(lat, p)) <= 1e-12 * (1.0 + norm(p)));
    }
  }
}

TEST_CASE("right-hand side of the momentum equation") {
  Lattice lat(LatticeConfig{4, 1.0});
  SplitMix64 rng(42);

  SUBCASE("constant velocity is a fixed point, exactly") {
    Chain u = constant_velocity(lat, 0.7, -1.25, 2.0);
    CHECK(exactly_zero(rhs(lat, u, 0.3)));
  }

  SUBCASE("diffusion eigenmode") {
    Chain u = diffusion_mode(lat);
    Chain lap = lat.laplacian(u);
    Chain four_u = 4.0 * u;
    CHECK(lap.coeffs == four_u.coeffs);
    CHECK(exactly_zero(nonlinear_term(lat, unbraces(lat, u))));

    const double nu = 0.07;
    StepControl diffusion_only;
    diffusion_only.include_nonlinear = false;
    Chain r = rhs(lat, u, nu, diffusion_only);
    Chain want = (-nu * 4.0) * u;
    CHECK(norm(r - want) <= 1e-14 * norm(want));
    // the nonlinear term vanishes on this mode, so enabling it changes nothing
    Chain r_full = rhs(lat, u, nu);
    CHECK(norm(r_full - want) <= 1e-14 * norm(want));
  }

  SUBCASE("divergence-compatible on divergence-free input") {
    Chain u = project_divergence_free(lat, random_chain(lat, 1, rng));
    Chain r = rhs(lat, u, 0.01);
    CHECK(norm(lat.boundary(r)) <= 1e-8 * norm(r));
  }

  SUBCASE("quadratic scaling with zero viscosity") {
    Chain u = random_chain(lat, 1, rng);
    Chain r1 = rhs(lat, u, 0.0);
    Chain r3 = rhs(lat, 3.0 * u, 0.0);
    CHECK(norm(r3 - 9.0 * r1) <= 1e-10 * norm(9.0 * r1));
  }
}

TEST_CASE("divergence-free projection") {
  Lattice lat(LatticeConfig{4, 1.0});
  SplitMix64 rng(43);

  SUBCASE("divergence-free input is unchanged") {
    Chain u = project_divergence_free(lat, random_chain(lat, 1, rng));
    Chain again = project_divergence_free(lat, u);
    CHECK(norm(again - u) <= 1e-10 * norm(u));
  }

  SUBCASE("pure gradient input projects to nearly zero") {
    Chain f = random_chain(lat, 0, rng);
    Chain u = lat.coboundary(f);
    Chain out = project_divergence_free(lat, u);
    CHECK(norm(out) <= 1e-8 * norm(u));
  }

  SUBCASE("removes only the coexact part") {
    Chain u = random_chain(lat, 1, rng);
    Chain out = project_divergence_free(lat, u);
    CHECK(norm(lat.boundary(out)) <= 1e-8 * norm(u));
    HodgeParts before = hodge_decompose(lat, u);
    HodgeParts after = hodge_decompose(lat, out);
    CHECK(norm(after.exact - before.exact) <= 1e-9 * norm(u));
    CHECK(norm(after.harmonic - before.harmonic) <= 1e-9 * norm(u));
    CHECK(norm(after.coexact) <= 1e-9 * norm(u));
  }
}

TEST_CASE("time stepping") {
  Lattice lat(LatticeConfig{4, 1.0});
  SplitMix64 rng(44);

  SUBCASE("dt must be positive") {
    SimState st{lat, 0.0, lat.zero_chain(1), 0.0, 0.0};
    CHECK_THROWS_AS(step(st, Scheme::Euler), std::invalid_argument);
  }

  SUBCASE("constant velocity is stationary, bit for bit") {
    SimState st{lat, 0.0, constant_velocity(lat, 1.0, 2.0, -0.5), 0.1, 0.25};
    SimState next = step(st, Scheme::RK4);
    CHECK(next.t == 0.25);
    CHECK(next.u.coeffs == st.u.coeffs);
  }

  SUBCASE("small steps move the state proportionally to dt") {
    Chain u0 = project_divergence_free(lat, random_chain(lat, 1, rng));
    double r0 = norm(rhs(lat, u0, 0.02));
    for (double dt : {1e-3, 1e-4}) {
      SimState st{lat, 0.0, u0, 0.02, dt};
      SimState next = step(st, Scheme::Euler);
      CHECK(norm(next.u - u0) <= 2.0 * r0 * dt);
    }
  }

  SUBCASE("euler converges at first order on the diffusion mode") {
    const double nu = 0.1, lambda = 4.0, t_end = 0.5;
    Chain u0 = diffusion_mode(lat);
    StepControl diffusion_only;
    diffusion_only.include_nonlinear = false;
    auto amplitude_error = [&](double dt) {
      SimState st{lat, 0.0, u0, nu, dt};
      long steps = std::lround(t_end / dt);
      for (long i = 0; i < steps; ++i) st = step(st, Scheme::Euler, diffusion_only);
      return std::abs(norm(st.u) / norm(u0) - std::exp(-nu * lambda * t_end));
    };
    double e1 = amplitude_error(0.02);
    double e2 = amplitude_error(0.01);
    double slope = std::log2(e1 / e2);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.2));
  }

  SUBCASE("rk4 tracks the diffusion mode to high accuracy") {
    const double nu = 0.1, lambda = 4.0, dt = 0.05;
    Chain u0 = diffusion_mode(lat);
    StepControl diffusion_only;
    diffusion_only.include_nonlinear = false;
    SimState st{lat, 0.0, u0, nu, dt};
    for (int i = 0; i < 20; ++i) st = step(st, Scheme::RK4, diffusion_only);
    double want = std::exp(-nu * lambda * st.t);
    CHECK(norm(st.u) / norm(u0) == doctest::Approx(want).epsilon(1e-8));
  }

  SUBCASE("non-finite fields are rejected") {
    Chain u = constant_velocity(lat, 1.0, 0.0, 0.0);
    u[0] = std::numeric_limits<double>::quiet_NaN();
    SimState st{lat, 0.0, u, 0.0, 0.1};
    CHECK_THROWS_AS(step(st, Scheme::RK4), std::runtime_error);
  }

  SUBCASE("divergence stays small over repeated steps") {
    // modest amplitude: strong random data amplifies nonlinearly faster than
    // this viscosity can damp it
    Chain u0 = 0.1 * project_divergence_free(lat, random_chain(lat, 1, rng));
    SimState st{lat, 0.0, u0, 0.05, 0.02};
    for (int i = 0; i < 10; ++i) {
      st = step(st, Scheme::RK4);
      CHECK(norm(lat.boundary(st.u)) <= 1e-7 * norm(st.u));
    }
  }
}

TEST_CASE("step suggestion") {
  Lattice lat(LatticeConfig{4, 0.5});

  SUBCASE("rest state falls back to the configured maximum") {
    SimState st{lat, 0.0, lat.zero_chain(1), 0.0, 0.0};
    CHECK(suggest_dt(st) == 1.0);
    StepControl ctrl;
    ctrl.dt_max = 2.5;
    CHECK(suggest_dt(st, ctrl) == 2.5);
  }

  SUBCASE("advective bound uses the largest per-site speed") {
    VectorField V(lat.n());
    V.at(0, 5) = 3.0;
    V.at(1, 5) = 4.0;  // speed 5 at one site
    SimState st{lat, 0.0, braces(V), 0.0, 0.0};
    CHECK(suggest_dt(st) == doctest::Approx(0.25 * 1.0 / 5.0));
  }

  SUBCASE("viscous bound alone when the field is at rest") {
    SimState st{lat, 0.0, lat.zero_chain(1), 0.08, 0.0};
    CHECK(suggest_dt(st) == doctest::Approx(0.02 * 1.0 / 0.08));
  }

  SUBCASE("both active takes the minimum") {
    VectorField V(lat.n());
    V.at(2, 0) = 10.0;
    SimState st{lat, 0.0, braces(V), 0.001, 0.0};
    double adv = 0.25 * 1.0 / 10.0;
    double visc = 0.02 * 1.0 / 0.001;
    CHECK(suggest_dt(st) == doctest::Approx(std::min(adv, visc)));
  }
}

TEST_CASE("diagnostics") {
  Lattice lat(LatticeConfig{4, 1.0});
  SplitMix64 rng(45);

  SUBCASE("zero state") {
    SimState st{lat, 0.0, lat.zero_chain(1), 0.0, 0.1};
    Diagnostics d = diagnostics(st);
    CHECK(d.kinetic_energy == 0.0);
    CHECK(d.divergence_norm == 0.0);
    CHECK(d.enstrophy == 0.0);
    CHECK(d.momentum[0] == 0.0);
    CHECK(d.exact_norm == 0.0);
    CHECK(d.coexact_norm == 0.0);
    CHECK(d.harmonic_norm == 0.0);
  }

  SUBCASE("random state") {
    Chain u = random_chain(lat, 1, rng);
    SimState st{lat, 0.0, u, 0.0, 0.1};
    Diagnostics d = diagnostics(st);
    CHECK(d.kinetic_energy == doctest::Approx(0.5 * dot(u, u)).epsilon(1e-12));
    CHECK(d.divergence_norm == doctest::Approx(norm(lat.boundary(u))).epsilon(1e-12));
    Chain vort = lat.star(lat.coboundary(u));
    CHECK(d.enstrophy == doctest::Approx(dot(vort, vort)).epsilon(1e-12));
    double sq = d.exact_norm * d.exact_norm + d.coexact_norm * d.coexact_norm +
                d.harmonic_norm * d.harmonic_norm;
    CHECK(sq == doctest::Approx(dot(u, u)).epsilon(1e-9));
    double px = 0.0;
    for (int s = 0; s < lat.sites(); ++s) px += u[static_cast<std::size_t>(s)];
    CHECK(d.momentum[0] == doctest::Approx(px).epsilon(1e-12));
  }

  SUBCASE("per-axis momentum of a constant field is preserved with zero viscosity") {
    SimState st{lat, 0.0, constant_velocity(lat, 2.0, -1.0, 0.5), 0.0, 0.1};
    Diagnostics before = diagnostics(st);
    SimState next = step(st, Scheme::RK4);
    Diagnostics after = diagnostics(next);
    for (int a = 0; a < 3; ++a) {
      CHECK(std::abs(after.momentum[static_cast<std::size_t>(a)] -
                     before.momentum[static_cast<std::size_t>(a)]) <=
            1e-9 * std::abs(before.momentum[static_cast<std::size_t>(a)]));
    }
  }
}
