#include "lhydro/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lhydro {

namespace {

bool all_finite(const Chain& c) {
  for (double x : c.coeffs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

Chain compute_pressure(const Lattice& lat, const Chain& u, const StepControl& ctrl) {
  if (!ctrl.include_nonlinear) return lat.zero_chain(0);
  Chain nl = nonlinear_term(lat, unbraces(lat, u));
  // boundary(nl) lies in im boundary, so the deflated solve is well posed.
  // solve_poisson_deg0 returns P with laplacian(-P) = rhs, hence
  // boundary(nl + coboundary(P)) = boundary(nl) + laplacian(P) = 0.
  return solve_poisson_deg0(lat, lat.boundary(nl), ctrl.solver);
}

Chain rhs(const Lattice& lat, const Chain& u, double nu, const StepControl& ctrl) {
  Chain out = lat.zero_chain(1);
  if (ctrl.include_nonlinear) {
    out = nonlinear_term(lat, unbraces(lat, u));
    Chain p = solve_poisson_deg0(lat, lat.boundary(out), ctrl.solver);
    out += lat.coboundary(p);
  }
  if (nu != 0.0) axpy(out, -nu, lat.laplacian(u));
  return out;
}

Chain project_divergence_free(const Lattice& lat, const Chain& u, const SolverOptions& opts) {
  Chain div = lat.boundary(u);
  if (norm(div) == 0.0) return u;
  Chain p = solve_laplacian(lat, div, opts);
  Chain out = u;
  out -= lat.coboundary(p);
  return out;
}

SimState step(const SimState& state, Scheme scheme, const StepControl& ctrl) {
  const Lattice& lat = state.lattice;
  const double dt = state.dt;
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

  Chain u_new = state.u;
  switch (scheme) {
    case Scheme::Euler: {
      axpy(u_new, dt, rhs(lat, state.u, state.nu, ctrl));
      break;
    }
    case Scheme::RK4: {
      Chain k1 = rhs(lat, state.u, state.nu, ctrl);
      Chain stage = state.u;
      axpy(stage, 0.5 * dt, k1);
      Chain k2 = rhs(lat, stage, state.nu, ctrl);
      stage = state.u;
      axpy(stage, 0.5 * dt, k2);
      Chain k3 = rhs(lat, stage, state.nu, ctrl);
      stage = state.u;
      axpy(stage, dt, k3);
      Chain k4 = rhs(lat, stage, state.nu, ctrl);
      axpy(u_new, dt / 6.0, k1);
      axpy(u_new, dt / 3.0, k2);
      axpy(u_new, dt / 3.0, k3);
      axpy(u_new, dt / 6.0, k4);
      break;
    }
  }

  if (!all_finite(u_new)) {
    throw std::runtime_error("step: non-finite velocity coefficient (instability; reduce dt)");
  }

  SimState next = state;
  next.t = state.t + dt;
  next.u = project_divergence_free(lat, u_new, ctrl.solver);
  return next;
}

double suggest_dt(const SimState& state, const StepControl& ctrl) {
  const double width = 2.0 * state.lattice.h();
  const int nsites = state.lattice.sites();

  double max_speed_sq = 0.0;
  for (int s = 0; s < nsites; ++s) {
    double vx = state.u[s];
    double vy = state.u[static_cast<std::size_t>(nsites) + s];
    double vz = state.u[2 * static_cast<std::size_t>(nsites) + s];
    double sq = vx * vx + vy * vy + vz * vz;
    if (sq > max_speed_sq) max_speed_sq = sq;
  }
  const double max_speed = std::sqrt(max_speed_sq);

  const double inf = std::numeric_limits<double>::infinity();
  double advective = max_speed > 0.0 ? ctrl.c_adv * width / max_speed : inf;
  double viscous = state.nu > 0.0 ? ctrl.c_visc * width * width / state.nu : inf;
  double dt = std::min(advective, viscous);
  return std::isfinite(dt) ? dt : ctrl.dt_max;
}

Diagnostics diagnostics(const SimState& state, const SolverOptions& opts) {
  const Lattice& lat = state.lattice;
  const int nsites = lat.sites();

  Diagnostics d;
  double u2 = dot(state.u, state.u);
  d.kinetic_energy = 0.5 * u2;
  d.divergence_norm = norm(lat.boundary(state.u));
  Chain vort = lat.star(lat.coboundary(state.u));
  d.enstrophy = dot(vort, vort);
  for (int axis = 0; axis < 3; ++axis) {
    double sum = 0.0;
    for (int s = 0; s < nsites; ++s) sum += state.u[static_cast<std::size_t>(axis) * nsites + s];
    d.momentum[static_cast<std::size_t>(axis)] = sum;
  }
  HodgeParts parts = hodge_decompose(lat, state.u, opts);
  d.exact_norm = norm(parts.exact);
  d.coexact_norm = norm(parts.coexact);
  d.harmonic_norm = norm(parts.harmonic);
  return d;
}

}  // namespace lhydro
