#pragma once

#include "lhydro/fields.hpp"
#include "lhydro/hodge.hpp"
#include "lhydro/lattice.hpp"

#include <array>

namespace lhydro {

enum class Scheme { Euler, RK4 };

struct StepControl {
  SolverOptions solver;           // pressure and re-projection solves
  bool include_nonlinear = true;  // test hook isolating pure diffusion
  // step suggestion safety factors and the cap used when both bounds
  // are inactive
  double c_adv = 0.25;
  double c_visc = 0.02;
  double dt_max = 1.0;
};

/// One simulation: time, the velocity one-chain, viscosity and step size.
/// The velocity stays volume preserving (boundary within solver tolerance)
/// across steps.
struct SimState {
  Lattice lattice;
  double t = 0.0;
  Chain u;  // degree 1
  double nu = 0.0;
  double dt = 0.0;
};

struct Diagnostics {
  double kinetic_energy = 0.0;          // 0.5 |u|^2
  double divergence_norm = 0.0;         // |boundary(u)|
  double enstrophy = 0.0;               // |star(coboundary(u))|^2
  std::array<double, 3> momentum{};     // per-axis sum of edge coefficients
  double exact_norm = 0.0;              // Hodge part norms of u
  double coexact_norm = 0.0;
  double harmonic_norm = 0.0;
};

/// Pressure cancelling the volume distortion of the momentum transfer term:
/// P such that boundary(nonlinear_term + coboundary(P)) vanishes to solver
/// tolerance, with zero harmonic part.
Chain compute_pressure(const Lattice& lat, const Chain& u, const StepControl& ctrl = {});

/// Right-hand side of the momentum equation:
///   nonlinear_term(u) + coboundary(P) - nu * laplacian(u).
Chain rhs(const Lattice& lat, const Chain& u, double nu, const StepControl& ctrl = {});

/// Leray projection u - coboundary(solve_laplacian(boundary(u))): removes
/// the im-coboundary Hodge part that carries the divergence, leaving the
/// exact and harmonic parts untouched.
Chain project_divergence_free(const Lattice& lat, const Chain& u, const SolverOptions& opts = {});

/// Advance one step with the named explicit scheme, then re-project.
/// Throws std::runtime_error when the field stops being finite.
SimState step(const SimState& state, Scheme scheme, const StepControl& ctrl = {});

/// min(c_adv * 2h / max|V|, c_visc * (2h)^2 / nu); dt_max when neither
/// bound is active.
double suggest_dt(const SimState& state, const StepControl& ctrl = {});

Diagnostics diagnostics(const SimState& state, const SolverOptions& opts = {});

}  // namespace lhydro
