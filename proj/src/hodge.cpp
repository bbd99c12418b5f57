#include "lhydro/hodge.hpp"

#include "lhydro/assemble.hpp"

#include <cmath>
#include <numbers>

namespace lhydro {

namespace {

constexpr double kNullThreshold = 1e-8;

long effective_max_iter(const SolverOptions& opts, int cells) {
  if (opts.max_iter > 0) return opts.max_iter;
  return 10L * cells;
}

}  // namespace

Chain harmonic_project(const Lattice& lat, const Chain& c) {
  const int n = lat.n();
  const int N = lat.sites();
  const int slots = lat.dims(c.degree) / N;
  const double bucket_size = static_cast<double>((n / 2) * (n / 2) * (n / 2));
  Chain out = lat.zero_chain(c.degree);
  for (int sl = 0; sl < slots; ++sl) {
    const double* in = c.coeffs.data() + static_cast<std::size_t>(sl) * N;
    double* o = out.coeffs.data() + static_cast<std::size_t>(sl) * N;
    double sums[8] = {};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          sums[(i % 2) * 4 + (j % 2) * 2 + (k % 2)] += in[(i * n + j) * n + k];
    double means[8];
    for (int b = 0; b < 8; ++b) means[b] = sums[b] / bucket_size;
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          o[(i * n + j) * n + k] = means[(i % 2) * 4 + (j % 2) * 2 + (k % 2)];
  }
  return out;
}

Chain solve_laplacian(const Lattice& lat, const Chain& rhs, const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("solver tol must be positive");
  const long max_iter = effective_max_iter(opts, lat.dims(rhs.degree));

  Chain x = lat.zero_chain(rhs.degree);
  Chain r = rhs;
  r -= harmonic_project(lat, r);
  const double rhs_norm = norm(r);
  if (rhs_norm == 0.0) return x;
  if (!std::isfinite(rhs_norm))
    throw SolverError("laplacian solve: right-hand side is not finite", rhs_norm, 0);

  Chain p = r;
  double rho = dot(r, r);
  const double target = opts.tol * rhs_norm;
  for (long it = 1; it <= max_iter; ++it) {
    const Chain ap = lat.laplacian(p);
    const double denom = dot(p, ap);
    if (denom <= 0.0) break;  // numerically exhausted search space
    const double alpha = rho / denom;
    axpy(x, alpha, p);
    axpy(r, -alpha, ap);
    if (it % 50 == 0) r -= harmonic_project(lat, r);  // suppress kernel drift
    const double rho_next = dot(r, r);
    if (!std::isfinite(rho_next))
      throw SolverError("laplacian solve diverged", rho_next, it);
    if (std::sqrt(rho_next) <= target) {
      x -= harmonic_project(lat, x);
      return x;
    }
    const double beta = rho_next / rho;
    rho = rho_next;
    p *= beta;
    p += r;
  }
  throw SolverError("laplacian solve did not converge", norm(r) / rhs_norm, max_iter);
}

Chain solve_poisson_deg0(const Lattice& lat, const Chain& rhs, const SolverOptions& opts) {
  if (rhs.degree != 0) throw std::invalid_argument("solve_poisson_deg0 expects a degree-0 chain");
  const double rhs_norm = norm(rhs);
  if (rhs_norm == 0.0) return lat.zero_chain(0);
  const Chain harm = harmonic_project(lat, rhs);
  if (norm(harm) > opts.tol * rhs_norm)
    throw SolverError("poisson rhs has a harmonic component; no solution exists",
                      norm(harm) / rhs_norm, 0);
  Chain p = solve_laplacian(lat, rhs, opts);
  p *= -1.0;
  return p;
}

HodgeParts hodge_decompose(const Lattice& lat, const Chain& c, const SolverOptions& opts) {
  HodgeParts parts;
  parts.harmonic = harmonic_project(lat, c);
  const Chain r = c - parts.harmonic;
  parts.exact = lat.zero_chain(c.degree);
  parts.coexact = lat.zero_chain(c.degree);
  if (norm(r) == 0.0) return parts;
  const Chain y = solve_laplacian(lat, r, opts);
  if (c.degree <= 2) parts.exact = lat.boundary(lat.coboundary(y));
  if (c.degree >= 1) parts.coexact = lat.coboundary(lat.boundary(y));
  return parts;
}

int harmonic_rank(const Lattice& lat, int degree) {
  if (lat.n() > 8)
    throw std::invalid_argument("harmonic_rank uses a dense eigendecomposition; requires n <= 8");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(lat, degree),
                                                    Eigen::EigenvaluesOnly);
  int nullity = 0;
  while (nullity < es.eigenvalues().size() && es.eigenvalues()(nullity) < kNullThreshold)
    ++nullity;
  return nullity;
}

std::vector<double> analytic_eigenvalues_deg0(const Lattice& lat) {
  const int m = lat.n() / 2;
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(m) * m * m);
  for (int kx = 0; kx < m; ++kx)
    for (int ky = 0; ky < m; ++ky)
      for (int kz = 0; kz < m; ++kz) {
        double lam = 0.0;
        for (int kk : {kx, ky, kz}) lam += 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * kk / m);
        vals.push_back(lam);
      }
  return vals;
}

}  // namespace lhydro
