#include "lhydro/lattice.hpp"

#include <cmath>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lhydro {

namespace {

// Valid for offsets down to -n.
inline int wrap(int i, int n) { return (i + n) % n; }

inline void check_same(const Chain& a, const Chain& b) {
  if (a.degree != b.degree || a.coeffs.size() != b.coeffs.size())
    throw std::invalid_argument("chain degree/size mismatch");
}

}  // namespace

void LatticeConfig::validate() const {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("lattice extent n must be even and >= 4, got " + std::to_string(n));
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("lattice spacing h must be positive and finite");
}

Chain& operator+=(Chain& a, const Chain& b) {
  check_same(a, b);
  const long m = static_cast<long>(a.coeffs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

Chain& operator-=(Chain& a, const Chain& b) {
  check_same(a, b);
  const long m = static_cast<long>(a.coeffs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) a.coeffs[i] -= b.coeffs[i];
  return a;
}

Chain& operator*=(Chain& a, double s) {
  const long m = static_cast<long>(a.coeffs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) a.coeffs[i] *= s;
  return a;
}

Chain operator+(Chain a, const Chain& b) { return a += b; }
Chain operator-(Chain a, const Chain& b) { return a -= b; }
Chain operator*(double s, Chain a) { return a *= s; }

void axpy(Chain& y, double s, const Chain& x) {
  check_same(y, x);
  const long m = static_cast<long>(y.coeffs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) y.coeffs[i] += s * x.coeffs[i];
}

double dot(const Chain& a, const Chain& b) {
  check_same(a, b);
  const long m = static_cast<long>(a.coeffs.size());
  // Per-thread partials combined in thread order: an omp reduction combines
  // in arrival order, which is not reproducible run to run. With a static
  // schedule and a fixed thread count this sum is bit-identical every run.
#ifdef _OPENMP
  std::vector<double> partial(static_cast<std::size_t>(omp_get_max_threads()), 0.0);
#pragma omp parallel
  {
    double local = 0.0;
#pragma omp for schedule(static)
    for (long i = 0; i < m; ++i) local += a.coeffs[i] * b.coeffs[i];
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
#else
  double acc = 0.0;
  for (long i = 0; i < m; ++i) acc += a.coeffs[i] * b.coeffs[i];
  return acc;
#endif
}

double norm(const Chain& a) { return std::sqrt(dot(a, a)); }

Lattice::Lattice(LatticeConfig config) : config_(config) {
  config_.validate();
  nsites_ = config_.sites();
}

int Lattice::dims(int degree) const {
  switch (degree) {
    case 0:
    case 3:
      return nsites_;
    case 1:
    case 2:
      return 3 * nsites_;
    default:
      throw std::invalid_argument("degree must be in 0..3, got " + std::to_string(degree));
  }
}

int Lattice::site_index(const SiteIndex& q) const {
  const int n = config_.n;
  return (wrap(q.i, n) * n + wrap(q.j, n)) * n + wrap(q.k, n);
}

SiteIndex Lattice::site_coords(int s) const {
  const int n = config_.n;
  return SiteIndex{s / (n * n), (s / n) % n, s % n};
}

int Lattice::cell_index(const CellId& cell) const {
  const int s = site_index(cell.center);
  switch (cell.degree) {
    case 0:
    case 3:
      return s;
    case 1:
    case 2:
      return axis_index(cell.axis) * nsites_ + s;
    default:
      throw std::invalid_argument("cell degree must be in 0..3");
  }
}

CellId Lattice::cell_from_index(int degree, int index) const {
  if (index < 0 || index >= dims(degree)) throw std::out_of_range("cell index out of range");
  CellId cell;
  cell.degree = degree;
  if (degree == 1 || degree == 2) {
    cell.axis = static_cast<Axis>(index / nsites_);
    cell.center = site_coords(index % nsites_);
  } else {
    cell.center = site_coords(index);
  }
  return cell;
}

Chain Lattice::zero_chain(int degree) const {
  return Chain{degree, std::vector<double>(static_cast<std::size_t>(dims(degree)), 0.0)};
}

Chain Lattice::basis_chain(const CellId& cell) const {
  Chain c = zero_chain(cell.degree);
  c.coeffs[static_cast<std::size_t>(cell_index(cell))] = 1.0;
  return c;
}

void Lattice::check_chain(const Chain& c, int degree) const {
  if (c.degree != degree)
    throw std::invalid_argument("expected chain of degree " + std::to_string(degree));
  if (static_cast<int>(c.coeffs.size()) != dims(degree))
    throw std::invalid_argument("chain length does not match lattice dims");
}

Chain Lattice::boundary(const Chain& c) const {
  switch (c.degree) {
    case 1:
      return boundary1(c);
    case 2:
      return boundary2(c);
    case 3:
      return boundary3(c);
    default:
      throw std::invalid_argument("boundary requires degree in 1..3");
  }
}

Chain Lattice::coboundary(const Chain& c) const {
  switch (c.degree) {
    case 0:
      return coboundary0(c);
    case 1:
      return coboundary1(c);
    case 2:
      return coboundary2(c);
    default:
      throw std::invalid_argument("coboundary requires degree in 0..2");
  }
}

// Gather stencils below address cells by (axis slot, site). Edge endpoints
// sit at +-1 site along the edge axis, face rims at +-1 along the in-plane
// axes, cube faces at +-1 along the normal; all index arithmetic wraps.

Chain Lattice::boundary1(const Chain& c) const {
  check_chain(c, 1);
  const int n = config_.n;
  const int N = nsites_;
  Chain out = zero_chain(0);
  const double* in = c.coeffs.data();
  double* o = out.coeffs.data();
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int im = wrap(i - 1, n), ip = wrap(i + 1, n);
      const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
      for (int k = 0; k < n; ++k) {
        const int km = wrap(k - 1, n), kp = wrap(k + 1, n);
        // edge centered p - e_d has head p (+), edge at p + e_d has tail p (-)
        double acc = in[0 * N + (im * n + j) * n + k] - in[0 * N + (ip * n + j) * n + k];
        acc += in[1 * N + (i * n + jm) * n + k] - in[1 * N + (i * n + jp) * n + k];
        acc += in[2 * N + (i * n + j) * n + km] - in[2 * N + (i * n + j) * n + kp];
        o[(i * n + j) * n + k] = acc;
      }
    }
  }
  return out;
}

Chain Lattice::boundary2(const Chain& c) const {
  check_chain(c, 2);
  const int n = config_.n;
  const int N = nsites_;
  Chain out = zero_chain(1);
  const double* in = c.coeffs.data();
  double* o = out.coeffs.data();
  // For an edge in direction d with (d, u, v) a cyclic triple, the four
  // faces of side 2h having that edge on their rim contribute
  //   +f(p - e_v, u) - f(p + e_v, u) + f(p + e_u, v) - f(p - e_u, v),
  // the signs read off the right-hand-rule circulation of each face.
  for (int d = 0; d < 3; ++d) {
    const int u = (d + 1) % 3, v = (d + 2) % 3;
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          int cm[3] = {i, j, k}, cp[3] = {i, j, k};
          cm[v] = wrap(cm[v] - 1, n);
          cp[v] = wrap(cp[v] + 1, n);
          double acc = in[u * N + (cm[0] * n + cm[1]) * n + cm[2]] -
                       in[u * N + (cp[0] * n + cp[1]) * n + cp[2]];
          int dm[3] = {i, j, k}, dp[3] = {i, j, k};
          dm[u] = wrap(dm[u] - 1, n);
          dp[u] = wrap(dp[u] + 1, n);
          acc += in[v * N + (dp[0] * n + dp[1]) * n + dp[2]] -
                 in[v * N + (dm[0] * n + dm[1]) * n + dm[2]];
          o[d * N + (i * n + j) * n + k] = acc;
        }
      }
    }
  }
  return out;
}

Chain Lattice::boundary3(const Chain& c) const {
  check_chain(c, 3);
  const int n = config_.n;
  const int N = nsites_;
  Chain out = zero_chain(2);
  const double* in = c.coeffs.data();
  double* o = out.coeffs.data();
  // Cube at p - e_d has outward face (p, d) with + sign; cube at p + e_d
  // sees the same face with inward normal, hence -.
  for (int d = 0; d < 3; ++d) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          int cm[3] = {i, j, k}, cp[3] = {i, j, k};
          cm[d] = wrap(cm[d] - 1, n);
          cp[d] = wrap(cp[d] + 1, n);
          o[d * N + (i * n + j) * n + k] = in[(cm[0] * n + cm[1]) * n + cm[2]] -
                                           in[(cp[0] * n + cp[1]) * n + cp[2]];
        }
      }
    }
  }
  return out;
}

Chain Lattice::coboundary0(const Chain& c) const {
  check_chain(c, 0);
  const int n = config_.n;
  const int N = nsites_;
  Chain out = zero_chain(1);
  const double* in = c.coeffs.data();
  double* o = out.coeffs.data();
  // value at the head minus value at the tail of each edge
  for (int d = 0; d < 3; ++d) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          int cm[3] = {i, j, k}, cp[3] = {i, j, k};
          cm[d] = wrap(cm[d] - 1, n);
          cp[d] = wrap(cp[d] + 1, n);
          o[d * N + (i * n + j) * n + k] = in[(cp[0] * n + cp[1]) * n + cp[2]] -
                                           in[(cm[0] * n + cm[1]) * n + cm[2]];
        }
      }
    }
  }
  return out;
}

Chain Lattice::coboundary1(const Chain& c) const {
  check_chain(c, 1);
  const int n = config_.n;
  const int N = nsites_;
  Chain out = zero_chain(2);
  const double* in = c.coeffs.data();
  double* o = out.coeffs.data();
  // Circulation around face (q, d) with (a, b, d) cyclic:
  //   +e(q + e_a, b) - e(q - e_a, b) - e(q + e_b, a) + e(q - e_b, a)
  for (int d = 0; d < 3; ++d) {
    const int a = (d + 1) % 3, b = (d + 2) % 3;
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          int am[3] = {i, j, k}, ap[3] = {i, j, k};
          am[a] = wrap(am[a] - 1, n);
          ap[a] = wrap(ap[a] + 1, n);
          double acc = in[b * N + (ap[0] * n + ap[1]) * n + ap[2]] -
                       in[b * N + (am[0] * n + am[1]) * n + am[2]];
          int bm[3] = {i, j, k}, bp[3] = {i, j, k};
          bm[b] = wrap(bm[b] - 1, n);
          bp[b] = wrap(bp[b] + 1, n);
          acc += in[a * N + (bm[0] * n + bm[1]) * n + bm[2]] -
                 in[a * N + (bp[0] * n + bp[1]) * n + bp[2]];
          o[d * N + (i * n + j) * n + k] = acc;
        }
      }
    }
  }
  return out;
}

Chain Lattice::coboundary2(const Chain& c) const {
  check_chain(c, 2);
  const int n = config_.n;
  const int N = nsites_;
  Chain out = zero_chain(3);
  const double* in = c.coeffs.data();
  double* o = out.coeffs.data();
  // signed sum over the six faces of each cube, outward orientation
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int im = wrap(i - 1, n), ip = wrap(i + 1, n);
      const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
      for (int k = 0; k < n; ++k) {
        const int km = wrap(k - 1, n), kp = wrap(k + 1, n);
        double acc = in[0 * N + (ip * n + j) * n + k] - in[0 * N + (im * n + j) * n + k];
        acc += in[1 * N + (i * n + jp) * n + k] - in[1 * N + (i * n + jm) * n + k];
        acc += in[2 * N + (i * n + j) * n + kp] - in[2 * N + (i * n + j) * n + km];
        o[(i * n + j) * n + k] = acc;
      }
    }
  }
  return out;
}

Chain Lattice::star(const Chain& c) const {
  check_chain(c, c.degree);
  const int deg = c.degree;
  if (deg < 0 || deg > 3) throw std::invalid_argument("star requires degree in 0..3");
  const double sign = (deg == 0 || deg == 3) ? kStarSignScalar : kStarSignVector;
  Chain out = c;
  out.degree = 3 - deg;
  const long m = static_cast<long>(out.coeffs.size());
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < m; ++idx) out.coeffs[idx] = sign * c.coeffs[idx];
  return out;
}

Chain Lattice::laplacian(const Chain& c) const {
  check_chain(c, c.degree);
  const int n = config_.n;
  const int N = nsites_;
  const int slots = dims(c.degree) / N;
  Chain out = zero_chain(c.degree);
  const double* in = c.coeffs.data();
  double* o = out.coeffs.data();
  for (int sl = 0; sl < slots; ++sl) {
    const double* a = in + static_cast<std::size_t>(sl) * N;
    double* b = o + static_cast<std::size_t>(sl) * N;
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int im = wrap(i - 2, n), ip = wrap(i + 2, n);
        const int jm = wrap(j - 2, n), jp = wrap(j + 2, n);
        for (int k = 0; k < n; ++k) {
          const int km = wrap(k - 2, n), kp = wrap(k + 2, n);
          const double center = a[(i * n + j) * n + k];
          // grouped per axis so constant inputs map to exact zero
          double acc = 2.0 * center - a[(im * n + j) * n + k] - a[(ip * n + j) * n + k];
          acc += 2.0 * center - a[(i * n + jm) * n + k] - a[(i * n + jp) * n + k];
          acc += 2.0 * center - a[(i * n + j) * n + km] - a[(i * n + j) * n + kp];
          b[(i * n + j) * n + k] = acc;
        }
      }
    }
  }
  return out;
}

ParityClass Lattice::component_of(const CellId& cell) const {
  const SiteIndex q = cell.center;
  const int n = config_.n;
  int p[3] = {wrap(q.i, n) % 2, wrap(q.j, n) % 2, wrap(q.k, n) % 2};
  auto flip = [&p](int axis) { p[axis] ^= 1; };
  switch (cell.degree) {
    case 3:
      break;
    case 2:
      flip(axis_index(cell.axis));
      break;
    case 1:
      flip(0);
      flip(1);
      flip(2);
      flip(axis_index(cell.axis));
      break;
    case 0:
      flip(0);
      flip(1);
      flip(2);
      break;
    default:
      throw std::invalid_argument("cell degree must be in 0..3");
  }
  return ParityClass{p[0], p[1], p[2]};
}

}  // namespace lhydro
