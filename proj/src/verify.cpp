#include "lhydro/verify.hpp"

#include "lhydro/assemble.hpp"
#include "lhydro/fields.hpp"
#include "lhydro/hodge.hpp"
#include "lhydro/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>
#include <tuple>

namespace lhydro {

namespace {

bool is_zero(const SparseInt& m) {
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseInt::InnerIterator it(m, k); it; ++it) {
      if (it.value() != 0) return false;
    }
  }
  return true;
}

bool same_matrix(const SparseInt& a, const SparseInt& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  SparseInt d = a - b;
  return is_zero(d);
}

SparseInt identity(int n) {
  SparseInt id(n, n);
  id.setIdentity();
  return id;
}

Chain random_chain(const Lattice& lat, int degree, SplitMix64& rng) {
  Chain c = lat.zero_chain(degree);
  for (double& x : c.coeffs) x = rng.uniform(-1.0, 1.0);
  return c;
}

Chain random_int_chain(const Lattice& lat, int degree, SplitMix64& rng) {
  Chain c = lat.zero_chain(degree);
  for (double& x : c.coeffs) x = static_cast<double>(static_cast<long>(rng.next() % 17) - 8);
  return c;
}

VectorField random_field(const Lattice& lat, SplitMix64& rng) {
  VectorField V(lat.n());
  for (int s = 0; s < lat.sites(); ++s) {
    for (int c = 0; c < 3; ++c) V.at(c, s) = rng.uniform(-1.0, 1.0);
  }
  return V;
}

}  // namespace

bool VerifyReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  const RunConfig& cfg = opts.config;
  cfg.validate();
  if (cfg.n > 8) throw ConfigError("verify requires n <= 8 (dense rank computations)");
  Lattice lat(cfg.lattice());
  const int n3 = lat.sites();

  VerifyReport rep;
  auto add = [&rep](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    std::ostringstream d;
    d << "L0=" << lat.dims(0) << " L1=" << lat.dims(1) << " L2=" << lat.dims(2)
      << " L3=" << lat.dims(3);
    bool ok = lat.dims(0) == n3 && lat.dims(1) == 3 * n3 && lat.dims(2) == 3 * n3 &&
              lat.dims(3) == n3;
    add("dimension table (n^3, 3n^3, 3n^3, n^3)", ok, d.str());
  }

  // Integer matrices assembled from the production kernels.
  std::array<SparseInt, 4> B;  // B[k]: degree k -> k-1, k >= 1
  std::array<SparseInt, 3> D;  // D[k]: degree k -> k+1
  std::array<SparseInt, 4> S;  // S[k]: degree k -> 3-k
  for (int k = 1; k <= 3; ++k) B[static_cast<std::size_t>(k)] = assemble_boundary(lat, k);
  for (int k = 0; k <= 2; ++k) D[static_cast<std::size_t>(k)] = assemble_coboundary(lat, k);
  for (int k = 0; k <= 3; ++k) S[static_cast<std::size_t>(k)] = assemble_star(lat, k);
  if (opts.corrupt_star) S[1] = SparseInt(-S[1]);

  add("boundary of boundary is zero", is_zero(SparseInt(B[1] * B[2])) && is_zero(SparseInt(B[2] * B[3])));
  add("coboundary of coboundary is zero", is_zero(SparseInt(D[1] * D[0])) && is_zero(SparseInt(D[2] * D[1])));
  add("coboundary is the transposed boundary",
      same_matrix(D[0], SparseInt(B[1].transpose())) && same_matrix(D[1], SparseInt(B[2].transpose())) &&
          same_matrix(D[2], SparseInt(B[3].transpose())));

  add("star intertwining (star.coboundary = boundary.star, star.boundary = coboundary.star)",
      same_matrix(SparseInt(S[1] * D[0]), SparseInt(B[3] * S[0])) &&
          same_matrix(SparseInt(S[2] * D[1]), SparseInt(B[2] * S[1])) &&
          same_matrix(SparseInt(S[3] * D[2]), SparseInt(B[1] * S[2])) &&
          same_matrix(SparseInt(S[0] * B[1]), SparseInt(D[2] * S[1])) &&
          same_matrix(SparseInt(S[1] * B[2]), SparseInt(D[1] * S[2])) &&
          same_matrix(SparseInt(S[2] * B[3]), SparseInt(D[0] * S[3])));

  add("star involution (star.star = identity)",
      same_matrix(SparseInt(S[3] * S[0]), identity(lat.dims(0))) &&
          same_matrix(SparseInt(S[2] * S[1]), identity(lat.dims(1))) &&
          same_matrix(SparseInt(S[1] * S[2]), identity(lat.dims(2))) &&
          same_matrix(SparseInt(S[0] * S[3]), identity(lat.dims(3))));

  {
    const std::array<int, 4> expect{8, 24, 24, 8};
    std::array<int, 4> got{};
    bool ok = true;
    for (int k = 0; k <= 3; ++k) {
      got[static_cast<std::size_t>(k)] = harmonic_rank(lat, k);
      ok = ok && got[static_cast<std::size_t>(k)] == expect[static_cast<std::size_t>(k)];
    }
    std::ostringstream d;
    d << "nullity by degree: " << got[0] << "," << got[1] << "," << got[2] << "," << got[3];
    add("harmonic ranks (8, 24, 24, 8)", ok, d.str());
  }

  {
    SolverOptions hopts;
    hopts.tol = std::min(cfg.solver_tol, 1e-11);
    SplitMix64 rng(cfg.seed);
    bool ok = true;
    double worst = 0.0;
    for (int degree = 0; degree <= 3 && ok; ++degree) {
      for (int trial = 0; trial < 3 && ok; ++trial) {
        Chain x = random_chain(lat, degree, rng);
        HodgeParts parts = hodge_decompose(lat, x, hopts);
        double nx = norm(x);
        Chain recon = parts.exact + parts.coexact + parts.harmonic;
        double err = norm(x - recon) / nx;
        double o1 = std::abs(dot(parts.exact, parts.coexact)) / (nx * nx);
        double o2 = std::abs(dot(parts.exact, parts.harmonic)) / (nx * nx);
        double o3 = std::abs(dot(parts.coexact, parts.harmonic)) / (nx * nx);
        double cyc = 0.0;
        if (degree >= 1) cyc = norm(lat.boundary(parts.harmonic)) / nx;
        double cocyc = 0.0;
        if (degree <= 2) cocyc = norm(lat.coboundary(parts.harmonic)) / nx;
        worst = std::max({worst, err, o1, o2, o3, cyc, cocyc});
        ok = worst <= 1e-10;
      }
    }
    std::ostringstream d;
    d << "worst relative error " << worst;
    add("Hodge reconstruction, orthogonality, harmonic cycles/cocycles", ok, d.str());
  }

  {
    // Every incidence entry of boundary (hence coboundary, its transpose)
    // and of the Laplacian joins cells with the same component label.
    bool ok = true;
    for (int k = 1; k <= 3 && ok; ++k) {
      const SparseInt& m = B[static_cast<std::size_t>(k)];
      for (int col = 0; col < m.outerSize() && ok; ++col) {
        for (SparseInt::InnerIterator it(m, col); it; ++it) {
          ParityClass pc = lat.component_of(lat.cell_from_index(k, static_cast<int>(it.col())));
          ParityClass pr = lat.component_of(lat.cell_from_index(k - 1, static_cast<int>(it.row())));
          if (!(pc == pr)) {
            ok = false;
            break;
          }
        }
      }
    }
    add("boundary and coboundary preserve the 8 component labels", ok);
  }

  {
    // Group cells by component label; the Laplacian must have no entry
    // across groups and the same matrix on every group.
    bool ok = true;
    for (int k = 0; k <= 3 && ok; ++k) {
      SparseInt L = assemble_laplacian(lat, k);
      int cells = lat.dims(k);
      std::vector<int> label(static_cast<std::size_t>(cells));
      std::array<int, 8> counts{};
      for (int c = 0; c < cells; ++c) {
        label[static_cast<std::size_t>(c)] = lat.component_of(lat.cell_from_index(k, c)).code();
        ++counts[static_cast<std::size_t>(label[static_cast<std::size_t>(c)])];
      }
      std::array<int, 8> seen{};
      std::vector<int> rank(static_cast<std::size_t>(cells));
      for (int c = 0; c < cells; ++c) {
        rank[static_cast<std::size_t>(c)] = seen[static_cast<std::size_t>(label[static_cast<std::size_t>(c)])]++;
      }
      for (int g = 1; g < 8; ++g) ok = ok && counts[static_cast<std::size_t>(g)] == counts[0];

      std::array<std::vector<std::tuple<int, int, long long>>, 8> blocks;
      for (int col = 0; col < L.outerSize() && ok; ++col) {
        for (SparseInt::InnerIterator it(L, col); it; ++it) {
          int lc = label[static_cast<std::size_t>(it.col())];
          int lr = label[static_cast<std::size_t>(it.row())];
          if (lc != lr) {
            ok = false;
            break;
          }
          blocks[static_cast<std::size_t>(lc)].emplace_back(rank[static_cast<std::size_t>(it.row())],
                                                            rank[static_cast<std::size_t>(it.col())],
                                                            it.value());
        }
      }
      for (auto& b : blocks) std::sort(b.begin(), b.end());
      for (int g = 1; g < 8 && ok; ++g) ok = blocks[static_cast<std::size_t>(g)] == blocks[0];
    }
    add("Laplacian is block diagonal over components, 8 equal blocks", ok);
  }

  {
    SplitMix64 rng(cfg.seed + 1);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 10 && ok; ++trial) {
      VectorField V = random_field(lat, rng);
      Chain got = nonlinear_term(lat, V);
      Chain want = ref::nonlinear_term(lat, V);
      double rel = norm(got - want) / norm(want);
      worst = std::max(worst, rel);
      ok = worst <= 1e-12;
    }
    std::ostringstream d;
    d << "worst relative error " << worst;
    add("nonlinear term matches the brute-force face-sum oracle", ok, d.str());
  }

  {
    SplitMix64 rng(cfg.seed + 2);
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
      Chain f = random_int_chain(lat, 0, rng);
      Chain via_ops = lat.boundary(lat.coboundary(f));
      Chain stencil = scalar_laplacian(lat, f);
      stencil *= -1.0;
      ok = via_ops.coeffs == stencil.coeffs;
    }
    add("degree-0 Laplacian equals the negated 7-point stencil, exactly", ok);
  }

  return rep;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out) {
  out << "verify: n=" << opts.config.n << ", h=" << opts.config.h;
  if (opts.corrupt_star) out << ", star corruption enabled";
  out << "\n";
  VerifyReport rep = run_verify(opts);
  int passed = 0;
  for (const auto& c : rep.checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
    if (c.passed) ++passed;
  }
  out << "verify: " << passed << "/" << rep.checks.size() << " checks passed\n";
  return rep.all_passed() ? 0 : 1;
}

}  // namespace lhydro
