#include "lhydro/assemble.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace lhydro {

namespace {

SparseInt assemble(const Lattice& lat, int in_degree, int out_degree,
                   const std::function<Chain(const Chain&)>& apply) {
  const int cols = lat.dims(in_degree);
  const int rows = lat.dims(out_degree);
  std::vector<Eigen::Triplet<long long>> trips;
  Chain basis = lat.zero_chain(in_degree);
  for (int c = 0; c < cols; ++c) {
    basis.coeffs[static_cast<std::size_t>(c)] = 1.0;
    const Chain col = apply(basis);
    basis.coeffs[static_cast<std::size_t>(c)] = 0.0;
    for (int r = 0; r < rows; ++r) {
      const double v = col.coeffs[static_cast<std::size_t>(r)];
      if (v == 0.0) continue;
      const long long iv = std::llround(v);
      if (static_cast<double>(iv) != v)
        throw std::logic_error("operator entry is not an integer");
      trips.emplace_back(r, c, iv);
    }
  }
  SparseInt m(rows, cols);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace

SparseInt assemble_boundary(const Lattice& lat, int degree) {
  if (degree < 1 || degree > 3) throw std::invalid_argument("boundary degree must be 1..3");
  return assemble(lat, degree, degree - 1, [&lat](const Chain& c) { return lat.boundary(c); });
}

SparseInt assemble_coboundary(const Lattice& lat, int degree) {
  if (degree < 0 || degree > 2) throw std::invalid_argument("coboundary degree must be 0..2");
  return assemble(lat, degree, degree + 1, [&lat](const Chain& c) { return lat.coboundary(c); });
}

SparseInt assemble_star(const Lattice& lat, int degree) {
  return assemble(lat, degree, 3 - degree, [&lat](const Chain& c) { return lat.star(c); });
}

SparseInt assemble_laplacian(const Lattice& lat, int degree) {
  return assemble(lat, degree, degree, [&lat](const Chain& c) { return lat.laplacian(c); });
}

Eigen::MatrixXd dense_laplacian(const Lattice& lat, int degree) {
  return assemble_laplacian(lat, degree).cast<double>().toDense();
}

Eigen::MatrixXd dense_nullspace(const Lattice& lat, int degree, double threshold) {
  const Eigen::MatrixXd m = dense_laplacian(lat, degree);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  int nullity = 0;
  while (nullity < m.rows() && es.eigenvalues()(nullity) < threshold) ++nullity;
  return es.eigenvectors().leftCols(nullity);
}

Chain dense_laplacian_pinv(const Lattice& lat, const Chain& rhs, double threshold) {
  const Eigen::MatrixXd m = dense_laplacian(lat, rhs.degree);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd b =
      Eigen::Map<const Eigen::VectorXd>(rhs.coeffs.data(), static_cast<long>(rhs.coeffs.size()));
  Eigen::VectorXd coeff = es.eigenvectors().transpose() * b;
  for (int i = 0; i < coeff.size(); ++i)
    coeff(i) = es.eigenvalues()(i) < threshold ? 0.0 : coeff(i) / es.eigenvalues()(i);
  const Eigen::VectorXd y = es.eigenvectors() * coeff;
  Chain out = lat.zero_chain(rhs.degree);
  Eigen::Map<Eigen::VectorXd>(out.coeffs.data(), y.size()) = y;
  return out;
}

}  // namespace lhydro
