#include "collig/numeric.hpp"

#include <Eigen/Dense>

namespace collig {

namespace {

Eigen::MatrixXcd to_eigen(const Mat<Cx>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m.at(i, j);
  return e;
}

}  // namespace

std::vector<double> singular_values(const Mat<Cx>& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double spectral_norm(const Mat<Cx>& m) {
  const auto sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.front();
}

double smallest_singular_value(const Mat<Cx>& m) {
  const auto sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.back();
}

Mat<Cx> haar_unitary(int n, Rng& rng) {
  if (n == 0) return Mat<Cx>(0, 0);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Cx d = r(j, j);
    const double mag = std::abs(d);
    const Cx phase = mag > 0.0 ? d / mag : Cx(1.0, 0.0);
    q.col(j) *= phase;
  }
  Mat<Cx> out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = q(i, j);
  return out;
}

double unitary_defect(const Mat<Cx>& u) {
  return (u.adjoint() * u - Mat<Cx>::identity(u.cols())).max_abs();
}

}  // namespace collig
