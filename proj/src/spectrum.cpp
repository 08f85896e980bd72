#include "cmrisps/spectrum.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace cmrisps {
namespace {

Eigen::LLT<CMatrix> factorize(const CMatrix& r) {
  Eigen::LLT<CMatrix> llt(r);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    throw std::runtime_error(
        "covariance numerically singular after loading (cond ~ " +
        std::to_string(hi / std::max(lo, 1e-300)) + ")");
  }
  return llt;
}

}  // namespace

CovarianceMatrix sample_covariance(const CMatrix& snapshots) {
  if (snapshots.cols() < 1)
    throw std::invalid_argument("sample_covariance: empty snapshot set");
  CMatrix r = snapshots * snapshots.adjoint() / double(snapshots.cols());
  r = 0.5 * (r + r.adjoint()).eval();  // Hermitian to the last bit
  return CovarianceMatrix{std::move(r), CovarianceMatrix::Kind::sample};
}

CovarianceMatrix sample_covariance(const SnapshotMatrix& snap) {
  return sample_covariance(snap.data);
}

CMatrix loaded_covariance(const CovarianceMatrix& r) {
  const int m = r.dim();
  const double floor = 1e-8 * r.values.real().trace() / m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(r.values, Eigen::EigenvaluesOnly);
  CMatrix out = r.values;
  if (es.eigenvalues().minCoeff() < floor)
    out += floor * CMatrix::Identity(m, m);
  return out;
}

SpectrumEstimate capon_spectrum(const CovarianceMatrix& r,
                                const AngularGrid& grid,
                                const ArrayConfig& cfg) {
  const auto llt = factorize(loaded_covariance(r));
  SpectrumEstimate spec;
  spec.grid = grid;
  spec.estimator = SpectrumEstimate::Estimator::capon;
  spec.values.resize(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const CVector a = steering_vector(cfg, grid.angles[j]).values;
    const double denom = a.dot(llt.solve(a)).real();
    spec.values[j] = 1.0 / denom;
  }
  return spec;
}

SpectrumEstimate me_spectrum(const CovarianceMatrix& r, const AngularGrid& grid,
                             const ArrayConfig& cfg) {
  const auto llt = factorize(loaded_covariance(r));
  CVector u1 = CVector::Zero(r.dim());
  u1[0] = 1.0;
  const CVector b = llt.solve(u1);
  const Complex e0 = b[0];  // u1^H R^{-1} u1, real by Hermitian structure
  if (std::abs(e0.imag()) > 1e-10 * std::abs(e0))
    throw std::runtime_error("me_spectrum: epsilon has imaginary residue");
  const double eps = 1.0 / e0.real();

  SpectrumEstimate spec;
  spec.grid = grid;
  spec.estimator = SpectrumEstimate::Estimator::max_entropy;
  spec.epsilon = eps;
  spec.values.resize(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const CVector a = steering_vector(cfg, grid.angles[j]).values;
    const double mag2 = std::norm(a.dot(b));
    spec.values[j] = 1.0 / (eps * mag2);
  }
  return spec;
}

CovarianceMatrix theoretical_single_interferer(int m, double sigma_l2,
                                               double theta_l) {
  if (sigma_l2 < 0.0)
    throw std::invalid_argument("theoretical_single_interferer: power < 0");
  const CVector a = steering_vector(ArrayConfig::ideal(m), theta_l).values;
  CMatrix r = CMatrix::Identity(m, m) + sigma_l2 * a * a.adjoint();
  r = 0.5 * (r + r.adjoint()).eval();
  return CovarianceMatrix{std::move(r), CovarianceMatrix::Kind::theoretical};
}

CMatrix woodbury_inverse_single_interferer(int m, double sigma_l2,
                                           double theta_l) {
  if (sigma_l2 == 0.0) return CMatrix::Identity(m, m);
  const CVector a = steering_vector(ArrayConfig::ideal(m), theta_l).values;
  const double rho = 1.0 / sigma_l2;
  return CMatrix::Identity(m, m) - a * a.adjoint() / (rho + m);
}

double noise_floor(const CovarianceMatrix& r, int interferer_count) {
  const int m = r.dim();
  if (interferer_count < 0 || interferer_count >= m - 1)
    throw std::invalid_argument("noise_floor: need 0 <= L < M-1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(r.values, Eigen::EigenvaluesOnly);
  const int n = m - interferer_count - 1;
  return es.eigenvalues().head(n).mean();
}

}  // namespace cmrisps
