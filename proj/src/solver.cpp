#include "cmrisps/solver.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cmrisps {
namespace {

BeamformerWeights distortionless(CVector w, const CVector& a_hat,
                                 std::string method) {
  const Complex c = w.dot(a_hat);  // w^H a_hat
  if (std::abs(c) == 0.0)
    throw std::runtime_error("weights orthogonal to steering vector");
  BeamformerWeights out;
  out.w = w / std::conj(c);
  out.normalization = BeamformerWeights::Normalization::distortionless;
  out.method = std::move(method);
  return out;
}

}  // namespace

CgResult cg_solve(const IncModel& inc, const CVector& a_hat, double tol,
                  int max_iter) {
  const int m = inc.m;
  if (a_hat.size() != m || a_hat.norm() == 0.0)
    throw std::invalid_argument("cg_solve: invalid steering vector");
  if (!(inc.noise_load > 0.0))
    throw std::invalid_argument("cg_solve: model must be positive definite");
  if (tol < 0.0) tol = 1e-6 * a_hat.norm();
  if (max_iter < 0) max_iter = 2 * m;

  CgState state;
  std::uint64_t& ops = state.op_count;
  std::vector<double> grad_norms;
  std::vector<double> costs;

  CVector w = CVector::Ones(m);
  CVector g = inc.apply(w, &ops) + a_hat;
  CVector d = -g;
  double g_norm2 = g.squaredNorm();
  ops += 2 * static_cast<std::uint64_t>(m);

  auto cost = [&]() {
    // R w = g - a_hat, so f(w) needs only two inner products.
    return 0.5 * (w.dot(g).real() + w.dot(a_hat).real());
  };
  grad_norms.push_back(std::sqrt(g_norm2));
  costs.push_back(cost());

  int t = 0;
  for (; t < max_iter; ++t) {
    if (std::sqrt(g_norm2) <= tol) {
      state.converged = true;
      break;
    }
    const CVector q = inc.apply(d, &ops);
    const double d_r_d = d.dot(q).real();
    const double d_g = d.dot(g).real();
    ops += 2 * static_cast<std::uint64_t>(m);
    if (!(d_r_d > 0.0))
      throw std::runtime_error("cg_solve: lost positive definiteness at t=" +
                               std::to_string(t));
    const double mu = -d_g / d_r_d;
    w += mu * d;
    const CVector g_new = g + mu * q;
    ops += 2 * static_cast<std::uint64_t>(m);
    if (!g_new.allFinite())
      throw std::runtime_error("cg_solve: diverged at iteration " +
                               std::to_string(t));
    const double beta = g_new.dot(g_new - g).real() / g_norm2;
    d = -g_new + beta * d;
    ops += 3 * static_cast<std::uint64_t>(m);
    g = g_new;
    g_norm2 = g.squaredNorm();
    ops += m;
    if (d.dot(g).real() > 0.0) d = -g;  // PRP implicit restart

    grad_norms.push_back(std::sqrt(g_norm2));
    costs.push_back(cost());
  }
  if (!state.converged && std::sqrt(g_norm2) <= tol) state.converged = true;

  state.iterations = t;
  state.grad_norms = Eigen::Map<RVector>(grad_norms.data(), grad_norms.size());
  state.costs = Eigen::Map<RVector>(costs.data(), costs.size());

  CgResult result;
  result.weights = distortionless(std::move(w), a_hat, "cmr-isps");
  result.state = std::move(state);
  return result;
}

BeamformerWeights direct_weights(const IncModel& inc, const CVector& a_hat) {
  if (a_hat.size() != inc.m || a_hat.norm() == 0.0)
    throw std::invalid_argument("direct_weights: invalid steering vector");
  const CMatrix r = inc.materialize();
  Eigen::LLT<CMatrix> llt(r);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("direct_weights: singular materialized model");
  const CVector y = llt.solve(a_hat);
  const Complex denom = a_hat.dot(y);
  BeamformerWeights out;
  out.w = y / denom.real();
  out.normalization = BeamformerWeights::Normalization::distortionless;
  out.method = "cmr-isps-direct";
  return out;
}

BeamformerWeights smi_weights(const CovarianceMatrix& r_hat,
                              const CVector& a_bar) {
  Eigen::LLT<CMatrix> llt(loaded_covariance(r_hat));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("smi_weights: singular covariance");
  const CVector y = llt.solve(a_bar);
  BeamformerWeights out;
  out.w = y / a_bar.dot(y).real();
  out.normalization = BeamformerWeights::Normalization::distortionless;
  out.method = "smi";
  return out;
}

}  // namespace cmrisps
