#pragma once

#include <string>

#include "cmrisps/inc.hpp"

// Beamformer weight computation: matrix-free PRP conjugate gradient on
// f(w) = 1/2 w^H R w + Re(w^H a_hat), plus the closed-form direct-inverse
// and SMI references.

namespace cmrisps {

struct BeamformerWeights {
  enum class Normalization { distortionless, raw };
  CVector w;
  Normalization normalization = Normalization::distortionless;
  std::string method;
};

struct CgState {
  int iterations = 0;
  bool converged = false;
  RVector grad_norms;  // one entry per evaluated gradient, including g_0
  RVector costs;       // f(w_t) per iterate, including w_0
  std::uint64_t op_count = 0;  // complex multiply-accumulates
};

struct CgResult {
  BeamformerWeights weights;
  CgState state;
};

// Exact-line-search PRP conjugate gradient with w_0 = all-ones; every
// R-product goes through IncModel::apply, so an iteration costs
// O(terms * M). Defaults: tol = 1e-6 * ||a_hat||, max_iter = 2M. Final
// weights are rescaled to the distortionless normalization.
CgResult cg_solve(const IncModel& inc, const CVector& a_hat, double tol = -1.0,
                  int max_iter = -1);

// w = R^{-1} a_hat / (a_hat^H R^{-1} a_hat) via a Hermitian solve on the
// materialized model.
BeamformerWeights direct_weights(const IncModel& inc, const CVector& a_hat);

// Sample matrix inversion: same closed form on the (loaded) sample
// covariance with the presumed steering vector.
BeamformerWeights smi_weights(const CovarianceMatrix& r_hat,
                              const CVector& a_bar);

}  // namespace cmrisps
