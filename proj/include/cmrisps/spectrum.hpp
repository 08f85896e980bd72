#pragma once

#include "cmrisps/array.hpp"
#include "cmrisps/simulate.hpp"

// Sample covariance, Capon and maximum-entropy spatial spectra, and the
// closed-form single-interferer covariance used as a validation oracle.

namespace cmrisps {

struct CovarianceMatrix {
  enum class Kind { sample, theoretical };
  CMatrix values;  // Hermitian PSD
  Kind kind = Kind::sample;

  int dim() const { return static_cast<int>(values.rows()); }
};

struct SpectrumEstimate {
  enum class Estimator { capon, max_entropy };
  AngularGrid grid;
  RVector values;  // linear power, strictly positive
  Estimator estimator = Estimator::capon;
  double epsilon = 0.0;  // max-entropy scalar, unused for Capon
};

// R_hat = (1/K) sum_k x(k) x(k)^H, symmetrized exactly.
CovarianceMatrix sample_covariance(const SnapshotMatrix& snap);
CovarianceMatrix sample_covariance(const CMatrix& snapshots);

// P(theta) = 1 / (a^H R^{-1} a), one factorization reused across the grid.
SpectrumEstimate capon_spectrum(const CovarianceMatrix& r,
                                const AngularGrid& grid,
                                const ArrayConfig& cfg);

// P(theta) = 1 / (eps * |a^H R^{-1} u1|^2), eps = 1/(u1^H R^{-1} u1);
// a single solve b = R^{-1} u1 then O(M) per grid angle.
SpectrumEstimate me_spectrum(const CovarianceMatrix& r,
                             const AngularGrid& grid, const ArrayConfig& cfg);

// R_tc = I + sigma_l^2 * a_l a_l^H with unit noise; theta_l is a physical
// angle in radians on an ideal M-element half-wavelength array.
CovarianceMatrix theoretical_single_interferer(int m, double sigma_l2,
                                               double theta_l);

// Woodbury closed-form inverse of the above, for oracle tests.
CMatrix woodbury_inverse_single_interferer(int m, double sigma_l2,
                                           double theta_l);

// Mean of the M-L-1 smallest eigenvalues: the sigma_n^2 estimate fed to
// the INC reconstruction.
double noise_floor(const CovarianceMatrix& r, int interferer_count);

// Diagonal-loads r.values in place if the smallest eigenvalue falls below
// 1e-8 * trace/M, so the estimators stay total for K < M. Returns the
// loaded copy.
CMatrix loaded_covariance(const CovarianceMatrix& r);

}  // namespace cmrisps
