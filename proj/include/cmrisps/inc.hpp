#pragma once

#include <cstdint>
#include <vector>

#include "cmrisps/spectrum.hpp"
#include "cmrisps/tracker.hpp"

// Reduced-sector INC reconstruction, the full-sector Capon baseline, and
// the SOI covariance / steering-vector estimate.

namespace cmrisps {

// Weighted sum of steering-vector outer products plus a diagonal noise
// term. Kept implicit: apply() costs O(terms * M), materialize() is for
// oracles and the direct solver only.
struct IncModel {
  std::vector<int> indices;          // grid indices of the terms
  RVector weights;                   // P(theta_j) * delta, strictly positive
  std::vector<CVector> steering;     // a(theta_j)
  double noise_load = 0.0;           // sigma_n^2 diagonal term
  int m = 0;

  int terms() const { return static_cast<int>(indices.size()); }

  // y = (sum_j w_j a_j a_j^H + noise_load I) v. When ops is non-null it is
  // incremented by the complex multiply-accumulate count.
  CVector apply(const CVector& v, std::uint64_t* ops = nullptr) const;

  CMatrix materialize() const;
};

struct SoiEstimate {
  CMatrix r_s;      // reconstructed SOI covariance
  CVector a_hat;    // estimated steering vector, ||a_hat||^2 = M
  int s_points = 0; // sample count inside the SOI sector
};

// One term per union index, weight P_ME(theta_j) * delta, plus the noise
// diagonal (the reduced-sector sum alone is singular). Empty sectors give
// the noise-only diagonal model.
IncModel build_inc(const SpectrumEstimate& spec, const SectorSet& sectors,
                   const ArrayConfig& cfg, double noise);

// Full-grid sum with no noise diagonal; realizes the single-interferer
// reconstruction identities used by the validation report.
IncModel build_inc_full_sector(const SpectrumEstimate& spec,
                               const ArrayConfig& cfg);

// Capon-spectrum sum over the whole grid minus the SOI sector.
IncModel build_capon_inc_baseline(const CovarianceMatrix& r,
                                  const AngularGrid& grid,
                                  const SoiSector& soi,
                                  const ArrayConfig& cfg);

// R_s from the spectrum over the SOI sector; a_hat = R_s * a_bar rescaled
// to ||a_hat||^2 = M, with a_bar the ideal-manifold presumed vector.
SoiEstimate estimate_soi(const SpectrumEstimate& spec, const SoiSector& soi,
                         const ArrayConfig& cfg, double presumed_doa_deg);

// SINR/SINR_opt ~= 1 - eps_res^2 * phi^2 / 12 for a small electrical
// mismatch phi.
double predicted_sinr_loss(double phi, double eps_res);

}  // namespace cmrisps
