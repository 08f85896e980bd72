#pragma once

#include "cmrisps/simulate.hpp"
#include "cmrisps/solver.hpp"

// Output/optimal SINR and beampattern evaluation. SINR always uses the
// simulator's realized steering vectors and true INC, never reconstructed
// quantities. dB convention: 10 log10 for powers, 20 log10 for amplitude.

namespace cmrisps {

struct SinrReport {
  double output_sinr_db = 0.0;
  double optimal_sinr_db = 0.0;
  double deviation_db = 0.0;  // optimal - output
};

// sigma_0^2 |w^H a_0|^2 / (w^H R_in w) against the rank-one optimum
// sigma_0^2 a_0^H R_in^{-1} a_0.
SinrReport output_sinr(const CVector& w, const GroundTruth& truth);

// Generalized form for rank > 1 SOI covariance:
// SINR = (w^H R_s w) / (w^H R_in w).
SinrReport scattering_sinr(const CVector& w, const CMatrix& r_s,
                           const CMatrix& r_in);

// Maximizer of the generalized Rayleigh quotient: principal generalized
// eigenvector of (R_s, R_in).
BeamformerWeights scattering_optimal(const CMatrix& r_s, const CMatrix& r_in);

struct Beampattern {
  AngularGrid grid;
  RVector gain_db;  // 20 log10 |w^H a(theta)|, 0 dB at the peak
};

Beampattern beampattern(const CVector& w, const AngularGrid& grid,
                        const ArrayConfig& cfg);

// Unnormalized single-direction gain in dB relative to the pattern peak.
double gain_at_db(const CVector& w, const ArrayConfig& cfg, double phi);

}  // namespace cmrisps
