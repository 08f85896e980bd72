#include "cmrisps/metrics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace cmrisps {

SinrReport output_sinr(const CVector& w, const GroundTruth& truth) {
  const CMatrix& r_in = truth.r_in;
  const double num = truth.soi_power * std::norm(w.dot(truth.a0));
  const double den = w.dot(r_in * w).real();
  const double out = num / den;

  Eigen::LLT<CMatrix> llt(r_in);
  const double opt = truth.soi_power * truth.a0.dot(llt.solve(truth.a0)).real();

  SinrReport rep;
  rep.output_sinr_db = linear_to_db(out);
  rep.optimal_sinr_db = linear_to_db(opt);
  rep.deviation_db = rep.optimal_sinr_db - rep.output_sinr_db;
  return rep;
}

SinrReport scattering_sinr(const CVector& w, const CMatrix& r_s,
                           const CMatrix& r_in) {
  const double out = w.dot(r_s * w).real() / w.dot(r_in * w).real();
  Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(r_s, r_in,
                                                        Eigen::EigenvaluesOnly);
  const double opt = ges.eigenvalues().maxCoeff();

  SinrReport rep;
  rep.output_sinr_db = linear_to_db(out);
  rep.optimal_sinr_db = linear_to_db(opt);
  rep.deviation_db = rep.optimal_sinr_db - rep.output_sinr_db;
  return rep;
}

BeamformerWeights scattering_optimal(const CMatrix& r_s, const CMatrix& r_in) {
  Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(r_s, r_in);
  const int last = static_cast<int>(ges.eigenvalues().size()) - 1;
  BeamformerWeights out;
  out.w = ges.eigenvectors().col(last);
  out.normalization = BeamformerWeights::Normalization::raw;
  out.method = "optimal";
  return out;
}

Beampattern beampattern(const CVector& w, const AngularGrid& grid,
                        const ArrayConfig& cfg) {
  Beampattern bp;
  bp.grid = grid;
  bp.gain_db.resize(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const CVector a = steering_vector(cfg, grid.angles[j]).values;
    bp.gain_db[j] = 20.0 * std::log10(std::abs(w.dot(a)) + 1e-300);
  }
  bp.gain_db.array() -= bp.gain_db.maxCoeff();
  return bp;
}

double gain_at_db(const CVector& w, const ArrayConfig& cfg, double phi) {
  // Peak search on a fine grid; 0.09 degree resolution is well inside the
  // mainlobe width for any small array.
  const AngularGrid fine = make_grid(2000);
  double peak = -1.0;
  for (int j = 0; j < fine.size(); ++j) {
    const CVector a = steering_vector(cfg, fine.angles[j]).values;
    peak = std::max(peak, std::abs(w.dot(a)));
  }
  const CVector a = steering_vector(cfg, phi).values;
  return 20.0 * std::log10((std::abs(w.dot(a)) + 1e-300) / peak);
}

}  // namespace cmrisps
