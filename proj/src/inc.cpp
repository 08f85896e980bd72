#include "cmrisps/inc.hpp"

#include <cmath>
#include <stdexcept>

namespace cmrisps {

CVector IncModel::apply(const CVector& v, std::uint64_t* ops) const {
  CVector y = noise_load * v;
  for (int t = 0; t < terms(); ++t) {
    const Complex proj = steering[t].dot(v);  // a_j^H v
    y.noalias() += (weights[t] * proj) * steering[t];
  }
  if (ops) *ops += static_cast<std::uint64_t>(terms()) * 2 * m + m;
  return y;
}

CMatrix IncModel::materialize() const {
  CMatrix r = noise_load * CMatrix::Identity(m, m);
  for (int t = 0; t < terms(); ++t)
    r.noalias() += weights[t] * steering[t] * steering[t].adjoint();
  return 0.5 * (r + r.adjoint()).eval();
}

namespace {

IncModel from_indices(const SpectrumEstimate& spec,
                      const std::vector<int>& indices, const ArrayConfig& cfg,
                      double noise) {
  IncModel inc;
  inc.m = cfg.m;
  inc.noise_load = noise;
  inc.indices = indices;
  inc.weights.resize(indices.size());
  inc.steering.reserve(indices.size());
  for (size_t t = 0; t < indices.size(); ++t) {
    const int j = indices[t];
    inc.weights[t] = spec.values[j] * spec.grid.delta;
    if (!(inc.weights[t] > 0.0))
      throw std::runtime_error("IncModel: nonpositive sector weight");
    inc.steering.push_back(steering_vector(cfg, spec.grid.angles[j]).values);
  }
  return inc;
}

}  // namespace

IncModel build_inc(const SpectrumEstimate& spec, const SectorSet& sectors,
                   const ArrayConfig& cfg, double noise) {
  if (noise < 0.0) throw std::invalid_argument("build_inc: noise < 0");
  return from_indices(spec, sectors.union_indices, cfg, noise);
}

IncModel build_inc_full_sector(const SpectrumEstimate& spec,
                               const ArrayConfig& cfg) {
  std::vector<int> all(spec.grid.size());
  for (int j = 0; j < spec.grid.size(); ++j) all[j] = j;
  return from_indices(spec, all, cfg, 0.0);
}

IncModel build_capon_inc_baseline(const CovarianceMatrix& r,
                                  const AngularGrid& grid,
                                  const SoiSector& soi,
                                  const ArrayConfig& cfg) {
  const SpectrumEstimate spec = capon_spectrum(r, grid, cfg);
  std::vector<int> indices;
  for (int j = 0; j < grid.size(); ++j)
    if (!soi.contains_deg(grid.angle_deg(j))) indices.push_back(j);
  return from_indices(spec, indices, cfg, 0.0);
}

SoiEstimate estimate_soi(const SpectrumEstimate& spec, const SoiSector& soi,
                         const ArrayConfig& cfg, double presumed_doa_deg) {
  const int m = cfg.m;
  SoiEstimate est;
  est.r_s = CMatrix::Zero(m, m);
  for (int j = 0; j < spec.grid.size(); ++j) {
    if (!soi.contains_deg(spec.grid.angle_deg(j))) continue;
    const CVector a = steering_vector(cfg, spec.grid.angles[j]).values;
    est.r_s.noalias() += (spec.values[j] * spec.grid.delta) * a * a.adjoint();
    ++est.s_points;
  }
  if (est.s_points == 0)
    throw std::invalid_argument("estimate_soi: SOI sector empty on grid");

  // The presumed vector always uses the ideal manifold: the perturbations
  // are unknown to the beamformer.
  const CVector a_bar =
      steering_vector(ArrayConfig::ideal(m, cfg.spacing_wavelengths),
                      deg2rad(presumed_doa_deg))
          .values;
  est.a_hat = est.r_s * a_bar;
  const double norm = est.a_hat.norm();
  if (!(norm > 0.0))
    throw std::runtime_error("estimate_soi: zero steering-vector estimate");
  est.a_hat *= std::sqrt(double(m)) / norm;
  return est;
}

double predicted_sinr_loss(double phi, double eps_res) {
  return 1.0 - eps_res * eps_res * phi * phi / 12.0;
}

}  // namespace cmrisps
