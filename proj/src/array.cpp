#include "cmrisps/array.hpp"

#include <cmath>
#include <stdexcept>

namespace cmrisps {

ArrayConfig ArrayConfig::ideal(int m, double spacing_wavelengths) {
  ArrayConfig cfg;
  cfg.m = m;
  cfg.spacing_wavelengths = spacing_wavelengths;
  cfg.position_offsets = RVector::Zero(m);
  cfg.gains = RVector::Ones(m);
  cfg.phases = RVector::Zero(m);
  cfg.validate();
  return cfg;
}

bool ArrayConfig::is_ideal() const {
  return (position_offsets.size() == 0 || position_offsets.isZero(0.0)) &&
         (gains.size() == 0 || (gains.array() == 1.0).all()) &&
         (phases.size() == 0 || phases.isZero(0.0));
}

void ArrayConfig::validate() const {
  if (m < 2) throw std::invalid_argument("ArrayConfig: m must be >= 2");
  if (spacing_wavelengths <= 0.0)
    throw std::invalid_argument("ArrayConfig: spacing must be positive");
  auto check_len = [this](const RVector& v, const char* name) {
    if (v.size() != 0 && v.size() != m)
      throw std::invalid_argument(std::string("ArrayConfig: ") + name +
                                  " length does not match m");
  };
  check_len(position_offsets, "position_offsets");
  check_len(gains, "gains");
  check_len(phases, "phases");
}

SteeringVector steering_vector(const ArrayConfig& cfg, double phi) {
  cfg.validate();
  if (std::abs(phi) > kPi / 2.0 + 1e-12)
    throw std::invalid_argument("steering_vector: |phi| must be <= pi/2");

  const double sin_phi = std::sin(phi);
  SteeringVector sv;
  sv.angle = phi;
  sv.values.resize(cfg.m);
  for (int i = 0; i < cfg.m; ++i) {
    double pos = i * cfg.spacing_wavelengths;
    if (cfg.position_offsets.size() != 0) pos += cfg.position_offsets[i];
    double gain = cfg.gains.size() != 0 ? cfg.gains[i] : 1.0;
    double phase = cfg.phases.size() != 0 ? cfg.phases[i] : 0.0;
    sv.values[i] = std::polar(gain, phase - 2.0 * kPi * pos * sin_phi);
  }
  return sv;
}

AngularGrid make_grid(int q) {
  if (q < 2) throw std::invalid_argument("make_grid: q must be >= 2");
  AngularGrid grid;
  grid.delta = kPi / q;
  grid.angles.resize(q);
  for (int j = 0; j < q; ++j) grid.angles[j] = -kPi / 2.0 + j * grid.delta;
  return grid;
}

int angle_to_index(const AngularGrid& grid, double phi) {
  if (std::abs(phi) > kPi / 2.0 + 1e-12)
    throw std::invalid_argument("angle_to_index: |phi| must be <= pi/2");
  const int q = grid.size();
  int idx = static_cast<int>(std::floor((phi + kPi / 2.0) / grid.delta + 0.5));
  if (idx < 0) idx = 0;
  if (idx > q - 1) idx = q - 1;
  return idx;
}

}  // namespace cmrisps
