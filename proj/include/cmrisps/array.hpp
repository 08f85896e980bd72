#pragma once

#include <Eigen/Dense>
#include <complex>

// Array manifold: steering vectors, angular grids, index mappings.
//
// Physical angles phi in [-pi/2, pi/2) radians are the public unit
// everywhere. The electrical angle theta = 2*pi*(d/lambda)*sin(phi)
// (= pi*sin(phi) for half-wavelength spacing) appears only inside
// steering-vector evaluation.

namespace cmrisps {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// Sensor count, spacing, and per-element calibration state of a ULA.
// All-default members describe the ideal manifold.
struct ArrayConfig {
  int m = 10;
  double spacing_wavelengths = 0.5;
  RVector position_offsets;  // wavelengths, zero when ideal
  RVector gains;             // amplitude factors, one when ideal
  RVector phases;            // radians, zero when ideal

  static ArrayConfig ideal(int m, double spacing_wavelengths = 0.5);
  bool is_ideal() const;
  void validate() const;  // throws std::invalid_argument
};

// Uniform grid over physical [-pi/2, pi/2), spacing delta = pi/q.
struct AngularGrid {
  RVector angles;  // radians, strictly increasing
  double delta = 0.0;

  int size() const { return static_cast<int>(angles.size()); }
  double angle_deg(int j) const { return rad2deg(angles[j]); }
};

struct SteeringVector {
  CVector values;
  double angle = 0.0;  // physical, radians
};

// Element m: gain_m * exp(j*phase_m) * exp(-j*2*pi*(p_m/lambda)*sin(phi)),
// p_m = (m-1)*d + offset_m. Ideal config gives [1, e^{-j theta}, ...].
SteeringVector steering_vector(const ArrayConfig& cfg, double phi);

AngularGrid make_grid(int q);

// Nearest grid point, round half up. Throws on |phi| > pi/2.
int angle_to_index(const AngularGrid& grid, double phi);

}  // namespace cmrisps
