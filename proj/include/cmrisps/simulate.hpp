#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cmrisps/array.hpp"

// Snapshot generation for SOI + interferers + unit white noise, with the
// standard mismatch models: look-direction jitter, array geometry errors,
// gain/phase errors, and incoherent local scattering. Noise power is fixed
// to 1, so power_db knobs are SNR/INR directly.

namespace cmrisps {

// Optional DoA trajectory across the snapshot window,
// doa(k) = doa + rate*(k-1) + accel*(k-1)^2, in degrees.
struct Motion {
  double rate_deg_per_snapshot = 0.0;
  double accel_deg_per_snapshot2 = 0.0;
};

struct SourceSpec {
  double doa_deg = 0.0;
  double power_db = 0.0;          // relative to unit noise
  double doa_jitter_deg = 0.0;    // half-width of uniform per-run jitter
  std::optional<Motion> motion;
};

enum class ArrayErrorKind { ideal, geometry, gainphase };

struct ScatteringSpec {
  int paths = 4;
  double spread_deg = 4.0;  // std of per-run path DoAs around the SOI DoA
};

struct Scenario {
  int m = 10;
  double spacing_wavelengths = 0.5;
  ArrayErrorKind array_error = ArrayErrorKind::ideal;
  SourceSpec soi;
  std::vector<SourceSpec> interferers;
  int snapshots = 50;
  std::optional<ScatteringSpec> scattering;
  std::uint64_t seed = 0;
  bool jitter_per_snapshot = false;  // default: jitter fixed per run

  void validate() const;
};

// Realized quantities the estimators never see; SINR evaluation and
// tracking tests read truth, not reconstructions.
struct GroundTruth {
  ArrayConfig array;                 // realized (possibly perturbed) array
  double soi_doa_deg = 0.0;          // realized SOI DoA
  double soi_power = 0.0;            // sigma_0^2, linear
  CVector a0;                        // realized SOI steering vector
  std::vector<RVector> interferer_doas_deg;  // per interferer, per snapshot
  std::vector<double> interferer_powers;     // sigma_l^2, linear
  std::vector<CVector> a_l;          // mid-window steering vectors
  CMatrix r_in;                      // true INC (snapshot-averaged if moving)
  CMatrix r_s;                       // true SOI covariance
};

struct SnapshotMatrix {
  CMatrix data;  // M x K
  GroundTruth truth;
  Scenario scenario;

  int sensors() const { return static_cast<int>(data.rows()); }
  int snapshots() const { return static_cast<int>(data.cols()); }
};

SnapshotMatrix simulate(const Scenario& scn);

// SOI follows the incoherent-local-scattering model: per-run path DoAs,
// per-snapshot path waveforms. Requires scn.scattering.
SnapshotMatrix simulate_scattered(const Scenario& scn);

// Geometry: offsets uniform on [-0.05, 0.05] wavelengths.
// Gain/phase: gains ~ N(1, 0.05^2), phases ~ N(0, (0.025*pi)^2).
ArrayConfig perturb_array(ArrayErrorKind kind, int m, std::uint64_t seed,
                          double spacing_wavelengths = 0.5);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double p) { return 10.0 * std::log10(p); }

}  // namespace cmrisps
