#pragma once

#include <vector>

#include "cmrisps/array.hpp"
#include "cmrisps/simulate.hpp"

// Interferer DoA tracking: DFT coarse estimate (power averaged over the
// snapshot window), per-snapshot correlation refinement, degree-2
// polynomial fit, and grid-index sector construction.

namespace cmrisps {

struct SoiSector {
  double center_deg = 10.0;
  double half_width_deg = 4.0;

  bool contains_deg(double d) const {
    return std::abs(d - center_deg) <= half_width_deg;
  }
};

struct DoaTrack {
  int interferer_id = 0;
  RVector per_snapshot_doa;   // refined physical angles, radians
  Eigen::Vector3d fit_coeffs; // c0 + c1*k + c2*k^2, k = 1..K
  double theta_min = 0.0;     // fitted-curve range over [1, K], radians
  double theta_max = 0.0;
  double theta_center = 0.0;  // (min + max) / 2

  double span() const { return theta_max - theta_min; }
};

struct GridSector {
  int first = 0;  // start grid index
  int count = 0;  // width in grid samples
};

struct SectorSet {
  SoiSector soi;
  std::vector<GridSector> interferer_sectors;
  std::vector<int> union_indices;  // sorted, deduplicated, SOI bins removed
  std::vector<int> dropped;        // interferer ids swallowed by the SOI sector
};

struct TrackerOptions {
  double scan_half_width_deg = 5.0;
  double scan_step_deg = 0.25;
  double peak_threshold_db = 10.0;  // above the median DFT bin power
  int dft_size = 512;
  int max_sources = -1;  // default M-1
};

// Peaks of the snapshot-averaged zero-padded spatial DFT power, outside
// the SOI sector, strongest first. Empty when nothing clears the
// threshold.
std::vector<double> coarse_doas(const SnapshotMatrix& snap,
                                const SoiSector& soi,
                                const TrackerOptions& opt = {});

// Per-snapshot argmax of |x(k)^H a(theta)| over [coarse-c, coarse+c],
// smallest-angle tie-break, then an ordinary least-squares quadratic fit
// over the snapshot index.
DoaTrack refine_track(const SnapshotMatrix& snap, double coarse_phi,
                      const TrackerOptions& opt = {});

// Per-interferer index ranges centered on the track center, width
// max(fitted span in bins, margin-derived width), clipped to the grid,
// SOI bins removed from the union.
SectorSet build_sectors(const std::vector<DoaTrack>& tracks,
                        const AngularGrid& grid, const SoiSector& soi,
                        double margin_deg = 4.0);

}  // namespace cmrisps
