#include "cmrisps/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmrisps {
namespace {

double wrap_pi(double x) {
  while (x > kPi) x -= 2.0 * kPi;
  while (x <= -kPi) x += 2.0 * kPi;
  return x;
}

}  // namespace

std::vector<double> coarse_doas(const SnapshotMatrix& snap,
                                const SoiSector& soi,
                                const TrackerOptions& opt) {
  const int m = snap.sensors();
  const int n = opt.dft_size;
  const int kk = snap.snapshots();
  const double spacing = snap.scenario.spacing_wavelengths;

  // Zero-padded spatial DFT, power averaged incoherently over snapshots.
  // A single snapshot is not enough: a waveform sample in a deep fade can
  // hide a strong interferer from the detector entirely.
  RVector power = RVector::Zero(n);
  for (int b = 0; b < n; ++b) {
    CVector twiddle(m);
    for (int i = 0; i < m; ++i)
      twiddle[i] = std::polar(1.0, -2.0 * kPi * i * b / n);
    for (int k = 0; k < kk; ++k)
      power[b] += std::norm((snap.data.col(k).transpose() * twiddle)(0));
    power[b] /= kk;
  }

  RVector sorted = power;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[n / 2];
  const double threshold = median * std::pow(10.0, opt.peak_threshold_db / 10.0);

  struct Peak {
    double electrical;
    double phi;
    double power;
  };
  std::vector<Peak> candidates;
  for (int b = 0; b < n; ++b) {
    const double prev = power[(b + n - 1) % n];
    const double next = power[(b + 1) % n];
    if (!(power[b] > prev && power[b] >= next)) continue;
    if (power[b] < threshold) continue;
    const double electrical = wrap_pi(-2.0 * kPi * b / n);
    const double s = electrical / (2.0 * kPi * spacing);
    if (std::abs(s) > 1.0) continue;
    const double phi = std::asin(s);
    if (soi.contains_deg(rad2deg(phi))) continue;
    candidates.push_back({electrical, phi, power[b]});
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Peak& a, const Peak& b) { return a.power > b.power; });

  // Suppress sidelobes: keep the strongest peak in each two-beamwidth
  // neighborhood (circular electrical distance).
  const double min_sep = 2.0 * (2.0 * kPi / m);
  const int max_sources = opt.max_sources > 0 ? opt.max_sources : m - 1;
  std::vector<double> out;
  std::vector<double> accepted_electrical;
  for (const Peak& c : candidates) {
    bool near = false;
    for (double e : accepted_electrical)
      if (std::abs(wrap_pi(c.electrical - e)) < min_sep) near = true;
    if (near) continue;
    accepted_electrical.push_back(c.electrical);
    out.push_back(c.phi);
    if (static_cast<int>(out.size()) >= max_sources) break;
  }
  return out;
}

DoaTrack refine_track(const SnapshotMatrix& snap, double coarse_phi,
                      const TrackerOptions& opt) {
  if (opt.scan_half_width_deg <= 0.0)
    throw std::invalid_argument("refine_track: scan half-width must be > 0");
  const int kk = snap.snapshots();
  const double c = deg2rad(opt.scan_half_width_deg);
  const double step = deg2rad(opt.scan_step_deg);

  double lo = std::max(coarse_phi - c, -kPi / 2.0);
  double hi = std::min(coarse_phi + c, kPi / 2.0);
  const int n_scan = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;

  std::vector<double> scan_angles(n_scan);
  std::vector<CVector> scan_sv(n_scan);
  for (int i = 0; i < n_scan; ++i) {
    scan_angles[i] = std::min(lo + i * step, hi);
    scan_sv[i] =
        steering_vector(ArrayConfig::ideal(snap.sensors(),
                                           snap.scenario.spacing_wavelengths),
                        scan_angles[i])
            .values;
  }

  DoaTrack track;
  track.per_snapshot_doa.resize(kk);
  for (int k = 0; k < kk; ++k) {
    double best = -1.0;
    double best_angle = scan_angles[0];
    for (int i = 0; i < n_scan; ++i) {
      const double mag = std::abs(snap.data.col(k).dot(scan_sv[i]));
      if (mag > best) {  // strict: ties resolve to the smallest angle
        best = mag;
        best_angle = scan_angles[i];
      }
    }
    track.per_snapshot_doa[k] = best_angle;
  }

  // OLS fit theta(k) = c0 + c1*k + c2*k^2 over k = 1..K, degree capped by
  // the number of samples.
  const int degree = std::min(2, kk - 1);
  Eigen::MatrixXd v(kk, degree + 1);
  for (int k = 0; k < kk; ++k)
    for (int d = 0; d <= degree; ++d) v(k, d) = std::pow(double(k + 1), d);
  Eigen::VectorXd coeffs =
      v.colPivHouseholderQr().solve(track.per_snapshot_doa);
  track.fit_coeffs.setZero();
  track.fit_coeffs.head(degree + 1) = coeffs;

  auto poly = [&](double k) {
    return track.fit_coeffs[0] + track.fit_coeffs[1] * k +
           track.fit_coeffs[2] * k * k;
  };
  double fmin = std::min(poly(1.0), poly(double(kk)));
  double fmax = std::max(poly(1.0), poly(double(kk)));
  if (track.fit_coeffs[2] != 0.0) {
    const double vertex = -track.fit_coeffs[1] / (2.0 * track.fit_coeffs[2]);
    if (vertex > 1.0 && vertex < double(kk)) {
      fmin = std::min(fmin, poly(vertex));
      fmax = std::max(fmax, poly(vertex));
    }
  }
  track.theta_min = fmin;
  track.theta_max = fmax;
  track.theta_center = 0.5 * (fmin + fmax);
  return track;
}

SectorSet build_sectors(const std::vector<DoaTrack>& tracks,
                        const AngularGrid& grid, const SoiSector& soi,
                        double margin_deg) {
  SectorSet set;
  set.soi = soi;
  const int q = grid.size();
  const int margin_bins =
      static_cast<int>(std::floor(deg2rad(margin_deg) / grid.delta));

  std::vector<int> union_raw;
  for (const DoaTrack& t : tracks) {
    const int center = angle_to_index(grid, t.theta_center);
    const int width_bins =
        static_cast<int>(std::floor(t.span() / grid.delta));
    const int half = std::max((width_bins + 1) / 2, margin_bins);

    GridSector sec;
    sec.first = std::max(center - half, 0);
    const int last = std::min(center + half, q - 1);
    sec.count = last - sec.first + 1;

    int kept = 0;
    for (int b = sec.first; b <= last; ++b) {
      if (soi.contains_deg(grid.angle_deg(b))) continue;
      union_raw.push_back(b);
      ++kept;
    }
    if (kept == 0) {
      set.dropped.push_back(t.interferer_id);
      continue;
    }
    set.interferer_sectors.push_back(sec);
  }

  std::sort(union_raw.begin(), union_raw.end());
  union_raw.erase(std::unique(union_raw.begin(), union_raw.end()),
                  union_raw.end());
  set.union_indices = std::move(union_raw);
  return set;
}

}  // namespace cmrisps
