#include "cmrisps/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "cmrisps/rng.hpp"

namespace cmrisps {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Complex draw_circular(std::mt19937_64& rng, std::normal_distribution<>& n) {
  const double re = n(rng);
  const double im = n(rng);
  return Complex(re * kInvSqrt2, im * kInvSqrt2);
}

double clamp_doa_deg(double d) {
  if (d < -90.0) return -90.0;
  if (d > 90.0) return 90.0;
  return d;
}

ArrayConfig realize_array(const Scenario& scn) {
  if (scn.array_error == ArrayErrorKind::ideal)
    return ArrayConfig::ideal(scn.m, scn.spacing_wavelengths);
  return perturb_array(scn.array_error, scn.m,
                       derive_seed(scn.seed, Stream::perturbations),
                       scn.spacing_wavelengths);
}

// Realized DoA per snapshot for one source: per-run (or per-snapshot)
// jitter plus the optional motion law.
RVector realize_doas(const SourceSpec& src, int k_count, bool per_snapshot,
                     std::mt19937_64& jitter_rng) {
  std::uniform_real_distribution<> u(-src.doa_jitter_deg, src.doa_jitter_deg);
  RVector doas(k_count);
  double run_jitter = 0.0;
  if (src.doa_jitter_deg > 0.0 && !per_snapshot) run_jitter = u(jitter_rng);
  for (int k = 0; k < k_count; ++k) {
    double j = run_jitter;
    if (src.doa_jitter_deg > 0.0 && per_snapshot) j = u(jitter_rng);
    double d = src.doa_deg + j;
    if (src.motion) {
      d += src.motion->rate_deg_per_snapshot * k +
           src.motion->accel_deg_per_snapshot2 * double(k) * double(k);
    }
    doas[k] = clamp_doa_deg(d);
  }
  return doas;
}

}  // namespace

void Scenario::validate() const {
  if (m < 2) throw std::invalid_argument("Scenario: m must be >= 2");
  if (snapshots < 1)
    throw std::invalid_argument("Scenario: snapshots must be >= 1");
  if (std::abs(soi.doa_deg) > 90.0)
    throw std::invalid_argument("Scenario: |soi.doa_deg| must be <= 90");
  for (const auto& it : interferers)
    if (std::abs(it.doa_deg) > 90.0)
      throw std::invalid_argument("Scenario: interferer DoA out of range");
  if (scattering && scattering->paths < 1)
    throw std::invalid_argument("Scenario: scattering.paths must be >= 1");
}

ArrayConfig perturb_array(ArrayErrorKind kind, int m, std::uint64_t seed,
                          double spacing_wavelengths) {
  ArrayConfig cfg = ArrayConfig::ideal(m, spacing_wavelengths);
  std::mt19937_64 rng(seed);
  if (kind == ArrayErrorKind::geometry) {
    std::uniform_real_distribution<> u(-0.05, 0.05);
    for (int i = 0; i < m; ++i) cfg.position_offsets[i] = u(rng);
  } else if (kind == ArrayErrorKind::gainphase) {
    std::normal_distribution<> g(1.0, 0.05);
    std::normal_distribution<> p(0.0, 0.025 * kPi);
    for (int i = 0; i < m; ++i) cfg.gains[i] = g(rng);
    for (int i = 0; i < m; ++i) cfg.phases[i] = p(rng);
  }
  return cfg;
}

SnapshotMatrix simulate(const Scenario& scn) {
  scn.validate();
  const int m = scn.m;
  const int kk = scn.snapshots;
  const int nl = static_cast<int>(scn.interferers.size());

  SnapshotMatrix snap;
  snap.scenario = scn;
  GroundTruth& truth = snap.truth;
  truth.array = realize_array(scn);

  auto jitter_rng = make_engine(scn.seed, Stream::jitter);
  const RVector soi_doas =
      realize_doas(scn.soi, kk, scn.jitter_per_snapshot, jitter_rng);
  std::vector<RVector> int_doas(nl);
  for (int l = 0; l < nl; ++l)
    int_doas[l] =
        realize_doas(scn.interferers[l], kk, scn.jitter_per_snapshot, jitter_rng);

  truth.soi_doa_deg = soi_doas[0];
  truth.soi_power = db_to_linear(scn.soi.power_db);
  truth.a0 = steering_vector(truth.array, deg2rad(truth.soi_doa_deg)).values;
  truth.interferer_doas_deg = int_doas;
  truth.interferer_powers.resize(nl);
  truth.a_l.resize(nl);

  // Per-snapshot steering vectors; constant columns for static sources.
  std::vector<CMatrix> a_int(nl);
  for (int l = 0; l < nl; ++l) {
    truth.interferer_powers[l] = db_to_linear(scn.interferers[l].power_db);
    a_int[l].resize(m, kk);
    for (int k = 0; k < kk; ++k)
      a_int[l].col(k) =
          steering_vector(truth.array, deg2rad(int_doas[l][k])).values;
    truth.a_l[l] = a_int[l].col(kk / 2);
  }

  truth.r_in = CMatrix::Identity(m, m);
  for (int l = 0; l < nl; ++l) {
    CMatrix acc = CMatrix::Zero(m, m);
    for (int k = 0; k < kk; ++k)
      acc.noalias() += a_int[l].col(k) * a_int[l].col(k).adjoint();
    truth.r_in += (truth.interferer_powers[l] / kk) * acc;
  }
  truth.r_s = truth.soi_power * truth.a0 * truth.a0.adjoint();

  auto wf_rng = make_engine(scn.seed, Stream::waveforms);
  auto noise_rng = make_engine(scn.seed, Stream::noise);
  std::normal_distribution<> stdn(0.0, 1.0);

  const double soi_amp = std::sqrt(truth.soi_power);
  snap.data.resize(m, kk);
  for (int k = 0; k < kk; ++k) {
    CVector x =
        soi_amp * draw_circular(wf_rng, stdn) *
        steering_vector(truth.array, deg2rad(soi_doas[k])).values;
    for (int l = 0; l < nl; ++l) {
      const double amp = std::sqrt(truth.interferer_powers[l]);
      x.noalias() += amp * draw_circular(wf_rng, stdn) * a_int[l].col(k);
    }
    for (int i = 0; i < m; ++i) x[i] += draw_circular(noise_rng, stdn);
    snap.data.col(k) = x;
  }
  return snap;
}

SnapshotMatrix simulate_scattered(const Scenario& scn) {
  scn.validate();
  if (!scn.scattering)
    throw std::invalid_argument("simulate_scattered: scattering spec missing");
  const ScatteringSpec& sc = *scn.scattering;
  const int m = scn.m;
  const int kk = scn.snapshots;
  const int nl = static_cast<int>(scn.interferers.size());

  // Interference and noise as in the rank-one model; the SOI column is
  // replaced below, so build the base with the SOI switched off.
  Scenario base = scn;
  base.soi.power_db = -300.0;
  base.scattering.reset();
  SnapshotMatrix snap = simulate(base);
  snap.scenario = scn;
  GroundTruth& truth = snap.truth;
  truth.soi_power = db_to_linear(scn.soi.power_db);

  auto jitter_rng = make_engine(scn.seed, Stream::jitter);
  // Same draw position as the direct path keeps the realized center stable.
  const RVector soi_doas = realize_doas(scn.soi, 1, false, jitter_rng);
  truth.soi_doa_deg = soi_doas[0];
  truth.a0 = steering_vector(truth.array, deg2rad(truth.soi_doa_deg)).values;

  // Path DoAs fixed per run, waveforms redrawn per snapshot.
  auto scat_rng = make_engine(scn.seed, Stream::scattering);
  std::normal_distribution<> path_doa(0.0, sc.spread_deg);
  const int paths = sc.paths + 1;  // direct path + scattered paths
  CMatrix a_paths(m, paths);
  a_paths.col(0) = truth.a0;
  for (int p = 1; p < paths; ++p) {
    double d = truth.soi_doa_deg;
    if (sc.spread_deg > 0.0) d = clamp_doa_deg(d + path_doa(scat_rng));
    a_paths.col(p) = steering_vector(truth.array, deg2rad(d)).values;
  }

  const double path_power = truth.soi_power / paths;
  truth.r_s = path_power * a_paths * a_paths.adjoint();

  std::normal_distribution<> stdn(0.0, 1.0);
  const double amp = std::sqrt(path_power);
  for (int k = 0; k < kk; ++k)
    for (int p = 0; p < paths; ++p)
      snap.data.col(k) += amp * draw_circular(scat_rng, stdn) * a_paths.col(p);
  return snap;
}

}  // namespace cmrisps
