#include "cmrisps/pipeline.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cmrisps/rng.hpp"

namespace cmrisps {

Scenario default_scenario() {
  Scenario scn;
  scn.m = 10;
  scn.soi = SourceSpec{10.0, 10.0, 0.0, std::nullopt};
  scn.interferers = {SourceSpec{20.0, 30.0, 0.0, std::nullopt},
                     SourceSpec{-40.0, 30.0, 0.0, std::nullopt}};
  scn.snapshots = 50;
  scn.seed = 1;
  return scn;
}

BeamformerWeights run_pipeline(const SnapshotMatrix& snap,
                               const PipelineConfig& cfg,
                               PipelineTrace* trace) {
  const int m = snap.sensors();
  const ArrayConfig array =
      ArrayConfig::ideal(m, snap.scenario.spacing_wavelengths);
  const AngularGrid grid = make_grid(cfg.grid_points);

  const CovarianceMatrix r_hat = sample_covariance(snap);
  const SpectrumEstimate me = me_spectrum(r_hat, grid, array);

  std::vector<double> coarse = coarse_doas(snap, cfg.soi_sector, cfg.tracker);
  if (cfg.interferer_count_override &&
      static_cast<int>(coarse.size()) > *cfg.interferer_count_override)
    coarse.resize(*cfg.interferer_count_override);

  std::vector<DoaTrack> tracks;
  for (size_t l = 0; l < coarse.size(); ++l) {
    DoaTrack t = refine_track(snap, coarse[l], cfg.tracker);
    t.interferer_id = static_cast<int>(l);
    tracks.push_back(std::move(t));
  }

  const SectorSet sectors =
      build_sectors(tracks, grid, cfg.soi_sector, cfg.margin_deg);
  const int source_count =
      std::min(static_cast<int>(tracks.size()), m - 2);
  const double noise = noise_floor(r_hat, source_count);

  const IncModel inc = build_inc(me, sectors, array, noise);
  const SoiEstimate soi =
      estimate_soi(me, cfg.soi_sector, array, cfg.presumed_doa_deg);
  CgResult cg = cg_solve(inc, soi.a_hat, cfg.cg_tol, cfg.cg_max_iter);

  if (trace) {
    trace->r_hat = r_hat;
    trace->me = me;
    trace->coarse = coarse;
    trace->tracks = tracks;
    trace->sectors = sectors;
    trace->noise_floor = noise;
    trace->inc = inc;
    trace->soi = soi;
    trace->cg = cg;
  }
  return cg.weights;
}

namespace {

SinrReport report_for(const CVector& w, const SnapshotMatrix& snap) {
  if (snap.scenario.scattering)
    return scattering_sinr(w, snap.truth.r_s, snap.truth.r_in);
  return output_sinr(w, snap.truth);
}

}  // namespace

SinrReport evaluate_method(const std::string& method,
                           const SnapshotMatrix& snap,
                           const PipelineConfig& cfg) {
  const int m = snap.sensors();
  const ArrayConfig array =
      ArrayConfig::ideal(m, snap.scenario.spacing_wavelengths);

  if (method == "optimal") {
    if (snap.scenario.scattering) {
      const BeamformerWeights w =
          scattering_optimal(snap.truth.r_s, snap.truth.r_in);
      return report_for(w.w, snap);
    }
    Eigen::LLT<CMatrix> llt(snap.truth.r_in);
    const CVector w = llt.solve(snap.truth.a0);
    return report_for(w, snap);
  }
  if (method == "smi") {
    const CVector a_bar =
        steering_vector(array, deg2rad(cfg.presumed_doa_deg)).values;
    return report_for(smi_weights(sample_covariance(snap), a_bar).w, snap);
  }
  if (method == "cmr-isps") {
    return report_for(run_pipeline(snap, cfg).w, snap);
  }
  if (method == "cmr-isps-direct") {
    PipelineTrace trace;
    run_pipeline(snap, cfg, &trace);
    return report_for(direct_weights(trace.inc, trace.soi.a_hat).w, snap);
  }
  if (method == "capon-baseline") {
    const AngularGrid grid = make_grid(cfg.grid_points);
    const CovarianceMatrix r_hat = sample_covariance(snap);
    const IncModel inc =
        build_capon_inc_baseline(r_hat, grid, cfg.soi_sector, array);
    const SpectrumEstimate cap = capon_spectrum(r_hat, grid, array);
    const SoiEstimate soi =
        estimate_soi(cap, cfg.soi_sector, array, cfg.presumed_doa_deg);
    return report_for(direct_weights(inc, soi.a_hat).w, snap);
  }
  throw std::invalid_argument("unknown method: " + method);
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials < 1");
  if (spec.axis.empty()) throw std::invalid_argument("run_sweep: empty axis");
  if (spec.axis_name != "snr_db" && spec.axis_name != "snapshots")
    throw std::invalid_argument("run_sweep: unknown axis " + spec.axis_name);

  const int n_axis = static_cast<int>(spec.axis.size());
  const int n_methods = static_cast<int>(spec.methods.size());
  const int n_jobs = n_axis * spec.trials;

  SweepResult result;
  result.axis_name = spec.axis_name;
  result.records.resize(static_cast<size_t>(n_jobs) * n_methods);

  auto run_job = [&](int job) {
    const int ai = job / spec.trials;
    const int trial = job % spec.trials;

    Scenario scn = spec.scenario;
    if (spec.axis_name == "snr_db")
      scn.soi.power_db = spec.axis[ai];
    else
      scn.snapshots = static_cast<int>(spec.axis[ai]);
    scn.seed = derive_trial_seed(spec.master_seed, trial);

    SnapshotMatrix snap =
        scn.scattering ? simulate_scattered(scn) : simulate(scn);

    for (int mi = 0; mi < n_methods; ++mi) {
      SweepRecord& rec =
          result.records[static_cast<size_t>(job) * n_methods + mi];
      rec.method = spec.methods[mi];
      rec.axis_value = spec.axis[ai];
      rec.trial = trial;
      rec.seed = scn.seed;
      try {
        const SinrReport rep = evaluate_method(spec.methods[mi], snap,
                                               spec.pipeline);
        rec.output_sinr_db = rep.output_sinr_db;
        rec.optimal_sinr_db = rep.optimal_sinr_db;
      } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
        rec.output_sinr_db = std::nan("");
        rec.optimal_sinr_db = std::nan("");
      }
    }
  };

  int n_threads = spec.threads > 0
                      ? spec.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, n_jobs));
  if (n_threads == 1) {
    for (int job = 0; job < n_jobs; ++job) run_job(job);
  } else {
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (int w = 0; w < n_threads; ++w)
      workers.emplace_back([&] {
        for (int job = next.fetch_add(1); job < n_jobs;
             job = next.fetch_add(1))
          run_job(job);
      });
    for (auto& w : workers) w.join();
  }

  for (int mi = 0; mi < n_methods; ++mi) {
    for (int ai = 0; ai < n_axis; ++ai) {
      double sum = 0.0, sum2 = 0.0;
      int n = 0;
      for (int trial = 0; trial < spec.trials; ++trial) {
        const SweepRecord& rec =
            result.records[(static_cast<size_t>(ai) * spec.trials + trial) *
                               n_methods +
                           mi];
        if (!rec.ok) continue;
        sum += rec.output_sinr_db;
        sum2 += rec.output_sinr_db * rec.output_sinr_db;
        ++n;
      }
      SweepSummaryRow row;
      row.method = spec.methods[mi];
      row.axis_value = spec.axis[ai];
      row.n = n;
      row.mean_db = n > 0 ? sum / n : std::nan("");
      row.std_db =
          n > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / n) / (n - 1)))
                : 0.0;
      result.summary.push_back(std::move(row));
    }
  }
  return result;
}

}  // namespace cmrisps
