#include <doctest.h>

#include <cmath>

#include "cmrisps/pipeline.hpp"
#include "cmrisps/rng.hpp"

using namespace cmrisps;

TEST_CASE("end-to-end pipeline lands near the optimal SINR") {
  Scenario scn = default_scenario();
  scn.seed = derive_trial_seed(1, 0);
  const SnapshotMatrix snap = simulate(scn);
  PipelineConfig cfg;
  PipelineTrace trace;
  const BeamformerWeights w = run_pipeline(snap, cfg, &trace);

  CHECK(trace.coarse.size() == 2);
  CHECK(trace.sectors.union_indices.size() > 10);
  CHECK(trace.cg.state.converged);
  CHECK(trace.noise_floor == doctest::Approx(1.0).epsilon(0.25));

  const SinrReport rep = output_sinr(w.w, snap.truth);
  CHECK(rep.deviation_db < 2.0);
  CHECK(rep.output_sinr_db <= rep.optimal_sinr_db + 1e-9);
}

TEST_CASE("pipeline trace intermediates are mutually consistent") {
  Scenario scn = default_scenario();
  scn.seed = derive_trial_seed(1, 4);
  const SnapshotMatrix snap = simulate(scn);
  PipelineConfig cfg;
  PipelineTrace trace;
  run_pipeline(snap, cfg, &trace);
  CHECK(trace.me.grid.size() == cfg.grid_points);
  CHECK(trace.inc.terms() ==
        static_cast<int>(trace.sectors.union_indices.size()));
  CHECK(trace.inc.noise_load == trace.noise_floor);
  CHECK(trace.soi.a_hat.squaredNorm() == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(trace.tracks.size() == trace.coarse.size());
}

TEST_CASE("evaluate_method covers every method and rejects unknown names") {
  Scenario scn = default_scenario();
  scn.seed = 44;
  const SnapshotMatrix snap = simulate(scn);
  PipelineConfig cfg;
  for (const char* method :
       {"optimal", "smi", "cmr-isps", "cmr-isps-direct", "capon-baseline"}) {
    const SinrReport rep = evaluate_method(method, snap, cfg);
    CHECK(std::isfinite(rep.output_sinr_db));
    CHECK(rep.output_sinr_db <= rep.optimal_sinr_db + 1e-9);
  }
  CHECK_THROWS_AS(evaluate_method("mvdr-oracle", snap, cfg),
                  std::invalid_argument);
}

TEST_CASE("sweeps are deterministic and thread-count invariant") {
  SweepSpec spec;
  spec.scenario = default_scenario();
  spec.axis = {0.0, 10.0};
  spec.trials = 6;
  spec.methods = {"cmr-isps", "smi"};
  spec.master_seed = 9;

  spec.threads = 1;
  const SweepResult serial = run_sweep(spec);
  spec.threads = 4;
  const SweepResult parallel = run_sweep(spec);

  REQUIRE(serial.records.size() == parallel.records.size());
  for (size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].method == parallel.records[i].method);
    CHECK(serial.records[i].seed == parallel.records[i].seed);
    CHECK(serial.records[i].output_sinr_db ==
          parallel.records[i].output_sinr_db);
  }
  const SweepResult again = run_sweep(spec);
  for (size_t i = 0; i < again.records.size(); ++i)
    CHECK(again.records[i].output_sinr_db ==
          parallel.records[i].output_sinr_db);
}

TEST_CASE("snapshot-axis sweeps improve with more data") {
  SweepSpec spec;
  spec.scenario = default_scenario();
  spec.axis_name = "snapshots";
  spec.axis = {20, 300};
  spec.trials = 12;
  spec.methods = {"smi"};
  spec.master_seed = 10;
  const SweepResult res = run_sweep(spec);
  REQUIRE(res.summary.size() == 2);
  CHECK(res.summary[1].mean_db > res.summary[0].mean_db);
}

TEST_CASE("sweep input validation") {
  SweepSpec spec;
  spec.scenario = default_scenario();
  spec.axis = {};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec.axis = {0.0};
  spec.trials = 0;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec.trials = 1;
  spec.axis_name = "bogus";
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("analytical validation report is all green") {
  const ValidationReport rep = validate_analysis();
  CHECK(rep.entries.size() >= 14);
  for (const auto& e : rep.entries) {
    INFO(e.name, " measured=", e.measured, " threshold=", e.threshold);
    CHECK(e.pass);
  }
}
