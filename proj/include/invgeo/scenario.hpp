#pragma once

#include <tuple>

#include "invgeo/bangert.hpp"
#include "invgeo/homotopy_maps.hpp"
#include "invgeo/optimizer.hpp"
#include "invgeo/serialization.hpp"

namespace invgeo {

/// A reproducible experiment: manifold, twist, seeding, search settings and
/// the analysis steps to run.
struct Scenario {
  std::string name;
  std::string description;
  Manifold manifold;
  Isometry isometry;
  std::vector<SeedSpec> seed_specs;
  SearchConfig search;
  double family_tol = 1e-4;
  double positive_floor = 1e-6;
  std::vector<std::string> steps;          // records, index_table, average_index,
                                           // bangert_verify, product_theorem_demo
  std::vector<int> iterate_ms = {1, 2, 3, 4, 5, 6};
  std::vector<int> bangert_ms = {2, 4, 8, 16};
  Json extra;                              // closed-form parameters for reports

  Json to_config() const;
  static Scenario from_config(const Json& j);
};

/// Outcome summary of a scenario run.
struct ScenarioReport {
  int exit_code = 0;
  int seeds_run = 0;
  int converged = 0;
  int positive_records = 0;
  std::vector<GeodesicRecord> records;     // converged, deterministically sorted
  std::vector<FindOutcome> outcomes;       // aligned with the seed list
  std::vector<OrbitFamily> families;       // over all records
  std::string report_text;
};

/// Runs every seed, dedups, executes the scenario steps and writes artifacts
/// (records.jsonl, families.csv, report.txt, step CSVs) under outdir.
/// Pass an empty outdir to skip writing.
ScenarioReport run_scenario(const Scenario& sc, const std::string& outdir);

/// Parallel multistart over the seed list; INVGEO_THREADS caps the worker
/// count. Results are slot-indexed, independent of scheduling.
std::vector<FindOutcome> run_seed_batch(const std::vector<DiscretePath>& seeds,
                                        const SearchConfig& cfg);

/// Deterministic record order: energy, then fingerprint bytes.
void sort_records(std::vector<GeodesicRecord>& records);

/// Reference cloud of the great circle orthogonal to axis.
Mat equator_cloud(const Vec& axis, int points = 512);

/// Test corpus of loop paths on the torus and the sphere for the estimate
/// verifier (mixed periods, constant and morphing families).
std::vector<LoopPath> bangert_demo_corpus();

/// Rows of the iterate index table for one record.
std::vector<std::tuple<int, int, GeodesicRecord>> index_table_rows(
    const GeodesicRecord& rec, int family, const std::vector<int>& ms, double eps_null);

std::vector<std::string> builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);

int thread_budget();

}  // namespace invgeo
