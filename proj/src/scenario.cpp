#include "invgeo/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

namespace invgeo {

namespace {

constexpr double kPi = std::numbers::pi;

Json seed_spec_to_json(const SeedSpec& s) {
  Json j;
  switch (s.kind) {
    case SeedSpec::Kind::TorusClasses:
      j["kind"] = "torus_classes";
      break;
    case SeedSpec::Kind::SphereWindings:
      j["kind"] = "sphere_windings";
      break;
    case SeedSpec::Kind::ProductWindings:
      j["kind"] = "product_windings";
      break;
    case SeedSpec::Kind::Random:
      j["kind"] = "random";
      break;
  }
  j["samples"] = s.samples;
  j["class_range"] = s.class_range;
  j["winding_min"] = s.winding_min;
  j["winding_max"] = s.winding_max;
  j["count"] = s.count;
  j["jitter"] = s.jitter;
  j["rng_seed"] = s.rng_seed;
  return j;
}

SeedSpec seed_spec_from_json(const Json& j) {
  SeedSpec s;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "torus_classes")
    s.kind = SeedSpec::Kind::TorusClasses;
  else if (kind == "sphere_windings")
    s.kind = SeedSpec::Kind::SphereWindings;
  else if (kind == "product_windings")
    s.kind = SeedSpec::Kind::ProductWindings;
  else if (kind == "random")
    s.kind = SeedSpec::Kind::Random;
  else
    throw ConfigError("unknown seed kind: " + kind);
  s.samples = j.value("samples", s.samples);
  s.class_range = j.value("class_range", s.class_range);
  s.winding_min = j.value("winding_min", s.winding_min);
  s.winding_max = j.value("winding_max", s.winding_max);
  s.count = j.value("count", s.count);
  s.jitter = j.value("jitter", s.jitter);
  s.rng_seed = j.value("rng_seed", s.rng_seed);
  return s;
}

Json search_to_json(const SearchConfig& c) {
  Json j;
  j["max_iterations"] = c.max_iterations;
  j["gradient_tolerance"] = c.gradient_tolerance;
  j["energy_cap"] = c.energy_cap;
  j["backtracking_c"] = c.backtracking_c;
  j["backtracking_rho"] = c.backtracking_rho;
  j["use_newton"] = c.use_newton;
  j["newton_threshold"] = c.newton_threshold;
  j["eps_null"] = c.eps_null;
  j["compute_index_report"] = c.compute_index_report;
  j["seed"] = c.seed;
  return j;
}

SearchConfig search_from_json(const Json& j) {
  SearchConfig c;
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.gradient_tolerance = j.value("gradient_tolerance", c.gradient_tolerance);
  c.energy_cap = j.value("energy_cap", c.energy_cap);
  c.backtracking_c = j.value("backtracking_c", c.backtracking_c);
  c.backtracking_rho = j.value("backtracking_rho", c.backtracking_rho);
  c.use_newton = j.value("use_newton", c.use_newton);
  c.newton_threshold = j.value("newton_threshold", c.newton_threshold);
  c.eps_null = j.value("eps_null", c.eps_null);
  c.compute_index_report = j.value("compute_index_report", c.compute_index_report);
  c.seed = j.value("seed", c.seed);
  return c;
}

}  // namespace

Json Scenario::to_config() const {
  Json j;
  j["name"] = name;
  j["description"] = description;
  j["manifold"] = to_json(manifold);
  j["isometry"] = to_json(isometry);
  j["seeds"] = Json::array();
  for (const auto& s : seed_specs) j["seeds"].push_back(seed_spec_to_json(s));
  j["search"] = search_to_json(search);
  j["family_tol"] = family_tol;
  j["positive_floor"] = positive_floor;
  j["steps"] = steps;
  j["iterate_ms"] = iterate_ms;
  j["bangert_ms"] = bangert_ms;
  j["extra"] = extra;
  return j;
}

Scenario Scenario::from_config(const Json& j) {
  Scenario sc;
  sc.name = j.at("name").get<std::string>();
  sc.description = j.value("description", std::string());
  sc.manifold = manifold_from_json(j.at("manifold"));
  sc.isometry = isometry_from_json(j.at("isometry"), sc.manifold);
  for (const auto& s : j.value("seeds", Json::array())) sc.seed_specs.push_back(seed_spec_from_json(s));
  if (j.contains("search")) sc.search = search_from_json(j.at("search"));
  sc.family_tol = j.value("family_tol", sc.family_tol);
  sc.positive_floor = j.value("positive_floor", sc.positive_floor);
  sc.steps = j.value("steps", std::vector<std::string>{"records"});
  if (j.contains("iterate_ms")) sc.iterate_ms = j.at("iterate_ms").get<std::vector<int>>();
  if (j.contains("bangert_ms")) sc.bangert_ms = j.at("bangert_ms").get<std::vector<int>>();
  sc.extra = j.value("extra", Json::object());
  return sc;
}

int thread_budget() {
  if (const char* env = std::getenv("INVGEO_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min(n, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, 8));
}

std::vector<FindOutcome> run_seed_batch(const std::vector<DiscretePath>& seeds,
                                        const SearchConfig& cfg) {
  std::vector<FindOutcome> out(seeds.size());
  int workers = std::min<int>(thread_budget(), static_cast<int>(seeds.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < seeds.size(); ++i) out[i] = find_critical(seeds[i], cfg);
    return out;
  }
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      out[i] = find_critical(seeds[i], cfg);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

void sort_records(std::vector<GeodesicRecord>& records) {
  std::sort(records.begin(), records.end(), [](const GeodesicRecord& a, const GeodesicRecord& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    const Mat& fa = a.image_fingerprint;
    const Mat& fb = b.image_fingerprint;
    if (fa.rows() != fb.rows()) return fa.rows() < fb.rows();
    for (int i = 0; i < fa.rows(); ++i)
      for (int j = 0; j < fa.cols(); ++j) {
        if (fa(i, j) != fb(i, j)) return fa(i, j) < fb(i, j);
      }
    return false;
  });
}

Mat equator_cloud(const Vec& axis, int points) {
  Vec n = axis.normalized();
  Vec u = Vec::Zero(3);
  u[std::abs(n[0]) < 0.9 ? 0 : 1] = 1.0;
  u -= n.dot(u) * n;
  u.normalize();
  Vec w(3);
  w << n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0];
  Mat cloud(points, 3);
  for (int j = 0; j < points; ++j) {
    double phi = 2.0 * kPi * j / points;
    cloud.row(j) = (std::cos(phi) * u + std::sin(phi) * w).transpose();
  }
  return cloud;
}

std::vector<LoopPath> bangert_demo_corpus() {
  std::vector<LoopPath> corpus;
  Manifold t2 = Manifold::torus(2);
  Manifold s2 = Manifold::sphere();
  auto bump = [](double s) { return 4.0 * s * (1.0 - s); };
  const int rows = 7, cols = 48;

  // flat line, constant in s
  corpus.push_back(LoopPath::sample(t2, 1.0, rows, cols, [&](double, double t) {
    Vec p(2);
    p << t, 0.25;
    return p;
  }));
  // flat line with an interior transverse bump
  corpus.push_back(LoopPath::sample(t2, 1.0, rows, cols, [&](double s, double t) {
    Vec p(2);
    p << t, 0.2 + 0.07 * bump(s) * std::sin(2.0 * kPi * t);
    return p;
  }));
  // diagonal class with a longitudinal wiggle
  corpus.push_back(LoopPath::sample(t2, 1.0, rows, cols, [&](double s, double t) {
    Vec p(2);
    p << t + 0.05 * bump(s) * std::sin(2.0 * kPi * t), t + 0.3;
    return p;
  }));
  // period-2 loop on the torus
  corpus.push_back(LoopPath::sample(t2, 2.0, rows, cols, [&](double s, double t) {
    Vec p(2);
    p << 0.5 * t, 0.6 + 0.06 * bump(s) * std::sin(kPi * t);
    return p;
  }));
  // degenerate constant-point family
  corpus.push_back(LoopPath::sample(t2, 1.0, rows, cols, [&](double, double) {
    Vec p(2);
    p << 0.3, 0.7;
    return p;
  }));
  // equator, constant in s
  corpus.push_back(LoopPath::sample(s2, 1.0, rows, cols, [&](double, double t) {
    Vec p(3);
    p << std::cos(2.0 * kPi * t), std::sin(2.0 * kPi * t), 0.0;
    return p;
  }));
  // tilting equator
  corpus.push_back(LoopPath::sample(s2, 1.0, rows, cols, [&](double s, double t) {
    double a = 0.5 * bump(s);
    double x = std::cos(2.0 * kPi * t), y = std::sin(2.0 * kPi * t);
    Vec p(3);
    p << x, std::cos(a) * y, std::sin(a) * y;
    return p;
  }));
  // latitude sweep
  corpus.push_back(LoopPath::sample(s2, 1.0, rows, cols, [&](double s, double t) {
    double lat = 0.5 * bump(s);
    Vec p(3);
    p << std::cos(lat) * std::cos(2.0 * kPi * t), std::cos(lat) * std::sin(2.0 * kPi * t),
        std::sin(lat);
    return p;
  }));
  // period-2 equator with a tilt bump
  corpus.push_back(LoopPath::sample(s2, 2.0, rows, cols, [&](double s, double t) {
    double a = 0.3 * bump(s);
    double x = std::cos(kPi * t), y = std::sin(kPi * t);
    Vec p(3);
    p << x, std::cos(a) * y, std::sin(a) * y;
    return p;
  }));
  // small circle of varying radius around a base point
  corpus.push_back(LoopPath::sample(s2, 1.0, rows, cols, [&](double s, double t) {
    double rho = 0.3 + 0.2 * bump(s);
    Vec p(3);
    p << std::cos(rho), std::sin(rho) * std::cos(2.0 * kPi * t), std::sin(rho) * std::sin(2.0 * kPi * t);
    return p;
  }));
  return corpus;
}

std::vector<std::tuple<int, int, GeodesicRecord>> index_table_rows(const GeodesicRecord& rec,
                                                                   int family,
                                                                   const std::vector<int>& ms,
                                                                   double eps_null) {
  std::vector<std::tuple<int, int, GeodesicRecord>> rows;
  double p = rec.basic_period ? *rec.basic_period : rec.path.shift();
  for (int m : ms) {
    double k_real = m * p + 1.0;
    long k = std::lround(k_real);
    if (std::abs(k_real - k) > 1e-9 || k < 1) continue;
    GeodesicRecord it;
    it.path = iterate(rec.path, static_cast<int>(k));
    it.energy = energy(it.path);
    it.index_report = hessian_report(it.path, eps_null);
    it.gradient_norm = it.index_report->gradient_norm;
    it.winding = rec.winding;
    it.image_fingerprint = rec.image_fingerprint;
    rows.emplace_back(family, m, std::move(it));
  }
  return rows;
}

namespace {

std::string describe_family(const std::vector<GeodesicRecord>& records, const OrbitFamily& fam,
                            size_t id) {
  const GeodesicRecord* best = &records[fam.members.front()];
  for (int i : fam.members)
    if (records[i].energy < best->energy) best = &records[i];
  std::ostringstream os;
  os << "family " << id << ": members " << fam.members.size() << ", energy "
     << format_double(best->energy);
  if (best->index_report)
    os << ", index " << best->index_report->index << ", nullity " << best->index_report->nullity;
  if (best->basic_period) os << ", period " << format_double(*best->basic_period);
  if (!best->winding.empty()) {
    os << ", winding (";
    for (size_t i = 0; i < best->winding.size(); ++i) os << (i ? "," : "") << best->winding[i];
    os << ")";
  }
  return os.str();
}

// closest expected energy of the form (theta + 2 pi k)^2
std::pair<int, double> match_circle_energy(double energy, double theta, int k_range = 8) {
  int best_k = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = -k_range; k <= k_range; ++k) {
    double e = (theta + 2.0 * kPi * k) * (theta + 2.0 * kPi * k);
    if (std::abs(e - energy) < std::abs(best - energy)) {
      best = e;
      best_k = k;
    }
  }
  return {best_k, best};
}

}  // namespace

ScenarioReport run_scenario(const Scenario& sc, const std::string& outdir) {
  ScenarioReport rep;
  std::ostringstream report;
  report << "scenario: " << sc.name << "\n";
  if (!sc.description.empty()) report << sc.description << "\n";

  std::vector<DiscretePath> seeds;
  for (const auto& spec : sc.seed_specs) {
    auto batch = seed_library(sc.manifold, sc.isometry, spec);
    seeds.insert(seeds.end(), batch.begin(), batch.end());
  }
  rep.seeds_run = static_cast<int>(seeds.size());
  report << "seeds: " << seeds.size() << "\n";

  rep.outcomes = run_seed_batch(seeds, sc.search);
  for (const auto& oc : rep.outcomes)
    if (oc.record) rep.records.push_back(*oc.record);
  rep.converged = static_cast<int>(rep.records.size());
  sort_records(rep.records);
  rep.families = dedup_orbits(rep.records, sc.family_tol);
  for (const auto& r : rep.records)
    if (r.energy > sc.positive_floor) ++rep.positive_records;

  report << "converged: " << rep.converged << " / " << rep.seeds_run << "\n";
  report << "records with energy above " << format_double(sc.positive_floor) << ": "
         << rep.positive_records << "\n";
  report << "families: " << rep.families.size() << "\n";
  for (size_t f = 0; f < rep.families.size(); ++f)
    report << "  " << describe_family(rep.records, rep.families[f], f) << "\n";

  int failures = 0;
  for (const auto& oc : rep.outcomes)
    if (!oc.record) ++failures;
  if (failures > 0) {
    report << "non-converged runs: " << failures << "\n";
    for (const auto& oc : rep.outcomes)
      if (!oc.record) report << "  " << oc.diagnostic << "\n";
  }

  bool write = !outdir.empty();
  if (write) std::filesystem::create_directories(outdir);

  for (const auto& step : sc.steps) {
    if (step == "records") {
      if (write) {
        std::ostringstream jsonl;
        for (const auto& r : rep.records) jsonl << to_json(r).dump() << "\n";
        write_file(outdir + "/records.jsonl", jsonl.str());
        write_file(outdir + "/families.csv", records_csv(rep.records, rep.families));
      }
    } else if (step == "index_table") {
      std::vector<std::tuple<int, int, GeodesicRecord>> rows;
      for (size_t f = 0; f < rep.families.size(); ++f) {
        const GeodesicRecord& best = rep.records[rep.families[f].members.front()];
        if (best.energy <= sc.positive_floor && rep.families.size() > 1) continue;
        auto fam_rows = index_table_rows(best, static_cast<int>(f), sc.iterate_ms, sc.search.eps_null);
        rows.insert(rows.end(), fam_rows.begin(), fam_rows.end());
      }
      std::string csv = index_table_csv(rows);
      if (write) write_file(outdir + "/index_table.csv", csv);
      report << "index table rows: " << rows.size() << "\n";
      for (const auto& [fam, m, r] : rows)
        report << "  family " << fam << " m " << m << " energy " << format_double(r.energy)
               << " index " << r.index_report->index << " nullity " << r.index_report->nullity
               << "\n";
    } else if (step == "average_index") {
      std::ostringstream csv;
      csv << "family,m,index,slope,converged\n";
      for (size_t f = 0; f < rep.families.size(); ++f) {
        const GeodesicRecord& best = rep.records[rep.families[f].members.front()];
        if (!best.basic_period && best.energy > sc.positive_floor) continue;
        double p = best.basic_period ? *best.basic_period : 1.0;
        double k_check = sc.iterate_ms.empty() ? 1.0 : sc.iterate_ms.front() * p + 1.0;
        if (std::abs(k_check - std::lround(k_check)) > 1e-9) continue;
        AverageIndexEstimate est = average_index(best.path, p, sc.iterate_ms, sc.search.eps_null);
        for (auto& [m, ind] : est.samples)
          csv << f << "," << m << "," << ind << "," << format_double(est.slope_estimate) << ","
              << (est.converged ? 1 : 0) << "\n";
        report << "family " << f << " average-index slope " << format_double(est.slope_estimate)
               << (est.converged ? " (converged)" : " (not converged)") << "\n";
      }
      if (write) write_file(outdir + "/average_index.csv", csv.str());
    } else if (step == "bangert_verify") {
      auto corpus = bangert_demo_corpus();
      std::ostringstream csv;
      csv << "item,m,max_energy,excess,scaled_excess,endpoint_max\n";
      bool all_ok = true;
      for (size_t i = 0; i < corpus.size(); ++i) {
        EstimateReport er = verify_estimate(corpus[i], sc.bangert_ms);
        for (const auto& e : er.entries)
          csv << i << "," << e.m << "," << format_double(e.max_energy) << ","
              << format_double(e.excess) << "," << format_double(e.scaled_excess) << ","
              << format_double(er.endpoint_max) << "\n";
        bool ok = er.per_m_pass && er.bounded_no_growth && er.last_below_first;
        all_ok &= ok;
        report << "estimate item " << i << ": C_hat " << format_double(er.fitted_constant)
               << (ok ? " ok" : " VIOLATION") << "\n";
      }
      if (write) write_file(outdir + "/bangert_estimate.csv", csv.str());
      if (!all_ok) rep.exit_code = 1;
    } else if (step == "product_theorem_demo") {
      double psi = sc.extra.value("psi", 0.3);
      double phi = sc.extra.value("phi", 1.0);
      std::ostringstream csv;
      csv << "family,energy,m,k,expected,rel_err\n";
      std::set<std::pair<int, int>> classes;
      for (size_t f = 0; f < rep.families.size(); ++f) {
        const GeodesicRecord& best = rep.records[rep.families[f].members.front()];
        if (best.energy <= sc.positive_floor) continue;
        int best_m = 0, best_k = 0;
        double best_e = std::numeric_limits<double>::infinity();
        for (int mm = -4; mm <= 4; ++mm)
          for (int kk = -4; kk <= 4; ++kk) {
            double e = (psi + 2 * kPi * mm) * (psi + 2 * kPi * mm) +
                       (phi + 2 * kPi * kk) * (phi + 2 * kPi * kk);
            if (std::abs(e - best.energy) < std::abs(best_e - best.energy)) {
              best_e = e;
              best_m = mm;
              best_k = kk;
            }
          }
        double rel = std::abs(best.energy - best_e) / best_e;
        csv << f << "," << format_double(best.energy) << "," << best_m << "," << best_k << ","
            << format_double(best_e) << "," << format_double(rel) << "\n";
        if (rel < 1e-3) classes.insert({best_m, best_k});
        report << "family " << f << " energy " << format_double(best.energy) << " ~ class (m="
               << best_m << ", k=" << best_k << ") rel_err " << format_double(rel) << "\n";
      }
      report << "distinct matched classes: " << classes.size() << "\n";
      if (classes.size() < 5) rep.exit_code = 1;
      if (write) write_file(outdir + "/product_demo.csv", csv.str());
    } else if (step == "sphere_equator_report") {
      double theta = sc.extra.value("theta", 1.0);
      Vec axis(3);
      axis << 0, 0, 1;
      if (sc.extra.contains("axis")) {
        auto a = sc.extra["axis"].get<std::vector<double>>();
        for (int i = 0; i < 3; ++i) axis[i] = a[i];
      }
      Mat eq = equator_cloud(axis);
      std::ostringstream csv;
      csv << "family,energy,k,expected,rel_err,hausdorff_to_equator\n";
      bool all_ok = true;
      int positive_families = 0;
      for (size_t f = 0; f < rep.families.size(); ++f) {
        const GeodesicRecord& best = rep.records[rep.families[f].members.front()];
        if (best.energy <= sc.positive_floor) continue;
        ++positive_families;
        auto [k, expected] = match_circle_energy(best.energy, theta);
        double rel = std::abs(best.energy - expected) / expected;
        double haus = hausdorff_distance(sc.manifold, best.image_fingerprint, eq);
        csv << f << "," << format_double(best.energy) << "," << k << "," << format_double(expected)
            << "," << format_double(rel) << "," << format_double(haus) << "\n";
        report << "family " << f << " energy " << format_double(best.energy) << " ~ (theta+2pi*"
               << k << ")^2, rel_err " << format_double(rel) << ", equator distance "
               << format_double(haus) << "\n";
        if (rel >= 1e-3 || haus >= 1e-3) all_ok = false;
      }
      if (positive_families == 0 || !all_ok) rep.exit_code = 1;
      if (write) write_file(outdir + "/equator_families.csv", csv.str());
    } else {
      throw ConfigError("unknown scenario step: " + step);
    }
  }

  rep.report_text = report.str();
  if (write) write_file(outdir + "/report.txt", rep.report_text);
  return rep;
}

std::vector<std::string> builtin_scenario_names() {
  return {"torus_flat_classes", "sphere_rotation_equator", "torus_rotation_none",
          "s1xs2_theorem_demo", "average_index_equator", "bangert_verify"};
}

Scenario builtin_scenario(const std::string& name) {
  Scenario sc;
  sc.name = name;
  if (name == "torus_flat_classes") {
    sc.description = "closed geodesics of the flat square torus by lattice class";
    sc.manifold = Manifold::torus(2);
    sc.isometry = Isometry::identity(sc.manifold);
    SeedSpec s;
    s.kind = SeedSpec::Kind::TorusClasses;
    s.class_range = 2;
    s.samples = 256;
    s.jitter = 0.0;
    sc.seed_specs = {s};
    sc.search.gradient_tolerance = 1e-10;
    sc.steps = {"records", "index_table"};
    sc.iterate_ms = {1, 2, 3};
  } else if (name == "sphere_rotation_equator") {
    sc.description = "invariant geodesics of a z-axis rotation of the round sphere";
    sc.manifold = Manifold::sphere();
    Vec z(3);
    z << 0, 0, 1;
    sc.isometry = Isometry::sphere_rotation(sc.manifold, z, 1.0);
    SeedSpec s;
    s.kind = SeedSpec::Kind::SphereWindings;
    s.winding_min = -2;
    s.winding_max = 2;
    s.count = 20;
    s.samples = 256;
    s.jitter = 0.01;
    sc.seed_specs = {s};
    sc.search.compute_index_report = false;
    sc.steps = {"records", "sphere_equator_report"};
    sc.extra["theta"] = 1.0;
  } else if (name == "torus_rotation_none") {
    sc.description = "quarter rotation of the square torus: no positive-energy records";
    sc.manifold = Manifold::torus(2);
    sc.isometry = Isometry::torus_rotation90(sc.manifold);
    SeedSpec s;
    s.kind = SeedSpec::Kind::Random;
    s.count = 200;
    s.samples = 64;
    s.jitter = 0.25;
    sc.seed_specs = {s};
    sc.search.energy_cap = 100.0;
    sc.search.compute_index_report = false;
    sc.steps = {"records"};
  } else if (name == "s1xs2_theorem_demo") {
    sc.description = "product of a circle rotation and a sphere rotation";
    Manifold s1 = Manifold::circle(1.0);
    Manifold s2 = Manifold::sphere();
    sc.manifold = Manifold::product({s1, s2});
    Vec v(1);
    v << 0.3 / (2.0 * kPi);
    Vec z(3);
    z << 0, 0, 1;
    sc.isometry = Isometry::product(Isometry::torus_translation(s1, v),
                                    Isometry::sphere_rotation(s2, z, 1.0));
    SeedSpec s;
    s.kind = SeedSpec::Kind::ProductWindings;
    s.winding_min = -1;
    s.winding_max = 1;
    s.count = 2;
    s.samples = 128;
    s.jitter = 0.01;
    sc.seed_specs = {s};
    sc.search.compute_index_report = false;
    sc.steps = {"records", "product_theorem_demo"};
    sc.extra["psi"] = 0.3;
    sc.extra["phi"] = 1.0;
  } else if (name == "average_index_equator") {
    sc.description = "iterate indices of the equator and of a flat line";
    sc.manifold = Manifold::sphere();
    sc.isometry = Isometry::identity(sc.manifold);
    SeedSpec s;
    s.kind = SeedSpec::Kind::SphereWindings;
    s.winding_min = 1;
    s.winding_max = 1;
    s.count = 1;
    s.samples = 64;
    s.jitter = 0.0;
    sc.seed_specs = {s};
    sc.steps = {"records", "average_index"};
    sc.iterate_ms = {1, 2, 3, 4, 5, 6};
  } else if (name == "bangert_verify") {
    sc.description = "energy estimate of the loop-lengthening construction";
    sc.manifold = Manifold::torus(2);
    sc.isometry = Isometry::identity(sc.manifold);
    sc.steps = {"bangert_verify"};
  } else {
    throw ConfigError("unknown scenario: " + name);
  }
  return sc;
}

}  // namespace invgeo
