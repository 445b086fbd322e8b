#include "psr/bench.hpp"

#include "psr/baselines.hpp"
#include "psr/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

namespace psr {

std::string to_string(EngineKind e) { return e == EngineKind::kPsr ? "psr" : "ylks"; }

EngineKind parse_engine(const std::string& s) {
  if (s == "psr") return EngineKind::kPsr;
  if (s == "ylks") return EngineKind::kYlks;
  throw std::invalid_argument("unknown engine '" + s + "'");
}

RankResult run_engine(EngineKind engine, const UncertainDatabase& db, BrowsingStream& stream,
                      const RankOptions& options) {
  stream.rewind();
  return engine == EngineKind::kPsr ? psr_rank(db, stream, options) : ylks_rank(db, stream, options);
}

namespace {

template <typename T>
std::vector<T> values_of(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return {fallback};
  const auto& v = doc.at(key);
  if (v.is_array()) {
    if (v.empty()) return {};
    return v.get<std::vector<T>>();
  }
  return {v.get<T>()};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchGrid parse_grid(const nlohmann::json& doc) {
  try {
    BenchGrid grid;
    if (doc.contains("engines")) {
      grid.engines.clear();
      for (const auto& e : doc.at("engines")) grid.engines.push_back(parse_engine(e.get<std::string>()));
    }
    grid.ylks_max_objects = doc.value("ylks_max_objects", grid.ylks_max_objects);

    const GenParams defaults;
    for (auto n : values_of<std::size_t>(doc, "objects", 1000))
      for (auto m : values_of<std::size_t>(doc, "instances", 20))
        for (auto d : values_of<int>(doc, "dims", 3))
          for (auto ud : values_of<double>(doc, "ud", 2.0))
            for (auto space : values_of<double>(doc, "space", defaults.space))
              for (auto e : values_of<double>(doc, "existential", 0.0))
                for (auto seed : values_of<std::uint64_t>(doc, "seed", 7))
                  for (auto k : values_of<Eigen::Index>(doc, "k", 100))
                    grid.points.push_back({GenParams{n, m, d, space, ud, seed, e}, k});
    return grid;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bench grid: ") + e.what());
  }
}

BenchGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bench grid: ") + e.what());
  }
  return parse_grid(doc);
}

std::vector<BenchRecord> run_suite(const BenchGrid& grid, const SuiteOptions& options) {
  std::vector<BenchRecord> records;
  const std::size_t repeats = std::max<std::size_t>(options.repeats, 1);

  for (const auto& point : grid.points) {
    const auto first_record = records.size();
    auto base = [&](EngineKind e) {
      BenchRecord r;
      r.engine = to_string(e);
      r.objects = point.data.objects;
      r.instances = point.data.instances;
      r.dims = point.data.dims;
      r.k = point.k;
      r.ud = point.data.ud;
      r.seed = point.data.seed;
      r.repeats = repeats;
      return r;
    };

    try {
      const auto db = generate(point.data);
      const QueryPoint q = VecXd::Constant(point.data.dims, point.data.space / 2.0);
      const auto t0 = std::chrono::steady_clock::now();
      auto stream = build_browsing(db, q);
      const double sort_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      const RankOptions rank_options{point.k, !options.full_pass};

      std::map<EngineKind, RankResult> kept;
      for (auto engine : grid.engines) {
        auto rec = base(engine);
        rec.sort_time_ms = sort_ms;
        if (engine == EngineKind::kYlks && point.data.objects > grid.ylks_max_objects) {
          rec.error = "skipped: above ylks_max_objects";
          records.push_back(std::move(rec));
          continue;
        }
        for (std::size_t w = 0; w < options.warmup; ++w) run_engine(engine, db, stream, rank_options);
        std::vector<double> times;
        for (std::size_t rep = 0; rep < repeats; ++rep) {
          auto result = run_engine(engine, db, stream, rank_options);
          times.push_back(result.stats.elapsed_ms);
          rec.avg_aol_size = result.stats.avg_aol_size;
          rec.peak_result_rows = result.stats.rows_emitted;
          rec.fallbacks = result.stats.fallback_count;
          if (rep + 1 == repeats) kept[engine] = std::move(result);
        }
        rec.wall_time_ms = median(std::move(times));
        rec.accepted = true;
        records.push_back(std::move(rec));
      }

      if (kept.size() == 2) {
        const double diff = max_abs_difference(kept[EngineKind::kPsr].instances, kept[EngineKind::kYlks].instances);
        const bool ok = diff <= options.gate_tolerance;
        for (auto i = first_record; i < records.size(); ++i) {
          if (!records[i].error.empty()) continue;
          records[i].gate_max_diff = diff;
          records[i].accepted = ok;
          if (!ok) records[i].error = "correctness gate failed";
        }
      }
    } catch (const std::exception& e) {
      for (auto engine : grid.engines) {
        if (std::any_of(records.begin() + static_cast<std::ptrdiff_t>(first_record), records.end(),
                        [&](const BenchRecord& r) { return r.engine == to_string(engine); }))
          continue;
        auto rec = base(engine);
        rec.error = e.what();
        records.push_back(std::move(rec));
      }
    }

    if (options.on_record)
      for (auto i = first_record; i < records.size(); ++i) options.on_record(records[i]);
  }
  return records;
}

ScalingFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_power_law: size mismatch");
  if (x.size() < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");

  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  VecXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto xi = x[static_cast<std::size_t>(i)], yi = y[static_cast<std::size_t>(i)];
    if (!(xi > 0.0 && yi > 0.0)) throw std::invalid_argument("fit_power_law: values must be positive");
    design(i, 0) = std::log(xi);
    design(i, 1) = 1.0;
    target[i] = std::log(yi);
  }
  if ((design.col(0).array() == design(0, 0)).all())
    throw std::invalid_argument("fit_power_law: axis does not vary");

  const VecXd coef = design.colPivHouseholderQr().solve(target);
  const VecXd residual = target - design * coef;
  const double ss_tot = (target.array() - target.mean()).square().sum();
  ScalingFit fit;
  fit.exponent = coef[0];
  fit.intercept = coef[1];
  fit.r_squared = ss_tot > 0.0 ? 1.0 - residual.squaredNorm() / ss_tot : 1.0;
  fit.points = x.size();
  return fit;
}

ScalingFit fit_scaling(std::span<const BenchRecord> records, ScalingAxis axis) {
  std::vector<double> x, y;
  std::string engine;
  for (const auto& r : records) {
    if (!r.accepted) continue;
    if (engine.empty()) engine = r.engine;
    if (r.engine != engine) throw std::invalid_argument("fit_scaling: records mix engines");
    x.push_back(axis == ScalingAxis::kObjects ? static_cast<double>(r.objects) : static_cast<double>(r.k));
    y.push_back(r.wall_time_ms);
  }
  return fit_power_law(x, y);
}

nlohmann::json to_json(const BenchRecord& r) {
  nlohmann::json j{{"engine", r.engine},
                   {"N", r.objects},
                   {"m", r.instances},
                   {"dims", r.dims},
                   {"k", r.k},
                   {"UD", r.ud},
                   {"seed", r.seed},
                   {"repeats", r.repeats},
                   {"wall_time_ms", r.wall_time_ms},
                   {"sort_time_ms", r.sort_time_ms},
                   {"avg_aol_size", r.avg_aol_size},
                   {"peak_result_rows", r.peak_result_rows},
                   {"fallbacks", r.fallbacks},
                   {"accepted", r.accepted}};
  j["gate_max_diff"] = r.gate_max_diff ? nlohmann::json(*r.gate_max_diff) : nlohmann::json(nullptr);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

nlohmann::json to_json(const ScalingFit& f) {
  return {{"exponent", f.exponent}, {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"points", f.points}};
}

void write_records_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << "engine,objects,instances,dims,k,ud,seed,repeats,wall_time_ms,sort_time_ms,avg_aol_size,"
         "peak_result_rows,fallbacks,gate_max_diff,accepted\n";
  for (const auto& r : records) {
    out << r.engine << ',' << r.objects << ',' << r.instances << ',' << r.dims << ',' << r.k << ','
        << format_real(r.ud) << ',' << r.seed << ',' << r.repeats << ',' << format_real(r.wall_time_ms) << ','
        << format_real(r.sort_time_ms) << ',' << format_real(r.avg_aol_size) << ',' << r.peak_result_rows << ','
        << r.fallbacks << ',' << (r.gate_max_diff ? format_real(*r.gate_max_diff) : std::string{}) << ',' << (r.accepted ? 1 : 0) << '\n';
  }
}

}  // namespace psr
