#pragma once

#include "psr/datagen.hpp"
#include "psr/engine.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psr {

enum class EngineKind { kPsr, kYlks };

std::string to_string(EngineKind e);
EngineKind parse_engine(const std::string& s);

/// Runs the selected engine over `stream` (rewinding it first).
RankResult run_engine(EngineKind engine, const UncertainDatabase& db, BrowsingStream& stream,
                      const RankOptions& options);

struct GridPoint {
  GenParams data;
  Eigen::Index k = 100;
};

struct BenchGrid {
  std::vector<GridPoint> points;
  std::vector<EngineKind> engines{EngineKind::kPsr, EngineKind::kYlks};
  /// The quadratic baseline is skipped above this many objects.
  std::size_t ylks_max_objects = 4000;
};

/// Grid JSON: every field may be a scalar or a list; the grid is their
/// cartesian product. Fields: objects, instances, dims, ud, space, k, seed,
/// existential, plus scalars engines (list of names) and ylks_max_objects.
BenchGrid parse_grid(const nlohmann::json& doc);
BenchGrid load_grid(const std::filesystem::path& path);

struct BenchRecord {
  std::string engine;
  std::size_t objects = 0;
  std::size_t instances = 0;
  int dims = 0;
  Eigen::Index k = 0;
  double ud = 0.0;
  std::uint64_t seed = 0;
  std::size_t repeats = 0;
  /// Median over repeats of the ranking pass alone.
  double wall_time_ms = 0.0;
  /// Building the browsing stream (sorting), measured once per grid point.
  double sort_time_ms = 0.0;
  double avg_aol_size = 0.0;
  std::size_t peak_result_rows = 0;
  /// Steps the incremental engine recomputed from scratch.
  std::size_t fallbacks = 0;
  /// Max difference against the other engine at the same point, when both ran.
  std::optional<double> gate_max_diff;
  bool accepted = false;
  std::string error;
};

struct SuiteOptions {
  std::size_t repeats = 3;
  /// Untimed passes per engine and point before the timed repeats, so the
  /// first point of a grid does not pay for cold caches.
  std::size_t warmup = 1;
  /// Rank every instance instead of stopping at the first zero vector.
  bool full_pass = true;
  double gate_tolerance = 1e-6;
  /// Called after each record, e.g. for streaming output.
  std::function<void(const BenchRecord&)> on_record;
};

/// Per point: generate data once, sort once, time each engine over the same
/// stream. Timings are accepted only if the engines agree within the gate.
std::vector<BenchRecord> run_suite(const BenchGrid& grid, const SuiteOptions& options = {});

enum class ScalingAxis { kObjects, kDepth };

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Least squares of log(y) on log(x). Throws std::invalid_argument below 3 points.
ScalingFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Fits wall time against one axis over records of a single engine.
ScalingFit fit_scaling(std::span<const BenchRecord> records, ScalingAxis axis);

nlohmann::json to_json(const BenchRecord& r);
nlohmann::json to_json(const ScalingFit& f);

/// `engine,objects,instances,dims,k,ud,seed,repeats,wall_time_ms,sort_time_ms,avg_aol_size,peak_result_rows,fallbacks,gate_max_diff,accepted`
void write_records_csv(std::ostream& out, std::span<const BenchRecord> records);

}  // namespace psr
