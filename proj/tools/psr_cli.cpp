// Command-line front end: gen, rank, verify, semantics, bench.

#include "psr/baselines.hpp"
#include "psr/bench.hpp"
#include "psr/datagen.hpp"
#include "psr/engine.hpp"
#include "psr/io.hpp"
#include "psr/semantics.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kVerifyFailed = 3, kResourceGuard = 4 };

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "unreadable";
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  char out[32];
  std::snprintf(out, sizeof out, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return out;
}

void log_config(const std::string& command, nlohmann::json config) {
  config["command"] = command;
  std::cerr << "# config " << config.dump() << '\n';
}

/// Writes to `path`, or stdout for "-" / empty.
template <typename Writer>
void with_output(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw psr::DataError("cannot write " + path);
  write(out);
}

struct LoadedQuery {
  psr::UncertainDatabase db;
  psr::QueryPoint q;
};

LoadedQuery load_inputs(const std::string& data, const std::string& query) {
  LoadedQuery in{psr::load_dataset(data), psr::parse_query(query)};
  psr::require_valid(in.db);
  if (in.q.size() != in.db.dimensionality) throw psr::DimensionMismatch();
  return in;
}

psr::RankResult rank_with(psr::EngineKind engine, const LoadedQuery& in, Eigen::Index k) {
  auto stream = psr::build_browsing(in.db, in.q);
  return psr::run_engine(engine, in.db, stream, psr::RankOptions{k});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic similarity ranking over uncertain vector objects"};
  app.require_subcommand(1);

  // gen
  psr::GenParams gen;
  std::string gen_out = "-";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic uncertain database");
  gen_cmd->add_option("--objects", gen.objects, "Number of objects")->default_val(gen.objects);
  gen_cmd->add_option("--instances", gen.instances, "Instances per object")->default_val(gen.instances);
  gen_cmd->add_option("--dims", gen.dims, "Dimensionality")->default_val(gen.dims);
  gen_cmd->add_option("--ud", gen.ud, "Side length of each object's instance box")->default_val(gen.ud);
  gen_cmd->add_option("--space", gen.space, "Side length of the data space")->default_val(gen.space);
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->default_val(gen.seed);
  gen_cmd->add_option("--existential", gen.existential, "Mass each object may be absent with")
      ->default_val(gen.existential);
  gen_cmd->add_option("--out", gen_out, "Output file (.csv or .json), '-' for stdout CSV")->default_val(gen_out);

  // rank
  std::string data, query, engine_name = "psr", level_name = "instance", rank_out = "-";
  Eigen::Index k = 10;
  auto* rank_cmd = app.add_subcommand("rank", "Compute rank probabilities");
  rank_cmd->add_option("--data", data, "Dataset file")->required();
  rank_cmd->add_option("--query", query, "Query point as c1,c2,...")->required();
  rank_cmd->add_option("--k", k, "Ranking depth")->default_val(k)->check(CLI::PositiveNumber);
  rank_cmd->add_option("--engine", engine_name, "psr or ylks")->default_val(engine_name)
      ->check(CLI::IsMember({"psr", "ylks"}));
  rank_cmd->add_option("--level", level_name, "instance or object")->default_val(level_name)
      ->check(CLI::IsMember({"instance", "object"}));
  rank_cmd->add_option("--out", rank_out, "Result CSV, '-' for stdout")->default_val(rank_out);

  // verify
  std::string reference = "worlds";
  auto* verify_cmd = app.add_subcommand("verify", "Compare the incremental engine against a reference");
  verify_cmd->add_option("--data", data, "Dataset file")->required();
  verify_cmd->add_option("--query", query, "Query point as c1,c2,...")->required();
  verify_cmd->add_option("--k", k, "Ranking depth")->default_val(k)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--reference", reference, "worlds or ylks")->default_val(reference)
      ->check(CLI::IsMember({"worlds", "ylks"}));

  // semantics
  std::string method = "ukranks";
  double threshold = 0.5;
  std::string sem_level = "object";
  auto* sem_cmd = app.add_subcommand("semantics", "Derive a definite ranking from rank probabilities");
  sem_cmd->add_option("--data", data, "Dataset file")->required();
  sem_cmd->add_option("--query", query, "Query point as c1,c2,...")->required();
  sem_cmd->add_option("--k", k, "Ranking depth")->default_val(k)->check(CLI::PositiveNumber);
  sem_cmd->add_option("--method", method, "ukranks, ptk, globaltopk or expectedrank")->default_val(method)
      ->check(CLI::IsMember({"ukranks", "ptk", "globaltopk", "expectedrank"}));
  sem_cmd->add_option("--threshold", threshold, "PT-k probability threshold")->default_val(threshold)
      ->check(CLI::Range(0.0, 1.0));
  sem_cmd->add_option("--level", sem_level, "instance or object")->default_val(sem_level)
      ->check(CLI::IsMember({"instance", "object"}));

  // bench
  std::string grid_path, bench_out = "-", summary_out, csv_out;
  std::size_t repeats = 3, warmup = 1;
  bool early_stop = false;
  auto* bench_cmd = app.add_subcommand("bench", "Time the engines over a parameter grid");
  bench_cmd->add_option("--grid", grid_path, "Grid JSON file")->required();
  bench_cmd->add_option("--repeats", repeats, "Runs per point (median reported)")->default_val(repeats)
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--warmup", warmup, "Untimed runs per point before timing")->default_val(warmup);
  bench_cmd->add_option("--out", bench_out, "JSON-lines records, '-' for stdout")->default_val(bench_out);
  bench_cmd->add_option("--summary", summary_out, "Summary JSON with fitted exponents (default: stderr)");
  bench_cmd->add_option("--csv", csv_out, "Optional CSV export of the records");
  bench_cmd->add_flag("--early-stop", early_stop, "Stop each pass at the first zero vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) {
      log_config("gen", {{"objects", gen.objects}, {"instances", gen.instances}, {"dims", gen.dims},
                         {"ud", gen.ud}, {"space", gen.space}, {"seed", gen.seed},
                         {"existential", gen.existential}, {"out", gen_out}});
      const auto db = psr::generate(gen);
      if (gen_out == "-")
        psr::write_dataset_csv(std::cout, db);
      else
        psr::save_dataset(gen_out, db);
      std::cerr << "objects=" << db.objects.size() << " instances=" << db.instance_count() << '\n';
      return kOk;
    }

    if (*rank_cmd) {
      log_config("rank", {{"data", data}, {"data_digest", file_digest(data)}, {"query", query}, {"k", k},
                          {"engine", engine_name}, {"level", level_name}, {"out", rank_out}});
      const auto in = load_inputs(data, query);
      const auto result = rank_with(psr::parse_engine(engine_name), in, k);
      with_output(rank_out, [&](std::ostream& os) {
        if (level_name == "object")
          psr::write_object_distribution_csv(os, result);
        else
          psr::write_instance_matrix_csv(os, result);
      });
      const auto& s = result.stats;
      std::cerr << "n=" << s.instance_count << " rows=" << s.rows_emitted << " early_stop_row="
                << (s.early_stop_row ? std::to_string(*s.early_stop_row) : "none")
                << " implicit_zero_rows=" << s.implicit_zero_rows << " fallbacks=" << s.fallback_count
                << " wall_ms=" << psr::format_real(s.elapsed_ms) << '\n';
      return kOk;
    }

    if (*verify_cmd) {
      log_config("verify", {{"data", data}, {"data_digest", file_digest(data)}, {"query", query}, {"k", k},
                            {"reference", reference}});
      const auto in = load_inputs(data, query);
      const auto psr_result = rank_with(psr::EngineKind::kPsr, in, k);
      const auto ref = reference == "worlds" ? psr::possible_worlds_rank(in.db, in.q, k)
                                             : rank_with(psr::EngineKind::kYlks, in, k);
      const double instance_diff = psr::max_abs_difference(psr_result.instances, ref.instances);
      const double object_diff = psr::max_abs_difference(psr_result.objects, ref.objects);
      const double tolerance = reference == "worlds" ? 1e-9 : 1e-6;
      const double worst = std::max(instance_diff, object_diff);
      std::cout << "max_abs_diff=" << psr::format_real(worst) << " instance=" << psr::format_real(instance_diff)
                << " object=" << psr::format_real(object_diff) << " tolerance=" << tolerance << ' '
                << (worst <= tolerance ? "PASS" : "FAIL") << '\n';
      return worst <= tolerance ? kOk : kVerifyFailed;
    }

    if (*sem_cmd) {
      const auto m = psr::parse_semantics_method(method);
      const auto level = psr::parse_rank_level(sem_level);
      const auto in = load_inputs(data, query);
      // Expected rank needs the untruncated table.
      const Eigen::Index depth = m == psr::SemanticsMethod::kExpectedRank
                                     ? std::max<Eigen::Index>(1, static_cast<Eigen::Index>(in.db.objects.size()))
                                     : k;
      log_config("semantics", {{"data", data}, {"data_digest", file_digest(data)}, {"query", query},
                               {"k", k}, {"depth", depth}, {"method", method}, {"threshold", threshold},
                               {"level", sem_level}});
      const auto result = rank_with(psr::EngineKind::kPsr, in, depth);
      const auto table =
          level == psr::RankLevel::kObject ? psr::object_table(result.objects) : psr::instance_table(result.instances);
      psr::SemanticsResult out;
      switch (m) {
        case psr::SemanticsMethod::kUkRanks: out = psr::u_k_ranks(table, k); break;
        case psr::SemanticsMethod::kPtK: out = psr::pt_k(table, k, threshold); break;
        case psr::SemanticsMethod::kGlobalTopK: out = psr::global_top_k(table, k); break;
        case psr::SemanticsMethod::kExpectedRank: out = psr::expected_rank(table); break;
      }
      std::cout << psr::to_json(out) << '\n';
      return kOk;
    }

    if (*bench_cmd) {
      log_config("bench", {{"grid", grid_path}, {"grid_digest", file_digest(grid_path)}, {"repeats", repeats},
                           {"warmup", warmup}, {"out", bench_out}, {"summary", summary_out}, {"csv", csv_out},
                           {"early_stop", early_stop}});
      const auto grid = psr::load_grid(grid_path);
      std::ofstream file_out;
      if (bench_out != "-") {
        file_out.open(bench_out);
        if (!file_out) throw psr::DataError("cannot write " + bench_out);
      }
      std::ostream& lines = bench_out == "-" ? std::cout : file_out;

      psr::SuiteOptions options;
      options.repeats = repeats;
      options.warmup = warmup;
      options.full_pass = !early_stop;
      options.on_record = [&](const psr::BenchRecord& r) { lines << psr::to_json(r).dump() << '\n' << std::flush; };
      const auto records = psr::run_suite(grid, options);

      // Fit every group of records that differs along exactly one axis.
      nlohmann::json fits = nlohmann::json::array();
      for (auto axis : {psr::ScalingAxis::kObjects, psr::ScalingAxis::kDepth}) {
        std::map<std::string, std::vector<psr::BenchRecord>> groups;
        for (const auto& r : records) {
          if (!r.accepted) continue;
          std::ostringstream key;
          key << r.engine << '|' << r.instances << '|' << r.dims << '|' << r.ud << '|' << r.seed << '|'
              << (axis == psr::ScalingAxis::kObjects ? static_cast<long long>(r.k) : static_cast<long long>(r.objects));
          groups[key.str()].push_back(r);
        }
        for (const auto& [key, group] : groups) {
          if (group.size() < 3) continue;
          try {
            auto j = psr::to_json(psr::fit_scaling(group, axis));
            j["engine"] = group.front().engine;
            j["axis"] = axis == psr::ScalingAxis::kObjects ? "N" : "k";
            j["group"] = key;
            fits.push_back(std::move(j));
          } catch (const std::invalid_argument&) {
          }
        }
      }
      const nlohmann::json summary{{"records", records.size()}, {"fits", fits}};
      if (summary_out.empty()) {
        std::cerr << summary.dump() << '\n';
      } else {
        std::ofstream s(summary_out);
        if (!s) throw psr::DataError("cannot write " + summary_out);
        s << summary.dump(2) << '\n';
      }
      if (!csv_out.empty()) {
        std::ofstream c(csv_out);
        if (!c) throw psr::DataError("cannot write " + csv_out);
        psr::write_records_csv(c, records);
      }
      return kOk;
    }
  } catch (const psr::ResourceLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResourceGuard;
  } catch (const psr::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
