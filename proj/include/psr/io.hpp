#pragma once

#include "psr/dataset.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace psr {

struct RankResult;

/// `object_id,probability,c1,...,cd`, one row per instance; dimensionality from header.
UncertainDatabase read_dataset_csv(std::istream& in);
void write_dataset_csv(std::ostream& out, const UncertainDatabase& db);

/// `{"dims": d, "objects": [{"id": .., "instances": [{"p": .., "pos": [..]}]}]}`
UncertainDatabase read_dataset_json(std::istream& in);
void write_dataset_json(std::ostream& out, const UncertainDatabase& db);

/// Dispatches on extension: `.json` is the JSON mirror, anything else CSV.
UncertainDatabase load_dataset(const std::filesystem::path& path);
void save_dataset(const std::filesystem::path& path, const UncertainDatabase& db);

/// `row,object_id,instance_id,distance,p_rank_1,...,p_rank_k`
void write_instance_matrix_csv(std::ostream& out, const RankResult& result);
/// `object_id,p_rank_1,...,p_rank_k`
void write_object_distribution_csv(std::ostream& out, const RankResult& result);

/// Shortest text that round-trips a double (17 significant digits).
std::string format_real(double v);

/// Parses "c1,c2,..." into a vector.
VecXd parse_query(const std::string& text);

}  // namespace psr
