#include "psr/io.hpp"

#include "psr/rank_result.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace psr {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    auto b = field.find_first_not_of(" \t\r");
    auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double to_real(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": not a number: '" + s + "'");
  }
}

ObjectId to_id(const std::string& s, std::size_t line_no) {
  ObjectId v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw DataError("line " + std::to_string(line_no) + ": bad object_id '" + s + "'");
  return v;
}

/// Appends an instance to the object with `id`, creating it on first sight.
class ObjectCollector {
 public:
  void add(ObjectId id, double p, VecXd pos) {
    auto [it, inserted] = index_.try_emplace(id, db_objects_.size());
    if (inserted) db_objects_.push_back(UncertainObject{id, {}});
    auto& obj = db_objects_[it->second];
    obj.instances.push_back({static_cast<InstanceId>(obj.instances.size()), std::move(pos), p});
  }
  std::vector<UncertainObject> take() { return std::move(db_objects_); }

 private:
  std::unordered_map<ObjectId, std::size_t> index_;
  std::vector<UncertainObject> db_objects_;
};

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

VecXd parse_query(const std::string& text) {
  auto fields = split_fields(text);
  if (fields.empty()) throw DataError("empty query vector");
  VecXd q(static_cast<Eigen::Index>(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) q[static_cast<Eigen::Index>(i)] = to_real(fields[i], 0);
  return q;
}

UncertainDatabase read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("dataset CSV is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  auto header = split_fields(line);
  if (header.size() < 3 || header[0] != "object_id" || header[1] != "probability")
    throw DataError("dataset CSV header must be object_id,probability,c1,...,cd");

  const int dims = static_cast<int>(header.size()) - 2;
  ObjectCollector objects;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto f = split_fields(line);
    if (f.size() != header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(f.size()));
    VecXd pos(dims);
    for (int c = 0; c < dims; ++c) pos[c] = to_real(f[static_cast<std::size_t>(c) + 2], line_no);
    objects.add(to_id(f[0], line_no), to_real(f[1], line_no), std::move(pos));
  }
  return UncertainDatabase{dims, objects.take()};
}

void write_dataset_csv(std::ostream& out, const UncertainDatabase& db) {
  out << "object_id,probability";
  for (int c = 1; c <= db.dimensionality; ++c) out << ",c" << c;
  out << '\n';
  for (const auto& obj : db.objects) {
    for (const auto& inst : obj.instances) {
      out << obj.object_id << ',' << format_real(inst.probability);
      for (Eigen::Index c = 0; c < inst.position.size(); ++c) out << ',' << format_real(inst.position[c]);
      out << '\n';
    }
  }
}

UncertainDatabase read_dataset_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
    UncertainDatabase db;
    db.dimensionality = doc.at("dims").get<int>();
    ObjectCollector objects;
    for (const auto& o : doc.at("objects")) {
      const auto id = o.at("id").get<ObjectId>();
      for (const auto& inst : o.at("instances")) {
        auto coords = inst.at("pos").get<std::vector<double>>();
        objects.add(id, inst.at("p").get<double>(),
                    Eigen::Map<const VecXd>(coords.data(), static_cast<Eigen::Index>(coords.size())));
      }
    }
    db.objects = objects.take();
    return db;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("dataset JSON: ") + e.what());
  }
}

void write_dataset_json(std::ostream& out, const UncertainDatabase& db) {
  nlohmann::json doc;
  doc["dims"] = db.dimensionality;
  doc["objects"] = nlohmann::json::array();
  for (const auto& obj : db.objects) {
    nlohmann::json instances = nlohmann::json::array();
    for (const auto& inst : obj.instances) {
      std::vector<double> pos(inst.position.data(), inst.position.data() + inst.position.size());
      instances.push_back({{"p", inst.probability}, {"pos", pos}});
    }
    doc["objects"].push_back({{"id", obj.object_id}, {"instances", std::move(instances)}});
  }
  out << doc.dump() << '\n';
}

UncertainDatabase load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return path.extension() == ".json" ? read_dataset_json(in) : read_dataset_csv(in);
}

void save_dataset(const std::filesystem::path& path, const UncertainDatabase& db) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  if (path.extension() == ".json")
    write_dataset_json(out, db);
  else
    write_dataset_csv(out, db);
}

namespace {
void write_rank_header(std::ostream& out, Eigen::Index k) {
  for (Eigen::Index i = 1; i <= k; ++i) out << ",p_rank_" << i;
  out << '\n';
}
}  // namespace

void write_instance_matrix_csv(std::ostream& out, const RankResult& result) {
  const auto& m = result.instances;
  out << "row,object_id,instance_id,distance";
  write_rank_header(out, m.k());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto& key = m.keys[static_cast<std::size_t>(r)];
    out << r << ',' << key.object_id << ',' << key.instance_id << ',' << format_real(key.distance);
    for (Eigen::Index i = 0; i < m.k(); ++i) out << ',' << format_real(m.probs(r, i));
    out << '\n';
  }
}

void write_object_distribution_csv(std::ostream& out, const RankResult& result) {
  const auto& d = result.objects;
  out << "object_id";
  write_rank_header(out, d.k());
  for (std::size_t o = 0; o < d.object_ids.size(); ++o) {
    out << d.object_ids[o];
    for (Eigen::Index i = 0; i < d.k(); ++i) out << ',' << format_real(d.probs(static_cast<Eigen::Index>(o), i));
    out << '\n';
  }
}

}  // namespace psr
