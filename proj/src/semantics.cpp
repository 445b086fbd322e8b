#include "psr/semantics.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace psr {

RankTable instance_table(const InstanceRankMatrix& m) {
  RankTable t{RankLevel::kInstance, {}, m.probs};
  t.ids.resize(static_cast<std::size_t>(m.rows()));
  std::iota(t.ids.begin(), t.ids.end(), 0);
  return t;
}

RankTable object_table(const ObjectRankDistribution& d) {
  return RankTable{RankLevel::kObject, {d.object_ids.begin(), d.object_ids.end()}, d.probs};
}

std::string to_string(SemanticsMethod m) {
  switch (m) {
    case SemanticsMethod::kUkRanks: return "ukranks";
    case SemanticsMethod::kPtK: return "ptk";
    case SemanticsMethod::kGlobalTopK: return "globaltopk";
    case SemanticsMethod::kExpectedRank: return "expectedrank";
  }
  return "?";
}

std::string to_string(RankLevel l) { return l == RankLevel::kInstance ? "instance" : "object"; }

SemanticsMethod parse_semantics_method(const std::string& s) {
  for (auto m : {SemanticsMethod::kUkRanks, SemanticsMethod::kPtK, SemanticsMethod::kGlobalTopK,
                 SemanticsMethod::kExpectedRank})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown semantics method '" + s + "'");
}

RankLevel parse_rank_level(const std::string& s) {
  if (s == "instance") return RankLevel::kInstance;
  if (s == "object") return RankLevel::kObject;
  throw std::invalid_argument("unknown level '" + s + "'");
}

namespace {

void check_depth(const RankTable& t, Eigen::Index k) {
  if (t.entries() == 0) throw std::invalid_argument("empty rank table");
  if (k < 1 || k > t.depth()) throw std::invalid_argument("k must be in [1, table depth]");
}

bool tied(double a, double b, double tol) { return a == b || std::abs(a - b) <= tol; }

/// Row order by score (descending, or ascending when `ascending`), ties by id.
/// A tolerant comparator would not be a strict weak order, so rows are sorted
/// exactly first; runs of neighbours within `tol` of each other then form tie
/// groups that are reordered by id.
std::vector<Eigen::Index> order_by(const RankTable& t, const std::vector<double>& score, bool ascending,
                                   double tol) {
  auto id = [&](Eigen::Index r) { return t.ids[static_cast<std::size_t>(r)]; };
  auto sc = [&](Eigen::Index r) { return score[static_cast<std::size_t>(r)]; };
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(t.entries()));
  std::iota(rows.begin(), rows.end(), 0);
  std::sort(rows.begin(), rows.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (sc(a) != sc(b)) return ascending ? sc(a) < sc(b) : sc(a) > sc(b);
    return id(a) < id(b);
  });
  for (auto first = rows.begin(); first != rows.end();) {
    auto last = std::next(first);
    while (last != rows.end() && tied(sc(*std::prev(last)), sc(*last), tol)) ++last;
    std::sort(first, last, [&](Eigen::Index a, Eigen::Index b) { return id(a) < id(b); });
    first = last;
  }
  return rows;
}

std::vector<double> top_k_mass(const RankTable& t, Eigen::Index k) {
  std::vector<double> mass(static_cast<std::size_t>(t.entries()));
  for (Eigen::Index r = 0; r < t.entries(); ++r) mass[static_cast<std::size_t>(r)] = t.probs.row(r).head(k).sum();
  return mass;
}

}  // namespace

SemanticsResult u_k_ranks(const RankTable& t, Eigen::Index k, double tol) {
  check_depth(t, k);
  SemanticsResult out;
  out.method = SemanticsMethod::kUkRanks;
  out.level = t.level;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double top = t.probs.col(i).maxCoeff();
    Eigen::Index best = -1;
    for (Eigen::Index r = 0; r < t.entries(); ++r)
      if (tied(t.probs(r, i), top, tol) &&
          (best < 0 || t.ids[static_cast<std::size_t>(r)] < t.ids[static_cast<std::size_t>(best)]))
        best = r;
    out.ranking.push_back(t.ids[static_cast<std::size_t>(best)]);
    out.scores.push_back(t.probs(best, i));
    out.unsupported.push_back(!(top > tol));
  }
  return out;
}

SemanticsResult pt_k(const RankTable& t, Eigen::Index k, double threshold, double tol) {
  check_depth(t, k);
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold outside [0, 1]");
  SemanticsResult out;
  out.method = SemanticsMethod::kPtK;
  out.level = t.level;
  const auto mass = top_k_mass(t, k);
  std::vector<Eigen::Index> rows;
  for (Eigen::Index r = 0; r < t.entries(); ++r)
    if (mass[static_cast<std::size_t>(r)] > threshold + tol) rows.push_back(r);
  std::sort(rows.begin(), rows.end(), [&](Eigen::Index a, Eigen::Index b) {
    return t.ids[static_cast<std::size_t>(a)] < t.ids[static_cast<std::size_t>(b)];
  });
  for (auto r : rows) {
    out.ranking.push_back(t.ids[static_cast<std::size_t>(r)]);
    out.scores.push_back(mass[static_cast<std::size_t>(r)]);
  }
  return out;
}

SemanticsResult global_top_k(const RankTable& t, Eigen::Index k, double tol) {
  check_depth(t, k);
  SemanticsResult out;
  out.method = SemanticsMethod::kGlobalTopK;
  out.level = t.level;
  const auto mass = top_k_mass(t, k);
  const auto rows = order_by(t, mass, false, tol);
  const auto take = std::min<std::size_t>(rows.size(), static_cast<std::size_t>(k));
  out.short_result = take < static_cast<std::size_t>(k);
  for (std::size_t j = 0; j < take; ++j) {
    out.ranking.push_back(t.ids[static_cast<std::size_t>(rows[j])]);
    out.scores.push_back(mass[static_cast<std::size_t>(rows[j])]);
  }
  return out;
}

SemanticsResult expected_rank(const RankTable& t, double tol) {
  if (t.entries() == 0) throw std::invalid_argument("empty rank table");
  SemanticsResult out;
  out.method = SemanticsMethod::kExpectedRank;
  out.level = t.level;
  std::vector<double> score(static_cast<std::size_t>(t.entries()));
  const ArrXd ranks = ArrXd::LinSpaced(t.depth(), 1.0, static_cast<double>(t.depth()));
  for (Eigen::Index r = 0; r < t.entries(); ++r) {
    const ArrXd row = t.probs.row(r).transpose().array();
    const double total = row.sum();
    score[static_cast<std::size_t>(r)] =
        total > tol ? (ranks * row).sum() / total : std::numeric_limits<double>::infinity();
  }
  for (auto r : order_by(t, score, true, tol)) {
    out.ranking.push_back(t.ids[static_cast<std::size_t>(r)]);
    out.scores.push_back(score[static_cast<std::size_t>(r)]);
  }
  return out;
}

std::string to_json(const SemanticsResult& r) {
  nlohmann::json doc;
  doc["method"] = to_string(r.method);
  doc["level"] = to_string(r.level);
  doc["ranking"] = r.ranking;
  auto scores = nlohmann::json::array();
  for (double s : r.scores) {
    if (std::isfinite(s))
      scores.push_back(s);
    else
      scores.push_back(nullptr);
  }
  doc["scores"] = std::move(scores);
  if (r.method == SemanticsMethod::kUkRanks) doc["unsupported"] = r.unsupported;
  if (r.method == SemanticsMethod::kGlobalTopK) doc["short"] = r.short_result;
  return doc.dump();
}

}  // namespace psr
