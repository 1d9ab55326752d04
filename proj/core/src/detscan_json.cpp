#include <string>
#include <string_view>

#include "json.hpp"
#include "quadcohom/detscan.hpp"

namespace quadcohom::detscan {

using nlohmann::ordered_json;

namespace {

const ordered_json& require_key(const ordered_json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw std::invalid_argument(std::string("missing key \"") + key + "\"");
  }
  return doc.at(key);
}

int require_int(const ordered_json& doc, const char* key) {
  const auto& v = require_key(doc, key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("\"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

ordered_json census_json(const CorankCensus& census) {
  ordered_json out = ordered_json::object();
  for (std::size_t c = 0; c < census.counts.size(); ++c) {
    out[std::to_string(c)] = census.counts[c];
  }
  return out;
}

ordered_json prime_json(const PrimeReport& report) {
  ordered_json out;
  out["prime"] = report.prime;
  out["census"] = census_json(report.census);
  out["det_degree"] = report.det_degree ? ordered_json(*report.det_degree) : ordered_json(nullptr);
  ordered_json nodes = ordered_json::array();
  for (const auto& node : report.nodes.nodes) {
    ordered_json entry;
    entry["point"] = node.point;
    entry["corank"] = node.corank;
    entry["hessian_rank"] = node.hessian_rank;
    nodes.push_back(std::move(entry));
  }
  out["nodes"] = std::move(nodes);
  out["verdict"] = to_string(report.verdict);
  return out;
}

}  // namespace

QuadricSystem QuadricSystem::from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("system file must be a JSON object");
  }
  const int n = require_int(doc, "n");
  const int r = require_int(doc, "r");
  const auto& mats = require_key(doc, "matrices");
  if (!mats.is_array()) {
    throw std::invalid_argument("\"matrices\" must be an array");
  }
  std::vector<std::vector<std::vector<std::int64_t>>> matrices;
  for (const auto& m : mats) {
    if (!m.is_array()) {
      throw std::invalid_argument("each matrix must be an array of rows");
    }
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& row : m) {
      if (!row.is_array()) {
        throw std::invalid_argument("each matrix row must be an array");
      }
      std::vector<std::int64_t> values;
      for (const auto& x : row) {
        if (!x.is_number_integer()) {
          throw std::invalid_argument("matrix entries must be integers");
        }
        values.push_back(x.get<std::int64_t>());
      }
      rows.push_back(std::move(values));
    }
    matrices.push_back(std::move(rows));
  }
  return QuadricSystem(n, r, std::move(matrices));
}

std::string QuadricSystem::to_json() const {
  ordered_json doc;
  doc["n"] = n_;
  doc["r"] = r_;
  ordered_json mats = ordered_json::array();
  for (const auto& m : matrices_) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < m.size(); ++j) {
        row.push_back(m(i, j));
      }
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  doc["matrices"] = std::move(mats);
  return doc.dump();
}

std::string report_to_json(const PrimeReport& report) { return prime_json(report).dump(2); }

std::string regularity_to_json(const RegularityReport& report) {
  ordered_json out;
  ordered_json reports = ordered_json::array();
  ordered_json scaling = ordered_json::array();
  for (const auto& pr : report.primes) {
    reports.push_back(prime_json(pr));
    for (const auto& s : pr.scaling) {
      ordered_json entry;
      entry["prime"] = pr.prime;
      entry["corank"] = s.corank;
      entry["count"] = s.count;
      entry["expected_dim"] = s.expected_dim;
      entry["ratio"] = quadcohom::to_string(s.ratio);
      entry["consistent"] = s.consistent;
      scaling.push_back(std::move(entry));
    }
  }
  out["reports"] = std::move(reports);
  out["scaling"] = std::move(scaling);
  out["rank_oracle"] = {{"samples", report.rank_oracle_samples}, {"agreement", report.rank_oracle_agreement}};
  out["verdict"] = to_string(report.verdict);
  return out.dump(2);
}

}  // namespace quadcohom::detscan
