#ifndef QSTAT_DATASET_HPP
#define QSTAT_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qstat/descriptive.hpp"

namespace qstat {

struct OpinionRecord {
  std::string subject;
  std::string condition;
  double score = 0.0;
};

// Long-format opinion scores: one row per (subject, condition) pair.
struct OpinionDataset {
  std::vector<OpinionRecord> records;

  // Groups in order of first appearance of each condition.
  std::vector<GroupSample> groups() const {
    std::vector<GroupSample> out;
    for (const auto& r : records) {
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const GroupSample& g) { return g.id == r.condition; });
      if (it == out.end()) {
        out.push_back({r.condition, {r.score}});
      } else {
        it->scores.push_back(r.score);
      }
    }
    return out;
  }

  GroupSample group(const std::string& condition) const {
    GroupSample g{condition, {}};
    for (const auto& r : records)
      if (r.condition == condition) g.scores.push_back(r.score);
    if (g.scores.empty())
      throw std::invalid_argument("unknown condition id: " + condition);
    return g;
  }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace detail

inline OpinionDataset load_csv(std::istream& in, const std::string& name = "<stream>") {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(name + ": empty file");
  if (detail::strip_cr(line) != "subject,condition,score")
    throw std::runtime_error(name + ": line 1: expected header 'subject,condition,score'");
  OpinionDataset ds;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 3)
      throw std::runtime_error(name + ": line " + std::to_string(lineno) +
                               ": expected 3 columns, got " +
                               std::to_string(fields.size()));
    OpinionRecord rec;
    rec.subject = fields[0];
    rec.condition = fields[1];
    std::size_t consumed = 0;
    try {
      rec.score = std::stod(fields[2], &consumed);
    } catch (const std::exception&) {
      throw std::runtime_error(name + ": line " + std::to_string(lineno) +
                               ": column 'score' is not numeric: '" + fields[2] + "'");
    }
    if (consumed != fields[2].size() || !std::isfinite(rec.score))
      throw std::runtime_error(name + ": line " + std::to_string(lineno) +
                               ": column 'score' is not a finite number: '" +
                               fields[2] + "'");
    if (!seen.insert({rec.subject, rec.condition}).second)
      throw std::runtime_error(name + ": line " + std::to_string(lineno) +
                               ": duplicate (subject, condition) pair (" +
                               rec.subject + ", " + rec.condition + ")");
    ds.records.push_back(std::move(rec));
  }
  if (ds.records.empty())
    throw std::runtime_error(name + ": no data rows");
  return ds;
}

inline OpinionDataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  return load_csv(in, path);
}

// Full-precision export; load_csv(write_csv(ds)) reproduces ds exactly.
inline void write_csv(const OpinionDataset& ds, std::ostream& os) {
  os << "subject,condition,score\n";
  char buf[64];
  for (const auto& r : ds.records) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.score);
    os << r.subject << ',' << r.condition << ',' << buf << '\n';
  }
}

}  // namespace qstat

#endif  // QSTAT_DATASET_HPP
