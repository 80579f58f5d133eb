// Copyright 2026 The advsgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef ADVSGM_TESTS_TEST_UTIL_H_
#define ADVSGM_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <stdlib.h>

namespace advsgm::testing {

inline std::filesystem::path DataPath(const std::string& name) {
  return std::filesystem::path(ADVSGM_TEST_DATA_DIR) / name;
}

// One whitespace-separated record of an oracle table; `#` lines are dropped.
struct Record {
  std::string kind;
  std::vector<std::string> fields;

  double Num(std::size_t i) const { return std::stod(fields.at(i)); }
  std::vector<double> Nums() const {
    std::vector<double> out;
    for (const auto& f : fields) out.push_back(std::stod(f));
    return out;
  }
};

inline std::vector<Record> ReadRecords(const std::string& name) {
  std::ifstream in(DataPath(name));
  if (!in) throw std::runtime_error("missing test data " + name);
  std::vector<Record> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    Record r;
    if (!(tokens >> r.kind) || r.kind.front() == '#') continue;
    for (std::string f; tokens >> f;) r.fields.push_back(f);
    out.push_back(std::move(r));
  }
  return out;
}

inline double RelErr(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "advsgm-test-XXXXXX").string();
    if (mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

struct AffinityCase {
  std::vector<std::vector<double>> points;
  double preference = 0.0;
  std::vector<std::size_t> exemplars;
  std::vector<std::int64_t> labels;
};

inline std::vector<AffinityCase> ReadAffinityCases() {
  std::vector<AffinityCase> out;
  std::size_t dim = 0;
  for (const Record& r : ReadRecords("affinity_oracle.txt")) {
    if (r.kind == "instance") {
      out.emplace_back();
      dim = std::stoul(r.fields.at(1));
      out.back().preference = r.Num(2);
    } else if (r.kind == "points") {
      const auto v = r.Nums();
      for (std::size_t i = 0; i + dim <= v.size(); i += dim) {
        out.back().points.emplace_back(v.begin() + i, v.begin() + i + dim);
      }
    } else if (r.kind == "exemplars") {
      for (const auto& f : r.fields) out.back().exemplars.push_back(std::stoul(f));
    } else if (r.kind == "labels") {
      for (const auto& f : r.fields) out.back().labels.push_back(std::stoll(f));
    }
  }
  return out;
}

struct MiCase {
  double mi = 0.0;
  std::vector<std::int64_t> pred;
  std::vector<std::int64_t> truth;
};

inline std::vector<MiCase> ReadMiCases() {
  std::vector<MiCase> out;
  for (const Record& r : ReadRecords("mi_oracle.txt")) {
    if (r.kind == "mi") {
      out.emplace_back();
      out.back().mi = r.Num(0);
    } else {
      auto& dst = r.kind == "pred" ? out.back().pred : out.back().truth;
      for (const auto& f : r.fields) dst.push_back(std::stoll(f));
    }
  }
  return out;
}

// Pairwise-counting AUC: wins plus half the ties over all pairs.
inline double BruteForceAuc(const std::vector<double>& pos,
                            const std::vector<double>& neg) {
  double wins = 0.0;
  for (double p : pos) {
    for (double n : neg) wins += p > n ? 1.0 : (p == n ? 0.5 : 0.0);
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace advsgm::testing

#endif  // ADVSGM_TESTS_TEST_UTIL_H_
