// Copyright 2026 The dickesim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dickesim/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dickesim {

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

std::string pair_name(const DetectorPair& p) {
  return p.first + "-" + p.second;
}

}  // namespace

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    if (needs_quoting(fields[i])) {
      out += '"';
      for (char c : fields[i]) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    } else {
      out += fields[i];
    }
  }
  out += "\r\n";
  return out;
}

std::string fringe_csv(const FringeCurve& curve) {
  std::vector<std::string> header = {"phi"};
  for (const auto& p : curve.pairs) header.push_back(pair_name(p));
  std::string out = csv_line(header);
  for (std::size_t t = 0; t < curve.phi.size(); ++t) {
    std::vector<std::string> row = {format_double(curve.phi[t])};
    for (const auto& column : curve.values)
      row.push_back(format_double(column[t]));
    out += csv_line(row);
  }
  return out;
}

std::string fringe_accidental_csv(const FringeCurve& curve) {
  std::string out = csv_line({"pair", "accidental"});
  for (std::size_t i = 0; i < curve.pairs.size(); ++i)
    out += csv_line(
        {pair_name(curve.pairs[i]), format_double(curve.accidental[i])});
  return out;
}

std::string fringe_visibility_csv(const FringeCurve& curve) {
  std::string out = csv_line({"pair", "visibility"});
  for (std::size_t i = 0; i < curve.pairs.size(); ++i)
    out += csv_line({pair_name(curve.pairs[i]),
                     format_double(visibility(curve, static_cast<int>(i)))});
  return out;
}

std::string overlap_csv(const OverlapCurve& curve) {
  std::string out = csv_line({"tau_s", "value"});
  for (std::size_t i = 0; i < curve.tau.size(); ++i)
    out += csv_line(
        {format_double(curve.tau[i]), format_double(curve.value[i])});
  return out;
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  std::vector<std::string> row;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    row.clear();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(format_double(m(r, c)));
    out += csv_line(row);
  }
  return out;
}

std::string counts_csv(const CountsTable& table) {
  std::string out = csv_line({"setting", "outcome", "count"});
  for (const auto& [key, count] : table.counts)
    out += csv_line({key.first, key.second, std::to_string(count)});
  return out;
}

std::string fock_json(const FockVector& v) {
  nlohmann::json j;
  j["max_photons"] = v.space().max_photons();
  j["modes"] = v.space().mode_names();
  auto terms = nlohmann::json::array();
  for (const auto& [occ, amp] : v.terms()) {
    nlohmann::json term;
    term["occ"] = occ;
    term["re"] = amp.real();
    term["im"] = amp.imag();
    terms.push_back(term);
  }
  j["terms"] = terms;
  return j.dump(2) + "\n";
}

std::string density_json(const DensityMatrix& rho) {
  nlohmann::json j;
  j["dim"] = rho.dim();
  auto entries = nlohmann::json::array();
  for (int r = 0; r < rho.dim(); ++r)
    for (int c = 0; c < rho.dim(); ++c) {
      const cd z = rho.entries()(r, c);
      entries.push_back(nlohmann::json::array({z.real(), z.imag()}));
    }
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("read failed: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ec) throw DataError("cannot create directory: " + parent.string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw DataError("write failed: " + path);
}

void write_sidecar(const std::string& artifact_path, const std::string& command,
                   std::uint64_t config_hash, std::uint64_t seed) {
  char hash_hex[17];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(config_hash));
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = hash_hex;
  j["seed"] = seed;
  j["version"] = kVersion;
  write_text_file(artifact_path + ".meta.json", j.dump(2) + "\n");
}

}  // namespace dickesim
