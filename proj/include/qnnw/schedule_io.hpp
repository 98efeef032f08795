// Copyright 2026 The qnnw Authors
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

#pragma once

// Schedule JSON documents:
//
//   {"n_qubits": 2, "total_time": 1.58, "symmetric": true,
//    "chunks": [{"K": [..], "eps": [..], "zeta": {"0,1": 0.0382}}, ...]}
//
// Every pair i<j must appear in each chunk's zeta map. Unknown keys are
// rejected so typos surface instead of silently defaulting.

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "qnnw/errors.hpp"
#include "qnnw/hamiltonian.hpp"

namespace qnnw {

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& key,
                                     const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

inline double as_number(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

inline std::vector<double> as_numbers(const nlohmann::json& v, std::size_t expected,
                                      const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  if (v.size() != expected) {
    throw ParseError(where + ": expected " + std::to_string(expected) + " values, got " +
                     std::to_string(v.size()));
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(as_number(v[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

inline std::string pair_key(std::size_t i, std::size_t j) {
  return std::to_string(i) + "," + std::to_string(j);
}

}  // namespace detail

inline nlohmann::json schedule_to_json(const Schedule& s) {
  nlohmann::json chunks = nlohmann::json::array();
  for (const auto& c : s.chunks) {
    nlohmann::json zeta = nlohmann::json::object();
    for (const auto& [i, j] : all_pairs(s.n_qubits)) {
      zeta[detail::pair_key(i, j)] = c.zeta[pair_index(i, j, s.n_qubits)];
    }
    chunks.push_back({{"K", c.K}, {"eps", c.eps}, {"zeta", zeta}});
  }
  return {{"n_qubits", s.n_qubits},
          {"total_time", s.total_time},
          {"symmetric", s.symmetric},
          {"chunks", chunks}};
}

inline Schedule schedule_from_json(const nlohmann::json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw ParseError("schedule: document must be a JSON object");
  reject_unknown_keys(doc, {"n_qubits", "total_time", "symmetric", "chunks"}, "schedule");

  const auto& nq = require(doc, "n_qubits", "schedule");
  if (!nq.is_number_integer() || nq.get<long long>() < 1) {
    throw ParseError("schedule.n_qubits: expected a positive integer");
  }
  Schedule s;
  s.n_qubits = nq.get<std::size_t>();
  s.total_time = as_number(require(doc, "total_time", "schedule"), "schedule.total_time");
  if (!(s.total_time > 0.0)) throw ParseError("schedule.total_time: must be positive");
  if (auto it = doc.find("symmetric"); it != doc.end()) {
    if (!it->is_boolean()) throw ParseError("schedule.symmetric: expected true or false");
    s.symmetric = it->get<bool>();
  }

  const auto& chunks = require(doc, "chunks", "schedule");
  if (!chunks.is_array() || chunks.empty()) {
    throw ParseError("schedule.chunks: expected a non-empty array");
  }
  const std::size_t n = s.n_qubits;
  for (std::size_t k = 0; k < chunks.size(); ++k) {
    const std::string where = "schedule.chunks[" + std::to_string(k) + "]";
    const auto& c = chunks[k];
    if (!c.is_object()) throw ParseError(where + ": expected an object");
    reject_unknown_keys(c, {"K", "eps", "zeta"}, where);
    ChunkParams p;
    p.K = as_numbers(require(c, "K", where), n, where + ".K");
    p.eps = as_numbers(require(c, "eps", where), n, where + ".eps");
    const auto& zeta = require(c, "zeta", where);
    if (!zeta.is_object()) throw ParseError(where + ".zeta: expected an object keyed \"i,j\"");
    p.zeta.assign(pair_count(n), 0.0);
    std::set<std::string> expected;
    for (const auto& [i, j] : all_pairs(n)) expected.insert(pair_key(i, j));
    reject_unknown_keys(zeta, expected, where + ".zeta");
    for (const auto& [i, j] : all_pairs(n)) {
      const std::string key = pair_key(i, j);
      p.zeta[pair_index(i, j, n)] =
          as_number(require(zeta, key, where + ".zeta"), where + ".zeta." + key);
    }
    if (s.symmetric && !p.is_uniform()) {
      throw ParseError(where + ": 'symmetric' is set but K, eps or zeta values differ");
    }
    s.chunks.push_back(std::move(p));
  }
  return s;
}

inline Schedule parse_schedule(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("schedule: invalid JSON: ") + e.what());
  }
  return schedule_from_json(doc);
}

inline Schedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open schedule file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_schedule(buf.str());
}

inline void save_schedule(const Schedule& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write schedule file '" + path + "'");
  out << schedule_to_json(s).dump(2) << "\n";
}

}  // namespace qnnw
