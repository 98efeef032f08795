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

// OpenQASM 2.0 emitter and a reader for the subset it emits (rx, ry, rz, cx
// on a single register q).

#include <cstdio>
#include <cstdlib>
#include <regex>
#include <sstream>
#include <string>

#include "qnnw/circuit.hpp"
#include "qnnw/errors.hpp"

namespace qnnw {

inline std::string export_qasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n"
      << "include \"qelib1.inc\";\n"
      << "qreg q[" << circuit.n_qubits << "];\n"
      << "creg c[" << circuit.n_qubits << "];\n";
  for (const auto& g : circuit.ops) {
    if (g.kind == GateKind::CNOT) {
      out << "cx q[" << *g.control << "],q[" << g.target << "];\n";
    } else {
      out << to_string(g.kind) << "(" << format_real(g.angle) << ") q[" << g.target << "];\n";
    }
  }
  return out.str();
}

inline Circuit parse_qasm(const std::string& text) {
  static const std::regex header(R"(OPENQASM\s+2\.0\s*;)");
  static const std::regex include(R"(include\s+"[^"]+"\s*;)");
  static const std::regex qreg(R"(qreg\s+q\s*\[\s*(\d+)\s*\]\s*;)");
  static const std::regex creg(R"(creg\s+\w+\s*\[\s*\d+\s*\]\s*;)");
  static const std::regex rotation(R"((rx|ry|rz)\s*\(\s*([^)]+?)\s*\)\s*q\s*\[\s*(\d+)\s*\]\s*;)");
  static const std::regex cx(R"(cx\s+q\s*\[\s*(\d+)\s*\]\s*,\s*q\s*\[\s*(\d+)\s*\]\s*;)");

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::optional<Circuit> circuit;
  auto fail = [&](const std::string& what) {
    throw ParseError("qasm line " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto c = line.find("//"); c != std::string::npos) line.erase(c);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);

    std::smatch m;
    if (std::regex_match(line, header)) {
      seen_header = true;
    } else if (!seen_header) {
      fail("expected 'OPENQASM 2.0;' header");
    } else if (std::regex_match(line, include) || std::regex_match(line, creg)) {
      continue;
    } else if (std::regex_match(line, m, qreg)) {
      if (circuit) fail("only one quantum register is supported");
      circuit.emplace(std::stoul(m[1].str()));
    } else if (std::regex_match(line, m, rotation)) {
      if (!circuit) fail("gate before qreg declaration");
      const std::string angle_text = m[2].str();
      char* end = nullptr;
      const double angle = std::strtod(angle_text.c_str(), &end);
      if (end == angle_text.c_str() || *end != '\0') fail("bad angle '" + angle_text + "'");
      const std::size_t q = std::stoul(m[3].str());
      const std::string name = m[1].str();
      GateOp g = name == "rx" ? GateOp::rx(q, angle)
                              : name == "ry" ? GateOp::ry(q, angle) : GateOp::rz(q, angle);
      try {
        circuit->push(g);
      } catch (const std::exception& e) {
        fail(e.what());
      }
    } else if (std::regex_match(line, m, cx)) {
      if (!circuit) fail("gate before qreg declaration");
      try {
        circuit->push(GateOp::cnot(std::stoul(m[1].str()), std::stoul(m[2].str())));
      } catch (const std::exception& e) {
        fail(e.what());
      }
    } else {
      fail("unsupported statement '" + line + "'");
    }
  }
  if (!circuit) throw ParseError("qasm: no qreg declaration found");
  return *circuit;
}

}  // namespace qnnw
