// Copyright 2026 The qinfo Authors
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

#ifndef QINFO_JSON_IO_HPP
#define QINFO_JSON_IO_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qinfo/info.hpp"
#include "qinfo/matrix.hpp"
#include "qinfo/protocols.hpp"
#include "qinfo/state.hpp"

namespace qinfo {

using json = nlohmann::ordered_json;

// Fixture formats:
//   matrix:     [[ [re,im], ... ], ...]        (array of rows)
//   pure state: {"num_qubits": n, "amplitudes": [[re,im], ...]}
//   ensemble:   {"probabilities": [...], "states": [matrix, ...]}
//   transcript: JSON lines, one event per line: {"step", "kind", "payload"}

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("matrix JSON must be a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (const json& row : j) {
    if (!row.is_array() || row.size() != cols) {
      throw std::invalid_argument("matrix JSON rows must have equal length");
    }
    for (const json& cell : row) {
      if (!cell.is_array() || cell.size() != 2) {
        throw std::invalid_argument("matrix JSON entries must be [re, im]");
      }
      entries.emplace_back(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

inline json pure_state_to_json(const PureState& state) {
  json amps = json::array();
  for (std::size_t i = 0; i < state.dim(); ++i) {
    amps.push_back({state.amplitude(i).real(), state.amplitude(i).imag()});
  }
  return json{{"num_qubits", state.num_qubits()}, {"amplitudes", std::move(amps)}};
}

inline PureState pure_state_from_json(const json& j) {
  if (!j.contains("num_qubits") || !j.contains("amplitudes")) {
    throw std::invalid_argument("state JSON needs num_qubits and amplitudes");
  }
  const std::size_t n = j["num_qubits"].get<std::size_t>();
  const json& amps = j["amplitudes"];
  std::vector<Complex> entries;
  entries.reserve(amps.size());
  for (const json& cell : amps) {
    if (!cell.is_array() || cell.size() != 2) {
      throw std::invalid_argument("amplitude entries must be [re, im]");
    }
    entries.emplace_back(cell[0].get<double>(), cell[1].get<double>());
  }
  return PureState(n, ComplexMatrix::column(std::move(entries)));
}

inline std::size_t qubit_count_for_dim(std::size_t dim) {
  std::size_t n = 0, d = 1;
  while (d < dim) {
    d <<= 1;
    ++n;
  }
  if (d != dim) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

inline DensityOperator density_from_json(const json& j) {
  ComplexMatrix m = matrix_from_json(j);
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("density matrix JSON must be square");
  }
  return DensityOperator(qubit_count_for_dim(m.rows()), std::move(m));
}

inline json ensemble_to_json(const Ensemble& e) {
  json states = json::array();
  for (const DensityOperator& rho : e.states) states.push_back(matrix_to_json(rho.matrix()));
  return json{{"probabilities", e.probabilities}, {"states", std::move(states)}};
}

inline Ensemble ensemble_from_json(const json& j) {
  if (!j.contains("probabilities") || !j.contains("states")) {
    throw std::invalid_argument("ensemble JSON needs probabilities and states");
  }
  std::vector<double> probs = j["probabilities"].get<std::vector<double>>();
  std::vector<DensityOperator> states;
  for (const json& s : j["states"]) states.push_back(density_from_json(s));
  return Ensemble(std::move(states), std::move(probs));
}

inline json transcript_event_to_json(const ProtocolTranscript::Event& e) {
  json payload;
  const char* kind = "";
  switch (e.kind) {
    case ProtocolTranscript::Kind::Prepare:
      kind = "prepare";
      payload = json{{"label", e.label}};
      break;
    case ProtocolTranscript::Kind::Gate:
      kind = "gate";
      payload = json{{"name", e.label}, {"targets", e.targets}};
      break;
    case ProtocolTranscript::Kind::Measure:
      kind = "measure";
      payload = json{{"basis", e.label}, {"targets", e.targets}, {"outcome", e.outcome}};
      break;
    case ProtocolTranscript::Kind::ClassicalMessage:
      kind = "classical_message";
      payload = json{{"sender", e.sender}, {"receiver", e.receiver}, {"bits", e.bits}};
      break;
  }
  return json{{"step", e.step}, {"kind", kind}, {"payload", std::move(payload)}};
}

/// One event per line.
inline void transcript_to_json_lines(const ProtocolTranscript& t, std::ostream& os) {
  for (const ProtocolTranscript::Event& e : t.events()) {
    os << transcript_event_to_json(e).dump() << '\n';
  }
}

}  // namespace qinfo

#endif  // QINFO_JSON_IO_HPP
