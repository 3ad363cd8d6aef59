// Copyright 2026 The gcpcert Authors
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

#pragma once

// File formats: JSON process-matrix and verdict records, JSON input tables,
// and CSV output with shortest round-trip numbers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcpcert/errors.hpp"
#include "gcpcert/network.hpp"
#include "gcpcert/tomography.hpp"

namespace gcpcert {

inline constexpr const char* kProcessMatrixSchema = "gcpcert.process-matrix/1";
inline constexpr const char* kVerdictSchema = "gcpcert.verdict/1";
inline constexpr const char* kProbabilityTableSchema = "gcpcert.conditional-probs/1";
inline constexpr const char* kCountTableSchema = "gcpcert.outcome-counts/1";
inline constexpr const char* kBasisTag = "matrix-unit-E1..E4";

class RecordSchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RecordBasisError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RecordHermiticityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct RecordMetadata {
  std::optional<double> theta;
  std::optional<double> phi;
  std::string provenance;
  std::optional<double> fidelity_vs_ideal;
};

struct ProcessMatrixRecord {
  ProcessMatrix chi = ideal_process_matrix();
  RecordMetadata metadata;
};

// Fixed key order; `entries` is a 4x4 array of [re, im]. Rejects NaN and
// infinite entries.
std::string encode_process_matrix(const ProcessMatrix& chi, const RecordMetadata& metadata = {});

// Throws RecordSchemaError (malformed or wrong schema), RecordBasisError,
// RecordHermiticityError, or ValidationError for other invariant failures.
ProcessMatrixRecord decode_process_matrix(std::string_view text);

// Rejects a threshold set that is not strictly decreasing.
std::string encode_verdict(const CorrelationVerdict& verdict);

// {"schema": ..., "table": 6x6}. Rows are the input (V1+, V1-, V2+, V2-,
// V3+, V3-), columns the measured outcome in the same order.
ConditionalProbTable parse_probability_table(std::string_view text);
OutcomeCounts parse_count_table(std::string_view text);

std::string read_text_file(const std::string& path);

// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Header first, "\n" line endings, fields quoted only when needed.
std::string to_csv(const CsvTable& table);

// Real number, optionally written with pi: "0.5", "pi", "pi/4", "3pi/4",
// "-2*pi".
double parse_real(std::string_view text);

// "a:b:n" -> n equally spaced points.
std::vector<double> parse_grid(std::string_view text);

}  // namespace gcpcert
