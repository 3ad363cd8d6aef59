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

#include "gcpcert/records.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gcpcert/grid.hpp"
#include "json.hpp"

namespace gcpcert {
namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw RecordSchemaError(std::string(what) + ": malformed JSON (" + e.what() + ")");
  }
}

void require_schema(const Json& doc, const char* expected, const char* what) {
  if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string())
    throw RecordSchemaError(std::string(what) + ": missing schema field");
  const std::string got = doc["schema"].get<std::string>();
  if (got != expected)
    throw RecordSchemaError(std::string(what) + ": schema '" + got + "', expected '" + expected + "'");
}

const Json& require_field(const Json& doc, const char* key, const char* what) {
  if (!doc.contains(key)) throw RecordSchemaError(std::string(what) + ": missing field '" + key + "'");
  return doc[key];
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite value");
  return v;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// 6x6 numeric grid in ConditionalProbTable index order.
template <typename T>
std::array<T, 36> read_grid(const Json& table, const char* what) {
  std::array<T, 36> out{};
  if (!table.is_array() || table.size() != 6) throw RecordSchemaError(std::string(what) + ": table must have 6 rows");
  for (std::size_t r = 0; r < 6; ++r) {
    const Json& row = table[r];
    if (!row.is_array() || row.size() != 6)
      throw RecordSchemaError(std::string(what) + ": row " + std::to_string(r) + " must have 6 entries");
    for (std::size_t c = 0; c < 6; ++c) {
      const Json& v = row[c];
      if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw RecordSchemaError(std::string(what) + ": entries must be numbers");
        out[r * 6 + c] = v.get<double>();
      } else {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
          throw RecordSchemaError(std::string(what) + ": counts must be non-negative integers");
        out[r * 6 + c] = v.get<T>();
      }
    }
  }
  return out;
}

}  // namespace

std::string encode_process_matrix(const ProcessMatrix& chi, const RecordMetadata& metadata) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < 4; ++c) {
      const Complex z = chi(r, c);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ValidationError("encode_process_matrix: entry (" + std::to_string(r) + ", " + std::to_string(c) +
                              ") is not finite");
      row.push_back(Json::array({z.real(), z.imag()}));
    }
    entries.push_back(std::move(row));
  }
  Json doc;
  doc["schema"] = kProcessMatrixSchema;
  doc["basis"] = kBasisTag;
  doc["entries"] = std::move(entries);
  Json meta;
  meta["theta"] = optional_number(metadata.theta);
  meta["phi"] = optional_number(metadata.phi);
  meta["provenance"] = metadata.provenance;
  if (metadata.fidelity_vs_ideal) meta["fidelity_vs_ideal"] = *metadata.fidelity_vs_ideal;
  doc["metadata"] = std::move(meta);
  return doc.dump(2) + "\n";
}

ProcessMatrixRecord decode_process_matrix(std::string_view text) {
  const char* what = "process matrix record";
  const Json doc = parse_json(text, what);
  require_schema(doc, kProcessMatrixSchema, what);
  const Json& basis = require_field(doc, "basis", what);
  if (!basis.is_string() || basis.get<std::string>() != kBasisTag)
    throw RecordBasisError(std::string(what) + ": basis tag " + basis.dump() + " does not match '" + kBasisTag + "'");

  const Json& entries = require_field(doc, "entries", what);
  if (!entries.is_array() || entries.size() != 4) throw RecordSchemaError(std::string(what) + ": entries must be 4x4");
  ComplexMatrix m(4, 4);
  for (std::size_t r = 0; r < 4; ++r) {
    if (!entries[r].is_array() || entries[r].size() != 4)
      throw RecordSchemaError(std::string(what) + ": entries must be 4x4");
    for (std::size_t c = 0; c < 4; ++c) {
      const Json& z = entries[r][c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw RecordSchemaError(std::string(what) + ": each entry must be [re, im]");
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  const double asym = m.hermitian_asymmetry();
  if (!(asym <= kHermitianTolerance)) {
    std::ostringstream msg;
    msg << what << ": payload is not Hermitian (max |chi - chi^dagger| = " << asym << ")";
    throw RecordHermiticityError(msg.str());
  }

  ProcessMatrixRecord rec{ProcessMatrix(std::move(m)), {}};
  if (doc.contains("metadata")) {
    const Json& meta = doc["metadata"];
    if (!meta.is_object()) throw RecordSchemaError(std::string(what) + ": metadata must be an object");
    if (meta.contains("theta") && meta["theta"].is_number()) rec.metadata.theta = meta["theta"].get<double>();
    if (meta.contains("phi") && meta["phi"].is_number()) rec.metadata.phi = meta["phi"].get<double>();
    if (meta.contains("provenance") && meta["provenance"].is_string())
      rec.metadata.provenance = meta["provenance"].get<std::string>();
    if (meta.contains("fidelity_vs_ideal") && meta["fidelity_vs_ideal"].is_number())
      rec.metadata.fidelity_vs_ideal = meta["fidelity_vs_ideal"].get<double>();
  }
  return rec;
}

std::string encode_verdict(const CorrelationVerdict& v) {
  const ThresholdSet& th = v.thresholds;
  if (!th.strictly_decreasing()) throw InvariantError("encode_verdict: thresholds are not strictly decreasing");
  Json doc;
  doc["schema"] = kVerdictSchema;
  Json inputs;
  inputs["f_expt12"] = optional_number(v.inputs.f_expt12);
  inputs["f_expt1given2"] = optional_number(v.inputs.f_expt1given2);
  inputs["f_expt112"] = optional_number(v.inputs.f_expt112);
  doc["inputs"] = std::move(inputs);
  Json thresholds;
  thresholds["mode"] = to_string(th.mode);
  thresholds["f_gc12"] = finite_or_throw(th.f_gc12, "encode_verdict");
  thresholds["f_gc1given2"] = finite_or_throw(th.f_gc1given2, "encode_verdict");
  thresholds["f_c12"] = finite_or_throw(th.f_c12, "encode_verdict");
  thresholds["f_gc1givenC2"] = finite_or_throw(th.f_gc1givenC2, "encode_verdict");
  doc["thresholds"] = std::move(thresholds);
  Json flags;
  flags["bell_nonlocal"] = v.bell_nonlocal;
  flags["nonbilocal"] = v.nonbilocal;
  flags["steering"] = v.steering;
  flags["nonlocality_steering"] = v.nonlocality_steering;
  doc["flags"] = std::move(flags);
  doc["band"] = v.band;
  doc["bands"] = v.bands;
  return doc.dump(2) + "\n";
}

ConditionalProbTable parse_probability_table(std::string_view text) {
  const char* what = "probability table";
  const Json doc = parse_json(text, what);
  require_schema(doc, kProbabilityTableSchema, what);
  ConditionalProbTable table;
  const std::array<double, 36> p = read_grid<double>(require_field(doc, "table", what), what);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c)
      table.at(r / 2, kSigns[r % 2], c / 2, kSigns[c % 2]) = p[r * 6 + c];
  if (doc.contains("standard_errors"))
    table.set_standard_errors(read_grid<double>(doc["standard_errors"], "standard errors"));
  return table;
}

OutcomeCounts parse_count_table(std::string_view text) {
  const char* what = "count table";
  const Json doc = parse_json(text, what);
  require_schema(doc, kCountTableSchema, what);
  OutcomeCounts counts;
  counts.n = read_grid<std::uint64_t>(require_field(doc, "table", what), what);
  return counts;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  auto emit_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      const std::string& f = row[k];
      if (f.find_first_of(",\"\n") == std::string::npos) {
        out += f;
      } else {
        out += '"';
        for (char ch : f) {
          if (ch == '"') out += '"';
          out += ch;
        }
        out += '"';
      }
    }
    out += '\n';
  };
  emit_row(table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw InvariantError("to_csv: row width differs from header");
    emit_row(row);
  }
  return out;
}

double parse_real(std::string_view text) {
  const auto bad = [&] { return ValidationError("cannot parse '" + std::string(text) + "' as a real number"); };
  const auto parse_plain = [&](std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) throw bad();
    return v;
  };
  const std::size_t pi_at = text.find("pi");
  double value = 0.0;
  if (pi_at == std::string_view::npos) {
    std::string_view s = text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    value = parse_plain(s);
  } else {
    std::string_view coef = text.substr(0, pi_at);
    std::string_view rest = text.substr(pi_at + 2);
    if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
    if (!coef.empty() && coef.front() == '+') coef.remove_prefix(1);
    double c = 1.0;
    if (coef == "-") c = -1.0;
    else if (!coef.empty()) c = parse_plain(coef);
    double d = 1.0;
    if (!rest.empty()) {
      if (rest.front() != '/') throw bad();
      d = parse_plain(rest.substr(1));
      if (d == 0.0) throw bad();
    }
    value = c * std::numbers::pi / d;
  }
  if (!std::isfinite(value)) throw bad();
  return value;
}

std::vector<double> parse_grid(std::string_view text) {
  const std::size_t first = text.find(':');
  const std::size_t second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos)
    throw ValidationError("grid '" + std::string(text) + "' must have the form a:b:n");
  const double a = parse_real(text.substr(0, first));
  const double b = parse_real(text.substr(first + 1, second - first - 1));
  const std::string_view n_text = text.substr(second + 1);
  std::size_t n = 0;
  const auto res = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
  if (n_text.empty() || res.ec != std::errc() || res.ptr != n_text.data() + n_text.size() || n == 0)
    throw ValidationError("grid '" + std::string(text) + "' needs a positive integer point count");
  return linspace(a, b, n);
}

}  // namespace gcpcert
