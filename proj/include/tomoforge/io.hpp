// Copyright 2026 The tomoforge Authors
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

// Text formats (readings, density matrices, reports) and small parsing
// helpers shared by the C API and the command-line tool.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tomoforge/analysis.hpp"
#include "tomoforge/model.hpp"
#include "tomoforge/search.hpp"

namespace tomoforge {

// "all", or a comma list of ids and inclusive ranges ("1-9,10,11").
std::vector<ReadoutId> parse_readout_list(std::string_view text);

Complex parse_complex(std::string_view text);
// Shortest "a+bi" form that parses back to the same doubles.
std::string format_complex(Complex z);

struct ReadingsFile {
  std::vector<Reading> readings;
  std::map<std::string, std::string> metadata;  // from "# key=value" lines
};

// One `readout_id,peak,real,imag` record per line; `#` starts a comment.
// Throws InputError (with the line number) on malformed records, ids out of
// range and duplicate (id, peak) pairs.
ReadingsFile parse_readings(std::string_view text);
std::string write_readings(const ReadingsFile& file);

struct DensityParseOptions {
  double warn_tolerance = 1e-6;   // larger Hermiticity defects produce a warning
  double error_tolerance = 1e-2;  // and above this they are rejected
};

struct ParsedDensity {
  ComplexMatrix matrix;
  double hermiticity_defect = 0.0;
  std::vector<std::string> warnings;
};

// Four lines of four whitespace-separated complex literals.
ParsedDensity parse_density(std::string_view text, const DensityParseOptions& options = {});
std::string write_density(const ComplexMatrix& m);

enum class ReportFormat { Text, Csv };
ReportFormat parse_report_format(std::string_view text);
NormKind parse_norm_kind(std::string_view text);

std::string format_analysis(const DesignSystem& d, const NormalSystem& ns, const ErrorMatrixReport& report,
                            ReportFormat format);
std::string format_set_reports(const std::vector<SetReport>& reports, ReportFormat format,
                               const std::optional<SetDiff>& diff = std::nullopt);
std::string format_reconstruction(const ReconstructionResult& result, ReportFormat format = ReportFormat::Text);

inline constexpr const char* kThresholdEnvVar = "TOMOFORGE_THRESHOLD";

// flag > $TOMOFORGE_THRESHOLD > kDefaultThreshold. Throws InputError on a
// non-positive or unparseable value from either source.
double resolve_threshold(std::optional<double> flag);

}  // namespace tomoforge
