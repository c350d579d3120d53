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

#include "tomoforge/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "tomoforge/error.hpp"

namespace tomoforge {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> lines_of(std::string_view text) { return split(text, '\n'); }

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<int> to_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string sig10(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double no_negative_zero(double v, int precision) {
  return std::abs(v) < 0.5 * std::pow(10.0, -precision) ? 0.0 : v;
}

std::string fixed(double v, int width, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%*.*f", width, precision, no_negative_zero(v, precision));
  return buf;
}

std::string combination_text(std::span<const double> coeffs) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (std::abs(coeffs[i]) < 5e-5) continue;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%.4f x%zu", out.empty() ? (coeffs[i] < 0 ? "-" : "") : (coeffs[i] < 0 ? " - " : " + "),
                  std::abs(coeffs[i]), i + 1);
    out += buf;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::vector<ReadoutId> parse_readout_list(std::string_view text) {
  text = trim(text);
  if (text == "all") return ReadoutId::all();
  if (text.empty()) throw InputError("empty read-out list");
  std::vector<ReadoutId> ids;
  for (std::string_view part : split(text, ',')) {
    part = trim(part);
    const auto dash = part.find('-', 1);
    if (dash != std::string_view::npos) {
      const auto lo = to_int(part.substr(0, dash));
      const auto hi = to_int(part.substr(dash + 1));
      if (!lo || !hi || *lo > *hi) throw InputError("bad read-out range '" + std::string(part) + "'");
      for (int id = *lo; id <= *hi; ++id) ids.emplace_back(id);
    } else {
      const auto id = to_int(part);
      if (!id) throw InputError("bad read-out id '" + std::string(part) + "'");
      ids.emplace_back(*id);
    }
  }
  std::set<ReadoutId> seen;
  for (ReadoutId id : ids) {
    if (!seen.insert(id).second) throw InputError("duplicate read-out id " + std::to_string(id.value()));
  }
  return ids;
}

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  auto fail = [&]() -> Complex { throw InputError("cannot parse complex literal '" + std::string(s) + "'"); };
  if (s.empty()) return fail();
  if (s.back() != 'i') {
    const auto re = to_double(s);
    return re ? Complex(*re, 0.0) : fail();
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  auto imag_part = [&](std::string_view t) -> std::optional<double> {
    t = trim(t);
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return to_double(t);
  };
  if (split_at == std::string_view::npos) {
    const auto im = imag_part(body);
    return im ? Complex(0.0, *im) : fail();
  }
  const auto re = to_double(body.substr(0, split_at));
  const auto im = imag_part(body.substr(split_at));
  return (re && im) ? Complex(*re, *im) : fail();
}

std::string format_complex(Complex z) {
  const double im = z.imag();
  std::string out = shortest(z.real());
  out += std::signbit(im) ? "-" : "+";
  out += shortest(std::abs(im));
  out += 'i';
  return out;
}

ReadingsFile parse_readings(std::string_view text) {
  ReadingsFile file;
  std::set<std::pair<int, Peak>> seen;
  std::size_t line_no = 0;
  for (std::string_view raw : lines_of(text)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos && eq > 0 && body.substr(0, eq).find_first_of(" ,") == std::string_view::npos) {
        file.metadata[std::string(body.substr(0, eq))] = std::string(trim(body.substr(eq + 1)));
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 4) {
      throw InputError(where + "expected 4 comma-separated fields (readout_id,peak,real,imag), got " +
                       std::to_string(fields.size()));
    }
    const auto id = to_int(fields[0]);
    if (!id) throw InputError(where + "bad read-out id '" + std::string(trim(fields[0])) + "'");
    if (*id < 1 || *id > kNumReadouts) {
      throw InputError(where + "read-out id " + std::to_string(*id) + " out of range 1..18");
    }
    const auto peak = parse_peak(trim(fields[1]));
    if (!peak) throw InputError(where + "peak must be 'left' or 'right', got '" + std::string(trim(fields[1])) + "'");
    const auto re = to_double(fields[2]);
    const auto im = to_double(fields[3]);
    if (!re || !im) throw InputError(where + "bad numeric value");
    if (!seen.emplace(*id, *peak).second) {
      throw InputError(where + "duplicate record for read-out " + std::to_string(*id) + " " +
                       std::string(to_string(*peak)));
    }
    file.readings.push_back(Reading{ReadoutId(*id), *peak, Complex(*re, *im)});
  }
  return file;
}

std::string write_readings(const ReadingsFile& file) {
  std::string out;
  for (const auto& [key, value] : file.metadata) out += "# " + key + "=" + value + "\n";
  out += "# readout_id,peak,real,imag\n";
  for (const Reading& r : file.readings) {
    out += std::to_string(r.readout.value()) + "," + std::string(to_string(r.peak)) + "," +
           shortest(r.value.real()) + "," + shortest(r.value.imag()) + "\n";
  }
  return out;
}

ParsedDensity parse_density(std::string_view text, const DensityParseOptions& options) {
  std::vector<std::vector<Complex>> rows;
  for (std::string_view raw : lines_of(text)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<Complex> row;
    std::istringstream tokens{std::string(line)};
    std::string tok;
    while (tokens >> tok) row.push_back(parse_complex(tok));
    rows.push_back(std::move(row));
  }
  if (rows.size() != kDim) {
    throw InputError("density file must have 4 rows, found " + std::to_string(rows.size()));
  }
  ParsedDensity parsed{ComplexMatrix(kDim, kDim), 0.0, {}};
  for (std::size_t i = 0; i < kDim; ++i) {
    if (rows[i].size() != kDim) {
      throw InputError("density row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected 4");
    }
    for (std::size_t j = 0; j < kDim; ++j) parsed.matrix(i, j) = rows[i][j];
  }
  parsed.hermiticity_defect = hermiticity_defect(parsed.matrix);
  if (parsed.hermiticity_defect > options.error_tolerance) {
    throw InputError("density matrix is not Hermitian: defect " + sig10(parsed.hermiticity_defect) +
                     " exceeds " + sig10(options.error_tolerance));
  }
  if (parsed.hermiticity_defect > options.warn_tolerance) {
    parsed.warnings.push_back("density matrix deviates from Hermitian by " + sig10(parsed.hermiticity_defect));
  }
  return parsed;
}

std::string write_density(const ComplexMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_complex(m(i, j));
    }
    out += '\n';
  }
  return out;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::Text;
  if (text == "csv") return ReportFormat::Csv;
  throw InputError("unknown format '" + std::string(text) + "' (expected text or csv)");
}

NormKind parse_norm_kind(std::string_view text) {
  if (text == "spectral") return NormKind::Spectral;
  if (text == "frobenius") return NormKind::Frobenius;
  throw InputError("unknown norm '" + std::string(text) + "' (expected spectral or frobenius)");
}

std::string format_analysis(const DesignSystem& d, const NormalSystem& ns, const ErrorMatrixReport& report,
                            ReportFormat format) {
  const std::size_t rank = matrix_rank(d.A);
  const std::size_t n = ns.C.rows();
  std::string out;

  if (format == ReportFormat::Csv) {
    out += "section,index,key,value\n";
    out += "design,0,rows," + std::to_string(d.rows()) + "\n";
    out += "design,0,cols," + std::to_string(d.A.cols()) + "\n";
    out += "design,0,rank," + std::to_string(rank) + "\n";
    out += "design,0,threshold," + sig10(report.threshold) + "\n";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out += "C," + std::to_string(i + 1) + ",x" + std::to_string(j + 1) + "," + sig10(ns.C(i, j)) + "\n";
    for (std::size_t k = 0; k < n; ++k) {
      const std::string idx = std::to_string(k + 1);
      out += "eigen," + idx + ",eigenvalue," + sig10(report.eigenvalues[k]) + "\n";
      out += "eigen," + idx + ",determined," + (report.ill_determined[k] ? "ill" : "well") + "\n";
      for (std::size_t j = 0; j < n; ++j)
        out += "y," + idx + ",x" + std::to_string(j + 1) + "," + sig10(report.combinations(k, j)) + "\n";
    }
    return out;
  }

  out += "design: " + std::to_string(d.rows()) + " x " + std::to_string(d.A.cols()) + ", rank " +
         std::to_string(rank) + "\n";
  out += "threshold: " + sig10(report.threshold) + "\n\n";
  out += "normal matrix C = AᵀA:\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out += fixed(ns.C(i, j), 7, 3);
    out += "\n";
  }
  out += "\neigenvalues and y-combinations:\n";
  for (std::size_t k = 0; k < n; ++k) {
    char head[64];
    std::snprintf(head, sizeof(head), "y%-2zu  %10.6f  %-4s  ", k + 1, no_negative_zero(report.eigenvalues[k], 6),
                  report.ill_determined[k] ? "ill" : "well");
    out += head + combination_text(report.combinations.row(k)) + "\n";
  }
  out += "\nill-determined directions: " + std::to_string(report.ill_count()) + "\n";
  return out;
}

std::string format_set_reports(const std::vector<SetReport>& reports, ReportFormat format,
                               const std::optional<SetDiff>& diff) {
  std::string out;
  if (format == ReportFormat::Csv) {
    out += "set,size,rank,full_rank,min_eigenvalue\n";
    for (const SetReport& r : reports) {
      out += "\"" + r.set.to_string() + "\"," + std::to_string(r.set.size()) + "," + std::to_string(r.rank) + "," +
             (r.full_rank ? "true" : "false") + "," + sig10(r.min_eigenvalue) + "\n";
    }
  } else {
    out += "full-rank sets: " + std::to_string(reports.size()) + "\n";
    for (const SetReport& r : reports) {
      char line[128];
      std::snprintf(line, sizeof(line), "%-28s rank %2zu  min eigenvalue %.6f\n", r.set.to_string().c_str(), r.rank,
                    no_negative_zero(r.min_eigenvalue, 6));
      out += line;
    }
  }
  if (diff) {
    const char* prefix = format == ReportFormat::Csv ? "# " : "";
    if (diff->empty()) {
      out += std::string(prefix) + "reference table: identical\n";
    } else {
      for (const ReadoutSet& s : diff->missing) out += std::string(prefix) + "missing " + s.to_string() + "\n";
      for (const ReadoutSet& s : diff->extra) out += std::string(prefix) + "extra " + s.to_string() + "\n";
    }
  }
  return out;
}

std::string format_reconstruction(const ReconstructionResult& result, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Csv) {
    out += "key,value\nchi2," + sig10(result.chi2) + "\n";
    for (std::size_t k = 1; k <= kNumParams; ++k) out += "x" + std::to_string(k) + "," + sig10(result.params(k)) + "\n";
    out += "truncated," + std::to_string(result.truncated_directions.size()) + "\n";
    return out;
  }
  out += "chi2: " + sig10(result.chi2) + "\n";
  out += "trace: " + sig10(result.params.trace()) + "\n";
  out += "truncated directions: " + std::to_string(result.truncated_directions.size()) + "\n";
  for (const TruncatedDirection& t : result.truncated_directions) {
    out += "  eigenvalue " + sig10(t.eigenvalue) + ": " + combination_text(t.combination) + "\n";
  }
  return out;
}

double resolve_threshold(std::optional<double> flag) {
  auto check = [](double v, const std::string& source) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError(source + " threshold must be a positive number");
    return v;
  };
  if (flag) return check(*flag, "--threshold");
  if (const char* env = std::getenv(kThresholdEnvVar); env != nullptr && *env != '\0') {
    const auto v = to_double(env);
    if (!v) throw InputError(std::string(kThresholdEnvVar) + " is not a number: '" + env + "'");
    return check(*v, kThresholdEnvVar);
  }
  return kDefaultThreshold;
}

}  // namespace tomoforge
