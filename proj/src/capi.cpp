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

#include "tomoforge/tomoforge.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <string>

#include "tomoforge/analysis.hpp"
#include "tomoforge/error.hpp"
#include "tomoforge/io.hpp"
#include "tomoforge/model.hpp"
#include "tomoforge/search.hpp"

struct tf_design {
  tomoforge::DesignSystem system;
};

struct tf_analysis {
  tomoforge::DesignSystem system;
  tomoforge::NormalSystem normal;
  tomoforge::ErrorMatrixReport report;
  std::vector<double> combinations;  // row-major copy for the C view
};

struct tf_reconstruction {
  tomoforge::ReconstructionResult result;
  tomoforge::ComplexMatrix density;
};

struct tf_set_list {
  std::vector<tomoforge::SetReport> reports;
  int size_k = 0;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
tf_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return TF_OK;
  } catch (const tomoforge::InputError& e) {
    g_last_error = e.what();
    return TF_ERR_INVALID;
  } catch (const tomoforge::NumericError& e) {
    g_last_error = e.what();
    return TF_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TF_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw tomoforge::InputError(what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<tomoforge::ReadoutId> to_ids(const int* ids, size_t count) {
  require(ids != nullptr || count == 0, "null id array");
  std::vector<tomoforge::ReadoutId> out;
  for (size_t i = 0; i < count; ++i) out.emplace_back(ids[i]);
  return out;
}

tomoforge::ReportFormat to_format(tf_format f) {
  return f == TF_FORMAT_CSV ? tomoforge::ReportFormat::Csv : tomoforge::ReportFormat::Text;
}

}  // namespace

extern "C" {

const char* tf_version(void) { return "0.1.0"; }
const char* tf_last_error(void) { return g_last_error.c_str(); }
void tf_string_free(char* s) { std::free(s); }
double tf_default_threshold(void) { return tomoforge::kDefaultThreshold; }

tf_status tf_parse_readout_list(const char* text, int* ids, size_t capacity, size_t* count) {
  return guarded([&] {
    require(text != nullptr && count != nullptr, "null argument");
    const auto parsed = tomoforge::parse_readout_list(text);
    *count = parsed.size();
    for (size_t i = 0; i < parsed.size() && i < capacity && ids != nullptr; ++i) ids[i] = parsed[i].value();
  });
}

tf_status tf_resolve_threshold(const double* flag, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = tomoforge::resolve_threshold(flag ? std::optional<double>(*flag) : std::nullopt);
  });
}

tf_status tf_design_create(const int* ids, size_t count, int include_trace, tf_design** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto readouts = to_ids(ids, count);
    *out = new tf_design{tomoforge::assemble_design(readouts, include_trace != 0)};
  });
}

tf_status tf_design_from_readings(const char* readings_text, int include_trace, tf_design** out) {
  return guarded([&] {
    require(readings_text != nullptr && out != nullptr, "null argument");
    const auto file = tomoforge::parse_readings(readings_text);
    require(!file.readings.empty(), "readings file holds no records");
    *out = new tf_design{tomoforge::assemble_design_from_readings(file.readings, include_trace != 0)};
  });
}

void tf_design_free(tf_design* d) { delete d; }
size_t tf_design_rows(const tf_design* d) { return d ? d->system.rows() : 0; }
const double* tf_design_matrix(const tf_design* d) { return d ? d->system.A.entries().data() : nullptr; }
const double* tf_design_rhs(const tf_design* d) { return d ? d->system.B.data() : nullptr; }

tf_status tf_design_rank(const tf_design* d, double tol, size_t* out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    *out = tomoforge::matrix_rank(d->system.A, tol);
  });
}

tf_status tf_analysis_create(const tf_design* d, double threshold, tf_analysis** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    auto a = std::make_unique<tf_analysis>();
    a->system = d->system;
    a->normal = tomoforge::normal_system(d->system);
    a->report = tomoforge::error_matrix_analysis(a->normal, threshold);
    const auto entries = a->report.combinations.entries();
    a->combinations.assign(entries.begin(), entries.end());
    *out = a.release();
  });
}

void tf_analysis_free(tf_analysis* a) { delete a; }
const double* tf_analysis_normal_matrix(const tf_analysis* a) { return a ? a->normal.C.entries().data() : nullptr; }
const double* tf_analysis_eigenvalues(const tf_analysis* a) { return a ? a->report.eigenvalues.data() : nullptr; }
const double* tf_analysis_combinations(const tf_analysis* a) { return a ? a->combinations.data() : nullptr; }
size_t tf_analysis_ill_count(const tf_analysis* a) { return a ? a->report.ill_count() : 0; }

tf_status tf_analysis_format(const tf_analysis* a, tf_format format, char** out) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    *out = dup_string(tomoforge::format_analysis(a->system, a->normal, a->report, to_format(format)));
  });
}

tf_status tf_reconstruct(const tf_design* d, double threshold, const char* prior_density_text, int psd_project,
                         tf_reconstruction** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    tomoforge::DensityParams prior = tomoforge::DensityParams::maximally_mixed();
    if (prior_density_text != nullptr) {
      const auto parsed = tomoforge::parse_density(prior_density_text);
      prior = tomoforge::matrix_to_params(parsed.matrix, tomoforge::DensityParseOptions{}.error_tolerance);
    }
    auto r = std::make_unique<tf_reconstruction>();
    r->result = tomoforge::reconstruct(d->system, threshold, prior);
    r->density = tomoforge::params_to_matrix(r->result.params);
    if (psd_project) r->density = tomoforge::project_to_psd(r->density);
    *out = r.release();
  });
}

void tf_reconstruction_free(tf_reconstruction* r) { delete r; }
double tf_reconstruction_chi2(const tf_reconstruction* r) { return r ? r->result.chi2 : 0.0; }
const double* tf_reconstruction_params(const tf_reconstruction* r) { return r ? r->result.params.x.data() : nullptr; }
size_t tf_reconstruction_truncated_count(const tf_reconstruction* r) {
  return r ? r->result.truncated_directions.size() : 0;
}

tf_status tf_reconstruction_density(const tf_reconstruction* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = dup_string(tomoforge::write_density(r->density));
  });
}

tf_status tf_reconstruction_report(const tf_reconstruction* r, tf_format format, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = dup_string(tomoforge::format_reconstruction(r->result, to_format(format)));
  });
}

tf_status tf_simulate(const char* density_text, const int* ids, size_t count, double noise_sigma, uint64_t seed,
                      char** readings_text) {
  return guarded([&] {
    require(density_text != nullptr && readings_text != nullptr, "null argument");
    const auto parsed = tomoforge::parse_density(density_text);
    const auto readouts = to_ids(ids, count);
    tomoforge::ReadingsFile file;
    file.readings = tomoforge::simulate_readings(parsed.matrix, readouts, noise_sigma, seed);
    char sigma[64];
    std::snprintf(sigma, sizeof(sigma), "%.17g", noise_sigma);
    file.metadata["noise_sigma"] = sigma;
    file.metadata["seed"] = std::to_string(seed);
    file.metadata["source"] = "simulate";
    *readings_text = dup_string(tomoforge::write_readings(file));
  });
}

tf_status tf_compare(const char* a_text, const char* b_text, tf_norm norm, double hermitian_tol, double* delta) {
  return guarded([&] {
    require(a_text != nullptr && b_text != nullptr && delta != nullptr, "null argument");
    require(hermitian_tol >= 0.0, "Hermitian tolerance must be non-negative");
    tomoforge::DensityParseOptions options;
    options.error_tolerance = hermitian_tol;
    options.warn_tolerance = std::min(options.warn_tolerance, hermitian_tol);
    const auto a = tomoforge::parse_density(a_text, options);
    const auto b = tomoforge::parse_density(b_text, options);
    *delta = tomoforge::relative_error(
        a.matrix, b.matrix, norm == TF_NORM_FROBENIUS ? tomoforge::NormKind::Frobenius : tomoforge::NormKind::Spectral);
  });
}

tf_status tf_density_hermiticity_defect(const char* density_text, double* defect) {
  return guarded([&] {
    require(density_text != nullptr && defect != nullptr, "null argument");
    tomoforge::DensityParseOptions options;
    options.error_tolerance = std::numeric_limits<double>::infinity();
    *defect = tomoforge::parse_density(density_text, options).hermiticity_defect;
  });
}

tf_status tf_minimum_readout_count(unsigned threads, size_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = tomoforge::minimum_readout_count(threads);
  });
}

tf_status tf_enumerate(int k, unsigned threads, int rank_by_conditioning, size_t top, tf_set_list** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    auto l = std::make_unique<tf_set_list>();
    l->size_k = k;
    l->reports = tomoforge::enumerate_minimal_sets(k, threads);
    if (rank_by_conditioning) {
      l->reports = tomoforge::rank_sets_by_conditioning(std::move(l->reports), top);
    } else if (top != 0 && l->reports.size() > top) {
      l->reports.erase(l->reports.begin() + static_cast<std::ptrdiff_t>(top), l->reports.end());
    }
    *out = l.release();
  });
}

void tf_set_list_free(tf_set_list* l) { delete l; }
size_t tf_set_list_size(const tf_set_list* l) { return l ? l->reports.size() : 0; }

tf_status tf_set_list_get(const tf_set_list* l, size_t index, int* ids, size_t* count, double* min_eigenvalue) {
  return guarded([&] {
    require(l != nullptr && ids != nullptr && count != nullptr, "null argument");
    require(index < l->reports.size(), "set index out of range");
    const auto& report = l->reports[index];
    *count = report.set.size();
    for (size_t i = 0; i < report.set.size(); ++i) ids[i] = report.set.ids()[i].value();
    if (min_eigenvalue) *min_eigenvalue = report.min_eigenvalue;
  });
}

tf_status tf_set_list_format(const tf_set_list* l, tf_format format, int diff_reference, char** out) {
  return guarded([&] {
    require(l != nullptr && out != nullptr, "null argument");
    std::optional<tomoforge::SetDiff> diff;
    if (diff_reference) diff = tomoforge::diff_sets(l->reports, tomoforge::reference_five_sets());
    *out = dup_string(tomoforge::format_set_reports(l->reports, to_format(format), diff));
  });
}

}  // extern "C"
