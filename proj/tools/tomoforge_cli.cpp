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

// Command-line front end. Every numeric step goes through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tomoforge/tomoforge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitInput = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code(tf_status s) { return s == TF_ERR_INVALID ? kExitInput : kExitNumeric; }

void check(tf_status s) {
  if (s != TF_OK) throw Failure{exit_code(s), tf_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, "cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kExitInput, "cannot write '" + path + "'"};
}

// Owns a tf_* string.
std::string take(char* s) {
  std::string out(s);
  tf_string_free(s);
  return out;
}

tf_format format_of(const std::string& name) { return name == "csv" ? TF_FORMAT_CSV : TF_FORMAT_TEXT; }

std::vector<int> readout_ids(const std::string& spec) {
  size_t count = 0;
  check(tf_parse_readout_list(spec.c_str(), nullptr, 0, &count));
  std::vector<int> ids(count);
  check(tf_parse_readout_list(spec.c_str(), ids.data(), ids.size(), &count));
  return ids;
}

double threshold_of(const std::optional<double>& flag) {
  double t = 0.0;
  check(tf_resolve_threshold(flag ? &*flag : nullptr, &t));
  return t;
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

void warn_if_not_hermitian(const std::string& label, const std::string& text) {
  double defect = 0.0;
  if (tf_density_hermiticity_defect(text.c_str(), &defect) == TF_OK && defect > 1e-6) {
    std::cerr << "warning: " << label << " deviates from Hermitian by " << defect << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tomoforge: two-spin NMR density-matrix reconstruction and read-out design analysis"};
  app.require_subcommand(1);
  app.footer(
      "Read-out ids: 1=II 2=IX 3=IY 4=XI 5=XX 6=XY 7=YI 8=YX 9=YY with H acquisition,\n"
      "10..18 the same rotations with P acquisition. Lists accept 'all', '1,2,6' and '1-9'.\n"
      "TOMOFORGE_THRESHOLD overrides the default truncation threshold (0.001); --threshold wins.");

  std::string readouts = "all";
  std::string format = "text";
  std::optional<double> threshold;

  auto* analyze = app.add_subcommand("analyze", "Design rank, normal matrix C, eigenvalues and y-combinations");
  bool no_trace = false;
  analyze->add_option("--readouts", readouts, "Read-out ids or 'all'")->capture_default_str();
  analyze->add_flag("--no-trace", no_trace, "Leave out the trace-normalization row");
  analyze->add_option("--threshold", threshold, "Ill-determination threshold on eigenvalues of C");
  analyze->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "Full-rank read-out sets of a given size");
  int size = 0;
  bool by_conditioning = false;
  std::size_t top = 0;
  unsigned threads = 0;
  enumerate->add_option("--size", size, "Set size k (1..18)")->required();
  enumerate->add_flag("--rank-by-conditioning", by_conditioning, "Order by descending smallest eigenvalue of C");
  enumerate->add_option("--top", top, "Keep only the first N sets (0 = all)");
  enumerate->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  enumerate->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Synthetic readings from a density matrix");
  std::string density_path, out_path;
  double noise = 0.0;
  std::uint64_t seed = 0;
  simulate->add_option("--density", density_path, "Density matrix file")->required();
  simulate->add_option("--readouts", readouts, "Read-out ids or 'all'")->capture_default_str();
  simulate->add_option("--noise", noise, "Gaussian sigma per real/imaginary part")->required();
  simulate->add_option("--seed", seed, "Random seed")->required();
  simulate->add_option("--out", out_path, "Readings file to write")->required();

  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct a density matrix from readings");
  std::string readings_path, prior = "mixed";
  bool psd = false;
  reconstruct->add_option("--readings", readings_path, "Readings file")->required();
  reconstruct->add_option("--threshold", threshold, "Ill-determination threshold on eigenvalues of C");
  reconstruct->add_option("--prior", prior, "'mixed' or a density file for undetermined directions")
      ->capture_default_str();
  reconstruct->add_flag("--psd-project", psd, "Clip negative eigenvalues of the result");
  reconstruct->add_option("--out", out_path, "Density file to write")->required();

  auto* compare = app.add_subcommand("compare", "Relative error ||a-b|| / ||a||");
  std::string a_path, b_path, norm = "spectral";
  double hermitian_tol = 1e-2;
  compare->add_option("--a", a_path, "Density file (normalizes the error)")->required();
  compare->add_option("--b", b_path, "Reference density file")->required();
  compare->add_option("--norm", norm, "spectral or frobenius")
      ->check(CLI::IsMember({"spectral", "frobenius"}))
      ->capture_default_str();
  compare->add_option("--hermitian-tol", hermitian_tol, "Reject inputs less Hermitian than this")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) {
      const auto ids = readout_ids(readouts);
      Handle<tf_design, tf_design_free> design;
      check(tf_design_create(ids.data(), ids.size(), no_trace ? 0 : 1, &design.p));
      Handle<tf_analysis, tf_analysis_free> analysis;
      check(tf_analysis_create(design.p, threshold_of(threshold), &analysis.p));
      char* text = nullptr;
      check(tf_analysis_format(analysis.p, format_of(format), &text));
      std::cout << take(text);
    } else if (*enumerate) {
      Handle<tf_set_list, tf_set_list_free> list;
      check(tf_enumerate(size, threads, by_conditioning ? 1 : 0, top, &list.p));
      char* text = nullptr;
      const bool diff = size == 5 && !by_conditioning && top == 0;
      check(tf_set_list_format(list.p, format_of(format), diff ? 1 : 0, &text));
      std::cout << take(text);
    } else if (*simulate) {
      const std::string density = read_file(density_path);
      warn_if_not_hermitian(density_path, density);
      const auto ids = readout_ids(readouts);
      char* text = nullptr;
      check(tf_simulate(density.c_str(), ids.data(), ids.size(), noise, seed, &text));
      write_file(out_path, take(text));
    } else if (*reconstruct) {
      const std::string readings = read_file(readings_path);
      std::optional<std::string> prior_text;
      if (prior != "mixed") prior_text = read_file(prior);
      Handle<tf_design, tf_design_free> design;
      check(tf_design_from_readings(readings.c_str(), 1, &design.p));
      Handle<tf_reconstruction, tf_reconstruction_free> result;
      check(tf_reconstruct(design.p, threshold_of(threshold), prior_text ? prior_text->c_str() : nullptr, psd ? 1 : 0,
                           &result.p));
      char* density = nullptr;
      check(tf_reconstruction_density(result.p, &density));
      write_file(out_path, take(density));
      char* report = nullptr;
      check(tf_reconstruction_report(result.p, TF_FORMAT_TEXT, &report));
      std::cout << take(report);
    } else if (*compare) {
      const std::string a = read_file(a_path);
      const std::string b = read_file(b_path);
      warn_if_not_hermitian(a_path, a);
      warn_if_not_hermitian(b_path, b);
      double delta = 0.0;
      check(tf_compare(a.c_str(), b.c_str(), norm == "frobenius" ? TF_NORM_FROBENIUS : TF_NORM_SPECTRAL, hermitian_tol,
                       &delta));
      char line[64];
      std::snprintf(line, sizeof(line), "delta %.10g\n", delta);
      std::cout << line;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kExitOk;
}
