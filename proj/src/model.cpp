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

#include "tomoforge/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "tomoforge/error.hpp"

namespace tomoforge {

namespace {

constexpr std::array<std::size_t, 4> kDiagonalParam = {1, 5, 8, 10};

struct OffDiagonal {
  std::size_t row, col;  // 0-based, row < col
  std::size_t re, im;    // 1-based parameter indices
};

constexpr std::array<OffDiagonal, 6> kOffDiagonal = {{
    {0, 1, 2, 11},
    {0, 2, 3, 12},
    {0, 3, 4, 13},
    {1, 2, 6, 14},
    {1, 3, 7, 15},
    {2, 3, 9, 16},
}};

using Mat2 = std::array<std::array<Complex, 2>, 2>;

Mat2 single_spin(char axis) {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  switch (axis) {
    case 'X':
      return {{{h, -i * h}, {-i * h, h}}};
    case 'Y':
      return {{{h, h}, {-h, h}}};
    default:
      return {{{1.0, 0.0}, {0.0, 1.0}}};
  }
}

ComplexMatrix kron(const Mat2& a, const Mat2& b) {
  ComplexMatrix out(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a[i][j] * b[k][l];
  return out;
}

std::array<ReadoutRows, kNumReadouts> build_all_rows() {
  std::array<ReadoutRows, kNumReadouts> table{};
  for (int id = 1; id <= kNumReadouts; ++id) {
    const ReadoutId rid(id);
    const auto positions = observable_positions(rid);
    ReadoutRows& rows = table[static_cast<std::size_t>(id - 1)];
    for (std::size_t k = 1; k <= kNumParams; ++k) {
      DensityParams unit;
      unit(k) = 1.0;
      const ComplexMatrix rotated = apply_rotation(params_to_matrix(unit), rid.rotation());
      for (std::size_t peak = 0; peak < 2; ++peak) {
        const Complex z = rotated(positions[peak].row - 1, positions[peak].col - 1);
        rows.coefficients[2 * peak][k - 1] = z.real();
        rows.coefficients[2 * peak + 1][k - 1] = z.imag();
      }
    }
    for (std::size_t peak = 0; peak < 2; ++peak) {
      const Peak p = peak == 0 ? Peak::Left : Peak::Right;
      rows.labels[2 * peak] = RowLabel{rid, p, Part::Real};
      rows.labels[2 * peak + 1] = RowLabel{rid, p, Part::Imag};
    }
  }
  return table;
}

std::vector<ReadoutId> sorted_unique(std::span<const ReadoutId> readouts) {
  if (readouts.empty()) throw InputError("read-out set is empty");
  std::vector<ReadoutId> ids(readouts.begin(), readouts.end());
  std::sort(ids.begin(), ids.end());
  if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end()) {
    throw InputError("duplicate read-out id " + std::to_string(dup->value()));
  }
  return ids;
}

}  // namespace

std::string_view to_string(Rotation r) {
  static constexpr std::array<std::string_view, 9> names = {"II", "IX", "IY", "XI", "XX",
                                                            "XY", "YI", "YX", "YY"};
  return names[static_cast<std::size_t>(r)];
}

std::string_view to_string(Spin s) { return s == Spin::H ? "H" : "P"; }
std::string_view to_string(Peak p) { return p == Peak::Left ? "left" : "right"; }

std::optional<Peak> parse_peak(std::string_view text) {
  if (text == "left") return Peak::Left;
  if (text == "right") return Peak::Right;
  return std::nullopt;
}

ReadoutId::ReadoutId(int id) : id_(id) {
  if (id < 1 || id > kNumReadouts) {
    throw InputError("read-out id " + std::to_string(id) + " out of range 1..18");
  }
}

std::vector<ReadoutId> ReadoutId::all() {
  std::vector<ReadoutId> ids;
  for (int i = 1; i <= kNumReadouts; ++i) ids.emplace_back(i);
  return ids;
}

bool DensityParams::trace_normalized(double tol) const { return std::abs(trace() - 1.0) <= tol; }

DensityParams DensityParams::maximally_mixed() {
  DensityParams p;
  for (std::size_t k : kDiagonalParam) p(k) = 0.25;
  return p;
}

std::string RowLabel::to_string() const {
  if (is_trace()) return "trace";
  return std::to_string(readout->value()) + ":" + std::string(tomoforge::to_string(peak)) + ":" +
         (part == Part::Real ? "re" : "im");
}

ComplexMatrix rotation_matrix(Rotation r) {
  const std::string_view name = to_string(r);
  return kron(single_spin(name[0]), single_spin(name[1]));
}

ComplexMatrix params_to_matrix(const DensityParams& p) {
  ComplexMatrix m(kDim, kDim);
  for (std::size_t d = 0; d < kDim; ++d) m(d, d) = p(kDiagonalParam[d]);
  for (const auto& e : kOffDiagonal) {
    m(e.row, e.col) = Complex(p(e.re), p(e.im));
    m(e.col, e.row) = Complex(p(e.re), -p(e.im));
  }
  return m;
}

DensityParams matrix_to_params(const ComplexMatrix& m, double tol) {
  if (m.rows() != kDim || m.cols() != kDim) throw InputError("density matrix must be 4x4");
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = i; j < kDim; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
        throw InputError("matrix is not Hermitian: element (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ") vs (" + std::to_string(j + 1) + "," +
                         std::to_string(i + 1) + ")");
      }
    }
  }
  DensityParams p;
  for (std::size_t d = 0; d < kDim; ++d) p(kDiagonalParam[d]) = m(d, d).real();
  for (const auto& e : kOffDiagonal) {
    p(e.re) = m(e.row, e.col).real();
    p(e.im) = m(e.row, e.col).imag();
  }
  return p;
}

ComplexMatrix apply_rotation(const ComplexMatrix& rho, Rotation r) {
  const ComplexMatrix rot = rotation_matrix(r);
  return multiply(multiply(rot, rho), adjoint(rot));
}

std::array<ElementPosition, 2> observable_positions(ReadoutId id) {
  if (id.spin() == Spin::H) return {ElementPosition{1, 3}, ElementPosition{2, 4}};
  return {ElementPosition{1, 2}, ElementPosition{3, 4}};
}

const ReadoutRows& readout_rows(ReadoutId id) {
  static const std::array<ReadoutRows, kNumReadouts> table = build_all_rows();
  return table[static_cast<std::size_t>(id.value() - 1)];
}

ParamRow trace_row() {
  ParamRow row{};
  for (std::size_t k : kDiagonalParam) row[k - 1] = 1.0;
  return row;
}

DesignSystem assemble_design(std::span<const ReadoutId> readouts, bool include_trace,
                             std::optional<std::span<const Reading>> readings) {
  const std::vector<ReadoutId> ids = sorted_unique(readouts);

  std::map<std::pair<int, Peak>, Complex> values;
  if (readings) {
    for (const Reading& r : *readings) {
      if (!values.emplace(std::pair{r.readout.value(), r.peak}, r.value).second) {
        throw InputError("duplicate reading for read-out " + std::to_string(r.readout.value()) + " " +
                         std::string(to_string(r.peak)));
      }
      if (!std::binary_search(ids.begin(), ids.end(), r.readout)) {
        throw InputError("reading for read-out " + std::to_string(r.readout.value()) +
                         " is not in the requested read-out set");
      }
    }
    for (ReadoutId id : ids) {
      for (Peak p : {Peak::Left, Peak::Right}) {
        if (!values.contains({id.value(), p})) {
          throw InputError("missing " + std::string(to_string(p)) + " reading for read-out " +
                           std::to_string(id.value()));
        }
      }
    }
  }

  const std::size_t n_rows = 4 * ids.size() + (include_trace ? 1 : 0);
  DesignSystem d{RealMatrix(n_rows, kNumParams), std::vector<double>(n_rows, 0.0), {}, readings.has_value()};
  d.labels.reserve(n_rows);

  std::size_t r = 0;
  for (ReadoutId id : ids) {
    const ReadoutRows& rows = readout_rows(id);
    for (std::size_t k = 0; k < 4; ++k, ++r) {
      std::copy(rows.coefficients[k].begin(), rows.coefficients[k].end(), d.A.row(r).begin());
      d.labels.push_back(rows.labels[k]);
      if (readings) {
        const Complex z = values.at({id.value(), rows.labels[k].peak});
        d.B[r] = rows.labels[k].part == Part::Real ? z.real() : z.imag();
      }
    }
  }
  if (include_trace) {
    const ParamRow t = trace_row();
    std::copy(t.begin(), t.end(), d.A.row(r).begin());
    d.labels.push_back(RowLabel::trace_row());
    d.B[r] = 1.0;
  }
  return d;
}

DesignSystem assemble_design_from_readings(std::span<const Reading> readings, bool include_trace) {
  std::set<ReadoutId> ids;
  for (const Reading& r : readings) ids.insert(r.readout);
  const std::vector<ReadoutId> id_list(ids.begin(), ids.end());
  return assemble_design(id_list, include_trace, readings);
}

std::vector<Reading> simulate_readings(const ComplexMatrix& rho, std::span<const ReadoutId> readouts,
                                       double noise_sigma, std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) throw InputError("noise sigma must be non-negative");
  if (rho.rows() != kDim || rho.cols() != kDim) throw InputError("density matrix must be 4x4");
  if (hermiticity_defect(rho) > 1e-9) throw InputError("density matrix is not Hermitian");
  if (std::abs(trace(rho) - 1.0) > 1e-9) throw InputError("density matrix trace is not 1");

  const std::vector<ReadoutId> ids = sorted_unique(readouts);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Reading> out;
  out.reserve(2 * ids.size());
  for (ReadoutId id : ids) {
    const ComplexMatrix rotated = apply_rotation(rho, id.rotation());
    const auto positions = observable_positions(id);
    for (std::size_t peak = 0; peak < 2; ++peak) {
      const Complex clean = rotated(positions[peak].row - 1, positions[peak].col - 1);
      const double re = clean.real() + noise_sigma * gauss(rng);
      const double im = clean.imag() + noise_sigma * gauss(rng);
      out.push_back(Reading{id, peak == 0 ? Peak::Left : Peak::Right, Complex(re, im)});
    }
  }
  return out;
}

}  // namespace tomoforge
