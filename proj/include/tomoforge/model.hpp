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

// Forward model for two-spin NMR state tomography: rotation operators, the
// 16-parameter form of the density matrix, observable peak positions and
// the linear read-out equations built from them.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tomoforge/linalg.hpp"

namespace tomoforge {

inline constexpr std::size_t kNumParams = 16;
inline constexpr int kNumReadouts = 18;
inline constexpr std::size_t kDim = 4;

// Pre-acquisition rotation; the first letter acts on the first spin (H), the
// second on the second spin (P). X/Y are 90 degree rotations.
enum class Rotation : std::uint8_t { II, IX, IY, XI, XX, XY, YI, YX, YY };

inline constexpr std::array<Rotation, 9> kAllRotations = {Rotation::II, Rotation::IX, Rotation::IY,
                                                         Rotation::XI, Rotation::XX, Rotation::XY,
                                                         Rotation::YI, Rotation::YX, Rotation::YY};

std::string_view to_string(Rotation r);

enum class Spin : std::uint8_t { H, P };
enum class Peak : std::uint8_t { Left, Right };

std::string_view to_string(Spin s);
std::string_view to_string(Peak p);
std::optional<Peak> parse_peak(std::string_view text);

// One of the 18 acquisitions: ids 1-9 are II..YY observed on H, ids 10-18
// the same rotations observed on P.
class ReadoutId {
 public:
  // Throws InputError unless 1 <= id <= 18.
  explicit ReadoutId(int id);

  int value() const { return id_; }
  Rotation rotation() const { return kAllRotations[static_cast<std::size_t>((id_ - 1) % 9)]; }
  Spin spin() const { return id_ <= 9 ? Spin::H : Spin::P; }

  auto operator<=>(const ReadoutId&) const = default;

  static std::vector<ReadoutId> all();

 private:
  int id_;
};

struct Reading {
  ReadoutId readout;
  Peak peak;
  Complex value;

  bool operator==(const Reading&) const = default;
};

// x1..x16: x1,x5,x8,x10 are the diagonal; x2,x3,x4,x6,x7,x9 the real and
// x11..x16 the imaginary parts of elements (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
struct DensityParams {
  std::array<double, kNumParams> x{};

  // 1-based access matching the x1..x16 naming.
  double& operator()(std::size_t k) { return x.at(k - 1); }
  double operator()(std::size_t k) const { return x.at(k - 1); }

  double trace() const { return x[0] + x[4] + x[7] + x[9]; }
  bool trace_normalized(double tol = 1e-9) const;

  static DensityParams maximally_mixed();

  bool operator==(const DensityParams&) const = default;
};

// 1-based (row, col) into a 4x4 matrix.
struct ElementPosition {
  std::size_t row;
  std::size_t col;
  bool operator==(const ElementPosition&) const = default;
};

enum class Part : std::uint8_t { Real, Imag };

struct RowLabel {
  std::optional<ReadoutId> readout;  // empty for the trace row
  Peak peak = Peak::Left;
  Part part = Part::Real;

  bool is_trace() const { return !readout.has_value(); }
  std::string to_string() const;  // "3:left:re" or "trace"

  static RowLabel trace_row() { return {}; }
  bool operator==(const RowLabel&) const = default;
};

using ParamRow = std::array<double, kNumParams>;

struct ReadoutRows {
  std::array<ParamRow, 4> coefficients;  // left re, left im, right re, right im
  std::array<RowLabel, 4> labels;
};

struct DesignSystem {
  RealMatrix A;               // rows x 16
  std::vector<double> B;      // zero-filled in design-only mode
  std::vector<RowLabel> labels;
  bool has_readings = false;

  std::size_t rows() const { return A.rows(); }
};

ComplexMatrix rotation_matrix(Rotation r);

ComplexMatrix params_to_matrix(const DensityParams& p);
// Throws InputError naming the offending pair if m is not 4x4 Hermitian
// within `tol`.
DensityParams matrix_to_params(const ComplexMatrix& m, double tol = 1e-9);

// R·rho·Rᴴ
ComplexMatrix apply_rotation(const ComplexMatrix& rho, Rotation r);

std::array<ElementPosition, 2> observable_positions(ReadoutId id);

const ReadoutRows& readout_rows(ReadoutId id);

ParamRow trace_row();

// Rows ordered by ascending id, left before right, real before imaginary;
// trace row (coefficient 1 on x1,x5,x8,x10, rhs 1) last. When `readings` is
// given it must hold exactly the two peaks of every requested read-out.
DesignSystem assemble_design(std::span<const ReadoutId> readouts, bool include_trace,
                             std::optional<std::span<const Reading>> readings = std::nullopt);

// Read-out set inferred from the readings themselves.
DesignSystem assemble_design_from_readings(std::span<const Reading> readings, bool include_trace);

// Observable elements of each rotated state plus i.i.d. N(0, sigma) noise on
// the real and imaginary part. Deterministic in `seed`.
std::vector<Reading> simulate_readings(const ComplexMatrix& rho, std::span<const ReadoutId> readouts,
                                       double noise_sigma, std::uint64_t seed);

}  // namespace tomoforge
