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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "golden.hpp"
#include "oracles.hpp"
#include "tomoforge/error.hpp"
#include "tomoforge/model.hpp"

namespace tomoforge {
namespace {

const double kH = 1.0 / std::sqrt(2.0);

void expect_matrix_near(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) EXPECT_LE(std::abs(a(i, j) - b(i, j)), tol) << "(" << i + 1 << "," << j + 1 << ")";
}

TEST(RotationMatrix, IdentityAndIX) {
  expect_matrix_near(rotation_matrix(Rotation::II), ComplexMatrix::identity(4), 0.0);
  const Complex mi(0, -kH);
  const ComplexMatrix ix = golden::make_density({{{kH, mi, 0, 0}, {mi, kH, 0, 0}, {0, 0, kH, mi}, {0, 0, mi, kH}}});
  expect_matrix_near(rotation_matrix(Rotation::IX), ix, 1e-15);
}

TEST(RotationMatrix, AllUnitary) {
  for (Rotation r : kAllRotations) {
    const ComplexMatrix m = rotation_matrix(r);
    expect_matrix_near(multiply(m, adjoint(m)), ComplexMatrix::identity(4), 1e-12);
  }
}

// Literal operator table. Three entries differ from the Kronecker form in the
// source listing (XI(4,2), XX(3,2), XY(1,4) carry flipped signs there, which
// makes those three non-unitary); the corrected values are used here.
TEST(RotationMatrix, MatchesLiteralTable) {
  using golden::C;
  const double h = 0.5;
  const C i(0, 1);
  const std::map<Rotation, ComplexMatrix> table = {
      {Rotation::IY, golden::make_density({{{kH, kH, 0, 0}, {-kH, kH, 0, 0}, {0, 0, kH, kH}, {0, 0, -kH, kH}}})},
      {Rotation::XI, golden::make_density({{{kH, 0, -i * kH, 0}, {0, kH, 0, -i * kH}, {-i * kH, 0, kH, 0}, {0, -i * kH, 0, kH}}})},
      {Rotation::XX, golden::make_density({{{h, -i * h, -i * h, -h}, {-i * h, h, -h, -i * h}, {-i * h, -h, h, -i * h}, {-h, -i * h, -i * h, h}}})},
      {Rotation::XY, golden::make_density({{{h, h, -i * h, -i * h}, {-h, h, i * h, -i * h}, {-i * h, -i * h, h, h}, {i * h, -i * h, -h, h}}})},
      {Rotation::YI, golden::make_density({{{kH, 0, kH, 0}, {0, kH, 0, kH}, {-kH, 0, kH, 0}, {0, -kH, 0, kH}}})},
      {Rotation::YX, golden::make_density({{{h, -i * h, h, -i * h}, {-i * h, h, -i * h, h}, {-h, i * h, h, -i * h}, {i * h, -h, -i * h, h}}})},
      {Rotation::YY, golden::make_density({{{h, h, h, h}, {-h, h, -h, h}, {-h, -h, h, h}, {h, -h, -h, h}}})},
  };
  for (const auto& [r, expected] : table) {
    SCOPED_TRACE(std::string(to_string(r)));
    expect_matrix_near(rotation_matrix(r), expected, 1e-15);
  }
}

TEST(ParamsToMatrix, ZeroMixedAndLayout) {
  expect_matrix_near(params_to_matrix(DensityParams{}), ComplexMatrix(4, 4), 0.0);
  ComplexMatrix quarter = ComplexMatrix::identity(4);
  for (std::size_t i = 0; i < 4; ++i) quarter(i, i) = 0.25;
  expect_matrix_near(params_to_matrix(DensityParams::maximally_mixed()), quarter, 0.0);

  DensityParams p;
  for (std::size_t k = 1; k <= 16; ++k) p(k) = static_cast<double>(k);
  const ComplexMatrix m = params_to_matrix(p);
  EXPECT_EQ(m(0, 1), Complex(2, 11));
  EXPECT_EQ(m(0, 2), Complex(3, 12));
  EXPECT_EQ(m(0, 3), Complex(4, 13));
  EXPECT_EQ(m(1, 2), Complex(6, 14));
  EXPECT_EQ(m(1, 3), Complex(7, 15));
  EXPECT_EQ(m(2, 3), Complex(9, 16));
  EXPECT_EQ(m(3, 2), Complex(9, -16));
  EXPECT_EQ(m(0, 0), Complex(1, 0));
  EXPECT_EQ(m(1, 1), Complex(5, 0));
  EXPECT_EQ(m(2, 2), Complex(8, 0));
  EXPECT_EQ(m(3, 3), Complex(10, 0));
}

TEST(ParamsToMatrix, TheoreticalStateParameters) {
  DensityParams p;
  p(1) = p(2) = p(3) = p(5) = p(6) = p(8) = 0.31;
  p(4) = p(7) = p(9) = -0.063;
  p(13) = p(15) = p(16) = -0.13;
  p(10) = 0.063;
  expect_matrix_near(params_to_matrix(p), golden::rho_th(), 0.0);
  EXPECT_EQ(matrix_to_params(golden::rho_th()), p);
}

TEST(MatrixToParams, MixedState) {
  ComplexMatrix quarter(4, 4);
  for (std::size_t i = 0; i < 4; ++i) quarter(i, i) = 0.25;
  EXPECT_EQ(matrix_to_params(quarter), DensityParams::maximally_mixed());
}

TEST(MatrixToParams, RejectsNonHermitianNamingPair) {
  ComplexMatrix m = golden::rho_th();
  m(3, 1) = Complex(0.5, 0.5);
  try {
    matrix_to_params(m);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("(2,4)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(matrix_to_params(ComplexMatrix(3, 3)), InputError);
}

TEST(MatrixToParams, RandomRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix m = oracle::random_trace_one_hermitian(rng);
    expect_matrix_near(params_to_matrix(matrix_to_params(m)), m, 1e-12);
  }
}

TEST(ApplyRotation, IdentityAndMixedInvariance) {
  expect_matrix_near(apply_rotation(golden::rho_all(), Rotation::II), golden::rho_all(), 0.0);
  const ComplexMatrix quarter = params_to_matrix(DensityParams::maximally_mixed());
  for (Rotation r : kAllRotations) expect_matrix_near(apply_rotation(quarter, r), quarter, 1e-15);
}

TEST(ApplyRotation, XIOnTheoreticalStateMatchesTripleProduct) {
  // Frozen from an explicit R·rho·Rᴴ evaluation with XI = X (x) I.
  using golden::C;
  const ComplexMatrix expected = golden::make_density({{
      {0.31, C(0.1885, -0.2515), 0.31, C(0.0585, 0.1215)},
      {C(0.1885, 0.2515), 0.3165, C(0.1885, 0.2515), C(-0.063, 0.1235)},
      {0.31, C(0.1885, -0.2515), 0.31, C(0.0585, 0.1215)},
      {C(0.0585, -0.1215), C(-0.063, -0.1235), C(0.0585, -0.1215), 0.0565},
  }});
  const ComplexMatrix got = apply_rotation(golden::rho_th(), Rotation::XI);
  expect_matrix_near(got, expected, 1e-12);
  expect_matrix_near(got, oracle::triple_product(rotation_matrix(Rotation::XI), golden::rho_th()), 1e-12);
}

TEST(ApplyRotation, PreservesTraceAndSpectrum) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = oracle::random_trace_one_hermitian(rng);
    const auto before = sym_eigen(real_embedding(rho)).eigenvalues;
    for (Rotation r : kAllRotations) {
      const ComplexMatrix out = apply_rotation(rho, r);
      EXPECT_LT(hermiticity_defect(out), 1e-12);
      EXPECT_NEAR(trace(out).real(), trace(rho).real(), 1e-12);
      EXPECT_NEAR(trace(out).imag(), 0.0, 1e-12);
      const auto after = sym_eigen(real_embedding(out)).eigenvalues;
      for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(after[k], before[k], 1e-9);
    }
  }
}

TEST(ObservablePositions, HAndPAcquisition) {
  using P = std::array<ElementPosition, 2>;
  EXPECT_EQ(observable_positions(ReadoutId(1)), (P{ElementPosition{1, 3}, ElementPosition{2, 4}}));
  EXPECT_EQ(observable_positions(ReadoutId(9)), (P{ElementPosition{1, 3}, ElementPosition{2, 4}}));
  EXPECT_EQ(observable_positions(ReadoutId(10)), (P{ElementPosition{1, 2}, ElementPosition{3, 4}}));
  EXPECT_EQ(observable_positions(ReadoutId(18)), (P{ElementPosition{1, 2}, ElementPosition{3, 4}}));
}

TEST(ReadoutId, RangeAndDecoding) {
  EXPECT_THROW(ReadoutId(0), InputError);
  EXPECT_THROW(ReadoutId(19), InputError);
  EXPECT_EQ(ReadoutId(5).rotation(), Rotation::XX);
  EXPECT_EQ(ReadoutId(5).spin(), Spin::H);
  EXPECT_EQ(ReadoutId(14).rotation(), Rotation::XX);
  EXPECT_EQ(ReadoutId(14).spin(), Spin::P);
  EXPECT_EQ(ReadoutId::all().size(), 18u);
}

ParamRow unit(std::size_t k, double v = 1.0) {
  ParamRow r{};
  r[k - 1] = v;
  return r;
}

TEST(ReadoutRows, IdentityOnHReadsElementOneThree) {
  const ReadoutRows& rows = readout_rows(ReadoutId(1));
  EXPECT_EQ(rows.coefficients[0], unit(3));
  EXPECT_EQ(rows.coefficients[1], unit(12));
  EXPECT_EQ(rows.coefficients[2], unit(7));
  EXPECT_EQ(rows.coefficients[3], unit(15));
  EXPECT_EQ(rows.labels[1].to_string(), "1:left:im");
}

TEST(ReadoutRows, XIOnHFrozenFromSymbolicExpansion) {
  // Left peak of (X (x) I)·rho·(X (x) I)ᴴ at (1,3): x3 + i(x1 - x8)/2;
  // right peak at (2,4): x7 + i(x5 - x10)/2.
  const ReadoutRows& rows = readout_rows(ReadoutId(4));
  ParamRow left_im{}, right_im{};
  left_im[0] = 0.5;
  left_im[7] = -0.5;
  right_im[4] = 0.5;
  right_im[9] = -0.5;
  const std::array<ParamRow, 4> expected = {unit(3), left_im, unit(7), right_im};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t k = 0; k < 16; ++k) EXPECT_NEAR(rows.coefficients[r][k], expected[r][k], 1e-15) << r << "," << k;
}

TEST(ReadoutRows, EveryRowNonZeroWithBoundedNorm) {
  for (ReadoutId id : ReadoutId::all()) {
    for (const ParamRow& row : readout_rows(id).coefficients) {
      double sq = 0.0;
      for (double c : row) sq += c * c;
      EXPECT_GT(sq, 0.0) << id.value();
      EXPECT_LE(sq, 2.0 + 1e-12) << id.value();
    }
  }
}

TEST(ReadoutRows, AgreeWithMatrixModel) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = oracle::random_trace_one_hermitian(rng);
    const DensityParams x = matrix_to_params(rho);
    for (ReadoutId id : ReadoutId::all()) {
      const ComplexMatrix rotated = oracle::triple_product(rotation_matrix(id.rotation()), rho);
      const auto pos = observable_positions(id);
      const ReadoutRows& rows = readout_rows(id);
      for (std::size_t peak = 0; peak < 2; ++peak) {
        const Complex z = rotated(pos[peak].row - 1, pos[peak].col - 1);
        double re = 0.0, im = 0.0;
        for (std::size_t k = 0; k < 16; ++k) {
          re += rows.coefficients[2 * peak][k] * x.x[k];
          im += rows.coefficients[2 * peak + 1][k] * x.x[k];
        }
        EXPECT_NEAR(re, z.real(), 1e-12);
        EXPECT_NEAR(im, z.imag(), 1e-12);
      }
    }
  }
}

TEST(AssembleDesign, FullSystemShapeOrderAndTraceRow) {
  const DesignSystem d = assemble_design(ReadoutId::all(), true);
  ASSERT_EQ(d.rows(), 73u);
  EXPECT_FALSE(d.has_readings);
  EXPECT_EQ(d.labels.front().to_string(), "1:left:re");
  EXPECT_EQ(d.labels[3].to_string(), "1:right:im");
  EXPECT_EQ(d.labels[71].to_string(), "18:right:im");
  EXPECT_TRUE(d.labels.back().is_trace());
  EXPECT_EQ(d.B.back(), 1.0);
  for (std::size_t r = 0; r < 72; ++r) EXPECT_EQ(d.B[r], 0.0);
  const ParamRow tr = trace_row();
  for (std::size_t k = 0; k < 16; ++k) EXPECT_EQ(d.A(72, k), tr[k]);
}

TEST(AssembleDesign, EntriesComeFromConjugationValueSet) {
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<double> allowed = {0, 1, 0.5, 0.25, s, s / 2};
  const DesignSystem d = assemble_design(ReadoutId::all(), true);
  for (double e : d.A.entries()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](double a) { return std::abs(std::abs(e) - a) < 1e-12; });
    EXPECT_TRUE(ok) << e;
  }
}

TEST(AssembleDesign, TwelveReadoutsGiveFortyNineRows) {
  std::vector<ReadoutId> ids;
  for (int i = 1; i <= 12; ++i) ids.emplace_back(i);
  EXPECT_EQ(assemble_design(ids, true).rows(), 49u);
  EXPECT_EQ(assemble_design(ids, false).rows(), 48u);
}

TEST(AssembleDesign, RankAndUniformDiagonalNullVector) {
  const DesignSystem no_trace = assemble_design(ReadoutId::all(), false);
  EXPECT_EQ(no_trace.rows(), 72u);
  EXPECT_EQ(matrix_rank(no_trace.A), 15u);
  std::vector<double> v(16, 0.0);
  v[0] = v[4] = v[7] = v[9] = 1.0;
  double norm = 0.0;
  for (double r : multiply(no_trace.A, v)) norm += r * r;
  EXPECT_LT(std::sqrt(norm), 1e-12);
  EXPECT_EQ(matrix_rank(assemble_design(ReadoutId::all(), true).A), 16u);
}

TEST(AssembleDesign, RejectsDuplicatesAndEmpty) {
  const std::vector<ReadoutId> dup = {ReadoutId(3), ReadoutId(3)};
  EXPECT_THROW(assemble_design(dup, true), InputError);
  EXPECT_THROW(assemble_design(std::vector<ReadoutId>{}, true), InputError);
}

TEST(AssembleDesign, ReadingsMustCoverRequestedSet) {
  const std::vector<ReadoutId> ids = {ReadoutId(1), ReadoutId(10)};
  const ComplexMatrix rho = golden::rho_th_exact();
  auto readings = simulate_readings(rho, ids, 0.0, 1);
  const DesignSystem d = assemble_design(ids, true, readings);
  EXPECT_TRUE(d.has_readings);
  EXPECT_DOUBLE_EQ(d.B[0], readings[0].value.real());
  EXPECT_DOUBLE_EQ(d.B[1], readings[0].value.imag());

  auto missing = readings;
  missing.pop_back();
  EXPECT_THROW(assemble_design(ids, true, missing), InputError);

  auto extra = readings;
  extra.push_back(Reading{ReadoutId(2), Peak::Left, 0.0});
  EXPECT_THROW(assemble_design(ids, true, extra), InputError);

  auto twice = readings;
  twice.push_back(readings.front());
  EXPECT_THROW(assemble_design(ids, true, twice), InputError);
}

TEST(SimulateReadings, NoiselessReadingsAreRotatedElements) {
  const ComplexMatrix rho = golden::rho_th_exact();
  const auto readings = simulate_readings(rho, ReadoutId::all(), 0.0, 42);
  ASSERT_EQ(readings.size(), 36u);
  for (const Reading& r : readings) {
    const auto pos = observable_positions(r.readout)[r.peak == Peak::Left ? 0 : 1];
    const Complex expected = oracle::triple_product(rotation_matrix(r.readout.rotation()), rho)(pos.row - 1, pos.col - 1);
    EXPECT_LE(std::abs(r.value - expected), 1e-15);
  }
}

TEST(SimulateReadings, MixedStateReadsZero) {
  const auto readings = simulate_readings(params_to_matrix(DensityParams::maximally_mixed()), ReadoutId::all(), 0.0, 0);
  for (const Reading& r : readings) EXPECT_LE(std::abs(r.value), 1e-16);
}

TEST(SimulateReadings, DeterministicPerSeed) {
  const auto a = simulate_readings(golden::rho_th_exact(), ReadoutId::all(), 0.01, 1234);
  const auto b = simulate_readings(golden::rho_th_exact(), ReadoutId::all(), 0.01, 1234);
  const auto c = simulate_readings(golden::rho_th_exact(), ReadoutId::all(), 0.01, 1235);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(SimulateReadings, ValidatesInputs) {
  const auto ids = ReadoutId::all();
  EXPECT_THROW(simulate_readings(golden::rho_th_exact(), ids, -0.1, 0), InputError);
  // Printed two-decimal state has trace 0.993.
  EXPECT_THROW(simulate_readings(golden::rho_th(), ids, 0.0, 0), InputError);
  EXPECT_THROW(simulate_readings(golden::rho_6(), ids, 0.0, 0), InputError);
}

}  // namespace
}  // namespace tomoforge
