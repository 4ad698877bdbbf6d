// Copyright 2026 The qpgnet Authors
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

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qpgnet/errors.hpp"
#include "qpgnet/spectral.hpp"

namespace qpgnet {
namespace {

TEST(FrequencyGrid, StepAndSamples) {
  EXPECT_DOUBLE_EQ(make_grid(0, 1, 1500).step(), 1.0 / 1499);
  EXPECT_DOUBLE_EQ(make_grid(0, 1, 2).step(), 1.0);
  EXPECT_NEAR(make_grid(-0.5, 0.5, 101).at(50), 0.0, 1e-15);
}

TEST(FrequencyGrid, RejectsDegenerateWindows) {
  EXPECT_THROW(make_grid(0, 1, 1), ConfigError);
  EXPECT_THROW(make_grid(1, 1, 10), ConfigError);
  EXPECT_THROW(make_grid(1, 0, 10), ConfigError);
}

TEST(InnerProduct, NormalizationAndZero) {
  const auto g = make_grid(0, 1, 1500);
  const auto b = gaussian_bin(g, 0.5, 0.1);
  EXPECT_NEAR(std::abs(inner_product(b, b) - 1.0), 0.0, 1e-9);
  const SpectralFunction zero(g, CVector::Zero(g.size()));
  EXPECT_EQ(inner_product(b, zero), Complex(0.0));
}

TEST(InnerProduct, ConjugateSymmetricExactly) {
  const auto g = make_grid(0, 1, 301);
  CVector a(g.size()), c(g.size());
  for (int i = 0; i < g.size(); ++i) {
    a[i] = Complex(std::sin(7.0 * i), std::cos(3.0 * i));
    c[i] = Complex(std::cos(5.0 * i), -std::sin(2.0 * i));
  }
  const SpectralFunction f(g, a), h(g, c);
  EXPECT_EQ(inner_product(f, h), std::conj(inner_product(h, f)));
}

TEST(InnerProduct, GridMismatchIsUsageError) {
  const auto a = gaussian_bin(make_grid(0, 1, 200), 0.5, 0.1);
  const auto b = gaussian_bin(make_grid(0, 1, 201), 0.5, 0.1);
  EXPECT_THROW(inner_product(a, b), UsageError);
}

TEST(GaussianBin, SeparatedBinsAreOrthogonal) {
  const auto g = make_grid(0, 1, 1500);
  EXPECT_LT(std::abs(inner_product(gaussian_bin(g, 0.25, 0.05), gaussian_bin(g, 0.5, 0.05))), 1e-6);
}

TEST(GaussianBin, PeakAndOverlapMatchClosedForm) {
  const auto g = make_grid(0, 1, 1501);
  const auto b = gaussian_bin(g, 0.5, 0.1);
  Eigen::Index peak;
  b.samples.cwiseAbs().maxCoeff(&peak);
  EXPECT_NEAR(g.at(static_cast<int>(peak)), 0.5, 1e-12);
  const double ov = inner_product(gaussian_bin(g, 0.45, 0.1), gaussian_bin(g, 0.55, 0.1)).real();
  EXPECT_NEAR(ov, oracle::gaussian_overlap(0.1, 0.1), 1e-9);
}

TEST(GaussianBin, IntensityFwhmWithinOneStep) {
  const auto g = make_grid(0, 1, 1500);
  const auto b = gaussian_bin(g, 0.5, 0.1);
  const RVector inten = b.samples.cwiseAbs2();
  const double half = inten.maxCoeff() / 2;
  int lo = 0, hi = g.size() - 1;
  while (inten[lo] < half) ++lo;
  while (inten[hi] < half) --hi;
  EXPECT_NEAR(g.at(hi) - g.at(lo), 0.1, 2 * g.step());
}

TEST(GaussianBin, ResolutionAndPlacementErrors) {
  const auto g = make_grid(0, 1, 101);
  EXPECT_THROW(gaussian_bin(g, 0.5, 0.02), ResolutionError);
  EXPECT_THROW(gaussian_bin(g, 1.5, 0.1), ConfigError);
}

TEST(GaussianBin, NormStableUnderRefinement) {
  const double n1 = gaussian_bin(make_grid(0, 1, 1500), 0.3, 0.1).norm();
  const double n2 = gaussian_bin(make_grid(0, 1, 2999), 0.3, 0.1).norm();
  EXPECT_NEAR(n1, n2, 1e-6);
}

TEST(BoxBin, AmplitudeFromSampleCount) {
  const auto g = make_grid(0, 1, 101);  // step 0.01
  const auto b = box_bin(g, 0.5, 0.1);  // covers 0.45..0.55 inclusive: 11 samples
  int k = 0;
  for (int i = 0; i < g.size(); ++i) k += b.samples[i] != Complex(0.0);
  EXPECT_EQ(k, 11);
  EXPECT_NEAR(b.samples[50].real(), 1.0 / std::sqrt(k * g.step()), 1e-12);
  EXPECT_NEAR(b.norm(), 1.0, 1e-12);
}

TEST(BoxBin, AdjacentBoxesOrthogonalAndFullSpan) {
  const auto g = make_grid(0, 1, 1000);
  EXPECT_EQ(inner_product(box_bin(g, 0.3, 0.2), box_bin(g, 0.6, 0.2)), Complex(0.0));
  const auto full = box_bin(g, 0.5, 1.0);
  EXPECT_TRUE((full.samples.array() == full.samples[0]).all());
  EXPECT_NEAR(full.norm(), 1.0, 1e-12);
}

TEST(BoxBin, Errors) {
  const auto g = make_grid(0, 1, 101);
  EXPECT_THROW(box_bin(g, 0.5, 0.015), ResolutionError);
  EXPECT_THROW(box_bin(g, 0.95, 0.2), ConfigError);
}

TEST(PlaceBins, MirrorSymmetricAndMaximallySpaced) {
  const auto g = make_grid(0, 1, 1000);
  const auto p = place_bins(2, g, 0.5, 0.2);
  ASSERT_TRUE(p.feasible);
  EXPECT_NEAR(p.centers[0], 0.1, 1e-12);
  EXPECT_NEAR(p.centers[1], 0.9, 1e-12);
  EXPECT_EQ(p.centers[0] + p.centers[1], 1.0);
  const auto q = place_bins(7, g, 0.5, 0.1);
  ASSERT_TRUE(q.feasible);
  EXPECT_NEAR(q.spacing, (1.0 - 0.1) / 6, 1e-15);
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(q.centers[k] + q.centers[6 - k], 1.0, 1e-12);
}

TEST(PlaceBins, SingleBinAndInfeasible) {
  const auto g = make_grid(0, 1, 1000);
  const auto one = place_bins(1, g, 0.5, 0.3);
  ASSERT_EQ(one.centers.size(), 1u);
  EXPECT_EQ(one.centers[0], 0.5);
  const auto bad = place_bins(4, g, 0.5, 0.3);
  EXPECT_FALSE(bad.feasible);
  EXPECT_FALSE(bad.bins.has_value());
  EXPECT_TRUE(place_bins(4, g, 0.5, 0.25).feasible);
}

TEST(NetworkUnitary, ValidatesRows) {
  CMatrix bad(2, 2);
  bad << 1, 0, 1, 0;
  EXPECT_THROW(NetworkUnitary{bad}, ValidationError);
  EXPECT_THROW(NetworkUnitary{CMatrix::Constant(1, 2, 1.0)}, ValidationError);
  EXPECT_NO_THROW(NetworkUnitary{phase_pattern_row(PhasePattern::alternating, 5).transpose()});
}

TEST(NetworkUnitary, RandomIsUnitaryAndSeeded) {
  const auto a = NetworkUnitary::random(5, 42);
  const auto b = NetworkUnitary::random(5, 42);
  EXPECT_EQ(a.entries(), b.entries());
  EXPECT_LT((a.entries() * a.entries().adjoint() - CMatrix::Identity(5, 5)).norm(), 1e-12);
  EXPECT_NE(a.entries(), NetworkUnitary::random(5, 43).entries());
}

TEST(SuperpositionMode, RowsMapBins) {
  const auto g = make_grid(0, 1, 1000);
  const auto bins = make_modes(g, {0.25, 0.75}, BinShape{BinProfile::gaussian, 0.1});
  CVector e1(2);
  e1 << 1, 0;
  EXPECT_LT((superposition_mode(e1, bins).samples - bins.modes[0].samples).norm(), 1e-14);
  const auto even = superposition_mode(phase_pattern_row(PhasePattern::equal, 2), bins);
  EXPECT_NEAR(even.norm(), 1.0, 1e-6);
  const auto odd = superposition_mode(phase_pattern_row(PhasePattern::alternating, 2), bins);
  const CVector expect = (bins.modes[0].samples - bins.modes[1].samples) / std::sqrt(2.0);
  EXPECT_LT((odd.samples - expect).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(superposition_mode(CVector::Ones(3), bins), UsageError);
}

TEST(SuperpositionMode, UnitaryKeepsOrthonormality) {
  const auto g = make_grid(0, 1, 1000);
  const auto bins = make_modes(g, {0.2, 0.4, 0.6, 0.8}, BinShape{BinProfile::box, 0.15});
  const auto u = NetworkUnitary::random(4, 7);
  std::vector<SpectralFunction> s;
  for (int k = 0; k < 4; ++k) s.push_back(superposition_mode(u.row(k), bins));
  const ModeSet set(g, s, {0, 0, 0, 0});
  EXPECT_LT(set.orthonormality_error(), 1e-6);
}

TEST(Orthonormalize, LoewdinRemovesOverlap) {
  const auto g = make_grid(0, 1, 800);
  const auto raw = make_modes(g, {0.25, 0.75}, BinShape{BinProfile::gaussian, 0.3});
  EXPECT_GT(raw.orthonormality_error(), 1e-4);
  EXPECT_LT(orthonormalize_symmetric(raw).orthonormality_error(), 1e-12);
}

TEST(SynthesizePump, IdentityGivesOneBin) {
  const auto pg = make_grid(-1, 1, 2001);
  const BinShape shape{BinProfile::gaussian, 0.05};
  const auto p = synthesize_pump(NetworkUnitary::identity(1), {0.3}, {0.5}, shape, pg);
  Eigen::Index peak;
  p.samples.cwiseAbs().maxCoeff(&peak);
  EXPECT_NEAR(pg.at(static_cast<int>(peak)), 0.2, 1e-12);
}

TEST(SynthesizePump, BeamsplitterWeights) {
  const auto pg = make_grid(-1, 1, 4001);
  const BinShape shape{BinProfile::gaussian, 0.02};
  const std::vector<double> in{0.25, 0.75}, out{0.2, 0.9};
  const auto u = NetworkUnitary::balanced_beamsplitter();
  const auto p = synthesize_pump(u, in, out, shape, pg);
  const double peak = bin_shape_value(shape, 0.0);
  for (int m = 0; m < 2; ++m) {
    for (int l = 0; l < 2; ++l) {
      const int idx = static_cast<int>(std::lround((out[m] - in[l] - pg.start()) / pg.step()));
      EXPECT_NEAR(std::abs(p.samples[idx] - u.entries()(m, l) * peak), 0.0, 1e-6 * peak);
    }
  }
}

TEST(SynthesizePump, DegenerateCentersAddCoherently) {
  // out_1 - in_1 == out_2 - in_2, so two components share a pump bin.
  const auto pg = make_grid(-1, 1, 2001);
  const BinShape shape{BinProfile::gaussian, 0.05};
  const std::vector<double> in{0.2, 0.4}, out{0.5, 0.7};
  const auto u = NetworkUnitary::balanced_beamsplitter();
  const auto p = synthesize_pump(u, in, out, shape, pg);
  for (int i = 0; i < pg.size(); i += 37) {
    const double w = pg.at(i);
    Complex direct = 0.0;
    for (int m = 0; m < 2; ++m)
      for (int l = 0; l < 2; ++l) direct += u.entries()(m, l) * bin_shape_value(shape, w - (out[m] - in[l]));
    EXPECT_NEAR(std::abs(p.samples[i] - direct), 0.0, 1e-12);
  }
}

TEST(SynthesizePump, CenterOffGridIsConfigError) {
  const auto pg = make_grid(0, 0.1, 200);
  EXPECT_THROW(synthesize_pump(NetworkUnitary::identity(1), {0.3}, {0.9}, BinShape{}, pg),
               ConfigError);
}

}  // namespace
}  // namespace qpgnet
