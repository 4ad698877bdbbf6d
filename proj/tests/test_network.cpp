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
#include "qpgnet/experiments.hpp"
#include "qpgnet/network.hpp"

namespace qpgnet {
namespace {

// Small end-to-end setup shared by several tests.
struct Pipeline {
  explicit Pipeline(int n = 400, double fwhm_jsa = 0.05, double n_photons = 1.0,
                    NetworkUnitary u = NetworkUnitary::balanced_beamsplitter(),
                    std::vector<double> centers = {0.25, 0.75}, double fwhm_bin = 0.1)
      : g(make_grid(0, 1, n)),
        unit(takagi(build_type0_jsa(g, 0.5, fwhm_jsa), 1.0)),
        pdc(pdc_kernels(unit, n_photons > 0 ? photon_number_scale(unit.coefficients, n_photons) : 0.0, g)),
        net(std::move(u)),
        bins(orthonormalize_symmetric(make_modes(g, centers, BinShape{BinProfile::gaussian, fwhm_bin}))),
        outs(output_peaks(g, net.n_out())),
        sfg(sfg_kernels(set_conversion_unity(build_mqpg_tf(net, bins, outs)).kernel)) {}

  FrequencyGrid g;
  SchmidtData unit;
  PDCKernels pdc;
  NetworkUnitary net;
  ModeSet bins;
  ModeSet outs;
  SFGKernels sfg;
};

SFGKernels zero_sfg(const FrequencyGrid& g) {
  return sfg_kernels(ProcessKernel(g, g, CMatrix::Zero(g.size(), g.size()), KernelKind::tf));
}

TEST(Compose, VacuumPdcHasNoCreationPart) {
  Pipeline p(300, 0.05, 0.0);
  const auto a = compose(p.pdc, p.sfg, p.outs);
  EXPECT_EQ(a.h3.norm(), 0.0);
}

TEST(Compose, ZeroTfPassesOutputsThrough) {
  Pipeline p(300);
  const auto a = compose(p.pdc, zero_sfg(p.g), p.outs);
  EXPECT_LT((a.h1 - p.outs.discrete()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(a.h2.norm(), 0.0);
  EXPECT_EQ(a.h3.norm(), 0.0);
  const auto cov = covariance_from_amplitudes(a);
  EXPECT_LT((cov.entries() - CovarianceMatrix::vacuum(2).entries()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Compose, UnityConversionEmptiesOutputBand) {
  Pipeline p(400, 0.01, 1.0);
  const auto a = compose(p.pdc, p.sfg, p.outs);
  for (int k = 0; k < a.modes(); ++k) EXPECT_LT(a.h1.col(k).norm(), 1e-3);
  EXPECT_LT(a.commutator_residuals().cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_NEAR(a.h2_function(0).norm(), a.h2.col(0).norm(), 1e-12);
}

TEST(Compose, GridMismatchIsUsageError) {
  Pipeline p(300);
  const auto other = output_peaks(make_grid(0, 1, 301), 2);
  EXPECT_THROW(compose(p.pdc, p.sfg, other), UsageError);
}

TEST(Covariance, PdcBinsShowTwoModeSqueezing) {
  Pipeline p(400);
  const auto s = pdc_bin_covariance(p.pdc, p.bins);
  for (int i = 0; i < 4; ++i) EXPECT_GT(s(i, i), 0.5);
  EXPECT_GT(s(0, 2), 0.0);
  EXPECT_LT(s(1, 3), 0.0);
  EXPECT_LT(std::abs(s(0, 3)), 1e-10);
  EXPECT_LT(std::abs(s(0, 1)), 1e-10);
}

TEST(Covariance, BeamsplitterOutputsAreSqueezedAndDecoupled) {
  Pipeline p(400);
  const auto s = covariance_from_amplitudes(compose(p.pdc, p.sfg, p.outs));
  for (int k = 0; k < 2; ++k) EXPECT_LT(std::min(s(2 * k, 2 * k), s(2 * k + 1, 2 * k + 1)), 0.5);
  EXPECT_LT(s.block(0, 1).cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_EQ(s.entries(), s.entries().transpose());
  EXPECT_TRUE(check_physical(s).physical);
}

TEST(Covariance, NarrowJsaMatchesTwoModeSqueezedVacuum) {
  Pipeline p(800, 0.005, 1.0);
  const auto s = pdc_bin_covariance(p.pdc, p.bins);
  const double r = 0.5 * std::acosh(2 * s(0, 0));
  EXPECT_LT((s.entries() - oracle::tms_covariance(r)).cwiseAbs().maxCoeff(), 1e-2);
}

TEST(Covariance, BinsWithoutPartnersAreUncorrelated) {
  // Both bins above the degeneracy point: their partners are not measured, so
  // each bin is thermal and the two are uncorrelated.
  // Narrow bins keep the Gaussian tails off the mirror images.
  Pipeline p(800, 0.005, 1.0, NetworkUnitary::balanced_beamsplitter(), {0.65, 0.85}, 0.05);
  const auto s = pdc_bin_covariance(p.pdc, p.bins);
  EXPECT_LT(s.block(0, 1).cwiseAbs().maxCoeff(), 1e-4);
  for (int k = 0; k < 2; ++k) {
    const auto b = s.block(k, k);
    EXPECT_GT(b(0, 0), 0.5);
    EXPECT_NEAR(b(0, 0), b(1, 1), 1e-6);
    EXPECT_LT(std::abs(b(0, 1)), 1e-6);
  }
}

TEST(Covariance, ZeroGainIsVacuumAndBinsMustBeOrthonormal) {
  Pipeline p(300, 0.05, 0.0);
  EXPECT_LT((pdc_bin_covariance(p.pdc, p.bins).entries() - CovarianceMatrix::vacuum(2).entries()).norm(), 1e-15);
  const auto overlapping = make_modes(p.g, {0.45, 0.55}, BinShape{BinProfile::gaussian, 0.1});
  EXPECT_THROW(pdc_bin_covariance(p.pdc, overlapping), ValidationError);
}

TEST(Covariance, ConstructorValidates) {
  RMatrix a = RMatrix::Identity(3, 3);
  EXPECT_THROW(CovarianceMatrix{a}, ValidationError);
  RMatrix b = RMatrix::Identity(2, 2);
  b(0, 1) = 0.1;
  EXPECT_THROW(CovarianceMatrix{b}, ValidationError);
}

TEST(Purity, ClosedForms) {
  EXPECT_NEAR(purity(CovarianceMatrix::vacuum(3)).value, 1.0, 1e-15);
  EXPECT_NEAR(purity(CovarianceMatrix(RMatrix::Identity(2, 2))).value, 0.5, 1e-15);
  for (unsigned seed : {1u, 2u, 3u}) {
    const RMatrix s = oracle::random_symplectic(3, seed);
    EXPECT_NEAR(purity(CovarianceMatrix(0.5 * s * s.transpose())).value, 1.0, 1e-8);
  }
}

TEST(Purity, FlagsUnphysicalAndRejectsSingular) {
  const auto p = purity(CovarianceMatrix(0.4 * RMatrix::Identity(2, 2)));
  EXPECT_TRUE(p.exceeds_unity);
  EXPECT_EQ(p.value, 1.0);
  EXPECT_NEAR(p.raw, 1.25, 1e-12);
  RMatrix z = RMatrix::Identity(2, 2);
  z(1, 1) = 0.0;
  EXPECT_THROW(purity(CovarianceMatrix(z)), NumericalError);
}

TEST(Squeezing, ClosedForms) {
  EXPECT_NEAR(squeezing_db(CovarianceMatrix::vacuum(2)), 0.0, 1e-12);
  RMatrix d = RMatrix::Zero(2, 2);
  d(0, 0) = 0.25;
  d(1, 1) = 1.0;
  EXPECT_NEAR(squeezing_db(CovarianceMatrix(d)), 10 * std::log10(2.0), 1e-12);
  EXPECT_NEAR(10 * std::log10(2.0), 3.0103, 1e-4);
}

TEST(Physicality, SymplecticEigenvalues) {
  const auto vac = check_physical(CovarianceMatrix::vacuum(2));
  EXPECT_TRUE(vac.physical);
  EXPECT_NEAR(vac.symplectic_eigenvalues.maxCoeff(), 0.5, 1e-14);
  const auto tms = check_physical(CovarianceMatrix(oracle::tms_covariance(0.7)));
  EXPECT_NEAR(tms.symplectic_eigenvalues[0], 0.5, 1e-10);
  EXPECT_NEAR(tms.symplectic_eigenvalues[1], 0.5, 1e-10);
  EXPECT_FALSE(check_physical(CovarianceMatrix(0.4 * RMatrix::Identity(2, 2))).physical);
  RMatrix thermal = 1.5 * RMatrix::Identity(2, 2);
  EXPECT_NEAR(check_physical(CovarianceMatrix(thermal)).min(), 1.5, 1e-12);
}

TEST(Oracle, IdentityAndBeamsplitterOnTms) {
  const double r = 0.6;
  const CovarianceMatrix tms(oracle::tms_covariance(r));
  EXPECT_LT((ideal_output_oracle(NetworkUnitary::identity(2), tms).entries() - tms.entries()).norm(), 1e-15);
  const auto out = ideal_output_oracle(NetworkUnitary::balanced_beamsplitter(), tms);
  EXPECT_LT(out.block(0, 1).cwiseAbs().maxCoeff(), 1e-12);
  const RMatrix sms = oracle::sms_covariance(r);
  RMatrix swapped = sms;
  std::swap(swapped(0, 0), swapped(1, 1));
  for (int k = 0; k < 2; ++k) {
    const RMatrix b = out.block(k, k);
    EXPECT_LT(std::min((b - sms).norm(), (b - swapped).norm()), 1e-12);
  }
}

TEST(Oracle, PreservesPurityAndValidates) {
  const RMatrix s = oracle::random_symplectic(3, 5);
  RMatrix sig = 0.5 * s * s.transpose();
  sig.diagonal().array() += 0.2;
  const CovarianceMatrix c(sig);
  const auto out = ideal_output_oracle(NetworkUnitary::random(3, 9), c);
  EXPECT_NEAR(purity(out).value, purity(c).value, 1e-8);
  EXPECT_THROW(ideal_output_oracle(NetworkUnitary(phase_pattern_row(PhasePattern::equal, 3).transpose()), c),
               ValidationError);
}

TEST(Symplectic, EmbeddingIsOrthogonalForUnitaries) {
  const RMatrix s = symplectic_embedding(NetworkUnitary::random(4, 3).entries());
  EXPECT_LT((s * s.transpose() - RMatrix::Identity(8, 8)).norm(), 1e-12);
}

TEST(Properties, PipelineMatchesOracleForRandomUnitary) {
  Pipeline p(500, 0.05, 1.0, NetworkUnitary::random(3, 17), {0.2, 0.5, 0.8}, 0.06);
  const auto out = covariance_from_amplitudes(compose(p.pdc, p.sfg, p.outs));
  const auto ref = ideal_output_oracle(p.net, pdc_bin_covariance(p.pdc, p.bins));
  EXPECT_LT((out.entries() - ref.entries()).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Properties, OutputGlobalPhaseOnlyRotatesItsBlock) {
  Pipeline p(400);
  const auto base = covariance_from_amplitudes(compose(p.pdc, p.sfg, p.outs));
  const double phi = 0.7;
  ModeSet rotated = p.outs;
  rotated.modes[0].samples *= std::polar(1.0, phi);
  const auto tf = set_conversion_unity(build_mqpg_tf(p.net, p.bins, rotated)).kernel;
  const auto s = covariance_from_amplitudes(compose(p.pdc, sfg_kernels(tf), rotated));
  EXPECT_NEAR(purity(s).value, purity(base).value, 1e-10);
  EXPECT_NEAR(squeezing_db(s), squeezing_db(base), 1e-10);
  EXPECT_LT((s.block(1, 1) - base.block(1, 1)).norm(), 1e-10);
  // Block 0 is a rotation of the original block.
  const RMatrix b0 = base.block(0, 0), s0 = s.block(0, 0);
  EXPECT_NEAR(b0.trace(), s0.trace(), 1e-10);
  EXPECT_NEAR(b0.determinant(), s0.determinant(), 1e-10);
}

TEST(Properties, ZeroGainLimitIsMonotone) {
  const auto g = make_grid(0, 1, 300);
  const auto unit = takagi(build_type0_jsa(g, 0.5, 0.05), 1.0);
  const auto bins = orthonormalize_symmetric(make_modes(g, {0.25, 0.75}, BinShape{BinProfile::gaussian, 0.1}));
  double prev_gamma = 1.0 + 1e-15, prev_s = -1e-15;
  for (double scale : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const auto s = pdc_bin_covariance(pdc_kernels(unit, scale, g), bins);
    const auto rotated = ideal_output_oracle(NetworkUnitary::balanced_beamsplitter(), s);
    const double gamma = purity(CovarianceMatrix(RMatrix(rotated.block(0, 0)))).value;
    const double sq = squeezing_db(rotated);
    if (scale == 0.0) {
      EXPECT_NEAR(gamma, 1.0, 1e-12);
      EXPECT_NEAR(sq, 0.0, 1e-12);
    }
    EXPECT_LE(gamma, prev_gamma);
    EXPECT_GE(sq, prev_s);
    prev_gamma = gamma;
    prev_s = sq;
  }
}

}  // namespace
}  // namespace qpgnet
