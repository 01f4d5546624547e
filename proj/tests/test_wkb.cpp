#include <gtest/gtest.h>

#include "ptspec/reference.hpp"
#include "ptspec/wkb.hpp"

using namespace ptspec;
using namespace ptspec::wkb;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST(Gamma, MatchesKnownValuesAndRecurrence) {
  EXPECT_LT(rel(std::tgamma(0.5), std::sqrt(pi)), 1e-15);
  for (double z = 0.1; z <= 3.0; z += 0.037) EXPECT_LT(rel(std::tgamma(z + 1.0), z * std::tgamma(z)), 1e-14) << z;
}

TEST(ClosedForms, PublishedValues) {
  EXPECT_LT(rel(energy_nm(0, 2), 0.8906863480), 5e-10);
  EXPECT_LT(rel(energy_nm(10, 2), 68.96194510), 5e-10);
  EXPECT_LT(rel(energy_bb(0, 2), 1.771244715), 5e-10);
  EXPECT_LT(rel(energy_bb(3, 2), 28.54706617), 5e-10);
}

TEST(ClosedForms, RatioOfExpansions) {
  for (int n = 0; n <= 6; ++n) {
    EXPECT_LT(rel(energy_bb(n, 1), energy_nm(n, 1)), 1e-12);
    EXPECT_LT(rel(energy_bb(n, 2) / energy_nm(n, 2), 1.988629015), 1e-9);
    EXPECT_LT(rel(energy_bb(n, 3) / energy_nm(n, 3), 3.523156867), 1e-9);
  }
}

TEST(ClosedForms, RatioIndependentOfLevel) {
  for (int N = 1; N <= 5; ++N) {
    const double r0 = energy_bb(0, N) / energy_nm(0, N);
    for (int n = 1; n <= 20; ++n) EXPECT_LT(rel(energy_bb(n, N) / energy_nm(n, N), r0), 1e-12);
  }
}

TEST(ClosedForms, LowerHalfChoiceExceedsExpansionForHigherDegree) {
  for (int N = 2; N <= 6; ++N)
    for (int n = 0; n <= 20; ++n) EXPECT_GT(energy_bb(n, N), energy_nm(n, N));
}

TEST(ClosedForms, GeneralFormulaContainsBoth) {
  for (int N = 1; N <= 3; ++N)
    for (int n = 0; n <= 3; ++n) {
      EXPECT_LT(rel(energy_general(n, 1, 2 * N - 1), energy_bb(n, N)), 1e-12);
      EXPECT_LT(rel(energy_general(n, N, 1), energy_nm(n, N)), 1e-12);
    }
}

TEST(ClosedForms, HarmonicOscillator) {
  for (int n = 0; n <= 10; ++n) EXPECT_LT(std::abs(energy_general(n, 1, 0) - (2 * n + 1)), 1e-12);
}

TEST(ClosedForms, PowerLawScaling) {
  // E(n) = C (n + 1/2)^p with p = (4M + 2 eps)/(2M + eps + 2); integer n only
  // reach ratios (n' + 1/2)/(n + 1/2), so check the law on those.
  for (auto [M, e] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {1, 3}, {2, 1}, {3, 2}}) {
    const double p = (4.0 * M + 2.0 * e) / (2.0 * M + e + 2.0);
    for (int n : {0, 1, 3, 8}) {
      const double ratio = energy_general(2 * n + 1, M, e) / energy_general(n, M, e);
      EXPECT_LT(rel(ratio, std::pow((2.0 * n + 1.5) / (n + 0.5), p)), 1e-12);
    }
  }
}

TEST(ClosedForms, Preconditions) {
  EXPECT_THROW(energy_nm(-1, 2), Error);
  EXPECT_THROW(energy_bb(0, 0), Error);
  EXPECT_THROW(energy_general(0, 0, 5), Error);
}

TEST(QuantizationIntegral, HarmonicOscillator) {
  for (int n = 0; n <= 2; ++n)
    EXPECT_NEAR(quantization_integral({1, 0, 1, 0}, 2.0 * n + 1.0), (n + 0.5) * pi, 1e-8);
}

TEST(QuantizationIntegral, ReproducesClosedForm) {
  EXPECT_NEAR(quantization_integral({1, 3, 1, 0}, energy_general(0, 1, 3)), 0.5 * pi, 1e-6);
  EXPECT_NEAR(quantization_integral({2, 1, 1, 0}, energy_general(1, 2, 1)), 1.5 * pi, 1e-6);
  for (auto [M, e] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 1}, {1, 5}, {3, 1}})
    for (int n : {0, 1, 2, 5})
      EXPECT_NEAR(quantization_integral({M, e, 1, 0}, energy_general(n, M, e)), (n + 0.5) * pi, 1e-6)
          << M << "," << e << " n=" << n;
}

TEST(QuantumNumber, Examples) {
  EXPECT_NEAR(quantum_number({1, 0, 1, 0}, 5.0), 2.0, 1e-8);
  EXPECT_NEAR(quantum_number({1, 3, 1, 0}, energy_general(2, 1, 3)), 2.0, 1e-4);
  double prev = -1.0;
  for (double E = 1.0; E <= 100.0; E += 0.5) {
    const double q = quantum_number({2, 1, 1, 0}, E);
    EXPECT_GT(q, prev);
    prev = q;
  }
}

TEST(QuantumNumber, RoundLabel) {
  EXPECT_EQ(round_label(2.1), 2);
  EXPECT_EQ(round_label(1.85), 2);
  EXPECT_EQ(round_label(2.3), -1);
  EXPECT_EQ(round_label(-0.1), 0);
  EXPECT_EQ(round_label(-0.9), -1);
}

TEST(QuantizationIntegral, DegeneratePathIsRejected) {
  // Endpoints beyond the turning points put zeros of E - V inside the chord.
  EXPECT_THROW(action_between({1, 0, 1, 0}, 1.0, -2.0, 2.0), Error);
  EXPECT_THROW(action_between({1, 0, 1, 0}, 1.0, 1.0, 1.0), Error);
}

TEST(RayReference, PicksTurningPairNearestTheRay) {
  // Real-axis rays of (ix)^5 see the expansion energies, off-axis rays the
  // lower-half-plane ones (mirrored).
  const RayReference real_axis(ix_power(5), -pi / 14.0);
  const RayReference off_axis(ix_power(5), 3.0 * pi / 14.0);
  for (int n = 0; n <= 4; ++n) {
    EXPECT_LT(rel(real_axis.energy(n), energy_nm(n, 2)), 1e-10);
    EXPECT_LT(rel(off_axis.energy(n), energy_bb(n, 2)), 1e-10);
    EXPECT_NEAR(real_axis.quantum_number(energy_nm(n, 2)), n, 1e-9);
  }
  const RayReference ho({1, 0, 1, 0}, 0.0);
  EXPECT_NEAR(ho.energy(3), 7.0, 1e-10);
  EXPECT_NEAR(ho.spacing(7.0), 2.0, 1e-10);
}
