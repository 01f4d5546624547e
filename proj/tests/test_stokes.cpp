#include <gtest/gtest.h>

#include <algorithm>

#include "ptspec/stokes.hpp"

using namespace ptspec;
using namespace ptspec::stokes;

namespace {

// Kind of the line at p*pi/q, or nullopt if the direction is not a line.
std::optional<Kind> kind_at(const StokesDiagram& d, int p, int q) {
  const auto l = d.find(pi * p / q);
  if (!l) return std::nullopt;
  return l->kind;
}

std::vector<std::pair<int, int>> reduced_multiset(const StokesDiagram& d) {
  std::vector<std::pair<int, int>> out;
  for (const Line& l : d.lines) out.push_back(l.reduced());
  std::sort(out.begin(), out.end());
  return out;
}

bool near_any(double theta, const std::vector<double>& angles, double tol) {
  return std::any_of(angles.begin(), angles.end(), [&](double a) { return angle_distance(a, theta) < tol; });
}

}  // namespace

TEST(AsymptoticLines, QuinticPositive) {
  const auto d = asymptotic_lines(ix_power(5));
  for (int p : {15, 27}) EXPECT_EQ(kind_at(d, p, 14), Kind::antistokes) << p;
  for (int p : {1, 13, 17, 25}) EXPECT_EQ(kind_at(d, p, 14), Kind::stokes) << p;
}

TEST(AsymptoticLines, QuinticNegative) {
  const auto d = asymptotic_lines(neg_ix_power(5));
  for (int p : {17, 25}) EXPECT_EQ(kind_at(d, p, 14), Kind::antistokes) << p;
  for (int p : {15, 19, 23, 27}) EXPECT_EQ(kind_at(d, p, 14), Kind::stokes) << p;
}

TEST(AsymptoticLines, HarmonicOscillator) {
  const auto d = asymptotic_lines({1, 0, 1, 0});
  const auto anti = d.angles(Kind::antistokes);
  ASSERT_EQ(anti.size(), 4u);
  for (double a : {0.0, pi / 2, pi, 3 * pi / 2}) EXPECT_TRUE(near_any(a, anti, 1e-14));
}

TEST(AsymptoticLines, StructuralInvariants) {
  for (int K = 2; K <= 9; ++K)
    for (int M = 0; 2 * M <= K; ++M)
      for (int s : {+1, -1}) {
        const PotentialSpec spec{M, K - 2 * M, s, 0.0};
        const auto d = asymptotic_lines(spec);
        for (Kind kind : {Kind::antistokes, Kind::stokes}) {
          auto a = d.angles(kind);
          ASSERT_EQ(int(a.size()), K + 2);
          std::sort(a.begin(), a.end());
          for (std::size_t i = 0; i < a.size(); ++i)
            EXPECT_NEAR(wrap_angle(a[(i + 1) % a.size()] - a[i]), 2 * pi / (K + 2), 1e-12);
        }
        // Interleaving at offset pi/(K+2).
        for (double a : d.angles(Kind::antistokes))
          EXPECT_TRUE(near_any(a + pi / (K + 2), d.angles(Kind::stokes), 1e-12));
        // PT mirror symmetry of the anti-Stokes set.
        for (double a : d.angles(Kind::antistokes))
          EXPECT_TRUE(near_any(pi - a, d.angles(Kind::antistokes), 1e-12));
        // Odd K: every angle is an odd multiple of pi/(2(K+2)).
        if (K % 2 == 1)
          for (const Line& l : d.lines) EXPECT_EQ(l.numerator % 2, 1);
      }
}

TEST(AsymptoticLines, InvariantUnderCanonicalize) {
  for (const PotentialSpec& s : {PotentialSpec{0, 5, -1, 0}, PotentialSpec{0, 3, -1, 0}, PotentialSpec{1, 4, -1, 0}}) {
    const auto a = asymptotic_lines(s);
    const auto b = asymptotic_lines(canonicalize(s));
    EXPECT_EQ(reduced_multiset(a), reduced_multiset(b));
    for (const Line& l : a.lines) EXPECT_EQ(b.find(l.angle())->kind, l.kind);
  }
}

TEST(BbRays, Quintic) {
  const RayPair r = bb_rays(5);
  EXPECT_NEAR(r.theta_right, 25 * pi / 14, 1e-14);
  EXPECT_NEAR(r.theta_left, 17 * pi / 14, 1e-14);
  EXPECT_THROW(bb_rays(1), Error);
}

TEST(BbRays, AreAntiStokesOfNegativePower) {
  for (int m : {3, 5, 7}) {
    const auto d = asymptotic_lines(canonicalize({0, m, -1, 0}));
    const RayPair r = bb_rays(m);
    EXPECT_EQ(d.find(r.theta_right)->kind, Kind::antistokes);
    EXPECT_EQ(d.find(r.theta_left)->kind, Kind::antistokes);
  }
}

TEST(WedgeRays, Quintic) {
  const RayPair real = wedge_rays(ix_power(5), WedgeMode::contains_real_axis);
  EXPECT_NEAR(real.theta_right, 27 * pi / 14, 1e-12);
  EXPECT_NEAR(real.theta_left, 15 * pi / 14, 1e-12);

  const RayPair off = wedge_rays(ix_power(5), WedgeMode::off_axis);
  EXPECT_NEAR(off.theta_right, 3 * pi / 14, 1e-12);
  EXPECT_NEAR(off.theta_left, 11 * pi / 14, 1e-12);

  const RayPair neg = wedge_rays(neg_ix_power(5), WedgeMode::off_axis);
  EXPECT_NEAR(neg.theta_right, bb_rays(5).theta_right, 1e-12);
  EXPECT_NEAR(neg.theta_left, bb_rays(5).theta_left, 1e-12);
}

TEST(WedgeRays, AlwaysPtMirrored) {
  for (int K : {3, 5, 7, 9})
    for (const PotentialSpec& s : {ix_power(K), neg_ix_power(K)})
      for (WedgeMode m : {WedgeMode::contains_real_axis, WedgeMode::off_axis}) {
        const RayPair r = wedge_rays(s, m);
        EXPECT_LT(angle_distance(r.theta_left, pi - r.theta_right), 1e-12);
        EXPECT_GT(std::cos(r.theta_right), 0.0);
      }
}

TEST(WedgeRays, CubicRealAxisPairIsTheLowerWedgePairOfNegativeCube) {
  const RayPair r = wedge_rays(neg_ix_power(3), WedgeMode::contains_real_axis);
  EXPECT_NEAR(r.theta_right, bb_rays(3).theta_right, 1e-12);
  EXPECT_NEAR(r.theta_left, bb_rays(3).theta_left, 1e-12);
}

TEST(TraceLine, HarmonicOscillatorStaysOnRealAxis) {
  const Trace t = trace_line({1, 0, 1, 0}, 1.0, 1.0, Kind::antistokes, 0, 5.0);
  for (const cplx& p : t.points) EXPECT_LT(std::abs(p.imag()), 1e-6);
  EXPECT_GT(t.points.back().real(), 5.5);
}

TEST(TraceLine, QuinticAsymptotesAndActionInvariant) {
  const PotentialSpec spec = ix_power(5);
  const auto d = asymptotic_lines(spec);
  const auto tp = turning_points(spec, 1.0);
  int completed = 0;
  for (Kind kind : {Kind::antistokes, Kind::stokes}) {
    int completed_kind = 0;
    for (int branch = 0; branch < 3; ++branch) {
      Trace t;
      try {
        t = trace_line(spec, 1.0, tp.pair_plus, kind, branch, 8.0);
      } catch (const Error&) {
        continue;  // a line that runs into another turning point
      }
      ++completed_kind;
      EXPECT_TRUE(near_any(std::arg(t.points.back()), d.angles(kind), 0.05));
      for (const cplx& S : t.action) {
        const double off = kind == Kind::antistokes ? std::abs(S.imag()) : std::abs(S.real());
        EXPECT_LT(off, 1e-6 * (1.0 + std::abs(S)));
      }
    }
    EXPECT_GE(completed_kind, 2);
    completed += completed_kind;
  }
  EXPECT_GE(completed, 5);
}

TEST(TraceLine, Errors) {
  EXPECT_THROW(trace_line(ix_power(5), 1.0, 0.5, Kind::stokes, 0, 1.0), Error);
  EXPECT_THROW(trace_line(ix_power(5, 1.0), 1.0, 1.0, Kind::stokes, 0, 1.0), Error);
  const auto tp = turning_points(ix_power(5), 1.0);
  EXPECT_THROW(trace_line(ix_power(5), 1.0, tp.pair_plus, Kind::stokes, 3, 1.0), Error);
  // From e^{-i pi/10}, one Stokes branch connects to a neighbouring turning point.
  const cplx x0 = turning_points({2, 1, 1, 0}, 1.0).pair_plus;
  EXPECT_THROW(trace_line(ix_power(5), 1.0, x0, Kind::stokes, 1, 8.0), Error);
}
