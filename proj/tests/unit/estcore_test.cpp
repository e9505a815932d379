#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "aerostate/core/angles.hpp"
#include "aerostate/core/descriptor.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/core/gaussian.hpp"
#include "aerostate/core/matching.hpp"
#include "aerostate/core/parallel.hpp"
#include "aerostate/core/quaternion.hpp"
#include "aerostate/core/random.hpp"
#include "aerostate/core/resample.hpp"
#include "aerostate/core/sigma_points.hpp"
#include "support/generators.hpp"

namespace aerostate {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(QuatRotate, IdentityLeavesVectorUnchanged) {
  const Eigen::Vector3d v = quat_rotate(Quaternion::identity(), {1, 2, 3});
  EXPECT_NEAR((v - Eigen::Vector3d(1, 2, 3)).norm(), 0.0, 1e-12);
}

TEST(QuatRotate, QuarterTurnYawMapsXToY) {
  const Eigen::Vector3d v = quat_rotate(quat_from_euler({0, 0, kPi / 2}), {1, 0, 0});
  EXPECT_NEAR((v - Eigen::Vector3d(0, 1, 0)).norm(), 0.0, 1e-9);
}

TEST(QuatRotate, MatchesRotationMatrixOracle) {
  // Frozen from Rz(0.7) Ry(-0.2) Rx(0.1) * v computed with an independent
  // rotation library.
  const Eigen::Vector3d expected(-0.560899916404305, -1.8817078483789103, 9.60648566631559);
  const Eigen::Vector3d v = quat_rotate(quat_from_euler({0.1, -0.2, 0.7}), {0.3, -0.1, 9.8});
  EXPECT_NEAR((v - expected).norm(), 0.0, 1e-12);
  const Eigen::Vector3d oracle = testing::rotation_oracle(0.1, -0.2, 0.7) * Eigen::Vector3d(0.3, -0.1, 9.8);
  EXPECT_NEAR((v - oracle).norm(), 0.0, 1e-12);
}

TEST(QuatRotate, RejectsNonUnitQuaternion) {
  EXPECT_THROW(quat_rotate(Quaternion{2.0, 0, 0, 0}, {1, 0, 0}), InvalidArgument);
}

TEST(QuatFromEuler, ZeroIsIdentity) {
  const Quaternion q = quat_from_euler({0, 0, 0});
  EXPECT_DOUBLE_EQ(q.w, 1.0);
  EXPECT_DOUBLE_EQ(q.x, 0.0);
  EXPECT_DOUBLE_EQ(q.y, 0.0);
  EXPECT_DOUBLE_EQ(q.z, 0.0);
}

TEST(QuatFromEuler, QuarterTurnYawHalfAngle) {
  const Quaternion q = quat_from_euler({0, 0, kPi / 2});
  EXPECT_NEAR(q.w, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(q.z, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(q.x, 0.0, 1e-12);
  EXPECT_NEAR(q.y, 0.0, 1e-12);
}

TEST(QuatFromEuler, MatchesMatrixCompositionOracle) {
  // Quaternion of Rz(0.1) Ry(0.2) Rx(0.3), frozen from an independent library
  // (scalar part chosen positive).
  const Quaternion q = quat_from_euler({0.3, 0.2, 0.1});
  EXPECT_NEAR(q.w, 0.9833474432563557, 1e-12);
  EXPECT_NEAR(q.x, 0.14357217502739186, 1e-12);
  EXPECT_NEAR(q.y, 0.10602051106179562, 1e-12);
  EXPECT_NEAR(q.z, 0.0342707985504821, 1e-12);
}

TEST(QuatFromEuler, RoundTripsAwayFromGimbalLock) {
  testing::Gen gen(11);
  for (int i = 0; i < 1000; ++i) {
    const EulerAttitude att = gen.attitude(1.5);
    const EulerAttitude back = euler_from_quat(quat_from_euler(att));
    EXPECT_NEAR(back.roll, att.roll, 1e-9);
    EXPECT_NEAR(back.pitch, att.pitch, 1e-9);
    EXPECT_NEAR(angle_wrap(back.yaw - att.yaw), 0.0, 1e-9);
  }
}

TEST(Quaternion, CompositionStaysUnit) {
  testing::Gen gen(5);
  Quaternion q = Quaternion::identity();
  for (int i = 0; i < 10000; ++i) q = q * gen.unit_quaternion();
  EXPECT_NEAR(q.norm(), 1.0, 1e-9);
}

TEST(EulerAttitude, ValidityRequiresTiltBelowQuarterTurn) {
  EXPECT_TRUE(is_valid({0.1, -0.2, 3.0}));
  EXPECT_FALSE(is_valid({kPi / 2, 0.0, 0.0}));
  EXPECT_FALSE(is_valid({0.0, -1.6, 0.0}));
}

TEST(SigmaPoints, UnitCaseWithZeroLambda) {
  const GaussianVec g{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1)};
  const SigmaPointSet set = sigma_points(g, {1.0, 2.0, 0.0});
  ASSERT_EQ(set.count(), 3);
  EXPECT_DOUBLE_EQ(set.points(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(set.points(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(set.points(0, 2), -1.0);
  EXPECT_DOUBLE_EQ((set.points * set.mean_weights)(0), 0.0);
}

TEST(SigmaPoints, StructureAndWeights) {
  testing::Gen gen(3);
  const GaussianVec g = gen.gaussian(4);
  const SigmaPointSet set = sigma_points(g);
  ASSERT_EQ(set.count(), 9);
  EXPECT_NEAR(set.mean_weights.sum(), 1.0, 1e-9);
  EXPECT_NEAR((set.points.col(0) - g.mean).norm(), 0.0, 1e-15);
  for (int i = 1; i <= 4; ++i) {
    EXPECT_NEAR((set.points.col(i) + set.points.col(i + 4) - 2.0 * g.mean).norm(), 0.0, 1e-12);
  }
}

TEST(SigmaPoints, ReconstructsRandomTwoDimensionalGaussian) {
  testing::Gen gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    const GaussianVec g = gen.gaussian(2);
    const GaussianVec back = unscented_transform(sigma_points(g), Eigen::MatrixXd::Zero(2, 2));
    EXPECT_LT((back.mean - g.mean).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((back.cov - g.cov).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(SigmaPoints, JitterRecoversSlightlyIndefiniteCovariance) {
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 1.0, 1.0, 1.0 - 1e-12;
  EXPECT_NO_THROW(sigma_points({Eigen::VectorXd::Zero(2), cov}));
}

TEST(SigmaPoints, StronglyIndefiniteCovarianceIsDegenerate) {
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 0.0, 0.0, -1.0;
  EXPECT_THROW(sigma_points({Eigen::VectorXd::Zero(2), cov}), NumericalDegeneracy);
}

TEST(UnscentedTransform, LinearMapIsExact) {
  testing::Gen gen(23);
  const GaussianVec g = gen.gaussian(3);
  Eigen::MatrixXd a(2, 3);
  a << 1.0, -2.0, 0.5, 0.3, 0.0, 4.0;
  const Eigen::MatrixXd noise = gen.spd(2, 0.1);
  const SigmaPointSet moved = transform_points(sigma_points(g), [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return a * x;
  });
  const GaussianVec out = unscented_transform(moved, noise);
  EXPECT_LT((out.mean - a * g.mean).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((out.cov - (a * g.cov * a.transpose() + noise)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(UnscentedTransform, SquareMapMeanMatchesMonteCarlo) {
  const GaussianVec g{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1)};
  const SigmaPointSet moved =
      transform_points(sigma_points(g), [](const Eigen::VectorXd& x) -> Eigen::VectorXd { return x.array().square(); });
  const double ut_mean = unscented_transform(moved, Eigen::MatrixXd::Zero(1, 1)).mean(0);

  // Monte Carlo oracle for E[x^2] with x ~ N(0, 1).
  testing::Gen gen(99);
  constexpr int kSamples = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = gen.normal();
    sum += x * x;
    sum_sq += x * x * x * x;
  }
  const double mc_mean = sum / kSamples;
  const double standard_error = std::sqrt((sum_sq / kSamples - mc_mean * mc_mean) / kSamples);
  EXPECT_LE(std::abs(ut_mean - mc_mean), 3.0 * standard_error);
}

TEST(GaussianProb, PeakOfStandardNormal) {
  EXPECT_NEAR(gaussian_prob(0.0, 1.0), 1.0 / std::sqrt(2.0 * kPi), 1e-15);
  EXPECT_NEAR(gaussian_prob(0.0, 1.0), 0.3989, 1e-4);
}

TEST(GaussianProb, OneSigmaIsPeakTimesExpMinusHalf) {
  for (double sigma : {0.01, 0.3, 2.0}) {
    EXPECT_NEAR(gaussian_prob(sigma, sigma), gaussian_prob(0.0, sigma) * std::exp(-0.5), 1e-12);
  }
}

TEST(GaussianProb, MatchesPdfDefinition) {
  // Density of N(0, 0.05^2) at 0.1, frozen from an independent statistics
  // library.
  EXPECT_NEAR(gaussian_prob(0.1, 0.05), 1.079819330263761, 1e-12);
}

TEST(GaussianProb, IntegratesToOneOverEightSigma) {
  const double sigma = 0.7;
  constexpr int kIntervals = 20000;
  const double lo = -8.0 * sigma, hi = 8.0 * sigma, h = (hi - lo) / kIntervals;
  double area = 0.5 * (gaussian_prob(lo, sigma) + gaussian_prob(hi, sigma));
  for (int i = 1; i < kIntervals; ++i) area += gaussian_prob(lo + i * h, sigma);
  EXPECT_NEAR(area * h, 1.0, 1e-6);
}

TEST(GaussianProb, RejectsNonPositiveSigma) {
  EXPECT_THROW(gaussian_prob(0.1, 0.0), InvalidArgument);
  EXPECT_THROW(gaussian_prob(0.1, -1.0), InvalidArgument);
  EXPECT_THROW(log_gaussian_prob(0.1, 0.0), InvalidArgument);
}

TEST(SystematicResample, UniformWeightsSelectEachOnce) {
  Rng rng = make_stream(1, 0, 0, Stream::kResample);
  const std::vector<double> log_w(4, std::log(0.25));
  const auto idx = systematic_resample(log_w, 4, rng);
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(SystematicResample, DominantWeightMultiplicity) {
  const std::vector<double> log_w{std::log(0.97), std::log(0.01), std::log(0.01), std::log(0.01)};
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Rng rng = make_stream(seed, 0, 0, Stream::kResample);
    const auto idx = systematic_resample(log_w, 100, rng);
    const auto count = std::count(idx.begin(), idx.end(), 0u);
    ASSERT_GE(count, 94);
    ASSERT_LE(count, 100);
    total += static_cast<double>(count);
  }
  EXPECT_NEAR(total / 10000.0, 97.0, 0.05);
}

TEST(SystematicResample, SingleParticle) {
  Rng rng(3);
  const std::vector<double> log_w{-123.0};
  EXPECT_EQ(systematic_resample(log_w, 5, rng), (std::vector<std::size_t>(5, 0)));
}

TEST(SystematicResample, AllZeroWeightsAreDegenerate) {
  Rng rng(3);
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> log_w{-inf, -inf};
  EXPECT_THROW(systematic_resample(log_w, 2, rng), DegenerateWeights);
}

TEST(SystematicResample, SkipsZeroWeightParticles) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> log_w{-inf, 0.0, -inf};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    for (std::size_t i : systematic_resample(log_w, 7, rng)) EXPECT_EQ(i, 1u);
  }
}

TEST(SystematicResample, DeterministicPerSeed) {
  testing::Gen gen(8);
  std::vector<double> log_w(50);
  for (double& w : log_w) w = gen.normal(3.0);
  Rng a = make_stream(42, 7, 0, Stream::kResample);
  Rng b = make_stream(42, 7, 0, Stream::kResample);
  EXPECT_EQ(systematic_resample(log_w, 50, a), systematic_resample(log_w, 50, b));
}

TEST(GatherResampled, CopiesAreIndependent) {
  std::vector<std::vector<int>> source{{1, 2}, {3}};
  const std::vector<std::size_t> idx{0, 0, 1};
  auto out = gather_resampled(source, idx);
  ASSERT_EQ(out.size(), 3u);
  out[0].push_back(9);
  EXPECT_EQ(out[1], (std::vector<int>{1, 2}));
  EXPECT_EQ(out[2], (std::vector<int>{3}));
}

TEST(AngleWrap, Examples) {
  EXPECT_DOUBLE_EQ(angle_wrap(0.0), 0.0);
  EXPECT_NEAR(angle_wrap(3.0 * kPi), kPi, 1e-12);
  EXPECT_NEAR(angle_wrap(-3.5 * kPi), 0.5 * kPi, 1e-12);
  EXPECT_DOUBLE_EQ(angle_wrap(-kPi), kPi);
}

TEST(CircularMean, WrapsAroundPi) {
  const std::vector<double> angles{3.0, -3.0};
  const std::vector<double> weights{0.5, 0.5};
  EXPECT_NEAR(std::abs(circular_mean(angles, weights)), kPi, 1e-12);
}

TEST(Descriptor, HexRoundTrip) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const Descriptor d = random_descriptor(rng);
    const std::string hex = to_hex(d);
    EXPECT_EQ(hex.size(), 64u);
    EXPECT_EQ(descriptor_from_hex(hex), d);
  }
  EXPECT_THROW(descriptor_from_hex("abc"), InvalidArgument);
  EXPECT_THROW(descriptor_from_hex(std::string(64, 'g')), InvalidArgument);
}

TEST(Descriptor, HammingCountsFlippedBits) {
  Rng rng(5);
  const Descriptor a = random_descriptor(rng);
  Descriptor b = a;
  for (std::size_t bit : {0u, 63u, 64u, 200u, 255u}) b.flip(bit);
  EXPECT_EQ(hamming(a, b), 5);
  EXPECT_EQ(hamming(a, a), 0);
}

TEST(BestTwoMatches, PicksTwoSmallestDistances) {
  const std::vector<int> dist{5, 3, 9};
  std::vector<Descriptor> cands(3);
  Descriptor query;
  for (std::size_t i = 0; i < 3; ++i)
    for (int b = 0; b < dist[i]; ++b) cands[i].flip(static_cast<std::size_t>(b));
  const BestTwo best = best_two_matches(query, 3, [&](std::size_t i) -> const Descriptor& { return cands[i]; });
  EXPECT_EQ(best.index1, 1u);
  EXPECT_EQ(best.dist1, 3);
  EXPECT_EQ(best.index2, 0u);
  EXPECT_EQ(best.dist2, 5);
  EXPECT_TRUE(best.enough_candidates);
}

TEST(RandomStreams, DistinctPurposesDiffer) {
  Rng a = make_stream(1, 2, 3, Stream::kMotion);
  Rng b = make_stream(1, 2, 3, Stream::kMeasurement);
  Rng c = make_stream(1, 2, 3, Stream::kMotion);
  EXPECT_NE(a(), b());
  Rng a2 = make_stream(1, 2, 3, Stream::kMotion);
  EXPECT_EQ(a2(), c());
}

TEST(ParallelFor, VisitsEveryIndexOnceAndPropagatesErrors) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw InvalidArgument("boom");
               }),
               InvalidArgument);
}

}  // namespace
}  // namespace aerostate
