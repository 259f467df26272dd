#include <gtest/gtest.h>

#include <map>

#include "radiolab/instance.hpp"
#include "radiolab/netio.hpp"

namespace radiolab {
namespace {

TEST(InstanceParams, PowerOfFourOnly) {
  for (std::uint64_t bad : {0, 1, 2, 8, 12, 32, 255, 1000}) EXPECT_THROW(InstanceParams(bad, 0), input_error) << bad;
  const InstanceParams p(4096, 1);
  EXPECT_EQ(p.n_prime(), 64u);
  EXPECT_EQ(p.class_count(), 6u);
  EXPECT_EQ(p.receiver_count(), 384u);
}

TEST(SampleInstance, Shape256) {
  const InstanceParams params(256, 3);
  const auto net = sample_instance(params);
  EXPECT_EQ(net.sender_count(), 16u);
  EXPECT_EQ(net.class_count(), 4u);
  EXPECT_EQ(net.receiver_count(), 64u);
  EXPECT_EQ(net.node_count(), 80u);
  std::map<std::size_t, std::size_t> per_degree;
  for (const auto& r : net.receivers()) {
    ASSERT_EQ(r.neighbors.size(), std::size_t{1} << r.class_index);
    ++per_degree[r.neighbors.size()];
  }
  EXPECT_EQ(per_degree, (std::map<std::size_t, std::size_t>{{2, 16}, {4, 16}, {8, 16}, {16, 16}}));
  EXPECT_TRUE(validate(net).ok());
}

TEST(SampleInstance, SmallestFamily) {
  const auto net = sample_instance(InstanceParams(4, 99));
  ASSERT_EQ(net.sender_count(), 2u);
  ASSERT_EQ(net.receiver_count(), 2u);
  for (const auto& r : net.receivers()) EXPECT_EQ(r.neighbors, (std::vector<NodeId>{0, 1}));
}

TEST(SampleInstance, TopClassSeesEverySender) {
  const InstanceParams params(1024, 5);
  const auto net = sample_instance(params);
  for (std::size_t r = net.receiver_count() - params.n_prime(); r < net.receiver_count(); ++r) {
    EXPECT_EQ(net.receiver(r).neighbors.size(), params.n_prime());
  }
}

TEST(SampleInstance, SeedDeterminism) {
  const auto a = format_net(sample_instance(InstanceParams(256, 7)));
  const auto b = format_net(sample_instance(InstanceParams(256, 7)));
  const auto c = format_net(sample_instance(InstanceParams(256, 8)));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(SampleInstance, WorkerCountIndependent) {
  const InstanceParams params(4096, 11);
  EXPECT_EQ(sample_instance(params, 1), sample_instance(params, 4));
}

TEST(SampleInstance, NeighborPairIsUniform) {
  // n = 16: n' = 4, receiver 0 is in class 1 with one of C(4,2) = 6 pairs.
  const int trials = 100000;
  std::map<std::vector<NodeId>, int> seen;
  for (int t = 0; t < trials; ++t) ++seen[sample_instance(InstanceParams(16, t)).receiver(0).neighbors];
  ASSERT_EQ(seen.size(), 6u);
  const double expected = trials / 6.0;
  double chi2 = 0.0;
  for (const auto& [pair, count] : seen) chi2 += (count - expected) * (count - expected) / expected;
  EXPECT_LT(chi2, 20.515);  // chi-square 5 dof, upper 0.001 quantile
}

TEST(BuildRadius2, VoidPadding) {
  const auto core = sample_instance(InstanceParams(256, 1));
  ASSERT_EQ(core.node_count(), 80u);
  const auto h = build_radius2(core, 256);
  EXPECT_EQ(h.void_count(), 175u);
  EXPECT_EQ(h.total_nodes(), 256u);
  EXPECT_EQ(h.eta(), 80u);
  EXPECT_EQ(radius(h), std::optional<std::size_t>{2});

  const auto tight = build_radius2(core, 81);
  EXPECT_EQ(tight.void_count(), 0u);
  EXPECT_EQ(radius(tight), std::optional<std::size_t>{2});

  EXPECT_THROW(build_radius2(core, 80), input_error);
}

TEST(FamilySize, Examples) {
  const auto a = family_size_check(InstanceParams(256, 0));
  EXPECT_EQ(a.core_nodes, 80u);
  EXPECT_TRUE(a.pass);
  const auto b = family_size_check(InstanceParams(4, 0));
  EXPECT_EQ(b.core_nodes, 4u);
  EXPECT_FALSE(b.pass);
  EXPECT_TRUE(b.small_n_exception);
  const auto c = family_size_check(InstanceParams(4096, 0));
  EXPECT_EQ(c.core_nodes, 448u);
  EXPECT_TRUE(c.pass);
  EXPECT_TRUE(family_size_check(InstanceParams(16, 0)).pass);  // 12 < 16
}

}  // namespace
}  // namespace radiolab
