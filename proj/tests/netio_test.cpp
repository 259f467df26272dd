#include <gtest/gtest.h>

#include "radiolab/instance.hpp"
#include "radiolab/netio.hpp"

namespace radiolab {
namespace {

TEST(NetFormat, ExactBytes) {
  const BipartiteRadioNet net(2, {{1, {0, 1}}, {1, {0, 1}}}, 1);
  EXPECT_EQ(format_net(net), "radionet v1 2 2\n1 0 1\n1 0 1\n");
  EXPECT_EQ(format_net(Radius2Net(net, 3)), "radionet v1 2 2\n1 0 1\n1 0 1\nradius2 8 3\n");
}

TEST(NetFormat, ParseInvertsFormat) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const InstanceParams params(seed % 2 == 0 ? 64 : 256, seed);
    const auto core = sample_instance(params);
    const auto h = build_radius2(core, params.n());
    const auto text = format_net(h);
    const auto file = parse_net(text);
    ASSERT_TRUE(file.is_radius2());
    EXPECT_EQ(file.radius2(), h);
    EXPECT_EQ(file.core.class_count(), params.class_count());
    EXPECT_EQ(format_net(file.radius2()), text);
  }
}

TEST(NetFormat, CoreWithoutFooter) {
  const auto file = parse_net("radionet v1 3 1\n1 0 2\n");
  EXPECT_FALSE(file.is_radius2());
  EXPECT_THROW(file.radius2(), input_error);
}

TEST(NetFormat, RejectsMalformedInput) {
  EXPECT_THROW(parse_net(""), input_error);
  EXPECT_THROW(parse_net("radionet v2 1 0\n"), input_error);
  EXPECT_THROW(parse_net("radionet v1 2 2\n1 0 1\n"), input_error);        // missing receiver line
  EXPECT_THROW(parse_net("radionet v1 2 1\n1 0 2\n"), input_error);        // sender out of range
  EXPECT_THROW(parse_net("radionet v1 2 1\n1 1 0\n"), input_error);        // unsorted
  EXPECT_THROW(parse_net("radionet v1 2 1\n1 1 1\n"), input_error);        // duplicate
  EXPECT_THROW(parse_net("radionet v1 2 1\n1 x\n"), input_error);
  EXPECT_THROW(parse_net("radionet v1 2 1\n1 0\nradius2 10 5\n"), input_error);  // 1+3+5 != 10
  EXPECT_THROW(parse_net("radionet v1 2 1\n1 0\nradius2 5 1\nextra\n"), input_error);
  EXPECT_THROW(parse_net("radionet v1 -2 1\n1 0\n"), input_error);
}

}  // namespace
}  // namespace radiolab
