#include <gtest/gtest.h>

#include "papc/context.hpp"
#include "papc/errors.hpp"
#include "papc/syntax.hpp"

namespace {

using namespace papc;

TEST(Context, Fill) {
  EXPECT_EQ(format(apply_context(Context::parse("[] + b.0"), parse_process("a.0"))), "a.0 + b.0");
  EXPECT_EQ(format(apply_context(Context::parse("[] | ~a.0"), parse_process("a.0"))), "a.0 | ~a.0");
  EXPECT_EQ(format(apply_context(Context::parse("c.[]"), parse_process("a.0 | b.0"))), "c.(a.0 | b.0)");
}

TEST(Context, RunningPrefixBelowPrefixIsRejected) {
  EXPECT_THROW(apply_context(Context::parse("c.[]"), parse_process("[a#1].0")), IllFormedPlacement);
  EXPECT_NO_THROW(apply_context(Context::parse("c.0 | []"), parse_process("[a#1].0")));
}

TEST(Context, ExactlyOneHole) {
  EXPECT_THROW(Context::parse("a.0"), Error);
  EXPECT_THROW(Context::parse("[] | []"), Error);
  EXPECT_TRUE(Context::parse("a.(b.0 + [])").hole_under_prefix());
  EXPECT_FALSE(Context::parse("a.0 + []").hole_under_prefix());
  EXPECT_EQ(Context::parse("a.0 + []").to_string(), "a.0 + []");
}

TEST(Context, RandomContextsAreReproducibleAndWellShaped) {
  const std::set<std::string> channels{"a", "b"};
  for (bool prefix_ok : {true, false}) {
    std::mt19937_64 r1(7), r2(7);
    for (int i = 0; i < 500; ++i) {
      const ContextShape shape{3, prefix_ok};
      const Context c1 = random_context(r1, channels, shape);
      const Context c2 = random_context(r2, channels, shape);
      EXPECT_EQ(c1.to_string(), c2.to_string());
      if (!prefix_ok) EXPECT_FALSE(c1.hole_under_prefix()) << c1.to_string();
      for (const auto& ch : channels_of(c1.skeleton())) EXPECT_TRUE(ch == "a" || ch == "b" || ch == "z") << ch;
    }
  }
}

TEST(Context, Channels) {
  EXPECT_EQ(channels_of(parse_process("a.~b:0 + [c#1].0")), (std::set<std::string>{"a", "b", "c"}));
}

}  // namespace
