#include "support/suites.hpp"

#include <gtest/gtest.h>

namespace pomodel {
namespace {

void expect_clean(const testing::SuiteResult &r) {
  for (const auto &f : r.failures)
    ADD_FAILURE() << f;
  for (const auto &[name, n] : r.checks)
    EXPECT_GT(n, 0u) << name << " never exercised";
}

class Properties : public ::testing::TestWithParam<int> {};

TEST_P(Properties, Theorems) {
  auto r = testing::theorem_suite(static_cast<std::uint64_t>(GetParam()), 150);
  expect_clean(r);
  for (const char *name : {"fast-we", "omega-we", "omega-implies-we", "psi-ic", "es-se", "se-es",
                           "bijection"})
    EXPECT_GT(r.checks[name], 0u) << name;
}

TEST_P(Properties, Checkpoints) {
  auto r = testing::checkpoint_suite(static_cast<std::uint64_t>(GetParam()) + 100,
                                     60, 4, 5);
  expect_clean(r);
  EXPECT_GT(r.checks["useless-found"], 0u);
}

INSTANTIATE_TEST_SUITE_P(Seeds, Properties, ::testing::Range(1, 5));

} // namespace
} // namespace pomodel
