#include <gtest/gtest.h>

#include "exotic/verify.hpp"

using namespace exotic;

TEST(Golden, ReferenceTablesMatch) {
  const SuiteReport r = run_reference_tables(EXOTIC_GOLDEN_DIR, false);
  for (const CheckResult& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Golden, TablesAreDeterministic) {
  for (const GoldenTable& g : reference_tables()) EXPECT_EQ(g.produce(), g.produce()) << g.name;
}
