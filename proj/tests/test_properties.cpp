#include <doctest.h>

#include "properties.hpp"

using namespace ratroot;

namespace {

void report(const props::SuiteResult& r) {
  for (const auto& e : r.examples) FAIL_CHECK(e);
  CHECK(r.cases >= 200);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("square multiples") { report(props::square_multiples(200, 2024)); }
TEST_CASE("affine changes") { report(props::affine_changes(200, 2025)); }
TEST_CASE("witness gate") { report(props::witness_gate(200, 2026)); }
TEST_CASE("alphabet permutations") { report(props::alphabet_permutations(200, 2027)); }
TEST_CASE("milnor bound") { report(props::milnor_bound(240, 2028)); }
