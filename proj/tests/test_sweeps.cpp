#include <doctest.h>

#include "refsys/error.hpp"
#include "refsys/sweeps.hpp"

using namespace refsys;

TEST_CASE("small kernel and structure sweeps pass") {
  for (const auto& r : {subset_functoriality(2), subset_trichotomy(2), subset_iso_equivalence(2),
                        subset_proof_irrelevance(2), subset_three_way(3), subset_lattice(2), subset_formulas(2),
                        subset_composition_isos(2)}) {
    CHECK_MESSAGE(r.ok(), r.str());
    CHECK(r.instances > 0);
    CHECK(r.skipped == 0);
  }
  SweepBounds b{2, 2, 1};
  CHECK(subset_pull_beta_eta(b).ok());
  CHECK(subset_push_beta_eta(b).ok());
}

TEST_CASE("the three-way count grows with the carrier bound") {
  CHECK(subset_three_way(2).instances < subset_three_way(3).instances);
}

TEST_CASE("non-monoid tables really are non-associative") {
  auto tables = non_monoid_tables();
  CHECK(tables.size() >= 3);
  for (const auto& t : tables) {
    SepTable claimed = t;
    claimed.claims_monoid = true;
    CHECK_FALSE(monoid_claim(claimed).ok());
    CHECK_MESSAGE(check_starwand(t).ok(), t.name);
  }
  CHECK(monoid_claim(cyclic_table(4)).ok());
}

TEST_CASE("monoid claim counterexamples are verbatim") {
  auto t = non_monoid_tables().front();
  auto r = monoid_claim(t);
  REQUIRE_FALSE(r.counterexamples.empty());
  CHECK(r.counterexamples.front().find(" but ") != std::string::npos);
}

TEST_CASE("Day construction over small groups") {
  CHECK(day_check(cyclic_group_category(2), 2).ok());
  CHECK(day_check(cyclic_group_category(3), 1).ok());
  CHECK_THROWS_AS(multiplication_functor(arrow_category("A", "a", "b", "u")), Error);
}

TEST_CASE("Hoare demo machine") {
  auto r = hoare_galois(demo_machine(), 1);
  CHECK(r.ok());
  CHECK(r.instances == 2 * 16 * 16 * 5);
}

TEST_CASE("suite names and unknown suites") {
  auto names = suite_names();
  CHECK(names.size() == 6);
  CHECK_THROWS_AS(run_suite("bogus", SweepBounds{}), Error);
  auto k = run_suite("kernel", SweepBounds{2, 1, 1});
  REQUIRE(k.size() == 1);
  CHECK(k[0].ok());
  CHECK(k[0].skipped() == 1);
  CHECK(k[0].str().rfind("suite kernel: pass", 0) == 0);
}
