#ifndef REFSYS_SWEEPS_HPP
#define REFSYS_SWEEPS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "refsys/fincat.hpp"
#include "refsys/model_presheaf.hpp"
#include "refsys/model_subset.hpp"
#include "refsys/monoidal.hpp"
#include "refsys/report.hpp"

namespace refsys {

struct SweepBounds {
  std::size_t max_set = 3;    // SubSet carriers {0..n-1}, n <= max_set
  std::size_t probe_set = 2;  // carriers of the probe i-types for beta/eta
  std::size_t max_value = 2;  // presheaf value sets
};

// A named group of law reports.
struct SuiteReport {
  std::string name;
  std::vector<CheckReport> sections;

  bool ok() const;
  std::size_t instances() const;
  std::size_t skipped() const;
  std::string str() const;
};

std::vector<SetRef> small_carriers(std::size_t max_set);
// Bases with at most three objects and six arrows.
std::vector<CatRef> presheaf_zoo();

// kernel
CheckReport subset_functoriality(std::size_t max_set);
CheckReport subset_trichotomy(std::size_t max_set);
CheckReport subset_iso_equivalence(std::size_t max_set);
CheckReport subset_proof_irrelevance(std::size_t max_set);
CheckReport presheaf_category_laws(const std::vector<CatRef>& zoo, std::size_t max_value);

// structures
CheckReport subset_pull_beta_eta(const SweepBounds& b);
CheckReport subset_push_beta_eta(const SweepBounds& b);
CheckReport presheaf_pull_beta_eta(const std::vector<CatRef>& zoo, const std::vector<CatRef>& probes,
                                   std::size_t max_value);
CheckReport presheaf_push_beta_eta(const std::vector<CatRef>& zoo, const std::vector<CatRef>& probes,
                                   std::size_t max_value);
CheckReport subset_composition_isos(std::size_t max_set);
CheckReport presheaf_composition_isos(const std::vector<CatRef>& zoo, std::size_t max_value);
CheckReport subset_three_way(std::size_t max_set);
CheckReport subset_lattice(std::size_t max_set);
CheckReport subset_formulas(std::size_t max_set);

// monoidal
CheckReport subset_monoidal_equations(std::size_t max_set);
CheckReport presheaf_monoidal_equations(const std::vector<CatRef>& bases, std::size_t max_value);
CheckReport subset_preservation(std::size_t max_set);
CheckReport subset_residual_laws(std::size_t max_set);
CheckReport presheaf_residual_laws(const std::vector<CatRef>& bases, std::size_t max_value);
CheckReport subset_residual_subtyping(std::size_t max_set);
CheckReport subset_residual_formulas(std::size_t max_set);
CheckReport shift_reset_laws();

// separation logic over a binary table on H (mult[i][j] in H)
struct SepTable {
  std::string name;
  SetRef H;
  std::vector<std::vector<std::size_t>> mult;
  std::optional<std::size_t> unit;
  bool claims_monoid = false;
};

SepTable cyclic_table(std::size_t n);
// Deterministic non-associative tables on {0,1,2}.
std::vector<SepTable> non_monoid_tables();
SubExpr table_expr(const SepTable& t);
// Monoid laws of a table that claims them; each failing triple is a counterexample.
CheckReport monoid_claim(const SepTable& t);
// Three-way adjunction, both wand equations, invertibility and the set
// formulas, over all subsets of H.
CheckReport check_starwand(const SepTable& t);
// Star via Kan pushforward along the multiplication of a commutative monoid
// category against an independently computed coend, for all M-sets with at
// most max_value elements.
CheckReport day_check(const CatRef& monoid, std::size_t max_value);
FinFunctor multiplication_functor(const CatRef& monoid);

// Hoare logic: sp(P, c) <= Q iff P <= wp(c, Q) for all predicates and all
// command sequences up to max_len.
HoareProgram demo_machine();
CheckReport hoare_galois(const HoareProgram& prog, std::size_t max_len);

// monadrep
struct FboxSearch {
  CheckReport report;                // retraction on every instance found
  std::size_t found = 0;
  std::vector<std::string> covered;  // size classes fully searched
  std::vector<std::string> beyond;   // size classes beyond the carrier bound
};
FboxSearch fbox_search(std::size_t max_b, std::size_t max_c);
FboxSearch fbox_search_continuation();
CheckReport section_counterexample();
CheckReport adjunction_laws();
CheckReport monad_laws();
CheckReport xi_laws();
CheckReport two_out_of_three(std::size_t max_set);
CheckReport representation_theorem(std::size_t max_set);

std::vector<std::string> suite_names();
// Runs a built-in suite; throws a validation error for unknown names.
std::vector<SuiteReport> run_suite(const std::string& name, const SweepBounds& b);

}  // namespace refsys

#endif
