#include <doctest.h>

#include "refsys/model_subset.hpp"
#include "refsys/model_trivial.hpp"
#include "refsys/monadrep.hpp"

using namespace refsys;

namespace {

UniversalType<SubSetModel> classifier() {
  return {truth_value(), [](const Subset& S) { return std::optional<SubExpr>(characteristic(S)); }};
}

std::vector<Derivation<SubSetModel>> some_typings(const SubSetModel& m, const SetRef& A, const SetRef& B) {
  std::vector<Derivation<SubSetModel>> out;
  for (const auto& f : m.expressions(A, B))
    for (const auto& S : m.etypes_over(A))
      for (const auto& T : m.etypes_over(B))
        for (auto& d : derivations_over(m, S, f, T)) out.push_back(d);
  return out;
}

}  // namespace

TEST_CASE("opposite model swaps pullbacks and pushforwards") {
  SubSetModel m;
  OpModel<SubSetModel> q(m);
  SetRef A = range_set("3", 3), B = range_set("2", 2);
  auto f = named(FinFunction(A, B, {0, 0, 1}), "f");
  auto S = Subset::of_indices(A, {2});
  // in the opposite, f : B -> A and pulling S back is pushing forward
  CHECK(q.pull(f, S) == m.push(S, f));
  auto w = pullback(q, f, S);
  CHECK(check_beta_eta(q, w, {B}).ok());
}

TEST_CASE("identity and continuation adjunctions satisfy their laws") {
  SubSetModel m;
  SetRef one = range_set("1", 1), two = range_set("2", 2);
  auto id = identity_adjunction(m);
  auto ds = some_typings(m, two, one);
  CHECK(check_adjunction(id, ds, ds).ok());

  auto U = truth_value();
  auto k = continuation_adjunction(m, U);
  std::vector<Derivation<OpModel<SubSetModel>>> qds;
  for (const auto& d : some_typings(m, two, one)) qds.push_back(to_op(k.q, d, "hyp"));
  auto rep = check_adjunction(k, some_typings(m, one, one), qds);
  CHECK_MESSAGE(rep.ok(), rep.str());
  CHECK_MESSAGE(rep.skipped == 0, rep.str());
}

TEST_CASE("continuation adjunction on plain sets: proof-relevant laws") {
  TrivialModel m;
  SetRef two = range_set("2", 2), one = range_set("1", 1);
  auto k = continuation_adjunction(m, two);
  std::vector<Derivation<OpModel<TrivialModel>>> qds;
  for (const auto& h : m.hom_over(two, {}, one))
    qds.push_back(to_op(k.q, Derivation<TrivialModel>(make_judgment(m, two, {}, one), "hyp", {}, h), "hyp"));
  auto ds = derivations_over(m, one, {}, one);
  auto rep = check_adjunction(k, ds, qds);
  CHECK_MESSAGE(rep.ok(), rep.str());
  CHECK_MESSAGE(rep.skipped == 0, rep.str());
  CHECK(check_xi(k, one, one).ok());
}

TEST_CASE("fiberwise continuation monad on subsets") {
  SubSetModel m;
  SetRef two = range_set("2", 2);
  auto k = continuation_adjunction(m, truth_value());
  auto T = Subset::of_indices(two, {1});
  CHECK(monad_etype(k, T) == T);
  CHECK(monad_etype(identity_adjunction(m), T) == T);
  // over a one-point fiber the laws need a 2^20-point product; the empty fiber
  // still has RL of two points and RLRL of sixteen
  SetRef zero = range_set("0", 0);
  auto rep = check_monad_laws(k, Subset::full(zero));
  CHECK_MESSAGE(rep.ok(), rep.str());
  CHECK_MESSAGE(rep.skipped == 0, rep.str());
  auto repi = check_monad_laws(identity_adjunction(m), T);
  CHECK(repi.ok());
  CHECK(repi.skipped == 0);
}

TEST_CASE("continuation monad on plain sets: unit laws") {
  TrivialModel m;
  SetRef two = range_set("2", 2), zero = range_set("0", 0);
  auto k = continuation_adjunction(m, two);
  CHECK(monad_etype(k, zero)->size() == 2);
  auto rep = check_monad_laws(k, zero);
  CHECK_MESSAGE(rep.ok(), rep.str());
  // associativity needs RLRL of a sixteen-point set
  CHECK(rep.instances == 2);
  CHECK(rep.skipped == 1);
}

TEST_CASE("xi factors shift, and a wrong strength is caught") {
  SubSetModel m;
  SetRef two = range_set("2", 2);
  auto id = identity_adjunction(m);
  auto T = Subset::of_indices(two, {0});
  auto U = truth_value();
  CHECK(check_xi(id, T, U).ok());
  auto k = continuation_adjunction(m, U);
  SetRef one = range_set("1", 1);
  CHECK(check_xi(k, Subset::full(one), U).ok());

  // a strength that swaps the two points of A * B when both are 2
  auto bad = id;
  bad.sigma = [m](const SetRef& A, const SetRef& B) {
    const auto AB = m.tensor_itype(A, B);
    std::vector<std::size_t> t(AB->size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = t.size() - 1 - i;
    return named(FinFunction(AB, AB, t), "rev");
  };
  bad.sigma_d = [m, bad](const Subset& S, const Subset& Tt) {
    auto ST = m.tensor_etype(S, Tt);
    return primitive(m, "sigma", make_judgment(m, ST, bad.sigma(S.carrier(), Tt.carrier()), ST), {});
  };
  auto full = Subset::full(two);
  CHECK_FALSE(check_xi(bad, full, U).ok());
}

TEST_CASE("F_mu and F_box form a retraction") {
  SubSetModel m;
  auto id = identity_adjunction(m);
  SetRef A = range_set("3", 3);
  SetRef two = range_set("2", 2);
  auto U = truth_value();
  auto f = named(FinFunction(A, two, {1, 0, 1}), "f");
  auto T = m.pull(f, U);
  auto alpha = pullback(m, f, U).left;
  auto mu = f_mu(id, T, U);
  auto box = f_box(id, T, U, alpha);
  CHECK(check_retraction(m, mu, box));
  // a judgment that is not a pullback is rejected
  auto smaller = Subset::of_indices(A, {0});
  auto notpb = derivations_over(m, smaller, f, U).at(0);
  CHECK_THROWS_AS(f_box(id, smaller, U, notpb), Error);
}

TEST_CASE("reset;shift is not the identity on plain sets") {
  TrivialModel m;
  auto id = identity_adjunction(m);
  SetRef two = range_set("2", 2);
  auto alpha = identity_derivation(m, two);
  auto mu = f_mu(id, two, two);
  auto box = f_box(id, two, two, alpha);
  CHECK(box.subject()->size() == 16);
  CHECK(check_retraction(m, mu, box));
  CHECK_FALSE(check_section(m, mu, box));
}

TEST_CASE("two out of three for pullbacks and pushforwards") {
  SubSetModel m;
  SetRef A = range_set("2", 2), B = range_set("3", 3);
  std::size_t pull_cases = 0, push_cases = 0;
  auto d1s = some_typings(m, A, A);
  auto d2s = some_typings(m, A, B);
  for (const auto& d1 : d1s)
    for (const auto& d2 : d2s) {
      if (!m.same_etype(d1.object(), d2.subject())) continue;
      auto r = check_2outof3(m, d1, d2);
      CHECK(r.ok());
      pull_cases += r.pull_premises;
      push_cases += r.push_premises;
    }
  CHECK(pull_cases > 0);
  CHECK(push_cases > 0);
}

TEST_CASE("subsets: universal type, reflection and the representation theorem") {
  SubSetModel m;
  auto id = identity_adjunction(m);
  auto u = classifier();
  std::vector<Subset> ts;
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& S : m.etypes_over(range_set(std::to_string(n), n))) ts.push_back(S);
  CHECK(check_universal(m, u, ts).ok());
  auto refl = check_reflected(id, u, ts, ts);
  CHECK(refl.ok());
  // the unshifted square only holds when T is everything
  CHECK_FALSE(refl.literal.ok());
  CHECK(check_theorem(id, u, ts).ok());
}

TEST_CASE("observation: pulling back the answer type") {
  SubSetModel m;
  SetRef two = range_set("2", 2), three = range_set("3", 3);
  auto f = named(FinFunction(three, two, {0, 1, 1}), "f");
  auto T = Subset::of_indices(two, {1});
  ObservationResult info;
  auto d = observation_poly(m, T, truth_value(), f, &info);
  CHECK(info.equation);
  CHECK(d.judgment().subtyping);
}
