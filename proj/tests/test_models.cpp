#include <doctest.h>

#include "refsys/kernel.hpp"
#include "refsys/model_presheaf.hpp"
#include "refsys/model_subset.hpp"
#include "refsys/model_trivial.hpp"

using namespace refsys;

namespace {

SetRef int_range(const std::string& name, int lo, int hi) {
  std::vector<Value> els;
  for (int i = lo; i <= hi; ++i) els.push_back(Value::atom(std::to_string(i)));
  return make_set(name, els);
}

template <class P>
Subset where(const SetRef& s, P pred) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s->size(); ++i)
    if (pred(std::stoi(s->at(i).str()))) idx.push_back(i);
  return Subset::of_indices(s, idx);
}

Presheaf z2_set(const CatRef& z2, std::size_t n, bool swap) {
  SetRef v = range_set(std::to_string(n), n);
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = swap ? (n - 1 - i) : i;
  return make_presheaf(z2, {v}, {FinFunction::identity(v), FinFunction(v, v, t)});
}

}  // namespace

TEST_CASE("squaring judgments: derivable, underivable, ill-formed") {
  SubSetModel m;
  SetRef A = int_range("A", -3, 3);
  SetRef B = int_range("B", 0, 9);
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < A->size(); ++i) {
    int x = std::stoi(A->at(i).str());
    t.push_back(*B->index_of(Value::atom(std::to_string(x * x))));
  }
  auto sq = named(FinFunction(A, B, t), "sq");
  auto nz = where(A, [](int x) { return x != 0; });
  auto ge = where(A, [](int x) { return x >= 0; });
  auto bge = where(B, [](int y) { return y >= 0; });
  auto bnz = where(B, [](int y) { return y != 0; });
  CHECK(derivable(m, nz, sq, bge) == Verdict::derivable);
  CHECK(derivable(m, ge, sq, bnz) == Verdict::underivable);
  CHECK(derivable(m, nz, sq, nz) == Verdict::ill_formed);
}

TEST_CASE("primes are not all odd") {
  SubSetModel m;
  SetRef N = int_range("N", 0, 10);
  auto prime = where(N, [](int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  });
  auto odd = where(N, [](int n) { return n % 2 == 1; });
  CHECK(derivable_subtyping(m, prime, odd) == Verdict::underivable);
}

TEST_CASE("subset pullback and pushforward formulas") {
  SubSetModel m;
  SetRef A = atom_set("A", {"1", "2", "3"});
  SetRef B = atom_set("B", {"a", "b"});
  auto f = named(FinFunction(A, B, {0, 0, 1}), "f");
  CHECK(m.pull(f, Subset::of_indices(B, {0})).str() == "{1,2}");
  CHECK(m.push(Subset::of_indices(A, {0, 2}), f).str() == "{a,b}");
  CHECK(m.meet(A, {m.identity(A), m.identity(A)},
               {Subset::of_indices(A, {0, 1}), Subset::of_indices(A, {1, 2})})
            .str() == "{2}");
  CHECK(m.join(A, {m.identity(A), m.identity(A)}, {Subset::of_indices(A, {0}), Subset::of_indices(A, {2})})
            .str() == "{1,3}");
  CHECK(m.meet(A, {}, {}) == Subset::full(A));
  CHECK(m.join(A, {}, {}) == Subset::none(A));
}

TEST_CASE("subset residual counts functions") {
  SubSetModel m;
  SetRef two = range_set("2", 2);
  auto S = Subset::of_indices(two, {1});
  auto R = m.lres(S, S);
  CHECK(R.carrier()->size() == 4);
  CHECK(R.count() == 2);
  CHECK(m.rres(S, S) == m.lres(S, S));
  CHECK(m.lres(Subset::none(two), S).count() == 4);
}

TEST_CASE("hoare wp/sp") {
  HoareProgram prog{atom_set("St", {"s0", "s1", "s2"}), {}};
  prog.commands.emplace("c", FinFunction(prog.states, prog.states, {1, 2, 2}));
  auto s2 = Subset::of_indices(prog.states, {2});
  auto s0 = Subset::of_indices(prog.states, {0});
  CHECK(wp(prog, "c", s2).str() == "{s1,s2}");
  CHECK(sp(prog, s0, "c").str() == "{s1}");
  CHECK(check_triple(prog, s0, {"c", "c"}, s2).holds);
  CHECK_FALSE(check_triple(prog, s2, {"c"}, s0).holds);
  CHECK_THROWS_AS(wp(prog, "nope", s2), Error);
}

TEST_CASE("presheaf pushforward along a point of the arrow category") {
  PresheafModel m;
  CatRef one = terminal_category();
  CatRef arr = arrow_category("Arr", "b0", "b1", "u");
  auto f = named(make_functor(one, arr, {{"*", "b0"}}, {}), "pick");
  Presheaf S = constant_presheaf(one, unit_set());
  Presheaf P = m.push(S, f);
  CHECK(P.value(0)->size() == 1);
  CHECK(P.value(1)->size() == 1);
  CHECK(P.check().ok());
}

TEST_CASE("presheaf pushforward to the terminal category is a colimit") {
  PresheafModel m;
  CatRef A = discrete_category("D", {"x", "y"});
  CatRef one = terminal_category();
  auto f = named(constant_functor(A, one, 0), "!");
  SetRef sx = atom_set("X", {"x"}), sy = atom_set("Y", {"y"});
  Presheaf S = make_presheaf(A, {sx, sy}, {FinFunction::identity(sx), FinFunction::identity(sy)});
  CHECK(m.push(S, f).value(0)->size() == 2);
}

TEST_CASE("presheaf hom-sets are proof relevant") {
  PresheafModel m;
  CatRef arr = arrow_category("Arr", "b0", "b1", "u");
  SetRef two = range_set("2", 2);
  Presheaf S = make_presheaf(arr, {two, two}, {FinFunction::identity(two), FinFunction::identity(two),
                                               FinFunction::identity(two)});
  auto id = m.identity(arr);
  // naturality forces equal components: 4 choices
  CHECK(m.hom_over(S, id, S).size() == 4);
}

TEST_CASE("Z2 residual values are equivariant maps") {
  PresheafModel m;
  CatRef z2 = cyclic_group_category(2);
  Presheaf S = z2_set(z2, 2, true);
  Presheaf U = z2_set(z2, 2, true);
  Presheaf R = m.lres(S, U);
  auto fc = functor_category(z2, z2);
  for (std::size_t k = 0; k < fc->functors.size(); ++k) {
    const auto& F = fc->functors[k];
    std::size_t count = 0;
    for (const auto& phi : all_functions(S.value(0), U.value(0))) {
      bool ok = true;
      for (std::size_t g = 0; g < z2->num_arrows(); ++g)
        for (std::size_t s = 0; s < 2; ++s)
          ok = ok && phi(S.action(g)(s)) == U.action(F.arr(g))(phi(s));
      count += ok;
    }
    CHECK(R.value(k)->size() == count);
  }
}

TEST_CASE("trivial model shift lands in sixteen elements") {
  TrivialModel m;
  SetRef two = range_set("2", 2);
  CHECK(m.lres(m.rres(two, two), two)->size() == 16);
}
