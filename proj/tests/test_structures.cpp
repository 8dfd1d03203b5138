#include <doctest.h>

#include "refsys/model_presheaf.hpp"
#include "refsys/model_subset.hpp"
#include "refsys/model_trivial.hpp"
#include "refsys/monoidal.hpp"

using namespace refsys;

namespace {

SetRef z(std::size_t n) { return range_set("Z" + std::to_string(n), n); }

SubExpr addition(std::size_t n) {
  SetRef Z = z(n);
  SetRef ZZ = product_set(Z, Z);
  std::vector<std::size_t> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = (i + j) % n;
  return named(FinFunction(ZZ, Z, t), "+");
}

Presheaf z2_set(const CatRef& z2, std::size_t n, bool swap) {
  SetRef v = range_set(std::to_string(n), n);
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = swap ? (n - 1 - i) : i;
  return make_presheaf(z2, {v}, {FinFunction::identity(v), FinFunction(v, v, t)});
}

}  // namespace

TEST_CASE("subset pullback witness and laws") {
  SubSetModel m;
  SetRef A = atom_set("A", {"1", "2", "3"});
  SetRef B = atom_set("B", {"a", "b"});
  auto f = named(FinFunction(A, B, {0, 0, 1}), "f");
  auto w = pullback(m, f, Subset::of_indices(B, {0}));
  CHECK(w.result.str() == "{1,2}");
  CHECK(check_beta_eta(m, w, {A, B}).ok());
  auto p = pushforward(m, Subset::of_indices(A, {0, 2}), f);
  CHECK(p.result.str() == "{a,b}");
  CHECK(check_beta_eta(m, p, {B, A}).ok());
  // identity pullback
  auto T = Subset::of_indices(B, {1});
  CHECK(check_vertical_iso(m, pullback(m, m.identity(B), T).result, T).has_value());
  CHECK_FALSE(check_vertical_iso(m, Subset::of_indices(B, {0}), Subset::of_indices(B, {1})).has_value());
}

TEST_CASE("subset three-way correspondence examples") {
  SubSetModel m;
  SetRef A = atom_set("A", {"1", "2", "3"});
  SetRef B = atom_set("B", {"a", "b"});
  auto f = named(FinFunction(A, B, {0, 0, 1}), "f");
  auto one = Subset::of_indices(A, {0});
  CHECK(three_way(m, one, f, Subset::of_indices(B, {0})).tuple() == std::array<bool, 3>{true, true, true});
  CHECK(three_way(m, Subset::none(A), f, Subset::none(B)).tuple() == std::array<bool, 3>{true, true, true});
  CHECK(three_way(m, one, f, Subset::of_indices(B, {1})).tuple() == std::array<bool, 3>{false, false, false});
}

TEST_CASE("composition isos and uniqueness in subset") {
  SubSetModel m;
  SetRef A = atom_set("A", {"1", "2", "3"});
  SetRef B = atom_set("B", {"a", "b"});
  SetRef C = atom_set("C", {"x", "y"});
  auto f = named(FinFunction(A, B, {0, 0, 1}), "f");
  auto g = named(FinFunction(B, C, {1, 1}), "g");
  auto T = Subset::of_indices(C, {1});
  auto iso = pull_compose_iso(m, f, g, T);
  CHECK(iso.forward.subject() == iso.forward.object());
  auto iso2 = push_compose_iso(m, Subset::of_indices(A, {2}), f, g);
  CHECK(iso2.forward.subject() == iso2.forward.object());
  auto w1 = pullback(m, f, Subset::of_indices(B, {0}));
  auto w2 = pullback(m, f, Subset::of_indices(B, {0}));
  CHECK(is_vertical_iso(m, uniqueness_iso(m, w1, w2).forward, uniqueness_iso(m, w1, w2).backward));
}

TEST_CASE("presheaf witnesses satisfy beta/eta and detect corruption") {
  PresheafModel m;
  CatRef z2 = cyclic_group_category(2);
  CatRef one = terminal_category();
  auto bang = named(constant_functor(z2, one, 0), "!");
  auto S = z2_set(z2, 2, true);
  auto pw = pushforward(m, S, bang);
  CHECK(pw.result.value(0)->size() == 1);
  CHECK(check_beta_eta(m, pw, {one, z2}).ok());

  SetRef two = range_set("2", 2);
  auto T = constant_presheaf(one, two);
  auto w = pullback(m, bang, T);
  auto good = check_beta_eta(m, w, {z2, one});
  CHECK(good.ok());
  CHECK(good.instances > 0);

  // swap the components of the right rule: still natural, but beta fails
  auto bad = w;
  bad.right = [m, w](const Presheaf& X, const PshExpr& g, const Derivation<PresheafModel>& beta) {
    auto d = w.right(X, g, beta);
    NatTrans t = d.morph();
    for (auto& c : t.components) {
      std::vector<std::size_t> tab;
      for (auto v : c.table()) tab.push_back(1 - v);
      c = FinFunction(c.dom(), c.cod(), tab);
    }
    return primitive(m, "Rpull*", d.judgment(), t, {beta});
  };
  auto r = check_beta_eta(m, bad, {z2, one});
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.counterexamples.empty());
}

TEST_CASE("presheaf composition isos and relabeled uniqueness") {
  PresheafModel m;
  CatRef arr = arrow_category("Arr", "b0", "b1", "u");
  CatRef one = terminal_category();
  auto pick = named(make_functor(one, arr, {{"*", "b0"}}, {}), "pick");
  auto bang = named(constant_functor(arr, one, 0), "!");
  SetRef two = range_set("2", 2);
  auto T = constant_presheaf(one, two);
  auto iso = pull_compose_iso(m, pick, bang, T);
  CHECK(is_vertical_iso(m, iso.forward, iso.backward));
  auto S = constant_presheaf(one, two);
  auto iso2 = push_compose_iso(m, S, pick, bang);
  CHECK(is_vertical_iso(m, iso2.forward, iso2.backward));

  // a second pushforward of S along pick with relabeled values
  auto w = pushforward(m, S, pick);
  std::vector<SetRef> vals;
  std::vector<FinFunction> to, from;
  for (std::size_t b = 0; b < 2; ++b) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < w.result.value(b)->size(); ++i) labels.push_back("r" + std::to_string(i));
    vals.push_back(atom_set("R" + std::to_string(b), labels));
    std::vector<std::size_t> idt(labels.size());
    for (std::size_t i = 0; i < idt.size(); ++i) idt[i] = i;
    to.emplace_back(w.result.value(b), vals[b], idt);
    from.emplace_back(vals[b], w.result.value(b), idt);
  }
  std::vector<FinFunction> act;
  for (std::size_t u = 0; u < arr->num_arrows(); ++u)
    act.push_back(compose(compose(from[arr->src(u)], w.result.action(u)), to[arr->dst(u)]));
  Presheaf R(arr, vals, act);
  auto idarr = m.identity(arr);
  auto fwd = primitive(m, "relabel", make_subtyping(m, w.result, R), NatTrans{to});
  auto bwd = primitive(m, "relabel'", make_subtyping(m, R, w.result), NatTrans{from});
  PushforwardWitness<PresheafModel> w2{S, pick, R, compose_derivations(m, w.right, fwd),
                                       [m, w, bwd](const PshExpr& g, const Presheaf& X,
                                                   const Derivation<PresheafModel>& beta) {
                                         auto d = compose_derivations(m, bwd, w.left(g, X, beta));
                                         return conversion(m, d, g);
                                       }};
  CHECK(check_beta_eta(m, w2, {arr, one}).ok());
  auto u = uniqueness_iso(m, w, w2);
  CHECK(is_vertical_iso(m, u.forward, u.backward));
  (void)idarr;
}

TEST_CASE("weighted families in subset") {
  SubSetModel m;
  SetRef A = atom_set("A", {"1", "2", "3"});
  auto i = intersect(m, Subset::of_indices(A, {0, 1}), Subset::of_indices(A, {1, 2}));
  CHECK(i.result.str() == "{2}");
  CHECK(check_beta_eta(m, i, {A}).ok());
  auto u = unite(m, Subset::of_indices(A, {0}), Subset::of_indices(A, {2}));
  CHECK(u.result.str() == "{1,3}");
  CHECK(check_beta_eta(m, u, {A}).ok());
  CHECK(weighted_intersection(m, A, {}, {}).result == Subset::full(A));
  CHECK(weighted_union(m, A, {}, {}).result == Subset::none(A));
  SetRef B = atom_set("B", {"a", "b"});
  auto f = named(FinFunction(A, B, {0, 0, 1}), "f");
  auto T = Subset::of_indices(B, {0});
  CHECK(check_vertical_iso(m, weighted_intersection(m, A, {f}, {T}).result, pullback(m, f, T).result));
}

TEST_CASE("weighted families in the presheaf model") {
  PresheafModel m;
  CatRef z2 = cyclic_group_category(2);
  auto S = z2_set(z2, 2, true);
  auto T = z2_set(z2, 1, false);
  auto i = intersect(m, S, T);
  CHECK(check_beta_eta(m, i, {z2}).ok());
  auto u = unite(m, S, T);
  CHECK(u.result.value(0)->size() == 3);
  CHECK(check_beta_eta(m, u, {z2}).ok());
}

TEST_CASE("monoidal structure in subset") {
  SubSetModel m;
  SetRef A = atom_set("A", {"1", "2"});
  SetRef B = atom_set("B", {"a", "b"});
  CHECK(m.tensor_etype(Subset::of_indices(A, {0}), Subset::of_indices(B, {0})).str() == "{(1,a)}");
  CHECK(m.tensor_etype(Subset::none(A), Subset::full(B)).count() == 0);
  auto S = Subset::of_indices(A, {1});
  CHECK(check_coherence(m, S, S, S));
  auto f = named(FinFunction(A, B, {1, 0}), "f");
  auto d = derivations_over(m, S, f, Subset::of_indices(B, {0}))[0];
  CHECK(check_assoc_law(m, d, d, d));
  CHECK(check_unit_laws(m, d));
  CHECK(pull_preservation(m, f, Subset::of_indices(B, {0}), f, Subset::of_indices(B, {1})).has_value());
  CHECK(push_preservation(m, S, f, Subset::full(A), f).has_value());
}

TEST_CASE("monoidal laws with proof-relevant derivations") {
  PresheafModel m;
  CatRef z2 = cyclic_group_category(2);
  auto S = z2_set(z2, 2, true);
  auto id = m.identity(z2);
  auto ders = derivations_over(m, S, id, S);
  REQUIRE(ders.size() == 2);
  for (const auto& a : ders)
    for (const auto& b : ders) {
      CHECK(check_assoc_law(m, a, b, a));
      CHECK(check_bifunctoriality(m, a, b, b, a));
    }
  CHECK(check_unit_laws(m, ders[1]));
  CHECK(check_coherence(m, S, S, S));
  CHECK(check_tensor_identity(m, S, S));
}

TEST_CASE("subset residuals") {
  SubSetModel m;
  SetRef two = range_set("2", 2);
  auto S = Subset::of_indices(two, {1});
  auto w = residual_left(m, S, S);
  CHECK(w.result.count() == 2);
  CHECK(check_residual_laws(m, w, {two}).ok());
  auto r = residual_right(m, S, S);
  CHECK(check_residual_laws(m, r, {two}).ok());
  CHECK(residual_left(m, S, Subset::full(two)).result.count() == 4);
  // contravariant in the argument, covariant in the result
  auto d = lres_subtyping(m, derivations_over(m, Subset::none(two), m.identity(two), S)[0],
                          identity_derivation(m, S));
  CHECK(d.object() == m.lres(Subset::none(two), S));
}

TEST_CASE("presheaf residual laws on Z2") {
  PresheafModel m;
  CatRef z2 = cyclic_group_category(2);
  auto S = z2_set(z2, 2, true);
  auto w = residual_left(m, S, S);
  auto r = check_residual_laws(m, w, {z2});
  CHECK(r.ok());
  CHECK(r.instances > 0);
  auto rw = residual_right(m, S, S);
  CHECK(check_residual_laws(m, rw, {z2}).ok());
}

TEST_CASE("shift and reset") {
  SubSetModel m;
  SetRef two = range_set("2", 2);
  auto sh = shift_expr(m, two, two);
  auto re = reset_expr(m, two, two);
  CHECK(m.same_expr(m.compose(sh, re), m.identity(two)));
  CHECK(sh.fn.cod()->size() == 16);
  CHECK_FALSE(m.same_expr(m.compose(re, sh), m.identity(re.fn.dom())));

  TrivialModel t;
  auto s = shift_derivation(t, two, two);
  auto r = reset_derivation(t, two, two);
  CHECK(s.object()->size() == 16);
  CHECK(compose_derivations(t, s, r).morph() == FinFunction::identity(two));
  CHECK_FALSE(compose_derivations(t, r, s).morph() == FinFunction::identity(s.object()));
}

TEST_CASE("separation logic on Z4") {
  SubSetModel m;
  SetRef Z = z(4);
  auto sig = make_sep_signature(m, Z, addition(4), std::nullopt, false);
  auto op = sep_op(m, sig);
  auto s1 = Subset::of_indices(Z, {1});
  auto s2 = Subset::of_indices(Z, {2});
  auto s3 = Subset::of_indices(Z, {3});
  CHECK(star(m, op, s1, s2).str() == "{3}");
  CHECK(star(m, op, s3, Subset::of_indices(Z, {0})) == s3);
  CHECK(wand_right(m, op, s3, s2).str() == "{1}");
  CHECK(wand_left(m, op, s2, s3).str() == "{1}");
  auto d = derivations_over(m, star(m, op, s1, s2), m.identity(Z), s3)[0];
  CHECK(check_wand_beta(m, op, s1, s2, as_subtyping(m, d)));
  CHECK(three_way_adjunction(m, op, s1, s2, s3).agree());
}
