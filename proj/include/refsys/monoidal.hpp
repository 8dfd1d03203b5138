#ifndef REFSYS_MONOIDAL_HPP
#define REFSYS_MONOIDAL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "refsys/structures.hpp"

namespace refsys {

// Rule M.
template <class M>
Derivation<M> tensor_derivations(const M& m, const Derivation<M>& a, const Derivation<M>& b) {
  Judgment<M> j{m.tensor_etype(a.subject(), b.subject()), m.tensor_expr(a.expr(), b.expr()),
                m.tensor_etype(a.object(), b.object()), false};
  return primitive(m, "M", std::move(j), m.tensor_morph(a.morph(), b.morph()), {a, b});
}

// Rule U.
template <class M>
Derivation<M> unit_derivation(const M& m) {
  const auto one = m.unit_etype();
  return primitive(m, "U", make_subtyping(m, one, one), m.unit_morph());
}

template <class M>
Derivation<M> assoc_derivation(const M& m, const typename M::EType& a, const typename M::EType& b,
                               const typename M::EType& c) {
  return primitive(m, "assoc",
                   make_judgment(m, m.tensor_etype(m.tensor_etype(a, b), c),
                                 m.assoc(m.refines(a), m.refines(b), m.refines(c)),
                                 m.tensor_etype(a, m.tensor_etype(b, c))),
                   m.assoc_morph(a, b, c));
}

template <class M>
Derivation<M> assoc_inv_derivation(const M& m, const typename M::EType& a, const typename M::EType& b,
                                   const typename M::EType& c) {
  return primitive(m, "assoc'",
                   make_judgment(m, m.tensor_etype(a, m.tensor_etype(b, c)),
                                 m.assoc_inv(m.refines(a), m.refines(b), m.refines(c)),
                                 m.tensor_etype(m.tensor_etype(a, b), c)),
                   m.assoc_inv_morph(a, b, c));
}

template <class M>
Derivation<M> lunit_derivation(const M& m, const typename M::EType& a) {
  return primitive(m, "lunit", make_judgment(m, m.tensor_etype(m.unit_etype(), a), m.lunit(m.refines(a)), a),
                   m.lunit_morph(a));
}

template <class M>
Derivation<M> lunit_inv_derivation(const M& m, const typename M::EType& a) {
  return primitive(m, "lunit'", make_judgment(m, a, m.lunit_inv(m.refines(a)), m.tensor_etype(m.unit_etype(), a)),
                   m.lunit_inv_morph(a));
}

template <class M>
Derivation<M> runit_derivation(const M& m, const typename M::EType& a) {
  return primitive(m, "runit", make_judgment(m, m.tensor_etype(a, m.unit_etype()), m.runit(m.refines(a)), a),
                   m.runit_morph(a));
}

template <class M>
Derivation<M> runit_inv_derivation(const M& m, const typename M::EType& a) {
  return primitive(m, "runit'", make_judgment(m, a, m.runit_inv(m.refines(a)), m.tensor_etype(a, m.unit_etype())),
                   m.runit_inv_morph(a));
}

// C(M(M(a1,a2),a3), assoc) = C(assoc, M(a1,M(a2,a3)))
template <class M>
bool check_assoc_law(const M& m, const Derivation<M>& a1, const Derivation<M>& a2, const Derivation<M>& a3) {
  auto lhs = compose_derivations(m, tensor_derivations(m, tensor_derivations(m, a1, a2), a3),
                                 assoc_derivation(m, a1.object(), a2.object(), a3.object()));
  auto rhs = compose_derivations(m, assoc_derivation(m, a1.subject(), a2.subject(), a3.subject()),
                                 tensor_derivations(m, a1, tensor_derivations(m, a2, a3)));
  return equal(m, lhs, rhs);
}

template <class M>
bool check_unit_laws(const M& m, const Derivation<M>& a) {
  auto u = unit_derivation(m);
  bool right = equal(m, compose_derivations(m, tensor_derivations(m, a, u), runit_derivation(m, a.object())),
                     compose_derivations(m, runit_derivation(m, a.subject()), a));
  bool left = equal(m, compose_derivations(m, tensor_derivations(m, u, a), lunit_derivation(m, a.object())),
                    compose_derivations(m, lunit_derivation(m, a.subject()), a));
  return right && left;
}

// M(C(a1,b1), C(a2,b2)) = C(M(a1,a2), M(b1,b2)), and M(I,I) = I.
template <class M>
bool check_bifunctoriality(const M& m, const Derivation<M>& a1, const Derivation<M>& b1, const Derivation<M>& a2,
                           const Derivation<M>& b2) {
  auto lhs = tensor_derivations(m, compose_derivations(m, a1, b1), compose_derivations(m, a2, b2));
  auto rhs = compose_derivations(m, tensor_derivations(m, a1, a2), tensor_derivations(m, b1, b2));
  return equal(m, lhs, rhs);
}

template <class M>
bool check_tensor_identity(const M& m, const typename M::EType& S, const typename M::EType& T) {
  auto lhs = tensor_derivations(m, identity_derivation(m, S), identity_derivation(m, T));
  return equal(m, lhs, identity_derivation(m, m.tensor_etype(S, T))) &&
         equal(m, identity_derivation(m, m.unit_etype()), unit_derivation(m));
}

// The coherence derivations compose to identities (up to conversion) and p is
// strict monoidal on the given e-types.
template <class M>
bool check_coherence(const M& m, const typename M::EType& a, const typename M::EType& b, const typename M::EType& c) {
  auto iso = [&](const Derivation<M>& x, const Derivation<M>& y) {
    auto xy = compose_derivations(m, x, y);
    auto yx = compose_derivations(m, y, x);
    return equal(m, conversion(m, xy, m.identity(m.refines(x.subject()))), as_subtyping(m, identity_derivation(m, x.subject()))) &&
           equal(m, conversion(m, yx, m.identity(m.refines(y.subject()))), as_subtyping(m, identity_derivation(m, y.subject())));
  };
  return m.same_itype(m.refines(m.tensor_etype(a, b)), m.tensor_itype(m.refines(a), m.refines(b))) &&
         m.same_itype(m.refines(m.unit_etype()), m.unit_itype()) &&
         iso(assoc_derivation(m, a, b, c), assoc_inv_derivation(m, a, b, c)) &&
         iso(lunit_derivation(m, a), lunit_inv_derivation(m, a)) && iso(runit_derivation(m, a), runit_inv_derivation(m, a));
}

// Searches the enumerated hom-set for an inverse of a subtyping derivation.
template <class M>
std::optional<VerticalIso<M>> find_inverse(const M& m, const Derivation<M>& d) {
  const auto id = m.identity(m.refines(d.subject()));
  auto j = make_subtyping(m, d.object(), d.subject());
  if constexpr (requires { m.invert_vertical(d.subject(), d.object(), d.morph()); }) {
    auto h = m.invert_vertical(d.subject(), d.object(), d.morph());
    if (!h) return std::nullopt;
    Derivation<M> back(j, "inv", {}, std::move(*h));
    if (is_vertical_iso(m, d, back)) return VerticalIso<M>{d, back};
    return std::nullopt;
  }
  for (auto& h : m.hom_over(d.object(), id, d.subject())) {
    Derivation<M> back(j, "inv", {}, std::move(h));
    if (is_vertical_iso(m, d, back)) return VerticalIso<M>{d, back};
  }
  return std::nullopt;
}

// f1*T1 (x) f2*T2 <= (f1 (x) f2)*(T1 (x) T2), and an inverse.
template <class M>
std::optional<VerticalIso<M>> pull_preservation(const M& m, const typename M::Expr& f1, const typename M::EType& T1,
                                                const typename M::Expr& f2, const typename M::EType& T2) {
  auto w1 = pullback(m, f1, T1);
  auto w2 = pullback(m, f2, T2);
  const auto f12 = m.tensor_expr(f1, f2);
  auto w = pullback(m, f12, m.tensor_etype(T1, T2));
  auto both = tensor_derivations(m, w1.left, w2.left);
  const auto id = m.identity(m.refines(both.subject()));
  auto canon = as_subtyping(m, w.right(both.subject(), id, conversion(m, both, m.compose(id, f12))));
  return find_inverse(m, canon);
}

// (f1 (x) f2)(S1 (x) S2) <= f1 S1 (x) f2 S2, and an inverse.
template <class M>
std::optional<VerticalIso<M>> push_preservation(const M& m, const typename M::EType& S1, const typename M::Expr& f1,
                                                const typename M::EType& S2, const typename M::Expr& f2) {
  auto w1 = pushforward(m, S1, f1);
  auto w2 = pushforward(m, S2, f2);
  const auto f12 = m.tensor_expr(f1, f2);
  auto w = pushforward(m, m.tensor_etype(S1, S2), f12);
  auto both = tensor_derivations(m, w1.right, w2.right);
  const auto id = m.identity(m.refines(both.object()));
  auto canon = as_subtyping(m, w.left(id, both.object(), conversion(m, both, m.compose(f12, id))));
  return find_inverse(m, canon);
}

// S -o U with its evaluation S (x) (S -o U) ==plugL==> U and currying
// (S (x) T ==f==> U) |-> T ==lc(f)==> S -o U.
template <class M>
struct LeftResidualWitness {
  using RightRule = std::function<Derivation<M>(const typename M::EType& T, const typename M::Expr& f,
                                                const Derivation<M>& beta)>;
  typename M::EType S, U, result;
  Derivation<M> left;
  RightRule right;
};

// U o- T with (U o- T) (x) T ==plugR==> U and (S (x) T ==f==> U) |-> S ==rc(f)==> U o- T.
template <class M>
struct RightResidualWitness {
  using RightRule = std::function<Derivation<M>(const typename M::EType& S, const typename M::Expr& f,
                                                const Derivation<M>& beta)>;
  typename M::EType U, T, result;
  Derivation<M> left;
  RightRule right;
};

template <class M>
LeftResidualWitness<M> residual_left(const M& m, const typename M::EType& S, const typename M::EType& U) {
  const auto A = m.refines(S);
  const auto C = m.refines(U);
  auto R = m.lres(S, U);
  auto left = primitive(m, "plugL", make_judgment(m, m.tensor_etype(S, R), m.plug_left(A, C), U), m.lres_left(S, U));
  typename LeftResidualWitness<M>::RightRule right = [m, S, U, R, A](const typename M::EType& T,
                                                                    const typename M::Expr& f,
                                                                    const Derivation<M>& beta) {
    detail::expect_etype(m, beta.subject(), m.tensor_etype(S, T), "lc");
    detail::expect_etype(m, beta.object(), U, "lc");
    detail::expect_expr(m, beta, f, "lc");
    return primitive(m, "lc", make_judgment(m, T, m.curry_left(f, A, m.refines(T)), R),
                     m.lres_right(S, T, U, f, beta.morph()), {beta});
  };
  return LeftResidualWitness<M>{S, U, R, left, right};
}

template <class M>
RightResidualWitness<M> residual_right(const M& m, const typename M::EType& U, const typename M::EType& T) {
  const auto B = m.refines(T);
  const auto C = m.refines(U);
  auto R = m.rres(U, T);
  auto left = primitive(m, "plugR", make_judgment(m, m.tensor_etype(R, T), m.plug_right(C, B), U), m.rres_left(U, T));
  typename RightResidualWitness<M>::RightRule right = [m, U, T, R, B](const typename M::EType& S,
                                                                     const typename M::Expr& f,
                                                                     const Derivation<M>& beta) {
    detail::expect_etype(m, beta.subject(), m.tensor_etype(S, T), "rc");
    detail::expect_etype(m, beta.object(), U, "rc");
    detail::expect_expr(m, beta, f, "rc");
    return primitive(m, "rc", make_judgment(m, S, m.curry_right(f, m.refines(S), B), R),
                     m.rres_right(S, T, U, f, beta.morph()), {beta});
  };
  return RightResidualWitness<M>{U, T, R, left, right};
}

// beta: C(M(I_S, lc(b)), plugL) = b; eta: lc(C(M(I_S, g), plugL)) = g.
template <class M>
CheckReport check_residual_laws(const M& m, const LeftResidualWitness<M>& w, const std::vector<typename M::IType>& probes) {
  CheckReport r{"left residual beta/eta"};
  const auto A = m.refines(w.S);
  const auto C = m.refines(w.U);
  const auto idS = identity_derivation(m, w.S);
  for (const auto& B : probes)
    for (const auto& T : m.etypes_over(B)) {
      const auto ST = m.tensor_etype(w.S, T);
      for (const auto& f : m.expressions(m.tensor_itype(A, B), C))
        for (const auto& b : derivations_over(m, ST, f, w.U))
          guarded(r, "beta at T=" + m.show_etype(T) + " f=" + m.show_expr(f), [&] {
            return equal(m, compose_derivations(m, tensor_derivations(m, idS, w.right(T, f, b)), w.left), b);
          });
      for (const auto& g : m.expressions(B, m.refines(w.result)))
        for (const auto& e : derivations_over(m, T, g, w.result))
          guarded(r, "eta at T=" + m.show_etype(T) + " g=" + m.show_expr(g), [&] {
            auto body = compose_derivations(m, tensor_derivations(m, idS, e), w.left);
            return equal(m, w.right(T, body.expr(), body), e);
          });
    }
  return r;
}

template <class M>
CheckReport check_residual_laws(const M& m, const RightResidualWitness<M>& w, const std::vector<typename M::IType>& probes) {
  CheckReport r{"right residual beta/eta"};
  const auto B = m.refines(w.T);
  const auto C = m.refines(w.U);
  const auto idT = identity_derivation(m, w.T);
  for (const auto& A : probes)
    for (const auto& S : m.etypes_over(A)) {
      const auto ST = m.tensor_etype(S, w.T);
      for (const auto& f : m.expressions(m.tensor_itype(A, B), C))
        for (const auto& b : derivations_over(m, ST, f, w.U))
          guarded(r, "beta at S=" + m.show_etype(S) + " f=" + m.show_expr(f), [&] {
            return equal(m, compose_derivations(m, tensor_derivations(m, w.right(S, f, b), idT), w.left), b);
          });
      for (const auto& g : m.expressions(A, m.refines(w.result)))
        for (const auto& e : derivations_over(m, S, g, w.result))
          guarded(r, "eta at S=" + m.show_etype(S) + " g=" + m.show_expr(g), [&] {
            auto body = compose_derivations(m, tensor_derivations(m, e, idT), w.left);
            return equal(m, w.right(S, body.expr(), body), e);
          });
    }
  return r;
}

// From S2 <= S1 and U1 <= U2 derive S1 -o U1 <= S2 -o U2.
template <class M>
Derivation<M> lres_subtyping(const M& m, const Derivation<M>& s21, const Derivation<M>& u12) {
  auto w1 = residual_left(m, s21.object(), u12.subject());
  auto w2 = residual_left(m, s21.subject(), u12.object());
  auto body = compose_derivations(
      m, compose_derivations(m, tensor_derivations(m, s21, identity_derivation(m, w1.result)), w1.left), u12);
  auto d = w2.right(w1.result, body.expr(), body);
  return as_subtyping(m, conversion(m, d, m.identity(m.refines(w1.result))));
}

// From T2 <= T1 and U1 <= U2 derive U1 o- T1 <= U2 o- T2.
template <class M>
Derivation<M> rres_subtyping(const M& m, const Derivation<M>& t21, const Derivation<M>& u12) {
  auto w1 = residual_right(m, u12.subject(), t21.object());
  auto w2 = residual_right(m, u12.object(), t21.subject());
  auto body = compose_derivations(
      m, compose_derivations(m, tensor_derivations(m, identity_derivation(m, w1.result), t21), w1.left), u12);
  auto d = w2.right(w1.result, body.expr(), body);
  return as_subtyping(m, conversion(m, d, m.identity(m.refines(w1.result))));
}

// shift = lc(plugR) : B -> (C o- B) -o C
template <class M>
typename M::Expr shift_expr(const M& m, const typename M::IType& B, const typename M::IType& C) {
  return m.curry_left(m.plug_right(C, B), m.rres_itype(C, B), B);
}

// reset = lunit' ; (rc(lunit_B) (x) id) ; plugL : (B o- B) -o C -> C
template <class M>
typename M::Expr reset_expr(const M& m, const typename M::IType& B, const typename M::IType& C) {
  const auto BB = m.rres_itype(B, B);
  const auto X = m.lres_itype(BB, C);
  const auto point = m.curry_right(m.lunit(B), m.unit_itype(), B);
  return m.compose(m.compose(m.lunit_inv(X), m.tensor_expr(point, m.identity(X))), m.plug_left(BB, C));
}

// T ==shift==> (U o- T) -o U
template <class M>
Derivation<M> shift_derivation(const M& m, const typename M::EType& T, const typename M::EType& U) {
  auto r = residual_right(m, U, T);
  auto l = residual_left(m, r.result, U);
  return l.right(T, r.left.expr(), r.left);
}

// (T o- T) -o U ==reset==> U
template <class M>
Derivation<M> reset_derivation(const M& m, const typename M::EType& T, const typename M::EType& U) {
  auto tt = residual_right(m, T, T);
  auto l = residual_left(m, tt.result, U);
  auto lu = lunit_derivation(m, T);
  auto point = tt.right(m.unit_etype(), lu.expr(), lu);
  auto mid = tensor_derivations(m, point, identity_derivation(m, l.result));
  return compose_derivations(m, compose_derivations(m, lunit_inv_derivation(m, l.result), mid), l.left);
}

// A binary operation on an i-type H, with optional monoid laws.
template <class M>
struct SepSignature {
  typename M::IType H;
  typename M::Expr mult;  // H (x) H -> H
  std::optional<typename M::Expr> emp;  // 1 -> H
  bool monoid = false;  // whether the laws were asked for and hold
};

template <class M>
bool monoid_laws(const M& m, const SepSignature<M>& sig) {
  if (!sig.emp) return false;
  const auto& H = sig.H;
  const auto& mu = sig.mult;
  const auto idH = m.identity(H);
  auto a1 = m.compose(m.tensor_expr(mu, idH), mu);
  auto a2 = m.compose(m.compose(m.assoc(H, H, H), m.tensor_expr(idH, mu)), mu);
  auto l = m.compose(m.tensor_expr(*sig.emp, idH), mu);
  auto r = m.compose(m.tensor_expr(idH, *sig.emp), mu);
  return m.same_expr(a1, a2) && m.same_expr(l, m.lunit(H)) && m.same_expr(r, m.runit(H));
}

template <class M>
SepSignature<M> make_sep_signature(const M& m, const typename M::IType& H, const typename M::Expr& mult,
                                   std::optional<typename M::Expr> emp, bool require_monoid) {
  const auto HH = m.tensor_itype(H, H);
  if (!m.same_itype(m.dom(mult), HH) || !m.same_itype(m.cod(mult), H)) {
    fail(ErrorKind::validation, "multiplication " + m.show_expr(mult) + " is not H*H -> H");
  }
  if (emp && (!m.same_itype(m.dom(*emp), m.unit_itype()) || !m.same_itype(m.cod(*emp), H))) {
    fail(ErrorKind::validation, "unit " + m.show_expr(*emp) + " is not 1 -> H");
  }
  SepSignature<M> sig{H, mult, emp, false};
  sig.monoid = monoid_laws(m, sig);
  if (require_monoid && !sig.monoid) fail(ErrorKind::validation, "monoid laws fail for " + m.show_expr(mult));
  return sig;
}

// An operation op : A (x) B -> C used to build separating connectives.
template <class M>
struct SepOp {
  typename M::IType A, B, C;
  typename M::Expr op;
};

template <class M>
SepOp<M> sep_op(const M& m, const typename M::IType& A, const typename M::IType& B, const typename M::Expr& op) {
  if (!m.same_itype(m.dom(op), m.tensor_itype(A, B))) {
    fail(ErrorKind::validation, "operation " + m.show_expr(op) + " is not on " + m.show_itype(A) + "*" + m.show_itype(B));
  }
  return SepOp<M>{A, B, m.cod(op), op};
}

template <class M>
SepOp<M> sep_op(const M& m, const SepSignature<M>& sig) {
  return sep_op(m, sig.H, sig.H, sig.mult);
}

// S * T := op(S (x) T)
template <class M>
typename M::EType star(const M& m, const SepOp<M>& op, const typename M::EType& S, const typename M::EType& T) {
  return m.push(m.tensor_etype(S, T), op.op);
}

// T -* U := rc(op)*(U o- T), refining A.
template <class M>
typename M::EType wand_right(const M& m, const SepOp<M>& op, const typename M::EType& U, const typename M::EType& T) {
  return m.pull(m.curry_right(op.op, op.A, op.B), m.rres(U, T));
}

// the other side: lc(op)*(S -o U), refining B.
template <class M>
typename M::EType wand_left(const M& m, const SepOp<M>& op, const typename M::EType& S, const typename M::EType& U) {
  return m.pull(m.curry_left(op.op, op.A, op.B), m.lres(S, U));
}

// Rule M*: from S1 <= S2 and T1 <= T2 derive S1*T1 <= S2*T2.
template <class M>
Derivation<M> star_monotone(const M& m, const SepOp<M>& op, const Derivation<M>& s, const Derivation<M>& t) {
  auto w1 = pushforward(m, m.tensor_etype(s.subject(), t.subject()), op.op);
  auto w2 = pushforward(m, m.tensor_etype(s.object(), t.object()), op.op);
  auto body = compose_derivations(m, tensor_derivations(m, s, t), w2.right);
  const auto id = m.identity(op.C);
  return as_subtyping(m, w1.left(id, w2.result, conversion(m, body, m.compose(op.op, id))));
}

// Rule R-*: from S*T <= U derive S <= T -* U.
template <class M>
Derivation<M> wand_intro(const M& m, const SepOp<M>& op, const typename M::EType& S, const typename M::EType& T,
                         const Derivation<M>& d) {
  auto ps = pushforward(m, m.tensor_etype(S, T), op.op);
  auto body = conversion(m, compose_derivations(m, ps.right, d), op.op);
  auto rr = residual_right(m, d.object(), T);
  auto cur = rr.right(S, op.op, body);
  auto pb = pullback(m, cur.expr(), rr.result);
  const auto id = m.identity(op.A);
  return as_subtyping(m, pb.right(S, id, conversion(m, cur, m.compose(id, cur.expr()))));
}

// Rule L-*: (T -* U) * T <= U.
template <class M>
Derivation<M> wand_elim(const M& m, const SepOp<M>& op, const typename M::EType& T, const typename M::EType& U) {
  auto rr = residual_right(m, U, T);
  auto pb = pullback(m, m.curry_right(op.op, op.A, op.B), rr.result);
  auto body = compose_derivations(m, tensor_derivations(m, pb.left, identity_derivation(m, T)), rr.left);
  body = conversion(m, body, op.op);
  auto ps = pushforward(m, m.tensor_etype(pb.result, T), op.op);
  const auto id = m.identity(op.C);
  return as_subtyping(m, ps.left(id, U, conversion(m, body, m.compose(op.op, id))));
}

// C(M*(R-*(d), I_T), L-*) = d
template <class M>
bool check_wand_beta(const M& m, const SepOp<M>& op, const typename M::EType& S, const typename M::EType& T,
                     const Derivation<M>& d) {
  auto e = wand_intro(m, op, S, T, d);
  auto lhs = compose_derivations(m, star_monotone(m, op, e, identity_derivation(m, T)), wand_elim(m, op, T, d.object()));
  return equal(m, lhs, d);
}

// R-*(C(M*(e, I_T), L-*)) = e
template <class M>
bool check_wand_eta(const M& m, const SepOp<M>& op, const typename M::EType& T, const typename M::EType& U,
                    const Derivation<M>& e) {
  auto d = compose_derivations(m, star_monotone(m, op, e, identity_derivation(m, T)), wand_elim(m, op, T, U));
  return equal(m, wand_intro(m, op, e.subject(), T, d), e);
}

struct StarWandVerdicts {
  bool star_sub = false;   // S*T <= U
  bool right_sub = false;  // S <= T -* U
  bool left_sub = false;   // T <= S -* U (other side)
  bool agree() const { return star_sub == right_sub && right_sub == left_sub; }
};

template <class M>
StarWandVerdicts three_way_adjunction(const M& m, const SepOp<M>& op, const typename M::EType& S,
                                      const typename M::EType& T, const typename M::EType& U) {
  StarWandVerdicts v;
  v.star_sub = derivable_subtyping(m, star(m, op, S, T), U) == Verdict::derivable;
  v.right_sub = derivable_subtyping(m, S, wand_right(m, op, U, T)) == Verdict::derivable;
  v.left_sub = derivable_subtyping(m, T, wand_left(m, op, S, U)) == Verdict::derivable;
  return v;
}

}  // namespace refsys

#endif
