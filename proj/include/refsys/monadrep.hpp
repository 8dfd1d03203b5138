#ifndef REFSYS_MONADREP_HPP
#define REFSYS_MONADREP_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "refsys/monoidal.hpp"

namespace refsys {

// The opposite refinement system: same types, every expression and
// derivation reversed. Pullbacks of the opposite are pushforwards of the base.
template <class P>
class OpModel {
 public:
  using IType = typename P::IType;
  using Expr = typename P::Expr;
  using EType = typename P::EType;
  using Morph = typename P::Morph;

  OpModel() = default;
  explicit OpModel(P base) : base_(std::move(base)) {}
  const P& base() const { return base_; }

  IType refines(const EType& S) const { return base_.refines(S); }
  IType dom(const Expr& f) const { return base_.cod(f); }
  IType cod(const Expr& f) const { return base_.dom(f); }
  Expr compose(const Expr& f, const Expr& g) const { return base_.compose(g, f); }
  Expr identity(const IType& a) const { return base_.identity(a); }
  bool same_itype(const IType& a, const IType& b) const { return base_.same_itype(a, b); }
  bool same_expr(const Expr& f, const Expr& g) const { return base_.same_expr(f, g); }
  bool same_etype(const EType& S, const EType& T) const { return base_.same_etype(S, T); }
  std::vector<Morph> hom_over(const EType& S, const Expr& f, const EType& T) const {
    return base_.hom_over(T, f, S);
  }
  bool is_morph(const EType& S, const Expr& f, const EType& T, const Morph& m) const {
    return base_.is_morph(T, f, S, m);
  }
  Morph compose_morph(const Expr& f, const Morph& a, const Expr& g, const Morph& b) const {
    return base_.compose_morph(g, b, f, a);
  }
  Morph identity_morph(const EType& S) const { return base_.identity_morph(S); }
  bool same_morph(const Morph& a, const Morph& b) const { return base_.same_morph(a, b); }
  std::string show_itype(const IType& a) const { return base_.show_itype(a); }
  std::string show_expr(const Expr& f) const { return base_.show_expr(f) + "^op"; }
  std::string show_etype(const EType& S) const { return base_.show_etype(S); }
  std::string show_morph(const Morph& m) const { return base_.show_morph(m); }

  std::vector<EType> etypes_over(const IType& a) const { return base_.etypes_over(a); }
  std::vector<Expr> expressions(const IType& a, const IType& b) const { return base_.expressions(b, a); }

  EType pull(const Expr& f, const EType& T) const { return base_.push(T, f); }
  Morph pull_left(const Expr& f, const EType& T) const { return base_.push_right(T, f); }
  Morph pull_right(const Expr& f, const EType& T, const EType& S, const Expr& g, const Morph& beta) const {
    return base_.push_left(T, f, g, S, beta);
  }
  EType push(const EType& S, const Expr& f) const { return base_.pull(f, S); }
  Morph push_right(const EType& S, const Expr& f) const { return base_.pull_left(f, S); }
  Morph push_left(const EType& S, const Expr& f, const Expr& g, const EType& T, const Morph& beta) const {
    return base_.pull_right(f, S, T, g, beta);
  }

 private:
  P base_;
};

template <class P>
Derivation<OpModel<P>> to_op(const OpModel<P>& q, const Derivation<P>& d, std::string rule) {
  return primitive(q, std::move(rule), make_judgment(q, d.object(), d.expr(), d.subject()), d.morph());
}

template <class P>
Derivation<P> from_op(const P& p, const Derivation<OpModel<P>>& d, std::string rule) {
  return primitive(p, std::move(rule), make_judgment(p, d.object(), d.expr(), d.subject()), d.morph());
}

// An adjunction L -| R between refinement systems p and q, given at both
// levels, with unit, counit and a strength for RL.
template <class P, class Q>
struct Adjunction {
  using PI = typename P::IType;
  using PE = typename P::Expr;
  using PS = typename P::EType;
  using QI = typename Q::IType;
  using QE = typename Q::Expr;
  using QS = typename Q::EType;

  std::string name;
  P p;
  Q q;
  std::function<QI(const PI&)> L0;
  std::function<QE(const PE&)> L0f;
  std::function<PI(const QI&)> R0;
  std::function<PE(const QE&)> R0f;
  std::function<QS(const PS&)> L1;
  std::function<PS(const QS&)> R1;
  std::function<Derivation<Q>(const Derivation<P>&)> L;
  std::function<Derivation<P>(const Derivation<Q>&)> R;
  std::function<PE(const PI&)> eta;                    // A -> RL[A]
  std::function<QE(const QI&)> eps;                    // LR[X] -> X
  std::function<Derivation<P>(const PS&)> eta_d;       // S ==eta==> RL[S]
  std::function<Derivation<Q>(const QS&)> eps_d;       // LR[X] ==eps==> X
  std::function<PE(const PI&, const PI&)> sigma;       // A (x) RL[B] -> RL[A (x) B]
  std::function<Derivation<P>(const PS&, const PS&)> sigma_d;
};

template <class P, class Q>
typename P::IType rl_itype(const Adjunction<P, Q>& a, const typename P::IType& A) {
  return a.R0(a.L0(A));
}
template <class P, class Q>
typename P::Expr rl_expr(const Adjunction<P, Q>& a, const typename P::Expr& f) {
  return a.R0f(a.L0f(f));
}
template <class P, class Q>
typename P::EType rl_etype(const Adjunction<P, Q>& a, const typename P::EType& S) {
  return a.R1(a.L1(S));
}
template <class P, class Q>
Derivation<P> rl(const Adjunction<P, Q>& a, const Derivation<P>& d) {
  return a.R(a.L(d));
}

template <class M>
Adjunction<M, M> identity_adjunction(const M& m) {
  Adjunction<M, M> a;
  a.name = "identity";
  a.p = m;
  a.q = m;
  a.L0 = a.R0 = [](const typename M::IType& x) { return x; };
  a.L0f = a.R0f = [](const typename M::Expr& f) { return f; };
  a.L1 = a.R1 = [](const typename M::EType& S) { return S; };
  a.L = a.R = [](const Derivation<M>& d) { return d; };
  a.eta = a.eps = [m](const typename M::IType& x) { return m.identity(x); };
  a.eta_d = a.eps_d = [m](const typename M::EType& S) { return identity_derivation(m, S); };
  a.sigma = [m](const typename M::IType& A, const typename M::IType& B) {
    return m.identity(m.tensor_itype(A, B));
  };
  a.sigma_d = [m](const typename M::EType& S, const typename M::EType& T) {
    return identity_derivation(m, m.tensor_etype(S, T));
  };
  return a;
}

// L = U o- (-) into the opposite system, R = (-) -o U back. The unit is
// shift and RL is the continuation monad with answer type U.
template <class M>
Adjunction<M, OpModel<M>> continuation_adjunction(const M& m, const typename M::EType& U) {
  using IType = typename M::IType;
  using Expr = typename M::Expr;
  using EType = typename M::EType;
  using Q = OpModel<M>;
  Adjunction<M, Q> a;
  a.name = "continuation";
  a.p = m;
  a.q = Q(m);
  const Q q = a.q;
  const IType C = m.refines(U);
  a.L0 = [m, C](const IType& A) { return m.rres_itype(C, A); };
  a.L0f = [m, C](const Expr& f) {
    const auto KB = m.rres_itype(C, m.cod(f));
    auto body = m.compose(m.tensor_expr(m.identity(KB), f), m.plug_right(C, m.cod(f)));
    return m.curry_right(body, KB, m.dom(f));
  };
  a.R0 = [m, C](const IType& X) { return m.lres_itype(X, C); };
  a.R0f = [m, C](const Expr& g) {
    // g : X -> Y in the opposite, i.e. Y -> X in the base
    const auto X = m.cod(g);
    const auto KX = m.lres_itype(X, C);
    auto body = m.compose(m.tensor_expr(g, m.identity(KX)), m.plug_left(X, C));
    return m.curry_left(body, m.dom(g), KX);
  };
  a.L1 = [m, U](const EType& S) { return m.rres(U, S); };
  a.R1 = [m, U](const EType& X) { return m.lres(X, U); };
  a.L = [m, q, U](const Derivation<M>& d) {
    auto rT = residual_right(m, U, d.object());
    auto rS = residual_right(m, U, d.subject());
    auto body = compose_derivations(m, tensor_derivations(m, identity_derivation(m, rT.result), d), rT.left);
    return to_op(q, rS.right(rT.result, body.expr(), body), "L");
  };
  a.R = [m, U](const Derivation<Q>& dq) {
    auto d = from_op(m, dq, "op");
    auto lX = residual_left(m, d.object(), U);
    auto lY = residual_left(m, d.subject(), U);
    auto body = compose_derivations(m, tensor_derivations(m, d, identity_derivation(m, lX.result)), lX.left);
    auto out = lY.right(lX.result, body.expr(), body);
    return Derivation<M>(out.judgment(), "R", {out}, out.morph());
  };
  a.eta = [m, C](const IType& A) { return shift_expr(m, A, C); };
  a.eta_d = [m, U](const EType& S) { return shift_derivation(m, S, U); };
  a.eps = [m, C](const IType& X) { return m.curry_right(m.plug_left(X, C), X, m.lres_itype(X, C)); };
  a.eps_d = [m, q, U](const EType& X) {
    auto lX = residual_left(m, X, U);
    auto r = residual_right(m, U, lX.result);
    return to_op(q, r.right(X, lX.left.expr(), lX.left), "eps");
  };
  a.sigma = [m, C](const IType& A, const IType& B) {
    const auto AB = m.tensor_itype(A, B);
    const auto K = m.rres_itype(C, AB);
    const auto KB = m.rres_itype(C, B);
    const auto Phi = m.lres_itype(KB, C);
    auto h = m.curry_right(m.compose(m.assoc(K, A, B), m.plug_right(C, AB)), m.tensor_itype(K, A), B);
    auto body = m.compose(m.compose(m.assoc_inv(K, A, Phi), m.tensor_expr(h, m.identity(Phi))), m.plug_left(KB, C));
    return m.curry_left(body, K, m.tensor_itype(A, Phi));
  };
  a.sigma_d = [m, U](const EType& S, const EType& T) {
    const auto ST = m.tensor_etype(S, T);
    auto rK = residual_right(m, U, ST);
    auto inner = compose_derivations(m, assoc_derivation(m, rK.result, S, T), rK.left);
    auto rT = residual_right(m, U, T);
    auto h = rT.right(m.tensor_etype(rK.result, S), inner.expr(), inner);
    auto lP = residual_left(m, rT.result, U);
    auto body = compose_derivations(
        m,
        compose_derivations(m, assoc_inv_derivation(m, rK.result, S, lP.result),
                            tensor_derivations(m, h, identity_derivation(m, lP.result))),
        lP.left);
    auto lK = residual_left(m, rK.result, U);
    return lK.right(m.tensor_etype(S, lP.result), body.expr(), body);
  };
  return a;
}

// Naturality of unit and counit, both triangle laws and the two strength
// laws, at the given derivations of p and q.
template <class P, class Q>
CheckReport check_adjunction(const Adjunction<P, Q>& a, const std::vector<Derivation<P>>& pds,
                             const std::vector<Derivation<Q>>& qds) {
  const P& p = a.p;
  const Q& q = a.q;
  CheckReport r{"adjunction " + a.name};
  for (const auto& d : pds) {
    const auto S = d.subject();
    const auto T = d.object();
    const auto tag = " at " + show(p, d.judgment());
    guarded(r, "squares" + tag, [&] {
      auto Ld = a.L(d);
      auto Rl = rl(a, d);
      return q.same_itype(q.refines(a.L1(S)), a.L0(p.refines(S))) && q.same_expr(Ld.expr(), a.L0f(d.expr())) &&
             p.same_expr(Rl.expr(), rl_expr(a, d.expr()));
    });
    guarded(r, "unit naturality" + tag, [&] {
      return equal(p, compose_derivations(p, d, a.eta_d(T)), compose_derivations(p, a.eta_d(S), rl(a, d)));
    });
    guarded(r, "triangle L" + tag, [&] {
      auto lhs = compose_derivations(q, a.L(a.eta_d(S)), a.eps_d(a.L1(S)));
      return equal(q, lhs, identity_derivation(q, a.L1(S)));
    });
    guarded(r, "strength unit" + tag, [&] {
      auto lhs = compose_derivations(p, tensor_derivations(p, identity_derivation(p, S), a.eta_d(T)), a.sigma_d(S, T));
      return equal(p, lhs, a.eta_d(p.tensor_etype(S, T))) &&
             p.same_expr(a.sigma_d(S, T).expr(), a.sigma(p.refines(S), p.refines(T)));
    });
    guarded(r, "strength naturality" + tag, [&] {
      auto lhs = compose_derivations(p, tensor_derivations(p, d, rl(a, d)), a.sigma_d(T, T));
      auto rhs = compose_derivations(p, a.sigma_d(S, S), rl(a, tensor_derivations(p, d, d)));
      return equal(p, lhs, rhs);
    });
  }
  for (const auto& d : qds) {
    const auto X = d.subject();
    const auto Y = d.object();
    const auto tag = " at " + show(q, d.judgment());
    guarded(r, "counit naturality" + tag, [&] {
      return equal(q, compose_derivations(q, a.L(a.R(d)), a.eps_d(Y)), compose_derivations(q, a.eps_d(X), d));
    });
    guarded(r, "triangle R" + tag, [&] {
      auto lhs = compose_derivations(p, a.eta_d(a.R1(X)), a.R(a.eps_d(X)));
      return equal(p, lhs, identity_derivation(p, a.R1(X)));
    });
  }
  return r;
}

// The fiberwise monad eta*RL[S] on the fiber over refines(S).
template <class P, class Q>
typename P::EType monad_etype(const Adjunction<P, Q>& a, const typename P::EType& S) {
  return a.p.pull(a.eta(a.p.refines(S)), rl_etype(a, S));
}

template <class P, class Q>
Derivation<P> monad_unit(const Adjunction<P, Q>& a, const typename P::EType& S) {
  const P& p = a.p;
  const auto A = p.refines(S);
  const auto id = p.identity(A);
  auto w = pullback(p, a.eta(A), rl_etype(a, S));
  return as_subtyping(p, w.right(S, id, conversion(p, a.eta_d(S), p.compose(id, a.eta(A)))));
}

// Action on a subtyping S <= S'.
template <class P, class Q>
Derivation<P> monad_map(const Adjunction<P, Q>& a, const Derivation<P>& d) {
  const P& p = a.p;
  const auto A = p.refines(d.subject());
  const auto id = p.identity(A);
  auto ws = pullback(p, a.eta(A), rl_etype(a, d.subject()));
  auto wt = pullback(p, a.eta(A), rl_etype(a, d.object()));
  auto c = compose_derivations(p, ws.left, rl(a, d));
  return as_subtyping(p, wt.right(ws.result, id, conversion(p, c, p.compose(id, a.eta(A)))));
}

// eta*RL[eta*RL[S]] ==eta==> RL[eta*RL[S]] ==RL eta==> RLRL[S] ==R eps==> RL[S],
// converted to eta by the triangle law and pulled back.
template <class P, class Q>
Derivation<P> monad_mult(const Adjunction<P, Q>& a, const typename P::EType& S) {
  const P& p = a.p;
  const auto A = p.refines(S);
  const auto id = p.identity(A);
  auto w1 = pullback(p, a.eta(A), rl_etype(a, S));
  auto w2 = pullback(p, a.eta(A), rl_etype(a, w1.result));
  auto c = compose_derivations(p, compose_derivations(p, w2.left, rl(a, w1.left)), a.R(a.eps_d(a.L1(S))));
  auto e = conversion(p, c, a.eta(A));
  return as_subtyping(p, w1.right(w2.result, id, conversion(p, e, p.compose(id, a.eta(A)))));
}

template <class P, class Q>
CheckReport check_monad_laws(const Adjunction<P, Q>& a, const typename P::EType& S) {
  const P& p = a.p;
  CheckReport r{"fiberwise monad " + a.name};
  const auto tag = " at " + p.show_etype(S);
  guarded(r, "left unit" + tag, [&] {
    auto mu = monad_mult(a, S);
    return equal(p, compose_derivations(p, monad_unit(a, monad_etype(a, S)), mu), identity_derivation(p, monad_etype(a, S)));
  });
  guarded(r, "right unit" + tag, [&] {
    auto mu = monad_mult(a, S);
    return equal(p, compose_derivations(p, monad_map(a, monad_unit(a, S)), mu), identity_derivation(p, monad_etype(a, S)));
  });
  guarded(r, "associativity" + tag, [&] {
    auto mu = monad_mult(a, S);
    auto lhs = compose_derivations(p, monad_map(a, mu), mu);
    auto rhs = compose_derivations(p, monad_mult(a, monad_etype(a, S)), mu);
    return equal(p, lhs, rhs);
  });
  return r;
}

// xi = lc(sigma ; RL[plugR] ; R[eps]) : RL[B] -> (R[C] o- B) -o R[C]
template <class P, class Q>
typename P::Expr xi_expr(const Adjunction<P, Q>& a, const typename P::IType& B, const typename Q::IType& C) {
  const P& p = a.p;
  const auto RC = a.R0(C);
  const auto K = p.rres_itype(RC, B);
  auto body = p.compose(p.compose(a.sigma(K, B), rl_expr(a, p.plug_right(RC, B))), a.R0f(a.eps(C)));
  return p.curry_left(body, K, rl_itype(a, B));
}

template <class P, class Q>
Derivation<P> xi_derivation(const Adjunction<P, Q>& a, const typename P::EType& T, const typename Q::EType& U) {
  const P& p = a.p;
  const auto RU = a.R1(U);
  auto rr = residual_right(p, RU, T);
  auto body = compose_derivations(
      p, compose_derivations(p, a.sigma_d(rr.result, T), rl(a, rr.left)), a.R(a.eps_d(U)));
  auto lw = residual_left(p, rr.result, RU);
  return lw.right(rl_etype(a, T), body.expr(), body);
}

// eta ; xi = lc(plugR), at both levels.
template <class P, class Q>
CheckReport check_xi(const Adjunction<P, Q>& a, const typename P::EType& T, const typename Q::EType& U) {
  const P& p = a.p;
  CheckReport r{"xi " + a.name};
  const auto B = p.refines(T);
  const auto C = a.q.refines(U);
  const auto tag = " at T=" + p.show_etype(T) + " U=" + a.q.show_etype(U);
  guarded(r, "expression" + tag, [&] {
    return p.same_expr(p.compose(a.eta(B), xi_expr(a, B, C)), shift_expr(p, B, a.R0(C)));
  });
  guarded(r, "derivation" + tag, [&] {
    auto x = xi_derivation(a, T, U);
    return p.same_expr(x.expr(), xi_expr(a, B, C)) &&
           equal(p, compose_derivations(p, a.eta_d(T), x), shift_derivation(p, T, a.R1(U)));
  });
  return r;
}

// A pullback witness whose left rule is the given derivation, when the
// comparison into the chosen pullback is invertible.
template <class M>
std::optional<PullbackWitness<M>> cartesian_witness(const M& m, const Derivation<M>& d) {
  auto w = pullback(m, d.expr(), d.object());
  const auto idA = m.identity(m.refines(d.subject()));
  auto cmp = as_subtyping(m, w.right(d.subject(), idA, conversion(m, d, m.compose(idA, d.expr()))));
  auto iso = find_inverse(m, cmp);
  if (!iso) return std::nullopt;
  const auto back = iso->backward;
  typename PullbackWitness<M>::RightRule right = [m, w, back](const typename M::EType& S, const typename M::Expr& g,
                                                              const Derivation<M>& beta) {
    return conversion(m, compose_derivations(m, w.right(S, g, beta), back), g);
  };
  return PullbackWitness<M>{d.expr(), d.object(), d.subject(), d, right};
}

template <class M>
std::optional<PushforwardWitness<M>> cocartesian_witness(const M& m, const Derivation<M>& d) {
  auto w = pushforward(m, d.subject(), d.expr());
  const auto idB = m.identity(m.refines(d.object()));
  auto cmp = as_subtyping(m, w.left(idB, d.object(), conversion(m, d, m.compose(d.expr(), idB))));
  auto iso = find_inverse(m, cmp);
  if (!iso) return std::nullopt;
  const auto back = iso->backward;
  typename PushforwardWitness<M>::LeftRule left = [m, w, back](const typename M::Expr& g, const typename M::EType& T,
                                                               const Derivation<M>& beta) {
    return conversion(m, compose_derivations(m, back, w.left(g, T, beta)), g);
  };
  return PushforwardWitness<M>{d.subject(), d.expr(), d.object(), d, left};
}

template <class M>
bool is_pullback(const M& m, const Derivation<M>& d) {
  return cartesian_witness(m, d).has_value();
}

template <class M>
bool is_pushforward(const M& m, const Derivation<M>& d) {
  return cocartesian_witness(m, d).has_value();
}

// A judgment decorated as a pullback square or a pushforward square.
enum class Square { pullback, pushforward };

template <class M>
struct DiagramJudgment {
  Derivation<M> d;
  Square kind;
};

template <class M>
bool holds(const M& m, const DiagramJudgment<M>& j) {
  return j.kind == Square::pullback ? is_pullback(m, j.d) : is_pushforward(m, j.d);
}

struct TwoOutOfThree {
  bool pull_premises = false;
  bool pull_conclusion = false;
  bool push_premises = false;
  bool push_conclusion = false;
  bool ok() const { return (!pull_premises || pull_conclusion) && (!push_premises || push_conclusion); }
};

// For S ==f==> T ==g==> U: if the composite and the second square are
// pullbacks so is the first; if the composite and the first are
// pushforwards so is the second.
template <class M>
TwoOutOfThree check_2outof3(const M& m, const Derivation<M>& d1, const Derivation<M>& d2) {
  TwoOutOfThree out;
  auto c = compose_derivations(m, d1, d2);
  out.pull_premises = is_pullback(m, c) && is_pullback(m, d2);
  if (out.pull_premises) out.pull_conclusion = is_pullback(m, d1);
  out.push_premises = is_pushforward(m, c) && is_pushforward(m, d1);
  if (out.push_premises) out.push_conclusion = is_pushforward(m, d2);
  return out;
}

// F_mu : eta*RL[T] <= shift*((R[U] o- T) -o R[U])
template <class P, class Q>
Derivation<P> f_mu(const Adjunction<P, Q>& a, const typename P::EType& T, const typename Q::EType& U) {
  const P& p = a.p;
  const auto B = p.refines(T);
  const auto idB = p.identity(B);
  auto we = pullback(p, a.eta(B), rl_etype(a, T));
  auto x = xi_derivation(a, T, U);
  auto c = compose_derivations(p, we.left, x);
  const auto sh = shift_expr(p, B, a.R0(a.q.refines(U)));
  auto ws = pullback(p, sh, x.object());
  auto d = ws.right(we.result, idB, conversion(p, conversion(p, c, sh), p.compose(idB, sh)));
  return Derivation<P>(make_subtyping(p, d.subject(), d.object()), "Fmu", {d}, d.morph());
}

namespace detail {

// From e : T ==g==> V build 1 ==rc(lunit;g)==> V o- T, tensor it with
// d : X ==h==> (V o- T) -o V and plug:
//   X ==lunit';(rc(lunit;g) (x) h);plugL==> V.
template <class M>
Derivation<M> plug_point(const M& m, const Derivation<M>& e, const Derivation<M>& d) {
  const auto T = e.subject();
  const auto V = e.object();
  auto eu = compose_derivations(m, lunit_derivation(m, T), e);
  auto rr = residual_right(m, V, T);
  auto point = rr.right(m.unit_etype(), eu.expr(), eu);
  auto lw = residual_left(m, rr.result, V);
  auto mid = tensor_derivations(m, point, d);
  return compose_derivations(m, compose_derivations(m, lunit_inv_derivation(m, d.subject()), mid), lw.left);
}

}  // namespace detail

// F_box : shift*((R[U] o- T) -o R[U]) <= eta*RL[T], given a derivation
// alpha : RL[T] ==f==> R[U] that is a pullback square.
template <class P, class Q>
Derivation<P> f_box(const Adjunction<P, Q>& a, const typename P::EType& T, const typename Q::EType& U,
                    const Derivation<P>& alpha) {
  const P& p = a.p;
  detail::expect_etype(p, alpha.subject(), rl_etype(a, T), "Fbox");
  detail::expect_etype(p, alpha.object(), a.R1(U), "Fbox");
  auto cw = cartesian_witness(p, alpha);
  if (!cw) fail(ErrorKind::validation, "Fbox: hypothesis " + show(p, alpha.judgment()) + " is not a pullback");
  const auto B = p.refines(T);
  const auto idB = p.identity(B);
  const auto sh = shift_expr(p, B, a.R0(a.q.refines(U)));
  auto rr = residual_right(p, a.R1(U), T);
  auto lw = residual_left(p, rr.result, a.R1(U));
  auto ws = pullback(p, sh, lw.result);
  auto body = detail::plug_point(p, compose_derivations(p, a.eta_d(T), alpha), ws.left);
  auto ef = p.compose(a.eta(B), alpha.expr());
  auto to_rl = cw->right(ws.result, a.eta(B), conversion(p, body, ef));
  auto we = pullback(p, a.eta(B), rl_etype(a, T));
  auto d = we.right(ws.result, idB, conversion(p, to_rl, p.compose(idB, a.eta(B))));
  return Derivation<P>(make_subtyping(p, d.subject(), d.object()), "Fbox", {d}, d.morph());
}

// C(F_mu, F_box) = I
template <class P>
bool check_retraction(const P& p, const Derivation<P>& mu, const Derivation<P>& box) {
  return equal(p, compose_derivations(p, mu, box), identity_derivation(p, mu.subject()));
}

// C(F_box, F_mu) = I, which fails in general.
template <class P>
bool check_section(const P& p, const Derivation<P>& mu, const Derivation<P>& box) {
  return equal(p, compose_derivations(p, box, mu), identity_derivation(p, box.subject()));
}

// An e-type U with, for each encodable S, an expression e_S such that
// S ==e_S==> U is a pullback.
template <class M>
struct UniversalType {
  typename M::EType U;
  std::function<std::optional<typename M::Expr>(const typename M::EType&)> encode;
};

template <class M>
Derivation<M> encoding_derivation(const M& m, const UniversalType<M>& u, const typename M::EType& S) {
  auto e = u.encode(S);
  if (!e) fail(ErrorKind::capability, "no encoding for " + m.show_etype(S));
  auto ds = derivations_over(m, S, *e, u.U);
  if (ds.empty()) fail(ErrorKind::validation, "encoding of " + m.show_etype(S) + " is not typable");
  for (const auto& d : ds)
    if (is_pullback(m, d)) return Derivation<M>(d.judgment(), "enc", {}, d.morph());
  fail(ErrorKind::validation, "encoding of " + m.show_etype(S) + " is not a pullback");
}

template <class M>
CheckReport check_universal(const M& m, const UniversalType<M>& u, const std::vector<typename M::EType>& ss) {
  CheckReport r{"universal type " + m.show_etype(u.U)};
  for (const auto& S : ss)
    guarded(r, "encoding of " + m.show_etype(S), [&] {
      encoding_derivation(m, u, S);
      return true;
    });
  return r;
}

// DN = (R[U] o- T) -o R[U] ==k==> R[U] with k = lunit';(rc(lunit;eta;R[e]) (x) id);plugL
template <class P, class Q>
Derivation<P> reflection_map(const Adjunction<P, Q>& a, const UniversalType<Q>& u, const typename P::EType& T) {
  const P& p = a.p;
  const auto RU = a.R1(u.U);
  auto enc = a.R(encoding_derivation(a.q, u, a.L1(T)));
  auto rr = residual_right(p, RU, T);
  auto lw = residual_left(p, rr.result, RU);
  return detail::plug_point(p, compose_derivations(p, a.eta_d(T), enc), identity_derivation(p, lw.result));
}

struct ReflectionReport {
  CheckReport preserves{"R preserves pullbacks"};
  CheckReport shifted{"double negation is a pullback after shift"};
  CheckReport literal{"double negation is a pullback"};
  bool ok() const { return preserves.ok() && shifted.ok(); }
};

// Condition 1 over the encodings of qs, condition 2 over ts. The literal form
// of condition 2 is reported separately and does not gate ok().
template <class P, class Q>
ReflectionReport check_reflected(const Adjunction<P, Q>& a, const UniversalType<Q>& u,
                                 const std::vector<typename Q::EType>& qs, const std::vector<typename P::EType>& ts) {
  const P& p = a.p;
  ReflectionReport r;
  for (const auto& X : qs)
    guarded(r.preserves, "R of encoding of " + a.q.show_etype(X),
            [&] { return is_pullback(p, a.R(encoding_derivation(a.q, u, X))); });
  for (const auto& T : ts) {
    const auto B = p.refines(T);
    guarded(r.literal, "at " + p.show_etype(T), [&] { return is_pullback(p, reflection_map(a, u, T)); });
    guarded(r.shifted, "at " + p.show_etype(T), [&] {
      auto k = reflection_map(a, u, T);
      auto ws = pullback(p, shift_expr(p, B, a.R0(a.q.refines(u.U))), k.subject());
      return is_pullback(p, compose_derivations(p, ws.left, k));
    });
  }
  return r;
}

// eta*RL[T] and shift*((R[U] o- T) -o R[U]) are vertically isomorphic: F_mu
// followed by the reflection map is the pullback eta*RL[T] ==eta;R[e]==> R[U],
// so by 2-out-of-3 F_mu is a pullback along the identity.
template <class P, class Q>
std::optional<VerticalIso<P>> theorem_iso(const Adjunction<P, Q>& a, const UniversalType<Q>& u,
                                          const typename P::EType& T) {
  const P& p = a.p;
  const auto B = p.refines(T);
  const auto idB = p.identity(B);
  auto mu = f_mu(a, T, u.U);
  auto k = reflection_map(a, u, T);
  auto ws = pullback(p, shift_expr(p, B, a.R0(a.q.refines(u.U))), k.subject());
  auto d2 = compose_derivations(p, ws.left, k);
  auto c = compose_derivations(p, mu, d2);
  auto cw = cartesian_witness(p, c);
  if (!cw || !is_pullback(p, d2)) return std::nullopt;
  auto back = as_subtyping(p, cw->right(mu.object(), idB, conversion(p, d2, p.compose(idB, c.expr()))));
  if (!is_vertical_iso(p, mu, back)) return std::nullopt;
  return VerticalIso<P>{mu, back};
}

template <class P, class Q>
CheckReport check_theorem(const Adjunction<P, Q>& a, const UniversalType<Q>& u, const std::vector<typename P::EType>& ts) {
  CheckReport r{"monad representation " + a.name};
  for (const auto& T : ts)
    guarded(r, "at " + a.p.show_etype(T), [&] { return theorem_iso(a, u, T).has_value(); });
  return r;
}

struct ObservationResult {
  bool equation = false;  // rc(plugR;f) (x) lc(plugR) ; plugL = plugR;f
};

// shift*((U o- T) -o U) <= shift*((f*U o- T) -o f*U) for f : C' -> C.
template <class M>
Derivation<M> observation_poly(const M& m, const typename M::EType& T, const typename M::EType& U,
                               const typename M::Expr& f, ObservationResult* info = nullptr) {
  const auto B = m.refines(T);
  const auto C1 = m.dom(f);
  const auto idB = m.identity(B);
  auto wf = pullback(m, f, U);
  const auto V = wf.result;
  auto rV = residual_right(m, V, T);
  auto a1 = compose_derivations(m, rV.left, wf.left);
  auto rU = residual_right(m, U, T);
  auto m1 = rU.right(rV.result, a1.expr(), a1);
  auto lU = residual_left(m, rU.result, U);
  auto wU = pullback(m, shift_expr(m, B, m.refines(U)), lU.result);
  auto body = compose_derivations(m, tensor_derivations(m, m1, wU.left), lU.left);
  const auto target = m.compose(m.plug_right(C1, B), f);
  if (info) info->equation = m.same_expr(body.expr(), target);
  auto s6 = wf.right(m.tensor_etype(rV.result, wU.result), m.plug_right(C1, B), conversion(m, body, target));
  auto lV = residual_left(m, rV.result, V);
  auto s7 = lV.right(wU.result, s6.expr(), s6);
  const auto shV = shift_expr(m, B, C1);
  auto wV = pullback(m, shV, lV.result);
  return as_subtyping(m, wV.right(wU.result, idB, conversion(m, s7, m.compose(idB, shV))));
}

}  // namespace refsys

#endif
