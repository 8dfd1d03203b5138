#ifndef REFSYS_STRUCTURES_HPP
#define REFSYS_STRUCTURES_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "refsys/kernel.hpp"

namespace refsys {

// f*T with its left rule (f*T ==f==> T) and right rule
// (S ==g;f==> T) |-> (S ==g==> f*T).
template <class M>
struct PullbackWitness {
  using RightRule = std::function<Derivation<M>(const typename M::EType& S, const typename M::Expr& g,
                                                const Derivation<M>& beta)>;
  typename M::Expr f;
  typename M::EType target;
  typename M::EType result;
  Derivation<M> left;
  RightRule right;
};

// fS with its right rule (S ==f==> fS) and left rule
// (S ==f;g==> T) |-> (fS ==g==> T).
template <class M>
struct PushforwardWitness {
  using LeftRule = std::function<Derivation<M>(const typename M::Expr& g, const typename M::EType& T,
                                               const Derivation<M>& beta)>;
  typename M::EType source;
  typename M::Expr f;
  typename M::EType result;
  Derivation<M> right;
  LeftRule left;
};

namespace detail {

template <class M>
void expect_expr(const M& m, const Derivation<M>& d, const typename M::Expr& want, const std::string& rule) {
  if (!m.same_expr(d.expr(), want)) {
    fail(ErrorKind::validation, "rule " + rule + ": premise is over " + m.show_expr(d.expr()) + ", expected " +
                                    m.show_expr(want));
  }
}

template <class M>
void expect_etype(const M& m, const typename M::EType& got, const typename M::EType& want,
                  const std::string& rule) {
  if (!m.same_etype(got, want)) {
    fail(ErrorKind::structural, "rule " + rule + ": premise mentions " + m.show_etype(got) + ", expected " +
                                    m.show_etype(want));
  }
}

}  // namespace detail

template <class M>
PullbackWitness<M> pullback(const M& m, const typename M::Expr& f, const typename M::EType& T) {
  if (!m.same_itype(m.refines(T), m.cod(f))) {
    fail(ErrorKind::ill_formed, "pullback: " + m.show_etype(T) + " does not refine the codomain of " + m.show_expr(f));
  }
  auto P = m.pull(f, T);
  auto left = primitive(m, "Lpull", make_judgment(m, P, f, T), m.pull_left(f, T));
  typename PullbackWitness<M>::RightRule right = [m, f, T, P](const typename M::EType& S,
                                                               const typename M::Expr& g,
                                                               const Derivation<M>& beta) {
    detail::expect_etype(m, beta.subject(), S, "Rpull");
    detail::expect_etype(m, beta.object(), T, "Rpull");
    detail::expect_expr(m, beta, m.compose(g, f), "Rpull");
    return primitive(m, "Rpull", make_judgment(m, S, g, P), m.pull_right(f, T, S, g, beta.morph()), {beta});
  };
  return PullbackWitness<M>{f, T, P, left, right};
}

template <class M>
PushforwardWitness<M> pushforward(const M& m, const typename M::EType& S, const typename M::Expr& f) {
  if (!m.same_itype(m.refines(S), m.dom(f))) {
    fail(ErrorKind::ill_formed, "pushforward: " + m.show_etype(S) + " does not refine the domain of " + m.show_expr(f));
  }
  auto P = m.push(S, f);
  auto right = primitive(m, "Rpush", make_judgment(m, S, f, P), m.push_right(S, f));
  typename PushforwardWitness<M>::LeftRule left = [m, S, f, P](const typename M::Expr& g,
                                                              const typename M::EType& T,
                                                              const Derivation<M>& beta) {
    detail::expect_etype(m, beta.subject(), S, "Lpush");
    detail::expect_etype(m, beta.object(), T, "Lpush");
    detail::expect_expr(m, beta, m.compose(f, g), "Lpush");
    return primitive(m, "Lpush", make_judgment(m, P, g, T), m.push_left(S, f, g, T, beta.morph()), {beta});
  };
  return PushforwardWitness<M>{S, f, P, right, left};
}

// Runs a check, turning kernel errors into recorded failures. Hitting the
// carrier bound is counted as skipped.
template <class F>
void guarded(CheckReport& r, const std::string& what, F&& body) {
  try {
    r.record(body(), what);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::capability) {
      r.skip(what + ": " + e.what());
    } else {
      r.record(false, what + ": " + e.what());
    }
  }
}

// Both pullback equations for every S over a probe i-type, every g into
// dom(f), and every beta / eta in the enumerated hom-sets.
template <class M>
CheckReport check_beta_eta(const M& m, const PullbackWitness<M>& w, const std::vector<typename M::IType>& probes) {
  CheckReport r{"pullback beta/eta"};
  const auto A = m.dom(w.f);
  for (const auto& X : probes)
    for (const auto& g : m.expressions(X, A))
      for (const auto& S : m.etypes_over(X)) {
        const auto gf = m.compose(g, w.f);
        for (const auto& b : derivations_over(m, S, gf, w.target)) {
          guarded(r, "beta at S=" + m.show_etype(S) + " g=" + m.show_expr(g), [&] {
            return equal(m, compose_derivations(m, w.right(S, g, b), w.left), b);
          });
        }
        for (const auto& e : derivations_over(m, S, g, w.result)) {
          guarded(r, "eta at S=" + m.show_etype(S) + " g=" + m.show_expr(g), [&] {
            return equal(m, w.right(S, g, compose_derivations(m, e, w.left)), e);
          });
        }
      }
  return r;
}

template <class M>
CheckReport check_beta_eta(const M& m, const PushforwardWitness<M>& w, const std::vector<typename M::IType>& probes) {
  CheckReport r{"pushforward beta/eta"};
  const auto B = m.cod(w.f);
  for (const auto& Y : probes)
    for (const auto& g : m.expressions(B, Y))
      for (const auto& T : m.etypes_over(Y)) {
        const auto fg = m.compose(w.f, g);
        for (const auto& b : derivations_over(m, w.source, fg, T)) {
          guarded(r, "beta at T=" + m.show_etype(T) + " g=" + m.show_expr(g), [&] {
            return equal(m, compose_derivations(m, w.right, w.left(g, T, b)), b);
          });
        }
        for (const auto& e : derivations_over(m, w.result, g, T)) {
          guarded(r, "eta at T=" + m.show_etype(T) + " g=" + m.show_expr(g), [&] {
            return equal(m, w.left(g, T, compose_derivations(m, w.right, e)), e);
          });
        }
      }
  return r;
}

template <class M>
VerticalIso<M> make_iso(const M& m, const Derivation<M>& fwd, const Derivation<M>& bwd, const std::string& what) {
  VerticalIso<M> iso{as_subtyping(m, fwd), as_subtyping(m, bwd)};
  if (!is_vertical_iso(m, iso.forward, iso.backward)) {
    fail(ErrorKind::soundness, what + ": composites are not identities");
  }
  return iso;
}

// Any two pullbacks of T along f are vertically isomorphic.
template <class M>
VerticalIso<M> uniqueness_iso(const M& m, const PullbackWitness<M>& w1, const PullbackWitness<M>& w2) {
  if (!m.same_expr(w1.f, w2.f) || !m.same_etype(w1.target, w2.target)) {
    fail(ErrorKind::structural, "uniqueness: witnesses pull back different data");
  }
  const auto A = m.dom(w1.f);
  const auto idf = m.compose(m.identity(A), w1.f);
  auto fwd = w2.right(w1.result, m.identity(A), conversion(m, w1.left, idf));
  auto bwd = w1.right(w2.result, m.identity(A), conversion(m, w2.left, idf));
  return make_iso(m, fwd, bwd, "uniqueness iso");
}

template <class M>
VerticalIso<M> uniqueness_iso(const M& m, const PushforwardWitness<M>& w1, const PushforwardWitness<M>& w2) {
  if (!m.same_expr(w1.f, w2.f) || !m.same_etype(w1.source, w2.source)) {
    fail(ErrorKind::structural, "uniqueness: witnesses push forward different data");
  }
  const auto B = m.cod(w1.f);
  const auto fid = m.compose(w1.f, m.identity(B));
  auto fwd = w1.left(m.identity(B), w2.result, conversion(m, w2.right, fid));
  auto bwd = w2.left(m.identity(B), w1.result, conversion(m, w1.right, fid));
  return make_iso(m, fwd, bwd, "uniqueness iso");
}

// (f;g)*T and f*(g*T), f : A -> B, g : B -> C.
template <class M>
VerticalIso<M> pull_compose_iso(const M& m, const typename M::Expr& f, const typename M::Expr& g,
                                const typename M::EType& T) {
  const auto fg = m.compose(f, g);
  auto wP = pullback(m, fg, T);
  auto wg = pullback(m, g, T);
  auto wQ = pullback(m, f, wg.result);
  const auto A = m.dom(f);
  const auto idA = m.identity(A);
  // Q ==f;g==> T, then the right rule of P
  auto qt = compose_derivations(m, wQ.left, wg.left);
  auto q_to_p = wP.right(wQ.result, idA, conversion(m, qt, m.compose(idA, fg)));
  // P ==f;g==> T, right rule of g*T along f, then right rule of Q
  auto pg = wg.right(wP.result, f, wP.left);
  auto p_to_q = wQ.right(wP.result, idA, conversion(m, pg, m.compose(idA, f)));
  return make_iso(m, p_to_q, q_to_p, "pull composition iso");
}

// (g;f)S and f(gS), g : A -> B, f : B -> C.
template <class M>
VerticalIso<M> push_compose_iso(const M& m, const typename M::EType& S, const typename M::Expr& g,
                                const typename M::Expr& f) {
  const auto gf = m.compose(g, f);
  auto wP = pushforward(m, S, gf);
  auto ws = pushforward(m, S, g);
  auto wQ = pushforward(m, ws.result, f);
  const auto C = m.cod(f);
  const auto idC = m.identity(C);
  auto sq = compose_derivations(m, ws.right, wQ.right);
  auto p_to_q = wP.left(idC, wQ.result, conversion(m, sq, m.compose(gf, idC)));
  auto gp = ws.left(f, wP.result, wP.right);
  auto q_to_p = wQ.left(idC, wP.result, conversion(m, gp, m.compose(f, idC)));
  return make_iso(m, p_to_q, q_to_p, "push composition iso");
}

struct ThreeWay {
  bool push_subtype = false;  // fS <= T
  bool typing = false;        // S ==f==> T
  bool pull_subtype = false;  // S <= f*T
  bool agree() const { return push_subtype == typing && typing == pull_subtype; }
  std::array<bool, 3> tuple() const { return {push_subtype, typing, pull_subtype}; }
};

// Derivability of the three judgments. Each positive answer is transported to
// the other two by the pullback/pushforward rules, so a disagreement is a
// soundness failure of the model.
template <class M>
ThreeWay three_way(const M& m, const typename M::EType& S, const typename M::Expr& f, const typename M::EType& T) {
  if (!well_formed(m, S, f, T)) fail(ErrorKind::ill_formed, "three-way: ill-formed judgment");
  auto pw = pushforward(m, S, f);
  auto qw = pullback(m, f, T);
  const auto idA = m.identity(m.dom(f));
  const auto idB = m.identity(m.cod(f));
  ThreeWay out;
  auto push_ders = derivations_over(m, pw.result, idB, T);
  auto typ_ders = derivations_over(m, S, f, T);
  auto pull_ders = derivations_over(m, S, idA, qw.result);
  out.push_subtype = !push_ders.empty();
  out.typing = !typ_ders.empty();
  out.pull_subtype = !pull_ders.empty();
  if (!typ_ders.empty()) {
    pw.left(idB, T, conversion(m, typ_ders[0], m.compose(f, idB)));
    qw.right(S, idA, conversion(m, typ_ders[0], m.compose(idA, f)));
  }
  if (!push_ders.empty()) compose_derivations(m, pw.right, push_ders[0]);
  if (!pull_ders.empty()) compose_derivations(m, pull_ders[0], qw.left);
  if (!out.agree()) {
    fail(ErrorKind::soundness, "three-way correspondence fails at " + m.show_etype(S) + " " + m.show_expr(f) + " " +
                                   m.show_etype(T));
  }
  return out;
}

// The (f_i)-weighted intersection of the T_i, f_i : A -> B_i.
template <class M>
struct IntersectionWitness {
  using RightRule = std::function<Derivation<M>(const typename M::EType& S, const typename M::Expr& g,
                                                const std::vector<Derivation<M>>& betas)>;
  typename M::IType base;
  std::vector<typename M::Expr> fs;
  std::vector<typename M::EType> ts;
  typename M::EType result;
  std::vector<Derivation<M>> lefts;  // result ==f_i==> T_i
  RightRule right;                   // (S ==g;f_i==> T_i)_i |-> S ==g==> result
};

// The (f_i)-weighted union of the S_i, f_i : A_i -> B.
template <class M>
struct UnionWitness {
  using LeftRule = std::function<Derivation<M>(const typename M::Expr& g, const typename M::EType& T,
                                               const std::vector<Derivation<M>>& betas)>;
  typename M::IType base;
  std::vector<typename M::Expr> fs;
  std::vector<typename M::EType> ss;
  typename M::EType result;
  std::vector<Derivation<M>> rights;  // S_i ==f_i==> result
  LeftRule left;                      // (S_i ==f_i;g==> T)_i |-> result ==g==> T
};

template <class M>
IntersectionWitness<M> weighted_intersection(const M& m, const typename M::IType& a,
                                             const std::vector<typename M::Expr>& fs,
                                             const std::vector<typename M::EType>& ts) {
  if (fs.size() != ts.size()) fail(ErrorKind::structural, "weighted intersection: family sizes differ");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!m.same_itype(m.dom(fs[i]), a) || !m.same_itype(m.cod(fs[i]), m.refines(ts[i]))) {
      fail(ErrorKind::ill_formed, "weighted intersection: component " + std::to_string(i) + " is ill-formed");
    }
  }
  auto R = m.meet(a, fs, ts);
  std::vector<Derivation<M>> lefts;
  for (std::size_t i = 0; i < fs.size(); ++i)
    lefts.push_back(primitive(m, "Lmeet" + std::to_string(i), make_judgment(m, R, fs[i], ts[i]),
                              m.meet_left(a, fs, ts, i)));
  typename IntersectionWitness<M>::RightRule right = [m, a, fs, ts, R](const typename M::EType& S,
                                                                       const typename M::Expr& g,
                                                                       const std::vector<Derivation<M>>& betas) {
    if (betas.size() != fs.size()) fail(ErrorKind::structural, "rule Rmeet: wrong number of premises");
    std::vector<typename M::Morph> ms;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      detail::expect_etype(m, betas[i].subject(), S, "Rmeet");
      detail::expect_etype(m, betas[i].object(), ts[i], "Rmeet");
      detail::expect_expr(m, betas[i], m.compose(g, fs[i]), "Rmeet");
      ms.push_back(betas[i].morph());
    }
    return primitive(m, "Rmeet", make_judgment(m, S, g, R), m.meet_right(a, fs, ts, S, g, ms), betas);
  };
  return IntersectionWitness<M>{a, fs, ts, R, lefts, right};
}

template <class M>
UnionWitness<M> weighted_union(const M& m, const typename M::IType& b, const std::vector<typename M::Expr>& fs,
                               const std::vector<typename M::EType>& ss) {
  if (fs.size() != ss.size()) fail(ErrorKind::structural, "weighted union: family sizes differ");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!m.same_itype(m.cod(fs[i]), b) || !m.same_itype(m.dom(fs[i]), m.refines(ss[i]))) {
      fail(ErrorKind::ill_formed, "weighted union: component " + std::to_string(i) + " is ill-formed");
    }
  }
  auto R = m.join(b, fs, ss);
  std::vector<Derivation<M>> rights;
  for (std::size_t i = 0; i < fs.size(); ++i)
    rights.push_back(primitive(m, "Rjoin" + std::to_string(i), make_judgment(m, ss[i], fs[i], R),
                               m.join_right(b, fs, ss, i)));
  typename UnionWitness<M>::LeftRule left = [m, b, fs, ss, R](const typename M::Expr& g, const typename M::EType& T,
                                                              const std::vector<Derivation<M>>& betas) {
    if (betas.size() != fs.size()) fail(ErrorKind::structural, "rule Ljoin: wrong number of premises");
    std::vector<typename M::Morph> ms;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      detail::expect_etype(m, betas[i].subject(), ss[i], "Ljoin");
      detail::expect_etype(m, betas[i].object(), T, "Ljoin");
      detail::expect_expr(m, betas[i], m.compose(fs[i], g), "Ljoin");
      ms.push_back(betas[i].morph());
    }
    return primitive(m, "Ljoin", make_judgment(m, R, g, T), m.join_left(b, fs, ss, g, T, ms), betas);
  };
  return UnionWitness<M>{b, fs, ss, R, rights, left};
}

namespace detail {

// Calls body on every tuple drawn from the given candidate lists, stopping
// after `limit` tuples.
template <class T, class F>
void for_each_tuple(const std::vector<std::vector<T>>& choices, std::size_t limit, F&& body) {
  std::vector<T> cur;
  std::size_t seen = 0;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (seen >= limit) return;
    if (i == choices.size()) {
      ++seen;
      body(cur);
      return;
    }
    for (const auto& c : choices[i]) {
      cur.push_back(c);
      go(i + 1);
      cur.pop_back();
      if (seen >= limit) return;
    }
  };
  go(0);
}

}  // namespace detail

template <class M>
CheckReport check_beta_eta(const M& m, const IntersectionWitness<M>& w, const std::vector<typename M::IType>& probes,
                           std::size_t family_limit = 256) {
  CheckReport r{"weighted intersection beta/eta"};
  for (const auto& X : probes)
    for (const auto& g : m.expressions(X, w.base))
      for (const auto& S : m.etypes_over(X)) {
        std::vector<std::vector<Derivation<M>>> choices;
        for (std::size_t i = 0; i < w.fs.size(); ++i)
          choices.push_back(derivations_over(m, S, m.compose(g, w.fs[i]), w.ts[i]));
        detail::for_each_tuple(choices, family_limit, [&](const std::vector<Derivation<M>>& betas) {
          guarded(r, "beta at S=" + m.show_etype(S) + " g=" + m.show_expr(g), [&] {
            auto h = w.right(S, g, betas);
            for (std::size_t i = 0; i < betas.size(); ++i)
              if (!equal(m, compose_derivations(m, h, w.lefts[i]), betas[i])) return false;
            return true;
          });
        });
        for (const auto& e : derivations_over(m, S, g, w.result)) {
          guarded(r, "eta at S=" + m.show_etype(S) + " g=" + m.show_expr(g), [&] {
            std::vector<Derivation<M>> parts;
            for (const auto& l : w.lefts) parts.push_back(compose_derivations(m, e, l));
            return equal(m, w.right(S, g, parts), e);
          });
        }
      }
  return r;
}

template <class M>
CheckReport check_beta_eta(const M& m, const UnionWitness<M>& w, const std::vector<typename M::IType>& probes,
                           std::size_t family_limit = 256) {
  CheckReport r{"weighted union beta/eta"};
  for (const auto& Y : probes)
    for (const auto& g : m.expressions(w.base, Y))
      for (const auto& T : m.etypes_over(Y)) {
        std::vector<std::vector<Derivation<M>>> choices;
        for (std::size_t i = 0; i < w.fs.size(); ++i)
          choices.push_back(derivations_over(m, w.ss[i], m.compose(w.fs[i], g), T));
        detail::for_each_tuple(choices, family_limit, [&](const std::vector<Derivation<M>>& betas) {
          guarded(r, "beta at T=" + m.show_etype(T) + " g=" + m.show_expr(g), [&] {
            auto h = w.left(g, T, betas);
            for (std::size_t i = 0; i < betas.size(); ++i)
              if (!equal(m, compose_derivations(m, w.rights[i], h), betas[i])) return false;
            return true;
          });
        });
        for (const auto& e : derivations_over(m, w.result, g, T)) {
          guarded(r, "eta at T=" + m.show_etype(T) + " g=" + m.show_expr(g), [&] {
            std::vector<Derivation<M>> parts;
            for (const auto& rt : w.rights) parts.push_back(compose_derivations(m, rt, e));
            return equal(m, w.left(g, T, parts), e);
          });
        }
      }
  return r;
}

// Binary intersection and union, weighted by the identity.
template <class M>
IntersectionWitness<M> intersect(const M& m, const typename M::EType& S, const typename M::EType& T) {
  const auto A = m.refines(S);
  if (!m.same_itype(A, m.refines(T))) fail(ErrorKind::ill_formed, "intersection of e-types over different i-types");
  return weighted_intersection(m, A, {m.identity(A), m.identity(A)}, {S, T});
}

template <class M>
UnionWitness<M> unite(const M& m, const typename M::EType& S, const typename M::EType& T) {
  const auto A = m.refines(S);
  if (!m.same_itype(A, m.refines(T))) fail(ErrorKind::ill_formed, "union of e-types over different i-types");
  return weighted_union(m, A, {m.identity(A), m.identity(A)}, {S, T});
}

// The derived rules for binary intersection: from U <= S and U <= T derive
// U <= S & T, and project back. Returns the introduced derivation.
template <class M>
Derivation<M> meet_intro(const M& m, const IntersectionWitness<M>& w, const Derivation<M>& us, const Derivation<M>& ut) {
  const auto id = m.identity(w.base);
  const auto idid = m.compose(id, id);
  return as_subtyping(m, w.right(us.subject(), id, {conversion(m, us, idid), conversion(m, ut, idid)}));
}

template <class M>
Derivation<M> meet_elim(const M& m, const IntersectionWitness<M>& w, std::size_t i) {
  return as_subtyping(m, w.lefts.at(i));
}

template <class M>
Derivation<M> join_intro(const M& m, const UnionWitness<M>& w, std::size_t i) {
  return as_subtyping(m, w.rights.at(i));
}

template <class M>
Derivation<M> join_elim(const M& m, const UnionWitness<M>& w, const Derivation<M>& su, const Derivation<M>& tu) {
  const auto id = m.identity(w.base);
  const auto idid = m.compose(id, id);
  return as_subtyping(m, w.left(id, su.object(), {conversion(m, su, idid), conversion(m, tu, idid)}));
}

}  // namespace refsys

#endif
