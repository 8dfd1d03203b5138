#ifndef REFSYS_KERNEL_HPP
#define REFSYS_KERNEL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "refsys/error.hpp"
#include "refsys/fincat.hpp"
#include "refsys/report.hpp"

namespace refsys {

// A model M presents a functor p : E -> I. It exposes the nested types
// IType, Expr, EType, Morph and the operations used below:
//   refines, dom, cod, compose, identity, same_itype, same_expr, same_etype,
//   hom_over, is_morph, compose_morph, identity_morph, same_morph,
//   show_itype, show_expr, show_etype, show_morph.
// Later modules ask for more (pull/push, tensor, residuals); a model that
// lacks a member simply cannot be used with those templates.

template <class M>
struct Judgment {
  typename M::EType subject;
  typename M::Expr expr;
  typename M::EType object;
  bool subtyping = false;
};

enum class Verdict { derivable, underivable, ill_formed };

const char* to_string(Verdict v);

template <class M>
class Derivation {
 public:
  using Morph = typename M::Morph;

  Derivation(Judgment<M> j, std::string rule, std::vector<Derivation> premises, Morph m)
      : node_(std::make_shared<const Node>(
            Node{std::move(j), std::move(rule), std::move(premises), std::move(m)})) {}

  const Judgment<M>& judgment() const { return node_->judgment; }
  const typename M::EType& subject() const { return node_->judgment.subject; }
  const typename M::Expr& expr() const { return node_->judgment.expr; }
  const typename M::EType& object() const { return node_->judgment.object; }
  const std::string& rule() const { return node_->rule; }
  const std::vector<Derivation>& premises() const { return node_->premises; }
  // The interpretation: a morphism of E lying over expr().
  const Morph& morph() const { return node_->morph; }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& p : node_->premises) n += p.size();
    return n;
  }

 private:
  struct Node {
    Judgment<M> judgment;
    std::string rule;
    std::vector<Derivation> premises;
    Morph morph;
  };
  std::shared_ptr<const Node> node_;
};

template <class M>
bool well_formed(const M& m, const typename M::EType& S, const typename M::Expr& f,
                 const typename M::EType& T) {
  return m.same_itype(m.refines(S), m.dom(f)) && m.same_itype(m.refines(T), m.cod(f));
}

template <class M>
std::string show(const M& m, const Judgment<M>& j) {
  if (j.subtyping) return m.show_etype(j.subject) + " <= " + m.show_etype(j.object);
  return m.show_etype(j.subject) + " <=[" + m.show_expr(j.expr) + "] " + m.show_etype(j.object);
}

template <class M>
Judgment<M> make_judgment(const M& m, const typename M::EType& S, const typename M::Expr& f,
                          const typename M::EType& T) {
  if (!well_formed(m, S, f, T)) {
    fail(ErrorKind::ill_formed, "ill-formed judgment " + m.show_etype(S) + " <=[" + m.show_expr(f) +
                                    "] " + m.show_etype(T));
  }
  return Judgment<M>{S, f, T, false};
}

template <class M>
Judgment<M> make_subtyping(const M& m, const typename M::EType& S, const typename M::EType& T) {
  if (!m.same_itype(m.refines(S), m.refines(T))) {
    fail(ErrorKind::ill_formed, "ill-formed subtyping " + m.show_etype(S) + " <= " + m.show_etype(T) +
                                    ": refinements differ");
  }
  return Judgment<M>{S, m.identity(m.refines(S)), T, true};
}

template <class M>
bool same_judgment(const M& m, const Judgment<M>& a, const Judgment<M>& b) {
  return m.same_etype(a.subject, b.subject) && m.same_expr(a.expr, b.expr) &&
         m.same_etype(a.object, b.object);
}

// Builds a node whose interpretation is supplied by a model operation. The
// interpretation is validated against the judgment, so a faulty rule cannot
// produce a derivation of something that does not hold.
template <class M>
Derivation<M> primitive(const M& m, std::string rule, Judgment<M> j, typename M::Morph morph,
                        std::vector<Derivation<M>> premises = {}) {
  if (!well_formed(m, j.subject, j.expr, j.object)) {
    fail(ErrorKind::ill_formed, "rule " + rule + " concluded ill-formed " + show(m, j));
  }
  if (!m.is_morph(j.subject, j.expr, j.object, morph)) {
    fail(ErrorKind::soundness, "rule " + rule + " produced an invalid morphism for " + show(m, j));
  }
  return Derivation<M>(std::move(j), std::move(rule), std::move(premises), std::move(morph));
}

// Rule I.
template <class M>
Derivation<M> identity_derivation(const M& m, const typename M::EType& S) {
  return Derivation<M>(make_subtyping(m, S, S), "I", {}, m.identity_morph(S));
}

// Rule C.
template <class M>
Derivation<M> compose_derivations(const M& m, const Derivation<M>& a, const Derivation<M>& b) {
  if (!m.same_etype(a.object(), b.subject())) {
    fail(ErrorKind::structural, "rule C: middle e-types differ: " + m.show_etype(a.object()) +
                                    " vs " + m.show_etype(b.subject()));
  }
  Judgment<M> j{a.subject(), m.compose(a.expr(), b.expr()), b.object(), false};
  j.subtyping = a.judgment().subtyping && b.judgment().subtyping;
  return Derivation<M>(std::move(j), "C", {a, b}, m.compose_morph(a.expr(), a.morph(), b.expr(), b.morph()));
}

// Conversion: retype along an equal expression.
template <class M>
Derivation<M> conversion(const M& m, const Derivation<M>& a, const typename M::Expr& g) {
  if (!m.same_expr(a.expr(), g)) {
    fail(ErrorKind::validation, "conversion rejected: " + m.show_expr(a.expr()) + " and " +
                                    m.show_expr(g) + " differ");
  }
  Judgment<M> j{a.subject(), g, a.object(), a.judgment().subtyping};
  return Derivation<M>(std::move(j), "=", {a}, a.morph());
}

// Retypes a typing derivation over an identity as a subtyping derivation.
template <class M>
Derivation<M> as_subtyping(const M& m, const Derivation<M>& a) {
  Judgment<M> j = make_subtyping(m, a.subject(), a.object());
  if (!m.same_expr(a.expr(), j.expr)) {
    fail(ErrorKind::validation, "derivation is over " + m.show_expr(a.expr()) + ", not an identity");
  }
  return Derivation<M>(std::move(j), a.rule(), a.premises(), a.morph());
}

// Derivation equality is equality of interpretations over the same judgment.
template <class M>
bool equal(const M& m, const Derivation<M>& a, const Derivation<M>& b) {
  return same_judgment(m, a.judgment(), b.judgment()) && m.same_morph(a.morph(), b.morph());
}

template <class M>
Verdict derivable(const M& m, const typename M::EType& S, const typename M::Expr& f,
                  const typename M::EType& T) {
  if (!well_formed(m, S, f, T)) return Verdict::ill_formed;
  return m.hom_over(S, f, T).empty() ? Verdict::underivable : Verdict::derivable;
}

template <class M>
Verdict derivable_subtyping(const M& m, const typename M::EType& S, const typename M::EType& T) {
  if (!m.same_itype(m.refines(S), m.refines(T))) return Verdict::ill_formed;
  return derivable(m, S, m.identity(m.refines(S)), T);
}

template <class M>
std::vector<Derivation<M>> derivations_over(const M& m, const typename M::EType& S,
                                            const typename M::Expr& f, const typename M::EType& T) {
  std::vector<Derivation<M>> out;
  Judgment<M> j = make_judgment(m, S, f, T);
  for (auto& h : m.hom_over(S, f, T)) out.push_back(Derivation<M>(j, "hyp", {}, std::move(h)));
  return out;
}

template <class M>
struct VerticalIso {
  Derivation<M> forward;   // S <= T
  Derivation<M> backward;  // T <= S
};

template <class M>
bool is_vertical_iso(const M& m, const Derivation<M>& fwd, const Derivation<M>& bwd) {
  const auto& S = fwd.subject();
  const auto& T = fwd.object();
  if (!m.same_etype(bwd.subject(), T) || !m.same_etype(bwd.object(), S)) return false;
  return equal(m, compose_derivations(m, fwd, bwd), identity_derivation(m, S)) &&
         equal(m, compose_derivations(m, bwd, fwd), identity_derivation(m, T));
}

template <class M>
std::optional<VerticalIso<M>> check_vertical_iso(const M& m, const typename M::EType& S,
                                                 const typename M::EType& T) {
  if (!m.same_itype(m.refines(S), m.refines(T))) {
    fail(ErrorKind::ill_formed, "vertical iso between e-types over different i-types");
  }
  const auto id = m.identity(m.refines(S));
  auto there = m.hom_over(S, id, T);
  if (there.empty()) return std::nullopt;
  auto back = m.hom_over(T, id, S);
  const Judgment<M> jst = make_subtyping(m, S, T);
  const Judgment<M> jts = make_subtyping(m, T, S);
  for (const auto& a : there) {
    for (const auto& b : back) {
      Derivation<M> fa(jst, "hyp", {}, a);
      Derivation<M> fb(jts, "hyp", {}, b);
      if (is_vertical_iso(m, fa, fb)) return VerticalIso<M>{fa, fb};
    }
  }
  return std::nullopt;
}

template <class M>
std::string render(const M& m, const Derivation<M>& d, std::size_t depth = 0) {
  std::string out(depth * 2, ' ');
  out += "[" + d.rule() + "] " + show(m, d.judgment()) + "\n";
  for (const auto& p : d.premises()) out += render(m, p, depth + 1);
  return out;
}

// The total category and projection of a model restricted to finitely many
// i-types and expressions (which must be closed under composition and contain
// the identities).
struct MaterializedFunctor {
  CatRef total;
  CatRef base;
  FinFunctor projection;
};

template <class M>
MaterializedFunctor materialize(const M& m, const std::vector<typename M::IType>& itypes,
                                const std::vector<typename M::Expr>& exprs) {
  using Expr = typename M::Expr;
  using EType = typename M::EType;
  using Morph = typename M::Morph;
  auto itype_index = [&](const typename M::IType& a) {
    for (std::size_t i = 0; i < itypes.size(); ++i)
      if (m.same_itype(itypes[i], a)) return i;
    fail(ErrorKind::structural, "i-type " + m.show_itype(a) + " outside the materialized range");
  };
  std::vector<std::string> bobj;
  for (const auto& a : itypes) bobj.push_back(m.show_itype(a));
  std::vector<Arrow> barr;
  for (const auto& f : exprs) barr.push_back({m.show_expr(f), itype_index(m.dom(f)), itype_index(m.cod(f))});
  auto expr_index = [&](const Expr& f) {
    for (std::size_t i = 0; i < exprs.size(); ++i)
      if (m.same_expr(exprs[i], f)) return i;
    fail(ErrorKind::structural, "expression set is not closed under composition");
  };
  const std::size_t bm = exprs.size();
  std::vector<std::size_t> bids(itypes.size());
  for (std::size_t i = 0; i < itypes.size(); ++i) bids[i] = expr_index(m.identity(itypes[i]));
  std::vector<std::size_t> bcomp(bm * bm, npos);
  for (std::size_t f = 0; f < bm; ++f)
    for (std::size_t g = 0; g < bm; ++g)
      if (barr[f].dst == barr[g].src) bcomp[f * bm + g] = expr_index(m.compose(exprs[f], exprs[g]));
  auto base = std::make_shared<const FinCategory>("I", bobj, barr, bids, bcomp);

  std::vector<EType> ets;
  std::vector<std::size_t> eobj_over;
  for (std::size_t i = 0; i < itypes.size(); ++i)
    for (auto& S : m.etypes_over(itypes[i])) {
      ets.push_back(S);
      eobj_over.push_back(i);
    }
  struct EArrow {
    std::size_t s, f, t;
    Morph morph;
  };
  std::vector<EArrow> earr;
  std::vector<Arrow> earrows;
  for (std::size_t s = 0; s < ets.size(); ++s)
    for (std::size_t t = 0; t < ets.size(); ++t)
      for (std::size_t f = 0; f < bm; ++f) {
        if (barr[f].src != eobj_over[s] || barr[f].dst != eobj_over[t]) continue;
        for (auto& h : m.hom_over(ets[s], exprs[f], ets[t])) {
          earrows.push_back({m.show_etype(ets[s]) + "-" + m.show_morph(h) + "->" + m.show_etype(ets[t]), s, t});
          earr.push_back({s, f, t, std::move(h)});
        }
      }
  auto earrow_index = [&](std::size_t s, std::size_t f, std::size_t t, const Morph& h) {
    for (std::size_t i = 0; i < earr.size(); ++i)
      if (earr[i].s == s && earr[i].f == f && earr[i].t == t && m.same_morph(earr[i].morph, h)) return i;
    fail(ErrorKind::structural, "composite morphism missing from enumerated hom-sets");
  };
  std::vector<std::size_t> eids(ets.size());
  for (std::size_t s = 0; s < ets.size(); ++s)
    eids[s] = earrow_index(s, bids[eobj_over[s]], s, m.identity_morph(ets[s]));
  const std::size_t em = earr.size();
  std::vector<std::size_t> ecomp(em * em, npos);
  for (std::size_t x = 0; x < em; ++x)
    for (std::size_t y = 0; y < em; ++y) {
      if (earr[x].t != earr[y].s) continue;
      Morph h = m.compose_morph(exprs[earr[x].f], earr[x].morph, exprs[earr[y].f], earr[y].morph);
      ecomp[x * em + y] = earrow_index(earr[x].s, bcomp[earr[x].f * bm + earr[y].f], earr[y].t, h);
    }
  std::vector<std::string> eobj;
  for (const auto& S : ets) eobj.push_back(m.show_etype(S));
  auto total = std::make_shared<const FinCategory>("E", eobj, earrows, eids, ecomp);
  std::vector<std::size_t> pobj(ets.size()), parr(em);
  for (std::size_t s = 0; s < ets.size(); ++s) pobj[s] = eobj_over[s];
  for (std::size_t x = 0; x < em; ++x) parr[x] = earr[x].f;
  return MaterializedFunctor{total, base, FinFunctor(total, base, pobj, parr)};
}

}  // namespace refsys

#endif
