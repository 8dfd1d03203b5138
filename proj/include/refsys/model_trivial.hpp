#ifndef REFSYS_MODEL_TRIVIAL_HPP
#define REFSYS_MODEL_TRIVIAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "refsys/finset.hpp"
#include "refsys/kernel.hpp"

namespace refsys {

// The trivial fibration FinSet -> 1. Every expression is the identity of the
// single i-type, so typing collapses to plain functions between e-types.
class TrivialModel {
 public:
  struct IType {
    friend bool operator==(const IType&, const IType&) { return true; }
  };
  // All expressions denote the identity; the name records how one was built.
  struct Expr {
    std::string name = "id";
  };
  using EType = SetRef;
  using Morph = FinFunction;

  TrivialModel() = default;
  explicit TrivialModel(std::vector<SetRef> universe) : universe_(std::move(universe)) {}

  IType refines(const EType&) const { return {}; }
  IType dom(const Expr&) const { return {}; }
  IType cod(const Expr&) const { return {}; }
  Expr compose(const Expr& f, const Expr& g) const { return {f.name + ";" + g.name}; }
  Expr identity(const IType&) const { return {}; }
  bool same_itype(const IType&, const IType&) const { return true; }
  bool same_expr(const Expr&, const Expr&) const { return true; }
  bool same_etype(const EType& S, const EType& T) const { return same_set(S, T); }
  std::vector<Morph> hom_over(const EType& S, const Expr&, const EType& T) const {
    return all_functions(S, T);
  }
  bool is_morph(const EType& S, const Expr&, const EType& T, const Morph& m) const {
    return same_set(m.dom(), S) && same_set(m.cod(), T);
  }
  Morph compose_morph(const Expr&, const Morph& a, const Expr&, const Morph& b) const {
    return refsys::compose(a, b);
  }
  Morph identity_morph(const EType& S) const { return FinFunction::identity(S); }
  bool same_morph(const Morph& a, const Morph& b) const { return a == b; }
  // Avoids enumerating |S|^|T| candidate inverses.
  std::optional<Morph> invert_vertical(const EType&, const EType&, const Morph& m) const { return inverse(m); }
  std::string show_itype(const IType&) const { return "1"; }
  std::string show_expr(const Expr& f) const { return f.name; }
  std::string show_etype(const EType& S) const { return S->name(); }
  std::string show_morph(const Morph& m) const { return m.str(); }

  std::vector<EType> etypes_over(const IType&) const { return universe_; }
  std::vector<Expr> expressions(const IType&, const IType&) const { return {Expr{}}; }

  EType pull(const Expr&, const EType& T) const { return T; }
  Morph pull_left(const Expr&, const EType& T) const { return identity_morph(T); }
  Morph pull_right(const Expr&, const EType&, const EType&, const Expr&, const Morph& beta) const {
    return beta;
  }
  EType push(const EType& S, const Expr&) const { return S; }
  Morph push_right(const EType& S, const Expr&) const { return identity_morph(S); }
  Morph push_left(const EType&, const Expr&, const Expr&, const EType&, const Morph& beta) const {
    return beta;
  }

  // weighted families are products and coproducts of the e-types
  EType meet(const IType&, const std::vector<Expr>& fs, const std::vector<EType>& ts) const;
  Morph meet_left(const IType&, const std::vector<Expr>& fs, const std::vector<EType>& ts, std::size_t i) const;
  Morph meet_right(const IType&, const std::vector<Expr>& fs, const std::vector<EType>& ts, const EType& S,
                   const Expr&, const std::vector<Morph>& betas) const;
  EType join(const IType&, const std::vector<Expr>& fs, const std::vector<EType>& ss) const;
  Morph join_right(const IType&, const std::vector<Expr>& fs, const std::vector<EType>& ss, std::size_t i) const;
  Morph join_left(const IType&, const std::vector<Expr>& fs, const std::vector<EType>& ss, const Expr&,
                  const EType& T, const std::vector<Morph>& betas) const;

  IType unit_itype() const { return {}; }
  IType tensor_itype(const IType&, const IType&) const { return {}; }
  Expr tensor_expr(const Expr& f, const Expr& g) const { return {"(" + f.name + "*" + g.name + ")"}; }
  EType unit_etype() const { return unit_set(); }
  EType tensor_etype(const EType& S, const EType& T) const { return product_set(S, T); }
  Morph tensor_morph(const Morph& a, const Morph& b) const { return product(a, b); }
  Morph unit_morph() const { return identity_morph(unit_set()); }
  Expr assoc(const IType&, const IType&, const IType&) const { return {"assoc"}; }
  Expr assoc_inv(const IType&, const IType&, const IType&) const { return {"assoc'"}; }
  Expr lunit(const IType&) const { return {"lunit"}; }
  Expr lunit_inv(const IType&) const { return {"lunit'"}; }
  Expr runit(const IType&) const { return {"runit"}; }
  Expr runit_inv(const IType&) const { return {"runit'"}; }
  Morph assoc_morph(const EType& a, const EType& b, const EType& c) const {
    return reindex(product_set(product_set(a, b), c), product_set(a, product_set(b, c)));
  }
  Morph assoc_inv_morph(const EType& a, const EType& b, const EType& c) const {
    return reindex(product_set(a, product_set(b, c)), product_set(product_set(a, b), c));
  }
  Morph lunit_morph(const EType& a) const { return reindex(product_set(unit_set(), a), a); }
  Morph lunit_inv_morph(const EType& a) const { return reindex(a, product_set(unit_set(), a)); }
  Morph runit_morph(const EType& a) const { return reindex(product_set(a, unit_set()), a); }
  Morph runit_inv_morph(const EType& a) const { return reindex(a, product_set(a, unit_set())); }

  IType lres_itype(const IType&, const IType&) const { return {}; }
  Expr plug_left(const IType&, const IType&) const { return {"plugL"}; }
  Expr curry_left(const Expr& f, const IType&, const IType&) const { return {"lc(" + f.name + ")"}; }
  IType rres_itype(const IType&, const IType&) const { return {}; }
  Expr plug_right(const IType&, const IType&) const { return {"plugR"}; }
  Expr curry_right(const Expr& f, const IType&, const IType&) const { return {"rc(" + f.name + ")"}; }

  EType lres(const EType& S, const EType& U) const { return function_space(S, U); }
  EType rres(const EType& U, const EType& T) const { return function_space(T, U); }
  // S * U^S -> U
  Morph lres_left(const EType& S, const EType& U) const;
  // (S * T -> U) |-> (T -> U^S)
  Morph lres_right(const EType& S, const EType& T, const EType& U, const Expr&, const Morph& beta) const;
  // U^T * T -> U
  Morph rres_left(const EType& U, const EType& T) const;
  // (S * T -> U) |-> (S -> U^T)
  Morph rres_right(const EType& S, const EType& T, const EType& U, const Expr&, const Morph& beta) const;

 private:
  static FinFunction reindex(const SetRef& from, const SetRef& to);
  std::vector<SetRef> universe_;
};

}  // namespace refsys

#endif
