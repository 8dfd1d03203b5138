#ifndef REFSYS_MODEL_PRESHEAF_HPP
#define REFSYS_MODEL_PRESHEAF_HPP

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "refsys/fincat.hpp"
#include "refsys/finset.hpp"
#include "refsys/kernel.hpp"

namespace refsys {

// A covariant functor base -> FinSet given by value sets and arrow actions.
class Presheaf {
 public:
  Presheaf() = default;
  Presheaf(CatRef base, std::vector<SetRef> values, std::vector<FinFunction> action);

  const CatRef& base() const { return base_; }
  const SetRef& value(std::size_t obj) const { return values_[obj]; }
  const std::vector<SetRef>& values() const { return values_; }
  const FinFunction& action(std::size_t arrow) const { return action_[arrow]; }
  const std::vector<FinFunction>& actions() const { return action_; }

  LawReport check() const;
  std::string str() const;

  friend bool operator==(const Presheaf& a, const Presheaf& b);

 private:
  CatRef base_;
  std::vector<SetRef> values_;
  std::vector<FinFunction> action_;
};

// Builds and validates a presheaf; throws on functoriality failures.
Presheaf make_presheaf(const CatRef& base, std::vector<SetRef> values, std::vector<FinFunction> action);
// The presheaf with the same value at every object and identity actions.
Presheaf constant_presheaf(const CatRef& base, const SetRef& value);

// A natural transformation S => T o f, one component per object of S's base.
struct NatTrans {
  std::vector<FinFunction> components;
  friend bool operator==(const NatTrans& a, const NatTrans& b) { return a.components == b.components; }
};

Value encode(const NatTrans& t);

// FinPresheaf -> FinCat. Hom-sets over a functor are the natural
// transformations S => T o f, so distinct derivations over one judgment exist.
class PresheafModel {
 public:
  using IType = CatRef;
  struct Expr {
    FinFunctor fn;
    std::string name;
  };
  using EType = Presheaf;
  using Morph = NatTrans;

  // Bound on value-set sizes used when enumerating e-types.
  explicit PresheafModel(std::size_t max_value = 2) : max_value_(max_value) {}

  IType refines(const EType& S) const { return S.base(); }
  IType dom(const Expr& f) const { return f.fn.dom(); }
  IType cod(const Expr& f) const { return f.fn.cod(); }
  Expr compose(const Expr& f, const Expr& g) const;
  Expr identity(const IType& a) const;
  bool same_itype(const IType& a, const IType& b) const { return same_category(a, b); }
  bool same_expr(const Expr& f, const Expr& g) const { return f.fn == g.fn; }
  bool same_etype(const EType& S, const EType& T) const { return S == T; }
  std::vector<Morph> hom_over(const EType& S, const Expr& f, const EType& T) const;
  bool is_morph(const EType& S, const Expr& f, const EType& T, const Morph& m) const;
  Morph compose_morph(const Expr& f, const Morph& a, const Expr& g, const Morph& b) const;
  Morph identity_morph(const EType& S) const;
  bool same_morph(const Morph& a, const Morph& b) const { return a == b; }
  std::string show_itype(const IType& a) const { return a->name(); }
  std::string show_expr(const Expr& f) const { return f.name.empty() ? f.fn.str() : f.name; }
  std::string show_etype(const EType& S) const { return S.str(); }
  std::string show_morph(const Morph& m) const { return encode(m).str(); }

  std::vector<EType> etypes_over(const IType& a) const;
  std::vector<Expr> expressions(const IType& a, const IType& b) const;

  // pullback is precomposition
  EType pull(const Expr& f, const EType& T) const;
  Morph pull_left(const Expr& f, const EType& T) const;
  Morph pull_right(const Expr& f, const EType& T, const EType& S, const Expr& g, const Morph& beta) const;
  // pushforward is the left Kan extension, computed pointwise as a coend
  EType push(const EType& S, const Expr& f) const;
  Morph push_right(const EType& S, const Expr& f) const;
  Morph push_left(const EType& S, const Expr& f, const Expr& g, const EType& T, const Morph& beta) const;

  EType meet(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts) const;
  Morph meet_left(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts,
                  std::size_t i) const;
  Morph meet_right(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts,
                   const EType& S, const Expr& g, const std::vector<Morph>& betas) const;
  EType join(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss) const;
  Morph join_right(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss,
                   std::size_t i) const;
  Morph join_left(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss,
                  const Expr& g, const EType& T, const std::vector<Morph>& betas) const;

  // cartesian monoidal structure, external product of presheaves
  IType unit_itype() const { return terminal_category(); }
  IType tensor_itype(const IType& a, const IType& b) const { return product_category(a, b); }
  Expr tensor_expr(const Expr& f, const Expr& g) const;
  EType unit_etype() const;
  EType tensor_etype(const EType& S, const EType& T) const;
  Morph tensor_morph(const Morph& a, const Morph& b) const;
  Morph unit_morph() const { return identity_morph(unit_etype()); }
  Expr assoc(const IType& a, const IType& b, const IType& c) const;
  Expr assoc_inv(const IType& a, const IType& b, const IType& c) const;
  Expr lunit(const IType& a) const;
  Expr lunit_inv(const IType& a) const;
  Expr runit(const IType& a) const;
  Expr runit_inv(const IType& a) const;
  Morph assoc_morph(const EType& a, const EType& b, const EType& c) const;
  Morph assoc_inv_morph(const EType& a, const EType& b, const EType& c) const;
  Morph lunit_morph(const EType& a) const;
  Morph lunit_inv_morph(const EType& a) const;
  Morph runit_morph(const EType& a) const;
  Morph runit_inv_morph(const EType& a) const;

  // closed structure: residual i-types are functor categories, residual
  // e-types are ends (sets of natural transformations)
  IType lres_itype(const IType& a, const IType& c) const { return functor_category(a, c)->category; }
  Expr plug_left(const IType& a, const IType& c) const;
  Expr curry_left(const Expr& f, const IType& a, const IType& b) const;
  IType rres_itype(const IType& c, const IType& b) const { return functor_category(b, c)->category; }
  Expr plug_right(const IType& c, const IType& b) const;
  Expr curry_right(const Expr& f, const IType& a, const IType& b) const;
  EType lres(const EType& S, const EType& U) const;
  Morph lres_left(const EType& S, const EType& U) const;
  Morph lres_right(const EType& S, const EType& T, const EType& U, const Expr& f, const Morph& beta) const;
  EType rres(const EType& U, const EType& T) const;
  Morph rres_left(const EType& U, const EType& T) const;
  Morph rres_right(const EType& S, const EType& T, const EType& U, const Expr& f, const Morph& beta) const;

  std::size_t max_value() const { return max_value_; }

 private:
  std::size_t max_value_;
};

using PshExpr = PresheafModel::Expr;

PshExpr named(FinFunctor fn, std::string name);

// The coend presentation of a Kan extension at one object b: generators
// (a, v : f(a) -> b, s) and the class of each generator.
struct CoendFiber {
  struct Generator {
    std::size_t a, v, s;
  };
  std::vector<Generator> generators;
  std::vector<std::size_t> klass;           // generator -> class
  std::vector<std::size_t> representatives;  // class -> least generator
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index;

  std::size_t class_of(std::size_t a, std::size_t v, std::size_t s) const;
};

CoendFiber coend_fiber(const Presheaf& S, const FinFunctor& f, std::size_t b);

}  // namespace refsys

#endif
