#ifndef REFSYS_MODEL_SUBSET_HPP
#define REFSYS_MODEL_SUBSET_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "refsys/finset.hpp"
#include "refsys/kernel.hpp"

namespace refsys {

// A subset of a finite carrier, stored as a membership mask.
class Subset {
 public:
  Subset() = default;
  Subset(SetRef of, std::vector<bool> member);

  static Subset full(const SetRef& of);
  static Subset none(const SetRef& of);
  static Subset of_indices(const SetRef& of, const std::vector<std::size_t>& idx);
  static Subset of_values(const SetRef& of, const std::vector<Value>& vals);

  const SetRef& carrier() const { return of_; }
  bool contains(std::size_t i) const { return member_[i]; }
  const std::vector<bool>& mask() const { return member_; }
  std::vector<std::size_t> indices() const;
  std::vector<Value> values() const;
  std::size_t count() const;
  bool subset_of(const Subset& other) const;
  std::string str() const;

  friend bool operator==(const Subset& a, const Subset& b);

 private:
  SetRef of_;
  std::vector<bool> member_;
};

// SubSet -> FinSet: subsets refine their carriers; a function f is typed
// S ==f==> T exactly when f(S) is included in T. Hom-sets over an expression
// have at most one element.
class SubSetModel {
 public:
  using IType = SetRef;
  struct Expr {
    FinFunction fn;
    std::string name;
  };
  using EType = Subset;
  struct Morph {
    friend bool operator==(const Morph&, const Morph&) { return true; }
  };

  // kernel
  IType refines(const EType& S) const { return S.carrier(); }
  IType dom(const Expr& f) const { return f.fn.dom(); }
  IType cod(const Expr& f) const { return f.fn.cod(); }
  Expr compose(const Expr& f, const Expr& g) const;
  Expr identity(const IType& a) const;
  bool same_itype(const IType& a, const IType& b) const { return same_set(a, b); }
  bool same_expr(const Expr& f, const Expr& g) const { return f.fn == g.fn; }
  bool same_etype(const EType& S, const EType& T) const { return S == T; }
  std::vector<Morph> hom_over(const EType& S, const Expr& f, const EType& T) const;
  bool is_morph(const EType& S, const Expr& f, const EType& T, const Morph&) const;
  Morph compose_morph(const Expr&, const Morph&, const Expr&, const Morph&) const { return {}; }
  Morph identity_morph(const EType&) const { return {}; }
  bool same_morph(const Morph&, const Morph&) const { return true; }
  std::string show_itype(const IType& a) const { return a->name(); }
  std::string show_expr(const Expr& f) const { return f.name.empty() ? f.fn.str() : f.name; }
  std::string show_etype(const EType& S) const { return S.str(); }
  std::string show_morph(const Morph&) const { return "*"; }

  // enumeration
  std::vector<EType> etypes_over(const IType& a) const;
  std::vector<Expr> expressions(const IType& a, const IType& b) const;

  // fibration structure
  EType pull(const Expr& f, const EType& T) const;
  Morph pull_left(const Expr&, const EType&) const { return {}; }
  Morph pull_right(const Expr&, const EType&, const EType&, const Expr&, const Morph&) const { return {}; }
  EType push(const EType& S, const Expr& f) const;
  Morph push_right(const EType&, const Expr&) const { return {}; }
  Morph push_left(const EType&, const Expr&, const Expr&, const EType&, const Morph&) const { return {}; }

  // weighted intersections and unions
  EType meet(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts) const;
  Morph meet_left(const IType&, const std::vector<Expr>&, const std::vector<EType>&, std::size_t) const {
    return {};
  }
  Morph meet_right(const IType&, const std::vector<Expr>&, const std::vector<EType>&, const EType&,
                   const Expr&, const std::vector<Morph>&) const {
    return {};
  }
  EType join(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss) const;
  Morph join_right(const IType&, const std::vector<Expr>&, const std::vector<EType>&, std::size_t) const {
    return {};
  }
  Morph join_left(const IType&, const std::vector<Expr>&, const std::vector<EType>&, const Expr&,
                  const EType&, const std::vector<Morph>&) const {
    return {};
  }

  // monoidal structure (cartesian)
  IType unit_itype() const { return unit_set(); }
  IType tensor_itype(const IType& a, const IType& b) const { return product_set(a, b); }
  Expr tensor_expr(const Expr& f, const Expr& g) const;
  EType unit_etype() const { return Subset::full(unit_set()); }
  EType tensor_etype(const EType& S, const EType& T) const;
  Morph tensor_morph(const Morph&, const Morph&) const { return {}; }
  Morph unit_morph() const { return {}; }
  Expr assoc(const IType& a, const IType& b, const IType& c) const;
  Expr assoc_inv(const IType& a, const IType& b, const IType& c) const;
  Expr lunit(const IType& a) const;
  Expr lunit_inv(const IType& a) const;
  Expr runit(const IType& a) const;
  Expr runit_inv(const IType& a) const;
  Morph assoc_morph(const EType&, const EType&, const EType&) const { return {}; }
  Morph assoc_inv_morph(const EType&, const EType&, const EType&) const { return {}; }
  Morph lunit_morph(const EType&) const { return {}; }
  Morph lunit_inv_morph(const EType&) const { return {}; }
  Morph runit_morph(const EType&) const { return {}; }
  Morph runit_inv_morph(const EType&) const { return {}; }

  // closed structure: both residuals are the function space C^A
  IType lres_itype(const IType& a, const IType& c) const { return function_space(a, c); }
  Expr plug_left(const IType& a, const IType& c) const;
  Expr curry_left(const Expr& f, const IType& a, const IType& b) const;
  IType rres_itype(const IType& c, const IType& b) const { return function_space(b, c); }
  Expr plug_right(const IType& c, const IType& b) const;
  Expr curry_right(const Expr& f, const IType& a, const IType& b) const;
  EType lres(const EType& S, const EType& U) const;
  Morph lres_left(const EType&, const EType&) const { return {}; }
  Morph lres_right(const EType&, const EType&, const EType&, const Expr&, const Morph&) const { return {}; }
  EType rres(const EType& U, const EType& T) const;
  Morph rres_left(const EType&, const EType&) const { return {}; }
  Morph rres_right(const EType&, const EType&, const EType&, const Expr&, const Morph&) const { return {}; }
};

using SubExpr = SubSetModel::Expr;

SubExpr named(FinFunction fn, std::string name);
// The subset {1} of 2 = {0,1}; every S is the pullback of it along
// characteristic(S).
Subset truth_value();
SubExpr characteristic(const Subset& S);
// Evaluates an element of function_space(a, c) at the i-th element of a.
std::size_t eval_exponential(const SetRef& a, const SetRef& c, std::size_t phi, std::size_t i);

// Hoare-logic reading: states and deterministic commands.
struct HoareProgram {
  SetRef states;
  std::map<std::string, FinFunction> commands;

  const FinFunction& command(const std::string& name) const;
};

Subset wp(const HoareProgram& prog, const std::string& command, const Subset& q);
Subset sp(const HoareProgram& prog, const Subset& p, const std::string& command);

struct TripleResult {
  bool holds = false;
  bool via_sp = false;  // fold of sp, then inclusion into Q
  bool via_wp = false;  // P included in fold of wp
  std::vector<Subset> sp_chain;
  std::vector<Subset> wp_chain;  // wp_chain[0] = Q, last = weakest precondition
};

TripleResult check_triple(const HoareProgram& prog, const Subset& p,
                          const std::vector<std::string>& sequence, const Subset& q);

}  // namespace refsys

#endif
