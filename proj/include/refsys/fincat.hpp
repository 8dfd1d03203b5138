#ifndef REFSYS_FINCAT_HPP
#define REFSYS_FINCAT_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "refsys/finset.hpp"

namespace refsys {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Arrow {
  std::string name;
  std::size_t src = 0;
  std::size_t dst = 0;
};

struct ArrowSpec {
  std::string name, src, dst;
};

// first ; second = result (diagrammatic order).
struct CompositionEntry {
  std::string first, second, result;
};

struct LawReport {
  std::vector<std::string> structural;  // missing or dangling table entries
  std::vector<std::string> violations;  // law failures on well-formed tables
  bool ok() const { return structural.empty() && violations.empty(); }
  std::string str() const;
};

// Finite category with an explicit composition table. comp[f * n + g] holds
// f;g when cod(f) = dom(g) and npos otherwise.
class FinCategory {
 public:
  FinCategory(std::string name, std::vector<std::string> objects, std::vector<Arrow> arrows,
              std::vector<std::size_t> identities, std::vector<std::size_t> comp);

  const std::string& name() const { return name_; }
  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::string& object(std::size_t i) const { return objects_.at(i); }
  const std::vector<std::string>& objects() const { return objects_; }
  const Arrow& arrow(std::size_t i) const { return arrows_.at(i); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t identity(std::size_t obj) const { return identities_.at(obj); }
  std::size_t src(std::size_t f) const { return arrows_[f].src; }
  std::size_t dst(std::size_t f) const { return arrows_[f].dst; }
  std::size_t compose(std::size_t f, std::size_t g) const;
  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> object_index(const std::string& name) const;
  std::optional<std::size_t> arrow_index(const std::string& name) const;
  const std::vector<std::size_t>& table() const { return comp_; }

  // Structural totality plus associativity and unit laws.
  LawReport check_laws() const;

  friend bool same_category(const FinCategory& a, const FinCategory& b);

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> identities_;
  std::vector<std::size_t> comp_;
  std::vector<std::vector<std::size_t>> homs_;
};

using CatRef = std::shared_ptr<const FinCategory>;

bool same_category(const CatRef& a, const CatRef& b);

// Validating constructors from named tables.
LawReport check_category(const std::string& name, const std::vector<std::string>& objects,
                         const std::vector<ArrowSpec>& arrows,
                         const std::map<std::string, std::string>& identities,
                         const std::vector<CompositionEntry>& composition);
CatRef make_category(const std::string& name, const std::vector<std::string>& objects,
                     const std::vector<ArrowSpec>& arrows,
                     const std::map<std::string, std::string>& identities,
                     const std::vector<CompositionEntry>& composition);

CatRef terminal_category();
CatRef discrete_category(const std::string& name, const std::vector<std::string>& objects);
// Two objects and one non-identity arrow.
CatRef arrow_category(const std::string& name, const std::string& lo, const std::string& hi,
                      const std::string& arrow);
// One object; arrows are the monoid elements, composition is mult[i][j].
CatRef monoid_category(const std::string& name, const std::vector<std::string>& elements,
                       const std::vector<std::vector<std::size_t>>& mult, std::size_t unit);
CatRef cyclic_group_category(std::size_t n);
// A preorder given by a reflexive-transitive relation; throws when not transitive.
CatRef preorder_category(const std::string& name, const std::vector<std::string>& objects,
                         const std::vector<std::pair<std::size_t, std::size_t>>& leq);
CatRef product_category(const CatRef& a, const CatRef& b);

class FinFunctor {
 public:
  FinFunctor(CatRef dom, CatRef cod, std::vector<std::size_t> objects,
             std::vector<std::size_t> arrows);

  static FinFunctor identity(const CatRef& c);

  const CatRef& dom() const { return dom_; }
  const CatRef& cod() const { return cod_; }
  std::size_t obj(std::size_t a) const { return objects_[a]; }
  std::size_t arr(std::size_t f) const { return arrows_[f]; }
  const std::vector<std::size_t>& object_map() const { return objects_; }
  const std::vector<std::size_t>& arrow_map() const { return arrows_; }

  LawReport check() const;
  std::string str() const;

  friend bool operator==(const FinFunctor& f, const FinFunctor& g);

 private:
  CatRef dom_;
  CatRef cod_;
  std::vector<std::size_t> objects_;
  std::vector<std::size_t> arrows_;
};

LawReport check_functor(const CatRef& dom, const CatRef& cod,
                        const std::map<std::string, std::string>& object_map,
                        const std::map<std::string, std::string>& arrow_map);
FinFunctor make_functor(const CatRef& dom, const CatRef& cod,
                        const std::map<std::string, std::string>& object_map,
                        const std::map<std::string, std::string>& arrow_map);

FinFunctor compose(const FinFunctor& f, const FinFunctor& g);
FinFunctor product(const FinFunctor& f, const FinFunctor& g);
// Constant functor at an object of the codomain.
FinFunctor constant_functor(const CatRef& dom, const CatRef& cod, std::size_t object);
std::vector<FinFunctor> all_functors(const CatRef& dom, const CatRef& cod,
                                     std::size_t limit = kMaxCarrier);

// Functor category [A, C]: objects are functors, arrows natural transformations
// (components stored per object of A). Refuses to build beyond `bound` objects
// or arrows.
struct FunctorCategory {
  CatRef category;
  std::vector<FinFunctor> functors;
  // components[k][a] = arrow of C, for the k-th natural transformation.
  std::vector<std::vector<std::size_t>> components;
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, std::size_t> functor_index;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> arrow_index;

  std::size_t find_functor(const FinFunctor& f) const;
  std::size_t find_arrow(std::size_t src, std::size_t dst, const std::vector<std::size_t>& comp) const;
};

inline constexpr std::size_t kFunctorCategoryBound = 4096;

std::shared_ptr<const FunctorCategory> functor_category(const CatRef& a, const CatRef& c,
                                                        std::size_t bound = kFunctorCategoryBound);

}  // namespace refsys

#endif
