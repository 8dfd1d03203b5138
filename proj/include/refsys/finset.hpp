#ifndef REFSYS_FINSET_HPP
#define REFSYS_FINSET_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "refsys/value.hpp"

namespace refsys {

// Largest carrier a constructed set (product, function space) may have.
inline constexpr std::size_t kMaxCarrier = 1u << 18;

// A finite set with a fixed canonical element order. Two sets are the same
// i-type when their names and element lists agree.
class FinSet {
 public:
  FinSet(std::string name, std::vector<Value> elements);

  const std::string& name() const { return name_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Value& at(std::size_t i) const { return elements_.at(i); }
  const std::vector<Value>& elements() const { return elements_; }
  std::optional<std::size_t> index_of(const Value& v) const;
  std::size_t require_index(const Value& v) const;

  std::string str() const;

 private:
  std::string name_;
  std::vector<Value> elements_;
  std::map<Value, std::size_t> index_;
};

using SetRef = std::shared_ptr<const FinSet>;

SetRef make_set(std::string name, std::vector<Value> elements);
SetRef atom_set(std::string name, const std::vector<std::string>& labels);
// {0, 1, ..., n-1} as atoms.
SetRef range_set(std::string name, std::size_t n);
SetRef unit_set();

bool same_set(const SetRef& a, const SetRef& b);

// A x B with a-major order; element (a, b) sits at index i * |B| + j.
SetRef product_set(const SetRef& a, const SetRef& b);
std::size_t product_index(const SetRef& a, const SetRef& b, std::size_t i, std::size_t j);

// C^A: all functions A -> C, ordered lexicographically by their image tables
// (first domain element most significant).
SetRef function_space(const SetRef& dom, const SetRef& cod);

class FinFunction {
 public:
  FinFunction(SetRef dom, SetRef cod, std::vector<std::size_t> table);

  static FinFunction identity(const SetRef& s);
  static FinFunction constant(const SetRef& dom, const SetRef& cod, std::size_t image);
  // Builds a function from a label-level mapping; every domain element must be mapped.
  static FinFunction from_map(const SetRef& dom, const SetRef& cod,
                              const std::map<Value, Value>& mapping);

  const SetRef& dom() const { return dom_; }
  const SetRef& cod() const { return cod_; }
  const std::vector<std::size_t>& table() const { return table_; }
  std::size_t operator()(std::size_t i) const { return table_[i]; }
  Value apply(const Value& x) const;

  bool injective() const;
  bool surjective() const;
  std::string str() const;

  friend bool operator==(const FinFunction& f, const FinFunction& g);

 private:
  SetRef dom_;
  SetRef cod_;
  std::vector<std::size_t> table_;
};

// Diagrammatic order: (f ; g)(x) = g(f(x)).
FinFunction compose(const FinFunction& f, const FinFunction& g);
FinFunction product(const FinFunction& f, const FinFunction& g);
std::vector<FinFunction> all_functions(const SetRef& dom, const SetRef& cod);
std::optional<FinFunction> inverse(const FinFunction& f);

// Position of f inside function_space(f.dom(), f.cod()), and back.
std::size_t encode_function(const FinFunction& f);
FinFunction decode_function(const SetRef& dom, const SetRef& cod, std::size_t index);

// Saturating |C|^|A|; returns kMaxCarrier + 1 when the bound is exceeded.
std::size_t power_size(std::size_t base, std::size_t exponent);

}  // namespace refsys

#endif
