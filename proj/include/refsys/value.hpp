#ifndef REFSYS_VALUE_HPP
#define REFSYS_VALUE_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace refsys {

// Element labels. Atoms are user-supplied names; tuples come from products;
// maps come from function spaces and are stored as (key, image) pairs in the
// domain's canonical order. Children are shared, and all maps built over one
// domain share a single key vector, so copies are cheap.
class Value {
 public:
  enum class Kind { atom, tuple, map };

  Value() : kind_(Kind::tuple) {}

  static Value atom(std::string label);
  static Value tuple(std::vector<Value> items);
  static Value pair(Value a, Value b);
  static Value map(std::vector<std::pair<Value, Value>> entries);
  static Value map(std::shared_ptr<const std::vector<Value>> keys, std::vector<Value> images);

  Kind kind() const { return kind_; }
  bool is_atom() const { return kind_ == Kind::atom; }
  const std::string& label() const { return label_; }
  // Tuple components, or map images.
  const std::vector<Value>& items() const;
  // Map keys; empty for atoms and tuples.
  const std::vector<Value>& keys() const;
  std::size_t arity() const { return items().size(); }
  const Value& operator[](std::size_t i) const { return items()[i]; }

  std::string str() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  Kind kind_;
  std::string label_;
  std::shared_ptr<const std::vector<Value>> items_;
  std::shared_ptr<const std::vector<Value>> keys_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

}  // namespace refsys

#endif
