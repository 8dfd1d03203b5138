#include "refsys/value.hpp"

namespace refsys {

namespace {

const std::vector<Value>& no_values() {
  static const std::vector<Value> empty;
  return empty;
}

}  // namespace

const std::vector<Value>& Value::items() const { return items_ ? *items_ : no_values(); }

const std::vector<Value>& Value::keys() const { return keys_ ? *keys_ : no_values(); }

Value Value::atom(std::string label) {
  Value v;
  v.kind_ = Kind::atom;
  v.label_ = std::move(label);
  return v;
}

Value Value::tuple(std::vector<Value> items) {
  Value v;
  v.kind_ = Kind::tuple;
  if (!items.empty()) v.items_ = std::make_shared<const std::vector<Value>>(std::move(items));
  return v;
}

Value Value::pair(Value a, Value b) {
  std::vector<Value> items;
  items.reserve(2);
  items.push_back(std::move(a));
  items.push_back(std::move(b));
  return tuple(std::move(items));
}

Value Value::map(std::vector<std::pair<Value, Value>> entries) {
  std::vector<Value> keys, images;
  keys.reserve(entries.size());
  images.reserve(entries.size());
  for (auto& [k, x] : entries) {
    keys.push_back(std::move(k));
    images.push_back(std::move(x));
  }
  return map(std::make_shared<const std::vector<Value>>(std::move(keys)), std::move(images));
}

Value Value::map(std::shared_ptr<const std::vector<Value>> keys, std::vector<Value> images) {
  Value v;
  v.kind_ = Kind::map;
  v.keys_ = std::move(keys);
  v.items_ = std::make_shared<const std::vector<Value>>(std::move(images));
  return v;
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::atom:
      return label_;
    case Kind::tuple: {
      std::string out = "(";
      const auto& xs = items();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += xs[i].str();
      }
      return out + ")";
    }
    case Kind::map: {
      std::string out = "[";
      const auto& ks = keys();
      const auto& xs = items();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += ks[i].str() + "->" + xs[i].str();
      }
      return out + "]";
    }
  }
  return {};
}

namespace {

bool same_vector(const std::shared_ptr<const std::vector<Value>>& a,
                 const std::shared_ptr<const std::vector<Value>>& b) {
  if (a == b) return true;
  const std::size_t na = a ? a->size() : 0;
  const std::size_t nb = b ? b->size() : 0;
  if (na != nb) return false;
  return na == 0 || *a == *b;
}

}  // namespace

bool operator==(const Value& a, const Value& b) {
  return a.kind_ == b.kind_ && a.label_ == b.label_ && same_vector(a.keys_, b.keys_) &&
         same_vector(a.items_, b.items_);
}

// Maps compare entry by entry (key, then image), tuples componentwise.
std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ == Value::Kind::atom) return a.label_ <=> b.label_;
  const auto& xa = a.items();
  const auto& xb = b.items();
  const bool shared_keys = a.keys_ == b.keys_;
  const std::size_t n = std::min(xa.size(), xb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.kind_ == Value::Kind::map && !shared_keys) {
      if (auto c = a.keys()[i] <=> b.keys()[i]; c != 0) return c;
    }
    if (auto c = xa[i] <=> xb[i]; c != 0) return c;
  }
  return xa.size() <=> xb.size();
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

}  // namespace refsys
