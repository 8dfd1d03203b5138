#include "refsys/finset.hpp"

#include "cache.hpp"
#include "refsys/error.hpp"

namespace refsys {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::structural: return "structural";
    case ErrorKind::ill_formed: return "ill-formed";
    case ErrorKind::capability: return "capability";
    case ErrorKind::validation: return "validation";
    case ErrorKind::parse: return "parse";
    case ErrorKind::soundness: return "soundness";
  }
  return "unknown";
}

FinSet::FinSet(std::string name, std::vector<Value> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i], i).second) {
      fail(ErrorKind::structural,
           "duplicate element " + elements_[i].str() + " in set " + name_);
    }
  }
}

std::optional<std::size_t> FinSet::index_of(const Value& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSet::require_index(const Value& v) const {
  auto i = index_of(v);
  if (!i) fail(ErrorKind::structural, v.str() + " is not an element of " + name_);
  return *i;
}

std::string FinSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ",";
    out += elements_[i].str();
  }
  return out + "}";
}

SetRef make_set(std::string name, std::vector<Value> elements) {
  return std::make_shared<const FinSet>(std::move(name), std::move(elements));
}

SetRef atom_set(std::string name, const std::vector<std::string>& labels) {
  std::vector<Value> els;
  els.reserve(labels.size());
  for (const auto& l : labels) els.push_back(Value::atom(l));
  return make_set(std::move(name), std::move(els));
}

SetRef range_set(std::string name, std::size_t n) {
  std::vector<Value> els;
  els.reserve(n);
  for (std::size_t i = 0; i < n; ++i) els.push_back(Value::atom(std::to_string(i)));
  return make_set(std::move(name), std::move(els));
}

SetRef unit_set() {
  static const SetRef one = make_set("1", {Value::tuple({})});
  return one;
}

bool same_set(const SetRef& a, const SetRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->name() == b->name() && a->elements() == b->elements();
}

std::size_t power_size(std::size_t base, std::size_t exponent) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && r > kMaxCarrier / base) return kMaxCarrier + 1;
    r *= base;
  }
  return r;
}

namespace {

detail::PairCache<FinSet, FinSet>& product_cache() {
  static detail::PairCache<FinSet, FinSet> c;
  return c;
}

detail::PairCache<FinSet, FinSet>& exp_cache() {
  static detail::PairCache<FinSet, FinSet> c;
  return c;
}

std::string wrap(const std::string& n) {
  return n.find_first_of("*->^") == std::string::npos ? n : "(" + n + ")";
}

}  // namespace

SetRef product_set(const SetRef& a, const SetRef& b) {
  return product_cache().get(a, b, [&]() -> SetRef {
    if (a->size() * b->size() > kMaxCarrier) {
      fail(ErrorKind::capability, "product " + a->name() + " * " + b->name() + " exceeds carrier bound");
    }
    std::vector<Value> els;
    els.reserve(a->size() * b->size());
    for (const auto& x : a->elements())
      for (const auto& y : b->elements()) els.push_back(Value::pair(x, y));
    return make_set(wrap(a->name()) + "*" + wrap(b->name()), std::move(els));
  });
}

std::size_t product_index(const SetRef&, const SetRef& b, std::size_t i, std::size_t j) {
  return i * b->size() + j;
}

SetRef function_space(const SetRef& dom, const SetRef& cod) {
  return exp_cache().get(dom, cod, [&]() -> SetRef {
    const std::size_t n = power_size(cod->size(), dom->size());
    if (n > kMaxCarrier) {
      fail(ErrorKind::capability,
           "function space " + cod->name() + "^" + dom->name() + " exceeds carrier bound");
    }
    auto keys = std::make_shared<const std::vector<Value>>(dom->elements());
    std::vector<Value> els;
    els.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Value> images(dom->size());
      std::size_t rest = k;
      for (std::size_t i = dom->size(); i-- > 0;) {
        images[i] = cod->at(rest % cod->size());
        rest /= cod->size();
      }
      els.push_back(Value::map(keys, std::move(images)));
    }
    return make_set(wrap(cod->name()) + "^" + wrap(dom->name()), std::move(els));
  });
}

FinFunction::FinFunction(SetRef dom, SetRef cod, std::vector<std::size_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_->size()) {
    fail(ErrorKind::structural, "function table size does not match domain " + dom_->name());
  }
  for (auto t : table_) {
    if (t >= cod_->size()) {
      fail(ErrorKind::structural, "function image out of range of codomain " + cod_->name());
    }
  }
}

FinFunction FinFunction::identity(const SetRef& s) {
  std::vector<std::size_t> t(s->size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
  return FinFunction(s, s, std::move(t));
}

FinFunction FinFunction::constant(const SetRef& dom, const SetRef& cod, std::size_t image) {
  return FinFunction(dom, cod, std::vector<std::size_t>(dom->size(), image));
}

FinFunction FinFunction::from_map(const SetRef& dom, const SetRef& cod,
                                  const std::map<Value, Value>& mapping) {
  std::vector<std::size_t> t(dom->size());
  for (std::size_t i = 0; i < dom->size(); ++i) {
    auto it = mapping.find(dom->at(i));
    if (it == mapping.end()) {
      fail(ErrorKind::structural, "no image given for " + dom->at(i).str());
    }
    t[i] = cod->require_index(it->second);
  }
  return FinFunction(dom, cod, std::move(t));
}

Value FinFunction::apply(const Value& x) const {
  return cod_->at(table_[dom_->require_index(x)]);
}

bool FinFunction::injective() const {
  std::vector<bool> hit(cod_->size(), false);
  for (auto t : table_) {
    if (hit[t]) return false;
    hit[t] = true;
  }
  return true;
}

bool FinFunction::surjective() const {
  std::vector<bool> hit(cod_->size(), false);
  for (auto t : table_) hit[t] = true;
  for (bool h : hit)
    if (!h) return false;
  return true;
}

std::string FinFunction::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out += ",";
    out += dom_->at(i).str() + "->" + cod_->at(table_[i]).str();
  }
  return out + "]";
}

bool operator==(const FinFunction& f, const FinFunction& g) {
  return same_set(f.dom_, g.dom_) && same_set(f.cod_, g.cod_) && f.table_ == g.table_;
}

FinFunction compose(const FinFunction& f, const FinFunction& g) {
  if (!same_set(f.cod(), g.dom())) {
    fail(ErrorKind::structural,
         "cannot compose: codomain " + f.cod()->name() + " differs from domain " + g.dom()->name());
  }
  std::vector<std::size_t> t(f.table().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g(f(i));
  return FinFunction(f.dom(), g.cod(), std::move(t));
}

FinFunction product(const FinFunction& f, const FinFunction& g) {
  SetRef dom = product_set(f.dom(), g.dom());
  SetRef cod = product_set(f.cod(), g.cod());
  std::vector<std::size_t> t(dom->size());
  for (std::size_t i = 0; i < f.dom()->size(); ++i)
    for (std::size_t j = 0; j < g.dom()->size(); ++j)
      t[i * g.dom()->size() + j] = f(i) * g.cod()->size() + g(j);
  return FinFunction(dom, cod, std::move(t));
}

std::vector<FinFunction> all_functions(const SetRef& dom, const SetRef& cod) {
  const std::size_t n = power_size(cod->size(), dom->size());
  if (n > kMaxCarrier) {
    fail(ErrorKind::capability, "too many functions " + dom->name() + " -> " + cod->name());
  }
  std::vector<FinFunction> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(decode_function(dom, cod, k));
  return out;
}

std::optional<FinFunction> inverse(const FinFunction& f) {
  if (f.dom()->size() != f.cod()->size() || !f.injective()) return std::nullopt;
  std::vector<std::size_t> t(f.cod()->size());
  for (std::size_t i = 0; i < f.table().size(); ++i) t[f(i)] = i;
  return FinFunction(f.cod(), f.dom(), std::move(t));
}

std::size_t encode_function(const FinFunction& f) {
  std::size_t k = 0;
  const std::size_t c = f.cod()->size();
  for (auto t : f.table()) k = k * c + t;
  return k;
}

FinFunction decode_function(const SetRef& dom, const SetRef& cod, std::size_t index) {
  std::vector<std::size_t> t(dom->size());
  for (std::size_t i = dom->size(); i-- > 0;) {
    t[i] = index % cod->size();
    index /= cod->size();
  }
  return FinFunction(dom, cod, std::move(t));
}

}  // namespace refsys
