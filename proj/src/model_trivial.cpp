#include "refsys/model_trivial.hpp"

#include "refsys/model_subset.hpp"

namespace refsys {

FinFunction TrivialModel::reindex(const SetRef& from, const SetRef& to) {
  std::vector<std::size_t> t(from->size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
  return FinFunction(from, to, std::move(t));
}

namespace {

std::size_t tuple_count(const std::vector<SetRef>& ts) {
  std::size_t n = 1;
  for (const auto& t : ts) {
    n *= t->size();
    if (n > kMaxCarrier) fail(ErrorKind::capability, "product of e-types too large");
  }
  return n;
}

}  // namespace

SetRef TrivialModel::meet(const IType&, const std::vector<Expr>& fs, const std::vector<EType>& ts) const {
  if (fs.size() != ts.size()) fail(ErrorKind::structural, "weighted family sizes differ");
  if (ts.empty()) return unit_set();
  std::string name = "(";
  for (std::size_t i = 0; i < ts.size(); ++i) name += (i ? "&" : "") + ts[i]->name();
  const std::size_t n = tuple_count(ts);
  std::vector<Value> els;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Value> items(ts.size());
    std::size_t rest = k;
    for (std::size_t i = ts.size(); i-- > 0;) {
      items[i] = ts[i]->at(rest % ts[i]->size());
      rest /= ts[i]->size();
    }
    els.push_back(Value::tuple(std::move(items)));
  }
  return make_set(name + ")", std::move(els));
}

FinFunction TrivialModel::meet_left(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts,
                                    std::size_t i) const {
  SetRef P = meet(a, fs, ts);
  std::size_t stride = 1;
  for (std::size_t j = i + 1; j < ts.size(); ++j) stride *= ts[j]->size();
  std::vector<std::size_t> t(P->size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = (k / stride) % ts[i]->size();
  return FinFunction(P, ts[i], std::move(t));
}

FinFunction TrivialModel::meet_right(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts,
                                     const EType& S, const Expr&, const std::vector<Morph>& betas) const {
  SetRef P = meet(a, fs, ts);
  std::vector<std::size_t> t(S->size());
  for (std::size_t s = 0; s < t.size(); ++s) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) k = k * ts[i]->size() + betas[i](s);
    t[s] = k;
  }
  return FinFunction(S, P, std::move(t));
}

SetRef TrivialModel::join(const IType&, const std::vector<Expr>& fs, const std::vector<EType>& ss) const {
  if (fs.size() != ss.size()) fail(ErrorKind::structural, "weighted family sizes differ");
  std::string name = "(";
  std::vector<Value> els;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    name += (i ? "+" : "") + ss[i]->name();
    for (const auto& e : ss[i]->elements()) els.push_back(Value::pair(Value::atom(std::to_string(i)), e));
  }
  return make_set(ss.empty() ? "0" : name + ")", std::move(els));
}

FinFunction TrivialModel::join_right(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss,
                                     std::size_t i) const {
  SetRef J = join(b, fs, ss);
  std::size_t off = 0;
  for (std::size_t j = 0; j < i; ++j) off += ss[j]->size();
  std::vector<std::size_t> t(ss[i]->size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = off + k;
  return FinFunction(ss[i], J, std::move(t));
}

FinFunction TrivialModel::join_left(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss,
                                    const Expr&, const EType& T, const std::vector<Morph>& betas) const {
  SetRef J = join(b, fs, ss);
  std::vector<std::size_t> t;
  for (const auto& beta : betas)
    for (auto x : beta.table()) t.push_back(x);
  return FinFunction(J, T, std::move(t));
}

FinFunction TrivialModel::lres_left(const EType& S, const EType& U) const {
  return SubSetModel{}.plug_left(S, U).fn;
}

FinFunction TrivialModel::rres_left(const EType& U, const EType& T) const {
  return SubSetModel{}.plug_right(U, T).fn;
}

FinFunction TrivialModel::lres_right(const EType& S, const EType& T, const EType&, const Expr&,
                                     const Morph& beta) const {
  return SubSetModel{}.curry_left(named(beta, ""), S, T).fn;
}

FinFunction TrivialModel::rres_right(const EType& S, const EType& T, const EType&, const Expr&,
                                     const Morph& beta) const {
  return SubSetModel{}.curry_right(named(beta, ""), S, T).fn;
}

}  // namespace refsys
