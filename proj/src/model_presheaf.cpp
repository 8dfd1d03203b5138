#include "refsys/model_presheaf.hpp"

#include <functional>
#include <memory>
#include <numeric>

namespace refsys {

Presheaf::Presheaf(CatRef base, std::vector<SetRef> values, std::vector<FinFunction> action)
    : base_(std::move(base)), values_(std::move(values)), action_(std::move(action)) {
  if (values_.size() != base_->num_objects() || action_.size() != base_->num_arrows()) {
    fail(ErrorKind::structural, "presheaf tables are not total on " + base_->name());
  }
  for (std::size_t u = 0; u < action_.size(); ++u) {
    if (!same_set(action_[u].dom(), values_[base_->src(u)]) ||
        !same_set(action_[u].cod(), values_[base_->dst(u)])) {
      fail(ErrorKind::structural, "action of " + base_->arrow(u).name + " has the wrong boundary");
    }
  }
}

LawReport Presheaf::check() const {
  LawReport r;
  for (std::size_t o = 0; o < base_->num_objects(); ++o) {
    if (!(action_[base_->identity(o)] == FinFunction::identity(values_[o]))) {
      r.violations.push_back("identity of " + base_->object(o) + " acts non-trivially");
    }
  }
  const std::size_t m = base_->num_arrows();
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      const std::size_t h = base_->table()[f * m + g];
      if (h == npos) continue;
      if (!(refsys::compose(action_[f], action_[g]) == action_[h])) {
        r.violations.push_back("action does not preserve " + base_->arrow(f).name + ";" +
                               base_->arrow(g).name);
      }
    }
  return r;
}

std::string Presheaf::str() const {
  std::string out = "<";
  for (std::size_t o = 0; o < values_.size(); ++o) {
    if (o) out += " ";
    out += base_->object(o) + ":" + values_[o]->str();
  }
  bool first = true;
  for (std::size_t u = 0; u < action_.size(); ++u) {
    if (base_->identity(base_->src(u)) == u) continue;
    out += first ? " | " : " ";
    first = false;
    out += base_->arrow(u).name + ":" + action_[u].str();
  }
  return out + ">";
}

bool operator==(const Presheaf& a, const Presheaf& b) {
  if (!same_category(a.base_, b.base_) || a.values_.size() != b.values_.size()) return false;
  for (std::size_t i = 0; i < a.values_.size(); ++i)
    if (!same_set(a.values_[i], b.values_[i])) return false;
  return a.action_ == b.action_;
}

Presheaf make_presheaf(const CatRef& base, std::vector<SetRef> values, std::vector<FinFunction> action) {
  Presheaf p(base, std::move(values), std::move(action));
  LawReport r = p.check();
  if (!r.ok()) fail(ErrorKind::validation, "presheaf is not functorial: " + r.str());
  return p;
}

Presheaf constant_presheaf(const CatRef& base, const SetRef& value) {
  std::vector<SetRef> vals(base->num_objects(), value);
  std::vector<FinFunction> act(base->num_arrows(), FinFunction::identity(value));
  return Presheaf(base, std::move(vals), std::move(act));
}

namespace {

Value function_value(const FinFunction& f) {
  std::vector<std::pair<Value, Value>> entries;
  for (std::size_t i = 0; i < f.table().size(); ++i) entries.emplace_back(f.dom()->at(i), f.cod()->at(f(i)));
  return Value::map(std::move(entries));
}

FinFunction reindex(const SetRef& from, const SetRef& to) {
  std::vector<std::size_t> t(from->size());
  std::iota(t.begin(), t.end(), std::size_t{0});
  return FinFunction(from, to, std::move(t));
}

std::string paren(const std::string& s) {
  return s.find_first_of(";* ") == std::string::npos ? s : "(" + s + ")";
}

// Mixed-radix tuple set, first factor most significant.
SetRef tuple_set(const std::vector<SetRef>& factors) {
  if (factors.empty()) return unit_set();
  std::size_t n = 1;
  std::string name = "(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    n *= factors[i]->size();
    if (n > kMaxCarrier) fail(ErrorKind::capability, "tuple set too large");
    name += (i ? "&" : "") + factors[i]->name();
  }
  std::vector<Value> els;
  els.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Value> items(factors.size());
    std::size_t rest = k;
    for (std::size_t i = factors.size(); i-- > 0;) {
      items[i] = factors[i]->at(rest % factors[i]->size());
      rest /= factors[i]->size();
    }
    els.push_back(Value::tuple(std::move(items)));
  }
  return make_set(name + ")", std::move(els));
}

std::size_t tuple_index(const std::vector<SetRef>& factors, const std::vector<std::size_t>& idx) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) k = k * factors[i]->size() + idx[i];
  return k;
}

std::vector<std::size_t> tuple_components(const std::vector<SetRef>& factors, std::size_t k) {
  std::vector<std::size_t> idx(factors.size());
  for (std::size_t i = factors.size(); i-- > 0;) {
    idx[i] = k % factors[i]->size();
    k /= factors[i]->size();
  }
  return idx;
}

bool natural(const Presheaf& S, const FinFunctor& f, const Presheaf& T, const std::vector<FinFunction>& c,
             std::size_t upto) {
  const auto& A = *S.base();
  for (std::size_t u = 0; u < A.num_arrows(); ++u) {
    const std::size_t a = A.src(u), b = A.dst(u);
    if (a >= upto || b >= upto) continue;
    if (!(refsys::compose(S.action(u), c[b]) == refsys::compose(c[a], T.action(f.arr(u))))) return false;
  }
  return true;
}

}  // namespace

Value encode(const NatTrans& t) {
  std::vector<Value> items;
  for (const auto& c : t.components) items.push_back(function_value(c));
  return Value::tuple(std::move(items));
}

PshExpr named(FinFunctor fn, std::string name) { return PshExpr{std::move(fn), std::move(name)}; }

PshExpr PresheafModel::compose(const Expr& f, const Expr& g) const {
  return named(refsys::compose(f.fn, g.fn), paren(show_expr(f)) + ";" + paren(show_expr(g)));
}

PshExpr PresheafModel::identity(const IType& a) const { return named(FinFunctor::identity(a), "id"); }

std::vector<NatTrans> PresheafModel::hom_over(const EType& S, const Expr& f, const EType& T) const {
  std::vector<NatTrans> out;
  if (!same_category(S.base(), f.fn.dom()) || !same_category(T.base(), f.fn.cod())) return out;
  const std::size_t n = S.base()->num_objects();
  std::vector<std::vector<FinFunction>> cands(n);
  for (std::size_t a = 0; a < n; ++a) cands[a] = all_functions(S.value(a), T.value(f.fn.obj(a)));
  std::vector<FinFunction> comp;
  comp.reserve(n);
  std::function<void(std::size_t)> go = [&](std::size_t a) {
    if (a == n) {
      out.push_back(NatTrans{comp});
      return;
    }
    for (const auto& c : cands[a]) {
      comp.push_back(c);
      if (natural(S, f.fn, T, comp, a + 1)) go(a + 1);
      comp.pop_back();
    }
  };
  go(0);
  return out;
}

bool PresheafModel::is_morph(const EType& S, const Expr& f, const EType& T, const Morph& m) const {
  if (!same_category(S.base(), f.fn.dom()) || !same_category(T.base(), f.fn.cod())) return false;
  const std::size_t n = S.base()->num_objects();
  if (m.components.size() != n) return false;
  for (std::size_t a = 0; a < n; ++a) {
    if (!same_set(m.components[a].dom(), S.value(a)) ||
        !same_set(m.components[a].cod(), T.value(f.fn.obj(a)))) {
      return false;
    }
  }
  return natural(S, f.fn, T, m.components, n);
}

NatTrans PresheafModel::compose_morph(const Expr& f, const Morph& a, const Expr&, const Morph& b) const {
  NatTrans out;
  for (std::size_t x = 0; x < a.components.size(); ++x)
    out.components.push_back(refsys::compose(a.components[x], b.components[f.fn.obj(x)]));
  return out;
}

NatTrans PresheafModel::identity_morph(const EType& S) const {
  NatTrans out;
  for (const auto& v : S.values()) out.components.push_back(FinFunction::identity(v));
  return out;
}

std::vector<Presheaf> PresheafModel::etypes_over(const IType& a) const {
  const auto& A = *a;
  std::vector<Presheaf> out;
  std::vector<SetRef> sizes;
  for (std::size_t k = 0; k <= max_value_; ++k) sizes.push_back(range_set(std::to_string(k), k));
  std::vector<SetRef> vals(A.num_objects());
  std::vector<FinFunction> act;
  std::function<void(std::size_t)> arrows_from = [&](std::size_t u) {
    if (u == A.num_arrows()) {
      Presheaf p(a, vals, act);
      if (p.check().ok()) out.push_back(std::move(p));
      return;
    }
    const std::size_t s = A.src(u), d = A.dst(u);
    if (A.identity(s) == u) {
      act.push_back(FinFunction::identity(vals[s]));
      arrows_from(u + 1);
      act.pop_back();
      return;
    }
    for (auto& f : all_functions(vals[s], vals[d])) {
      act.push_back(std::move(f));
      arrows_from(u + 1);
      act.pop_back();
    }
  };
  std::function<void(std::size_t)> values_from = [&](std::size_t o) {
    if (o == A.num_objects()) {
      arrows_from(0);
      return;
    }
    for (const auto& v : sizes) {
      vals[o] = v;
      values_from(o + 1);
    }
  };
  values_from(0);
  return out;
}

std::vector<PshExpr> PresheafModel::expressions(const IType& a, const IType& b) const {
  std::vector<PshExpr> out;
  for (auto& f : all_functors(a, b)) out.push_back(named(f, ""));
  return out;
}

Presheaf PresheafModel::pull(const Expr& f, const EType& T) const {
  if (!same_category(T.base(), f.fn.cod())) fail(ErrorKind::ill_formed, "pullback target does not refine the codomain");
  const auto& A = *f.fn.dom();
  std::vector<SetRef> vals(A.num_objects());
  std::vector<FinFunction> act;
  for (std::size_t a = 0; a < vals.size(); ++a) vals[a] = T.value(f.fn.obj(a));
  for (std::size_t u = 0; u < A.num_arrows(); ++u) act.push_back(T.action(f.fn.arr(u)));
  return Presheaf(f.fn.dom(), std::move(vals), std::move(act));
}

NatTrans PresheafModel::pull_left(const Expr& f, const EType& T) const {
  NatTrans out;
  for (std::size_t a = 0; a < f.fn.dom()->num_objects(); ++a)
    out.components.push_back(FinFunction::identity(T.value(f.fn.obj(a))));
  return out;
}

NatTrans PresheafModel::pull_right(const Expr&, const EType&, const EType&, const Expr&, const Morph& beta) const {
  // S(x) -> T(f(g x)) is already a component S(x) -> (f*T)(g x).
  return beta;
}

std::size_t CoendFiber::class_of(std::size_t a, std::size_t v, std::size_t s) const {
  auto it = index.find({a, v, s});
  if (it == index.end()) fail(ErrorKind::structural, "coend generator out of range");
  return klass[it->second];
}

CoendFiber coend_fiber(const Presheaf& S, const FinFunctor& f, std::size_t b) {
  const auto& A = *S.base();
  const auto& B = *f.cod();
  CoendFiber fib;
  for (std::size_t a = 0; a < A.num_objects(); ++a)
    for (std::size_t v : B.hom(f.obj(a), b))
      for (std::size_t s = 0; s < S.value(a)->size(); ++s) {
        fib.index[{a, v, s}] = fib.generators.size();
        fib.generators.push_back({a, v, s});
      }
  std::vector<std::size_t> parent(fib.generators.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent[y] = x;  // the least generator stays the root
  };
  // (a, f(w);v, s) ~ (a', v, S(w)(s)) for w : a -> a'
  for (std::size_t w = 0; w < A.num_arrows(); ++w) {
    const std::size_t a = A.src(w), a2 = A.dst(w);
    for (std::size_t v : B.hom(f.obj(a2), b))
      for (std::size_t s = 0; s < S.value(a)->size(); ++s)
        unite(fib.index.at({a, B.compose(f.arr(w), v), s}), fib.index.at({a2, v, S.action(w)(s)}));
  }
  fib.klass.assign(fib.generators.size(), npos);
  for (std::size_t g = 0; g < fib.generators.size(); ++g) {
    const std::size_t r = find(g);
    if (r == g) {
      fib.klass[g] = fib.representatives.size();
      fib.representatives.push_back(g);
    } else {
      fib.klass[g] = fib.klass[r];
    }
  }
  return fib;
}

namespace {

struct Kan {
  Presheaf S;
  FinFunctor f;
  std::vector<CoendFiber> fibers;
  Presheaf result;
};

Kan build_kan(const Presheaf& S, const FinFunctor& f) {
  const auto& A = *S.base();
  const auto& B = *f.cod();
  std::vector<CoendFiber> fib;
  for (std::size_t b = 0; b < B.num_objects(); ++b) fib.push_back(coend_fiber(S, f, b));
  std::vector<SetRef> vals;
  for (std::size_t b = 0; b < B.num_objects(); ++b) {
    std::vector<Value> els;
    for (std::size_t g : fib[b].representatives) {
      const auto& gen = fib[b].generators[g];
      els.push_back(Value::tuple({Value::atom(A.object(gen.a)), Value::atom(B.arrow(gen.v).name),
                                  S.value(gen.a)->at(gen.s)}));
    }
    vals.push_back(make_set("Lan(" + B.object(b) + ")", std::move(els)));
  }
  std::vector<FinFunction> act;
  for (std::size_t u = 0; u < B.num_arrows(); ++u) {
    const std::size_t b = B.src(u), b2 = B.dst(u);
    std::vector<std::size_t> t;
    for (std::size_t g : fib[b].representatives) {
      const auto& gen = fib[b].generators[g];
      t.push_back(fib[b2].class_of(gen.a, B.compose(gen.v, u), gen.s));
    }
    act.emplace_back(vals[b], vals[b2], std::move(t));
  }
  Presheaf P(f.cod(), std::move(vals), std::move(act));
  return Kan{S, f, std::move(fib), std::move(P)};
}

// The witness rules of one pushforward ask for the same Kan extension many
// times; keep the last few per thread.
const Kan& kan(const Presheaf& S, const FinFunctor& f) {
  constexpr std::size_t kSlots = 8;
  thread_local std::vector<std::shared_ptr<const Kan>> recent;
  for (std::size_t i = 0; i < recent.size(); ++i) {
    if (recent[i]->f == f && recent[i]->S == S) {
      if (i) std::swap(recent[i], recent[0]);
      return *recent[0];
    }
  }
  auto k = std::make_shared<const Kan>(build_kan(S, f));
  if (recent.size() == kSlots) recent.pop_back();
  recent.insert(recent.begin(), std::move(k));
  return *recent[0];
}

}  // namespace

Presheaf PresheafModel::push(const EType& S, const Expr& f) const {
  if (!same_category(S.base(), f.fn.dom())) fail(ErrorKind::ill_formed, "pushforward source does not refine the domain");
  return kan(S, f.fn).result;
}

NatTrans PresheafModel::push_right(const EType& S, const Expr& f) const {
  if (!same_category(S.base(), f.fn.dom())) fail(ErrorKind::ill_formed, "pushforward source does not refine the domain");
  const Kan& k = kan(S, f.fn);
  const auto& A = *S.base();
  const auto& B = *f.fn.cod();
  NatTrans out;
  for (std::size_t a = 0; a < A.num_objects(); ++a) {
    const std::size_t b = f.fn.obj(a);
    const CoendFiber& fib = k.fibers[b];
    std::vector<std::size_t> t(S.value(a)->size());
    for (std::size_t s = 0; s < t.size(); ++s) t[s] = fib.class_of(a, B.identity(b), s);
    out.components.emplace_back(S.value(a), k.result.value(b), std::move(t));
  }
  return out;
}

NatTrans PresheafModel::push_left(const EType& S, const Expr& f, const Expr& g, const EType& T,
                                  const Morph& beta) const {
  if (!same_category(S.base(), f.fn.dom())) fail(ErrorKind::ill_formed, "pushforward source does not refine the domain");
  const Kan& k = kan(S, f.fn);
  const auto& B = *f.fn.cod();
  NatTrans out;
  for (std::size_t b = 0; b < B.num_objects(); ++b) {
    const CoendFiber& fib = k.fibers[b];
    std::vector<std::size_t> t;
    for (std::size_t r : fib.representatives) {
      const auto& gen = fib.generators[r];
      t.push_back(T.action(g.fn.arr(gen.v))(beta.components[gen.a](gen.s)));
    }
    out.components.emplace_back(k.result.value(b), T.value(g.fn.obj(b)), std::move(t));
  }
  return out;
}

Presheaf PresheafModel::meet(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts) const {
  if (fs.size() != ts.size()) fail(ErrorKind::structural, "weighted family sizes differ");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!same_category(fs[i].fn.dom(), a) || !same_category(fs[i].fn.cod(), ts[i].base())) {
      fail(ErrorKind::ill_formed, "weighted intersection component " + std::to_string(i) + " is ill-formed");
    }
  }
  const auto& A = *a;
  std::vector<std::vector<SetRef>> factors(A.num_objects());
  std::vector<SetRef> vals;
  for (std::size_t x = 0; x < A.num_objects(); ++x) {
    for (std::size_t i = 0; i < fs.size(); ++i) factors[x].push_back(ts[i].value(fs[i].fn.obj(x)));
    vals.push_back(tuple_set(factors[x]));
  }
  std::vector<FinFunction> act;
  for (std::size_t u = 0; u < A.num_arrows(); ++u) {
    const std::size_t x = A.src(u), y = A.dst(u);
    std::vector<std::size_t> t(vals[x]->size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      auto idx = tuple_components(factors[x], k);
      for (std::size_t i = 0; i < fs.size(); ++i) idx[i] = ts[i].action(fs[i].fn.arr(u))(idx[i]);
      t[k] = tuple_index(factors[y], idx);
    }
    act.emplace_back(vals[x], vals[y], std::move(t));
  }
  return Presheaf(a, std::move(vals), std::move(act));
}

NatTrans PresheafModel::meet_left(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts,
                                  std::size_t i) const {
  Presheaf M = meet(a, fs, ts);
  NatTrans out;
  for (std::size_t x = 0; x < a->num_objects(); ++x) {
    std::vector<SetRef> factors;
    for (std::size_t j = 0; j < fs.size(); ++j) factors.push_back(ts[j].value(fs[j].fn.obj(x)));
    std::vector<std::size_t> t(M.value(x)->size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = tuple_components(factors, k)[i];
    out.components.emplace_back(M.value(x), factors[i], std::move(t));
  }
  return out;
}

NatTrans PresheafModel::meet_right(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts,
                                   const EType& S, const Expr& g, const std::vector<Morph>& betas) const {
  Presheaf M = meet(a, fs, ts);
  NatTrans out;
  for (std::size_t x = 0; x < S.base()->num_objects(); ++x) {
    const std::size_t gx = g.fn.obj(x);
    std::vector<SetRef> factors;
    for (std::size_t j = 0; j < fs.size(); ++j) factors.push_back(ts[j].value(fs[j].fn.obj(gx)));
    std::vector<std::size_t> t(S.value(x)->size());
    for (std::size_t s = 0; s < t.size(); ++s) {
      std::vector<std::size_t> idx(fs.size());
      for (std::size_t j = 0; j < fs.size(); ++j) idx[j] = betas[j].components[x](s);
      t[s] = tuple_index(factors, idx);
    }
    out.components.emplace_back(S.value(x), M.value(gx), std::move(t));
  }
  return out;
}

namespace {

struct Coproduct {
  std::vector<Presheaf> pushes;
  // offsets[b][i]: where summand i starts in the value at b
  std::vector<std::vector<std::size_t>> offsets;
};

}  // namespace

Presheaf PresheafModel::join(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss) const {
  if (fs.size() != ss.size()) fail(ErrorKind::structural, "weighted family sizes differ");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!same_category(fs[i].fn.cod(), b) || !same_category(fs[i].fn.dom(), ss[i].base())) {
      fail(ErrorKind::ill_formed, "weighted union component " + std::to_string(i) + " is ill-formed");
    }
  }
  const auto& B = *b;
  std::vector<Presheaf> pushes;
  for (std::size_t i = 0; i < fs.size(); ++i) pushes.push_back(push(ss[i], fs[i]));
  std::vector<SetRef> vals;
  std::vector<std::vector<std::size_t>> offsets(B.num_objects());
  for (std::size_t y = 0; y < B.num_objects(); ++y) {
    std::vector<Value> els;
    std::string name = "(";
    for (std::size_t i = 0; i < pushes.size(); ++i) {
      offsets[y].push_back(els.size());
      name += (i ? "+" : "") + pushes[i].value(y)->name();
      for (const auto& e : pushes[i].value(y)->elements())
        els.push_back(Value::pair(Value::atom(std::to_string(i)), e));
    }
    vals.push_back(make_set(name + ")", std::move(els)));
  }
  std::vector<FinFunction> act;
  for (std::size_t u = 0; u < B.num_arrows(); ++u) {
    const std::size_t x = B.src(u), y = B.dst(u);
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < pushes.size(); ++i)
      for (std::size_t e = 0; e < pushes[i].value(x)->size(); ++e)
        t.push_back(offsets[y][i] + pushes[i].action(u)(e));
    act.emplace_back(vals[x], vals[y], std::move(t));
  }
  return Presheaf(b, std::move(vals), std::move(act));
}

NatTrans PresheafModel::join_right(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss,
                                   std::size_t i) const {
  Presheaf J = join(b, fs, ss);
  NatTrans r = push_right(ss[i], fs[i]);
  NatTrans out;
  for (std::size_t a = 0; a < ss[i].base()->num_objects(); ++a) {
    const std::size_t y = fs[i].fn.obj(a);
    std::size_t off = 0;
    for (std::size_t j = 0; j < i; ++j) off += push(ss[j], fs[j]).value(y)->size();
    std::vector<std::size_t> t;
    for (auto x : r.components[a].table()) t.push_back(off + x);
    out.components.emplace_back(ss[i].value(a), J.value(y), std::move(t));
  }
  return out;
}

NatTrans PresheafModel::join_left(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss,
                                  const Expr& g, const EType& T, const std::vector<Morph>& betas) const {
  Presheaf J = join(b, fs, ss);
  std::vector<NatTrans> lefts;
  for (std::size_t i = 0; i < fs.size(); ++i) lefts.push_back(push_left(ss[i], fs[i], g, T, betas[i]));
  NatTrans out;
  for (std::size_t y = 0; y < b->num_objects(); ++y) {
    std::vector<std::size_t> t;
    for (const auto& l : lefts)
      for (auto x : l.components[y].table()) t.push_back(x);
    out.components.emplace_back(J.value(y), T.value(g.fn.obj(y)), std::move(t));
  }
  return out;
}

PshExpr PresheafModel::tensor_expr(const Expr& f, const Expr& g) const {
  return named(product(f.fn, g.fn), paren(show_expr(f)) + "*" + paren(show_expr(g)));
}

Presheaf PresheafModel::unit_etype() const { return constant_presheaf(terminal_category(), unit_set()); }

Presheaf PresheafModel::tensor_etype(const EType& S, const EType& T) const {
  CatRef base = product_category(S.base(), T.base());
  std::vector<SetRef> vals;
  for (const auto& x : S.values())
    for (const auto& y : T.values()) vals.push_back(product_set(x, y));
  std::vector<FinFunction> act;
  for (const auto& u : S.actions())
    for (const auto& v : T.actions()) act.push_back(product(u, v));
  return Presheaf(base, std::move(vals), std::move(act));
}

NatTrans PresheafModel::tensor_morph(const Morph& a, const Morph& b) const {
  NatTrans out;
  for (const auto& x : a.components)
    for (const auto& y : b.components) out.components.push_back(product(x, y));
  return out;
}

namespace {

// Flattened product categories agree under rebracketing and unit insertion.
FinFunctor index_functor(const CatRef& from, const CatRef& to) {
  std::vector<std::size_t> o(from->num_objects()), a(from->num_arrows());
  std::iota(o.begin(), o.end(), std::size_t{0});
  std::iota(a.begin(), a.end(), std::size_t{0});
  return FinFunctor(from, to, std::move(o), std::move(a));
}

NatTrans index_trans(const Presheaf& from, const Presheaf& to) {
  NatTrans out;
  for (std::size_t x = 0; x < from.values().size(); ++x) out.components.push_back(reindex(from.value(x), to.value(x)));
  return out;
}

}  // namespace

PshExpr PresheafModel::assoc(const IType& a, const IType& b, const IType& c) const {
  return named(index_functor(product_category(product_category(a, b), c), product_category(a, product_category(b, c))),
               "assoc");
}

PshExpr PresheafModel::assoc_inv(const IType& a, const IType& b, const IType& c) const {
  return named(index_functor(product_category(a, product_category(b, c)), product_category(product_category(a, b), c)),
               "assoc'");
}

PshExpr PresheafModel::lunit(const IType& a) const {
  return named(index_functor(product_category(terminal_category(), a), a), "lunit");
}

PshExpr PresheafModel::lunit_inv(const IType& a) const {
  return named(index_functor(a, product_category(terminal_category(), a)), "lunit'");
}

PshExpr PresheafModel::runit(const IType& a) const {
  return named(index_functor(product_category(a, terminal_category()), a), "runit");
}

PshExpr PresheafModel::runit_inv(const IType& a) const {
  return named(index_functor(a, product_category(a, terminal_category())), "runit'");
}

NatTrans PresheafModel::assoc_morph(const EType& a, const EType& b, const EType& c) const {
  return index_trans(tensor_etype(tensor_etype(a, b), c), tensor_etype(a, tensor_etype(b, c)));
}

NatTrans PresheafModel::assoc_inv_morph(const EType& a, const EType& b, const EType& c) const {
  return index_trans(tensor_etype(a, tensor_etype(b, c)), tensor_etype(tensor_etype(a, b), c));
}

NatTrans PresheafModel::lunit_morph(const EType& a) const { return index_trans(tensor_etype(unit_etype(), a), a); }

NatTrans PresheafModel::lunit_inv_morph(const EType& a) const { return index_trans(a, tensor_etype(unit_etype(), a)); }

NatTrans PresheafModel::runit_morph(const EType& a) const { return index_trans(tensor_etype(a, unit_etype()), a); }

NatTrans PresheafModel::runit_inv_morph(const EType& a) const { return index_trans(a, tensor_etype(a, unit_etype())); }

PshExpr PresheafModel::plug_left(const IType& a, const IType& c) const {
  auto fc = functor_category(a, c);
  const auto& FC = *fc->category;
  CatRef dom = product_category(a, fc->category);
  std::vector<std::size_t> o(dom->num_objects()), arr(dom->num_arrows());
  const std::size_t nf = FC.num_objects(), mf = FC.num_arrows();
  for (std::size_t x = 0; x < a->num_objects(); ++x)
    for (std::size_t k = 0; k < nf; ++k) o[x * nf + k] = fc->functors[k].obj(x);
  for (std::size_t u = 0; u < a->num_arrows(); ++u)
    for (std::size_t t = 0; t < mf; ++t)
      arr[u * mf + t] = c->compose(fc->functors[FC.src(t)].arr(u), fc->components[t][a->dst(u)]);
  return named(FinFunctor(dom, c, std::move(o), std::move(arr)), "plugL");
}

PshExpr PresheafModel::plug_right(const IType& c, const IType& b) const {
  auto fc = functor_category(b, c);
  const auto& FC = *fc->category;
  CatRef dom = product_category(fc->category, b);
  std::vector<std::size_t> o(dom->num_objects()), arr(dom->num_arrows());
  const std::size_t nb = b->num_objects(), mb = b->num_arrows();
  for (std::size_t k = 0; k < FC.num_objects(); ++k)
    for (std::size_t y = 0; y < nb; ++y) o[k * nb + y] = fc->functors[k].obj(y);
  for (std::size_t t = 0; t < FC.num_arrows(); ++t)
    for (std::size_t u = 0; u < mb; ++u)
      arr[t * mb + u] = c->compose(fc->functors[FC.src(t)].arr(u), fc->components[t][b->dst(u)]);
  return named(FinFunctor(dom, c, std::move(o), std::move(arr)), "plugR");
}

PshExpr PresheafModel::curry_left(const Expr& f, const IType& a, const IType& b) const {
  if (!same_category(f.fn.dom(), product_category(a, b))) {
    fail(ErrorKind::structural, "curry: domain of " + show_expr(f) + " is not " + a->name() + "*" + b->name());
  }
  const CatRef& c = f.fn.cod();
  auto fc = functor_category(a, c);
  const std::size_t nb = b->num_objects(), mb = b->num_arrows();
  std::vector<std::size_t> o(nb), arr(mb);
  for (std::size_t y = 0; y < nb; ++y) {
    std::vector<std::size_t> fo(a->num_objects()), fa(a->num_arrows());
    for (std::size_t x = 0; x < fo.size(); ++x) fo[x] = f.fn.obj(x * nb + y);
    for (std::size_t u = 0; u < fa.size(); ++u) fa[u] = f.fn.arr(u * mb + b->identity(y));
    o[y] = fc->find_functor(FinFunctor(a, c, fo, fa));
  }
  for (std::size_t v = 0; v < mb; ++v) {
    std::vector<std::size_t> comp(a->num_objects());
    for (std::size_t x = 0; x < comp.size(); ++x) comp[x] = f.fn.arr(a->identity(x) * mb + v);
    arr[v] = fc->find_arrow(o[b->src(v)], o[b->dst(v)], comp);
  }
  return named(FinFunctor(b, fc->category, std::move(o), std::move(arr)), "lc(" + show_expr(f) + ")");
}

PshExpr PresheafModel::curry_right(const Expr& f, const IType& a, const IType& b) const {
  if (!same_category(f.fn.dom(), product_category(a, b))) {
    fail(ErrorKind::structural, "curry: domain of " + show_expr(f) + " is not " + a->name() + "*" + b->name());
  }
  const CatRef& c = f.fn.cod();
  auto fc = functor_category(b, c);
  const std::size_t nb = b->num_objects(), mb = b->num_arrows();
  std::vector<std::size_t> o(a->num_objects()), arr(a->num_arrows());
  for (std::size_t x = 0; x < o.size(); ++x) {
    std::vector<std::size_t> fo(nb), fa(mb);
    for (std::size_t y = 0; y < nb; ++y) fo[y] = f.fn.obj(x * nb + y);
    for (std::size_t v = 0; v < mb; ++v) fa[v] = f.fn.arr(a->identity(x) * mb + v);
    o[x] = fc->find_functor(FinFunctor(b, c, fo, fa));
  }
  for (std::size_t u = 0; u < arr.size(); ++u) {
    std::vector<std::size_t> comp(nb);
    for (std::size_t y = 0; y < nb; ++y) comp[y] = f.fn.arr(u * mb + b->identity(y));
    arr[u] = fc->find_arrow(o[a->src(u)], o[a->dst(u)], comp);
  }
  return named(FinFunctor(a, fc->category, std::move(o), std::move(arr)), "rc(" + show_expr(f) + ")");
}

namespace {

// The end presheaf F |-> Nat(S, U o F) on [A, C], with the transformations
// themselves kept for evaluation.
struct End {
  std::shared_ptr<const FunctorCategory> fc;
  std::vector<std::vector<NatTrans>> nats;
  Presheaf presheaf;
};

End end_of(const PresheafModel& m, const Presheaf& S, const Presheaf& U) {
  End e;
  e.fc = functor_category(S.base(), U.base());
  const auto& FC = *e.fc->category;
  std::vector<SetRef> vals;
  for (std::size_t k = 0; k < FC.num_objects(); ++k) {
    e.nats.push_back(m.hom_over(S, named(e.fc->functors[k], ""), U));
    std::vector<Value> els;
    for (const auto& t : e.nats.back()) els.push_back(encode(t));
    vals.push_back(make_set("Nat[" + FC.object(k) + "]", std::move(els)));
  }
  std::vector<FinFunction> act;
  for (std::size_t t = 0; t < FC.num_arrows(); ++t) {
    const std::size_t k = FC.src(t), l = FC.dst(t);
    std::vector<std::size_t> table;
    for (const auto& tau : e.nats[k]) {
      NatTrans moved;
      for (std::size_t x = 0; x < tau.components.size(); ++x)
        moved.components.push_back(refsys::compose(tau.components[x], U.action(e.fc->components[t][x])));
      table.push_back(vals[l]->require_index(encode(moved)));
    }
    act.emplace_back(vals[k], vals[l], std::move(table));
  }
  e.presheaf = Presheaf(e.fc->category, std::move(vals), std::move(act));
  return e;
}

// tau with tau_x(s) = beta_(x,y)((s, t)) where the pair index is s * |other| + t.
NatTrans curried(const Presheaf& S, const Presheaf& U, const FinFunctor& F, const NatTrans& beta,
                 std::size_t nb, std::size_t y, std::size_t t, std::size_t other_size, bool left) {
  NatTrans tau;
  for (std::size_t x = 0; x < S.base()->num_objects(); ++x) {
    const std::size_t obj = left ? x * nb + y : y * nb + x;
    const FinFunction& bx = beta.components[obj];
    std::vector<std::size_t> tab(S.value(x)->size());
    for (std::size_t s = 0; s < tab.size(); ++s) tab[s] = left ? bx(s * other_size + t) : bx(t * S.value(x)->size() + s);
    tau.components.emplace_back(S.value(x), U.value(F.obj(x)), std::move(tab));
  }
  return tau;
}

}  // namespace

Presheaf PresheafModel::lres(const EType& S, const EType& U) const { return end_of(*this, S, U).presheaf; }

Presheaf PresheafModel::rres(const EType& U, const EType& T) const { return end_of(*this, T, U).presheaf; }

NatTrans PresheafModel::lres_left(const EType& S, const EType& U) const {
  End e = end_of(*this, S, U);
  Presheaf dom = tensor_etype(S, e.presheaf);
  const std::size_t nf = e.fc->category->num_objects();
  NatTrans out;
  for (std::size_t x = 0; x < S.base()->num_objects(); ++x)
    for (std::size_t k = 0; k < nf; ++k) {
      const std::size_t nk = e.nats[k].size();
      std::vector<std::size_t> tab(S.value(x)->size() * nk);
      for (std::size_t s = 0; s < S.value(x)->size(); ++s)
        for (std::size_t j = 0; j < nk; ++j) tab[s * nk + j] = e.nats[k][j].components[x](s);
      out.components.emplace_back(dom.value(x * nf + k), U.value(e.fc->functors[k].obj(x)), std::move(tab));
    }
  return out;
}

NatTrans PresheafModel::rres_left(const EType& U, const EType& T) const {
  End e = end_of(*this, T, U);
  Presheaf dom = tensor_etype(e.presheaf, T);
  const std::size_t nb = T.base()->num_objects();
  NatTrans out;
  for (std::size_t k = 0; k < e.fc->category->num_objects(); ++k)
    for (std::size_t y = 0; y < nb; ++y) {
      const std::size_t nt = T.value(y)->size();
      std::vector<std::size_t> tab(e.nats[k].size() * nt);
      for (std::size_t j = 0; j < e.nats[k].size(); ++j)
        for (std::size_t t = 0; t < nt; ++t) tab[j * nt + t] = e.nats[k][j].components[y](t);
      out.components.emplace_back(dom.value(k * nb + y), U.value(e.fc->functors[k].obj(y)), std::move(tab));
    }
  return out;
}

NatTrans PresheafModel::lres_right(const EType& S, const EType& T, const EType& U, const Expr& f,
                                   const Morph& beta) const {
  End e = end_of(*this, S, U);
  Expr lf = curry_left(f, S.base(), T.base());
  const std::size_t nb = T.base()->num_objects();
  NatTrans out;
  for (std::size_t y = 0; y < nb; ++y) {
    const std::size_t k = lf.fn.obj(y);
    std::vector<std::size_t> tab(T.value(y)->size());
    for (std::size_t t = 0; t < tab.size(); ++t) {
      NatTrans tau = curried(S, U, e.fc->functors[k], beta, nb, y, t, T.value(y)->size(), true);
      tab[t] = e.presheaf.value(k)->require_index(encode(tau));
    }
    out.components.emplace_back(T.value(y), e.presheaf.value(k), std::move(tab));
  }
  return out;
}

NatTrans PresheafModel::rres_right(const EType& S, const EType& T, const EType& U, const Expr& f,
                                   const Morph& beta) const {
  End e = end_of(*this, T, U);
  Expr rf = curry_right(f, S.base(), T.base());
  const std::size_t nb = T.base()->num_objects();
  NatTrans out;
  for (std::size_t x = 0; x < S.base()->num_objects(); ++x) {
    const std::size_t k = rf.fn.obj(x);
    std::vector<std::size_t> tab(S.value(x)->size());
    for (std::size_t s = 0; s < tab.size(); ++s) {
      NatTrans tau = curried(T, U, e.fc->functors[k], beta, nb, x, s, 0, false);
      tab[s] = e.presheaf.value(k)->require_index(encode(tau));
    }
    out.components.emplace_back(S.value(x), e.presheaf.value(k), std::move(tab));
  }
  return out;
}

}  // namespace refsys
