#include "refsys/model_subset.hpp"

namespace refsys {

Subset::Subset(SetRef of, std::vector<bool> member) : of_(std::move(of)), member_(std::move(member)) {
  if (member_.size() != of_->size()) {
    fail(ErrorKind::structural, "subset mask does not match carrier " + of_->name());
  }
}

Subset Subset::full(const SetRef& of) { return Subset(of, std::vector<bool>(of->size(), true)); }

Subset Subset::none(const SetRef& of) { return Subset(of, std::vector<bool>(of->size(), false)); }

Subset Subset::of_indices(const SetRef& of, const std::vector<std::size_t>& idx) {
  std::vector<bool> m(of->size(), false);
  for (auto i : idx) {
    if (i >= of->size()) fail(ErrorKind::structural, "subset index out of range of " + of->name());
    m[i] = true;
  }
  return Subset(of, std::move(m));
}

Subset Subset::of_values(const SetRef& of, const std::vector<Value>& vals) {
  std::vector<bool> m(of->size(), false);
  for (const auto& v : vals) m[of->require_index(v)] = true;
  return Subset(of, std::move(m));
}

std::vector<std::size_t> Subset::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < member_.size(); ++i)
    if (member_[i]) out.push_back(i);
  return out;
}

std::vector<Value> Subset::values() const {
  std::vector<Value> out;
  for (std::size_t i = 0; i < member_.size(); ++i)
    if (member_[i]) out.push_back(of_->at(i));
  return out;
}

std::size_t Subset::count() const {
  std::size_t n = 0;
  for (bool b : member_) n += b;
  return n;
}

bool Subset::subset_of(const Subset& other) const {
  for (std::size_t i = 0; i < member_.size(); ++i)
    if (member_[i] && !other.member_[i]) return false;
  return true;
}

std::string Subset::str() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (!member_[i]) continue;
    if (!first) out += ",";
    first = false;
    out += of_->at(i).str();
  }
  return out + "}";
}

bool operator==(const Subset& a, const Subset& b) {
  return same_set(a.of_, b.of_) && a.member_ == b.member_;
}

SubExpr named(FinFunction fn, std::string name) { return SubExpr{std::move(fn), std::move(name)}; }

namespace {
const SetRef& two() {
  static const SetRef s = range_set("2", 2);
  return s;
}
}  // namespace

Subset truth_value() { return Subset::of_indices(two(), {1}); }

SubExpr characteristic(const Subset& S) {
  std::vector<std::size_t> t(S.carrier()->size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = S.contains(i) ? 1 : 0;
  return named(FinFunction(S.carrier(), two(), t), "chi" + S.str());
}

namespace {

std::string paren(const std::string& s) {
  return s.find_first_of(";* ") == std::string::npos ? s : "(" + s + ")";
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

std::size_t eval_exponential(const SetRef& a, const SetRef& c, std::size_t phi, std::size_t i) {
  return (phi / ipow(c->size(), a->size() - 1 - i)) % c->size();
}

SubExpr SubSetModel::compose(const Expr& f, const Expr& g) const {
  return named(refsys::compose(f.fn, g.fn), paren(show_expr(f)) + ";" + paren(show_expr(g)));
}

SubExpr SubSetModel::identity(const IType& a) const {
  return named(FinFunction::identity(a), "id");
}

std::vector<SubSetModel::Morph> SubSetModel::hom_over(const EType& S, const Expr& f,
                                                      const EType& T) const {
  if (is_morph(S, f, T, {})) return {Morph{}};
  return {};
}

bool SubSetModel::is_morph(const EType& S, const Expr& f, const EType& T, const Morph&) const {
  if (!same_set(S.carrier(), f.fn.dom()) || !same_set(T.carrier(), f.fn.cod())) return false;
  for (std::size_t i = 0; i < S.mask().size(); ++i)
    if (S.contains(i) && !T.contains(f.fn(i))) return false;
  return true;
}

std::vector<Subset> SubSetModel::etypes_over(const IType& a) const {
  if (a->size() > 16) fail(ErrorKind::capability, "too many subsets of " + a->name());
  std::vector<Subset> out;
  const std::size_t n = a->size();
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<bool> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1u;
    out.emplace_back(a, std::move(m));
  }
  return out;
}

std::vector<SubExpr> SubSetModel::expressions(const IType& a, const IType& b) const {
  std::vector<SubExpr> out;
  for (auto& f : all_functions(a, b)) out.push_back(named(f, ""));
  return out;
}

Subset SubSetModel::pull(const Expr& f, const EType& T) const {
  if (!same_set(T.carrier(), f.fn.cod())) fail(ErrorKind::ill_formed, "pullback target does not refine the codomain");
  std::vector<bool> m(f.fn.dom()->size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = T.contains(f.fn(i));
  return Subset(f.fn.dom(), std::move(m));
}

Subset SubSetModel::push(const EType& S, const Expr& f) const {
  if (!same_set(S.carrier(), f.fn.dom())) fail(ErrorKind::ill_formed, "pushforward source does not refine the domain");
  std::vector<bool> m(f.fn.cod()->size(), false);
  for (std::size_t i = 0; i < S.mask().size(); ++i)
    if (S.contains(i)) m[f.fn(i)] = true;
  return Subset(f.fn.cod(), std::move(m));
}

Subset SubSetModel::meet(const IType& a, const std::vector<Expr>& fs, const std::vector<EType>& ts) const {
  if (fs.size() != ts.size()) fail(ErrorKind::structural, "weighted family sizes differ");
  std::vector<bool> m(a->size(), true);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (!same_set(fs[k].fn.dom(), a) || !same_set(fs[k].fn.cod(), ts[k].carrier())) {
      fail(ErrorKind::ill_formed, "weighted intersection component " + std::to_string(k) + " is ill-formed");
    }
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] && ts[k].contains(fs[k].fn(i));
  }
  return Subset(a, std::move(m));
}

Subset SubSetModel::join(const IType& b, const std::vector<Expr>& fs, const std::vector<EType>& ss) const {
  if (fs.size() != ss.size()) fail(ErrorKind::structural, "weighted family sizes differ");
  std::vector<bool> m(b->size(), false);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (!same_set(fs[k].fn.cod(), b) || !same_set(fs[k].fn.dom(), ss[k].carrier())) {
      fail(ErrorKind::ill_formed, "weighted union component " + std::to_string(k) + " is ill-formed");
    }
    for (std::size_t i = 0; i < ss[k].mask().size(); ++i)
      if (ss[k].contains(i)) m[fs[k].fn(i)] = true;
  }
  return Subset(b, std::move(m));
}

SubExpr SubSetModel::tensor_expr(const Expr& f, const Expr& g) const {
  return named(product(f.fn, g.fn), paren(show_expr(f)) + "*" + paren(show_expr(g)));
}

Subset SubSetModel::tensor_etype(const EType& S, const EType& T) const {
  SetRef ab = product_set(S.carrier(), T.carrier());
  std::vector<bool> m(ab->size());
  const std::size_t nb = T.carrier()->size();
  for (std::size_t i = 0; i < S.mask().size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) m[i * nb + j] = S.contains(i) && T.contains(j);
  return Subset(ab, std::move(m));
}

namespace {

// Product carriers flatten in a-major order, so rebracketing and unit
// insertion are the identity on indices.
FinFunction reindex(const SetRef& from, const SetRef& to) {
  std::vector<std::size_t> t(from->size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
  return FinFunction(from, to, std::move(t));
}

}  // namespace

SubExpr SubSetModel::assoc(const IType& a, const IType& b, const IType& c) const {
  return named(reindex(product_set(product_set(a, b), c), product_set(a, product_set(b, c))), "assoc");
}

SubExpr SubSetModel::assoc_inv(const IType& a, const IType& b, const IType& c) const {
  return named(reindex(product_set(a, product_set(b, c)), product_set(product_set(a, b), c)), "assoc'");
}

SubExpr SubSetModel::lunit(const IType& a) const {
  return named(reindex(product_set(unit_set(), a), a), "lunit");
}

SubExpr SubSetModel::lunit_inv(const IType& a) const {
  return named(reindex(a, product_set(unit_set(), a)), "lunit'");
}

SubExpr SubSetModel::runit(const IType& a) const {
  return named(reindex(product_set(a, unit_set()), a), "runit");
}

SubExpr SubSetModel::runit_inv(const IType& a) const {
  return named(reindex(a, product_set(a, unit_set())), "runit'");
}

SubExpr SubSetModel::plug_left(const IType& a, const IType& c) const {
  SetRef ca = function_space(a, c);
  SetRef dom = product_set(a, ca);
  std::vector<std::size_t> t(dom->size());
  for (std::size_t i = 0; i < a->size(); ++i)
    for (std::size_t k = 0; k < ca->size(); ++k) t[i * ca->size() + k] = eval_exponential(a, c, k, i);
  return named(FinFunction(dom, c, std::move(t)), "plugL");
}

SubExpr SubSetModel::plug_right(const IType& c, const IType& b) const {
  SetRef cb = function_space(b, c);
  SetRef dom = product_set(cb, b);
  std::vector<std::size_t> t(dom->size());
  for (std::size_t k = 0; k < cb->size(); ++k)
    for (std::size_t j = 0; j < b->size(); ++j) t[k * b->size() + j] = eval_exponential(b, c, k, j);
  return named(FinFunction(dom, c, std::move(t)), "plugR");
}

SubExpr SubSetModel::curry_left(const Expr& f, const IType& a, const IType& b) const {
  if (!same_set(f.fn.dom(), product_set(a, b))) {
    fail(ErrorKind::structural, "curry: domain of " + show_expr(f) + " is not " + a->name() + "*" + b->name());
  }
  const SetRef& c = f.fn.cod();
  SetRef ca = function_space(a, c);
  std::vector<std::size_t> t(b->size());
  for (std::size_t j = 0; j < b->size(); ++j) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < a->size(); ++i) k = k * c->size() + f.fn(i * b->size() + j);
    t[j] = k;
  }
  return named(FinFunction(b, ca, std::move(t)), "lc(" + show_expr(f) + ")");
}

SubExpr SubSetModel::curry_right(const Expr& f, const IType& a, const IType& b) const {
  if (!same_set(f.fn.dom(), product_set(a, b))) {
    fail(ErrorKind::structural, "curry: domain of " + show_expr(f) + " is not " + a->name() + "*" + b->name());
  }
  const SetRef& c = f.fn.cod();
  SetRef cb = function_space(b, c);
  std::vector<std::size_t> t(a->size());
  for (std::size_t i = 0; i < a->size(); ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < b->size(); ++j) k = k * c->size() + f.fn(i * b->size() + j);
    t[i] = k;
  }
  return named(FinFunction(a, cb, std::move(t)), "rc(" + show_expr(f) + ")");
}

namespace {

// { phi in C^A | phi(S) included in U }
Subset residual(const Subset& S, const Subset& U) {
  const SetRef& a = S.carrier();
  const SetRef& c = U.carrier();
  SetRef ca = function_space(a, c);
  std::vector<bool> m(ca->size());
  for (std::size_t k = 0; k < ca->size(); ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < a->size() && ok; ++i)
      if (S.contains(i) && !U.contains(eval_exponential(a, c, k, i))) ok = false;
    m[k] = ok;
  }
  return Subset(ca, std::move(m));
}

}  // namespace

Subset SubSetModel::lres(const EType& S, const EType& U) const { return residual(S, U); }

Subset SubSetModel::rres(const EType& U, const EType& T) const { return residual(T, U); }

const FinFunction& HoareProgram::command(const std::string& name) const {
  auto it = commands.find(name);
  if (it == commands.end()) fail(ErrorKind::validation, "unknown command " + name);
  return it->second;
}

Subset wp(const HoareProgram& prog, const std::string& command, const Subset& q) {
  return SubSetModel{}.pull(named(prog.command(command), command), q);
}

Subset sp(const HoareProgram& prog, const Subset& p, const std::string& command) {
  return SubSetModel{}.push(p, named(prog.command(command), command));
}

TripleResult check_triple(const HoareProgram& prog, const Subset& p,
                          const std::vector<std::string>& sequence, const Subset& q) {
  SubSetModel m;
  if (!same_set(p.carrier(), prog.states) || !same_set(q.carrier(), prog.states)) {
    fail(ErrorKind::ill_formed, "triple predicates must refine the state space");
  }
  SubExpr body = m.identity(prog.states);
  for (const auto& c : sequence) body = m.compose(body, named(prog.command(c), c));
  TripleResult r;
  r.holds = derivable(m, p, body, q) == Verdict::derivable;
  r.sp_chain.push_back(p);
  for (const auto& c : sequence) r.sp_chain.push_back(sp(prog, r.sp_chain.back(), c));
  r.wp_chain.push_back(q);
  for (auto it = sequence.rbegin(); it != sequence.rend(); ++it)
    r.wp_chain.push_back(wp(prog, *it, r.wp_chain.back()));
  r.via_sp = r.sp_chain.back().subset_of(q);
  r.via_wp = p.subset_of(r.wp_chain.back());
  if (r.via_sp != r.holds || r.via_wp != r.holds) {
    fail(ErrorKind::soundness, "Hoare triple verdicts disagree");
  }
  return r;
}

}  // namespace refsys
