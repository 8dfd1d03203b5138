#include "refsys/signature.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "refsys/error.hpp"

namespace refsys {

using nlohmann::json;

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::subset: return "subset";
    case ModelKind::presheaf: return "presheaf";
    case ModelKind::trivial: return "trivial";
  }
  return "unknown";
}

// ------------------------------------------------------------ expressions

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& src, long long x) : src_(src), x_(x) {}

  long long run() {
    auto v = disj();
    skip();
    if (pos_ != src_.size()) error("unexpected '" + src_.substr(pos_) + "'");
    return v;
  }

 private:
  const std::string& src_;
  long long x_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::parse, "expression \"" + src_ + "\": " + what);
  }
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(const std::string& tok) {
    skip();
    if (src_.compare(pos_, tok.size(), tok) != 0) return false;
    // keywords must not run into an identifier
    if (std::isalpha(static_cast<unsigned char>(tok[0])) && pos_ + tok.size() < src_.size() &&
        std::isalnum(static_cast<unsigned char>(src_[pos_ + tok.size()]))) {
      return false;
    }
    pos_ += tok.size();
    return true;
  }
  long long disj() {
    auto v = conj();
    while (eat("or") || eat("||")) {
      auto w = conj();
      v = (v || w) ? 1 : 0;
    }
    return v;
  }
  long long conj() {
    auto v = neg();
    while (eat("and") || eat("&&")) {
      auto w = neg();
      v = (v && w) ? 1 : 0;
    }
    return v;
  }
  long long neg() {
    if (eat("not") || eat("!")) return neg() ? 0 : 1;
    return cmp();
  }
  long long cmp() {
    auto a = sum();
    if (eat("==")) return a == sum();
    if (eat("!=")) return a != sum();
    if (eat("<=")) return a <= sum();
    if (eat(">=")) return a >= sum();
    if (eat("<")) return a < sum();
    if (eat(">")) return a > sum();
    return a;
  }
  long long sum() {
    auto v = term();
    for (;;) {
      if (eat("+")) v += term();
      else if (eat("-")) v -= term();
      else return v;
    }
  }
  long long term() {
    auto v = unary();
    for (;;) {
      if (eat("*")) {
        v *= unary();
      } else if (eat("/") || eat("%")) {
        const bool div = src_[pos_ - 1] == '/';
        auto d = unary();
        if (d == 0) error("division by zero");
        // floor division and a non-negative remainder for positive d
        long long q = v / d, r = v % d;
        if (r != 0 && ((r < 0) != (d < 0))) {
          --q;
          r += d;
        }
        v = div ? q : r;
      } else {
        return v;
      }
    }
  }
  long long unary() {
    if (eat("-")) return -unary();
    return atom();
  }
  long long atom() {
    skip();
    if (eat("(")) {
      auto v = disj();
      if (!eat(")")) error("missing ')'");
      return v;
    }
    if (eat("x")) return x_;
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      long long v = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) v = v * 10 + (src_[pos_++] - '0');
      return v;
    }
    error(pos_ < src_.size() ? "unexpected '" + src_.substr(pos_) + "'" : "unexpected end");
  }
};

}  // namespace

long long eval_int_expr(const std::string& src, long long x) { return ExprParser(src, x).run(); }

// ----------------------------------------------------------------- loader

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::parse, where + ": " + what);
}

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      bad(where, "unknown key \"" + k + "\"");
    }
  }
}

// Exactly one of the given keys is present; returns it.
std::string one_of(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  std::string found;
  for (const char* k : keys) {
    if (j.contains(k)) {
      if (!found.empty()) bad(where, "\"" + found + "\" and \"" + k + "\" are exclusive");
      found = k;
    }
  }
  if (found.empty()) {
    std::string all;
    for (const char* k : keys) all += std::string(all.empty() ? "" : ", ") + k;
    bad(where, "expected one of " + all);
  }
  return found;
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) bad(where, "missing \"" + std::string(key) + "\"");
  return j.at(key);
}

std::string label(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad(where, "expected a string or integer label");
}

std::string name_of(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a name");
  return j.get<std::string>();
}

std::vector<std::string> labels(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(label(e, where));
  return out;
}

std::size_t index_by_label(const SetRef& s, const std::string& l, const std::string& where) {
  for (std::size_t i = 0; i < s->size(); ++i)
    if (s->at(i).str() == l) return i;
  fail(ErrorKind::ill_formed, where + ": " + l + " is not an element of " + s->name());
}

long long integer_label(const SetRef& s, std::size_t i, const std::string& where) {
  const std::string l = s->at(i).str();
  try {
    std::size_t used = 0;
    long long v = std::stoll(l, &used);
    if (used == l.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::validation, where + ": element " + l + " of " + s->name() + " is not an integer");
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& key, const std::string& kind,
                                        const std::string& where) {
  auto it = m.find(key);
  if (it == m.end()) fail(ErrorKind::ill_formed, where + ": unknown " + kind + " " + key);
  return it->second;
}

class Loader {
 public:
  Signature sig;

  void load(const json& root) {
    if (!root.is_object()) bad("signature", "expected an object");
    const std::string model = name_of(need(root, "model", "signature"), "model");
    if (model == "subset") {
      sig.model = ModelKind::subset;
      only_keys(root, {"model", "description", "sets", "functions", "subsets", "monoid", "program", "adjunction"},
                "signature");
    } else if (model == "presheaf") {
      sig.model = ModelKind::presheaf;
      only_keys(root, {"model", "description", "categories", "functors", "presheaves", "monoid"}, "signature");
    } else if (model == "trivial") {
      sig.model = ModelKind::trivial;
      only_keys(root, {"model", "description", "sets"}, "signature");
    } else {
      bad("model", "expected subset, presheaf or trivial, got " + model);
    }
    if (root.contains("description")) sig.description = name_of(root.at("description"), "description");
    if (root.contains("sets")) sets(root.at("sets"));
    if (root.contains("functions")) functions(root.at("functions"));
    if (root.contains("subsets")) subsets(root.at("subsets"));
    if (root.contains("categories")) categories(root.at("categories"));
    if (root.contains("functors")) functors(root.at("functors"));
    if (root.contains("presheaves")) presheaves(root.at("presheaves"));
    if (root.contains("monoid")) monoid(root.at("monoid"));
    if (root.contains("program")) program(root.at("program"));
    if (root.contains("adjunction")) adjunction(root.at("adjunction"));
  }

 private:
  SetRef set_ref(const std::string& n, const std::string& where) { return lookup(sig.sets, n, "set", where); }

  // Products and function spaces may name any other set; they are built
  // once their factors exist.
  void sets(const json& j) {
    if (!j.is_object()) bad("sets", "expected an object");
    std::vector<std::string> pending;
    for (const auto& [n, spec] : j.items()) pending.push_back(n);
    while (!pending.empty()) {
      std::vector<std::string> later;
      for (const auto& n : pending) {
        const auto& spec = j.at(n);
        bool ready = true;
        for (const char* k : {"product", "function_space"}) {
          if (!spec.is_object() || !spec.contains(k) || !spec.at(k).is_array()) continue;
          for (const auto& f : spec.at(k))
            if (f.is_string() && !sig.sets.count(f.get<std::string>()) && j.contains(f.get<std::string>()))
              ready = false;
        }
        if (ready) {
          one_set(n, spec);
        } else {
          later.push_back(n);
        }
      }
      if (later.size() == pending.size()) fail(ErrorKind::ill_formed, "set " + later.front() + ": circular definition");
      pending = std::move(later);
    }
  }

  void one_set(const std::string& n, const json& spec) {
    const std::string where = "set " + n;
    only_keys(spec, {"elements", "range", "size", "product", "function_space"}, where);
    const auto kind = one_of(spec, {"elements", "range", "size", "product", "function_space"}, where);
    SetRef s;
    if (kind == "elements") {
      auto ls = labels(spec.at(kind), where);
      std::set<std::string> seen(ls.begin(), ls.end());
      if (seen.size() != ls.size()) fail(ErrorKind::structural, where + ": repeated element");
      s = atom_set(n, ls);
    } else if (kind == "range") {
      const auto& r = spec.at(kind);
      if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer()) {
        bad(where, "range expects [lo, hi]");
      }
      const long long lo = r[0].get<long long>(), hi = r[1].get<long long>();
      if (hi < lo || hi - lo >= static_cast<long long>(kMaxCarrier)) fail(ErrorKind::validation, where + ": bad range");
      std::vector<std::string> ls;
      for (long long v = lo; v <= hi; ++v) ls.push_back(std::to_string(v));
      s = atom_set(n, ls);
    } else if (kind == "size") {
      const auto& k = spec.at(kind);
      if (!k.is_number_unsigned() || k.get<std::size_t>() > kMaxCarrier) bad(where, "size expects a small natural number");
      s = range_set(n, k.get<std::size_t>());
    } else {
      const auto& p = spec.at(kind);
      if (!p.is_array() || p.size() != 2) bad(where, kind + " expects two set names");
      auto a = set_ref(name_of(p[0], where), where), b = set_ref(name_of(p[1], where), where);
      s = kind == "product" ? product_set(a, b) : function_space(a, b);
    }
    sig.sets.emplace(n, s);
  }

  FinFunction table_function(const json& spec, const SetRef& dom, const SetRef& cod, const std::string& where) {
    const auto kind = one_of(spec, {"table", "map", "rule"}, where);
    std::vector<std::size_t> t(dom->size(), npos);
    if (kind == "table") {
      auto ls = labels(spec.at(kind), where);
      if (ls.size() != dom->size()) fail(ErrorKind::structural, where + ": table has the wrong length");
      for (std::size_t i = 0; i < ls.size(); ++i) t[i] = index_by_label(cod, ls[i], where);
    } else if (kind == "map") {
      const auto& mp = spec.at(kind);
      if (!mp.is_object()) bad(where, "map expects an object");
      for (const auto& [k, v] : mp.items()) t[index_by_label(dom, k, where)] = index_by_label(cod, label(v, where), where);
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] == npos) fail(ErrorKind::structural, where + ": no image for " + dom->at(i).str());
    } else {
      const std::string rule = name_of(spec.at(kind), where);
      for (std::size_t i = 0; i < t.size(); ++i) {
        const long long y = eval_int_expr(rule, integer_label(dom, i, where));
        t[i] = index_by_label(cod, std::to_string(y), where);
      }
    }
    return FinFunction(dom, cod, t);
  }

  void functions(const json& j) {
    if (!j.is_object()) bad("functions", "expected an object");
    for (const auto& [n, spec] : j.items()) {
      const std::string where = "function " + n;
      only_keys(spec, {"dom", "cod", "table", "map", "rule"}, where);
      auto dom = set_ref(name_of(need(spec, "dom", where), where), where);
      auto cod = set_ref(name_of(need(spec, "cod", where), where), where);
      sig.functions.emplace(n, named(table_function(spec, dom, cod, where), n));
    }
  }

  void subsets(const json& j) {
    if (!j.is_object()) bad("subsets", "expected an object");
    for (const auto& [n, spec] : j.items()) {
      const std::string where = "subset " + n;
      only_keys(spec, {"of", "elements", "where", "all", "none"}, where);
      auto of = set_ref(name_of(need(spec, "of", where), where), where);
      const auto kind = one_of(spec, {"elements", "where", "all", "none"}, where);
      std::vector<bool> mask(of->size(), false);
      if (kind == "elements") {
        for (const auto& l : labels(spec.at(kind), where)) mask[index_by_label(of, l, where)] = true;
      } else if (kind == "where") {
        const std::string pred = name_of(spec.at(kind), where);
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = eval_int_expr(pred, integer_label(of, i, where)) != 0;
      } else {
        if (!spec.at(kind).is_boolean() || !spec.at(kind).get<bool>()) bad(where, kind + " expects true");
        std::fill(mask.begin(), mask.end(), kind == "all");
      }
      sig.subsets.emplace(n, Subset(of, mask));
    }
  }

  CatRef cat_ref(const std::string& n, const std::string& where) { return lookup(sig.categories, n, "category", where); }

  void categories(const json& j) {
    if (!j.is_object()) bad("categories", "expected an object");
    for (const auto& [n, spec] : j.items()) {
      const std::string where = "category " + n;
      only_keys(spec, {"objects", "arrows", "composition", "terminal", "discrete", "arrow", "cyclic", "monoid", "preorder"},
                where);
      const auto kind = one_of(spec, {"objects", "terminal", "discrete", "arrow", "cyclic", "monoid", "preorder"}, where);
      if (kind != "objects" && (spec.contains("arrows") || spec.contains("composition"))) {
        bad(where, "\"arrows\" and \"composition\" belong to explicit categories");
      }
      CatRef c;
      if (kind == "terminal") {
        c = terminal_category();
      } else if (kind == "discrete") {
        c = discrete_category(n, labels(spec.at(kind), where));
      } else if (kind == "arrow") {
        auto ls = labels(spec.at(kind), where);
        if (ls.size() != 3) bad(where, "arrow expects [lo, hi, name]");
        c = arrow_category(n, ls[0], ls[1], ls[2]);
      } else if (kind == "cyclic") {
        const auto& k = spec.at(kind);
        if (!k.is_number_unsigned() || k.get<std::size_t>() == 0 || k.get<std::size_t>() > 64) bad(where, "cyclic expects 1..64");
        c = cyclic_group_category(k.get<std::size_t>());
      } else if (kind == "monoid") {
        const auto& mj = spec.at(kind);
        only_keys(mj, {"elements", "table", "unit"}, where);
        auto els = labels(need(mj, "elements", where), where);
        auto idx = [&](const std::string& l) {
          auto it = std::find(els.begin(), els.end(), l);
          if (it == els.end()) fail(ErrorKind::ill_formed, where + ": " + l + " is not an element");
          return static_cast<std::size_t>(it - els.begin());
        };
        const auto& tab = need(mj, "table", where);
        if (!tab.is_array() || tab.size() != els.size()) fail(ErrorKind::structural, where + ": table is not square");
        std::vector<std::vector<std::size_t>> mult;
        for (const auto& row : tab) {
          auto ls = labels(row, where);
          if (ls.size() != els.size()) fail(ErrorKind::structural, where + ": table is not square");
          std::vector<std::size_t> r;
          for (const auto& l : ls) r.push_back(idx(l));
          mult.push_back(r);
        }
        c = monoid_category(n, els, mult, idx(label(need(mj, "unit", where), where)));
      } else if (kind == "preorder") {
        const auto& pj = spec.at(kind);
        only_keys(pj, {"objects", "leq"}, where);
        auto objs = labels(need(pj, "objects", where), where);
        auto idx = [&](const std::string& l) {
          auto it = std::find(objs.begin(), objs.end(), l);
          if (it == objs.end()) fail(ErrorKind::ill_formed, where + ": " + l + " is not an object");
          return static_cast<std::size_t>(it - objs.begin());
        };
        std::vector<std::pair<std::size_t, std::size_t>> leq;
        for (std::size_t i = 0; i < objs.size(); ++i) leq.emplace_back(i, i);
        for (const auto& p : need(pj, "leq", where)) {
          auto ls = labels(p, where);
          if (ls.size() != 2) bad(where, "leq expects pairs");
          if (idx(ls[0]) != idx(ls[1])) leq.emplace_back(idx(ls[0]), idx(ls[1]));
        }
        c = preorder_category(n, objs, leq);
      } else {
        auto objs = labels(spec.at("objects"), where);
        std::vector<ArrowSpec> arrows;
        std::map<std::string, std::string> ids;
        for (const auto& o : objs) {
          arrows.push_back({"id_" + o, o, o});
          ids[o] = "id_" + o;
        }
        if (spec.contains("arrows")) {
          for (const auto& a : spec.at("arrows")) {
            only_keys(a, {"name", "src", "dst"}, where + " arrow");
            arrows.push_back({label(need(a, "name", where), where), label(need(a, "src", where), where),
                              label(need(a, "dst", where), where)});
          }
        }
        std::vector<CompositionEntry> comp;
        if (spec.contains("composition")) {
          for (const auto& e : spec.at("composition")) {
            auto ls = labels(e, where);
            if (ls.size() != 3) bad(where, "composition entries are [first, second, result]");
            comp.push_back({ls[0], ls[1], ls[2]});
          }
        }
        c = make_category(n, objs, arrows, ids, comp);
      }
      sig.categories.emplace(n, c);
    }
  }

  void functors(const json& j) {
    if (!j.is_object()) bad("functors", "expected an object");
    for (const auto& [n, spec] : j.items()) {
      const std::string where = "functor " + n;
      only_keys(spec, {"dom", "cod", "objects", "arrows", "constant"}, where);
      auto dom = cat_ref(name_of(need(spec, "dom", where), where), where);
      auto cod = cat_ref(name_of(need(spec, "cod", where), where), where);
      if (spec.contains("constant")) {
        if (spec.contains("objects") || spec.contains("arrows")) bad(where, "constant excludes objects/arrows");
        auto o = cod->object_index(label(spec.at("constant"), where));
        if (!o) fail(ErrorKind::ill_formed, where + ": unknown object");
        sig.functors.emplace(n, named(constant_functor(dom, cod, *o), n));
        continue;
      }
      auto strmap = [&](const char* key) {
        std::map<std::string, std::string> out;
        if (!spec.contains(key)) return out;
        if (!spec.at(key).is_object()) bad(where, std::string(key) + " expects an object");
        for (const auto& [k, v] : spec.at(key).items()) out[k] = label(v, where);
        return out;
      };
      sig.functors.emplace(n, named(make_functor(dom, cod, strmap("objects"), strmap("arrows")), n));
    }
  }

  void presheaves(const json& j) {
    if (!j.is_object()) bad("presheaves", "expected an object");
    for (const auto& [n, spec] : j.items()) {
      const std::string where = "presheaf " + n;
      only_keys(spec, {"base", "values", "actions"}, where);
      auto base = cat_ref(name_of(need(spec, "base", where), where), where);
      const auto& vj = need(spec, "values", where);
      if (!vj.is_object()) bad(where, "values expects an object");
      std::vector<SetRef> vals(base->num_objects());
      for (const auto& [o, ls] : vj.items()) {
        auto oi = base->object_index(o);
        if (!oi) fail(ErrorKind::ill_formed, where + ": unknown object " + o);
        vals[*oi] = atom_set(n + "(" + o + ")", labels(ls, where));
      }
      for (std::size_t o = 0; o < vals.size(); ++o)
        if (!vals[o]) fail(ErrorKind::structural, where + ": no value at " + base->object(o));
      std::vector<std::optional<FinFunction>> act(base->num_arrows());
      if (spec.contains("actions")) {
        const auto& aj = spec.at("actions");
        if (!aj.is_object()) bad(where, "actions expects an object");
        for (const auto& [u, t] : aj.items()) {
          auto ui = base->arrow_index(u);
          if (!ui) fail(ErrorKind::ill_formed, where + ": unknown arrow " + u);
          json wrapped = t.is_array() ? json{{"table", t}} : json{{"map", t}};
          act[*ui] = table_function(wrapped, vals[base->src(*ui)], vals[base->dst(*ui)], where + " action " + u);
        }
      }
      std::vector<FinFunction> actions;
      for (std::size_t u = 0; u < act.size(); ++u) {
        if (act[u]) {
          actions.push_back(*act[u]);
        } else if (base->identity(base->src(u)) == u) {
          actions.push_back(FinFunction::identity(vals[base->src(u)]));
        } else {
          fail(ErrorKind::structural, where + ": no action for " + base->arrow(u).name);
        }
      }
      sig.presheaves.emplace(n, make_presheaf(base, vals, actions));
    }
  }

  void monoid(const json& j) {
    const std::string where = "monoid";
    if (sig.model == ModelKind::presheaf) {
      only_keys(j, {"H", "monoid"}, where);
      auto c = cat_ref(name_of(need(j, "H", where), where), where);
      multiplication_functor(c);
      sig.monoid_category = name_of(j.at("H"), where);
      if (j.contains("monoid")) sig.monoid_claimed = j.at("monoid").get<bool>();
      return;
    }
    only_keys(j, {"H", "table", "mult", "emp", "monoid"}, where);
    const std::string hn = name_of(need(j, "H", where), where);
    auto H = set_ref(hn, where);
    SepTable t{hn, H, {}, std::nullopt, false};
    const auto kind = one_of(j, {"table", "mult"}, where);
    const std::size_t n = H->size();
    t.mult.assign(n, std::vector<std::size_t>(n));
    if (kind == "table") {
      const auto& tab = j.at(kind);
      if (!tab.is_array() || tab.size() != n) fail(ErrorKind::structural, where + ": table is not |H| x |H|");
      for (std::size_t a = 0; a < n; ++a) {
        auto row = labels(tab[a], where);
        if (row.size() != n) fail(ErrorKind::structural, where + ": table is not |H| x |H|");
        for (std::size_t b = 0; b < n; ++b) t.mult[a][b] = index_by_label(H, row[b], where);
      }
    } else {
      const auto& f = lookup(sig.functions, name_of(j.at(kind), where), "function", where);
      if (!same_set(f.fn.dom(), product_set(H, H)) || !same_set(f.fn.cod(), H)) {
        fail(ErrorKind::validation, where + ": multiplication is not H*H -> H");
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t.mult[a][b] = f.fn(product_index(H, H, a, b));
    }
    if (j.contains("emp")) t.unit = index_by_label(H, label(j.at("emp"), where), where);
    if (j.contains("monoid")) {
      if (!j.at("monoid").is_boolean()) bad(where, "\"monoid\" expects a boolean");
      t.claims_monoid = j.at("monoid").get<bool>();
    }
    sig.monoid_claimed = t.claims_monoid;
    sig.monoid = t;
  }

  void program(const json& j) {
    const std::string where = "program";
    only_keys(j, {"states", "commands"}, where);
    auto states = set_ref(name_of(need(j, "states", where), where), where);
    HoareProgram prog{states, {}};
    const auto& cj = need(j, "commands", where);
    if (!cj.is_object()) bad(where, "commands expects an object");
    for (const auto& [c, fn] : cj.items()) {
      const auto& f = lookup(sig.functions, name_of(fn, where), "function", where);
      if (!same_set(f.fn.dom(), states) || !same_set(f.fn.cod(), states)) {
        fail(ErrorKind::ill_formed, where + ": command " + c + " is not a function on the states");
      }
      prog.commands.emplace(c, f.fn);
    }
    sig.program = prog;
  }

  void adjunction(const json& j) {
    const std::string where = "adjunction";
    only_keys(j, {"kind", "answer"}, where);
    AdjunctionSpec a{name_of(need(j, "kind", where), where), ""};
    if (a.kind == "continuation") {
      a.answer = name_of(need(j, "answer", where), where);
      lookup(sig.subsets, a.answer, "subset", where);
    } else if (a.kind != "identity") {
      bad(where, "kind is identity or continuation");
    } else if (j.contains("answer")) {
      bad(where, "the identity adjunction takes no answer type");
    }
    sig.adjunction = a;
  }
};

}  // namespace

Signature load_signature(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, std::string("signature is not valid JSON: ") + e.what());
  }
  Loader l;
  try {
    l.load(root);
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, std::string("signature: ") + e.what());
  }
  return std::move(l.sig);
}

Signature load_signature_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_signature(ss.str());
}

}  // namespace refsys
