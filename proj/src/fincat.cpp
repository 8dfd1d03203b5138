#include "refsys/fincat.hpp"

#include <functional>
#include <tuple>

#include "cache.hpp"
#include "refsys/error.hpp"

namespace refsys {

std::string LawReport::str() const {
  std::string out;
  for (const auto& s : structural) out += "structural: " + s + "\n";
  for (const auto& v : violations) out += "violation: " + v + "\n";
  return out.empty() ? "ok\n" : out;
}

FinCategory::FinCategory(std::string name, std::vector<std::string> objects,
                         std::vector<Arrow> arrows, std::vector<std::size_t> identities,
                         std::vector<std::size_t> comp)
    : name_(std::move(name)),
      objects_(std::move(objects)),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      comp_(std::move(comp)) {
  const std::size_t n = objects_.size();
  homs_.assign(n * n, {});
  for (std::size_t f = 0; f < arrows_.size(); ++f) {
    if (arrows_[f].src >= n || arrows_[f].dst >= n) {
      fail(ErrorKind::structural, "arrow " + arrows_[f].name + " has a dangling endpoint");
    }
    homs_[arrows_[f].src * n + arrows_[f].dst].push_back(f);
  }
  if (identities_.size() != n) fail(ErrorKind::structural, "identity table is not total");
  if (comp_.size() != arrows_.size() * arrows_.size()) {
    fail(ErrorKind::structural, "composition table has the wrong size");
  }
}

std::size_t FinCategory::compose(std::size_t f, std::size_t g) const {
  std::size_t h = comp_[f * arrows_.size() + g];
  if (h == npos) {
    fail(ErrorKind::structural,
         "arrows " + arrows_[f].name + " and " + arrows_[g].name + " are not composable");
  }
  return h;
}

const std::vector<std::size_t>& FinCategory::hom(std::size_t a, std::size_t b) const {
  return homs_[a * objects_.size() + b];
}

std::optional<std::size_t> FinCategory::object_index(const std::string& name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> FinCategory::arrow_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return i;
  return std::nullopt;
}

LawReport FinCategory::check_laws() const {
  LawReport r;
  const std::size_t m = arrows_.size();
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    std::size_t i = identities_[o];
    if (i >= m || arrows_[i].src != o || arrows_[i].dst != o) {
      r.structural.push_back("identity of " + objects_[o] + " is not an endo-arrow on it");
    }
  }
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t g = 0; g < m; ++g) {
      const bool composable = arrows_[f].dst == arrows_[g].src;
      const std::size_t h = comp_[f * m + g];
      if (composable && h == npos) {
        r.structural.push_back("missing composite " + arrows_[f].name + ";" + arrows_[g].name);
      } else if (!composable && h != npos) {
        r.structural.push_back("composite given for non-composable " + arrows_[f].name + ";" +
                               arrows_[g].name);
      } else if (composable && (h >= m || arrows_[h].src != arrows_[f].src ||
                                arrows_[h].dst != arrows_[g].dst)) {
        r.structural.push_back("composite " + arrows_[f].name + ";" + arrows_[g].name +
                               " has the wrong boundary");
      }
    }
  }
  if (!r.structural.empty()) return r;
  for (std::size_t f = 0; f < m; ++f) {
    const std::size_t il = identities_[arrows_[f].src];
    const std::size_t ir = identities_[arrows_[f].dst];
    if (comp_[il * m + f] != f) r.violations.push_back("left unit fails at " + arrows_[f].name);
    if (comp_[f * m + ir] != f) r.violations.push_back("right unit fails at " + arrows_[f].name);
  }
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t g = 0; g < m; ++g) {
      if (arrows_[f].dst != arrows_[g].src) continue;
      const std::size_t fg = comp_[f * m + g];
      for (std::size_t h = 0; h < m; ++h) {
        if (arrows_[g].dst != arrows_[h].src) continue;
        const std::size_t gh = comp_[g * m + h];
        if (comp_[fg * m + h] != comp_[f * m + gh]) {
          r.violations.push_back("associativity fails at (" + arrows_[f].name + "," +
                                 arrows_[g].name + "," + arrows_[h].name + ")");
        }
      }
    }
  }
  return r;
}

bool same_category(const FinCategory& a, const FinCategory& b) {
  if (&a == &b) return true;
  if (a.name_ != b.name_ || a.objects_ != b.objects_ || a.comp_ != b.comp_ ||
      a.identities_ != b.identities_ || a.arrows_.size() != b.arrows_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const Arrow& x = a.arrows_[i];
    const Arrow& y = b.arrows_[i];
    if (x.name != y.name || x.src != y.src || x.dst != y.dst) return false;
  }
  return true;
}

bool same_category(const CatRef& a, const CatRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_category(*a, *b);
}

namespace {

struct Tables {
  std::vector<Arrow> arrows;
  std::vector<std::size_t> identities;
  std::vector<std::size_t> comp;
};

Tables resolve(const std::vector<std::string>& objects, const std::vector<ArrowSpec>& arrows,
               const std::map<std::string, std::string>& identities,
               const std::vector<CompositionEntry>& composition, LawReport& r) {
  Tables t;
  std::map<std::string, std::size_t> obj, arr;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!obj.emplace(objects[i], i).second) r.structural.push_back("duplicate object " + objects[i]);
  }
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const auto& a = arrows[i];
    if (!arr.emplace(a.name, i).second) r.structural.push_back("duplicate arrow " + a.name);
    auto s = obj.find(a.src);
    auto d = obj.find(a.dst);
    if (s == obj.end() || d == obj.end()) {
      r.structural.push_back("arrow " + a.name + " has a dangling endpoint");
      t.arrows.push_back({a.name, 0, 0});
    } else {
      t.arrows.push_back({a.name, s->second, d->second});
    }
  }
  t.identities.assign(objects.size(), npos);
  for (const auto& [o, a] : identities) {
    auto oi = obj.find(o);
    auto ai = arr.find(a);
    if (oi == obj.end() || ai == arr.end()) {
      r.structural.push_back("identity entry " + o + " -> " + a + " is dangling");
      continue;
    }
    t.identities[oi->second] = ai->second;
  }
  for (std::size_t o = 0; o < objects.size(); ++o) {
    if (t.identities[o] == npos) r.structural.push_back("no identity for " + objects[o]);
  }
  const std::size_t m = arrows.size();
  t.comp.assign(m * m, npos);
  auto set = [&](std::size_t f, std::size_t g, std::size_t h) {
    std::size_t& cell = t.comp[f * m + g];
    if (cell != npos && cell != h) {
      r.structural.push_back("conflicting composites for " + arrows[f].name + ";" + arrows[g].name);
    }
    cell = h;
  };
  for (const auto& e : composition) {
    auto f = arr.find(e.first);
    auto g = arr.find(e.second);
    auto h = arr.find(e.result);
    if (f == arr.end() || g == arr.end() || h == arr.end()) {
      r.structural.push_back("composition entry " + e.first + ";" + e.second + " is dangling");
      continue;
    }
    set(f->second, g->second, h->second);
  }
  if (!r.structural.empty()) return t;
  // Unit composites may be omitted from the input table.
  for (std::size_t o = 0; o < objects.size(); ++o) {
    const std::size_t id = t.identities[o];
    for (std::size_t f = 0; f < m; ++f) {
      if (t.arrows[f].src == o && t.comp[id * m + f] == npos) t.comp[id * m + f] = f;
      if (t.arrows[f].dst == o && t.comp[f * m + id] == npos) t.comp[f * m + id] = f;
    }
  }
  return t;
}

}  // namespace

LawReport check_category(const std::string& name, const std::vector<std::string>& objects,
                         const std::vector<ArrowSpec>& arrows,
                         const std::map<std::string, std::string>& identities,
                         const std::vector<CompositionEntry>& composition) {
  LawReport r;
  Tables t = resolve(objects, arrows, identities, composition, r);
  if (!r.structural.empty()) return r;
  FinCategory c(name, objects, std::move(t.arrows), std::move(t.identities), std::move(t.comp));
  return c.check_laws();
}

CatRef make_category(const std::string& name, const std::vector<std::string>& objects,
                     const std::vector<ArrowSpec>& arrows,
                     const std::map<std::string, std::string>& identities,
                     const std::vector<CompositionEntry>& composition) {
  LawReport r;
  Tables t = resolve(objects, arrows, identities, composition, r);
  if (!r.structural.empty()) fail(ErrorKind::structural, "category " + name + ": " + r.str());
  auto c = std::make_shared<const FinCategory>(name, objects, std::move(t.arrows),
                                               std::move(t.identities), std::move(t.comp));
  r = c->check_laws();
  if (!r.structural.empty()) fail(ErrorKind::structural, "category " + name + ": " + r.str());
  if (!r.ok()) fail(ErrorKind::validation, "category " + name + ": " + r.str());
  return c;
}

namespace {

CatRef checked(CatRef c) {
  LawReport r = c->check_laws();
  if (!r.ok()) fail(ErrorKind::validation, "category " + c->name() + ": " + r.str());
  return c;
}

}  // namespace

CatRef terminal_category() {
  static const CatRef one = std::make_shared<const FinCategory>(
      "1", std::vector<std::string>{"*"}, std::vector<Arrow>{{"id", 0, 0}},
      std::vector<std::size_t>{0}, std::vector<std::size_t>{0});
  return one;
}

CatRef discrete_category(const std::string& name, const std::vector<std::string>& objects) {
  const std::size_t n = objects.size();
  std::vector<Arrow> arrows;
  std::vector<std::size_t> ids(n), comp(n * n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    arrows.push_back({"id_" + objects[i], i, i});
    ids[i] = i;
    comp[i * n + i] = i;
  }
  return checked(std::make_shared<const FinCategory>(name, objects, arrows, ids, comp));
}

CatRef preorder_category(const std::string& name, const std::vector<std::string>& objects,
                         const std::vector<std::pair<std::size_t, std::size_t>>& leq) {
  const std::size_t n = objects.size();
  std::vector<std::size_t> idx(n * n, npos);
  std::vector<Arrow> arrows;
  std::vector<std::size_t> ids(n);
  auto add = [&](std::size_t a, std::size_t b) {
    if (idx[a * n + b] != npos) return;
    idx[a * n + b] = arrows.size();
    arrows.push_back({a == b ? "id_" + objects[a] : objects[a] + "<" + objects[b], a, b});
  };
  for (std::size_t i = 0; i < n; ++i) add(i, i);
  for (auto [a, b] : leq) add(a, b);
  for (std::size_t i = 0; i < n; ++i) ids[i] = idx[i * n + i];
  const std::size_t m = arrows.size();
  std::vector<std::size_t> comp(m * m, npos);
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t g = 0; g < m; ++g) {
      if (arrows[f].dst != arrows[g].src) continue;
      const std::size_t h = idx[arrows[f].src * n + arrows[g].dst];
      if (h == npos) fail(ErrorKind::validation, "preorder " + name + " is not transitive");
      comp[f * m + g] = h;
    }
  }
  return checked(std::make_shared<const FinCategory>(name, objects, arrows, ids, comp));
}

CatRef arrow_category(const std::string& name, const std::string& lo, const std::string& hi,
                      const std::string& arrow) {
  std::vector<Arrow> arrows{{"id_" + lo, 0, 0}, {"id_" + hi, 1, 1}, {arrow, 0, 1}};
  std::vector<std::size_t> comp(9, npos);
  comp[0 * 3 + 0] = 0;
  comp[1 * 3 + 1] = 1;
  comp[0 * 3 + 2] = 2;
  comp[2 * 3 + 1] = 2;
  return checked(std::make_shared<const FinCategory>(name, std::vector<std::string>{lo, hi},
                                                     arrows, std::vector<std::size_t>{0, 1}, comp));
}

CatRef monoid_category(const std::string& name, const std::vector<std::string>& elements,
                       const std::vector<std::vector<std::size_t>>& mult, std::size_t unit) {
  const std::size_t m = elements.size();
  std::vector<Arrow> arrows;
  std::vector<std::size_t> comp(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    arrows.push_back({elements[i], 0, 0});
    if (mult.size() != m || mult[i].size() != m) {
      fail(ErrorKind::structural, "monoid table for " + name + " is not square");
    }
    for (std::size_t j = 0; j < m; ++j) comp[i * m + j] = mult[i][j];
  }
  return checked(std::make_shared<const FinCategory>(name, std::vector<std::string>{"*"}, arrows,
                                                     std::vector<std::size_t>{unit}, comp));
}

CatRef cyclic_group_category(std::size_t n) {
  std::vector<std::string> els;
  std::vector<std::vector<std::size_t>> mult(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    els.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) mult[i][j] = (i + j) % n;
  }
  return monoid_category("Z" + std::to_string(n), els, mult, 0);
}

namespace {

detail::PairCache<FinCategory, FinCategory>& cat_product_cache() {
  static detail::PairCache<FinCategory, FinCategory> c;
  return c;
}

std::string wrap(const std::string& n) {
  return n.find_first_of("*^[") == std::string::npos ? n : "(" + n + ")";
}

}  // namespace

CatRef product_category(const CatRef& a, const CatRef& b) {
  return cat_product_cache().get(a, b, [&]() -> CatRef {
    const std::size_t na = a->num_objects(), nb = b->num_objects();
    const std::size_t ma = a->num_arrows(), mb = b->num_arrows();
    if (na * nb > kMaxCarrier || ma * mb > kMaxCarrier) {
      fail(ErrorKind::capability, "product category too large");
    }
    std::vector<std::string> objects;
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) objects.push_back("(" + a->object(i) + "," + b->object(j) + ")");
    std::vector<Arrow> arrows;
    for (std::size_t f = 0; f < ma; ++f)
      for (std::size_t g = 0; g < mb; ++g)
        arrows.push_back({"(" + a->arrow(f).name + "," + b->arrow(g).name + ")",
                          a->src(f) * nb + b->src(g), a->dst(f) * nb + b->dst(g)});
    std::vector<std::size_t> ids(na * nb);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) ids[i * nb + j] = a->identity(i) * mb + b->identity(j);
    const std::size_t m = ma * mb;
    std::vector<std::size_t> comp(m * m, npos);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        const std::size_t f1 = x / mb, g1 = x % mb, f2 = y / mb, g2 = y % mb;
        const std::size_t fa = a->table()[f1 * ma + f2];
        const std::size_t gb = b->table()[g1 * mb + g2];
        if (fa != npos && gb != npos) comp[x * m + y] = fa * mb + gb;
      }
    }
    return std::make_shared<const FinCategory>(wrap(a->name()) + "*" + wrap(b->name()), objects,
                                               arrows, ids, comp);
  });
}

FinFunctor::FinFunctor(CatRef dom, CatRef cod, std::vector<std::size_t> objects,
                       std::vector<std::size_t> arrows)
    : dom_(std::move(dom)), cod_(std::move(cod)), objects_(std::move(objects)),
      arrows_(std::move(arrows)) {
  if (objects_.size() != dom_->num_objects() || arrows_.size() != dom_->num_arrows()) {
    fail(ErrorKind::structural, "functor tables are not total on " + dom_->name());
  }
  for (auto o : objects_)
    if (o >= cod_->num_objects()) fail(ErrorKind::structural, "functor object image out of range");
  for (auto f : arrows_)
    if (f >= cod_->num_arrows()) fail(ErrorKind::structural, "functor arrow image out of range");
}

FinFunctor FinFunctor::identity(const CatRef& c) {
  std::vector<std::size_t> o(c->num_objects()), a(c->num_arrows());
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
  return FinFunctor(c, c, std::move(o), std::move(a));
}

LawReport FinFunctor::check() const {
  LawReport r;
  const auto& A = *dom_;
  const auto& B = *cod_;
  for (std::size_t f = 0; f < A.num_arrows(); ++f) {
    const std::size_t g = arrows_[f];
    if (B.src(g) != objects_[A.src(f)] || B.dst(g) != objects_[A.dst(f)]) {
      r.violations.push_back("arrow " + A.arrow(f).name + " is sent to " + B.arrow(g).name +
                             " with the wrong boundary");
    }
  }
  if (!r.violations.empty()) return r;
  for (std::size_t o = 0; o < A.num_objects(); ++o) {
    if (arrows_[A.identity(o)] != B.identity(objects_[o])) {
      r.violations.push_back("identity of " + A.object(o) + " is not preserved");
    }
  }
  const std::size_t m = A.num_arrows();
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t g = 0; g < m; ++g) {
      const std::size_t h = A.table()[f * m + g];
      if (h == npos) continue;
      if (B.compose(arrows_[f], arrows_[g]) != arrows_[h]) {
        r.violations.push_back("composite (" + A.arrow(f).name + "," + A.arrow(g).name +
                               ") is not preserved");
      }
    }
  }
  return r;
}

std::string FinFunctor::str() const {
  std::string out = "<";
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (i) out += ",";
    out += dom_->object(i) + "->" + cod_->object(objects_[i]);
  }
  bool first = true;
  for (std::size_t f = 0; f < arrows_.size(); ++f) {
    if (dom_->identity(dom_->src(f)) == f) continue;
    out += first ? "|" : ",";
    first = false;
    out += dom_->arrow(f).name + "->" + cod_->arrow(arrows_[f]).name;
  }
  return out + ">";
}

bool operator==(const FinFunctor& f, const FinFunctor& g) {
  return same_category(f.dom_, g.dom_) && same_category(f.cod_, g.cod_) &&
         f.objects_ == g.objects_ && f.arrows_ == g.arrows_;
}

LawReport check_functor(const CatRef& dom, const CatRef& cod,
                        const std::map<std::string, std::string>& object_map,
                        const std::map<std::string, std::string>& arrow_map) {
  LawReport r;
  std::vector<std::size_t> o(dom->num_objects(), npos), a(dom->num_arrows(), npos);
  for (const auto& [k, v] : object_map) {
    auto i = dom->object_index(k);
    auto j = cod->object_index(v);
    if (!i || !j) {
      r.structural.push_back("object entry " + k + " -> " + v + " is dangling");
      continue;
    }
    o[*i] = *j;
  }
  for (const auto& [k, v] : arrow_map) {
    auto i = dom->arrow_index(k);
    auto j = cod->arrow_index(v);
    if (!i || !j) {
      r.structural.push_back("arrow entry " + k + " -> " + v + " is dangling");
      continue;
    }
    a[*i] = *j;
  }
  for (std::size_t i = 0; i < o.size(); ++i)
    if (o[i] == npos) r.structural.push_back("object " + dom->object(i) + " is unmapped");
  // Identity arrows may be left implicit.
  for (std::size_t f = 0; f < a.size(); ++f) {
    if (a[f] != npos) continue;
    const std::size_t s = dom->src(f);
    if (dom->identity(s) == f && o[s] != npos) {
      a[f] = cod->identity(o[s]);
    } else {
      r.structural.push_back("arrow " + dom->arrow(f).name + " is unmapped");
    }
  }
  if (!r.structural.empty()) return r;
  return FinFunctor(dom, cod, o, a).check();
}

FinFunctor make_functor(const CatRef& dom, const CatRef& cod,
                        const std::map<std::string, std::string>& object_map,
                        const std::map<std::string, std::string>& arrow_map) {
  LawReport r = check_functor(dom, cod, object_map, arrow_map);
  if (!r.structural.empty()) fail(ErrorKind::structural, "functor: " + r.str());
  if (!r.ok()) fail(ErrorKind::validation, "functor: " + r.str());
  std::vector<std::size_t> o(dom->num_objects()), a(dom->num_arrows());
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = *cod->object_index(object_map.at(dom->object(i)));
  for (std::size_t f = 0; f < a.size(); ++f) {
    auto it = arrow_map.find(dom->arrow(f).name);
    a[f] = it != arrow_map.end() ? *cod->arrow_index(it->second) : cod->identity(o[dom->src(f)]);
  }
  return FinFunctor(dom, cod, o, a);
}

FinFunctor compose(const FinFunctor& f, const FinFunctor& g) {
  if (!same_category(f.cod(), g.dom())) {
    fail(ErrorKind::structural,
         "cannot compose functors through " + f.cod()->name() + " and " + g.dom()->name());
  }
  std::vector<std::size_t> o(f.dom()->num_objects()), a(f.dom()->num_arrows());
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = g.obj(f.obj(i));
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g.arr(f.arr(i));
  return FinFunctor(f.dom(), g.cod(), o, a);
}

FinFunctor product(const FinFunctor& f, const FinFunctor& g) {
  CatRef dom = product_category(f.dom(), g.dom());
  CatRef cod = product_category(f.cod(), g.cod());
  const std::size_t nb = g.dom()->num_objects(), mb = g.dom()->num_arrows();
  const std::size_t nd = g.cod()->num_objects(), md = g.cod()->num_arrows();
  std::vector<std::size_t> o(dom->num_objects()), a(dom->num_arrows());
  for (std::size_t i = 0; i < f.dom()->num_objects(); ++i)
    for (std::size_t j = 0; j < nb; ++j) o[i * nb + j] = f.obj(i) * nd + g.obj(j);
  for (std::size_t i = 0; i < f.dom()->num_arrows(); ++i)
    for (std::size_t j = 0; j < mb; ++j) a[i * mb + j] = f.arr(i) * md + g.arr(j);
  return FinFunctor(dom, cod, o, a);
}

FinFunctor constant_functor(const CatRef& dom, const CatRef& cod, std::size_t object) {
  return FinFunctor(dom, cod, std::vector<std::size_t>(dom->num_objects(), object),
                    std::vector<std::size_t>(dom->num_arrows(), cod->identity(object)));
}

std::vector<FinFunctor> all_functors(const CatRef& dom, const CatRef& cod, std::size_t limit) {
  const auto& A = *dom;
  const auto& C = *cod;
  std::vector<FinFunctor> out;
  std::vector<std::size_t> o(A.num_objects()), a(A.num_arrows(), npos);
  const std::size_t m = A.num_arrows();

  // Checks every composite among assigned arrows that involves arrow f.
  auto consistent = [&](std::size_t f) {
    for (std::size_t g = 0; g <= f; ++g) {
      for (auto [x, y] : {std::pair{f, g}, std::pair{g, f}}) {
        const std::size_t h = A.table()[x * m + y];
        if (h == npos || a[h] == npos || h > f) continue;
        if (C.compose(a[x], a[y]) != a[h]) return false;
      }
    }
    return true;
  };
  std::function<void(std::size_t)> arrows_from = [&](std::size_t f) {
    if (out.size() > limit) fail(ErrorKind::capability, "too many functors " + A.name() + " -> " + C.name());
    if (f == m) {
      // Composites whose result index precedes an operand are re-checked here.
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          const std::size_t h = A.table()[x * m + y];
          if (h != npos && C.compose(a[x], a[y]) != a[h]) return;
        }
      out.emplace_back(dom, cod, o, a);
      return;
    }
    const std::size_t s = A.src(f), d = A.dst(f);
    if (A.identity(s) == f) {
      a[f] = C.identity(o[s]);
      if (consistent(f)) arrows_from(f + 1);
      a[f] = npos;
      return;
    }
    for (std::size_t g : C.hom(o[s], o[d])) {
      a[f] = g;
      if (consistent(f)) arrows_from(f + 1);
    }
    a[f] = npos;
  };
  std::function<void(std::size_t)> objects_from = [&](std::size_t i) {
    if (i == A.num_objects()) {
      arrows_from(0);
      return;
    }
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      o[i] = x;
      objects_from(i + 1);
    }
  };
  objects_from(0);
  return out;
}

namespace {

detail::PairCache<FinCategory, FunctorCategory>& functor_cat_cache() {
  static detail::PairCache<FinCategory, FunctorCategory> c;
  return c;
}

// All natural transformations F => G as component vectors.
std::vector<std::vector<std::size_t>> transformations(const FinFunctor& F, const FinFunctor& G) {
  const auto& A = *F.dom();
  const auto& C = *F.cod();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> comp(A.num_objects());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == A.num_objects()) {
      for (std::size_t u = 0; u < A.num_arrows(); ++u) {
        const std::size_t s = A.src(u), d = A.dst(u);
        if (C.compose(F.arr(u), comp[d]) != C.compose(comp[s], G.arr(u))) return;
      }
      out.push_back(comp);
      return;
    }
    for (std::size_t x : C.hom(F.obj(i), G.obj(i))) {
      comp[i] = x;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

}  // namespace

std::size_t FunctorCategory::find_functor(const FinFunctor& f) const {
  auto it = functor_index.find({f.object_map(), f.arrow_map()});
  if (it == functor_index.end()) fail(ErrorKind::structural, "functor " + f.str() + " not in functor category");
  return it->second;
}

std::size_t FunctorCategory::find_arrow(std::size_t src, std::size_t dst,
                                        const std::vector<std::size_t>& comp) const {
  auto it = arrow_index.find({src, dst, comp});
  if (it == arrow_index.end()) fail(ErrorKind::structural, "transformation not in functor category");
  return it->second;
}

std::shared_ptr<const FunctorCategory> functor_category(const CatRef& a, const CatRef& c,
                                                        std::size_t bound) {
  auto built = functor_cat_cache().get(a, c, [&]() -> std::shared_ptr<const FunctorCategory> {
    auto fc = std::make_shared<FunctorCategory>();
    fc->functors = all_functors(a, c, bound);
    const std::size_t n = fc->functors.size();
    if (n > bound) {
      fail(ErrorKind::capability, "functor category [" + a->name() + "," + c->name() + "] has " +
                                      std::to_string(n) + " objects, bound " + std::to_string(bound));
    }
    std::vector<std::string> objects;
    for (const auto& F : fc->functors) objects.push_back(F.str());
    std::vector<Arrow> arrows;
    auto& index = fc->arrow_index;
    for (std::size_t i = 0; i < n; ++i)
      fc->functor_index[{fc->functors[i].object_map(), fc->functors[i].arrow_map()}] = i;
    std::vector<std::size_t> ids(n, npos);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (auto& comp : transformations(fc->functors[i], fc->functors[j])) {
          std::string name = "{";
          for (std::size_t k = 0; k < comp.size(); ++k) {
            if (k) name += ",";
            name += c->arrow(comp[k]).name;
          }
          name += "}:" + std::to_string(i) + "->" + std::to_string(j);
          index[{i, j, comp}] = arrows.size();
          arrows.push_back({name, i, j});
          fc->components.push_back(std::move(comp));
          if (arrows.size() > bound) {
            fail(ErrorKind::capability, "functor category [" + a->name() + "," + c->name() +
                                            "] exceeds the arrow bound " + std::to_string(bound));
          }
        }
      }
      std::vector<std::size_t> idc(a->num_objects());
      for (std::size_t k = 0; k < idc.size(); ++k) idc[k] = c->identity(fc->functors[i].obj(k));
      ids[i] = index.at({i, i, idc});
    }
    const std::size_t m = arrows.size();
    std::vector<std::size_t> comp(m * m, npos);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        if (arrows[x].dst != arrows[y].src) continue;
        std::vector<std::size_t> k(a->num_objects());
        for (std::size_t o = 0; o < k.size(); ++o)
          k[o] = c->compose(fc->components[x][o], fc->components[y][o]);
        comp[x * m + y] = index.at({arrows[x].src, arrows[y].dst, k});
      }
    }
    fc->category = std::make_shared<const FinCategory>(
        "[" + a->name() + "," + c->name() + "]", objects, arrows, ids, comp);
    return fc;
  });
  return built;
}

}  // namespace refsys
