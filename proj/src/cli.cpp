#include "refsys/cli.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <regex>
#include <type_traits>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "refsys/error.hpp"
#include "refsys/model_presheaf.hpp"
#include "refsys/model_subset.hpp"
#include "refsys/model_trivial.hpp"
#include "refsys/monadrep.hpp"
#include "refsys/monoidal.hpp"
#include "refsys/signature.hpp"
#include "refsys/sweeps.hpp"

namespace refsys {

using nlohmann::json;

namespace {

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

const std::regex kIdent(R"([A-Za-z0-9_'.\-]+)");

void require_ident(const std::string& s, const std::string& what, const std::string& text) {
  if (!std::regex_match(s, kIdent)) fail(ErrorKind::parse, "cannot read " + what + " in \"" + text + "\"");
}

std::vector<std::string> expr_parts(const std::string& e, const std::string& text) {
  auto parts = split(e, ';');
  for (const auto& p : parts) require_ident(p, "expression", text);
  return parts;
}

}  // namespace

ParsedJudgment parse_judgment(const std::string& text) {
  const std::string s = strip_ws(text);
  static const std::regex typing_a(R"(^([^<=\[\]]+)<=\[([^\]]+)\](.+)$)");
  static const std::regex typing_b(R"(^([^<=\[\]]+)=\[([^\]]+)\]=>(.+)$)");
  static const std::regex subtyping(R"(^([^<=\[\]]+)<=([^<=\[\]]+)$)");
  std::smatch mt;
  ParsedJudgment j;
  if (std::regex_match(s, mt, typing_a) || std::regex_match(s, mt, typing_b)) {
    j.subject = mt[1];
    j.expr = expr_parts(mt[2], text);
    j.object = mt[3];
  } else if (std::regex_match(s, mt, subtyping)) {
    j.subject = mt[1];
    j.object = mt[2];
    j.subtyping = true;
  } else {
    fail(ErrorKind::parse, "cannot read judgment \"" + text + "\"");
  }
  require_ident(j.subject, "e-type", text);
  require_ident(j.object, "e-type", text);
  return j;
}

std::string normalize(const ParsedJudgment& j) {
  if (j.subtyping) return j.subject + " <= " + j.object;
  std::string e;
  for (const auto& p : j.expr) e += (e.empty() ? "" : ";") + p;
  return j.subject + " =[" + e + "]=> " + j.object;
}

ParsedTriple parse_triple(const std::string& text) {
  static const std::regex re(R"(^\s*\{\s*([^{}\s]+)\s*\}(.*)\{\s*([^{}\s]+)\s*\}\s*$)");
  std::smatch mt;
  const std::string t = text;
  if (!std::regex_match(t, mt, re)) fail(ErrorKind::parse, "cannot read triple \"" + text + "\"");
  ParsedTriple p;
  p.pre = mt[1];
  p.post = mt[3];
  require_ident(p.pre, "precondition", text);
  require_ident(p.post, "postcondition", text);
  const std::string body = strip_ws(mt[2]);
  if (!body.empty() && body != "skip") p.commands = expr_parts(body, text);
  return p;
}

namespace {

// ------------------------------------------------------------- frontends

json labels_json(const SetRef& s, const std::vector<bool>* mask = nullptr) {
  json a = json::array();
  for (std::size_t i = 0; i < s->size(); ++i)
    if (!mask || (*mask)[i]) a.push_back(s->at(i).str());
  return a;
}

json etype_json(const SubSetModel&, const Subset& S) {
  return json{{"refines", S.carrier()->name()}, {"elements", labels_json(S.carrier(), &S.mask())}};
}

json etype_json(const PresheafModel&, const Presheaf& P) {
  json values = json::object(), actions = json::object();
  const auto& c = *P.base();
  for (std::size_t o = 0; o < c.num_objects(); ++o) values[c.object(o)] = labels_json(P.value(o));
  for (std::size_t u = 0; u < c.num_arrows(); ++u) {
    if (c.identity(c.src(u)) == u) continue;
    json img = json::array();
    const auto& f = P.action(u);
    for (std::size_t i = 0; i < f.dom()->size(); ++i) img.push_back(f.cod()->at(f(i)).str());
    actions[c.arrow(u).name] = img;
  }
  return json{{"refines", c.name()}, {"values", values}, {"actions", actions}};
}

json etype_json(const TrivialModel&, const SetRef& S) {
  return json{{"refines", "1"}, {"elements", labels_json(S)}};
}

template <class M>
struct Frontend {
  M m;
  const std::map<std::string, typename M::EType>* etypes = nullptr;
  const std::map<std::string, typename M::Expr>* exprs = nullptr;
  std::optional<SepOp<M>> op;  // separating conjunction, when declared

  typename M::EType etype(const std::string& n) const {
    auto it = etypes->find(n);
    if (it == etypes->end()) fail(ErrorKind::parse, "unknown e-type " + n);
    return it->second;
  }

  // "id" components take the carrier of their neighbours, else the fallback.
  typename M::Expr expr(const std::vector<std::string>& parts, const typename M::IType& fallback) const {
    std::vector<std::optional<typename M::Expr>> fs;
    for (const auto& p : parts) {
      if (p == "id") {
        fs.emplace_back();
        continue;
      }
      auto it = exprs->find(p);
      if (it == exprs->end()) fail(ErrorKind::parse, "unknown expression " + p);
      fs.emplace_back(it->second);
    }
    std::optional<typename M::Expr> acc;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      typename M::Expr f = [&] {
        if (fs[i]) return *fs[i];
        if (acc) return m.identity(m.cod(*acc));
        for (std::size_t k = i + 1; k < fs.size(); ++k)
          if (fs[k]) return m.identity(m.dom(*fs[k]));
        return m.identity(fallback);
      }();
      if (!acc) {
        acc = f;
        continue;
      }
      if (!m.same_itype(m.cod(*acc), m.dom(f))) {
        fail(ErrorKind::ill_formed, m.show_expr(*acc) + " and " + m.show_expr(f) + " do not compose");
      }
      acc = m.compose(*acc, f);
    }
    return *acc;
  }

  Verdict check(const ParsedJudgment& j) const {
    const auto S = etype(j.subject), T = etype(j.object);
    if (!m.same_itype(m.refines(S), m.refines(T)) && j.subtyping) return Verdict::ill_formed;
    std::optional<typename M::Expr> f;
    try {
      f = j.subtyping ? m.identity(m.refines(S)) : expr(j.expr, m.refines(S));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ill_formed) return Verdict::ill_formed;
      throw;
    }
    if constexpr (std::is_same_v<M, TrivialModel>) {
      // a function S -> T exists iff S is empty or T is not
      return (S->empty() || !T->empty()) ? Verdict::derivable : Verdict::underivable;
    } else {
      return derivable(m, S, *f, T);
    }
  }

  const SepOp<M>& sep() const {
    if (!op) fail(ErrorKind::validation, "the signature declares no separating conjunction");
    return *op;
  }
};

struct Output {
  std::ostream& out;
  std::ostream& err;
  bool json_mode = false;

  void emit(const json& j, const std::string& text) const {
    if (json_mode) {
      out << j.dump(2) << "\n";
    } else {
      out << text;
    }
  }
};

int exit_for(ErrorKind k) { return k == ErrorKind::ill_formed ? kExitIllFormed : kExitInvalid; }

// ---------------------------------------------------------------- commands

template <class M>
int cmd_check(const Frontend<M>& fe, const std::string& text, const Output& o) {
  const auto j = parse_judgment(text);
  const Verdict v = fe.check(j);
  const int code = v == Verdict::derivable ? kExitOk : v == Verdict::underivable ? kExitNo : kExitIllFormed;
  o.emit(json{{"judgment", normalize(j)}, {"verdict", to_string(v)}, {"exit", code}},
         "judgment: " + normalize(j) + "\nverdict: " + to_string(v) + "\n");
  return code;
}

template <class M>
int print_etype(const Frontend<M>& fe, const std::string& what, const typename M::EType& e, const Output& o) {
  json j = etype_json(fe.m, e);
  j["query"] = what;
  j["etype"] = fe.m.show_etype(e);
  o.emit(j, fe.m.show_etype(e) + "\n");
  return kExitOk;
}

template <class M>
int cmd_pull(const Frontend<M>& fe, const std::string& f, const std::string& t, const Output& o) {
  const auto T = fe.etype(t);
  const auto e = fe.expr(expr_parts(strip_ws(f), f), fe.m.refines(T));
  return print_etype(fe, "pull " + f + " " + t, fe.m.pull(e, T), o);
}

template <class M>
int cmd_push(const Frontend<M>& fe, const std::string& f, const std::string& s, const Output& o) {
  const auto S = fe.etype(s);
  const auto e = fe.expr(expr_parts(strip_ws(f), f), fe.m.refines(S));
  return print_etype(fe, "push " + f + " " + s, fe.m.push(S, e), o);
}

template <class M>
int cmd_residual(const Frontend<M>& fe, const std::string& x, const std::string& u, const std::string& side,
                 const Output& o) {
  const auto X = fe.etype(x), U = fe.etype(u);
  if (side == "left") return print_etype(fe, x + " -o " + u, fe.m.lres(X, U), o);
  return print_etype(fe, u + " o- " + x, fe.m.rres(U, X), o);
}

template <class M>
void expect_over(const M& m, const typename M::EType& S, const typename M::IType& A, const std::string& what) {
  if (!m.same_itype(m.refines(S), A)) fail(ErrorKind::ill_formed, what + " does not refine " + m.show_itype(A));
}

template <class M>
int cmd_star(const Frontend<M>& fe, const std::string& s, const std::string& t, const Output& o) {
  if constexpr (std::is_same_v<M, TrivialModel>) {
    fail(ErrorKind::capability, "the trivial model has no separating conjunction");
  } else {
    const auto& op = fe.sep();
    const auto S = fe.etype(s), T = fe.etype(t);
    expect_over(fe.m, S, op.A, s);
    expect_over(fe.m, T, op.B, t);
    return print_etype(fe, s + " * " + t, star(fe.m, op, S, T), o);
  }
}

template <class M>
int cmd_wand(const Frontend<M>& fe, const std::string& x, const std::string& u, bool left, const Output& o) {
  if constexpr (std::is_same_v<M, TrivialModel>) {
    fail(ErrorKind::capability, "the trivial model has no separating conjunction");
  } else {
    const auto& op = fe.sep();
    const auto X = fe.etype(x), U = fe.etype(u);
    expect_over(fe.m, U, op.C, u);
    if (left) {
      expect_over(fe.m, X, op.A, x);
      return print_etype(fe, x + " -* " + u + " (left)", wand_left(fe.m, op, X, U), o);
    }
    expect_over(fe.m, X, op.B, x);
    return print_etype(fe, x + " -* " + u, wand_right(fe.m, op, U, X), o);
  }
}

int cmd_hoare(const Signature& sig, const std::string& text, const Output& o) {
  if (!sig.program) fail(ErrorKind::validation, "the signature declares no program");
  const auto t = parse_triple(text);
  for (const auto& c : t.commands)
    if (!sig.program->commands.count(c)) fail(ErrorKind::parse, "unknown command " + c);
  auto get = [&](const std::string& n) {
    auto it = sig.subsets.find(n);
    if (it == sig.subsets.end()) fail(ErrorKind::parse, "unknown predicate " + n);
    return it->second;
  };
  const auto r = check_triple(*sig.program, get(t.pre), t.commands, get(t.post));
  std::string seq;
  for (const auto& c : t.commands) seq += (seq.empty() ? "" : ";") + c;
  const std::string norm = "{" + t.pre + "} " + (seq.empty() ? "skip" : seq) + " {" + t.post + "}";

  std::string wp_line = "wp: " + r.wp_chain[0].str(), sp_line = "sp: " + r.sp_chain[0].str();
  json wpj = json::array({r.wp_chain[0].str()}), spj = json::array({r.sp_chain[0].str()});
  for (std::size_t i = 1; i < r.wp_chain.size(); ++i) {
    wp_line += " <-" + t.commands[t.commands.size() - i] + "- " + r.wp_chain[i].str();
    wpj.push_back(r.wp_chain[i].str());
  }
  for (std::size_t i = 1; i < r.sp_chain.size(); ++i) {
    sp_line += " -" + t.commands[i - 1] + "-> " + r.sp_chain[i].str();
    spj.push_back(r.sp_chain[i].str());
  }
  const int code = r.holds ? kExitOk : kExitNo;
  o.emit(json{{"triple", norm}, {"holds", r.holds}, {"wp_chain", wpj}, {"sp_chain", spj}, {"exit", code}},
         "triple: " + norm + "\n" + wp_line + "\n" + sp_line + "\nholds: " + (r.holds ? "yes" : "no") + "\n");
  return code;
}

// Checks that depend on what the signature declares.
SuiteReport signature_checks(const Signature& sig, const std::string& suite, const SweepBounds& b) {
  SuiteReport rep{"signature", {}};
  const bool all = suite == "all";
  if (all || suite == "sep") {
    if (sig.monoid) {
      if (sig.monoid->claims_monoid) rep.sections.push_back(monoid_claim(*sig.monoid));
      rep.sections.push_back(check_starwand(*sig.monoid));
    }
    if (sig.monoid_category) rep.sections.push_back(day_check(sig.categories.at(*sig.monoid_category), b.max_value));
  }
  if ((all || suite == "structures") && sig.program) rep.sections.push_back(hoare_galois(*sig.program, 2));
  if ((all || suite == "monadrep") && sig.adjunction) {
    SubSetModel m;
    auto run = [&](const auto& adj) {
      for (const auto& [n, S] : sig.subsets) {
        auto r = check_monad_laws(adj, S);
        r.name += " at " + n;
        rep.sections.push_back(r);
      }
    };
    if (sig.adjunction->kind == "identity") {
      run(identity_adjunction(m));
    } else {
      run(continuation_adjunction(m, sig.subsets.at(sig.adjunction->answer)));
    }
  }
  return rep;
}

json report_json(const CheckReport& r) {
  return json{{"name", r.name},           {"ok", r.ok()},
              {"instances", r.instances}, {"failed", r.failed},
              {"skipped", r.skipped},     {"counterexamples", r.counterexamples},
              {"skip_notes", r.skip_notes}};
}

int cmd_laws(const Signature& sig, const std::string& suite, const SweepBounds& b, const Output& o) {
  auto reports = run_suite(suite, b);
  auto extra = signature_checks(sig, suite, b);
  if (!extra.sections.empty()) reports.push_back(extra);
  bool ok = true;
  std::size_t inst = 0, skipped = 0;
  json rj = json::array();
  std::string text;
  for (const auto& r : reports) {
    ok = ok && r.ok();
    inst += r.instances();
    skipped += r.skipped();
    json secs = json::array();
    for (const auto& s : r.sections) secs.push_back(report_json(s));
    rj.push_back(json{{"name", r.name}, {"ok", r.ok()}, {"instances", r.instances()}, {"sections", secs}});
    text += r.str();
  }
  const std::string verdict = ok ? "pass" : "FAIL";
  text += "laws " + suite + ": " + verdict + " (" + std::to_string(inst) + " instances, " + std::to_string(skipped) +
          " skipped)\n";
  const int code = ok ? kExitOk : kExitNo;
  o.emit(json{{"suite", suite},
              {"ok", ok},
              {"instances", inst},
              {"skipped", skipped},
              {"max_set", b.max_set},
              {"reports", rj},
              {"exit", code}},
         text);
  return code;
}

// ------------------------------------------------------------ dispatching

template <class F>
int with_frontend(const Signature& sig, F&& body) {
  switch (sig.model) {
    case ModelKind::subset: {
      Frontend<SubSetModel> fe;
      fe.etypes = &sig.subsets;
      fe.exprs = &sig.functions;
      if (sig.monoid) fe.op = sep_op(fe.m, sig.monoid->H, sig.monoid->H, table_expr(*sig.monoid));
      return body(fe);
    }
    case ModelKind::presheaf: {
      Frontend<PresheafModel> fe;
      fe.etypes = &sig.presheaves;
      fe.exprs = &sig.functors;
      if (sig.monoid_category) {
        const auto& H = sig.categories.at(*sig.monoid_category);
        fe.op = sep_op(fe.m, H, H, named(multiplication_functor(H), "mult"));
      }
      return body(fe);
    }
    case ModelKind::trivial: {
      static const std::map<std::string, TrivialModel::Expr> no_exprs;
      Frontend<TrivialModel> fe;
      fe.etypes = &sig.sets;
      fe.exprs = &no_exprs;
      return body(fe);
    }
  }
  return kExitInvalid;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"refsys: queries and law checks over finite type refinement systems", "refsys"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_mode = false;
  app.add_flag("--json", json_mode, "structured output");

  std::string sig_path, a1, a2, side = "right", suite;
  bool left = false;
  SweepBounds bounds;

  auto* check = app.add_subcommand("check", "decide a judgment: S <=[f] T, S =[f]=> T or S <= T");
  check->add_option("signature", sig_path)->required();
  check->add_option("judgment", a1)->required();

  auto* pull = app.add_subcommand("pull", "pullback f*T");
  pull->add_option("signature", sig_path)->required();
  pull->add_option("f", a1)->required();
  pull->add_option("T", a2)->required();

  auto* push = app.add_subcommand("push", "pushforward f(S)");
  push->add_option("signature", sig_path)->required();
  push->add_option("f", a1)->required();
  push->add_option("S", a2)->required();

  auto* residual = app.add_subcommand("residual", "X -o U (left) or U o- X (right)");
  residual->add_option("signature", sig_path)->required();
  residual->add_option("X", a1)->required();
  residual->add_option("U", a2)->required();
  residual->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

  auto* star_cmd = app.add_subcommand("star", "separating conjunction S * T");
  star_cmd->add_option("signature", sig_path)->required();
  star_cmd->add_option("S", a1)->required();
  star_cmd->add_option("T", a2)->required();

  auto* wand = app.add_subcommand("wand", "magic wand T -* U (or S -* U with --left)");
  wand->add_option("signature", sig_path)->required();
  wand->add_option("T", a1)->required();
  wand->add_option("U", a2)->required();
  wand->add_flag("--left", left);

  auto* hoare = app.add_subcommand("hoare", "decide a Hoare triple {P} c1;c2 {Q}");
  hoare->add_option("signature", sig_path)->required();
  hoare->add_option("triple", a1)->required();

  auto* laws = app.add_subcommand("laws", "run a law suite");
  laws->add_option("signature", sig_path)->required();
  laws->add_option("suite", suite)->required();
  laws->add_option("--max-set", bounds.max_set, "largest SubSet carrier")->check(CLI::Range(0, 4));
  laws->add_option("--probe-set", bounds.probe_set, "largest probe carrier for beta/eta")->check(CLI::Range(0, 4));
  laws->add_option("--max-value", bounds.max_value, "largest presheaf value set")->check(CLI::Range(0, 3));

  std::vector<const char*> argv{"refsys"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitInvalid;
  }

  const Output o{out, err, json_mode};
  try {
    if (laws->parsed()) {
      const auto names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        fail(ErrorKind::validation, "unknown suite " + suite);
      }
    }
    Signature sig;
    try {
      sig = load_signature_file(sig_path);
    } catch (const Error& e) {
      // a broken signature is never a verdict about a judgment
      throw Error(e.kind() == ErrorKind::ill_formed ? ErrorKind::validation : e.kind(), e.what());
    }
    if (check->parsed()) return with_frontend(sig, [&](const auto& fe) { return cmd_check(fe, a1, o); });
    if (pull->parsed()) return with_frontend(sig, [&](const auto& fe) { return cmd_pull(fe, a1, a2, o); });
    if (push->parsed()) return with_frontend(sig, [&](const auto& fe) { return cmd_push(fe, a1, a2, o); });
    if (residual->parsed()) return with_frontend(sig, [&](const auto& fe) { return cmd_residual(fe, a1, a2, side, o); });
    if (star_cmd->parsed()) return with_frontend(sig, [&](const auto& fe) { return cmd_star(fe, a1, a2, o); });
    if (wand->parsed()) return with_frontend(sig, [&](const auto& fe) { return cmd_wand(fe, a1, a2, left, o); });
    if (hoare->parsed()) return cmd_hoare(sig, a1, o);
    return cmd_laws(sig, suite, bounds, o);
  } catch (const Error& e) {
    const int code = exit_for(e.kind());
    if (json_mode) {
      out << json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}, {"exit", code}}.dump(2) << "\n";
    }
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return code;
  }
}

}  // namespace refsys
