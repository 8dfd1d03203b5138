#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "refsys/cli.hpp"
#include "refsys/error.hpp"
#include "refsys/signature.hpp"

using namespace refsys;

namespace {

const std::string kFixtures = REFSYS_FIXTURE_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name + ".json"; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Exit code of S =[f]=> T computed from the raw tables.
int oracle(const Signature& sig, const std::string& s, const std::string& f, const std::string& t) {
  const auto& S = sig.subsets.at(s);
  const auto& T = sig.subsets.at(t);
  const auto& fn = sig.functions.at(f).fn;
  if (fn.dom()->name() != S.carrier()->name() || fn.cod()->name() != T.carrier()->name()) return 2;
  for (std::size_t i = 0; i < S.mask().size(); ++i)
    if (S.contains(i) && !T.contains(fn(i))) return 1;
  return 0;
}

}  // namespace

TEST_CASE("judgment grammar") {
  auto j = parse_judgment("  Snz  <=[ sq ; half ]  Bgez ");
  CHECK(normalize(j) == "Snz =[sq;half]=> Bgez");
  CHECK(normalize(parse_judgment("Snz=[sq]=>Bgez")) == "Snz =[sq]=> Bgez");
  auto s = parse_judgment("S <= T");
  CHECK(s.subtyping);
  CHECK(normalize(s) == "S <= T");
  for (const char* bad : {"", "S", "S <=", "<= T", "S <=[] T", "S <=[f;] T", "S =[f]=>", "S <= T <= U", "S =[f] T"}) {
    CHECK_THROWS_AS(parse_judgment(bad), Error);
  }
  auto t = parse_triple("{P} a ; b {Q}");
  CHECK(t.pre == "P");
  CHECK(t.commands == std::vector<std::string>{"a", "b"});
  CHECK(parse_triple("{P} skip {Q}").commands.empty());
  CHECK(parse_triple("{P}{Q}").commands.empty());
  CHECK_THROWS_AS(parse_triple("P a Q"), Error);
}

TEST_CASE("the squaring triad") {
  const auto f = fixture("squaring");
  CHECK(run({"check", f, "Snz =[sq]=> Bgez"}).code == kExitOk);
  CHECK(run({"check", f, "Sgez =[sq]=> Bnz"}).code == kExitNo);
  CHECK(run({"check", f, "Snz =[sq]=> Bnd"}).code == kExitIllFormed);
  auto r = run({"check", f, "Snz<=[sq]Bgez"});
  CHECK(r.out == "judgment: Snz =[sq]=> Bgez\nverdict: derivable\n");
  CHECK(run({"check", f, "Snz <= Snz"}).code == kExitOk);
  CHECK(run({"check", f, "Snz <= Bnz"}).code == kExitIllFormed);
  CHECK(run({"check", f, "Snz =[half;sq]=> Bgez"}).code == kExitIllFormed);
  CHECK(run({"check", f, "Snz =[id;sq;half;id]=> Bgez"}).code == kExitOk);
}

TEST_CASE("exit codes agree with an oracle over every fixture judgment") {
  for (const auto* name : {"squaring", "z4", "hoare"}) {
    const auto path = fixture(name);
    const auto sig = load_signature_file(path);
    std::size_t n = 0;
    for (const auto& [s, S] : sig.subsets)
      for (const auto& [t, T] : sig.subsets) {
        for (const auto& [f, fn] : sig.functions) {
          CHECK_MESSAGE(run({"check", path, s + " =[" + f + "]=> " + t}).code == oracle(sig, s, f, t),
                        name << ": " << s << " " << f << " " << t);
          ++n;
        }
        const int sub = S.carrier()->name() != T.carrier()->name() ? 2 : S.subset_of(T) ? 0 : 1;
        CHECK(run({"check", path, s + " <= " + t}).code == sub);
        CHECK(run({"check", path, s + " =[id]=> " + t}).code == sub);
      }
    CHECK(n > 0);
    CHECK(run({"check", path, "Nope <= Nope"}).code == kExitInvalid);
    CHECK(run({"check", path, "<= <="}).code == kExitInvalid);
  }
}

TEST_CASE("queries print canonical e-types") {
  CHECK(run({"pull", fixture("squaring"), "sq", "Bnz"}).out == "{-3,-2,-1,1,2,3}\n");
  CHECK(run({"push", fixture("squaring"), "id", "Snz"}).out == "{-3,-2,-1,1,2,3}\n");
  CHECK(run({"push", fixture("squaring"), "sq", "Snz"}).out == "{1,4,9}\n");
  CHECK(run({"pull", fixture("squaring"), "sq", "Snz"}).code == kExitIllFormed);
  CHECK(run({"star", fixture("z4"), "S1", "S2"}).out == "{3}\n");
  CHECK(run({"star", fixture("z4"), "Odd", "Odd"}).out == "{0,2}\n");
  CHECK(run({"wand", fixture("z4"), "S1", "S3"}).out == "{2}\n");
  CHECK(run({"wand", fixture("z4"), "S1", "S3", "--left"}).out == "{2}\n");
  CHECK(run({"star", fixture("squaring"), "Snz", "Snz"}).code == kExitInvalid);
  CHECK(run({"residual", fixture("z4"), "Emp", "S1", "--side", "left"}).out == "{[0->1,1->0,2->0,3->0],"
        "[0->1,1->0,2->0,3->1],[0->1,1->0,2->0,3->2],[0->1,1->0,2->0,3->3],[0->1,1->0,2->1,3->0],[0->1,1->0,2->1,3->1],"
        "[0->1,1->0,2->1,3->2],[0->1,1->0,2->1,3->3],[0->1,1->0,2->2,3->0],[0->1,1->0,2->2,3->1],[0->1,1->0,2->2,3->2],"
        "[0->1,1->0,2->2,3->3],[0->1,1->0,2->3,3->0],[0->1,1->0,2->3,3->1],[0->1,1->0,2->3,3->2],[0->1,1->0,2->3,3->3],"
        "[0->1,1->1,2->0,3->0],[0->1,1->1,2->0,3->1],[0->1,1->1,2->0,3->2],[0->1,1->1,2->0,3->3],[0->1,1->1,2->1,3->0],"
        "[0->1,1->1,2->1,3->1],[0->1,1->1,2->1,3->2],[0->1,1->1,2->1,3->3],[0->1,1->1,2->2,3->0],[0->1,1->1,2->2,3->1],"
        "[0->1,1->1,2->2,3->2],[0->1,1->1,2->2,3->3],[0->1,1->1,2->3,3->0],[0->1,1->1,2->3,3->1],[0->1,1->1,2->3,3->2],"
        "[0->1,1->1,2->3,3->3],[0->1,1->2,2->0,3->0],[0->1,1->2,2->0,3->1],[0->1,1->2,2->0,3->2],[0->1,1->2,2->0,3->3],"
        "[0->1,1->2,2->1,3->0],[0->1,1->2,2->1,3->1],[0->1,1->2,2->1,3->2],[0->1,1->2,2->1,3->3],[0->1,1->2,2->2,3->0],"
        "[0->1,1->2,2->2,3->1],[0->1,1->2,2->2,3->2],[0->1,1->2,2->2,3->3],[0->1,1->2,2->3,3->0],[0->1,1->2,2->3,3->1],"
        "[0->1,1->2,2->3,3->2],[0->1,1->2,2->3,3->3],[0->1,1->3,2->0,3->0],[0->1,1->3,2->0,3->1],[0->1,1->3,2->0,3->2],"
        "[0->1,1->3,2->0,3->3],[0->1,1->3,2->1,3->0],[0->1,1->3,2->1,3->1],[0->1,1->3,2->1,3->2],[0->1,1->3,2->1,3->3],"
        "[0->1,1->3,2->2,3->0],[0->1,1->3,2->2,3->1],[0->1,1->3,2->2,3->2],[0->1,1->3,2->2,3->3],[0->1,1->3,2->3,3->0],"
        "[0->1,1->3,2->3,3->1],[0->1,1->3,2->3,3->2],[0->1,1->3,2->3,3->3]}\n");
  auto p = run({"push", fixture("presheaf"), "to_one", "Two"});
  CHECK(p.code == kExitOk);
  CHECK(run({"check", fixture("presheaf"), "OneP =[pick_hi]=> Pt"}).code == kExitOk);
  CHECK(run({"check", fixture("presheaf"), "Swap <= Pt"}).code == kExitIllFormed);
  CHECK(run({"check", fixture("trivial"), "Two <= Empty"}).code == kExitNo);
  CHECK(run({"check", fixture("trivial"), "Empty <= Two"}).code == kExitOk);
  CHECK(run({"star", fixture("trivial"), "Two", "Two"}).code == kExitInvalid);
}

TEST_CASE("hoare triples") {
  const auto f = fixture("hoare");
  auto r = run({"hoare", f, "{Zero} inc;dbl {High}"});
  CHECK(r.code == kExitOk);
  CHECK(r.out ==
        "triple: {Zero} inc;dbl {High}\n"
        "wp: {s2,s3} <-dbl- {s1,s3} <-inc- {s0,s2}\n"
        "sp: {s0} -inc-> {s1} -dbl-> {s2}\n"
        "holds: yes\n");
  CHECK(run({"hoare", f, "{Any} clr {Zero}"}).code == kExitOk);
  CHECK(run({"hoare", f, "{Any} inc {High}"}).code == kExitNo);
  CHECK(run({"hoare", f, "{Low} skip {Any}"}).code == kExitOk);
  CHECK(run({"hoare", f, "{Any} jump {High}"}).code == kExitInvalid);
  CHECK(run({"hoare", fixture("z4"), "{S1} x {S2}"}).code == kExitInvalid);
}

TEST_CASE("law suites through the front end") {
  auto z4 = run({"laws", fixture("z4"), "sep"});
  CHECK(z4.code == kExitOk);
  CHECK(z4.out.find("star/wand over H: pass (18714 instances)") != std::string::npos);
  auto bad = run({"laws", fixture("corrupted"), "sep"});
  CHECK(bad.code == kExitNo);
  CHECK(bad.out.find("counterexample: (0*0)*1 = 2 but 0*(0*1) = 1") != std::string::npos);
  CHECK(run({"laws", fixture("z4"), "nonsense"}).code == kExitInvalid);
  CHECK(run({"laws", fixture("hoare"), "kernel", "--max-set", "2"}).code == kExitOk);
  CHECK(run({"laws", fixture("hoare"), "kernel", "--max-set", "9"}).code == kExitInvalid);
}

TEST_CASE("usage and signature errors exit with 3") {
  CHECK(run({}).code == kExitInvalid);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"check", fixture("squaring")}).code == kExitInvalid);
  CHECK(run({"check", kFixtures + "/missing.json", "S <= S"}).code == kExitInvalid);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("reports are deterministic and --json is well formed") {
  const std::vector<std::vector<std::string>> cmds{
      {"check", fixture("squaring"), "Snz =[sq]=> Bgez"},
      {"pull", fixture("squaring"), "sq", "Bnz"},
      {"star", fixture("presheaf"), "Swap", "Swap"},
      {"hoare", fixture("hoare"), "{Low} inc;flip {Any}"},
      {"laws", fixture("z4"), "sep"},
  };
  for (const auto& c : cmds) {
    auto a = run(c), b = run(c);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
    auto jc = c;
    jc.insert(jc.begin(), "--json");
    auto j1 = run(jc), j2 = run(jc);
    CHECK(j1.out == j2.out);
    CHECK(j1.code == a.code);
    auto parsed = nlohmann::json::parse(j1.out);
    CHECK(parsed.is_object());
  }
  auto e = run({"--json", "check", fixture("squaring"), "Nope <= Snz"});
  auto parsed = nlohmann::json::parse(e.out);
  CHECK(parsed["error"]["kind"] == "parse");
  CHECK(parsed["exit"] == 3);
}
