#include <doctest.h>

#include <random>
#include <string>

#include "refsys/error.hpp"
#include "refsys/signature.hpp"

using namespace refsys;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    load_signature(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error for " << text);
  return ErrorKind::soundness;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

TEST_CASE("integer expressions against direct evaluation") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long long> d(-20, 20);
  for (int i = 0; i < 500; ++i) {
    const long long a = d(rng), b = d(rng), x = d(rng);
    long long c = d(rng);
    if (c == 0) c = 3;
    const std::string sa = "(" + std::to_string(a) + ")", sb = "(" + std::to_string(b) + ")",
                      sc = "(" + std::to_string(c) + ")";
    CHECK(eval_int_expr(sa + " + " + sb + " * x", x) == a + b * x);
    CHECK(eval_int_expr("x * x - " + sa, x) == x * x - a);
    CHECK(eval_int_expr("(x + " + sa + ") / " + sc, x) == floor_div(x + a, c));
    CHECK(eval_int_expr("x % " + sc, x) == x - c * floor_div(x, c));
    CHECK(eval_int_expr("x >= " + sa + " and not x == " + sb, x) == ((x >= a && x != b) ? 1 : 0));
    CHECK(eval_int_expr("x < " + sa + " || x > " + sb, x) == ((x < a || x > b) ? 1 : 0));
  }
  CHECK(eval_int_expr("-x", 4) == -4);
  CHECK(eval_int_expr("--x", 4) == 4);
  CHECK(eval_int_expr("2 * (3 + x)", 1) == 8);
  CHECK_THROWS_AS(eval_int_expr("x +", 1), Error);
  CHECK_THROWS_AS(eval_int_expr("y", 1), Error);
  CHECK_THROWS_AS(eval_int_expr("x / 0", 1), Error);
  CHECK_THROWS_AS(eval_int_expr("(x", 1), Error);
}

TEST_CASE("subset signature loads and resolves") {
  const auto sig = load_signature(R"({
    "model": "subset",
    "sets": {"AB": {"product": ["A", "B"]}, "A": {"range": [-1, 1]}, "B": {"elements": ["p", "q"]},
             "E": {"function_space": ["B", "B"]}, "K": {"size": 2}},
    "functions": {
      "sq": {"dom": "A", "cod": "A", "rule": "x * x"},
      "f": {"dom": "A", "cod": "B", "table": ["p", "q", "p"]},
      "g": {"dom": "B", "cod": "A", "map": {"p": -1, "q": 1}}
    },
    "subsets": {"Pos": {"of": "A", "where": "x > 0"}, "Q": {"of": "B", "elements": ["q"]},
                "Full": {"of": "E", "all": true}, "No": {"of": "A", "none": true}}
  })");
  CHECK(sig.model == ModelKind::subset);
  CHECK(sig.sets.at("AB")->size() == 6);
  CHECK(sig.sets.at("E")->size() == 4);
  CHECK(sig.sets.at("K")->str() == "{0,1}");
  CHECK(sig.functions.at("sq").fn.table() == std::vector<std::size_t>{2, 1, 2});
  CHECK(sig.functions.at("g").fn.table() == std::vector<std::size_t>{0, 2});
  CHECK(sig.subsets.at("Pos").str() == "{1}");
  CHECK(sig.subsets.at("Full").count() == 4);
  CHECK(sig.subsets.at("No").count() == 0);
}

TEST_CASE("presheaf signature loads") {
  const auto sig = load_signature(R"({
    "model": "presheaf",
    "categories": {
      "C": {"objects": ["a", "b"], "arrows": [{"name": "u", "src": "a", "dst": "b"}]},
      "M": {"monoid": {"elements": ["1", "e"], "table": [["1", "e"], ["e", "e"]], "unit": "1"}},
      "P": {"preorder": {"objects": ["x", "y", "z"], "leq": [["x", "y"], ["y", "z"], ["x", "z"]]}},
      "D": {"discrete": ["l", "r"]}
    },
    "functors": {"F": {"dom": "D", "cod": "C", "objects": {"l": "a", "r": "b"}}},
    "presheaves": {"S": {"base": "C", "values": {"a": ["s", "t"], "b": ["w"]}, "actions": {"u": {"s": "w", "t": "w"}}}},
    "monoid": {"H": "M"}
  })");
  CHECK(sig.categories.at("C")->num_arrows() == 3);
  CHECK(sig.categories.at("P")->num_arrows() == 6);
  CHECK(sig.functors.at("F").fn.obj(1) == 1);
  CHECK(sig.presheaves.at("S").value(0)->size() == 2);
  CHECK(sig.monoid_category == std::optional<std::string>("M"));
}

TEST_CASE("loader error kinds") {
  // unknown keys and malformed JSON
  CHECK(kind_of("{") == ErrorKind::parse);
  CHECK(kind_of(R"({"model": "subset", "colour": 1})") == ErrorKind::parse);
  CHECK(kind_of(R"({"model": "sets"})") == ErrorKind::parse);
  CHECK(kind_of(R"({"model": "subset", "sets": {"A": {"size": 2, "range": [0, 1]}}})") == ErrorKind::parse);
  CHECK(kind_of(R"({"model": "trivial", "subsets": {}})") == ErrorKind::parse);
  // dangling references
  CHECK(kind_of(R"({"model": "subset", "sets": {"P": {"product": ["A", "A"]}}})") == ErrorKind::ill_formed);
  CHECK(kind_of(R"({"model": "subset", "sets": {"A": {"size": 2}}, "subsets": {"S": {"of": "A", "elements": ["7"]}}})") ==
        ErrorKind::ill_formed);
  CHECK(kind_of(R"({"model": "subset", "sets": {"A": {"size": 2}},
                    "functions": {"f": {"dom": "A", "cod": "A", "rule": "x + 1"}}})") == ErrorKind::ill_formed);
  // tables that fail their checks
  CHECK(kind_of(R"({"model": "subset", "sets": {"A": {"size": 2}},
                    "functions": {"f": {"dom": "A", "cod": "A", "table": ["0"]}}})") == ErrorKind::structural);
  CHECK(kind_of(R"({"model": "subset", "sets": {"A": {"elements": ["a", "a"]}}})") == ErrorKind::structural);
  CHECK(kind_of(R"({"model": "presheaf", "categories": {"C": {"arrow": ["a", "b", "u"]}},
                    "presheaves": {"P": {"base": "C", "values": {"a": ["x"], "b": ["y"]}}}})") == ErrorKind::structural);
  CHECK(kind_of(R"({"model": "presheaf", "categories": {"C": {"preorder": {"objects": ["x", "y", "z"],
                    "leq": [["x", "y"], ["y", "z"]]}}}})") != ErrorKind::parse);
  // the multiplication functor needs commutativity
  CHECK(kind_of(R"({"model": "presheaf", "categories": {"C": {"arrow": ["a", "b", "u"]}}, "monoid": {"H": "C"}})") ==
        ErrorKind::validation);
}

TEST_CASE("claimed monoid tables are kept for the law suites") {
  const auto sig = load_signature(R"({
    "model": "subset", "sets": {"H": {"size": 2}},
    "monoid": {"H": "H", "table": [[0, 0], [0, 0]], "monoid": true}
  })");
  REQUIRE(sig.monoid);
  CHECK(sig.monoid->claims_monoid);
  CHECK_FALSE(sig.monoid->unit);
  CHECK_FALSE(monoid_claim(*sig.monoid).ok());
}
