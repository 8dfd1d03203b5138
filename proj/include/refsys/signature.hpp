#ifndef REFSYS_SIGNATURE_HPP
#define REFSYS_SIGNATURE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refsys/fincat.hpp"
#include "refsys/model_presheaf.hpp"
#include "refsys/model_subset.hpp"
#include "refsys/sweeps.hpp"

namespace refsys {

enum class ModelKind { subset, presheaf, trivial };

const char* to_string(ModelKind k);

struct AdjunctionSpec {
  std::string kind;    // identity | continuation
  std::string answer;  // subset name, continuation only
};

// A loaded signature file. Maps are keyed by the names used in the file, so
// iteration order (and every report built from it) is deterministic.
struct Signature {
  ModelKind model = ModelKind::subset;
  std::string description;
  std::map<std::string, SetRef> sets;
  std::map<std::string, SubExpr> functions;
  std::map<std::string, Subset> subsets;
  std::map<std::string, CatRef> categories;
  std::map<std::string, PshExpr> functors;
  std::map<std::string, Presheaf> presheaves;
  std::optional<SepTable> monoid;              // subset model
  std::optional<std::string> monoid_category;  // presheaf model: a one-object category
  bool monoid_claimed = false;
  std::optional<HoareProgram> program;
  std::optional<AdjunctionSpec> adjunction;
};

// Throws Error(parse) on malformed JSON or unknown keys, Error(structural /
// validation) when tables fail their checks, Error(ill_formed) on dangling
// references.
Signature load_signature(const std::string& json_text);
Signature load_signature_file(const std::string& path);

// Integer expressions over one variable x, used by "where" and "rule":
// literals, x, + - * / %, comparisons, and/or/not, parentheses. Comparisons
// and connectives yield 0 or 1.
long long eval_int_expr(const std::string& src, long long x);

}  // namespace refsys

#endif
