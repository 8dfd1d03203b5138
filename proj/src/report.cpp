#include "refsys/report.hpp"

#include "refsys/kernel.hpp"

namespace refsys {

std::string CheckReport::str() const {
  std::string out = name + ": " + (ok() ? "pass" : "FAIL") + " (" + std::to_string(instances) +
                    " instances";
  if (failed) out += ", " + std::to_string(failed) + " failed";
  if (skipped) out += ", " + std::to_string(skipped) + " skipped at the carrier bound";
  out += ")";
  for (const auto& c : counterexamples) out += "\n  counterexample: " + c;
  for (const auto& c : skip_notes) out += "\n  skipped: " + c;
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::derivable: return "derivable";
    case Verdict::underivable: return "underivable";
    case Verdict::ill_formed: return "ill-formed";
  }
  return "unknown";
}

}  // namespace refsys
