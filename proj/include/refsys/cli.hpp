#ifndef REFSYS_CLI_HPP
#define REFSYS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace refsys {

// Exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,          // derivable / triple holds / laws pass
  kExitNo = 1,          // underivable / triple fails / a law fails
  kExitIllFormed = 2,   // the judgment does not typecheck
  kExitInvalid = 3,     // parse, validation, capability or usage errors
};

// Runs the command line (without the program name). Reports go to out,
// diagnostics to err; with --json, errors are reported on out as well.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ParsedJudgment {
  std::string subject;
  std::vector<std::string> expr;  // empty for subtyping
  std::string object;
  bool subtyping = false;
};

// "S <=[f;g] T", "S =[f]=> T" or "S <= T"; whitespace is ignored.
ParsedJudgment parse_judgment(const std::string& text);
std::string normalize(const ParsedJudgment& j);

struct ParsedTriple {
  std::string pre;
  std::vector<std::string> commands;  // "skip" or nothing is the empty sequence
  std::string post;
};

// "{P} c1;c2 {Q}"
ParsedTriple parse_triple(const std::string& text);

}  // namespace refsys

#endif
