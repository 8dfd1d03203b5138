#ifndef REFSYS_REPORT_HPP
#define REFSYS_REPORT_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace refsys {

// Outcome of a law sweep: how many instances were checked and which failed.
struct CheckReport {
  CheckReport() = default;
  CheckReport(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t instances = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // instances beyond the carrier bound
  std::vector<std::string> counterexamples;  // first few failures, verbatim
  std::vector<std::string> skip_notes;

  static constexpr std::size_t kKeep = 5;

  bool ok() const { return failed == 0; }
  void pass() { ++instances; }
  void record(bool ok, const std::string& what) {
    ++instances;
    if (!ok) note(what);
  }
  void note(const std::string& what) {
    ++failed;
    if (counterexamples.size() < kKeep) counterexamples.push_back(what);
  }
  void skip(const std::string& what) {
    ++skipped;
    if (skip_notes.size() < kKeep) skip_notes.push_back(what);
  }
  void merge(const CheckReport& other) {
    instances += other.instances;
    failed += other.failed;
    skipped += other.skipped;
    for (const auto& c : other.skip_notes)
      if (skip_notes.size() < kKeep) skip_notes.push_back(other.name + ": " + c);
    for (const auto& c : other.counterexamples)
      if (counterexamples.size() < kKeep) counterexamples.push_back(other.name + ": " + c);
  }
  std::string str() const;
};

}  // namespace refsys

#endif
