#pragma once

// Reference corpus: trellis files plus a manifest of expected properties.
//
// manifest.json holds {"entries": [...]}. An entry has an "id" and one of
//   "file":  a trellis file in the corpus directory
//   "from" + "script":  a parent entry and a list of logged steps to replay
//   "field" + "code":  a bare code (generator words), for span checks only
// An entry with both "file" and "script" also checks that the replayed result
// is isomorphic to the file. Every expectation carries a "source" tag:
// published, derived or trivial.

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trellis_lab/report.hpp"

namespace trellis_lab {

struct CheckResult {
  std::string entry;
  std::string check;
  std::string source;
  bool pass = false;
  std::string expected;
  std::string actual;
};

struct CorpusReport {
  std::vector<CheckResult> results;
  std::size_t entries = 0;
  double seconds = 0;
  bool all_pass() const;
};

/// Runs the manifest in `dir`. With `only`, runs that entry and the entries
/// derived from it. Throws Error for unreadable or malformed manifests.
CorpusReport verify_corpus(const std::filesystem::path& dir, const std::optional<std::string>& only = std::nullopt);

json corpus_json(const CorpusReport& r);
std::string corpus_text(const CorpusReport& r);

}  // namespace trellis_lab
