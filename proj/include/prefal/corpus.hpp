#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace prefal {

/// One corpus word: a spec, optional structural flags consumed by the
/// hierarchy classifier, and expected outcomes used by corpus-run and the
/// acceptance suite.
struct CorpusEntry {
  std::string name;
  std::string spec;
  /// level index -> flag; "square_free" marks a derivation level known to
  /// be square-free (hence without a prefixal factorization).
  std::map<std::size_t, std::string> level_flags;
  std::optional<std::string> expect_verdict;
  std::vector<std::size_t> expect_nu;          // empty = unchecked
  std::vector<std::string> expect_up_set;      // rendered; empty = unchecked
  std::vector<std::string> expect_up_prime;
};

const std::vector<CorpusEntry>& builtin_corpus();
const CorpusEntry* find_corpus_entry(const std::string& name);

/// Corpus as shipped, serialized; PREFAL_CORPUS may point at a file with
/// the same schema to replace it.
std::string builtin_corpus_json();
std::vector<CorpusEntry> parse_corpus_json(const std::string& text);
std::vector<CorpusEntry> corpus_from_env_or_builtin();

}  // namespace prefal
