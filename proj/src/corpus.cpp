#include "prefal/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "prefal/errors.hpp"

namespace prefal {

namespace {

using json = nlohmann::json;

CorpusEntry make(std::string name, std::string spec,
                 std::map<std::size_t, std::string> flags = {},
                 std::optional<std::string> verdict = std::nullopt,
                 std::vector<std::size_t> nu = {},
                 std::vector<std::string> up_set = {},
                 std::vector<std::string> up_prime = {}) {
  return CorpusEntry{std::move(name),   std::move(spec),
                     std::move(flags),  std::move(verdict),
                     std::move(nu),     std::move(up_set),
                     std::move(up_prime)};
}

std::vector<CorpusEntry> build() {
  std::vector<CorpusEntry> entries;

  entries.push_back(make("fibonacci", "morphic(0->01,1->0;0)", {},
                         "InPInfinity", {2, 2, 2, 2}, {"0", "01"},
                         {"01", "0"}));
  entries.push_back(make("tribonacci", "morphic(1->12,2->13,3->1;1)", {},
                         "InPInfinity", {4, 3, 4, 3}, {"1", "12", "1213"},
                         {"1213", "12", "1"}));
  entries.push_back(make("thue-morse", "morphic(0->01,1->10;0)",
                         {{1, "square_free"}}, "NotInP(2)", {3},
                         {"0", "01", "011"}, {"011", "01", "0"}));
  entries.push_back(make("ternary-thue-morse", "morphic(1->123,2->13,3->2;1)",
                         {{0, "square_free"}}, "NotInP(1)"));
  entries.push_back(make("fib-of-tm",
                         "image(0->01,1->0;morphic(0->01,1->10;0))",
                         {{2, "square_free"}}, "NotInP(3)", {2},
                         {"0", "01"}, {"01", "0"}));
  entries.push_back(
      make("fib2-of-tm",
           "image(0->01,1->0;image(0->01,1->0;morphic(0->01,1->10;0)))",
           {{3, "square_free"}}, "NotInP(4)", {2}));
  entries.push_back(make("nu5-block", "morphic(0->00001,1->0;0)", {},
                         "InPInfinity", {5, 5, 5}, {"0", "00001"},
                         {"00001", "0"}));
  entries.push_back(make("nu5-mixed", "morphic(0->00101,1->001;0)", {},
                         "InPInfinity", {5, 5, 5}, {"0", "001", "00101"},
                         {"00101", "001"}));
  entries.push_back(make("chain-pair", "morphic(1->12,2->1;1)", {},
                         "InPInfinity", {2, 2, 2, 2}, {"1", "12"},
                         {"12", "1"}));
  entries.push_back(make("chain-triple", "morphic(1->123,2->12,3->1;1)", {},
                         "InPInfinity", {3, 3, 3, 3}, {"1", "12", "123"},
                         {"123", "12", "1"}));
  entries.push_back(
      make("periodic-01", "periodic(01)", {}, "InPInfinity", {2}));
  entries.push_back(
      make("periodic-0011", "periodic(0011)", {}, "InPInfinity", {4}));
  entries.push_back(make("tenf-concat", "concat(10;morphic(0->01,1->0;0))",
                         {}, "Unresolved", {}, {"1", "10", "100"},
                         {"100", "10"}));

  // Sturmian battery: standard words and words with morphism chains
  // (nonsingular), singular words with shrinking normal forms, and the
  // boundary case where an R-morphism of a singular word turns standard.
  entries.push_back(make("st-fib", "sturm(dir=(01)*;pre=;chain=)", {},
                         "InPInfinity", {2, 2, 2, 2}));
  entries.push_back(make("st-fib-swap", "sturm(dir=(10)*;pre=;chain=)", {},
                         "InPInfinity", {2, 2, 2, 2}));
  entries.push_back(make("st-00-start", "sturm(dir=0(01)*;pre=;chain=)", {},
                         "InPInfinity"));
  entries.push_back(make("st-0011", "sturm(dir=(0011)*;pre=;chain=)", {},
                         "InPInfinity"));
  entries.push_back(make("st-001", "sturm(dir=(001)*;pre=;chain=)", {},
                         "InPInfinity"));
  entries.push_back(make("st-11-pre", "sturm(dir=11(10)*;pre=;chain=)", {},
                         "InPInfinity"));
  entries.push_back(make("st-chain-l0", "sturm(dir=(01)*;pre=;chain=L0)", {},
                         "InPInfinity"));
  entries.push_back(make("st-chain-l1l0",
                         "sturm(dir=(01)*;pre=;chain=L1 L0)", {},
                         "InPInfinity"));
  entries.push_back(make("st-chain-r0", "sturm(dir=(10)*;pre=;chain=R0)", {},
                         "InPInfinity"));
  entries.push_back(make("st-boundary-r0",
                         "sturm(dir=(01)*;pre=0;chain=R0)", {},
                         "InPInfinity"));
  entries.push_back(make("st-chain-r1l0",
                         "sturm(dir=(0011)*;pre=;chain=R1 L0)", {},
                         "InPInfinity"));
  entries.push_back(make("st-0f", "sturm(dir=(01)*;pre=0;chain=)", {},
                         "NotInP(1)"));
  entries.push_back(make("st-1f", "sturm(dir=(01)*;pre=1;chain=)", {},
                         "NotInP(1)"));
  entries.push_back(make("st-10f", "sturm(dir=(01)*;pre=10;chain=)", {},
                         "NotInP(2)", {}, {"1", "10", "100"}, {"100", "10"}));
  entries.push_back(make("st-010f", "sturm(dir=(01)*;pre=010;chain=)", {},
                         "NotInP(3)"));
  entries.push_back(make("st-1g", "sturm(dir=(10)*;pre=1;chain=)", {},
                         "NotInP(1)"));
  entries.push_back(make("st-01g", "sturm(dir=(10)*;pre=01;chain=)", {},
                         "NotInP(2)"));
  entries.push_back(make("st-l0-10f", "sturm(dir=(01)*;pre=10;chain=L0)", {},
                         "NotInP(3)"));
  entries.push_back(make("st-r1-10f", "sturm(dir=(01)*;pre=10;chain=R1)", {},
                         "NotInP(2)"));
  entries.push_back(make("st-0-0011", "sturm(dir=(0011)*;pre=0;chain=)", {},
                         "NotInP(1)"));
  entries.push_back(make("st-0-001", "sturm(dir=(001)*;pre=0;chain=)", {},
                         "NotInP(1)"));
  entries.push_back(make("st-r0-010f",
                         "sturm(dir=(01)*;pre=010;chain=R0)", {},
                         "NotInP(3)"));
  return entries;
}

json entry_to_json(const CorpusEntry& e) {
  json j;
  j["name"] = e.name;
  j["spec"] = e.spec;
  if (!e.level_flags.empty()) {
    json flags;
    for (const auto& [level, flag] : e.level_flags)
      flags[std::to_string(level)] = flag;
    j["flags"] = std::move(flags);
  }
  json expect;
  if (e.expect_verdict) expect["verdict"] = *e.expect_verdict;
  if (!e.expect_nu.empty()) expect["nu"] = e.expect_nu;
  if (!e.expect_up_set.empty()) expect["up_set"] = e.expect_up_set;
  if (!e.expect_up_prime.empty()) expect["up_prime"] = e.expect_up_prime;
  if (!expect.empty()) j["expect"] = std::move(expect);
  return j;
}

CorpusEntry entry_from_json(const json& j) {
  CorpusEntry e;
  e.name = j.at("name").get<std::string>();
  e.spec = j.at("spec").get<std::string>();
  if (j.contains("flags"))
    for (const auto& [key, value] : j.at("flags").items())
      e.level_flags[std::stoul(key)] = value.get<std::string>();
  if (j.contains("expect")) {
    const json& expect = j.at("expect");
    if (expect.contains("verdict"))
      e.expect_verdict = expect.at("verdict").get<std::string>();
    if (expect.contains("nu"))
      e.expect_nu = expect.at("nu").get<std::vector<std::size_t>>();
    if (expect.contains("up_set"))
      e.expect_up_set = expect.at("up_set").get<std::vector<std::string>>();
    if (expect.contains("up_prime"))
      e.expect_up_prime =
          expect.at("up_prime").get<std::vector<std::string>>();
  }
  return e;
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

const CorpusEntry* find_corpus_entry(const std::string& name) {
  for (const auto& e : builtin_corpus())
    if (e.name == name) return &e;
  return nullptr;
}

std::string builtin_corpus_json() {
  json j;
  j["schema"] = 1;
  json entries = json::array();
  for (const auto& e : builtin_corpus()) entries.push_back(entry_to_json(e));
  j["entries"] = std::move(entries);
  return j.dump(2);
}

std::vector<CorpusEntry> parse_corpus_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<CorpusEntry> out;
  for (const auto& ej : j.at("entries")) out.push_back(entry_from_json(ej));
  return out;
}

std::vector<CorpusEntry> corpus_from_env_or_builtin() {
  const char* path = std::getenv("PREFAL_CORPUS");
  if (!path || !*path) return builtin_corpus();
  std::ifstream in(path);
  if (!in) throw error(std::string("cannot open corpus file ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus_json(ss.str());
}

}  // namespace prefal
