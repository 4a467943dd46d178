#include <doctest.h>

#include "helpers.hpp"
#include "prefal/corpus.hpp"
#include "prefal/prefactor.hpp"
#include "prefal/report.hpp"

using namespace prefal;
using testutil::bin;
using testutil::word;

namespace {

std::vector<std::string> rendered(const std::vector<FiniteWord>& ws,
                                  const std::string& glyphs) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(render(w, glyphs));
  return out;
}

}  // namespace

TEST_CASE("scan_up finds the paper prefix sets") {
  auto fib = scan_up(word(testutil::fib_spec()), 64);
  CHECK(rendered(fib.up_set, "01") == std::vector<std::string>{"0", "01"});
  CHECK(fib.N == 2);

  auto tm = scan_up(word(testutil::tm_spec()), 64);
  CHECK(rendered(tm.up_set, "01") ==
        std::vector<std::string>{"0", "01", "011"});
  CHECK(tm.N == 3);

  auto tenf = scan_up(word("concat(10;morphic(0->01,1->0;0))"), 64);
  CHECK(rendered(tenf.up_set, "01") ==
        std::vector<std::string>{"1", "10", "100"});
  CHECK(tenf.N == 3);
  CHECK(rendered(tenf.up_prime, "01") ==
        std::vector<std::string>{"100", "10"});
}

TEST_CASE("greedy factorization matches the paper") {
  InfiniteWord fib = word(testutil::fib_spec());
  auto fa = scan_up(fib, 64);
  auto pieces = greedy_factorize(fib, fa, 16);
  std::string flat;
  for (const auto& p : pieces) flat += "(" + render(p, "01") + ")";
  // Matches the derived word 1211212112112121... piece for piece.
  CHECK(flat ==
        "(01)(0)(01)(01)(0)(01)(0)(01)(01)(0)(01)(01)(0)(01)(0)(01)");

  InfiniteWord trib = word(testutil::trib_spec());
  auto ta = scan_up(trib, 64);
  auto tp = greedy_factorize(trib, ta, 8);
  std::string tflat;
  for (const auto& p : tp) tflat += "(" + render(p, "123") + ")";
  CHECK(tflat == "(1213)(12)(1)(1213)(12)(1213)(12)(1)");
}

TEST_CASE("greedy factorization stalls on a single letter before a standard "
          "word") {
  InfiniteWord zf = word("sturm(dir=(01)*;pre=0;chain=)");
  auto a = scan_up(zf, 64);
  CHECK_THROWS_AS(greedy_factorize(zf, a, 64), stall_error);
}

TEST_CASE("derived words") {
  InfiniteWord fib = word(testutil::fib_spec());
  CHECK(derive(fib, testutil::analyzed(fib, 64)).render_prefix(19) ==
        "1211212112112121121");

  InfiniteWord trib = word(testutil::trib_spec());
  CHECK(derive(trib, testutil::analyzed(trib, 64)).render_prefix(18) ==
        "123121231123121231");

  InfiniteWord p01 = word("periodic(01)");
  CHECK(derive(p01, testutil::analyzed(p01, 64)).render_prefix(6) ==
        "111111");
}

TEST_CASE("certificates") {
  CHECK(testutil::analyzed(word(testutil::trib_spec())).certified());
  auto tm = testutil::analyzed(word(testutil::tm_spec()));
  CHECK(tm.certified());
  CHECK(rendered(tm.up_set, "01") ==
        std::vector<std::string>{"0", "01", "011"});

  // Square-free fixed point: the table cannot close, stays bounded.
  auto ternary = testutil::analyzed(word("morphic(1->123,2->13,3->2;1)"));
  CHECK(!ternary.certified());

  // Periodic words certify through the greedy cut cycle.
  auto p = testutil::analyzed(word("periodic(0011)"));
  CHECK(p.certified());
  CHECK(p.delta_period.has_value());
}

TEST_CASE("derived chains of the paper examples") {
  ChainOptions opt;
  auto trib = derived_chain(word(testutil::trib_spec()), opt);
  REQUIRE(trib.nu.size() == 4);
  CHECK(trib.nu[0].value == 4);
  CHECK(trib.nu[1].value == 3);
  CHECK(trib.nu[2].value == 4);
  CHECK(trib.nu[3].value == 3);
  REQUIRE(trib.cycle.has_value());
  CHECK(*trib.cycle == std::pair<std::size_t, std::size_t>{0, 2});

  opt.depth = 3;
  auto fib = derived_chain(word(testutil::fib_spec()), opt);
  REQUIRE(fib.nu.size() == 3);
  for (const auto& e : fib.nu) {
    CHECK(e.value == 2);
    CHECK(e.exact);
  }
  REQUIRE(fib.cycle.has_value());
  CHECK(*fib.cycle == std::pair<std::size_t, std::size_t>{0, 1});

  for (const std::string& spec :
       {std::string("morphic(0->00001,1->0;0)"),
        std::string("morphic(0->00101,1->001;0)")}) {
    auto chain = derived_chain(word(spec), opt);
    REQUIRE(chain.nu.size() == 3);
    for (const auto& e : chain.nu) {
      CHECK(e.value == 5);
      CHECK(e.exact);
    }
  }
}

TEST_CASE("hierarchy classification") {
  ChainOptions opt;
  opt.level_flags[1] = "square_free";
  auto tm = classify_hierarchy(word(testutil::tm_spec()), opt);
  CHECK(tm.verdict.kind == HierarchyVerdict::Kind::NotInP);
  CHECK(tm.verdict.n == 2);

  ChainOptions ft_opt;
  ft_opt.level_flags[2] = "square_free";
  auto ft = classify_hierarchy(
      word("image(0->01,1->0;morphic(0->01,1->10;0))"), ft_opt);
  CHECK(ft.verdict.kind == HierarchyVerdict::Kind::NotInP);
  CHECK(ft.verdict.n == 3);

  auto trib = classify_hierarchy(word(testutil::trib_spec()), ChainOptions{});
  CHECK(trib.verdict.kind == HierarchyVerdict::Kind::InPInfinityCertified);
}

TEST_CASE("flags that contradict the stream are bug traps") {
  ChainOptions opt;
  opt.level_flags[0] = "square_free";
  CHECK_THROWS_AS(classify_hierarchy(word(testutil::fib_spec()), opt),
                  error);
}

TEST_CASE("refine prefixal factorizations") {
  InfiniteWord tm = word(testutil::tm_spec());
  auto a = testutil::analyzed(tm, 64);
  REQUIRE(a.certified());

  auto refined =
      refine_prefixal(tm, {bin("011"), bin("01"), bin("0")}, a);
  REQUIRE(refined.size() == 3);
  CHECK(render(refined[0], "123") == "1");
  CHECK(render(refined[1], "123") == "2");
  CHECK(render(refined[2], "123") == "3");

  CHECK_THROWS_AS(refine_prefixal(tm, {bin("01"), bin("10")}, a), error);

  // Applying the defining morphism to the unbordered-prefix factorization
  // refines into the derived morphism's images.
  Morphism tau({bin("01"), bin("10")}, 2);
  auto pieces = greedy_factorize(tm, a, 12);
  std::vector<FiniteWord> mapped;
  for (const auto& p : pieces) mapped.push_back(tau.apply(p));
  auto codes = refine_prefixal(tm, mapped, a);
  FiniteWord flattened({}, 3);
  for (const auto& c : codes) flattened = flattened.concat(c);
  InfiniteWord delta = derive(tm, a);
  CHECK(flattened == delta.prefix(flattened.size()));
}

TEST_CASE("phi reconstruction across the corpus") {
  for (const auto& entry : builtin_corpus()) {
    InfiniteWord x = parse_word_spec(entry.spec);
    if (entry.level_flags.count(0)) continue;  // refuted at the root
    UPAnalysis a;
    try {
      a = testutil::analyzed(x);
    } catch (const stall_error&) {
      continue;
    }
    if (!a.certified()) continue;
    InfiniteWord delta = derive(x, a);
    Morphism phi(a.phi.codewords, x.alphabet_size());
    InfiniteWord rebuilt = InfiniteWord::image(phi, delta, x.glyphs());
    CHECK(rebuilt.prefix(512) == x.prefix(512));
  }
}

TEST_CASE("first-occurrence order is sound on every chain level") {
  for (const std::string& spec :
       {testutil::fib_spec(), testutil::trib_spec(),
        std::string("morphic(0->00101,1->001;0)"),
        std::string("sturm_std((0011)*)")}) {
    ChainOptions opt;
    auto chain = derived_chain(word(spec), opt);
    for (const auto& level : chain.levels) {
      if (!level.analysis || !level.analysis->certified()) continue;
      InfiniteWord d = derive(level.word, *level.analysis);
      auto p = d.prefix(256);
      Letter next_new = 0;
      for (Letter s : p.symbols()) {
        if (s == next_new)
          ++next_new;  // a fresh code letter, in order
        else
          CHECK(s < next_new);
      }
      CHECK(next_new == level.analysis->phi.code_alphabet());
    }
  }
}

TEST_CASE("hierarchy strictness for iterated images") {
  const CorpusEntry* names[3] = {find_corpus_entry("thue-morse"),
                                 find_corpus_entry("fib-of-tm"),
                                 find_corpus_entry("fib2-of-tm")};
  for (std::size_t n = 0; n < 3; ++n) {
    REQUIRE(names[n] != nullptr);
    ChainOptions opt;
    opt.level_flags = names[n]->level_flags;
    auto result = classify_hierarchy(parse_word_spec(names[n]->spec), opt);
    CHECK(result.verdict.kind == HierarchyVerdict::Kind::NotInP);
    CHECK(result.verdict.n == n + 2);
  }
}

TEST_CASE("nu identically 2 forces the Fibonacci word up to isomorphism") {
  InfiniteWord fib = word(testutil::fib_spec());
  for (const auto& entry : builtin_corpus()) {
    InfiniteWord x = parse_word_spec(entry.spec);
    ChainOptions opt;
    opt.level_flags = entry.level_flags;
    DerivedChain chain;
    try {
      chain = derived_chain(x, opt);
    } catch (const error&) {
      continue;
    }
    if (chain.nu.size() < 4) continue;
    bool all_two = true;
    for (const auto& e : chain.nu) all_two = all_two && e.exact &&
                                             e.value == 2;
    if (!all_two) continue;
    CHECK(word_isomorphism(x.prefix(1024), fib.prefix(1024)).has_value());
  }
}
