#include <doctest.h>

#include "helpers.hpp"
#include "prefal/coloring.hpp"
#include "prefal/report.hpp"

using namespace prefal;
using testutil::bin;
using testutil::word;

namespace {

Coloring phi_prime(const InfiniteWord& ctx) {
  return parse_coloring_spec(
      "coloring{ prefix_end(0)->c0; prefix_end(1)->c1; otherwise->c2 }",
      ctx.glyphs());
}

Coloring prefix_two_coloring(const InfiniteWord& ctx) {
  return parse_coloring_spec("coloring{ prefix->p; otherwise->np }",
                             ctx.glyphs());
}

}  // namespace

TEST_CASE("piece colors") {
  InfiniteWord tm = word(testutil::tm_spec());
  Coloring c = phi_prime(tm);
  CHECK(color_of(c, tm, bin("0110")) == "c0");
  CHECK(color_of(c, tm, bin("10")) == "c2");
  CHECK(color_of(c, tm, bin("011")) == "c1");
  CHECK_THROWS_AS(color_of(c, tm, FiniteWord({}, 2)), error);

  // The extension pattern: anything that is not a prefix gets the
  // out-of-band color regardless of the base rules.
  Coloring hat = prefix_two_coloring(tm);
  CHECK(color_of(hat, tm, bin("1")) == "np");
  CHECK(color_of(hat, tm, bin("011010")) == "p");
}

TEST_CASE("frontier on the overlap-free word") {
  InfiniteWord tm = word(testutil::tm_spec());
  FrontierReport report = frontier(tm, phi_prime(tm), 64);
  // The first piece of any factorization is a prefix, so the out-of-band
  // color dies immediately.
  CHECK(report.per_color.at("c2").dead);
  CHECK(report.per_color.at("c2").dead_at == 0);
  // Single whole-prefix pieces keep c0/c1 reachable at every bound; the
  // report must say so honestly.
  CHECK(!report.per_color.at("c0").dead);
  CHECK(report.per_color.at("c0").sustained.has_value());
}

TEST_CASE("frontier on a periodic word stays alive on the prefix color") {
  InfiniteWord p01 = word("periodic(01)");
  FrontierReport report = frontier(p01, prefix_two_coloring(p01), 64);
  const ColorFrontier& f = report.per_color.at("p");
  CHECK(!f.dead);
  for (std::size_t cut : {0u, 2u, 4u, 6u, 8u})
    CHECK(std::find(f.reach.begin(), f.reach.end(), cut) != f.reach.end());
}

TEST_CASE("frontier on the golden word stays alive") {
  InfiniteWord fib = word(testutil::fib_spec());
  FrontierReport report = frontier(fib, prefix_two_coloring(fib), 64);
  CHECK(!report.per_color.at("p").dead);
}

TEST_CASE("frontier monotonicity") {
  InfiniteWord tm = word(testutil::tm_spec());
  Coloring c = phi_prime(tm);
  FrontierReport small = frontier(tm, c, 24);
  FrontierReport big = frontier(tm, c, 48);
  for (const auto& [color, f] : small.per_color) {
    const auto& g = big.per_color.at(color);
    for (std::size_t cut : f.reach)
      CHECK(std::find(g.reach.begin(), g.reach.end(), cut) !=
            g.reach.end());
  }
}

TEST_CASE("refutation colorings") {
  InfiniteWord zf = word("sturm(dir=(01)*;pre=0;chain=)");
  auto hr = classify_hierarchy(zf, ChainOptions{});
  auto [coloring, report] = refute_via_P1(zf, hr.verdict);
  CHECK(report.per_color.at("prefix").dead);
  CHECK(report.per_color.at("nonprefix").dead);

  // The overlap-free word itself admits a prefixal factorization: its
  // verdict refutes level 1, not level 0, and is rejected here.
  ChainOptions tm_opt;
  tm_opt.level_flags[1] = "square_free";
  auto tm_result =
      classify_hierarchy(word(testutil::tm_spec()), tm_opt);
  CHECK_THROWS_AS(refute_via_P1(word(testutil::tm_spec()), tm_result.verdict),
                  error);

  // The square-free ternary word is refuted at its own level.
  ChainOptions t3_opt;
  t3_opt.level_flags[0] = "square_free";
  InfiniteWord ternary = word("morphic(1->123,2->13,3->2;1)");
  auto t3 = classify_hierarchy(ternary, t3_opt);
  auto [c3, r3] = refute_via_P1(ternary, t3.verdict);
  CHECK(r3.per_color.at("prefix").dead);
}

TEST_CASE("stalling words kill the prefix frontier at the same bound") {
  for (const std::string& spec :
       {std::string("sturm(dir=(01)*;pre=0;chain=)"),
        std::string("sturm(dir=(10)*;pre=1;chain=)")}) {
    InfiniteWord x = word(spec);
    FrontierReport report = frontier(x, prefix_two_coloring(x), 96);
    CHECK(report.per_color.at("p").dead);
  }
}
