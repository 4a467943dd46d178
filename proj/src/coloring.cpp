#include "prefal/coloring.hpp"

#include <algorithm>
#include <set>

namespace prefal {

Coloring::Coloring(std::vector<ColorRule> rules) : rules_(std::move(rules)) {
  if (rules_.empty() ||
      rules_.back().pred.kind != Predicate::Kind::Otherwise)
    throw error("coloring rules must end with an otherwise rule");
  for (std::size_t i = 0; i + 1 < rules_.size(); ++i)
    if (rules_[i].pred.kind == Predicate::Kind::Otherwise)
      throw error("otherwise rule must come last");
}

std::vector<std::string> Coloring::colors() const {
  std::vector<std::string> out;
  for (const auto& r : rules_)
    if (std::find(out.begin(), out.end(), r.color) == out.end())
      out.push_back(r.color);
  return out;
}

bool Coloring::prefix_pure(const std::string& color) const {
  bool any = false;
  for (const auto& r : rules_) {
    if (r.color != color) continue;
    any = true;
    if (r.pred.kind != Predicate::Kind::IsPrefix &&
        r.pred.kind != Predicate::Kind::IsPrefixEndingWith)
      return false;
  }
  return any;
}

namespace {

// Z-array over prefix(n): z[i] = length of the longest common prefix of
// x and x[i..]. Lets the DP test "x[q..p) is a prefix of x" in O(1).
std::vector<std::size_t> z_array(std::span<const Letter> s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> z(n, 0);
  if (n == 0) return z;
  z[0] = n;
  std::size_t l = 0, r = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (i < r) z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < n && s[z[i]] == s[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return z;
}

struct PieceContext {
  std::span<const Letter> p;
  const std::vector<std::size_t>* z;
};

bool matches(const Predicate& pred, const PieceContext& ctx, std::size_t from,
             std::size_t to) {
  const std::size_t len = to - from;
  switch (pred.kind) {
    case Predicate::Kind::IsPrefix:
      return (*ctx.z)[from] >= len;
    case Predicate::Kind::EndsWith:
      return ctx.p[to - 1] == pred.letter;
    case Predicate::Kind::IsPrefixEndingWith:
      return (*ctx.z)[from] >= len && ctx.p[to - 1] == pred.letter;
    case Predicate::Kind::LengthLessThan:
      return len < pred.k;
    case Predicate::Kind::MatchesWord:
      return len == pred.word.size() &&
             std::equal(pred.word.begin(), pred.word.end(),
                        ctx.p.begin() + from);
    case Predicate::Kind::Otherwise:
      return true;
  }
  return false;
}

std::size_t color_index(const Coloring& c, const PieceContext& ctx,
                        std::size_t from, std::size_t to) {
  const auto& rules = c.rules();
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (matches(rules[i].pred, ctx, from, to)) return i;
  throw error("coloring is not total");
}

struct CutPoints {
  std::vector<std::size_t> cuts{0};
  bool stalled = false;  // greedy died before reaching n
};

// Cut points of the greedy unbordered-prefix factorization up to n. When
// the greedy finds no matching piece before n, the factorization of the
// word into its own prefixes provably cannot pass that position at this
// bound, and the report says so.
CutPoints up_cut_points(const InfiniteWord& x, std::size_t n) {
  CutPoints out;
  UPAnalysis a;
  try {
    a = scan_up(x, std::max<std::size_t>(n, 2));
  } catch (const stall_error&) {
    out.stalled = true;
    return out;
  }
  if (a.up_set.empty()) {
    out.stalled = true;
    return out;
  }
  // Walk well past n: a stall just beyond the report window is still a
  // stall of the factorization of x into its scanned prefixes.
  const std::size_t horizon = n + 4 * a.N;
  std::size_t pos = 0;
  while (pos < horizon) {
    std::optional<std::size_t> best;
    for (std::size_t i = a.up_set.size(); i-- > 0;) {
      const FiniteWord& w = a.up_set[i];
      bool ok = true;
      try {
        for (std::size_t j = 0; j < w.size() && ok; ++j)
          ok = (x.at(pos + j) == w[j]);
      } catch (const stall_error&) {
        ok = false;
      }
      if (ok) {
        best = i;
        break;
      }
    }
    if (!best) {
      out.stalled = true;
      break;
    }
    pos += a.up_set[*best].size();
    if (pos <= n) out.cuts.push_back(pos);
  }
  return out;
}

}  // namespace

std::string color_of(const Coloring& c, const InfiniteWord& x,
                     std::size_t from, std::size_t to) {
  if (to <= from) throw error("pieces must be non-empty");
  auto p = x.prefix_span(to);
  auto z = z_array(p);
  PieceContext ctx{p, &z};
  return c.rules()[color_index(c, ctx, from, to)].color;
}

std::string color_of(const Coloring& c, const InfiniteWord& x,
                     const FiniteWord& u) {
  if (u.empty()) throw error("pieces must be non-empty");
  // Evaluate u as if it occurred at position 0..|u| against x's prefixes:
  // prefix predicates compare u itself with x.
  auto p = x.prefix_span(u.size());
  bool is_prefix = std::equal(u.begin(), u.end(), p.begin());
  for (const auto& r : c.rules()) {
    const Predicate& pr = r.pred;
    bool ok = false;
    switch (pr.kind) {
      case Predicate::Kind::IsPrefix: ok = is_prefix; break;
      case Predicate::Kind::EndsWith:
        ok = u[u.size() - 1] == pr.letter;
        break;
      case Predicate::Kind::IsPrefixEndingWith:
        ok = is_prefix && u[u.size() - 1] == pr.letter;
        break;
      case Predicate::Kind::LengthLessThan: ok = u.size() < pr.k; break;
      case Predicate::Kind::MatchesWord: ok = (u == pr.word); break;
      case Predicate::Kind::Otherwise: ok = true; break;
    }
    if (ok) return r.color;
  }
  throw error("coloring is not total");
}

bool FrontierReport::all_dead() const {
  for (const auto& [color, f] : per_color)
    if (!f.dead) return false;
  return true;
}

FrontierReport frontier(const InfiniteWord& x, const Coloring& c,
                        std::size_t n, std::size_t window) {
  if (n < 1) throw error("frontier length must be positive");
  if (window == 0) window = n / 2;
  FrontierReport report;
  report.n = n;
  report.window = window;

  // Cut points first: computing them materializes the stream further and
  // would invalidate any span taken beforehand.
  CutPoints cutpoints = up_cut_points(x, n);
  const std::vector<std::size_t>& cuts = cutpoints.cuts;
  std::vector<Letter> prefix_copy(x.prefix_span(n).begin(),
                                  x.prefix_span(n).end());
  std::span<const Letter> p(prefix_copy);
  auto z = z_array(p);
  PieceContext ctx{p, &z};
  auto colors = c.colors();

  for (const auto& color : colors) {
    ColorFrontier f;
    std::vector<bool> reach(n + 1, false);
    reach[0] = true;
    for (std::size_t q = 0; q < n; ++q) {
      if (!reach[q]) continue;
      for (std::size_t pp = q + 1; pp <= n; ++pp)
        if (!reach[pp] &&
            c.rules()[color_index(c, ctx, q, pp)].color == color)
          reach[pp] = true;
    }
    for (std::size_t i = 0; i <= n; ++i)
      if (reach[i]) f.reach.push_back(i);
    f.last = f.reach.back();

    std::size_t frontier_pos = f.last;
    if (c.prefix_pure(color)) {
      // Any infinite factorization into prefixes follows the cut points of
      // the unbordered-prefix factorization, so restrict the chain to them.
      std::vector<std::size_t> sus{0};
      std::set<std::size_t> cutset(cuts.begin(), cuts.end());
      std::set<std::size_t> sreach{0};
      for (std::size_t qi = 0; qi < cuts.size(); ++qi) {
        std::size_t q = cuts[qi];
        if (!sreach.count(q)) continue;
        for (std::size_t pi = qi + 1; pi < cuts.size(); ++pi) {
          std::size_t pp = cuts[pi];
          if (pp > n) break;
          if (c.rules()[color_index(c, ctx, q, pp)].color == color)
            sreach.insert(pp);
        }
      }
      sus.assign(sreach.begin(), sreach.end());
      f.sustained = sus;
      frontier_pos = sus.back();
      // Factorizations into prefixes refine into the unbordered-prefix
      // factorization; when that one stalls, no color sustained on
      // prefixes can pass the stall either.
      f.dead = cutpoints.stalled || frontier_pos + window < n;
    } else {
      f.dead = frontier_pos + window < n;
    }
    if (f.dead) f.dead_at = frontier_pos;
    report.per_color[color] = std::move(f);
  }
  return report;
}

std::pair<Coloring, FrontierReport> refute_via_P1(
    const InfiniteWord& x, const HierarchyVerdict& verdict, std::size_t n) {
  if (verdict.kind != HierarchyVerdict::Kind::NotInP || verdict.n != 1)
    throw error("verdict does not refute a prefixal factorization of the "
                "word itself");
  std::vector<ColorRule> rules;
  rules.push_back({Predicate{Predicate::Kind::IsPrefix, 0, 0, {}}, "prefix"});
  rules.push_back(
      {Predicate{Predicate::Kind::Otherwise, 0, 0, {}}, "nonprefix"});
  Coloring c(std::move(rules));
  FrontierReport report = frontier(x, c, n);
  if (!report.per_color.at("prefix").dead)
    throw error("prefix frontier did not die at this bound; raise it");
  return {std::move(c), std::move(report)};
}

}  // namespace prefal
