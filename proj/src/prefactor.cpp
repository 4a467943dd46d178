#include "prefal/prefactor.hpp"

#include <algorithm>
#include <set>

#include "prefal/sturmian.hpp"

namespace prefal {

namespace {

// Longest up_set member (members sorted by increasing length) matching x at
// position pos, or nullopt. Materializes parent symbols as needed.
std::optional<std::size_t> longest_match(const InfiniteWord& x,
                                         const std::vector<FiniteWord>& up_set,
                                         std::size_t pos) {
  for (std::size_t i = up_set.size(); i-- > 0;) {
    const FiniteWord& w = up_set[i];
    bool ok = true;
    for (std::size_t j = 0; j < w.size() && ok; ++j)
      ok = (x.at(pos + j) == w[j]);
    if (ok) return i;
  }
  return std::nullopt;
}

// Walks the greedy factorization from position 0 while cut < horizon,
// recording first occurrences. Returns the stall position if any.
std::optional<std::size_t> collect_up_prime(
    const InfiniteWord& x, const std::vector<FiniteWord>& up_set,
    std::size_t horizon, std::vector<FiniteWord>& up_prime) {
  std::vector<bool> seen(up_set.size(), false);
  std::size_t pos = 0;
  while (pos < horizon) {
    std::optional<std::size_t> m;
    try {
      m = longest_match(x, up_set, pos);
    } catch (const stall_error&) {
      return pos;  // parent stream itself ran dry
    }
    if (!m) return pos;
    if (!seen[*m]) {
      seen[*m] = true;
      up_prime.push_back(up_set[*m]);
    }
    pos += up_set[*m].size();
  }
  return std::nullopt;
}

CodeTable table_of(const std::vector<FiniteWord>& up_prime) {
  return CodeTable{up_prime};
}

}  // namespace

UPAnalysis scan_up(const InfiniteWord& x, std::size_t L) {
  if (L < 2) throw error("scan bound must be at least 2");
  UPAnalysis a;
  x.try_ensure(L);
  std::size_t have = std::min(L, x.materialized());
  if (have == 0) x.ensure(1);  // re-throw the stall: nothing to analyze
  have = std::min(L, x.materialized());
  a.scan_bound = have;
  auto p = x.prefix_span(have);
  auto table = border_table(p);
  for (std::size_t len = 1; len <= have; ++len) {
    if (table[len - 1] == 0) {
      a.up_set.push_back(x.prefix(len));
      a.N = len;
    }
  }
  a.stall_position = collect_up_prime(x, a.up_set, have, a.up_prime);
  a.phi = table_of(a.up_prime);
  a.completeness = Completeness::BoundedOnly;
  return a;
}

std::vector<FiniteWord> greedy_factorize(const InfiniteWord& x,
                                         const UPAnalysis& a, std::size_t m) {
  if (a.up_set.empty()) throw error("analysis has no unbordered prefixes");
  std::vector<FiniteWord> pieces;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < m; ++k) {
    auto match = longest_match(x, a.up_set, pos);
    if (!match)
      throw stall_error(pos, "factorization stalls at position " +
                                 std::to_string(pos));
    pieces.push_back(a.up_set[*match]);
    pos += a.up_set[*match].size();
  }
  return pieces;
}

InfiniteWord derive(const InfiniteWord& x, const UPAnalysis& a) {
  // A certified analysis knows the exact code alphabet; bounded ones work
  // under the safe |up_set| cap.
  Letter alphabet = a.certified()
                        ? static_cast<Letter>(a.up_prime.size())
                        : static_cast<Letter>(a.up_set.size());
  return InfiniteWord::derived_stream(x, a.up_set, a.up_prime, alphabet);
}

namespace {

// Fixed-point certificate: build the derived morphism from the analysis
// table and check that the coded fixed point reproduces x. Closing exactly
// exhibits the prefixal factorization x = phi(fixed point), which bounds
// every unbordered prefix by the first piece.
bool certify_morphic(const InfiniteWord& x, const MorphicInfo& info,
                     UPAnalysis& a, std::size_t verify_len) {
  if (a.up_prime.empty() || a.stall_position) return false;
  if (a.up_prime[0].size() != a.N) return false;
  Morphism tau_prime = [&]() -> Morphism {
    return derived_morphism(info.m, a.phi);
  }();
  if (!tau_prime.prolongable_on(0)) return false;
  InfiniteWord coded = InfiniteWord::morphic(
      tau_prime, 0, code_glyphs(tau_prime.domain_size()));
  Morphism phi_m(a.phi.codewords, x.alphabet_size());
  InfiniteWord rebuilt = InfiniteWord::image(phi_m, coded, x.glyphs());
  auto want = x.prefix_span(verify_len);
  auto got = rebuilt.prefix_span(verify_len);
  if (!std::equal(want.begin(), want.end(), got.begin())) return false;
  a.tau_prime = std::move(tau_prime);
  a.completeness = Completeness::Certified;
  a.certificate = "fixed-point morphism closes over the prefix table";
  return true;
}

// Eventually periodic words v·u^ω: run the greedy factorization tracking
// cut positions inside the periodic zone; a repeated cut (mod |u|) closes
// an infinite prefixal factorization. The piece types seen up to the repeat
// are exactly the ones the factorization ever uses.
bool certify_eventually_periodic(const InfiniteWord& x, const FiniteWord& pre,
                                 const FiniteWord& period, UPAnalysis& a) {
  constexpr std::size_t kNoCut = static_cast<std::size_t>(-1);
  const std::size_t v = pre.size(), p = period.size();
  std::size_t need = v + 2 * p + 2;
  if (a.scan_bound < need || a.N >= a.scan_bound)
    a = scan_up(x, std::max(need, 2 * a.scan_bound + 64));

  std::vector<std::size_t> piece_seq;  // indices into up_set
  std::vector<std::size_t> cut_index(p, kNoCut);
  std::size_t pos = 0;
  std::size_t cycle_start = kNoCut;
  while (true) {
    if (pos >= v) {
      std::size_t state = (pos - v) % p;
      if (cut_index[state] != kNoCut) {
        cycle_start = cut_index[state];
        break;
      }
      cut_index[state] = piece_seq.size();
    }
    auto m = longest_match(x, a.up_set, pos);
    if (!m) return false;  // stall; leave bounded
    piece_seq.push_back(*m);
    pos += a.up_set[*m].size();
  }
  constexpr Letter kNone = static_cast<Letter>(-1);
  std::vector<Letter> code_of(a.up_set.size(), kNone);
  std::vector<FiniteWord> prime;
  std::vector<Letter> codes;
  for (std::size_t m : piece_seq) {
    if (code_of[m] == kNone) {
      code_of[m] = static_cast<Letter>(prime.size());
      prime.push_back(a.up_set[m]);
    }
    codes.push_back(code_of[m]);
  }
  a.up_prime = prime;
  a.phi = table_of(prime);
  a.stall_position.reset();
  a.delta_preperiod = FiniteWord(
      std::vector<Letter>(codes.begin(), codes.begin() + cycle_start),
      static_cast<Letter>(prime.size()));
  a.delta_period = FiniteWord(
      std::vector<Letter>(codes.begin() + cycle_start, codes.end()),
      static_cast<Letter>(prime.size()));
  a.completeness = Completeness::Certified;
  a.certificate = "greedy factorization cycles over the period";
  return true;
}

bool certify_sturmian_carrier(const InfiniteWord& x, UPAnalysis& a) {
  const SturmianCarrierInfo* info = x.sturmian_carrier();
  if (!info) return false;
  if (info->form == SturmianCarrierInfo::Form::Singular &&
      info->u.size() == 1)
    return false;  // no prefixal factorization at all
  auto [U, V] = up_pair(x);
  if (U.size() > a.scan_bound) a = scan_up(x, U.size() + 2);
  if (a.N != U.size() || a.up_set.empty() ||
      !(a.up_set.back() == U))
    throw error("internal: scanned prefixes disagree with the "
                "desubstitution pair");
  a.up_prime = {U, V};
  a.phi = table_of(a.up_prime);
  a.stall_position.reset();
  a.completeness = Completeness::Certified;
  a.certificate = "two-prefix pair computed by desubstitution";
  return true;
}

}  // namespace

UPAnalysis certify_up(const InfiniteWord& x, UPAnalysis a,
                      std::size_t verify_len) {
  if (a.certified()) return a;
  if (x.sturmian_carrier()) {
    // Exact; failures here are bug traps and propagate.
    certify_sturmian_carrier(x, a);
    return a;
  }
  try {
    if (const MorphicInfo* mi = x.morphic_info()) {
      certify_morphic(x, *mi, a, verify_len);
      return a;
    }
    if (const PeriodicInfo* pi = x.periodic_info()) {
      certify_eventually_periodic(x, FiniteWord({}, x.alphabet_size()),
                                  pi->period, a);
      return a;
    }
    auto [pre, tail] = x.concat_info();
    if (pre && tail) {
      if (const PeriodicInfo* pti = tail->periodic_info()) {
        certify_eventually_periodic(x, *pre, pti->period, a);
        return a;
      }
    }
  } catch (const stall_error&) {
    // downgrade, never a wrong upgrade
  } catch (const decode_error&) {
  } catch (const error&) {
  }
  return a;
}

std::vector<FiniteWord> refine_prefixal(const InfiniteWord& x,
                                        const std::vector<FiniteWord>& pieces,
                                        const UPAnalysis& a) {
  if (!a.certified())
    throw error("refinement needs a certified analysis");
  std::size_t pos = 0;
  std::vector<FiniteWord> out;
  for (const FiniteWord& piece : pieces) {
    if (piece.empty()) throw error("pieces must be non-empty");
    for (std::size_t j = 0; j < piece.size(); ++j)
      if (x.at(j) != piece[j])
        throw error("piece is not a prefix of the word");
    for (std::size_t j = 0; j < piece.size(); ++j)
      if (x.at(pos + j) != piece[j])
        throw error("pieces do not concatenate along the word");
    auto codes = decode(a.phi, piece);
    if (!codes)
      throw error("piece boundary falls inside an unbordered-prefix piece");
    out.emplace_back(std::move(*codes), a.phi.code_alphabet());
    pos += piece.size();
  }
  return out;
}

bool square_free_prefix(const InfiniteWord& x, std::size_t bound) {
  auto p = x.prefix_span(bound);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t len = 1; i + 2 * len <= p.size(); ++len) {
      bool eq = true;
      for (std::size_t j = 0; j < len && eq; ++j)
        eq = (p[i + j] == p[i + len + j]);
      if (eq) return false;
    }
  }
  return true;
}

namespace {

InfiniteWord next_level(const InfiniteWord& word, const UPAnalysis& a) {
  if (word.sturmian_carrier() && a.certified())
    return sturmian_chain_next(word);
  if (a.tau_prime)
    return InfiniteWord::morphic(*a.tau_prime, 0,
                                 code_glyphs(a.tau_prime->domain_size()));
  if (a.delta_period) {
    InfiniteWord tail = InfiniteWord::periodic(
        *a.delta_period, code_glyphs(a.phi.code_alphabet()));
    if (a.delta_preperiod && !a.delta_preperiod->empty())
      return InfiniteWord::concatenation(*a.delta_preperiod, tail);
    return tail;
  }
  return derive(word, a);
}

// Exact structural matches first, then prefix isomorphism at length 512.
std::optional<std::string> cycle_equivalent(const InfiniteWord& a,
                                            const InfiniteWord& b) {
  const MorphicInfo* ma = a.morphic_info();
  const MorphicInfo* mb = b.morphic_info();
  if (ma && mb && ma->seed == mb->seed && ma->m == mb->m) return "morphism";
  const SturmianCarrierInfo* sa = a.sturmian_carrier();
  const SturmianCarrierInfo* sb = b.sturmian_carrier();
  if (sa && sb && sa->form == sb->form &&
      sa->form != SturmianCarrierInfo::Form::Opaque) {
    if (sa->directive && sb->directive && *sa->directive == *sb->directive &&
        sa->u == sb->u)
      return "structure";
  }
  constexpr std::size_t kIso = 512;
  if (!a.try_ensure(kIso) || !b.try_ensure(kIso)) return std::nullopt;
  if (word_isomorphism(a.prefix_span(kIso), b.prefix_span(kIso)))
    return "prefix-isomorphism";
  return std::nullopt;
}

}  // namespace

DerivedChain derived_chain(const InfiniteWord& x, const ChainOptions& opt) {
  DerivedChain chain;
  InfiniteWord word = x;
  for (std::size_t k = 0; k < opt.depth; ++k) {
    ChainLevel level{word, std::nullopt, false, ""};

    auto flag = opt.level_flags.find(k);
    if (flag != opt.level_flags.end() && flag->second == "square_free") {
      std::size_t check = std::min<std::size_t>(200, opt.scan_bound);
      if (!square_free_prefix(word, check))
        throw error("square-free flag contradicts the stream at level " +
                    std::to_string(k));
      level.refutes_p1 = true;
      level.note = "square-free (corpus flag); a prefixal factorization "
                   "would force a square";
      chain.refuted_level = k;
      chain.refutation = level.note;
      chain.levels.push_back(std::move(level));
      return chain;
    }
    if (const SturmianCarrierInfo* sc = word.sturmian_carrier()) {
      if (sc->form == SturmianCarrierInfo::Form::Singular &&
          sc->u.size() == 1) {
        level.refutes_p1 = true;
        level.note = "single letter before a standard word: unbordered "
                     "prefixes are unbounded";
        chain.refuted_level = k;
        chain.refutation = level.note;
        chain.levels.push_back(std::move(level));
        return chain;
      }
    }

    UPAnalysis analysis;
    try {
      analysis = certify_up(word, scan_up(word, opt.scan_bound),
                            opt.verify_len);
    } catch (const stall_error& e) {
      chain.stalled_level = k;
      chain.stall_note = e.what();
      chain.levels.push_back(std::move(level));
      return chain;
    }
    chain.nu.push_back(NuEntry{analysis.N, analysis.certified()});
    level.analysis = analysis;
    chain.levels.push_back(std::move(level));

    if (!chain.cycle) {
      for (std::size_t j = 0; j < k; ++j) {
        if (auto kind = cycle_equivalent(chain.levels[j].word, word)) {
          chain.cycle = {j, k};
          chain.cycle_kind = *kind;
          break;
        }
      }
    }

    if (!analysis.certified() && analysis.stall_position) {
      chain.stalled_level = k;
      chain.stall_note = "greedy factorization stalls at position " +
                         std::to_string(*analysis.stall_position) +
                         " under bound " + std::to_string(opt.scan_bound);
      return chain;
    }
    // A bounded level whose longest unbordered prefix fills half the
    // window leaves no room to see the next one: the scan is saturated
    // and continuing the chain would claim more than the bound supports.
    if (!analysis.certified() && 2 * analysis.N >= analysis.scan_bound) {
      chain.stalled_level = k;
      chain.stall_note =
          "unbordered prefixes reach the scan bound (longest found " +
          std::to_string(analysis.N) + " at bound " +
          std::to_string(analysis.scan_bound) + ")";
      return chain;
    }

    if (k + 1 < opt.depth) {
      try {
        word = next_level(word, analysis);
      } catch (const stall_error& e) {
        chain.stalled_level = k;
        chain.stall_note = e.what();
        return chain;
      }
    }
  }
  return chain;
}

HierarchyResult classify_hierarchy(const InfiniteWord& x,
                                   const ChainOptions& opt) {
  HierarchyResult result{HierarchyVerdict{}, derived_chain(x, opt)};
  const DerivedChain& chain = result.chain;
  HierarchyVerdict& v = result.verdict;
  v.cycle = chain.cycle;
  if (chain.refuted_level) {
    v.kind = HierarchyVerdict::Kind::NotInP;
    v.n = *chain.refuted_level + 1;
    v.detail = "level " + std::to_string(*chain.refuted_level) +
               " has no prefixal factorization: " + chain.refutation;
    return result;
  }
  if (chain.cycle) {
    bool all_exact = true;
    for (std::size_t k = 0; k <= chain.cycle->second; ++k)
      all_exact = all_exact && k < chain.nu.size() && chain.nu[k].exact;
    if (all_exact) {
      v.kind = HierarchyVerdict::Kind::InPInfinityCertified;
      v.detail = "levels " + std::to_string(chain.cycle->first) + " and " +
                 std::to_string(chain.cycle->second) +
                 " coincide (" + chain.cycle_kind +
                 "); the derivation sequence is eventually periodic over "
                 "certified levels";
      return result;
    }
  }
  if (chain.stalled_level) {
    v.kind = HierarchyVerdict::Kind::Unresolved;
    v.detail = "level " + std::to_string(*chain.stalled_level) +
               " unresolved: " + chain.stall_note;
    return result;
  }
  v.kind = HierarchyVerdict::Kind::BoundedMember;
  v.n = chain.levels.size();
  v.detail = "no refutation through " + std::to_string(chain.levels.size()) +
             " levels at scan bound " + std::to_string(opt.scan_bound);
  return result;
}

}  // namespace prefal
