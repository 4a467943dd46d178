#include "prefal/sturmian.hpp"

#include <algorithm>
#include <string>

namespace prefal {

namespace {

constexpr std::size_t kReductionCap = 64;

// Parses u over the pieces {a -> a, ab -> b} of L_a. The boundary is always
// clean because the symbol following u (in u·S(a·d)) is a.
FiniteWord l_decode_word(const FiniteWord& u, Letter a) {
  const Letter b = 1 - a;
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < u.size()) {
    if (u[i] != a) throw error("word is not an L-morphism image");
    if (i + 1 < u.size() && u[i + 1] == b) {
      out.push_back(b);
      i += 2;
    } else {
      out.push_back(a);
      i += 1;
    }
  }
  return FiniteWord(std::move(out), 2);
}

// Parses u over the pieces {a -> a, ba -> b} of R_a.
FiniteWord r_decode_word(const FiniteWord& u, Letter a) {
  const Letter b = 1 - a;
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < u.size()) {
    if (u[i] == b) {
      if (i + 1 >= u.size() || u[i + 1] != a)
        throw error("word is not an R-morphism image");
      out.push_back(b);
      i += 2;
    } else {
      out.push_back(a);
      i += 1;
    }
  }
  return FiniteWord(std::move(out), 2);
}

SturmianCarrierInfo carrier_from_normal_form(const NormalForm& nf) {
  SturmianCarrierInfo info;
  switch (nf.state) {
    case NormalForm::State::Standard:
      info.form = SturmianCarrierInfo::Form::Standard;
      info.directive = nf.directive;
      break;
    case NormalForm::State::Singular:
      info.form = SturmianCarrierInfo::Form::Singular;
      info.directive = nf.directive;
      info.u = nf.u;
      break;
    case NormalForm::State::NonsingularOther:
      info.form = SturmianCarrierInfo::Form::Opaque;
      break;
  }
  return info;
}

}  // namespace

InfiniteWord standard_word(const Directive& d) {
  InfiniteWord w = InfiniteWord::standard_sturmian(d);
  SturmianCarrierInfo info;
  info.form = SturmianCarrierInfo::Form::Standard;
  info.directive = d;
  w.set_sturmian_carrier(std::move(info));
  return w;
}

InfiniteWord realize(const SturmianSpec& spec, bool validate) {
  InfiniteWord w = InfiniteWord::standard_sturmian(spec.directive);
  if (!spec.prepend.empty())
    w = InfiniteWord::concatenation(spec.prepend, w);
  for (auto it = spec.chain.rbegin(); it != spec.chain.rend(); ++it)
    w = InfiniteWord::image(lr_morphism(*it), w,
                            std::string(kBinaryGlyphs));
  SturmianCarrierInfo info = carrier_from_normal_form(normal_form(spec));
  info.spec = spec;
  w.set_sturmian_carrier(std::move(info));
  if (validate && !validate_sturmian(w))
    throw error("spec does not realize a Sturmian word: " + spec.to_string());
  return w;
}

bool validate_sturmian(const InfiniteWord& x, std::size_t bound,
                       std::size_t max_n) {
  if (x.alphabet_size() != 2) return false;
  if (!is_balanced(x, bound).balanced) return false;
  for (std::size_t n = 1; n <= max_n; ++n)
    if (factor_stats(x, n, bound).count != n + 1) return false;
  return true;
}

Letter sturmian_type(const InfiniteWord& x, std::size_t bound) {
  if (x.alphabet_size() != 2)
    throw error("type is defined for binary words");
  bool saw00 = false, saw11 = false;
  auto p = x.prefix_span(bound);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i] == 0 && p[i + 1] == 0) saw00 = true;
    if (p[i] == 1 && p[i + 1] == 1) saw11 = true;
  }
  if (saw00 == saw11) throw error("not Sturmian at this bound");
  return saw00 ? 0 : 1;
}

std::pair<LR, InfiniteWord> desubstitute(const InfiniteWord& x,
                                         std::size_t bound) {
  Letter a = sturmian_type(x, bound);
  Letter b = 1 - a;
  if (x.at(0) == a && x.at(1) == b)
    throw error("base case, use delta_base");
  if (x.at(0) == a) {
    LR tag = (a == 0) ? LR::L0 : LR::L1;
    return {tag, InfiniteWord::lr_decode(x, a, /*left=*/true)};
  }
  LR tag = (a == 0) ? LR::R0 : LR::R1;
  return {tag, InfiniteWord::lr_decode(x, a, /*left=*/false)};
}

InfiniteWord delta_base(const InfiniteWord& x, std::size_t bound) {
  Letter a = sturmian_type(x, bound);
  if (x.at(0) != a || x.at(1) != 1 - a)
    throw error("delta_base expects unbordered prefixes {a, ab}");
  return InfiniteWord::delta_base_stream(x, a);
}

InfiniteWord sturmian_delta_stream(const InfiniteWord& x, std::size_t bound) {
  InfiniteWord y = x;
  for (std::size_t step = 0; step < kReductionCap; ++step) {
    Letter a = sturmian_type(y, bound);
    if (y.at(0) == a && y.at(1) == 1 - a) return delta_base(y, bound);
    y = desubstitute(y, bound).second;
  }
  throw error("reduction did not terminate");
}

InfiniteWord sturmian_delta(const SturmianSpec& spec) {
  InfiniteWord x = realize(spec);
  if (!is_in_P1(spec))
    throw error("word has no prefixal factorization (single letter before "
                "a standard word)");
  InfiniteWord d = sturmian_delta_stream(x);
  SturmianCarrierInfo info;
  info.form = SturmianCarrierInfo::Form::Opaque;
  d.set_sturmian_carrier(std::move(info));
  return d;
}

std::pair<FiniteWord, FiniteWord> up_pair(const InfiniteWord& x,
                                          std::size_t bound) {
  InfiniteWord y = x;
  std::vector<Morphism> unwind;
  for (std::size_t step = 0; step < kReductionCap; ++step) {
    Letter a = sturmian_type(y, bound);
    Letter b = 1 - a;
    if (y.at(0) == a && y.at(1) == b) {
      FiniteWord v({a}, 2);
      FiniteWord u({a, b}, 2);
      for (auto it = unwind.rbegin(); it != unwind.rend(); ++it) {
        u = it->apply(u);
        v = it->apply(v);
      }
      return {u, v};
    }
    if (y.at(0) == a) {
      unwind.push_back(lr_morphism(a == 0 ? LR::L0 : LR::L1));
      y = InfiniteWord::lr_decode(y, a, true);
    } else {
      unwind.push_back(lr_morphism(a == 0 ? LR::R0 : LR::R1));
      y = InfiniteWord::lr_decode(y, a, false);
    }
  }
  throw error("reduction did not terminate");
}

std::pair<FiniteWord, FiniteWord> up_pair(const SturmianSpec& spec) {
  if (!is_in_P1(spec))
    throw error("word has no prefixal factorization");
  return up_pair(realize(spec));
}

bool is_in_P1(const SturmianSpec& spec) {
  NormalForm nf = normal_form(spec);
  return !(nf.singular() && nf.u.size() == 1);
}

Singularity is_singular(const SturmianSpec& spec) {
  NormalForm nf = normal_form(spec);
  return Singularity{nf.singular(), nf.u, nf.directive};
}

std::pair<FiniteWord, Directive> delta_step(const FiniteWord& u0,
                                            const Directive& d0) {
  if (u0.size() == 1)
    throw error("word has no prefixal factorization; no derived word");
  FiniteWord u = u0;
  Directive d = d0;
  for (std::size_t step = 0; step < kReductionCap; ++step) {
    const Letter a = d.at(0);
    const Letter b = 1 - a;
    const Letter first = u.empty() ? a : u[0];
    Letter second;
    if (u.size() >= 2)
      second = u[1];
    else if (u.size() == 1)
      second = a;  // S(d) begins with its type letter
    else
      second = d.at(1);
    if (first == b) {
      // R_a-preimage: u·a parses over {a, ba}.
      u = r_decode_word(u.concat(FiniteWord({a}, 2)), a);
      d = d.shifted();
    } else if (second == a) {
      u = l_decode_word(u, a);
      d = d.shifted();
    } else {
      // Base: the derived word is isomorphic to the L_a-preimage.
      FiniteWord nu = l_decode_word(u, a);
      return {nu, d.shifted()};
    }
    if (u.size() == 1)
      throw error("desubstitution reached a word without prefixal "
                  "factorization; invalid input");
  }
  throw error("reduction did not terminate");
}

SturmianVerdict classify_sturmian(const SturmianSpec& spec) {
  SturmianVerdict verdict{false, 0, normal_form(spec)};
  if (!verdict.nf.singular()) {
    verdict.in_p_infinity = true;
    return verdict;
  }
  FiniteWord u = verdict.nf.u;
  Directive d = verdict.nf.directive;
  std::size_t level = 0;
  while (true) {
    if (u.size() == 1) {
      verdict.in_p_infinity = false;
      verdict.not_in_p_n = level + 1;
      return verdict;
    }
    auto [nu, nd] = delta_step(u, d);
    if (nu.empty())
      throw error("derived word of a singular word cannot be standard");
    u = nu;
    d = nd;
    ++level;
    if (level > kReductionCap) throw error("reduction did not terminate");
  }
}

InfiniteWord sturmian_chain_next(const InfiniteWord& x) {
  const SturmianCarrierInfo* info = x.sturmian_carrier();
  if (!info) throw error("word carries no Sturmian structure");
  switch (info->form) {
    case SturmianCarrierInfo::Form::Standard: {
      auto [nu, nd] = delta_step(FiniteWord({}, 2), *info->directive);
      InfiniteWord next = standard_word(nd);
      (void)nu;
      return next;
    }
    case SturmianCarrierInfo::Form::Singular: {
      if (info->u.size() == 1)
        throw error("word has no prefixal factorization; no derived word");
      auto [nu, nd] = delta_step(info->u, *info->directive);
      InfiniteWord next =
          nu.empty() ? standard_word(nd)
                     : InfiniteWord::concatenation(
                           nu, InfiniteWord::standard_sturmian(nd));
      SturmianCarrierInfo ni;
      ni.form = nu.empty() ? SturmianCarrierInfo::Form::Standard
                           : SturmianCarrierInfo::Form::Singular;
      ni.directive = nd;
      ni.u = nu;
      next.set_sturmian_carrier(std::move(ni));
      return next;
    }
    case SturmianCarrierInfo::Form::Opaque: {
      InfiniteWord next = sturmian_delta_stream(x);
      SturmianCarrierInfo ni;
      ni.form = SturmianCarrierInfo::Form::Opaque;
      next.set_sturmian_carrier(std::move(ni));
      return next;
    }
  }
  throw error("bad carrier form");
}

}  // namespace prefal
