#include "prefal/morphism.hpp"

#include <algorithm>
#include <string>

namespace prefal {

Morphism::Morphism(std::vector<FiniteWord> images, Letter codomain_size)
    : images_(std::move(images)), codomain_size_(codomain_size) {
  for (const auto& img : images_) {
    if (img.empty()) throw error("morphism images must be non-empty");
    for (Letter s : img)
      if (s >= codomain_size_)
        throw error("morphism image letter outside codomain");
  }
}

FiniteWord Morphism::apply(std::span<const Letter> w) const {
  std::vector<Letter> out;
  for (Letter a : w) {
    const FiniteWord& img = image(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return FiniteWord(std::move(out), codomain_size_);
}

FiniteWord Morphism::apply(const FiniteWord& w) const {
  return apply(w.symbols());
}

bool Morphism::prolongable_on(Letter seed) const {
  if (seed >= domain_size()) return false;
  const FiniteWord& img = image(seed);
  return img.size() >= 2 && img[0] == seed;
}

Morphism lr_morphism(LR tag) {
  auto mk = [](std::string_view img0, std::string_view img1) {
    return Morphism({parse_letters(img0, kBinaryGlyphs),
                     parse_letters(img1, kBinaryGlyphs)},
                    2);
  };
  switch (tag) {
    case LR::L0: return mk("0", "01");
    case LR::L1: return mk("10", "1");
    case LR::R0: return mk("0", "10");
    case LR::R1: return mk("01", "1");
  }
  throw error("bad LR tag");
}

const char* lr_name(LR tag) {
  switch (tag) {
    case LR::L0: return "L0";
    case LR::L1: return "L1";
    case LR::R0: return "R0";
    case LR::R1: return "R1";
  }
  return "?";
}

std::optional<LR> lr_from_name(std::string_view name) {
  if (name == "L0") return LR::L0;
  if (name == "L1") return LR::L1;
  if (name == "R0") return LR::R0;
  if (name == "R1") return LR::R1;
  return std::nullopt;
}

FiniteWord CodeTable::apply(std::span<const Letter> code_word) const {
  std::vector<Letter> out;
  Letter alpha = 0;
  for (Letter c : code_word) {
    const FiniteWord& w = codewords.at(c);
    out.insert(out.end(), w.begin(), w.end());
    alpha = std::max(alpha, w.alphabet_size());
  }
  return FiniteWord(std::move(out), alpha);
}

std::optional<std::vector<Letter>> decode(const CodeTable& table,
                                          const FiniteWord& w) {
  const std::size_t n = w.size();
  // parses[i]: number of parses of w[0..i), capped at 2; choice[i]: codeword
  // index of the last piece of one such parse.
  std::vector<std::uint8_t> parses(n + 1, 0);
  std::vector<Letter> choice(n + 1, 0);
  parses[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (parses[i] == 0) continue;
    for (Letter c = 0; c < table.code_alphabet(); ++c) {
      const FiniteWord& piece = table.codewords[c];
      if (i + piece.size() > n) continue;
      if (!std::equal(piece.begin(), piece.end(), w.begin() + i)) continue;
      std::size_t j = i + piece.size();
      parses[j] = static_cast<std::uint8_t>(
          std::min<int>(2, parses[j] + parses[i]));
      choice[j] = c;
    }
  }
  if (parses[n] == 0) return std::nullopt;
  if (parses[n] > 1)
    throw decode_error("code table not uniquely decodable");
  std::vector<Letter> codes;
  for (std::size_t j = n; j > 0; j -= table.codewords[choice[j]].size())
    codes.push_back(choice[j]);
  std::reverse(codes.begin(), codes.end());
  return codes;
}

Morphism derived_morphism(const Morphism& m, const CodeTable& table) {
  std::vector<FiniteWord> images;
  for (Letter c = 0; c < table.code_alphabet(); ++c) {
    FiniteWord image_word = m.apply(table.codewords[c]);
    auto codes = decode(table, image_word);
    if (!codes)
      throw error("derived morphism does not close: image of codeword " +
                  std::to_string(c + 1) + " has no parse over the table");
    images.emplace_back(std::move(*codes), table.code_alphabet());
  }
  return Morphism(std::move(images), table.code_alphabet());
}

}  // namespace prefal
