#include "prefal/word.hpp"

#include <algorithm>
#include <map>

namespace prefal {

FiniteWord::FiniteWord(std::vector<Letter> symbols, Letter alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ == 0) {
    for (Letter s : symbols_) alphabet_size_ = std::max(alphabet_size_, s + 1);
  }
}

FiniteWord FiniteWord::slice(std::size_t from, std::size_t to) const {
  return FiniteWord(
      std::vector<Letter>(symbols_.begin() + from, symbols_.begin() + to),
      alphabet_size_);
}

FiniteWord FiniteWord::concat(const FiniteWord& other) const {
  std::vector<Letter> out = symbols_;
  out.insert(out.end(), other.symbols_.begin(), other.symbols_.end());
  return FiniteWord(std::move(out),
                    std::max(alphabet_size_, other.alphabet_size_));
}

bool FiniteWord::is_prefix_of(const FiniteWord& other) const {
  return size() <= other.size() &&
         std::equal(begin(), end(), other.begin());
}

bool FiniteWord::is_suffix_of(const FiniteWord& other) const {
  return size() <= other.size() &&
         std::equal(begin(), end(), other.end() - size());
}

std::string code_glyphs(std::size_t k) {
  static constexpr std::string_view pool =
      "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
  if (k > pool.size())
    throw error("alphabet too large to render with single glyphs");
  return std::string(pool.substr(0, k));
}

std::string render(std::span<const Letter> symbols, std::string_view glyphs) {
  std::string out;
  out.reserve(symbols.size());
  for (Letter s : symbols) {
    if (s >= glyphs.size()) throw error("letter outside glyph table");
    out.push_back(glyphs[s]);
  }
  return out;
}

std::string render(const FiniteWord& w, std::string_view glyphs) {
  return render(w.symbols(), glyphs);
}

FiniteWord parse_letters(std::string_view text, std::string_view glyphs) {
  std::vector<Letter> out;
  out.reserve(text.size());
  for (char c : text) {
    auto pos = glyphs.find(c);
    if (pos == std::string_view::npos)
      throw parse_error(std::string("unknown letter '") + c + "'");
    out.push_back(static_cast<Letter>(pos));
  }
  return FiniteWord(std::move(out), static_cast<Letter>(glyphs.size()));
}

std::vector<std::size_t> border_table(std::span<const Letter> w) {
  std::vector<std::size_t> table(w.size(), 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    while (k > 0 && w[i] != w[k]) k = table[k - 1];
    if (w[i] == w[k]) ++k;
    table[i] = k;
  }
  return table;
}

std::optional<FiniteWord> shortest_border(const FiniteWord& w) {
  if (w.empty()) throw error("empty word has no border status");
  auto table = border_table(w.symbols());
  std::size_t b = table[w.size() - 1];
  if (b == 0) return std::nullopt;
  while (table[b - 1] != 0) b = table[b - 1];
  return w.slice(0, b);
}

bool is_unbordered(const FiniteWord& w) {
  if (w.empty()) throw error("empty word has no border status");
  auto table = border_table(w.symbols());
  return table[w.size() - 1] == 0;
}

std::optional<std::vector<std::pair<Letter, Letter>>> word_isomorphism(
    std::span<const Letter> x, std::span<const Letter> y) {
  if (x.size() != y.size()) return std::nullopt;
  std::map<Letter, Letter> fwd, bwd;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto [itf, newf] = fwd.emplace(x[i], y[i]);
    if (!newf && itf->second != y[i]) return std::nullopt;
    auto [itb, newb] = bwd.emplace(y[i], x[i]);
    if (!newb && itb->second != x[i]) return std::nullopt;
  }
  std::vector<std::pair<Letter, Letter>> out(fwd.begin(), fwd.end());
  return out;
}

}  // namespace prefal
