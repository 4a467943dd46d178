#include "prefal/infinite_word.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace prefal {

namespace detail {

class Stream {
 public:
  virtual ~Stream() = default;

  /// Grows buffer to at least `need` symbols (or throws stall_error; any
  /// symbols produced before the stall stay in the buffer).
  virtual void extend(std::size_t need) = 0;
  virtual std::string describe() const = 0;

  virtual const MorphicInfo* morphic_info() const { return nullptr; }
  virtual const PeriodicInfo* periodic_info() const { return nullptr; }
  virtual const DerivedInfo* derived_info() const { return nullptr; }
  virtual std::pair<const FiniteWord*, const InfiniteWord*> concat_info()
      const {
    return {nullptr, nullptr};
  }

  std::vector<Letter> buffer;
  Letter alphabet = 0;
  std::string glyphs;
  std::optional<SturmianCarrierInfo> sturm_carrier;
};

namespace {

class PeriodicStream final : public Stream {
 public:
  explicit PeriodicStream(PeriodicInfo info) : info_(std::move(info)) {
    if (info_.period.empty()) throw error("empty period");
  }
  void extend(std::size_t need) override {
    while (buffer.size() < need)
      buffer.push_back(info_.period[buffer.size() % info_.period.size()]);
  }
  std::string describe() const override {
    return "periodic(" + render(info_.period, glyphs) + ")";
  }
  const PeriodicInfo* periodic_info() const override { return &info_; }

 private:
  PeriodicInfo info_;
};

class MorphicStream final : public Stream {
 public:
  explicit MorphicStream(MorphicInfo info) : info_(std::move(info)) {
    if (!info_.m.prolongable_on(info_.seed))
      throw error("morphism is not prolongable on the seed letter");
    const FiniteWord& img = info_.m.image(info_.seed);
    buffer.assign(img.begin(), img.end());
    pos_ = 1;
  }
  void extend(std::size_t need) override {
    while (buffer.size() < need) {
      const FiniteWord& img = info_.m.image(buffer[pos_]);
      buffer.insert(buffer.end(), img.begin(), img.end());
      ++pos_;
    }
  }
  std::string describe() const override { return "morphic fixed point"; }
  const MorphicInfo* morphic_info() const override { return &info_; }

 private:
  MorphicInfo info_;
  std::size_t pos_;
};

class ConcatStream final : public Stream {
 public:
  ConcatStream(FiniteWord pre, InfiniteWord tail)
      : pre_(std::move(pre)), tail_(std::move(tail)) {}
  void extend(std::size_t need) override {
    while (buffer.size() < need) {
      std::size_t i = buffer.size();
      buffer.push_back(i < pre_.size() ? pre_[i] : tail_.at(i - pre_.size()));
    }
  }
  std::string describe() const override {
    return "concat(" + render(pre_, glyphs) + "; " + tail_.describe() + ")";
  }
  std::pair<const FiniteWord*, const InfiniteWord*> concat_info()
      const override {
    return {&pre_, &tail_};
  }

 private:
  FiniteWord pre_;
  InfiniteWord tail_;
};

class ImageStream final : public Stream {
 public:
  ImageStream(Morphism m, InfiniteWord base)
      : m_(std::move(m)), base_(std::move(base)) {}
  void extend(std::size_t need) override {
    while (buffer.size() < need) {
      const FiniteWord& img = m_.image(base_.at(pos_));
      buffer.insert(buffer.end(), img.begin(), img.end());
      ++pos_;
    }
  }
  std::string describe() const override {
    return "image(...; " + base_.describe() + ")";
  }

 private:
  Morphism m_;
  InfiniteWord base_;
  std::size_t pos_ = 0;
};

class StandardSturmianStream final : public Stream {
 public:
  explicit StandardSturmianStream(Directive d) : d_(std::move(d)) {
    a_ = {0};
    b_ = {1};
  }
  void extend(std::size_t need) override {
    // Maintain (a_, b_) = images of 0 and 1 under the composition of the
    // first k directive morphisms; the stable prefix is the image of the
    // next directive letter.
    while (stable().size() < need) {
      Letter c = d_.at(step_);
      if (c == 0) {
        std::vector<Letter> nb = a_;
        nb.insert(nb.end(), b_.begin(), b_.end());
        b_ = std::move(nb);
      } else {
        std::vector<Letter> na = b_;
        na.insert(na.end(), a_.begin(), a_.end());
        a_ = std::move(na);
      }
      ++step_;
    }
    const std::vector<Letter>& w = stable();
    buffer.assign(w.begin(), w.begin() + std::max(need, buffer.size()));
  }
  std::string describe() const override {
    return "sturm_std(" + d_.to_string() + ")";
  }

 private:
  const std::vector<Letter>& stable() const {
    return d_.at(step_) == 0 ? a_ : b_;
  }
  Directive d_;
  std::vector<Letter> a_, b_;
  std::size_t step_ = 0;
};

class DerivedStream final : public Stream {
 public:
  DerivedStream(InfiniteWord parent, std::vector<FiniteWord> up_set,
                const std::vector<FiniteWord>& up_prime, Letter code_cap)
      : info_{std::make_shared<InfiniteWord>(std::move(parent))},
        up_set_(std::move(up_set)),
        code_cap_(code_cap) {
    std::sort(up_set_.begin(), up_set_.end(),
              [](const FiniteWord& a, const FiniteWord& b) {
                return a.size() > b.size();
              });
    codes_.assign(up_set_.size(), kUnassigned);
    for (const FiniteWord& u : up_prime) assign_code(find_member(u));
  }

  void extend(std::size_t need) override {
    while (buffer.size() < need) {
      std::size_t match = up_set_.size();
      for (std::size_t i = 0; i < up_set_.size(); ++i) {
        if (matches(up_set_[i])) {
          match = i;
          break;
        }
      }
      if (match == up_set_.size())
        throw stall_error(pos_, "factorization stalls at position " +
                                    std::to_string(pos_));
      buffer.push_back(assign_code(match));
      pos_ += up_set_[match].size();
    }
  }
  std::string describe() const override {
    return "derived(" + info_.parent->describe() + ")";
  }
  const DerivedInfo* derived_info() const override { return &info_; }

 private:
  static constexpr Letter kUnassigned = static_cast<Letter>(-1);

  bool matches(const FiniteWord& w) const {
    for (std::size_t j = 0; j < w.size(); ++j)
      if (info_.parent->at(pos_ + j) != w[j]) return false;
    return true;
  }
  std::size_t find_member(const FiniteWord& u) const {
    for (std::size_t i = 0; i < up_set_.size(); ++i)
      if (up_set_[i] == u) return i;
    throw error("up_prime member missing from up_set");
  }
  Letter assign_code(std::size_t member) {
    if (codes_[member] == kUnassigned) {
      if (next_code_ >= code_cap_)
        throw error("factorization uses a prefix outside the certified "
                    "table");
      codes_[member] = next_code_++;
    }
    return codes_[member];
  }

  DerivedInfo info_;
  std::vector<FiniteWord> up_set_;  // by decreasing length
  Letter code_cap_;
  std::vector<Letter> codes_;
  Letter next_code_ = 0;
  std::size_t pos_ = 0;
};

class LRDecodeStream final : public Stream {
 public:
  LRDecodeStream(InfiniteWord parent, Letter a, bool left)
      : parent_(std::move(parent)), a_(a), left_(left) {}
  void extend(std::size_t need) override {
    const Letter b = 1 - a_;
    while (buffer.size() < need) {
      Letter c = parent_.at(pos_);
      if (left_) {
        if (c != a_) throw error("stream is not an L-morphism image");
        if (parent_.at(pos_ + 1) == b) {
          buffer.push_back(b);
          pos_ += 2;
        } else {
          buffer.push_back(a_);
          pos_ += 1;
        }
      } else {
        if (c == b) {
          if (parent_.at(pos_ + 1) != a_)
            throw error("stream is not an R-morphism image");
          buffer.push_back(b);
          pos_ += 2;
        } else {
          buffer.push_back(a_);
          pos_ += 1;
        }
      }
    }
  }
  std::string describe() const override {
    return std::string(left_ ? "L" : "R") + std::to_string(a_) +
           "-preimage(" + parent_.describe() + ")";
  }

 private:
  InfiniteWord parent_;
  Letter a_;
  bool left_;
  std::size_t pos_ = 0;
};

class DeltaBaseStream final : public Stream {
 public:
  DeltaBaseStream(InfiniteWord parent, Letter a)
      : parent_(std::move(parent)), a_(a) {}
  void extend(std::size_t need) override {
    const Letter b = 1 - a_;
    while (buffer.size() < need) {
      if (parent_.at(pos_) != a_)
        throw error("first-return coding expects pieces starting with the "
                    "type letter");
      if (parent_.at(pos_ + 1) == b) {
        buffer.push_back(0);  // piece ab, first in first-occurrence order
        pos_ += 2;
      } else {
        buffer.push_back(1);  // piece a
        pos_ += 1;
      }
    }
  }
  std::string describe() const override {
    return "first-return coding(" + parent_.describe() + ")";
  }

 private:
  InfiniteWord parent_;
  Letter a_;
  std::size_t pos_ = 0;
};

class FunctionStream final : public Stream {
 public:
  FunctionStream(std::function<Letter(std::size_t)> f, std::string label)
      : f_(std::move(f)), label_(std::move(label)) {}
  void extend(std::size_t need) override {
    while (buffer.size() < need) buffer.push_back(f_(buffer.size()));
  }
  std::string describe() const override { return label_; }

 private:
  std::function<Letter(std::size_t)> f_;
  std::string label_;
};

}  // namespace
}  // namespace detail

using detail::Stream;

Letter InfiniteWord::at(std::size_t i) const {
  ensure(i + 1);
  return s_->buffer[i];
}

void InfiniteWord::ensure(std::size_t n) const {
  if (s_->buffer.size() >= n) return;
  std::size_t request = std::max<std::size_t>(n, 64);
  request = std::max(request, s_->buffer.size() * 2);
  try {
    s_->extend(request);
  } catch (const stall_error&) {
    // The over-request may stall past what the caller actually needs.
    if (s_->buffer.size() < n) throw;
  }
}

bool InfiniteWord::try_ensure(std::size_t n) const {
  try {
    ensure(n);
    return true;
  } catch (const stall_error&) {
    return false;
  }
}

std::size_t InfiniteWord::materialized() const { return s_->buffer.size(); }

std::span<const Letter> InfiniteWord::prefix_span(std::size_t n) const {
  ensure(n);
  return std::span<const Letter>(s_->buffer.data(), n);
}

FiniteWord InfiniteWord::prefix(std::size_t n) const {
  auto span = prefix_span(n);
  return FiniteWord(std::vector<Letter>(span.begin(), span.end()),
                    alphabet_size());
}

std::string InfiniteWord::render_prefix(std::size_t n) const {
  return render(prefix_span(n), glyphs());
}

Letter InfiniteWord::alphabet_size() const { return s_->alphabet; }
const std::string& InfiniteWord::glyphs() const { return s_->glyphs; }
std::string InfiniteWord::describe() const { return s_->describe(); }

const MorphicInfo* InfiniteWord::morphic_info() const {
  return s_->morphic_info();
}
const PeriodicInfo* InfiniteWord::periodic_info() const {
  return s_->periodic_info();
}
const DerivedInfo* InfiniteWord::derived_info() const {
  return s_->derived_info();
}
std::pair<const FiniteWord*, const InfiniteWord*> InfiniteWord::concat_info()
    const {
  return s_->concat_info();
}
const SturmianCarrierInfo* InfiniteWord::sturmian_carrier() const {
  return s_->sturm_carrier ? &*s_->sturm_carrier : nullptr;
}
void InfiniteWord::set_sturmian_carrier(SturmianCarrierInfo info) {
  s_->sturm_carrier = std::move(info);
}

namespace {

InfiniteWord wrap(std::shared_ptr<Stream> s, Letter alphabet,
                  std::string glyphs) {
  s->alphabet = alphabet;
  s->glyphs = std::move(glyphs);
  struct Access : InfiniteWord {
    explicit Access(std::shared_ptr<Stream> p)
        : InfiniteWord(std::move(p)) {}
  };
  return Access(std::move(s));
}

}  // namespace

InfiniteWord InfiniteWord::periodic(FiniteWord period, std::string glyphs) {
  Letter alpha = period.alphabet_size();
  return wrap(std::make_shared<detail::PeriodicStream>(
                  PeriodicInfo{std::move(period)}),
              alpha, std::move(glyphs));
}

InfiniteWord InfiniteWord::morphic(Morphism m, Letter seed,
                                   std::string glyphs) {
  Letter alpha = m.codomain_size();
  return wrap(std::make_shared<detail::MorphicStream>(
                  MorphicInfo{std::move(m), seed}),
              alpha, std::move(glyphs));
}

InfiniteWord InfiniteWord::concatenation(FiniteWord prefix,
                                         InfiniteWord tail) {
  for (Letter s : prefix)
    if (s >= tail.alphabet_size())
      throw error("prepended letters must come from the word's alphabet");
  Letter alpha = tail.alphabet_size();
  std::string g = tail.glyphs();
  return wrap(std::make_shared<detail::ConcatStream>(std::move(prefix),
                                                     std::move(tail)),
              alpha, std::move(g));
}

InfiniteWord InfiniteWord::image(Morphism m, InfiniteWord base,
                                 std::string glyphs) {
  if (base.alphabet_size() > m.domain_size())
    throw error("morphism domain smaller than the base word's alphabet");
  Letter alpha = m.codomain_size();
  if (glyphs.empty()) glyphs = base.glyphs();
  return wrap(
      std::make_shared<detail::ImageStream>(std::move(m), std::move(base)),
      alpha, std::move(glyphs));
}

InfiniteWord InfiniteWord::standard_sturmian(Directive d) {
  return wrap(std::make_shared<detail::StandardSturmianStream>(std::move(d)),
              2, std::string(kBinaryGlyphs));
}

InfiniteWord InfiniteWord::derived_stream(InfiniteWord parent,
                                          std::vector<FiniteWord> up_set,
                                          std::vector<FiniteWord> up_prime,
                                          Letter code_alphabet) {
  if (up_set.empty()) throw error("cannot derive with an empty prefix set");
  Letter alpha = code_alphabet ? code_alphabet
                               : static_cast<Letter>(up_set.size());
  return wrap(std::make_shared<detail::DerivedStream>(
                  std::move(parent), std::move(up_set), up_prime, alpha),
              alpha, code_glyphs(alpha));
}

InfiniteWord InfiniteWord::lr_decode(InfiniteWord parent, Letter a,
                                     bool left) {
  std::string g = parent.glyphs();
  return wrap(
      std::make_shared<detail::LRDecodeStream>(std::move(parent), a, left), 2,
      std::move(g));
}

InfiniteWord InfiniteWord::delta_base_stream(InfiniteWord parent, Letter a) {
  return wrap(std::make_shared<detail::DeltaBaseStream>(std::move(parent), a),
              2, code_glyphs(2));
}

InfiniteWord InfiniteWord::from_function(std::function<Letter(std::size_t)> f,
                                         Letter alphabet, std::string glyphs,
                                         std::string label) {
  return wrap(std::make_shared<detail::FunctionStream>(std::move(f),
                                                       std::move(label)),
              alphabet, std::move(glyphs));
}

InfiniteWord gamma_fixed_point(const std::vector<FiniteWord>& chain) {
  if (chain.empty()) throw error("empty chain");
  const std::size_t k = chain.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (chain[i].empty() || !is_unbordered(chain[i]))
      throw error("chain word " + std::to_string(i + 1) +
                  " must be unbordered");
    if (i + 1 < k && !(chain[i + 1].size() < chain[i].size() &&
                       chain[i + 1].is_prefix_of(chain[i])))
      throw error("chain must decrease strictly along proper prefixes");
    for (Letter s : chain[i])
      if (s >= k) throw error("chain letters must stay within {1..k}");
  }
  if (chain[0][0] != 0)
    throw error("the longest chain word must start with letter 1");
  Morphism m(chain, static_cast<Letter>(k));
  if (!m.prolongable_on(0))
    throw error("chain morphism is not prolongable (longest word too short)");
  return InfiniteWord::morphic(std::move(m), 0, code_glyphs(k));
}

// -- bounded statistics -------------------------------------------------------

FactorStats factor_stats(const InfiniteWord& x, std::size_t n,
                         std::size_t window) {
  if (window < n) throw error("window shorter than the factor length");
  FactorStats stats;
  stats.length = n;
  stats.window = window;
  if (n == 0) {
    stats.count = 1;
    return stats;
  }
  auto p = x.prefix_span(window);
  std::set<std::vector<Letter>> fac_n;
  for (std::size_t i = 0; i + n <= p.size(); ++i)
    fac_n.emplace(p.begin() + i, p.begin() + i + n);
  stats.count = fac_n.size();

  // Specials read off the (n+1)-factor set of the same window.
  std::map<std::vector<Letter>, std::set<Letter>> left_ext, right_ext;
  for (std::size_t i = 0; i + n + 1 <= p.size(); ++i) {
    std::vector<Letter> core(p.begin() + i, p.begin() + i + n + 1);
    left_ext[std::vector<Letter>(core.begin() + 1, core.end())].insert(
        core.front());
    right_ext[std::vector<Letter>(core.begin(), core.end() - 1)].insert(
        core.back());
  }
  for (const auto& fac : fac_n) {
    bool ls = left_ext.count(fac) && left_ext[fac].size() >= 2;
    bool rs = right_ext.count(fac) && right_ext[fac].size() >= 2;
    FiniteWord w(std::vector<Letter>(fac), x.alphabet_size());
    if (ls) stats.left_special.push_back(w);
    if (rs) stats.right_special.push_back(w);
    if (ls && rs) stats.bispecial.push_back(w);
  }
  return stats;
}

BalanceResult is_balanced(const InfiniteWord& x, std::size_t bound) {
  if (x.alphabet_size() != 2)
    throw error("balance is defined for binary words");
  if (bound < 2) throw error("balance bound must be at least 2");
  auto p = x.prefix_span(bound);
  std::vector<std::size_t> ones(p.size() + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    ones[i + 1] = ones[i] + (p[i] == 1 ? 1 : 0);
  for (std::size_t len = 1; len < p.size(); ++len) {
    std::size_t lo_at = 0, hi_at = 0;
    std::size_t lo = len + 1, hi = 0;
    for (std::size_t i = 0; i + len <= p.size(); ++i) {
      std::size_t c = ones[i + len] - ones[i];
      if (c < lo) lo = c, lo_at = i;
      if (c > hi) hi = c, hi_at = i;
    }
    if (hi > lo + 1) {
      BalanceResult r;
      r.balanced = false;
      r.low = x.prefix(lo_at + len).slice(lo_at, lo_at + len);
      r.high = x.prefix(hi_at + len).slice(hi_at, hi_at + len);
      return r;
    }
  }
  return BalanceResult{};
}

std::optional<std::size_t> uniform_recurrence_gap(const InfiniteWord& x,
                                                  const FiniteWord& u,
                                                  std::size_t bound) {
  if (u.empty()) throw error("pattern must be non-empty");
  if (bound < u.size()) throw error("bound shorter than the pattern");
  auto p = x.prefix_span(bound);
  auto table = border_table(u.symbols());
  std::vector<std::size_t> starts;
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k > 0 && p[i] != u[k]) k = table[k - 1];
    if (p[i] == u[k]) ++k;
    if (k == u.size()) {
      starts.push_back(i + 1 - u.size());
      k = table[k - 1];
    }
  }
  if (starts.size() < 2) return std::nullopt;
  std::size_t gap = starts[0];
  for (std::size_t i = 0; i + 1 < starts.size(); ++i)
    gap = std::max(gap, starts[i + 1] - starts[i]);
  return gap;
}

}  // namespace prefal
