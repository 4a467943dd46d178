#include "prefal/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "prefal/sturmian.hpp"

namespace prefal {

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    if (i >= s.size()) throw parse_error("unexpected end of spec");
    return s[i];
  }
  char take() {
    char c = peek();
    ++i;
    return c;
  }
  void expect(char c) {
    if (take() != c)
      throw parse_error(std::string("expected '") + c + "' in spec");
  }
  bool try_take(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                            s[i] == '_'))
      ++i;
    if (start == i) throw parse_error("expected an identifier");
    return std::string(s.substr(start, i - start));
  }
  /// Raw run of glyph characters (alphanumeric), possibly empty.
  std::string glyph_run() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i])))
      ++i;
    return std::string(s.substr(start, i - start));
  }
  /// Everything up to the matching close of the current nesting level.
  std::string_view until_balanced_semicolon() {
    skip_ws();
    std::size_t start = i, depth = 0;
    while (i < s.size()) {
      char c = s[i];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ';' && depth == 0) break;
      ++i;
    }
    return s.substr(start, i - start);
  }
};

std::string sorted_unique(std::string glyphs) {
  std::sort(glyphs.begin(), glyphs.end());
  glyphs.erase(std::unique(glyphs.begin(), glyphs.end()), glyphs.end());
  return glyphs;
}

struct ParsedRules {
  std::string domain_glyphs;    // sorted
  std::string codomain_glyphs;  // sorted
  std::map<char, std::string> images;
};

// rules := G->GLYPHS {, G->GLYPHS}
ParsedRules parse_rules(std::string_view text) {
  ParsedRules out;
  Cursor c{text};
  std::string all;
  while (true) {
    c.skip_ws();
    std::string lhs = c.glyph_run();
    if (lhs.size() != 1)
      throw parse_error("rule left side must be a single letter");
    c.expect('-');
    c.expect('>');
    std::string rhs = c.glyph_run();
    if (rhs.empty()) throw parse_error("rule image must be non-empty");
    if (out.images.count(lhs[0]))
      throw parse_error(std::string("duplicate rule for '") + lhs[0] + "'");
    out.images[lhs[0]] = rhs;
    all += lhs;
    all += rhs;
    if (!c.try_take(',')) break;
  }
  if (!c.done()) throw parse_error("trailing characters in rules");
  out.domain_glyphs = sorted_unique(all);
  out.codomain_glyphs = out.domain_glyphs;
  return out;
}

Morphism rules_to_morphism(const ParsedRules& r) {
  std::vector<FiniteWord> images;
  for (char g : r.domain_glyphs) {
    auto it = r.images.find(g);
    if (it == r.images.end())
      throw parse_error(std::string("letter '") + g + "' has no rule");
    images.push_back(parse_letters(it->second, r.codomain_glyphs));
  }
  return Morphism(std::move(images),
                  static_cast<Letter>(r.codomain_glyphs.size()));
}

bool looks_like_lr_seq(std::string_view text) {
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != 'L' &&
        ch != 'R' && ch != '0' && ch != '1')
      return false;
  return text.find("->") == std::string_view::npos;
}

std::vector<LR> parse_lr_seq(std::string_view text) {
  std::vector<LR> out;
  Cursor c{text};
  while (!c.done()) {
    char kind = c.take();
    char which = c.take();
    std::string name{kind, which};
    auto tag = lr_from_name(name);
    if (!tag) throw parse_error("unknown morphism tag '" + name + "'");
    out.push_back(*tag);
  }
  return out;
}

InfiniteWord parse_word(Cursor& c);

InfiniteWord parse_morphic(Cursor& c) {
  c.expect('(');
  auto rules_text = c.until_balanced_semicolon();
  c.expect(';');
  std::string seed = c.glyph_run();
  c.expect(')');
  if (seed.size() != 1) throw parse_error("seed must be a single letter");
  ParsedRules rules = parse_rules(rules_text);
  auto seed_pos = rules.domain_glyphs.find(seed[0]);
  if (seed_pos == std::string::npos)
    throw parse_error("seed letter has no rule");
  return InfiniteWord::morphic(rules_to_morphism(rules),
                               static_cast<Letter>(seed_pos),
                               rules.domain_glyphs);
}

InfiniteWord parse_periodic(Cursor& c) {
  c.expect('(');
  std::string letters = c.glyph_run();
  c.expect(')');
  if (letters.empty()) throw parse_error("period must be non-empty");
  std::string glyphs = sorted_unique(letters);
  // Words written with 0/1 live on the full binary alphabet even when the
  // period uses only one letter.
  if (glyphs == "0" || glyphs == "1" || glyphs == "01")
    glyphs = std::string(kBinaryGlyphs);
  return InfiniteWord::periodic(parse_letters(letters, glyphs), glyphs);
}

InfiniteWord parse_concat(Cursor& c) {
  c.expect('(');
  std::string letters = c.glyph_run();
  c.expect(';');
  InfiniteWord tail = parse_word(c);
  c.expect(')');
  return InfiniteWord::concatenation(parse_letters(letters, tail.glyphs()),
                                     tail);
}

InfiniteWord parse_image(Cursor& c) {
  c.expect('(');
  auto morph_text = c.until_balanced_semicolon();
  c.expect(';');
  InfiniteWord base = parse_word(c);
  c.expect(')');
  if (looks_like_lr_seq(morph_text)) {
    auto tags = parse_lr_seq(morph_text);
    if (tags.empty()) throw parse_error("empty morphism sequence");
    if (base.alphabet_size() != 2)
      throw parse_error("L/R morphisms act on binary words");
    InfiniteWord w = base;
    for (auto it = tags.rbegin(); it != tags.rend(); ++it)
      w = InfiniteWord::image(lr_morphism(*it), w, w.glyphs());
    return w;
  }
  ParsedRules rules = parse_rules(morph_text);
  // The rule letters must cover the base word's glyphs; images land in the
  // codomain glyph set.
  std::string base_glyphs = base.glyphs();
  std::string codomain;
  for (const auto& [g, img] : rules.images) codomain += img;
  codomain = sorted_unique(codomain);
  std::vector<FiniteWord> images;
  for (char g : base_glyphs) {
    auto it = rules.images.find(g);
    if (it == rules.images.end())
      throw parse_error(std::string("base letter '") + g + "' has no rule");
    images.push_back(parse_letters(it->second, codomain));
  }
  Morphism m(std::move(images), static_cast<Letter>(codomain.size()));
  return InfiniteWord::image(std::move(m), base, codomain);
}

InfiniteWord parse_sturm_std(Cursor& c) {
  c.expect('(');
  auto dir_text = c.until_balanced_semicolon();
  // The directive contains its own parentheses; until_balanced_semicolon
  // stops at the unbalanced ')'.
  Directive d = parse_directive(dir_text);
  c.expect(')');
  return standard_word(d);
}

InfiniteWord parse_sturm(Cursor& c) {
  c.expect('(');
  std::map<std::string, std::string> kv;
  while (true) {
    std::string key = c.ident();
    c.expect('=');
    auto value = c.until_balanced_semicolon();
    kv[key] = std::string(value);
    if (!c.try_take(';')) break;
  }
  c.expect(')');
  if (!kv.count("dir")) throw parse_error("sturm spec needs dir=");
  auto trim = [](std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b])))
      ++b;
    return s.substr(b);
  };
  SturmianSpec spec{parse_directive(kv["dir"]),
                    parse_letters(trim(kv.count("pre") ? kv["pre"] : ""),
                                  kBinaryGlyphs),
                    kv.count("chain") ? parse_lr_seq(kv["chain"])
                                      : std::vector<LR>{}};
  return realize(spec);
}

InfiniteWord parse_word(Cursor& c) {
  std::string head = c.ident();
  if (head == "morphic") return parse_morphic(c);
  if (head == "periodic") return parse_periodic(c);
  if (head == "concat") return parse_concat(c);
  if (head == "image") return parse_image(c);
  if (head == "sturm_std") return parse_sturm_std(c);
  if (head == "sturm") return parse_sturm(c);
  throw parse_error("unknown word constructor '" + head + "'");
}

}  // namespace

InfiniteWord parse_word_spec(std::string_view text) {
  Cursor c{text};
  InfiniteWord w = parse_word(c);
  if (!c.done()) throw parse_error("trailing characters after word spec");
  return w;
}

Directive parse_directive(std::string_view text) {
  Cursor c{text};
  std::string pre = c.glyph_run();
  c.expect('(');
  std::string per = c.glyph_run();
  c.expect(')');
  c.expect('*');
  if (!c.done()) throw parse_error("trailing characters after directive");
  return Directive(parse_letters(pre, kBinaryGlyphs),
                   parse_letters(per, kBinaryGlyphs));
}

Coloring parse_coloring_spec(std::string_view text, std::string_view glyphs) {
  Cursor c{text};
  std::string head = c.ident();
  if (head != "coloring") throw parse_error("expected coloring{...}");
  c.expect('{');
  std::vector<ColorRule> rules;
  while (true) {
    std::string pred = c.ident();
    Predicate p;
    if (pred == "prefix") {
      p.kind = Predicate::Kind::IsPrefix;
    } else if (pred == "prefix_end") {
      c.expect('(');
      std::string g = c.glyph_run();
      c.expect(')');
      p.kind = Predicate::Kind::IsPrefixEndingWith;
      p.letter = parse_letters(g, glyphs)[0];
    } else if (pred == "ends") {
      c.expect('(');
      std::string g = c.glyph_run();
      c.expect(')');
      p.kind = Predicate::Kind::EndsWith;
      p.letter = parse_letters(g, glyphs)[0];
    } else if (pred == "len_lt") {
      c.expect('(');
      std::string k = c.glyph_run();
      c.expect(')');
      p.kind = Predicate::Kind::LengthLessThan;
      p.k = std::stoul(k);
    } else if (pred == "word") {
      c.expect('(');
      std::string w = c.glyph_run();
      c.expect(')');
      p.kind = Predicate::Kind::MatchesWord;
      p.word = parse_letters(w, glyphs);
    } else if (pred == "otherwise") {
      p.kind = Predicate::Kind::Otherwise;
    } else {
      throw parse_error("unknown predicate '" + pred + "'");
    }
    c.expect('-');
    c.expect('>');
    std::string color = c.ident();
    rules.push_back({std::move(p), std::move(color)});
    if (!c.try_take(';')) break;
    if (c.peek() == '}') break;
  }
  c.expect('}');
  if (!c.done()) throw parse_error("trailing characters after coloring");
  return Coloring(std::move(rules));
}

}  // namespace prefal
