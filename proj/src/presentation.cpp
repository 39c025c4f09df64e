#include "fpverify/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace fpv {

ParseError::ParseError(const std::string& what, std::size_t line,
                       std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

Presentation::Presentation(std::string name, std::vector<Generator> generators,
                           std::vector<Word> relators,
                           std::vector<std::size_t>* dropped)
    : name_(std::move(name)), generators_(std::move(generators)) {
  std::unordered_set<Generator> seen;
  for (Generator g : generators_) {
    if (!seen.insert(g).second) {
      throw std::invalid_argument("duplicate generator '" + g.name() + "'");
    }
  }
  relators_.reserve(relators.size());
  for (std::size_t i = 0; i < relators.size(); ++i) {
    for (const auto& l : relators[i]) {
      if (!seen.contains(l.gen)) {
        throw std::invalid_argument("relator uses unknown generator '" +
                                    l.gen.name() + "'");
      }
    }
    Word core = cyclic_reduce(relators[i]).core;
    if (core.empty()) {
      if (dropped != nullptr) {
        dropped->push_back(i);
      }
      continue;
    }
    relators_.push_back(std::move(core));
  }
}

const Word& Presentation::relator(std::size_t i) const {
  if (i >= relators_.size()) {
    throw std::out_of_range("relator index " + std::to_string(i) +
                            " out of range");
  }
  return relators_[i];
}

std::optional<std::size_t> Presentation::index_of(Generator g) const noexcept {
  auto it = std::find(generators_.begin(), generators_.end(), g);
  if (it == generators_.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - generators_.begin());
}

bool Presentation::is_word_over(const Word& w) const noexcept {
  return std::all_of(w.begin(), w.end(),
                     [this](const Letter& l) { return has_generator(l.gen); });
}

Presentation Presentation::with_name(std::string name) const {
  Presentation p = *this;
  p.name_ = std::move(name);
  return p;
}

Presentation Presentation::with_relators(std::vector<Word> relators) const {
  return Presentation(name_, generators_, std::move(relators));
}

namespace {

enum class Tok {
  Ident,
  Int,
  LAngle,
  RAngle,
  Bar,
  Comma,
  Equals,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Caret,
  Minus,
  Colon,
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        advance(1);
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l0 = line;
    const std::size_t c0 = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      out.push_back({Tok::Int, std::string(text.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '<': kind = Tok::LAngle; break;
      case '>': kind = Tok::RAngle; break;
      case '|': kind = Tok::Bar; break;
      case ',': kind = Tok::Comma; break;
      case '=': kind = Tok::Equals; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '^': kind = Tok::Caret; break;
      case '-': kind = Tok::Minus; break;
      case ':': kind = Tok::Colon; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l0,
                         c0);
    }
    out.push_back({kind, std::string(1, c), l0, c0});
    advance(1);
    // A header `name: ...` takes the rest of the line verbatim, so names may
    // contain characters the word grammar does not.
    if (kind == Tok::Colon && out.size() == 2 && out[0].kind == Tok::Ident &&
        out[0].text == "name") {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) {
        advance(1);
      }
      std::size_t j = i;
      while (j < text.size() && text[j] != '\n' && text[j] != '#') {
        ++j;
      }
      std::string_view raw = text.substr(i, j - i);
      while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) {
        raw.remove_suffix(1);
      }
      out.push_back({Tok::Ident, std::string(raw), line, col});
      advance(j - i);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

std::string describe(const Token& t) {
  return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, CommutatorConvention convention)
      : tokens_(std::move(tokens)), convention_(convention) {}

  void set_generators(const std::vector<Generator>& gens) {
    generators_.clear();
    for (Generator g : gens) {
      generators_.emplace(g.name(), g);
    }
  }

  Presentation presentation(std::vector<std::string>* warnings) {
    std::string name;
    if (peek().kind == Tok::Ident && peek().text == "name" &&
        peek(1).kind == Tok::Colon) {
      next();
      next();
      name = expect(Tok::Ident, "presentation name").text;
    }
    expect(Tok::LAngle, "'<'");
    std::vector<Generator> gens;
    if (peek().kind == Tok::Ident) {
      gens.push_back(declare(next()));
      while (accept(Tok::Comma)) {
        gens.push_back(declare(expect(Tok::Ident, "generator name")));
      }
    }
    expect(Tok::Bar, "'|'");
    std::vector<Word> relators;
    std::vector<std::string> relation_text;
    if (peek().kind != Tok::RAngle) {
      do {
        const Token& start = peek();
        for (Word& r : relation()) {
          relators.push_back(std::move(r));
          relation_text.push_back("relation at " + std::to_string(start.line) +
                                  ":" + std::to_string(start.column));
        }
      } while (accept(Tok::Comma));
    }
    expect(Tok::RAngle, "'>'");
    expect(Tok::End, "end of input");

    std::vector<std::size_t> dropped;
    Presentation p(std::move(name), std::move(gens), std::move(relators),
                   &dropped);
    if (warnings != nullptr) {
      for (std::size_t i : dropped) {
        warnings->push_back(relation_text[i] + " is trivial; dropped");
      }
    }
    return p;
  }

  std::vector<Word> relation() {
    std::vector<Word> sides{word()};
    while (accept(Tok::Equals)) {
      sides.push_back(word());
    }
    if (sides.size() == 1) {
      return sides;
    }
    std::vector<Word> out;
    for (std::size_t i = 0; i + 1 < sides.size(); ++i) {
      out.push_back(sides[i] * sides[i + 1].inverse());
    }
    return out;
  }

  Word word() {
    if (peek().kind == Tok::Int && peek().text == "1") {
      next();
      return {};
    }
    if (!starts_atom(peek())) {
      throw ParseError("expected a word, found " + describe(peek()),
                       peek().line, peek().column);
    }
    Word w;
    while (starts_atom(peek())) {
      w *= term();
    }
    return w;
  }

  void finish() { expect(Tok::End, "end of input"); }

 private:
  static bool starts_atom(const Token& t) {
    return t.kind == Tok::Ident || t.kind == Tok::LBracket ||
           t.kind == Tok::LParen;
  }

  Word term() {
    // A split identifier binds the exponent to its last letter only.
    auto [prefix, base] = atom();
    if (accept(Tok::Caret)) {
      bool negative = accept(Tok::Minus);
      const Token& n = expect(Tok::Int, "integer exponent");
      long value = 0;
      try {
        value = std::stol(n.text);
      } catch (const std::out_of_range&) {
        throw ParseError("exponent too large", n.line, n.column);
      }
      base = base.pow(negative ? -value : value);
    }
    return prefix * base;
  }

  std::pair<Word, Word> atom() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Ident:
        return identifier(t);
      case Tok::LBracket: {
        Word u = word();
        expect(Tok::Comma, "',' in commutator");
        Word v = word();
        expect(Tok::RBracket, "']'");
        return {Word{}, commutator(u, v, convention_)};
      }
      case Tok::LParen: {
        Word w = word();
        expect(Tok::RParen, "')'");
        return {Word{}, w};
      }
      default:
        throw ParseError("expected a generator, '[' or '(', found " +
                             describe(t),
                         t.line, t.column);
    }
  }

  std::pair<Word, Word> identifier(const Token& t) {
    if (auto it = generators_.find(t.text); it != generators_.end()) {
      return {Word{}, Word(it->second)};
    }
    Word prefix;
    for (std::size_t k = 0; k < t.text.size(); ++k) {
      auto it = generators_.find(std::string(1, t.text[k]));
      if (it == generators_.end()) {
        throw ParseError("unknown generator '" + t.text + "'", t.line,
                         t.column);
      }
      if (k + 1 == t.text.size()) {
        return {prefix, Word(it->second)};
      }
      prefix *= Word(it->second);
    }
    throw ParseError("unknown generator '" + t.text + "'", t.line, t.column);
  }

  Generator declare(const Token& t) {
    Generator g(t.text);
    if (!generators_.emplace(t.text, g).second) {
      throw ParseError("duplicate generator '" + t.text + "'", t.line,
                       t.column);
    }
    return g;
  }

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) {
      ++pos_;
    }
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind == kind) {
      next();
      return true;
    }
    return false;
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      throw ParseError(std::string("expected ") + what + ", found " +
                           describe(peek()),
                       peek().line, peek().column);
    }
    return next();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  CommutatorConvention convention_;
  std::unordered_map<std::string, Generator> generators_;
};

}  // namespace

Presentation parse_presentation(std::string_view text,
                                const ParseOptions& options) {
  Parser parser(tokenize(text), options.convention);
  return parser.presentation(options.warnings);
}

Word parse_word(std::string_view text, const std::vector<Generator>& generators,
                CommutatorConvention convention) {
  Parser parser(tokenize(text), convention);
  parser.set_generators(generators);
  Word w = parser.word();
  parser.finish();
  return w;
}

std::vector<Word> parse_relation(std::string_view text,
                                 const std::vector<Generator>& generators,
                                 CommutatorConvention convention) {
  Parser parser(tokenize(text), convention);
  parser.set_generators(generators);
  auto out = parser.relation();
  parser.finish();
  return out;
}

Presentation load_presentation(const std::string& path,
                               const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_presentation(buffer.str(), options);
}

std::string print_presentation(const Presentation& p) {
  std::string out;
  if (!p.name().empty()) {
    out += "name: " + p.name() + "\n";
  }
  out += "< ";
  for (std::size_t i = 0; i < p.generators().size(); ++i) {
    out += (i ? ", " : "") + p.generators()[i].name();
  }
  out += p.generators().empty() ? "| " : " | ";
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    out += (i ? ", " : "") + to_string(p.relators()[i]);
  }
  out += p.relators().empty() ? ">" : " >";
  return out;
}

nlohmann::json word_to_json(const Word& w) {
  auto j = nlohmann::json::array();
  for (const auto& l : w) {
    j.push_back(nlohmann::json::array({l.gen.name(), l.exponent}));
  }
  return j;
}

Word word_from_json(const nlohmann::json& j) {
  std::vector<Letter> letters;
  for (const auto& item : j) {
    letters.push_back({Generator(item.at(0).get<std::string>()),
                       item.at(1).get<int>()});
  }
  return Word(letters);
}

nlohmann::json to_json(const Presentation& p) {
  nlohmann::json j;
  j["name"] = p.name();
  j["generators"] = nlohmann::json::array();
  for (Generator g : p.generators()) {
    j["generators"].push_back(g.name());
  }
  j["relators"] = nlohmann::json::array();
  for (const Word& r : p.relators()) {
    j["relators"].push_back(word_to_json(r));
  }
  return j;
}

Presentation presentation_from_json(const nlohmann::json& j) {
  std::vector<Generator> gens;
  for (const auto& g : j.at("generators")) {
    gens.emplace_back(g.get<std::string>());
  }
  std::vector<Word> rels;
  for (const auto& r : j.at("relators")) {
    rels.push_back(word_from_json(r));
  }
  return Presentation(j.value("name", std::string{}), std::move(gens),
                      std::move(rels));
}

}  // namespace fpv
