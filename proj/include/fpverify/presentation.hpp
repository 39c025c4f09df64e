// Finite presentations and their text/JSON formats.
//
// Text grammar (whitespace separates tokens, `#` starts a line comment, an
// optional `name: <ident>` line may precede the presentation):
//
//   presentation := "<" genlist "|" rellist ">"
//   genlist      := [ ident ("," ident)* ]
//   rellist      := [ relation ("," relation)* ]
//   relation     := word "=" word ("=" word)* | word
//   word         := "1" | term+
//   term         := atom [ "^" signed-int ]
//   atom         := ident | "[" word "," word "]" | "(" word ")"
//
// A chained relation u = v = w contributes u v^-1 and v w^-1. An identifier
// that is not a declared generator but spells a sequence of declared
// one-character generators is read as their product, so `xyxy^-1` parses as
// x y x y^-1 when x and y are generators.

#ifndef FPVERIFY_PRESENTATION_HPP_
#define FPVERIFY_PRESENTATION_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpverify/word.hpp"

namespace fpv {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class Presentation {
 public:
  Presentation() = default;
  // Validates generator uniqueness and relator alphabet; relators are
  // cyclically reduced and trivial ones dropped (reported via `dropped`).
  Presentation(std::string name, std::vector<Generator> generators,
               std::vector<Word> relators,
               std::vector<std::size_t>* dropped = nullptr);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<Generator>& generators() const noexcept {
    return generators_;
  }
  [[nodiscard]] const std::vector<Word>& relators() const noexcept {
    return relators_;
  }
  [[nodiscard]] std::size_t rank() const noexcept { return generators_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return relators_.size(); }
  [[nodiscard]] const Word& relator(std::size_t i) const;

  [[nodiscard]] std::optional<std::size_t> index_of(Generator g) const noexcept;
  [[nodiscard]] bool has_generator(Generator g) const noexcept {
    return index_of(g).has_value();
  }
  // True when every letter of w is a generator of this presentation.
  [[nodiscard]] bool is_word_over(const Word& w) const noexcept;

  [[nodiscard]] Presentation with_name(std::string name) const;
  [[nodiscard]] Presentation with_relators(std::vector<Word> relators) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::string name_;
  std::vector<Generator> generators_;
  std::vector<Word> relators_;
};

struct ParseOptions {
  CommutatorConvention convention = CommutatorConvention::Default;
  // Receives one message per relator dropped as trivial.
  std::vector<std::string>* warnings = nullptr;
};

Presentation parse_presentation(std::string_view text,
                                const ParseOptions& options = {});
// Parses a word over the given generators (same atom rules as relators).
Word parse_word(std::string_view text, const std::vector<Generator>& generators,
                CommutatorConvention convention = CommutatorConvention::Default);
// Parses a single relation; returns its relators (one per `=`, or the word
// itself).
std::vector<Word> parse_relation(
    std::string_view text, const std::vector<Generator>& generators,
    CommutatorConvention convention = CommutatorConvention::Default);

Presentation load_presentation(const std::string& path,
                               const ParseOptions& options = {});

std::string print_presentation(const Presentation& p);

// {"name", "generators": [...], "relators": [[["gen", exp], ...], ...]}
nlohmann::json word_to_json(const Word& w);
Word word_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);

}  // namespace fpv

#endif  // FPVERIFY_PRESENTATION_HPP_
