// Free-group words over named generators.
//
// A Word is always stored freely reduced. Generators are interned symbols, so
// equality is a pointer compare while ordering and printing go through
// the name.

#ifndef FPVERIFY_WORD_HPP_
#define FPVERIFY_WORD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fpv {

class Generator {
 public:
  // Interns `name`; throws std::invalid_argument unless it matches
  // [A-Za-z][A-Za-z0-9_]*.
  explicit Generator(std::string_view name);

  [[nodiscard]] const std::string& name() const noexcept { return *name_; }
  // Stable for the lifetime of the process; not an ordering.
  [[nodiscard]] std::uintptr_t id() const noexcept {
    return reinterpret_cast<std::uintptr_t>(name_);
  }

  static bool is_valid_name(std::string_view name) noexcept;

  friend bool operator==(Generator lhs, Generator rhs) noexcept {
    return lhs.name_ == rhs.name_;
  }
  friend std::strong_ordering operator<=>(Generator lhs, Generator rhs) {
    return lhs.name_ == rhs.name_ ? std::strong_ordering::equal
                                  : lhs.name() <=> rhs.name();
  }

 private:
  const std::string* name_;
};

std::ostream& operator<<(std::ostream& os, Generator g);

struct Letter {
  Generator gen;
  int exponent;  // +1 or -1

  [[nodiscard]] Letter inverse() const noexcept { return {gen, -exponent}; }
  [[nodiscard]] bool cancels(const Letter& other) const noexcept {
    return gen == other.gen && exponent == -other.exponent;
  }
  friend bool operator==(const Letter&, const Letter&) = default;
};

enum class CommutatorConvention {
  Default,  // [u,v] = u v u^-1 v^-1
  Gap,      // [u,v] = u^-1 v^-1 u v
};

std::string_view to_string(CommutatorConvention c);
CommutatorConvention parse_convention(std::string_view s);

class Word {
 public:
  using size_type = std::size_t;

  Word() = default;
  // The single letter g^exponent; exponent must be +1 or -1.
  explicit Word(Generator g, int exponent = 1);
  explicit Word(const Letter& l) : Word(l.gen, l.exponent) {}
  // Freely reduces the given sequence.
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters);

  [[nodiscard]] std::span<const Letter> letters() const noexcept {
    return letters_;
  }
  [[nodiscard]] size_type size() const noexcept { return letters_.size(); }
  [[nodiscard]] bool empty() const noexcept { return letters_.empty(); }
  [[nodiscard]] const Letter& operator[](size_type i) const {
    return letters_[i];
  }
  [[nodiscard]] auto begin() const noexcept { return letters_.begin(); }
  [[nodiscard]] auto end() const noexcept { return letters_.end(); }

  [[nodiscard]] Word inverse() const;
  [[nodiscard]] Word pow(long n) const;
  // Letters [pos, pos + len), reduced by construction.
  [[nodiscard]] Word subword(size_type pos, size_type len) const;

  [[nodiscard]] bool contains(Generator g) const noexcept;
  [[nodiscard]] long exponent_sum(Generator g) const noexcept;
  [[nodiscard]] std::size_t occurrences(Generator g) const noexcept;
  [[nodiscard]] bool is_cyclically_reduced() const noexcept;

  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) {
    lhs *= rhs;
    return lhs;
  }

  friend bool operator==(const Word&, const Word&) = default;
  // Shortlex on (length, letters by generator name then exponent).
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs);

 private:
  std::vector<Letter> letters_;
};

// Canonical text form: juxtaposition separated by spaces, runs compressed to
// caret powers ("g q^-2 g"); the identity prints as "1".
std::string to_string(const Word& w);
std::ostream& operator<<(std::ostream& os, const Word& w);

Word free_reduce(std::span<const Letter> letters);
Word invert(const Word& w);
// u w u^-1
Word conjugate(const Word& w, const Word& u);
Word commutator(const Word& u, const Word& v,
                CommutatorConvention convention = CommutatorConvention::Default);
// Replaces every g^{+-1} in w by replacement^{+-1}.
Word substitute(const Word& w, Generator g, const Word& replacement);

struct CyclicReduction {
  Word core;
  Word conjugator;  // original == conjugator * core * conjugator^-1
};
CyclicReduction cyclic_reduce(const Word& w);

// w = p s with |p| = k; returns s p.
Word rotate(const Word& w, std::size_t k);
// All distinct cyclic rotations of a cyclically reduced word.
std::vector<Word> rotations(const Word& w);
// Least rotation of w or w^-1 (after cyclic reduction) in Word order.
Word cyclic_normal_form(const Word& w);

}  // namespace fpv

template <>
struct std::hash<fpv::Generator> {
  std::size_t operator()(fpv::Generator g) const noexcept {
    return std::hash<std::uintptr_t>{}(g.id());
  }
};

template <>
struct std::hash<fpv::Word> {
  std::size_t operator()(const fpv::Word& w) const noexcept;
};

#endif  // FPVERIFY_WORD_HPP_
