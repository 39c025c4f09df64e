#include "fpverify/word.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace fpv {

namespace {

class SymbolTable {
 public:
  const std::string* intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = table_.find(std::string(name));
    if (it != table_.end()) {
      return &*it;
    }
    return &*table_.emplace(name).first;
  }

 private:
  std::mutex mutex_;
  // Node-based: element addresses are stable across rehashing.
  std::unordered_set<std::string> table_;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

bool is_alpha(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Appends `l` to a reduced sequence, cancelling against the tail.
void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().cancels(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Generator::Generator(std::string_view name) {
  if (!is_valid_name(name)) {
    throw std::invalid_argument("invalid generator name '" +
                                std::string(name) + "'");
  }
  name_ = symbols().intern(name);
}

bool Generator::is_valid_name(std::string_view name) noexcept {
  if (name.empty() || !is_alpha(name.front())) {
    return false;
  }
  return std::all_of(name.begin(), name.end(), [](char c) {
    return is_alpha(c) || is_digit(c) || c == '_';
  });
}

std::ostream& operator<<(std::ostream& os, Generator g) {
  return os << g.name();
}

std::string_view to_string(CommutatorConvention c) {
  return c == CommutatorConvention::Default ? "default" : "gap";
}

CommutatorConvention parse_convention(std::string_view s) {
  if (s == "default") {
    return CommutatorConvention::Default;
  }
  if (s == "gap") {
    return CommutatorConvention::Gap;
  }
  throw std::invalid_argument("unknown commutator convention '" +
                              std::string(s) + "'");
}

Word::Word(Generator g, int exponent) {
  if (exponent != 1 && exponent != -1) {
    throw std::invalid_argument("letter exponent must be +1 or -1");
  }
  letters_.push_back({g, exponent});
}

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (const auto& l : letters) {
    if (l.exponent != 1 && l.exponent != -1) {
      throw std::invalid_argument("letter exponent must be +1 or -1");
    }
    push_reduced(letters_, l);
  }
}

Word::Word(std::initializer_list<Letter> letters)
    : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word Word::inverse() const {
  Word result;
  result.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    result.letters_.push_back(it->inverse());
  }
  return result;
}

Word Word::pow(long n) const {
  Word base = n < 0 ? inverse() : *this;
  Word result;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) {
    result *= base;
  }
  return result;
}

Word Word::subword(size_type pos, size_type len) const {
  if (pos > letters_.size() || len > letters_.size() - pos) {
    throw std::out_of_range("subword range outside word");
  }
  Word result;
  result.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                         letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return result;
}

bool Word::contains(Generator g) const noexcept {
  return std::any_of(letters_.begin(), letters_.end(),
                     [g](const Letter& l) { return l.gen == g; });
}

long Word::exponent_sum(Generator g) const noexcept {
  long sum = 0;
  for (const auto& l : letters_) {
    if (l.gen == g) {
      sum += l.exponent;
    }
  }
  return sum;
}

std::size_t Word::occurrences(Generator g) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(letters_.begin(), letters_.end(),
                    [g](const Letter& l) { return l.gen == g; }));
}

bool Word::is_cyclically_reduced() const noexcept {
  return letters_.size() < 2 || !letters_.front().cancels(letters_.back());
}

Word& Word::operator*=(const Word& rhs) {
  // Cancel across the seam only; both sides are already reduced.
  std::size_t k = 0;
  while (k < rhs.size() && !letters_.empty() &&
         letters_.back().cancels(rhs.letters_[k])) {
    letters_.pop_back();
    ++k;
  }
  letters_.insert(letters_.end(),
                  rhs.letters_.begin() + static_cast<std::ptrdiff_t>(k),
                  rhs.letters_.end());
  return *this;
}

std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
  if (auto c = lhs.size() <=> rhs.size(); c != 0) {
    return c;
  }
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (auto c = lhs[i].gen <=> rhs[i].gen; c != 0) {
      return c;
    }
    // Positive letter before its inverse.
    if (auto c = rhs[i].exponent <=> lhs[i].exponent; c != 0) {
      return c;
    }
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Word& w) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) {
      ++j;
    }
    long power = static_cast<long>(j - i) * w[i].exponent;
    if (!out.empty()) {
      out += ' ';
    }
    out += w[i].gen.name();
    if (power != 1) {
      out += '^';
      out += std::to_string(power);
    }
    i = j;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << to_string(w);
}

Word free_reduce(std::span<const Letter> letters) { return Word(letters); }

Word invert(const Word& w) { return w.inverse(); }

Word conjugate(const Word& w, const Word& u) { return u * w * u.inverse(); }

Word commutator(const Word& u, const Word& v, CommutatorConvention convention) {
  if (convention == CommutatorConvention::Default) {
    return u * v * u.inverse() * v.inverse();
  }
  return u.inverse() * v.inverse() * u * v;
}

Word substitute(const Word& w, Generator g, const Word& replacement) {
  const Word replacement_inverse = replacement.inverse();
  Word result;
  for (const auto& l : w) {
    if (l.gen == g) {
      result *= l.exponent > 0 ? replacement : replacement_inverse;
    } else {
      result *= Word(l.gen, l.exponent);
    }
  }
  return result;
}

CyclicReduction cyclic_reduce(const Word& w) {
  std::size_t k = 0;
  const std::size_t n = w.size();
  while (2 * k + 1 < n && w[k].cancels(w[n - 1 - k])) {
    ++k;
  }
  return {w.subword(k, n - 2 * k), w.subword(0, k)};
}

Word rotate(const Word& w, std::size_t k) {
  if (w.empty()) {
    return w;
  }
  k %= w.size();
  std::vector<Letter> letters(w.begin() + static_cast<std::ptrdiff_t>(k),
                              w.end());
  letters.insert(letters.end(), w.begin(),
                 w.begin() + static_cast<std::ptrdiff_t>(k));
  return Word(letters);
}

std::vector<Word> rotations(const Word& w) {
  std::vector<Word> out;
  for (std::size_t k = 0; k < std::max<std::size_t>(w.size(), 1); ++k) {
    Word r = rotate(w, k);
    if (std::find(out.begin(), out.end(), r) == out.end()) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

Word cyclic_normal_form(const Word& w) {
  const Word core = cyclic_reduce(w).core;
  Word best = core;
  for (const Word& candidate : {core, core.inverse()}) {
    for (std::size_t k = 0; k < candidate.size(); ++k) {
      Word r = rotate(candidate, k);
      if (r < best) {
        best = std::move(r);
      }
    }
  }
  return best;
}

}  // namespace fpv

std::size_t std::hash<fpv::Word>::operator()(const fpv::Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& l : w) {
    h ^= std::hash<fpv::Generator>{}(l.gen) + (l.exponent > 0 ? 0x9e37 : 0x79b9);
    h *= 0x100000001b3ULL;
  }
  return h;
}
