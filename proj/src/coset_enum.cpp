#include "fpverify/coset_enum.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace fpv {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Hlt:
      return "HLT";
    case Strategy::HltLookahead:
      return "HLT-lookahead";
    case Strategy::Felsch:
      return "Felsch";
  }
  return "?";
}

Strategy parse_strategy(std::string_view s) {
  if (s == "hlt" || s == "HLT") {
    return Strategy::Hlt;
  }
  if (s == "hlt-lookahead" || s == "HLT-lookahead" || s == "lookahead") {
    return Strategy::HltLookahead;
  }
  if (s == "felsch" || s == "Felsch") {
    return Strategy::Felsch;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(s) + "'");
}

CosetTable::CosetTable(std::vector<Generator> generators, std::size_t cosets,
                       std::vector<std::uint32_t> entries)
    : generators_(std::move(generators)),
      cosets_(cosets),
      entries_(std::move(entries)) {
  if (entries_.size() != cosets_ * 2 * generators_.size()) {
    throw std::invalid_argument("coset table shape mismatch");
  }
}

std::size_t CosetTable::column(const Letter& l) const {
  auto it = std::find(generators_.begin(), generators_.end(), l.gen);
  if (it == generators_.end()) {
    throw std::invalid_argument("generator '" + l.gen.name() +
                                "' not in coset table");
  }
  return 2 * static_cast<std::size_t>(it - generators_.begin()) +
         (l.exponent < 0 ? 1 : 0);
}

std::size_t CosetTable::act(std::size_t coset, const Letter& l) const {
  return entries_[coset * 2 * generators_.size() + column(l)];
}

std::size_t CosetTable::act(std::size_t coset, const Word& w) const {
  for (const auto& l : w) {
    coset = act(coset, l);
  }
  return coset;
}

Permutation permutation_action(const CosetTable& table, const Word& w) {
  Permutation perm(table.size());
  for (std::size_t c = 0; c < table.size(); ++c) {
    perm[c] = table.act(c, w);
  }
  return perm;
}

bool is_identity(const Permutation& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) {
      return false;
    }
  }
  return true;
}

bool is_valid_permutation_representation(const CosetTable& table,
                                         const Presentation& p,
                                         const std::vector<Word>& subgroup) {
  for (const Word& r : p.relators()) {
    if (!is_identity(permutation_action(table, r))) {
      return false;
    }
  }
  for (const Word& h : subgroup) {
    if (table.act(0, h) != 0) {
      return false;
    }
  }
  return true;
}

namespace {

using Coset = std::int32_t;
constexpr Coset kUndefined = -1;

class Enumerator {
 public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgroup,
             const EnumerationOptions& options)
      : generators_(p.generators()),
        columns_(2 * p.rank()),
        options_(options) {
    for (const Word& r : p.relators()) {
      relators_.push_back(encode(p, r));
    }
    std::stable_sort(relators_.begin(), relators_.end(),
                     [](const auto& a, const auto& b) {
                       return a.size() < b.size();
                     });
    for (const Word& h : subgroup) {
      subgroup_.push_back(encode(p, h));
    }
    if (options_.strategy == Strategy::Felsch) {
      build_conjugates();
    }
    new_coset();
  }

  EnumerationResult run() {
    const auto start = std::chrono::steady_clock::now();
    EnumerationResult result;
    result.strategy = options_.strategy;
    const bool done = options_.strategy == Strategy::Felsch ? felsch() : hlt();
    result.cosets_defined_total = defined_total_;
    result.cosets_live_max = live_max_;
    result.coincidences = coincidences_;
    if (done) {
      result.status = EnumerationStatus::Completed;
      result.table = canonical_table();
      result.index = result.table->size();
    } else {
      result.status = EnumerationStatus::LimitExceeded;
    }
    result.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return result;
  }

 private:
  // -- encoding -------------------------------------------------------------

  std::vector<int> encode(const Presentation& p, const Word& w) const {
    std::vector<int> out;
    for (const auto& l : w) {
      auto i = p.index_of(l.gen);
      if (!i) {
        throw std::invalid_argument("word uses generator '" + l.gen.name() +
                                    "' outside the presentation");
      }
      out.push_back(static_cast<int>(2 * *i + (l.exponent < 0 ? 1 : 0)));
    }
    return out;
  }

  static int inverse(int col) { return col ^ 1; }

  void build_conjugates() {
    conjugates_.assign(static_cast<std::size_t>(columns_), {});
    std::unordered_set<std::string> seen;
    auto add = [&](const std::vector<int>& w) {
      for (std::size_t k = 0; k < w.size(); ++k) {
        std::vector<int> rot(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        std::string key(rot.begin(), rot.end());
        if (seen.insert(key).second) {
          conjugates_[static_cast<std::size_t>(rot.front())].push_back(rot);
        }
      }
    };
    for (const auto& r : relators_) {
      add(r);
      std::vector<int> inv;
      for (auto it = r.rbegin(); it != r.rend(); ++it) {
        inv.push_back(inverse(*it));
      }
      add(inv);
    }
  }

  // -- table primitives -----------------------------------------------------

  Coset& entry(Coset c, int col) {
    return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(columns_) +
                  static_cast<std::size_t>(col)];
  }
  bool live(Coset c) const { return forward_[static_cast<std::size_t>(c)] == c; }

  Coset new_coset() {
    const auto c = static_cast<Coset>(forward_.size());
    forward_.push_back(c);
    table_.resize(table_.size() + static_cast<std::size_t>(columns_), kUndefined);
    ++live_;
    ++defined_total_;
    live_max_ = std::max(live_max_, live_);
    return c;
  }

  bool full() const { return live_ >= options_.max_cosets; }

  // Returns false (and defines nothing) when the table is full.
  bool define(Coset c, int col) {
    if (full()) {
      return false;
    }
    const Coset d = new_coset();
    entry(c, col) = d;
    entry(d, inverse(col)) = c;
    deductions_.push_back({c, col});
    check();
    return true;
  }

  void deduce(Coset c, int col, Coset d) {
    entry(c, col) = d;
    entry(d, inverse(col)) = c;
    deductions_.push_back({c, col});
  }

  Coset rep(Coset c) {
    Coset root = c;
    while (forward_[static_cast<std::size_t>(root)] != root) {
      root = forward_[static_cast<std::size_t>(root)];
    }
    while (c != root) {
      const Coset next = forward_[static_cast<std::size_t>(c)];
      forward_[static_cast<std::size_t>(c)] = root;
      c = next;
    }
    return root;
  }

  void merge(Coset a, Coset b) {
    a = rep(a);
    b = rep(b);
    if (a == b) {
      return;
    }
    const Coset keep = std::min(a, b);
    const Coset drop = std::max(a, b);
    forward_[static_cast<std::size_t>(drop)] = keep;
    queue_.push_back(drop);
    --live_;
    ++coincidences_;
  }

  void coincidence(Coset a, Coset b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const Coset dead = queue_[i];
      for (int col = 0; col < columns_; ++col) {
        const Coset d = entry(dead, col);
        if (d == kUndefined) {
          continue;
        }
        entry(d, inverse(col)) = kUndefined;
        const Coset mu = rep(dead);
        const Coset nu = rep(d);
        if (entry(mu, col) != kUndefined) {
          merge(nu, entry(mu, col));
        } else if (entry(nu, inverse(col)) != kUndefined) {
          merge(mu, entry(nu, inverse(col)));
        } else {
          deduce(mu, col, nu);
        }
      }
    }
    queue_.clear();
    check();
  }

  // Traces w from c in both directions. With `fill`, defines cosets to close
  // the gap and returns false when a needed definition does not fit; without,
  // only records the deduction or coincidence a complete trace yields.
  bool trace(Coset c, const std::vector<int>& w, bool fill) {
    if (w.empty()) {
      return true;
    }
    Coset f = c;
    Coset b = c;
    std::ptrdiff_t i = 0;
    auto j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (true) {
      while (i <= j && entry(f, w[static_cast<std::size_t>(i)]) != kUndefined) {
        f = entry(f, w[static_cast<std::size_t>(i)]);
        ++i;
      }
      if (i > j) {
        if (f != b) {
          coincidence(f, b);
        }
        return true;
      }
      while (j >= i &&
             entry(b, inverse(w[static_cast<std::size_t>(j)])) != kUndefined) {
        b = entry(b, inverse(w[static_cast<std::size_t>(j)]));
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (j == i) {
        deduce(f, w[static_cast<std::size_t>(i)], b);
        return true;
      }
      if (!fill) {
        return true;
      }
      if (!define(f, w[static_cast<std::size_t>(i)])) {
        return false;
      }
    }
  }

  bool scan_and_fill(Coset c, const std::vector<int>& w) {
    return trace(c, w, true);
  }
  void scan(Coset c, const std::vector<int>& w) { trace(c, w, false); }

  // -- HLT ------------------------------------------------------------------

  bool hlt() {
    Coset alpha = 0;
    bool subgroup_done = false;
    while (static_cast<std::size_t>(alpha) < forward_.size()) {
      if (!live(alpha)) {
        ++alpha;
        continue;
      }
      watch_ = alpha;
      bool stuck = false;
      if (!subgroup_done) {
        for (const auto& h : subgroup_) {
          if (!scan_and_fill(0, h)) {
            stuck = true;
            break;
          }
        }
        subgroup_done = !stuck;
      }
      for (std::size_t r = 0; !stuck && r < relators_.size() && live(watch_); ++r) {
        stuck = !scan_and_fill(watch_, relators_[r]);
      }
      for (int col = 0; !stuck && col < columns_ && live(watch_); ++col) {
        if (entry(watch_, col) == kUndefined) {
          stuck = !define(watch_, col);
        }
      }
      alpha = watch_;
      deductions_.clear();
      if (stuck) {
        if (options_.strategy != Strategy::HltLookahead || !lookahead()) {
          return false;
        }
        alpha = watch_;
        continue;  // retry the same coset
      }
      ++alpha;
      if (dead_fraction_high()) {
        watch_ = alpha;
        compact();
        alpha = renumbered_;
      }
    }
    return true;
  }

  // Scans every live coset under every relator; true if space was freed.
  bool lookahead() {
    const std::size_t before = live_;
    for (Coset c = 0; static_cast<std::size_t>(c) < forward_.size(); ++c) {
      for (std::size_t r = 0; r < relators_.size() && live(c); ++r) {
        scan(c, relators_[r]);
      }
    }
    deductions_.clear();
    compact();
    return live_ < before;
  }

  // -- Felsch ---------------------------------------------------------------

  bool felsch() {
    for (const auto& h : subgroup_) {
      if (!scan_and_fill(0, h)) {
        return false;
      }
      process_deductions();
    }
    // Length-one relators and the empty table need an explicit first pass.
    for (const auto& r : relators_) {
      scan(0, r);
    }
    process_deductions();
    Coset alpha = 0;
    while (static_cast<std::size_t>(alpha) < forward_.size()) {
      watch_ = alpha;
      for (int col = 0; col < columns_ && live(watch_); ++col) {
        if (entry(watch_, col) == kUndefined) {
          if (!define(watch_, col)) {
            return false;
          }
          process_deductions();
        }
      }
      alpha = watch_ + 1;
      if (dead_fraction_high()) {
        watch_ = alpha;
        compact();
        alpha = renumbered_;
      }
    }
    return true;
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, col] = deductions_.back();
      deductions_.pop_back();
      if (!live(c)) {
        continue;
      }
      for (const auto& w : conjugates_[static_cast<std::size_t>(col)]) {
        scan(c, w);
        if (!live(c)) {
          break;
        }
      }
      if (!live(c)) {
        continue;
      }
      const Coset d = entry(c, col);
      if (d == kUndefined || !live(d)) {
        continue;
      }
      for (const auto& w : conjugates_[static_cast<std::size_t>(inverse(col))]) {
        scan(d, w);
        if (!live(d)) {
          break;
        }
      }
    }
  }

  // -- compaction and output ------------------------------------------------

  bool dead_fraction_high() const {
    return forward_.size() > 1024 && 2 * live_ < forward_.size();
  }

  // Renumbers live cosets contiguously, preserving order. The coset being
  // processed (watch_) maps to renumbered_: itself if live, else the next live
  // coset.
  void compact() {
    const std::size_t n = forward_.size();
    std::vector<Coset> map(n, kUndefined);
    Coset next = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (forward_[c] == static_cast<Coset>(c)) {
        map[c] = next++;
      }
    }
    renumbered_ = next;
    for (std::size_t c = static_cast<std::size_t>(std::max<Coset>(watch_, 0)); c < n; ++c) {
      if (map[c] != kUndefined) {
        renumbered_ = map[c];
        break;
      }
    }
    std::vector<Coset> table(static_cast<std::size_t>(next) *
                             static_cast<std::size_t>(columns_));
    for (std::size_t c = 0; c < n; ++c) {
      if (map[c] == kUndefined) {
        continue;
      }
      for (int col = 0; col < columns_; ++col) {
        const Coset e = entry(static_cast<Coset>(c), col);
        table[static_cast<std::size_t>(map[c]) * static_cast<std::size_t>(columns_) +
              static_cast<std::size_t>(col)] =
            e == kUndefined ? kUndefined : map[static_cast<std::size_t>(e)];
      }
    }
    for (auto& [c, col] : deductions_) {
      c = map[static_cast<std::size_t>(rep(c))];
    }
    table_ = std::move(table);
    forward_.resize(static_cast<std::size_t>(next));
    std::iota(forward_.begin(), forward_.end(), Coset{0});
    watch_ = renumbered_;
    check();
  }

  CosetTable canonical_table() {
    std::vector<Coset> order;
    std::vector<Coset> map(forward_.size(), kUndefined);
    map[0] = 0;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int col = 0; col < columns_; ++col) {
        const Coset d = entry(order[i], col);
        if (map[static_cast<std::size_t>(d)] == kUndefined) {
          map[static_cast<std::size_t>(d)] = static_cast<Coset>(order.size());
          order.push_back(d);
        }
      }
    }
    std::vector<std::uint32_t> entries;
    entries.reserve(order.size() * static_cast<std::size_t>(columns_));
    for (Coset c : order) {
      for (int col = 0; col < columns_; ++col) {
        entries.push_back(static_cast<std::uint32_t>(
            map[static_cast<std::size_t>(entry(c, col))]));
      }
    }
    return CosetTable(generators_, order.size(), std::move(entries));
  }

  // Involution consistency of the live part of the table.
  void check() {
    if (!options_.validate) {
      return;
    }
    for (Coset c = 0; static_cast<std::size_t>(c) < forward_.size(); ++c) {
      if (!live(c)) {
        continue;
      }
      for (int col = 0; col < columns_; ++col) {
        const Coset d = entry(c, col);
        if (d == kUndefined) {
          continue;
        }
        if (!live(d) || entry(d, inverse(col)) != c) {
          throw std::logic_error("coset table lost involution consistency");
        }
      }
    }
    if (!live(0)) {
      throw std::logic_error("subgroup coset merged away");
    }
  }

  std::vector<Generator> generators_;
  int columns_;
  EnumerationOptions options_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> subgroup_;
  std::vector<std::vector<std::vector<int>>> conjugates_;

  std::vector<Coset> table_;
  std::vector<Coset> forward_;
  std::vector<Coset> queue_;
  std::vector<std::pair<Coset, int>> deductions_;

  std::size_t live_ = 0;
  std::size_t live_max_ = 0;
  std::size_t defined_total_ = 0;
  std::size_t coincidences_ = 0;

  Coset watch_ = 0;
  Coset renumbered_ = 0;
};

}  // namespace

EnumerationResult enumerate(const Presentation& p,
                            const std::vector<Word>& subgroup,
                            const EnumerationOptions& options) {
  if (options.max_cosets == 0) {
    throw std::invalid_argument("max_cosets must be positive");
  }
  for (const Word& h : subgroup) {
    if (!p.is_word_over(h)) {
      throw std::invalid_argument("subgroup generator " + to_string(h) +
                                  " uses letters outside the presentation");
    }
  }
  Enumerator e(p, subgroup, options);
  return e.run();
}

TrivialityVerdict verify_trivial(const Presentation& p,
                                 const EnumerationOptions& options) {
  TrivialityVerdict v;
  v.enumeration = enumerate(p, {}, options);
  v.trivial = v.enumeration.completed() && v.enumeration.index == 1;
  return v;
}

nlohmann::json to_json(const EnumerationResult& r) {
  nlohmann::json j;
  j["status"] = r.completed() ? "Completed" : "LimitExceeded";
  j["index"] = r.completed() ? nlohmann::json(r.index) : nlohmann::json(nullptr);
  j["cosets_defined_total"] = r.cosets_defined_total;
  j["cosets_live_max"] = r.cosets_live_max;
  j["coincidences"] = r.coincidences;
  j["strategy"] = std::string(to_string(r.strategy));
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace fpv
