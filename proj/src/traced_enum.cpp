#include "fpverify/traced_enum.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fpv {

namespace {

using Coset = std::int32_t;
constexpr Coset kUndefined = -1;

// Reference to a certificate DAG node, possibly inverted. Node 0 is the empty
// certificate.
struct Ref {
  std::uint32_t node = 0;
  bool inverted = false;

  [[nodiscard]] Ref inverse() const { return {node, !inverted}; }
  [[nodiscard]] bool empty() const { return node == 0; }
};

struct DagNode {
  std::vector<Ref> parts;  // product, in order; empty for leaves
  Factor leaf;             // used when parts is empty and this is not node 0
};

struct Conjugate {
  std::vector<int> columns;
  std::size_t relator;  // index into the original presentation
  int sign;
  Word alpha;  // r^sign = alpha beta; this conjugate is beta alpha
};

class TracedFelsch {
 public:
  TracedFelsch(const Presentation& p, const std::vector<std::size_t>& rows,
               const TracedEnumerationOptions& options)
      : p_(p), columns_(static_cast<int>(2 * p.rank())), options_(options) {
    nodes_.push_back({});
    for (Generator g : p.generators()) {
      letters_.emplace_back(g, 1);
      letters_.emplace_back(g, -1);
    }
    conjugates_.assign(static_cast<std::size_t>(columns_), {});
    std::set<std::vector<int>> seen;
    for (std::size_t r : rows) {
      for (int sign : {1, -1}) {
        const Word rs = sign > 0 ? p.relator(r) : p.relator(r).inverse();
        for (std::size_t k = 0; k < rs.size(); ++k) {
          Conjugate c{encode(rotate(rs, k)), r, sign, rs.subword(0, k)};
          if (seen.insert(c.columns).second) {
            conjugates_[static_cast<std::size_t>(c.columns.front())].push_back(
                std::move(c));
          }
        }
      }
    }
    new_coset(Word{});
  }

  bool run() {
    // Length-one relators fire without any prior definition.
    for (int col = 0; col < columns_; ++col) {
      for (const Conjugate& c : conjugates_[static_cast<std::size_t>(col)]) {
        scan(0, c);
      }
    }
    process_deductions();
    for (Coset alpha = 0; static_cast<std::size_t>(alpha) < forward_.size();
         ++alpha) {
      for (int col = 0; col < columns_ && live(alpha); ++col) {
        if (entry(alpha, col) == kUndefined) {
          if (live_ >= options_.max_cosets || exhausted()) {
            return false;
          }
          define(alpha, col);
          process_deductions();
        }
      }
    }
    return live_ == 1;
  }

  std::size_t defined_total() const { return defined_total_; }
  std::size_t live_max() const { return live_max_; }

  Ref generator_ref(int col) const { return cert(0, col); }
  bool exhausted() const { return nodes_.size() > options_.max_steps; }

  // Nodes 1.. become steps 0..; node 0 (empty) is never referenced by a
  // product.
  std::vector<DerivationStep> steps() const {
    std::vector<DerivationStep> out;
    out.reserve(nodes_.size() - 1);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      DerivationStep s;
      if (nodes_[i].parts.empty()) {
        s.factor = nodes_[i].leaf;
      }
      for (const Ref& r : nodes_[i].parts) {
        s.parts.push_back({r.node - 1, r.inverted});
      }
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  std::vector<int> encode(const Word& w) const {
    std::vector<int> out;
    for (const auto& l : w) {
      out.push_back(static_cast<int>(2 * *p_.index_of(l.gen) +
                                     (l.exponent < 0 ? 1 : 0)));
    }
    return out;
  }
  static int inverse(int col) { return col ^ 1; }

  // -- certificate DAG ------------------------------------------------------

  Ref leaf(Factor f) {
    nodes_.push_back({{}, std::move(f)});
    return {static_cast<std::uint32_t>(nodes_.size() - 1), false};
  }

  Ref product(const std::vector<Ref>& parts) {
    std::vector<Ref> kept;
    for (const Ref& r : parts) {
      if (!r.empty()) {
        kept.push_back(r);
      }
    }
    if (kept.empty()) {
      return {};
    }
    if (kept.size() == 1) {
      return kept.front();
    }
    nodes_.push_back({std::move(kept), {}});
    return {static_cast<std::uint32_t>(nodes_.size() - 1), false};
  }

  // -- table ----------------------------------------------------------------

  std::size_t slot(Coset c, int col) const {
    return static_cast<std::size_t>(c) * static_cast<std::size_t>(columns_) +
           static_cast<std::size_t>(col);
  }
  Coset entry(Coset c, int col) const { return table_[slot(c, col)]; }
  Ref cert(Coset c, int col) const { return certs_[slot(c, col)]; }
  bool live(Coset c) const { return forward_[static_cast<std::size_t>(c)] == c; }

  Coset new_coset(Word w) {
    const auto c = static_cast<Coset>(forward_.size());
    forward_.push_back(c);
    forward_cert_.push_back({});
    words_.push_back(std::move(w));
    table_.resize(table_.size() + static_cast<std::size_t>(columns_), kUndefined);
    certs_.resize(table_.size());
    ++live_;
    ++defined_total_;
    live_max_ = std::max(live_max_, live_);
    return c;
  }

  // c.col = d with certificate for W(c) x W(d)^-1.
  void set(Coset c, int col, Coset d, Ref proof) {
    table_[slot(c, col)] = d;
    certs_[slot(c, col)] = proof;
    table_[slot(d, inverse(col))] = c;
    certs_[slot(d, inverse(col))] = proof.inverse();
    deductions_.push_back({c, col});
  }

  void define(Coset c, int col) {
    const Coset d = new_coset(
        words_[static_cast<std::size_t>(c)] *
        Word(letters_[static_cast<std::size_t>(col)]));
    set(c, col, d, {});
  }

  // Root of c plus a certificate for W(c) W(root)^-1; compresses the path.
  std::pair<Coset, Ref> rep(Coset c) {
    std::vector<Coset> path;
    Coset root = c;
    while (forward_[static_cast<std::size_t>(root)] != root) {
      path.push_back(root);
      root = forward_[static_cast<std::size_t>(root)];
    }
    // Walk back from the node nearest the root, accumulating.
    Ref acc{};
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const auto i = static_cast<std::size_t>(*it);
      acc = product({forward_cert_[i], acc});
      forward_[i] = root;
      forward_cert_[i] = acc;
    }
    return {root, acc};
  }

  // `proof` certifies W(a) W(b)^-1.
  void merge(Coset a, Coset b, Ref proof) {
    auto [ra, ca] = rep(a);
    auto [rb, cb] = rep(b);
    if (ra == rb) {
      return;
    }
    // W(ra) W(rb)^-1 = (W(a) W(ra)^-1)^-1 proof (W(b) W(rb)^-1)
    const Ref link = product({ca.inverse(), proof, cb});
    if (ra < rb) {
      forward_[static_cast<std::size_t>(rb)] = ra;
      forward_cert_[static_cast<std::size_t>(rb)] = link.inverse();
      queue_.push_back(rb);
    } else {
      forward_[static_cast<std::size_t>(ra)] = rb;
      forward_cert_[static_cast<std::size_t>(ra)] = link;
      queue_.push_back(ra);
    }
    --live_;
  }

  void coincidence(Coset a, Coset b, Ref proof) {
    queue_.clear();
    merge(a, b, proof);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const Coset dead = queue_[i];
      for (int col = 0; col < columns_; ++col) {
        const Coset d = entry(dead, col);
        if (d == kUndefined) {
          continue;
        }
        const Ref e = cert(dead, col);
        table_[slot(d, inverse(col))] = kUndefined;
        auto [mu, cmu] = rep(dead);
        auto [nu, cnu] = rep(d);
        // W(mu) x W(nu)^-1
        const Ref z = product({cmu.inverse(), e, cnu});
        if (entry(mu, col) != kUndefined) {
          merge(nu, entry(mu, col), product({z.inverse(), cert(mu, col)}));
        } else if (entry(nu, inverse(col)) != kUndefined) {
          merge(mu, entry(nu, inverse(col)),
                product({z, cert(nu, inverse(col))}));
        } else {
          set(mu, col, nu, z);
        }
      }
    }
    queue_.clear();
  }

  void scan(Coset c, const Conjugate& conj) {
    const std::vector<int>& w = conj.columns;
    Coset f = c;
    Coset b = c;
    std::ptrdiff_t i = 0;
    auto j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    std::vector<Ref> forward_path;
    std::vector<Ref> backward_path;
    while (i <= j && entry(f, w[static_cast<std::size_t>(i)]) != kUndefined) {
      forward_path.push_back(cert(f, w[static_cast<std::size_t>(i)]));
      f = entry(f, w[static_cast<std::size_t>(i)]);
      ++i;
    }
    if (i <= j) {
      while (j >= i &&
             entry(b, inverse(w[static_cast<std::size_t>(j)])) != kUndefined) {
        backward_path.push_back(cert(b, inverse(w[static_cast<std::size_t>(j)])));
        b = entry(b, inverse(w[static_cast<std::size_t>(j)]));
        --j;
      }
      if (j > i) {
        return;
      }
    }
    if (i > j && f == b) {
      return;
    }
    // W(c) rho W(c)^-1 = F X B^-1 where F, B are the traced products.
    std::vector<Ref> parts;
    for (auto it = forward_path.rbegin(); it != forward_path.rend(); ++it) {
      parts.push_back(it->inverse());
    }
    parts.push_back(leaf({words_[static_cast<std::size_t>(c)] * conj.alpha.inverse(),
                          conj.relator, conj.sign}));
    parts.insert(parts.end(), backward_path.begin(), backward_path.end());
    const Ref x = product(parts);
    if (j == i) {
      set(f, w[static_cast<std::size_t>(i)], b, x);
    } else {
      coincidence(f, b, x);
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, col] = deductions_.back();
      deductions_.pop_back();
      if (!live(c)) {
        continue;
      }
      for (const Conjugate& w : conjugates_[static_cast<std::size_t>(col)]) {
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
      for (const Conjugate& w :
           conjugates_[static_cast<std::size_t>(inverse(col))]) {
        scan(d, w);
        if (!live(d)) {
          break;
        }
      }
    }
  }

  const Presentation& p_;
  int columns_;
  TracedEnumerationOptions options_;
  std::vector<Letter> letters_;
  std::vector<std::vector<Conjugate>> conjugates_;

  std::vector<DagNode> nodes_;
  std::vector<Coset> table_;
  std::vector<Ref> certs_;
  std::vector<Coset> forward_;
  std::vector<Ref> forward_cert_;
  std::vector<Word> words_;
  std::vector<Coset> queue_;
  std::vector<std::pair<Coset, int>> deductions_;
  std::size_t live_ = 0;
  std::size_t live_max_ = 0;
  std::size_t defined_total_ = 0;
};

}  // namespace

std::optional<TrivialityWitness> certify_triviality(
    const Presentation& p, const std::vector<std::size_t>& allowed,
    const TracedEnumerationOptions& options) {
  std::vector<std::size_t> rows = allowed;
  if (rows.empty()) {
    rows.resize(p.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
  }
  TracedFelsch engine(p, rows, options);
  if (!engine.run()) {
    return std::nullopt;
  }
  TrivialityWitness witness;
  witness.cosets_defined_total = engine.defined_total();
  witness.cosets_live_max = engine.live_max();
  witness.steps = engine.steps();
  for (std::size_t i = 0; i < p.rank(); ++i) {
    const Ref r = engine.generator_ref(static_cast<int>(2 * i));
    if (r.empty()) {
      // Only the empty word has an empty proof.
      throw std::logic_error("traced enumeration lost a generator proof");
    }
    witness.roots.emplace(p.generators()[i], StepRef{r.node - 1, r.inverted});
  }
  return witness;
}

Derivation derivation_for_word(const TrivialityWitness& witness,
                               const Word& target) {
  Derivation d{target, witness.steps};
  DerivationStep product;
  for (const auto& l : target) {
    auto it = witness.roots.find(l.gen);
    if (it == witness.roots.end()) {
      throw std::invalid_argument("no derivation for generator '" +
                                  l.gen.name() + "'");
    }
    product.parts.push_back(
        {it->second.step, l.exponent > 0 ? it->second.inverted
                                         : !it->second.inverted});
  }
  if (product.parts.empty()) {
    return Derivation{target, {}};
  }
  d.steps.push_back(std::move(product));
  return prune(d);
}

}  // namespace fpv
