#include "fpverify/abelianize.hpp"

#include <numeric>

namespace fpv {

IntegerMatrix abelianized_relation_matrix(const Presentation& p) {
  std::vector<std::size_t> rows(p.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return abelianized_relation_matrix(p, rows);
}

IntegerMatrix abelianized_relation_matrix(
    const Presentation& p, const std::vector<std::size_t>& rows) {
  IntegerMatrix m = IntegerMatrix::Zero(static_cast<Eigen::Index>(rows.size()),
                                        static_cast<Eigen::Index>(p.rank()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& l : p.relator(rows[r])) {
      auto col = p.index_of(l.gen);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(*col)) +=
          l.exponent;
    }
  }
  return m;
}

std::vector<BigInt> exponent_vector(const Presentation& p, const Word& w) {
  std::vector<BigInt> v(p.rank(), BigInt(0));
  for (const auto& l : w) {
    auto col = p.index_of(l.gen);
    if (!col) {
      throw std::invalid_argument("word uses generator '" + l.gen.name() +
                                  "' outside the presentation");
    }
    v[*col] += l.exponent;
  }
  return v;
}

AbelianInvariants homology_h1(const Presentation& p) {
  const auto snf = smith_normal_form(abelianized_relation_matrix(p));
  AbelianInvariants h;
  h.free_rank = p.rank() - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i) {
    if (snf.diagonal[i] != 1) {
      h.torsion.push_back(snf.diagonal[i]);
    }
  }
  return h;
}

bool abelian_image_vanishes(const Presentation& p,
                            const std::vector<std::size_t>& rows,
                            const Word& w) {
  const auto target = exponent_vector(p, w);
  if (rows.empty() || p.rank() == 0) {
    return std::all_of(target.begin(), target.end(),
                       [](const BigInt& x) { return x == 0; });
  }
  return solve_row_lattice(abelianized_relation_matrix(p, rows), target)
      .has_value();
}

std::string to_string(const AbelianInvariants& h) {
  if (h.is_trivial()) {
    return "0";
  }
  std::string out;
  if (h.free_rank > 0) {
    out = h.free_rank == 1 ? "Z" : "Z^" + std::to_string(h.free_rank);
  }
  for (const auto& d : h.torsion) {
    out += (out.empty() ? "" : " + ") + ("Z/" + d.str());
  }
  return out;
}

nlohmann::json to_json(const AbelianInvariants& h) {
  nlohmann::json torsion = nlohmann::json::array();
  for (const auto& d : h.torsion) {
    // Torsion of desk-scale presentations fits in 64 bits; wider values are
    // emitted as strings.
    if (d <= std::numeric_limits<long long>::max()) {
      torsion.push_back(d.convert_to<long long>());
    } else {
      torsion.push_back(d.str());
    }
  }
  return {{"free_rank", h.free_rank}, {"torsion", torsion}};
}

}  // namespace fpv
