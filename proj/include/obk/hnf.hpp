#pragma once

// Integer row echelon form and lattice membership over int64.

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace obk {

class IntLattice {
 public:
  using Vec = std::vector<std::int64_t>;

  IntLattice(std::vector<Vec> gens, std::size_t dim) : dim_(dim) {
    for (auto& g : gens)
      if (g.size() != dim) throw std::invalid_argument("IntLattice: generator of wrong dimension");
    std::size_t row = 0;
    for (std::size_t col = 0; col < dim && row < gens.size(); ++col) {
      // Euclid on column col among rows >= row until one nonzero remains.
      while (true) {
        std::size_t best = gens.size();
        for (std::size_t r = row; r < gens.size(); ++r)
          if (gens[r][col] != 0 && (best == gens.size() || std::llabs(gens[r][col]) < std::llabs(gens[best][col])))
            best = r;
        if (best == gens.size()) break;
        std::swap(gens[row], gens[best]);
        bool others = false;
        for (std::size_t r = row + 1; r < gens.size(); ++r) {
          if (gens[r][col] == 0) continue;
          std::int64_t q = gens[r][col] / gens[row][col];
          for (std::size_t k = col; k < dim; ++k) gens[r][k] -= q * gens[row][k];
          if (gens[r][col] != 0) others = true;
        }
        if (!others) {
          if (gens[row][col] < 0)
            for (std::size_t k = col; k < dim; ++k) gens[row][k] = -gens[row][k];
          pivots_.push_back(col);
          basis_.push_back(gens[row]);
          ++row;
          break;
        }
      }
    }
  }

  bool contains(Vec v) const {
    if (v.size() != dim_) throw std::invalid_argument("IntLattice: vector of wrong dimension");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      std::size_t col = pivots_[i];
      // Entries left of the pivot must already be cleared.
      for (std::size_t k = i ? pivots_[i - 1] + 1 : 0; k < col; ++k)
        if (v[k] != 0) return false;
      if (v[col] % basis_[i][col] != 0) return false;
      std::int64_t q = v[col] / basis_[i][col];
      for (std::size_t k = col; k < dim_; ++k) v[k] -= q * basis_[i][k];
    }
    for (auto x : v)
      if (x != 0) return false;
    return true;
  }

  std::size_t rank() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

 private:
  std::size_t dim_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace obk
