#include "strainlab/grid.hpp"

#include <stdexcept>
#include <string>

namespace strainlab {

Grid3::Grid3(int n, int dealias_cutoff) : n_(n), cutoff_(dealias_cutoff < 0 ? n / 3 : dealias_cutoff) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid size must be a power of two >= 8, got " + std::to_string(n));
  if (cutoff_ < 1 || cutoff_ > n / 3)
    throw std::invalid_argument("dealias cutoff must lie in [1, n/3] = [1, " +
                                std::to_string(n / 3) + "], got " + std::to_string(cutoff_));
}

}  // namespace strainlab
