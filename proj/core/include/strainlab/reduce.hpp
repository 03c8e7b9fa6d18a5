#pragma once

#include <cstddef>

namespace strainlab {

/// Pairwise (tree) sum of term(i) for i in [begin, end). The split points
/// depend only on the range, so the result is reproducible bit for bit.
template <class Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  constexpr std::size_t kLeaf = 64;
  if (end - begin <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

}  // namespace strainlab
