#pragma once

#include "replete/interval.hpp"
#include "replete/polynomial.hpp"

#include <vector>

namespace replete {

// A certified enclosure of one complex root of a squarefree polynomial.
// Real roots carry an exact-zero imaginary part.
struct RootEnclosure {
  bool is_real = false;
  ComplexInterval box;
};

struct RootIsolation {
  // Real roots in descending order, then one representative per conjugate
  // pair (positive imaginary part), descending by real part.
  std::vector<RootEnclosure> roots;
  int real_count = 0;
  int complex_pairs = 0;
};

// Isolates all roots of a squarefree polynomial of degree >= 1 so that every
// enclosure has width at most 2^-bits. Each enclosure is backed by the
// inclusion disc |z - root| <= deg * |p(z)| / |p'(z)| together with pairwise
// disjointness of those discs. Throws PrecisionError past `cap_bits`.
RootIsolation isolate_roots(const Polynomial& p, long bits, long cap_bits = 4096);

}  // namespace replete
