#pragma once

#include "hrgen/grammar.hpp"

namespace hrgen {

// String graphs of the words a^n b^n c^n, n >= 0: a path from ext 1 to
// ext 2 whose edges read a..ab..bc..c (all labels of type 2).
//
//   P0: S(x, y) -> nothing                                 (n = 0)
//   P1: S(x, y) -> A(x, m1, m1, m2, m2, y)
//   P2: A(x1..x6) -> a(x1, u) b(x3, v) c(x5, w) A(u, x2, v, x4, w, x6)
//   P3: A(x1..x6) -> a(x1, x2) b(x3, x4) c(x5, x6)
//
// A carries the three open segments of the path at once. The language has
// one member of size 2 and one of each size 6n + 1.
Grammar build_anbncn_grammar();

}  // namespace hrgen
