#pragma once

#include <optional>
#include <vector>

#include "twistkit/int_util.hpp"

namespace twistkit {

using IntMatrix = std::vector<std::vector<Int>>;
using IntVector = std::vector<Int>;

// Solve M x = b over Z/p^P. Pivots on entries of minimal p-valuation across
// the remaining submatrix, eliminates, then lifts by back-substitution.
// Throws NoSolution when the system is inconsistent mod p^P.
IntVector linear_solve_mod(const IntMatrix& M, const IntVector& b, const Int& p,
                           long P);

// Solve M x = b over Q (exact rational elimination) and return the solution
// when it is integral; nullopt when the system is inconsistent or the unique
// solution is non-integral. Requires full column rank (unique solution);
// throws Precondition otherwise.
std::optional<IntVector> linear_solve_exact(const IntMatrix& M,
                                            const IntVector& b);

Int inverse_mod(const Int& a, const Int& m);  // throws NoSolution

}  // namespace twistkit
