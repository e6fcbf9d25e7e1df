#pragma once

// Independent reference implementations used only to cross-check the fast
// paths.  Nothing here may call into the implementations it validates; each
// oracle takes the slowest honest route (Pascal recurrences, exhaustive
// enumeration, brute-force search) so that agreement is evidence, not
// tautology.

#include <cstdint>
#include <optional>
#include <vector>

#include "glfrob/combinatorics.hpp"
#include "glfrob/glideal.hpp"

namespace glfrob::oracles {

// C(a, b) mod p grown additively row by row (Pascal), no Lucas anywhere.
long long binom_pascal(int a, int b, uint32_t p);

// Exact C(a, b) as unsigned long long; throws on overflow. Small arguments.
unsigned long long binom_exact(int a, int b);

// Membership of x^lambda in the product ideal of digit vector c, decided by
// exhaustive recursion over all per-variable allocation matrices.
bool monomial_in_product_bruteforce(const Partition& lambda,
                                    const DigitVector& c,
                                    const PrimeContext& ctx);

// Minimal r such that the canonical generator of (m^[p^r])^N lies in I for
// some N <= n_cap; nullopt when the search space is exhausted.
std::optional<int> radical_level_by_powers(const GLIdeal& I, int n_cap,
                                           const PrimeContext& ctx);

}  // namespace glfrob::oracles
