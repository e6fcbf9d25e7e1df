#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glfrob/errors.hpp"
#include "glfrob/fp.hpp"

namespace glfrob {

struct PrimeContext {
  uint32_t p;
  explicit PrimeContext(uint32_t prime);
};

// Weakly decreasing sequence of positive integers.  Construction sorts and
// drops zeros; negative parts are rejected.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> raw);

  int size() const;  // sum of parts
  int length() const { return static_cast<int>(parts.size()); }
  bool empty() const { return parts.empty(); }
  bool operator==(const Partition&) const = default;
  bool operator<(const Partition& o) const;  // degree, then lex; total order
  std::string str() const;
};

// Finitely supported exponent vector, nonnegative entries, trailing zeros
// trimmed in canonical form.
struct Weight {
  std::vector<int> entries;

  Weight() = default;
  explicit Weight(std::vector<int> raw);

  int total() const;  // sum of entries
  std::vector<int> support() const;
  bool operator==(const Weight&) const = default;
};

// Part-count profile of a flat weight: counts[i] = number of parts equal p^i.
struct PMagnitude {
  std::vector<int> counts;

  bool operator==(const PMagnitude&) const = default;
  // Lexicographic comparison with missing entries read as zero.
  bool lex_greater(const PMagnitude& o) const;
  std::string str() const;
};

// Base-p digits, least significant first, trailing zeros trimmed.
std::vector<int> digits(long long n, const PrimeContext& ctx);

// C(a, b) mod p via the digitwise product rule.
Fp lucas_binom(long long a, long long b, const PrimeContext& ctx);

// Largest q = p^r with q | s.
long long largest_p_power_dividing(long long s, const PrimeContext& ctx);

// Every nonzero entry a power of p (1 = p^0 counts).
bool is_flat(const Weight& w, const PrimeContext& ctx);

PMagnitude pmag(const Weight& w, const PrimeContext& ctx);

// Strict order: lambda < mu iff pmag(lambda) lexicographically exceeds
// pmag(mu); fibers of pmag are the equivalence classes.
bool flat_order_less(const Weight& lambda, const Weight& mu,
                     const PrimeContext& ctx);

// Unique expansion mu = sum_i p^i * mu^i with every mu^i p-restricted
// (successive part differences < p).  Reconstruction is re-checked before
// returning.
std::vector<Partition> p_restricted_decomposition(const Partition& mu,
                                                  const PrimeContext& ctx);

// (|mu^0|, |mu^1|, ...) from the p-restricted decomposition.
PMagnitude min_flat_pmag(const Partition& mu, const PrimeContext& ctx);

bool weights_disjoint(const Weight& w1, const Weight& w2);

}  // namespace glfrob
