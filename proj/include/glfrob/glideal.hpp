#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glfrob/combinatorics.hpp"

namespace glfrob {

// A monomial up to reordering of variables: its sorted exponent partition.
using MonomialExponent = Partition;

// Level-indexed exponent vector (b_0, b_1, ..., b_j) encoding the product
// ideal  m^{b_0} (m^[p])^{b_1} ... (m^[p^j])^{b_j}.  The empty vector is the
// unit ideal (empty product).
struct DigitVector {
  std::vector<int> b;

  DigitVector() = default;
  explicit DigitVector(std::vector<int> raw);

  bool is_unit() const { return b.empty(); }
  int level() const;  // max index with b_m > 0; -1 for the unit token
  int digit_sum() const;
  long long degree(const PrimeContext& ctx) const;  // sum b_m p^m
  int at(int m) const {
    return m >= 0 && m < static_cast<int>(b.size()) ? b[m] : 0;
  }

  bool operator==(const DigitVector&) const = default;
  bool operator<(const DigitVector& o) const;  // deterministic container order
  std::string str() const;                     // grammar-compatible rendering
};

// Sum of product ideals.  Canonical form: generator set is an antichain under
// containment, sorted; empty set = zero ideal; a unit generator, when present,
// is the only one.
struct GLIdeal {
  std::vector<DigitVector> gens;

  static GLIdeal zero() { return GLIdeal{}; }
  static GLIdeal unit() { return GLIdeal{{DigitVector{}}}; }
  bool is_zero() const { return gens.empty(); }
  bool is_unit() const { return gens.size() == 1 && gens[0].is_unit(); }

  bool operator==(const GLIdeal&) const = default;
  std::string str() const;
};

// ---- digit-vector calculus --------------------------------------------------

// Digit vector of the GL-orbit ideal of x^lambda: b_m = sum over parts of the
// m-th base-p digit.  Empty lambda yields the unit token.
DigitVector orbit_ideal(const MonomialExponent& lambda, const PrimeContext& ctx);

// One fresh variable per digit: b_m variables raised to p^m.  Round-trips
// through orbit_ideal.
MonomialExponent canonical_generator(const DigitVector& b, const PrimeContext& ctx);

// Membership of x^lambda in the product ideal of c: exists an allocation
// a_{i,m} >= 0 with sum_m a_{i,m} p^m <= lambda_i per variable and
// sum_i a_{i,m} = c_m per level.  Dynamic program over variables whose state
// is the residual level-demand vector.
bool monomial_in_product(const MonomialExponent& lambda, const DigitVector& c,
                         const PrimeContext& ctx);

bool ideal_member(const MonomialExponent& lambda, const GLIdeal& I,
                  const PrimeContext& ctx);

// Containment I >= J via membership of J's canonical generators.
bool ideal_contains(const GLIdeal& I, const GLIdeal& J, const PrimeContext& ctx);

// Antichain normal form: drops generators whose ideal another generator's
// ideal contains; deterministic generator order.
GLIdeal canonicalize(std::vector<DigitVector> gens, const PrimeContext& ctx);

GLIdeal ideal_sum(const GLIdeal& I, const GLIdeal& J, const PrimeContext& ctx);
GLIdeal ideal_product(const GLIdeal& I, const GLIdeal& J, const PrimeContext& ctx);

// Radical within the lattice of GL-stable ideals: m^[p^r] with r the minimal
// generator level.  Radical of the zero ideal is the zero ideal (the
// distinguished signal); radical of the unit ideal is the unit ideal.
GLIdeal gl_radical(const GLIdeal& I, const PrimeContext& ctx);

// Zero ideal, or one generator with a single digit equal to 1 (a Frobenius
// power of m, including m itself).
bool is_gl_prime(const GLIdeal& I);

struct WitnessResult {
  enum class Status { found, none, exhausted };
  Status status;
  MonomialExponent f, g;  // meaningful only when status == found
};

// Searches for monomials f, g with f, g not in I but their variable-disjoint
// product in I.  Returns none for GL-primes; exhaustion is reported
// distinctly and never conflated with nonexistence.
WitnessResult non_primality_witness(const GLIdeal& I, const PrimeContext& ctx,
                                    int degree_cap = -1);

// Minimal monomial generators of I evaluated in n variables, up to degree
// d_max, as exponent vectors of length n (sorted by degree then
// lexicographically).
std::vector<std::vector<int>> evaluate_ideal(const GLIdeal& I, int n, int d_max,
                                             const PrimeContext& ctx);

// dim of (S/I){k^n} in degree d.
long long hilbert_function(const GLIdeal& I, int n, int d, const PrimeContext& ctx);

// Membership memo keyed by the sorted exponent pattern; one instance per
// (ideal, p), not shared across threads.
class MemberCache {
 public:
  MemberCache(const GLIdeal& I, const PrimeContext& ctx) : ideal_(I), ctx_(ctx) {}

  // exponents: any order, zeros allowed.
  bool member(const std::vector<int>& exponents);
  const GLIdeal& ideal() const { return ideal_; }

 private:
  GLIdeal ideal_;
  PrimeContext ctx_;
  std::map<std::vector<int>, bool> memo_;
};

}  // namespace glfrob
