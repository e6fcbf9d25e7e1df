#pragma once

#include <map>
#include <string>
#include <vector>

#include "glfrob/combinatorics.hpp"
#include "glfrob/fp.hpp"

namespace glfrob {

// ---- sparse homogeneous polynomials ------------------------------------------

// One fixed degree per instance, enforced on insert; the zero polynomial
// reports degree -1.  Zero coefficients are never stored.
class PolyFp {
 public:
  PolyFp(int n_vars, const PrimeContext& ctx);
  static PolyFp monomial(const std::vector<int>& exponents, const PrimeContext& ctx);

  int vars() const { return n_; }
  int degree() const { return deg_; }
  bool is_zero() const { return terms_.empty(); }
  const PrimeContext& ctx() const { return ctx_; }
  const std::map<std::vector<int>, Fp>& terms() const { return terms_; }

  Fp coeff(const std::vector<int>& exponents) const;
  void add_term(const std::vector<int>& exponents, Fp c);

  PolyFp& operator+=(const PolyFp& o);
  friend PolyFp operator+(PolyFp a, const PolyFp& b) {
    a += b;
    return a;
  }
  PolyFp operator*(const PolyFp& o) const;
  PolyFp scaled(Fp c) const;
  PolyFp frobenius() const;  // p-th power
  bool operator==(const PolyFp& o) const;
  std::string str() const;

 private:
  int n_;
  int deg_ = -1;
  PrimeContext ctx_;
  std::map<std::vector<int>, Fp> terms_;
};

// ---- divided power operators --------------------------------------------------

// Off-diagonal e_{i,j}^{(l)} moves l powers of x_j onto x_i; toral ops act
// diagonally.  Coordinates are zero based, i != j for the elementary kind.
struct DividedOp {
  enum class Kind { elem, toral };
  Kind kind = Kind::elem;
  int i = 0;
  int j = 0;  // ignored for toral
  int l = 1;
};

// e_{i,j}^{(l)} x^a = binom(a_j, l) x^{a + l e_i - l e_j}, extended linearly.
PolyFp apply_e(const DividedOp& op, const PolyFp& f);

// binom(h_i, l) x^a = binom(a_i, l) x^a.
PolyFp apply_h(const DividedOp& op, const PolyFp& f);

// Both sides of e^{(l)}(fg) = sum_s e^{(s)}(f) e^{(l-s)}(g).  Unequal sides
// mean the action rule is broken, an invariant violation.
struct ProductRuleSides {
  PolyFp lhs, rhs;
};
ProductRuleSides divided_leibniz_check(int i, int j, int l, const PolyFp& f,
                                       const PolyFp& g);

// ---- submodule closure ---------------------------------------------------------

// Smallest subspace of the degree-d piece of k[x_1..x_n] containing the seeds
// and stable under every e_{i,j}^{(p^t)} with p^t <= d together with the
// coordinate permutations.  Returns the reduced echelon basis; a monomial
// seed set stays monomial and comes back sorted with unit coefficients.
// dim_cap >= 0 bounds the basis size, exceeding it is an exhaustion error.
std::vector<PolyFp> gln_submodule_closure(const std::vector<PolyFp>& seeds, int d,
                                          int n, const PrimeContext& ctx,
                                          long long dim_cap = -1);

// True iff the span of the monomial set is stable under every e_{i,j}^{(p^t)}
// with p^t <= d.  The torus acts diagonally on monomials, so this decides GL
// stability of the span.
bool verify_gl_stability(const std::vector<std::vector<int>>& monomials, int d,
                         int n, const PrimeContext& ctx);

}  // namespace glfrob
