#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "glfrob/dist.hpp"
#include "glfrob/enumerate.hpp"
#include "glfrob/errors.hpp"
#include "glfrob/glideal.hpp"
#include "glfrob/ideal_expr.hpp"

using namespace glfrob;

namespace {

DividedOp E(int i, int j, int l) { return {DividedOp::Kind::elem, i, j, l}; }
DividedOp H(int i, int l) { return {DividedOp::Kind::toral, i, 0, l}; }

PolyFp mono(std::vector<int> a, const PrimeContext& ctx) {
  return PolyFp::monomial(a, ctx);
}

PolyFp random_poly(std::mt19937& rng, const PrimeContext& ctx, int n, int d,
                   int term_count) {
  PolyFp f(n, ctx);
  std::uniform_int_distribution<int> coef(1, static_cast<int>(ctx.p) - 1);
  std::uniform_int_distribution<int> var(0, n - 1);
  for (int t = 0; t < term_count; ++t) {
    std::vector<int> a(static_cast<size_t>(n), 0);
    for (int k = 0; k < d; ++k) ++a[static_cast<size_t>(var(rng))];
    f.add_term(a, Fp(coef(rng), ctx.p));
  }
  return f;
}

// every degree-d member monomial of I in n variables
std::vector<std::vector<int>> degree_piece(const GLIdeal& I, int d, int n,
                                           const PrimeContext& ctx) {
  MemberCache cache(I, ctx);
  std::vector<std::vector<int>> out;
  for_each_composition(n, d, -1, [&](const std::vector<int>& a) {
    if (cache.member(a)) out.push_back(a);
  });
  return out;
}

std::set<std::vector<int>> basis_monomials(const std::vector<PolyFp>& basis) {
  std::set<std::vector<int>> out;
  for (const PolyFp& f : basis) {
    REQUIRE(f.terms().size() == 1);
    out.insert(f.terms().begin()->first);
  }
  return out;
}

}  // namespace

TEST_CASE("elementary divided powers move exponents with a binomial weight") {
  PrimeContext p2(2);
  PolyFp x2sq = mono({0, 2}, p2);
  CHECK(apply_e(E(0, 1, 2), x2sq) == mono({2, 0}, p2));
  CHECK(apply_e(E(0, 1, 1), x2sq).is_zero());  // C(2,1) = 0 mod 2

  PrimeContext p3(3);
  PolyFp f = mono({1, 2, 0}, p3);
  PolyFp g = apply_e(E(2, 1, 1), f);
  CHECK(g.coeff({1, 1, 1}).value() == 2);

  CHECK_THROWS_AS(apply_e(E(0, 0, 1), f), domain_error);
  CHECK_THROWS_AS(apply_e(E(0, 5, 1), f), domain_error);
  CHECK_THROWS_AS(apply_e(H(0, 1), f), domain_error);
}

TEST_CASE("divided powers of p power exponents survive only at the full step") {
  for (uint32_t p : {2u, 3u}) {
    PrimeContext ctx(p);
    for (int q = static_cast<int>(p); q <= 9; q *= static_cast<int>(p)) {
      PolyFp xq = mono({0, q}, ctx);
      for (int l = 1; l < 2 * q && l <= 12; ++l) {
        PolyFp out = apply_e(E(0, 1, l), xq);
        if (l == q)
          CHECK(out == mono({q, 0}, ctx));
        else
          CHECK(out.is_zero());
      }
    }
  }
}

TEST_CASE("toral operators are diagonal") {
  PrimeContext p2(2);
  CHECK(apply_h(H(0, 1), mono({1, 1}, p2)) == mono({1, 1}, p2));
  CHECK(apply_h(H(0, 2), mono({0, 3}, p2)).is_zero());

  std::mt19937 rng(0);
  PrimeContext p3(3);
  for (int t = 0; t < 20; ++t) {
    PolyFp f = random_poly(rng, p3, 3, 4, 1);
    for (int i = 0; i < 3; ++i)
      for (int l = 1; l <= 4; ++l) {
        PolyFp out = apply_h(H(i, l), f);
        if (!out.is_zero()) {
          CHECK(out.terms().size() == f.terms().size());
          CHECK(out.terms().begin()->first == f.terms().begin()->first);
        }
      }
  }
}

TEST_CASE("composition of divided powers carries the binomial factor") {
  std::mt19937 rng(0);
  int cases = 0;
  for (uint32_t p : {2u, 3u, 5u}) {
    PrimeContext ctx(p);
    for (int t = 0; t < 30; ++t) {
      const int n = 2 + static_cast<int>(rng() % 3);
      const int d = 2 + static_cast<int>(rng() % 5);
      PolyFp f = random_poly(rng, ctx, n, d, 3);
      const int i = static_cast<int>(rng() % static_cast<uint32_t>(n));
      int j = static_cast<int>(rng() % static_cast<uint32_t>(n));
      if (j == i) j = (j + 1) % n;
      for (int l = 0; l <= 3; ++l)
        for (int s = 0; s <= 3; ++s) {
          PolyFp lhs = apply_e(E(i, j, l), apply_e(E(i, j, s), f));
          PolyFp rhs =
              apply_e(E(i, j, l + s), f).scaled(lucas_binom(l + s, l, ctx));
          CHECK(lhs == rhs);
          ++cases;
        }
    }
  }
  CHECK(cases >= 200);
}

TEST_CASE("divided leibniz rule on pinned and random inputs") {
  PrimeContext p2(2);
  PolyFp x2 = mono({0, 1}, p2);
  ProductRuleSides sides = divided_leibniz_check(0, 1, 2, x2, x2);
  CHECK(sides.lhs == mono({2, 0}, p2));
  CHECK(sides.rhs == mono({2, 0}, p2));

  PolyFp fg = mono({1, 2}, p2) + mono({3, 0}, p2);
  ProductRuleSides zero = divided_leibniz_check(0, 1, 0, fg, fg);
  CHECK(zero.lhs == fg * fg);

  std::mt19937 rng(1);
  for (uint32_t p : {2u, 3u}) {
    PrimeContext ctx(p);
    for (int t = 0; t < 50; ++t) {
      const int n = 2 + static_cast<int>(rng() % 3);
      PolyFp f = random_poly(rng, ctx, n, 1 + static_cast<int>(rng() % 5), 2);
      PolyFp g = random_poly(rng, ctx, n, 1 + static_cast<int>(rng() % 5), 2);
      const int i = static_cast<int>(rng() % static_cast<uint32_t>(n));
      int j = static_cast<int>(rng() % static_cast<uint32_t>(n));
      if (j == i) j = (j + 1) % n;
      for (int l = 0; l <= 4; ++l) divided_leibniz_check(i, j, l, f, g);
    }
  }
}

TEST_CASE("divided powers see frobenius powers through the digit shift") {
  std::mt19937 rng(2);
  for (uint32_t p : {2u, 3u, 5u}) {
    PrimeContext ctx(p);
    for (int t = 0; t < 25; ++t) {
      const int n = 2 + static_cast<int>(rng() % 2);
      PolyFp f = random_poly(rng, ctx, n, 1 + static_cast<int>(rng() % 4), 1);
      PolyFp fp = f.frobenius();
      const int i = static_cast<int>(rng() % static_cast<uint32_t>(n));
      int j = static_cast<int>(rng() % static_cast<uint32_t>(n));
      if (j == i) j = (j + 1) % n;
      for (int l = 1; l < static_cast<int>(p); ++l)
        CHECK(apply_e(E(i, j, l), fp).is_zero());
      for (int k = 1; k <= 3; ++k) {
        const int l = k * static_cast<int>(p);
        CHECK(apply_e(E(i, j, l), fp) == apply_e(E(i, j, k), f).frobenius());
      }
    }
  }
}

TEST_CASE("closure of a frobenius power is the twisted standard span") {
  for (uint32_t p : {2u, 3u}) {
    PrimeContext ctx(p);
    const int q = static_cast<int>(p);
    for (int n = 2; n <= 4; ++n) {
      std::vector<int> seed(static_cast<size_t>(n), 0);
      seed[0] = q;
      std::vector<PolyFp> basis =
          gln_submodule_closure({mono(seed, ctx)}, q, n, ctx);
      std::set<std::vector<int>> expect;
      for (int i = 0; i < n; ++i) {
        std::vector<int> a(static_cast<size_t>(n), 0);
        a[static_cast<size_t>(i)] = q;
        expect.insert(a);
      }
      CHECK(basis_monomials(basis) == expect);
    }
  }
}

TEST_CASE("closure of a square away from characteristic two fills the degree") {
  PrimeContext p3(3);
  for (int n = 2; n <= 4; ++n) {
    std::vector<int> seed(static_cast<size_t>(n), 0);
    seed[0] = 2;
    std::vector<PolyFp> basis = gln_submodule_closure({mono(seed, p3)}, 2, n, p3);
    CHECK(static_cast<int>(basis.size()) == n * (n + 1) / 2);
  }
}

TEST_CASE("closure is idempotent and caps report exhaustion") {
  PrimeContext p2(2);
  std::vector<PolyFp> once =
      gln_submodule_closure({mono({3, 1, 0}, p2)}, 4, 3, p2);
  std::vector<PolyFp> twice = gln_submodule_closure(once, 4, 3, p2);
  CHECK(basis_monomials(once) == basis_monomials(twice));

  CHECK_THROWS_AS(gln_submodule_closure({mono({3, 1, 0}, p2)}, 4, 3, p2, 2),
                  exhaustion_error);
  CHECK(gln_submodule_closure({}, 4, 3, p2).empty());
  CHECK_THROWS_AS(gln_submodule_closure({mono({1, 0, 0}, p2)}, 4, 3, p2),
                  domain_error);
}

TEST_CASE("closure of a non monomial seed matches its monomial span when forced") {
  PrimeContext p2(2);
  PolyFp seed = mono({2, 0, 0}, p2) + mono({0, 2, 0}, p2);
  std::vector<PolyFp> basis = gln_submodule_closure({seed}, 2, 3, p2);
  // e ops force the pure squares apart, so the span is the full twist
  std::vector<PolyFp> pure = gln_submodule_closure({mono({2, 0, 0}, p2)}, 2, 3, p2);
  CHECK(basis.size() == pure.size());
  std::set<std::vector<int>> lead;
  for (const PolyFp& f : basis) lead.insert(f.terms().begin()->first);
  CHECK(lead == basis_monomials(pure));
}

TEST_CASE("closure of a pure power generates the orbit ideal piece") {
  for (uint32_t p : {2u, 3u}) {
    PrimeContext ctx(p);
    for (int n : {2, 4, 6}) {
      for (int d = 1; d <= (n <= 4 ? 12 : 9); ++d) {
        std::vector<int> seed(static_cast<size_t>(n), 0);
        seed[0] = d;
        std::vector<PolyFp> basis =
            gln_submodule_closure({mono(seed, ctx)}, d, n, ctx);
        GLIdeal I = canonicalize({orbit_ideal(Partition({d}), ctx)}, ctx);
        std::vector<std::vector<int>> piece = degree_piece(I, d, n, ctx);
        std::set<std::vector<int>> want(piece.begin(), piece.end());
        CHECK(basis_monomials(basis) == want);
      }
    }
  }
}

TEST_CASE("closure of any canonical generator agrees with ideal membership") {
  struct Probe {
    uint32_t p;
    int n;
  };
  for (Probe pr : {Probe{2, 4}, Probe{3, 3}}) {
    PrimeContext ctx(pr.p);
    const int levels = 4;
    std::vector<int> b(levels, 0);
    std::function<void(int)> walk = [&](int m) {
      if (m == levels) {
        DigitVector dv(
            std::vector<int>(b.begin(), b.begin() + levels));
        if (dv.is_unit()) return;
        const long long d = dv.degree(ctx);
        if (d < 1 || d > 12 || dv.digit_sum() > pr.n) return;
        Partition gen = canonical_generator(dv, ctx);
        std::vector<int> exps(static_cast<size_t>(pr.n), 0);
        for (size_t k = 0; k < gen.parts.size(); ++k)
          exps[k] = gen.parts[k];
        std::vector<PolyFp> basis = gln_submodule_closure(
            {mono(exps, ctx)}, static_cast<int>(d), pr.n, ctx);
        GLIdeal I = canonicalize({dv}, ctx);
        std::vector<std::vector<int>> piece =
            degree_piece(I, static_cast<int>(d), pr.n, ctx);
        std::set<std::vector<int>> want(piece.begin(), piece.end());
        CHECK(basis_monomials(basis) == want);
        return;
      }
      for (int v = 0; v <= pr.n; ++v) {
        b[static_cast<size_t>(m)] = v;
        walk(m + 1);
      }
      b[static_cast<size_t>(m)] = 0;
    };
    walk(0);
  }
}

TEST_CASE("stability verifier accepts ideal pieces and rejects bare orbits") {
  PrimeContext p2(2);

  std::vector<std::vector<int>> full;
  for_each_composition(3, 4, -1,
                       [&](const std::vector<int>& a) { full.push_back(a); });
  CHECK(verify_gl_stability(full, 4, 3, p2));

  GLIdeal mixed = parse_ideal("m * m[p^1]", p2);
  CHECK(verify_gl_stability(degree_piece(mixed, 3, 3, p2), 3, 3, p2));
  CHECK(verify_gl_stability(degree_piece(mixed, 4, 4, p2), 4, 4, p2));

  for (int n = 2; n <= 4; ++n) {
    std::vector<std::vector<int>> orbit;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        std::vector<int> a(static_cast<size_t>(n), 0);
        a[static_cast<size_t>(i)] = 3;
        a[static_cast<size_t>(j)] = 1;
        orbit.push_back(a);
      }
    CHECK_FALSE(verify_gl_stability(orbit, 4, n, p2));
  }
}

TEST_CASE("the five degree ten ideals are distinct stable subspaces") {
  PrimeContext p2(2);
  const std::vector<std::string> exprs = {
      "m[p^3] * m[p^1]", "m[p^2]^2 * m[p^1]", "m[p^3] * m^2", "m[p^2]^2 * m^2",
      "m^10"};
  const int n = 6, d = 10;
  std::vector<std::set<std::vector<int>>> pieces;
  for (const std::string& e : exprs) {
    GLIdeal I = parse_ideal(e, p2);
    std::vector<std::vector<int>> piece = degree_piece(I, d, n, p2);
    CHECK(verify_gl_stability(piece, d, n, p2));
    pieces.emplace_back(piece.begin(), piece.end());
  }
  for (size_t i = 0; i < pieces.size(); ++i)
    for (size_t j = i + 1; j < pieces.size(); ++j) CHECK(pieces[i] != pieces[j]);
}

TEST_CASE("polynomial arithmetic enforces shape and cancels cleanly") {
  PrimeContext p2(2), p3(3);
  PolyFp f = mono({1, 1}, p2);
  CHECK_THROWS_AS(f.add_term({2, 1}, Fp(1, 2)), domain_error);
  CHECK_THROWS_AS(f.add_term({1}, Fp(1, 2)), domain_error);
  CHECK_THROWS_AS(f += mono({1, 1, 0}, p2), domain_error);

  PolyFp g = mono({1, 1}, p2);
  g += mono({1, 1}, p2);
  CHECK(g.is_zero());
  CHECK(g.degree() == -1);

  PolyFp prod = mono({1, 0}, p3) * (mono({1, 0}, p3) + mono({0, 1}, p3));
  CHECK(prod.degree() == 2);
  CHECK(prod.terms().size() == 2);
  CHECK(prod.str() == "x1*x2 + x1^2");

  PolyFp fr = (mono({1, 0}, p3) + mono({0, 1}, p3).scaled(Fp(2, 3))).frobenius();
  CHECK(fr.coeff({3, 0}).value() == 1);
  CHECK(fr.coeff({0, 3}).value() == 2);
}
