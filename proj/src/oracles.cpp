#include "glfrob/oracles.hpp"

#include <functional>

#include "glfrob/errors.hpp"

namespace glfrob::oracles {

long long binom_pascal(int a, int b, uint32_t p) {
  if (b < 0 || b > a) return 0;
  std::vector<uint32_t> row(static_cast<size_t>(a) + 1, 0);
  row[0] = 1;
  for (int r = 1; r <= a; ++r)
    for (int c = r; c >= 1; --c) row[static_cast<size_t>(c)] = (row[static_cast<size_t>(c)] + row[static_cast<size_t>(c) - 1]) % p;
  return row[static_cast<size_t>(b)];
}

unsigned long long binom_exact(int a, int b) {
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  unsigned long long acc = 1;
  for (int i = 1; i <= b; ++i) {
    unsigned long long num = static_cast<unsigned long long>(a - b + i);
    if (acc > ~0ULL / num) throw domain_error("binomial overflow");
    acc = acc * num / static_cast<unsigned long long>(i);
  }
  return acc;
}

bool monomial_in_product_bruteforce(const Partition& lambda, const DigitVector& c,
                                    const PrimeContext& ctx) {
  // Exhaustive allocation search, no dedup: variable by variable, try every
  // level vector within budget and remaining demand.
  std::vector<int> demand(c.b.begin(), c.b.end());
  std::vector<long long> pw(c.b.size());
  {
    long long w = 1;
    for (size_t m = 0; m < pw.size(); ++m) {
      pw[m] = w;
      w *= ctx.p;
    }
  }
  bool all_zero = true;
  for (int d : demand)
    if (d) all_zero = false;
  if (all_zero) return true;

  std::function<bool(size_t)> var = [&](size_t i) -> bool {
    bool done = true;
    for (int d : demand)
      if (d) done = false;
    if (done) return true;
    if (i == lambda.parts.size()) return false;
    long long budget = lambda.parts[i];
    std::function<bool(size_t, long long)> pick = [&](size_t m, long long rest) -> bool {
      if (m == demand.size()) return var(i + 1);
      for (int take = 0; take <= demand[m] && take * pw[m] <= rest; ++take) {
        demand[m] -= take;
        bool ok = pick(m + 1, rest - take * pw[m]);
        demand[m] += take;
        if (ok) return true;
      }
      return false;
    };
    return pick(0, budget);
  };
  return var(0);
}

std::optional<int> radical_level_by_powers(const GLIdeal& I, int n_cap,
                                           const PrimeContext& ctx) {
  if (I.is_zero() || I.is_unit()) return std::nullopt;
  for (int r = 0; r <= 24; ++r) {
    for (int N = 1; N <= n_cap; ++N) {
      std::vector<int> b(static_cast<size_t>(r) + 1, 0);
      b[static_cast<size_t>(r)] = N;
      if (ideal_member(canonical_generator(DigitVector(std::move(b)), ctx), I, ctx))
        return r;
    }
  }
  return std::nullopt;
}

}  // namespace glfrob::oracles
