#include "glfrob/glideal.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "glfrob/enumerate.hpp"
#include "glfrob/errors.hpp"

namespace glfrob {

DigitVector::DigitVector(std::vector<int> raw) : b(std::move(raw)) {
  for (int v : b)
    if (v < 0) throw domain_error("digit vector entries must be nonnegative");
  while (!b.empty() && b.back() == 0) b.pop_back();
}

int DigitVector::level() const {
  for (int m = static_cast<int>(b.size()) - 1; m >= 0; --m)
    if (b[static_cast<size_t>(m)] > 0) return m;
  return -1;
}

int DigitVector::digit_sum() const {
  int s = 0;
  for (int v : b) s += v;
  return s;
}

long long DigitVector::degree(const PrimeContext& ctx) const {
  long long d = 0, pw = 1;
  for (int v : b) {
    d += v * pw;
    pw *= ctx.p;
  }
  return d;
}

bool DigitVector::operator<(const DigitVector& o) const {
  if (b.size() != o.b.size()) return b.size() < o.b.size();
  return b < o.b;
}

std::string DigitVector::str() const {
  if (is_unit()) return "1";
  std::ostringstream out;
  bool first = true;
  for (size_t m = 0; m < b.size(); ++m) {
    if (b[m] == 0) continue;
    if (!first) out << "*";
    first = false;
    if (m == 0)
      out << "m";
    else
      out << "m[p^" << m << "]";
    if (b[m] > 1) out << "^" << b[m];
  }
  return out.str();
}

std::string GLIdeal::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) out << " + ";
    out << gens[i].str();
  }
  return out.str();
}

DigitVector orbit_ideal(const MonomialExponent& lambda, const PrimeContext& ctx) {
  std::vector<int> b;
  for (int part : lambda.parts) {
    auto ds = digits(part, ctx);
    if (ds.size() > b.size()) b.resize(ds.size(), 0);
    for (size_t m = 0; m < ds.size(); ++m) b[m] += ds[m];
  }
  return DigitVector(std::move(b));
}

MonomialExponent canonical_generator(const DigitVector& b, const PrimeContext& ctx) {
  std::vector<int> parts;
  long long pw = 1;
  for (size_t m = 0; m < b.b.size(); ++m) {
    for (int i = 0; i < b.b[m]; ++i) parts.push_back(static_cast<int>(pw));
    pw *= ctx.p;
  }
  return MonomialExponent(std::move(parts));
}

namespace {

// Mixed-radix residual-demand states for the membership DP.
struct DemandSpace {
  std::vector<int> dims;        // c_m + 1 per level
  std::vector<long long> base;  // mixed-radix place values
  long long total = 1;

  explicit DemandSpace(const DigitVector& c) {
    for (int v : c.b) dims.push_back(v + 1);
    base.resize(dims.size());
    for (size_t m = 0; m < dims.size(); ++m) {
      base[m] = total;
      total *= dims[m];
    }
  }

  long long index(const std::vector<int>& digs) const {
    long long idx = 0;
    for (size_t m = 0; m < dims.size(); ++m) idx += digs[m] * base[m];
    return idx;
  }
};

// All per-variable allocations a <= c with sum a_m p^m <= budget, as
// (index delta, digit vector) pairs.
std::vector<std::pair<long long, std::vector<int>>> allocations(
    const DemandSpace& space, const DigitVector& c, long long budget, uint32_t p) {
  std::vector<std::pair<long long, std::vector<int>>> out;
  std::vector<int> a(c.b.size(), 0);
  std::function<void(size_t, long long)> rec = [&](size_t m, long long rest) {
    if (m == c.b.size()) {
      out.emplace_back(space.index(a), a);
      return;
    }
    long long pw = 1;
    for (size_t t = 0; t < m; ++t) pw *= p;
    int hi = c.b[m];
    if (pw > 0 && rest / pw < hi) hi = static_cast<int>(rest / pw);
    for (int v = 0; v <= hi; ++v) {
      a[m] = v;
      rec(m + 1, rest - v * pw);
    }
    a[m] = 0;
  };
  rec(0, budget);
  return out;
}

}  // namespace

bool monomial_in_product(const MonomialExponent& lambda, const DigitVector& c,
                         const PrimeContext& ctx) {
  if (c.is_unit()) return true;
  long long need = c.degree(ctx);
  long long have = lambda.size();
  if (have < need) return false;

  DemandSpace space(c);
  std::vector<char> alive(static_cast<size_t>(space.total), 0);
  std::vector<int> full(c.b.begin(), c.b.end());
  alive[static_cast<size_t>(space.index(full))] = 1;

  // Residual demand digits per state, for componentwise feasibility checks.
  std::vector<std::vector<int>> digs(static_cast<size_t>(space.total));
  for (long long s = 0; s < space.total; ++s) {
    std::vector<int> d(space.dims.size());
    long long rem = s;
    for (size_t m = 0; m < space.dims.size(); ++m) {
      d[m] = static_cast<int>(rem % space.dims[m]);
      rem /= space.dims[m];
    }
    digs[static_cast<size_t>(s)] = std::move(d);
  }

  std::map<int, std::vector<std::pair<long long, std::vector<int>>>> allocs_by_budget;
  for (int part : lambda.parts) {
    auto it = allocs_by_budget.find(part);
    if (it == allocs_by_budget.end())
      it = allocs_by_budget.emplace(part, allocations(space, c, part, ctx.p)).first;
    const auto& allocs = it->second;
    std::vector<char> next = alive;
    for (long long s = 0; s < space.total; ++s) {
      if (!alive[static_cast<size_t>(s)]) continue;
      const auto& sd = digs[static_cast<size_t>(s)];
      for (const auto& [delta, ad] : allocs) {
        bool ok = true;
        for (size_t m = 0; m < ad.size(); ++m)
          if (ad[m] > sd[m]) {
            ok = false;
            break;
          }
        if (ok) next[static_cast<size_t>(s - delta)] = 1;
      }
    }
    if (next[0]) return true;
    alive.swap(next);
  }
  return alive[0] != 0;
}

bool ideal_member(const MonomialExponent& lambda, const GLIdeal& I,
                  const PrimeContext& ctx) {
  for (const auto& c : I.gens)
    if (monomial_in_product(lambda, c, ctx)) return true;
  return false;
}

bool ideal_contains(const GLIdeal& I, const GLIdeal& J, const PrimeContext& ctx) {
  for (const auto& c : J.gens)
    if (!ideal_member(canonical_generator(c, ctx), I, ctx)) return false;
  return true;
}

namespace {

bool gen_contains(const DigitVector& big, const DigitVector& small,
                  const PrimeContext& ctx) {
  return monomial_in_product(canonical_generator(small, ctx), big, ctx);
}

}  // namespace

GLIdeal canonicalize(std::vector<DigitVector> gens, const PrimeContext& ctx) {
  std::sort(gens.begin(), gens.end(), [&](const DigitVector& a, const DigitVector& b) {
    long long da = a.degree(ctx), db = b.degree(ctx);
    if (da != db) return da < db;
    return a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::vector<char> keep(gens.size(), 1);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (!keep[i]) continue;
    for (size_t j = 0; j < gens.size(); ++j) {
      if (i == j || !keep[j]) continue;
      if (!gen_contains(gens[j], gens[i], ctx)) continue;
      if (gen_contains(gens[i], gens[j], ctx) && i < j) continue;  // equal ideals
      keep[i] = 0;
      break;
    }
  }
  GLIdeal out;
  for (size_t i = 0; i < gens.size(); ++i)
    if (keep[i]) out.gens.push_back(gens[i]);
  return out;
}

GLIdeal ideal_sum(const GLIdeal& I, const GLIdeal& J, const PrimeContext& ctx) {
  std::vector<DigitVector> gens = I.gens;
  gens.insert(gens.end(), J.gens.begin(), J.gens.end());
  return canonicalize(std::move(gens), ctx);
}

GLIdeal ideal_product(const GLIdeal& I, const GLIdeal& J, const PrimeContext& ctx) {
  std::vector<DigitVector> gens;
  for (const auto& a : I.gens)
    for (const auto& b : J.gens) {
      std::vector<int> sum(std::max(a.b.size(), b.b.size()), 0);
      for (size_t m = 0; m < sum.size(); ++m) sum[m] = a.at(static_cast<int>(m)) + b.at(static_cast<int>(m));
      gens.emplace_back(std::move(sum));
    }
  return canonicalize(std::move(gens), ctx);
}

GLIdeal gl_radical(const GLIdeal& I, const PrimeContext& ctx) {
  if (I.is_zero()) return GLIdeal::zero();
  if (I.is_unit()) return GLIdeal::unit();
  int r = -1;
  for (const auto& g : I.gens) {
    int lvl = g.level();
    assert(lvl >= 0);
    if (r < 0 || lvl < r) r = lvl;
  }
  std::vector<int> b(static_cast<size_t>(r) + 1, 0);
  b[static_cast<size_t>(r)] = 1;
  return canonicalize({DigitVector(std::move(b))}, ctx);
}

bool is_gl_prime(const GLIdeal& I) {
  if (I.is_zero()) return true;
  return I.gens.size() == 1 && I.gens[0].digit_sum() == 1;
}

namespace {

MonomialExponent disjoint_product(const MonomialExponent& f, const MonomialExponent& g) {
  std::vector<int> parts = f.parts;
  parts.insert(parts.end(), g.parts.begin(), g.parts.end());
  return MonomialExponent(std::move(parts));
}

}  // namespace

WitnessResult non_primality_witness(const GLIdeal& I, const PrimeContext& ctx,
                                    int degree_cap) {
  if (I.is_zero() || I.is_unit())
    throw domain_error("non_primality_witness needs a proper nonzero ideal");
  if (is_gl_prime(I)) return {WitnessResult::Status::none, {}, {}};

  auto verified = [&](const MonomialExponent& f, const MonomialExponent& g) {
    return !ideal_member(f, I, ctx) && !ideal_member(g, I, ctx) &&
           ideal_member(disjoint_product(f, g), I, ctx);
  };

  // In canonical form, any nontrivial split of a generator works: a half lying
  // in I would put the whole generator's ideal inside another generator's,
  // breaking the antichain.  Splits are still verified before being returned.
  for (const auto& gen : I.gens) {
    if (gen.digit_sum() < 2) continue;
    std::vector<int> rest = gen.b;
    std::vector<int> taken(gen.b.size(), 0);
    std::function<WitnessResult(size_t)> split = [&](size_t m) -> WitnessResult {
      if (m == gen.b.size()) {
        DigitVector left{std::vector<int>(taken)}, right{std::vector<int>(rest)};
        if (left.is_unit() || right.is_unit())
          return {WitnessResult::Status::exhausted, {}, {}};
        MonomialExponent f = canonical_generator(left, ctx);
        MonomialExponent g = canonical_generator(right, ctx);
        if (verified(f, g)) return {WitnessResult::Status::found, f, g};
        return {WitnessResult::Status::exhausted, {}, {}};
      }
      for (int take = 0; take <= gen.b[m]; ++take) {
        taken[m] = take;
        rest[m] = gen.b[m] - take;
        auto r = split(m + 1);
        if (r.status == WitnessResult::Status::found) return r;
      }
      taken[m] = 0;
      rest[m] = gen.b[m];
      return {WitnessResult::Status::exhausted, {}, {}};
    };
    auto r = split(0);
    if (r.status == WitnessResult::Status::found) return r;
  }

  // Fallback: bounded pair enumeration.
  long long maxdeg = 0;
  for (const auto& g : I.gens) maxdeg = std::max(maxdeg, g.degree(ctx));
  int cap = degree_cap >= 0 ? degree_cap : static_cast<int>(std::min<long long>(maxdeg, 14));
  std::vector<MonomialExponent> candidates;
  for (int d = 1; d <= cap; ++d)
    for_each_partition(d, [&](const std::vector<int>& parts) {
      MonomialExponent lam{std::vector<int>(parts)};
      if (!ideal_member(lam, I, ctx)) candidates.push_back(std::move(lam));
    });
  for (const auto& f : candidates)
    for (const auto& g : candidates)
      if (ideal_member(disjoint_product(f, g), I, ctx))
        return {WitnessResult::Status::found, f, g};
  return {WitnessResult::Status::exhausted, {}, {}};
}

bool MemberCache::member(const std::vector<int>& exponents) {
  std::vector<int> key;
  key.reserve(exponents.size());
  for (int e : exponents) {
    if (e < 0) throw domain_error("negative exponent");
    if (e > 0) key.push_back(e);
  }
  std::sort(key.begin(), key.end(), std::greater<int>());
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool value = ideal_member(MonomialExponent(std::vector<int>(key)), ideal_, ctx_);
  memo_.emplace(std::move(key), value);
  return value;
}

std::vector<std::vector<int>> evaluate_ideal(const GLIdeal& I, int n, int d_max,
                                             const PrimeContext& ctx) {
  if (n < 0 || d_max < 0) throw domain_error("evaluate_ideal needs n, d_max >= 0");
  MemberCache cache(I, ctx);
  std::vector<std::vector<int>> out;
  std::vector<int> tmp;
  for (int d = 0; d <= d_max; ++d) {
    std::vector<std::vector<int>> level;
    for_each_composition(n, d, -1, [&](const std::vector<int>& a) {
      if (!cache.member(a)) return;
      for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        tmp = a;
        --tmp[i];
        if (cache.member(tmp)) return;
      }
      level.push_back(a);
    });
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

long long hilbert_function(const GLIdeal& I, int n, int d, const PrimeContext& ctx) {
  if (n < 0 || d < 0) throw domain_error("hilbert_function needs n, d >= 0");
  MemberCache cache(I, ctx);
  long long count = 0;
  for_each_composition(n, d, -1, [&](const std::vector<int>& a) {
    if (!cache.member(a)) ++count;
  });
  return count;
}

}  // namespace glfrob
