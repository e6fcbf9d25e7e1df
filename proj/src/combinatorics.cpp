#include "glfrob/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace glfrob {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// C(a, b) mod p for 0 <= a < p, exact via the multiplicative formula; every
// divisor k < p is invertible.
long long small_binom_mod(long long a, long long b, uint32_t p) {
  if (b < 0 || b > a) return 0;
  Fp r(1, p);
  for (long long k = 1; k <= b; ++k) r = r * Fp(a - b + k, p) / Fp(k, p);
  return r.value();
}

}  // namespace

PrimeContext::PrimeContext(uint32_t prime) : p(prime) {
  if (!is_prime(prime)) throw domain_error("p = " + std::to_string(prime) + " is not prime");
}

Partition::Partition(std::vector<int> raw) : parts(std::move(raw)) {
  for (int x : parts)
    if (x < 0) throw domain_error("negative partition part");
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
}

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

bool Partition::operator<(const Partition& o) const {
  if (size() != o.size()) return size() < o.size();
  return parts < o.parts;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ')';
  return os.str();
}

Weight::Weight(std::vector<int> raw) : entries(std::move(raw)) {
  for (int x : entries)
    if (x < 0) throw domain_error("negative weight entry");
  while (!entries.empty() && entries.back() == 0) entries.pop_back();
}

int Weight::total() const { return std::accumulate(entries.begin(), entries.end(), 0); }

std::vector<int> Weight::support() const {
  std::vector<int> s;
  for (size_t i = 0; i < entries.size(); ++i)
    if (entries[i] != 0) s.push_back(static_cast<int>(i));
  return s;
}

bool PMagnitude::lex_greater(const PMagnitude& o) const {
  size_t len = std::max(counts.size(), o.counts.size());
  for (size_t i = 0; i < len; ++i) {
    int a = i < counts.size() ? counts[i] : 0;
    int b = i < o.counts.size() ? o.counts[i] : 0;
    if (a != b) return a > b;
  }
  return false;
}

std::string PMagnitude::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < counts.size(); ++i) os << (i ? "," : "") << counts[i];
  os << ')';
  return os.str();
}

std::vector<int> digits(long long n, const PrimeContext& ctx) {
  if (n < 0) throw domain_error("digits of a negative integer");
  std::vector<int> d;
  while (n > 0) {
    d.push_back(static_cast<int>(n % ctx.p));
    n /= ctx.p;
  }
  return d;
}

Fp lucas_binom(long long a, long long b, const PrimeContext& ctx) {
  if (a < 0 || b < 0) throw domain_error("negative binomial argument");
  Fp r(1, ctx.p);
  while (a > 0 || b > 0) {
    long long da = a % ctx.p, db = b % ctx.p;
    r *= Fp(small_binom_mod(da, db, ctx.p), ctx.p);
    if (r.is_zero()) return r;
    a /= ctx.p;
    b /= ctx.p;
  }
  return r;
}

long long largest_p_power_dividing(long long s, const PrimeContext& ctx) {
  if (s < 1) throw domain_error("largest_p_power_dividing needs s >= 1");
  long long q = 1;
  while (s % ctx.p == 0) {
    q *= ctx.p;
    s /= ctx.p;
  }
  return q;
}

namespace {
// -1 when x is not a power of p, else the exponent r with p^r = x.
int p_power_level(int x, uint32_t p) {
  if (x < 1) return -1;
  int r = 0;
  while (x % static_cast<int>(p) == 0) {
    x /= static_cast<int>(p);
    ++r;
  }
  return x == 1 ? r : -1;
}
}  // namespace

bool is_flat(const Weight& w, const PrimeContext& ctx) {
  for (int e : w.entries)
    if (e != 0 && p_power_level(e, ctx.p) < 0) return false;
  return true;
}

PMagnitude pmag(const Weight& w, const PrimeContext& ctx) {
  if (!is_flat(w, ctx)) throw domain_error("pmag of a non-flat weight");
  std::vector<int> counts;
  for (int e : w.entries) {
    if (e == 0) continue;
    int r = p_power_level(e, ctx.p);
    if (static_cast<size_t>(r) >= counts.size()) counts.resize(r + 1, 0);
    ++counts[r];
  }
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return PMagnitude{std::move(counts)};
}

bool flat_order_less(const Weight& lambda, const Weight& mu, const PrimeContext& ctx) {
  return pmag(lambda, ctx).lex_greater(pmag(mu, ctx));
}

std::vector<Partition> p_restricted_decomposition(const Partition& mu, const PrimeContext& ctx) {
  const int p = static_cast<int>(ctx.p);
  std::vector<Partition> layers;
  Partition cur = mu;
  while (!cur.empty()) {
    // mu^0 is pinned by its successive differences: diff_j(mu^0) = diff_j(cur) mod p.
    const auto& c = cur.parts;
    size_t len = c.size();
    std::vector<int> layer(len, 0);
    int acc = 0;
    for (size_t j = len; j-- > 0;) {
      int below = (j + 1 < len) ? c[j + 1] : 0;
      acc += (c[j] - below) % p;
      layer[j] = acc;
    }
    std::vector<int> rest(len, 0);
    for (size_t j = 0; j < len; ++j) {
      int r = c[j] - layer[j];
      if (r < 0 || r % p != 0) throw invariant_violation("p-restricted layer overflow");
      rest[j] = r / p;
    }
    layers.emplace_back(std::move(layer));
    cur = Partition(std::move(rest));
  }
  // Reconstruction and restrictedness are enforced, not assumed.
  {
    size_t maxlen = 0;
    for (const auto& l : layers) maxlen = std::max(maxlen, l.parts.size());
    std::vector<long long> rebuilt(maxlen, 0);
    long long scale = 1;
    for (const auto& l : layers) {
      for (size_t j = 0; j < l.parts.size(); ++j) rebuilt[j] += scale * l.parts[j];
      for (size_t j = 0; j + 1 < l.parts.size(); ++j)
        if (l.parts[j] - l.parts[j + 1] >= p) throw invariant_violation("layer not p-restricted");
      if (!l.parts.empty() && l.parts.back() >= p)
        throw invariant_violation("layer not p-restricted");
      scale *= p;
    }
    std::vector<long long> orig(maxlen, 0);
    for (size_t j = 0; j < mu.parts.size(); ++j) orig[j] = mu.parts[j];
    if (rebuilt != orig) throw invariant_violation("p-restricted decomposition drift");
  }
  return layers;
}

PMagnitude min_flat_pmag(const Partition& mu, const PrimeContext& ctx) {
  std::vector<int> counts;
  for (const Partition& layer : p_restricted_decomposition(mu, ctx))
    counts.push_back(layer.size());
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return PMagnitude{std::move(counts)};
}

bool weights_disjoint(const Weight& w1, const Weight& w2) {
  size_t len = std::min(w1.entries.size(), w2.entries.size());
  for (size_t i = 0; i < len; ++i)
    if (w1.entries[i] != 0 && w2.entries[i] != 0) return false;
  return true;
}

}  // namespace glfrob
