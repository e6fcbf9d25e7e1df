#include "glfrob/dist.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <utility>

#include "glfrob/enumerate.hpp"
#include "glfrob/errors.hpp"
#include "glfrob/linalg.hpp"

namespace glfrob {

namespace {

int checked_total(const std::vector<int>& a, int n) {
  if (static_cast<int>(a.size()) != n)
    throw domain_error("exponent vector length differs from the variable count");
  int d = 0;
  for (int v : a) {
    if (v < 0) throw domain_error("negative exponent");
    d += v;
  }
  return d;
}

void check_op(const DividedOp& op, DividedOp::Kind want, int n) {
  if (op.kind != want) throw domain_error("operator kind mismatch");
  if (op.l < 0) throw domain_error("negative divided power");
  if (op.i < 0 || op.i >= n) throw domain_error("operator coordinate out of range");
  if (want == DividedOp::Kind::elem &&
      (op.j < 0 || op.j >= n || op.j == op.i))
    throw domain_error("operator coordinate out of range");
}

// all e_{i,j}^{(p^t)} with p^t <= d
std::vector<DividedOp> p_power_ops(int n, int d, const PrimeContext& ctx) {
  std::vector<DividedOp> ops;
  for (long long l = 1; l <= d; l *= ctx.p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          ops.push_back({DividedOp::Kind::elem, i, j, static_cast<int>(l)});
  return ops;
}

}  // namespace

// ---- PolyFp -------------------------------------------------------------------

PolyFp::PolyFp(int n_vars, const PrimeContext& ctx) : n_(n_vars), ctx_(ctx) {
  if (n_vars < 0) throw domain_error("negative variable count");
}

PolyFp PolyFp::monomial(const std::vector<int>& exponents, const PrimeContext& ctx) {
  PolyFp f(static_cast<int>(exponents.size()), ctx);
  f.add_term(exponents, Fp(1, ctx.p));
  return f;
}

Fp PolyFp::coeff(const std::vector<int>& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Fp(0, ctx_.p) : it->second;
}

void PolyFp::add_term(const std::vector<int>& exponents, Fp c) {
  const int d = checked_total(exponents, n_);
  Fp cc = Fp(0, ctx_.p) + c;
  if (cc.is_zero()) return;
  if (deg_ >= 0 && d != deg_)
    throw domain_error("term degree breaks homogeneity");
  auto [it, fresh] = terms_.try_emplace(exponents, cc);
  if (!fresh) {
    it->second += cc;
    if (it->second.is_zero()) terms_.erase(it);
  }
  deg_ = terms_.empty() ? -1 : d;
}

PolyFp& PolyFp::operator+=(const PolyFp& o) {
  if (n_ != o.n_ || ctx_.p != o.ctx_.p)
    throw domain_error("polynomial shapes disagree");
  if (!is_zero() && !o.is_zero() && deg_ != o.deg_)
    throw domain_error("adding different degrees breaks homogeneity");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

PolyFp PolyFp::operator*(const PolyFp& o) const {
  if (n_ != o.n_ || ctx_.p != o.ctx_.p)
    throw domain_error("polynomial shapes disagree");
  PolyFp out(n_, ctx_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      std::vector<int> s = a;
      for (int k = 0; k < n_; ++k) s[static_cast<size_t>(k)] += b[static_cast<size_t>(k)];
      out.add_term(s, ca * cb);
    }
  return out;
}

PolyFp PolyFp::scaled(Fp c) const {
  PolyFp out(n_, ctx_);
  for (const auto& [a, ca] : terms_) out.add_term(a, ca * c);
  return out;
}

PolyFp PolyFp::frobenius() const {
  PolyFp out(n_, ctx_);
  const int p = static_cast<int>(ctx_.p);
  for (const auto& [a, c] : terms_) {
    std::vector<int> b = a;
    for (int& v : b) v *= p;
    out.add_term(b, c);  // c^p = c
  }
  return out;
}

bool PolyFp::operator==(const PolyFp& o) const {
  return n_ == o.n_ && ctx_.p == o.ctx_.p && terms_ == o.terms_;
}

std::string PolyFp::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool bare = true;
    if (c.value() != 1) {
      os << c.value();
      bare = false;
    }
    for (int k = 0; k < n_; ++k) {
      const int e = a[static_cast<size_t>(k)];
      if (e == 0) continue;
      if (!bare) os << "*";
      os << "x" << k + 1;
      if (e > 1) os << "^" << e;
      bare = false;
    }
    if (bare) os << "1";
  }
  return os.str();
}

// ---- operator actions -----------------------------------------------------------

PolyFp apply_e(const DividedOp& op, const PolyFp& f) {
  check_op(op, DividedOp::Kind::elem, f.vars());
  PolyFp out(f.vars(), f.ctx());
  for (const auto& [a, c] : f.terms()) {
    const int aj = a[static_cast<size_t>(op.j)];
    if (aj < op.l) continue;
    Fp b = lucas_binom(aj, op.l, f.ctx());
    if (b.is_zero()) continue;
    std::vector<int> t = a;
    t[static_cast<size_t>(op.i)] += op.l;
    t[static_cast<size_t>(op.j)] -= op.l;
    out.add_term(t, c * b);
  }
  return out;
}

PolyFp apply_h(const DividedOp& op, const PolyFp& f) {
  check_op(op, DividedOp::Kind::toral, f.vars());
  PolyFp out(f.vars(), f.ctx());
  for (const auto& [a, c] : f.terms()) {
    Fp b = lucas_binom(a[static_cast<size_t>(op.i)], op.l, f.ctx());
    if (b.is_zero()) continue;
    out.add_term(a, c * b);
  }
  return out;
}

ProductRuleSides divided_leibniz_check(int i, int j, int l, const PolyFp& f,
                                       const PolyFp& g) {
  DividedOp full{DividedOp::Kind::elem, i, j, l};
  ProductRuleSides out{apply_e(full, f * g), PolyFp(f.vars(), f.ctx())};
  for (int s = 0; s <= l; ++s) {
    DividedOp lo{DividedOp::Kind::elem, i, j, s};
    DividedOp hi{DividedOp::Kind::elem, i, j, l - s};
    out.rhs += apply_e(lo, f) * apply_e(hi, g);
  }
  if (!(out.lhs == out.rhs))
    throw invariant_violation("divided power product rule fails");
  return out;
}

// ---- closure --------------------------------------------------------------------

namespace {

std::vector<PolyFp> monomial_closure(std::set<std::vector<int>> seen, int d, int n,
                                     const PrimeContext& ctx, long long cap) {
  const std::vector<DividedOp> ops = p_power_ops(n, d, ctx);
  std::deque<std::vector<int>> work(seen.begin(), seen.end());
  auto push = [&](std::vector<int> t) {
    if (!seen.insert(t).second) return;
    if (cap >= 0 && static_cast<long long>(seen.size()) > cap)
      throw exhaustion_error("closure dimension cap exceeded");
    work.push_back(std::move(t));
  };
  while (!work.empty()) {
    const std::vector<int> a = std::move(work.front());
    work.pop_front();
    for (const DividedOp& op : ops) {
      const int aj = a[static_cast<size_t>(op.j)];
      if (aj < op.l || lucas_binom(aj, op.l, ctx).is_zero()) continue;
      std::vector<int> t = a;
      t[static_cast<size_t>(op.i)] += op.l;
      t[static_cast<size_t>(op.j)] -= op.l;
      push(std::move(t));
    }
    for (int k = 0; k + 1 < n; ++k) {
      if (a[static_cast<size_t>(k)] == a[static_cast<size_t>(k) + 1]) continue;
      std::vector<int> t = a;
      std::swap(t[static_cast<size_t>(k)], t[static_cast<size_t>(k) + 1]);
      push(std::move(t));
    }
  }
  std::vector<PolyFp> basis;
  basis.reserve(seen.size());
  for (const std::vector<int>& a : seen) basis.push_back(PolyFp::monomial(a, ctx));
  return basis;
}

std::vector<PolyFp> general_closure(const std::vector<PolyFp>& seeds, int d, int n,
                                    const PrimeContext& ctx, long long cap) {
  std::vector<std::vector<int>> monos;
  std::map<std::vector<int>, int> index;
  for_each_composition(n, d, -1, [&](const std::vector<int>& a) {
    index.emplace(a, static_cast<int>(monos.size()));
    monos.push_back(a);
  });
  const Eigen::Index dim = static_cast<Eigen::Index>(monos.size());

  struct Move {
    int src, dst;
    Fp c;
  };
  std::vector<std::vector<Move>> tables;
  for (const DividedOp& op : p_power_ops(n, d, ctx)) {
    std::vector<Move> tab;
    for (int s = 0; s < static_cast<int>(monos.size()); ++s) {
      const std::vector<int>& a = monos[static_cast<size_t>(s)];
      const int aj = a[static_cast<size_t>(op.j)];
      if (aj < op.l) continue;
      Fp b = lucas_binom(aj, op.l, ctx);
      if (b.is_zero()) continue;
      std::vector<int> t = a;
      t[static_cast<size_t>(op.i)] += op.l;
      t[static_cast<size_t>(op.j)] -= op.l;
      tab.push_back({s, index.at(t), b});
    }
    tables.push_back(std::move(tab));
  }
  for (int k = 0; k + 1 < n; ++k) {
    std::vector<Move> tab;
    for (int s = 0; s < static_cast<int>(monos.size()); ++s) {
      std::vector<int> t = monos[static_cast<size_t>(s)];
      std::swap(t[static_cast<size_t>(k)], t[static_cast<size_t>(k) + 1]);
      tab.push_back({s, index.at(t), Fp(1, ctx.p)});
    }
    tables.push_back(std::move(tab));
  }

  linalg::EchelonSpan span(dim);
  std::deque<VecF> work;
  for (const PolyFp& f : seeds) {
    if (f.is_zero()) continue;
    VecF v = VecF::Zero(dim);
    for (const auto& [a, c] : f.terms()) v(index.at(a)) = Fp(0, ctx.p) + c;
    if (span.insert(v)) work.push_back(std::move(v));
  }
  while (!work.empty()) {
    const VecF v = std::move(work.front());
    work.pop_front();
    for (const std::vector<Move>& tab : tables) {
      VecF w = VecF::Zero(dim);
      bool any = false;
      for (const Move& mv : tab) {
        if (v(mv.src).is_zero()) continue;
        w(mv.dst) += mv.c * v(mv.src);
        any = true;
      }
      if (!any) continue;
      if (cap >= 0 && span.dim() >= cap && !span.contains(w))
        throw exhaustion_error("closure dimension cap exceeded");
      if (span.insert(w)) work.push_back(std::move(w));
    }
  }

  std::vector<PolyFp> basis;
  for (const VecF& row : span.rows()) {
    PolyFp f(n, ctx);
    for (Eigen::Index s = 0; s < dim; ++s)
      if (!row(s).is_zero()) f.add_term(monos[static_cast<size_t>(s)], row(s));
    basis.push_back(std::move(f));
  }
  return basis;
}

}  // namespace

std::vector<PolyFp> gln_submodule_closure(const std::vector<PolyFp>& seeds, int d,
                                          int n, const PrimeContext& ctx,
                                          long long dim_cap) {
  if (n < 0 || d < 0) throw domain_error("closure needs n, d >= 0");
  bool all_monomial = true;
  std::set<std::vector<int>> seed_monos;
  for (const PolyFp& f : seeds) {
    if (f.vars() != n || f.ctx().p != ctx.p)
      throw domain_error("seed shape disagrees with the closure request");
    if (f.is_zero()) continue;
    if (f.degree() != d) throw domain_error("seed degree differs from d");
    if (f.terms().size() == 1)
      seed_monos.insert(f.terms().begin()->first);
    else
      all_monomial = false;
  }
  if (all_monomial && seed_monos.empty()) return {};
  if (all_monomial) return monomial_closure(std::move(seed_monos), d, n, ctx, dim_cap);
  return general_closure(seeds, d, n, ctx, dim_cap);
}

bool verify_gl_stability(const std::vector<std::vector<int>>& monomials, int d,
                         int n, const PrimeContext& ctx) {
  std::set<std::vector<int>> span;
  for (const std::vector<int>& a : monomials) {
    if (checked_total(a, n) != d) throw domain_error("monomial degree differs from d");
    span.insert(a);
  }
  const std::vector<DividedOp> ops = p_power_ops(n, d, ctx);
  for (const std::vector<int>& a : span)
    for (const DividedOp& op : ops) {
      const int aj = a[static_cast<size_t>(op.j)];
      if (aj < op.l || lucas_binom(aj, op.l, ctx).is_zero()) continue;
      std::vector<int> t = a;
      t[static_cast<size_t>(op.i)] += op.l;
      t[static_cast<size_t>(op.j)] -= op.l;
      if (!span.count(t)) return false;
    }
  return true;
}

}  // namespace glfrob
