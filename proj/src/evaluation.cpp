#include "glfrob/evaluation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "json.hpp"

#include "glfrob/enumerate.hpp"
#include "glfrob/errors.hpp"

namespace glfrob {

namespace {

std::vector<int> trimmed(std::vector<int> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

int vec_sum(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), 0);
}

struct KeyLess {
  bool operator()(const BasisElt& a, const BasisElt& b) const {
    if (a.deg != b.deg) return a.deg < b.deg;
    if (a.w != b.w) return a.w < b.w;
    return a.comp < b.comp;
  }
};

}  // namespace

// ---- RingSpec -----------------------------------------------------------------

RingSpec::RingSpec(const PrimeContext& c, int q_) : ctx(c), q(q_) {
  if (q == 0) return;
  if (q < static_cast<int>(ctx.p))
    throw domain_error("ring truncation exponent must be 0 or a power of p");
  int r = q;
  while (r % static_cast<int>(ctx.p) == 0) r /= static_cast<int>(ctx.p);
  if (r != 1) throw domain_error("ring truncation exponent must be a power of p");
}

bool CompDef::operator<(const CompDef& o) const {
  if (gen != o.gen) return gen < o.gen;
  if (copy != o.copy) return copy < o.copy;
  if (off != o.off) return off < o.off;
  return mu < o.mu;
}

// ---- GradedModule --------------------------------------------------------------

GradedModule::GradedModule(RingSpec ring, int n, int n_internal,
                           std::vector<BasisElt> basis,
                           std::vector<CompDef> comps, bool complete, int dcut)
    : ring_(std::move(ring)),
      n_(n),
      n_internal_(n_internal),
      basis_(std::move(basis)),
      comps_(std::move(comps)),
      complete_(complete),
      dcut_(dcut) {
  if (n_ < 0 || n_internal_ < n_) throw domain_error("bad coordinate counts");
  for (auto& c : comps_) {
    c.mu = trimmed(std::move(c.mu));
    if (static_cast<int>(c.mu.size()) > n_internal_)
      throw invariant_violation("placement outside the coordinate list");
  }
  std::sort(basis_.begin(), basis_.end(), KeyLess{});
  int top = -1;
  for (size_t b = 0; b < basis_.size(); ++b) {
    const BasisElt& e = basis_[b];
    if (static_cast<int>(e.w.size()) != n_)
      throw invariant_violation("basis weight length mismatch");
    if (e.comp < 0 || e.comp >= static_cast<int>(comps_.size()))
      throw invariant_violation("basis component out of range");
    if (e.deg != vec_sum(e.w) + comps_[static_cast<size_t>(e.comp)].off || e.deg < 0)
      throw invariant_violation("basis degree out of step with weight");
    if (b > 0 && !KeyLess{}(basis_[b - 1], e))
      throw invariant_violation("duplicate basis vector");
    top = std::max(top, e.deg);
  }
  ranges_.assign(static_cast<size_t>(top + 1), {0, 0});
  for (size_t b = 0; b < basis_.size(); ++b) {
    auto& r = ranges_[static_cast<size_t>(basis_[b].deg)];
    if (r.second == 0) r = {static_cast<int>(b), static_cast<int>(b) + 1};
    else r.second = static_cast<int>(b) + 1;
  }
  act_.assign(static_cast<size_t>(n_), {});
  for (int i = 0; i < n_; ++i) {
    auto& col = act_[static_cast<size_t>(i)];
    col.assign(basis_.size(), -1);
    for (size_t b = 0; b < basis_.size(); ++b) {
      std::vector<int> w = basis_[b].w;
      ++w[static_cast<size_t>(i)];
      col[b] = lookup(w, basis_[b].comp);
      if (col[b] >= 0 &&
          basis_[static_cast<size_t>(col[b])].deg != basis_[b].deg + 1)
        throw invariant_violation("action does not raise degree by one");
    }
  }
  validate();
}

void GradedModule::validate() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (size_t b = 0; b < basis_.size(); ++b) {
        int ti = act_[static_cast<size_t>(i)][b];
        int tj = act_[static_cast<size_t>(j)][b];
        int ij = ti < 0 ? -1 : act_[static_cast<size_t>(j)][static_cast<size_t>(ti)];
        int ji = tj < 0 ? -1 : act_[static_cast<size_t>(i)][static_cast<size_t>(tj)];
        if (ij != ji) throw invariant_violation("variable actions fail to commute");
      }
  if (ring_.q > 0)
    for (int i = 0; i < n_; ++i)
      for (size_t b = 0; b < basis_.size(); ++b) {
        int cur = static_cast<int>(b);
        for (int step = 0; step < ring_.q && cur >= 0; ++step)
          cur = act_[static_cast<size_t>(i)][static_cast<size_t>(cur)];
        if (cur >= 0)
          throw invariant_violation("q-th power of a variable acts nonzero");
      }
}

int GradedModule::lookup(const std::vector<int>& w, int comp) const {
  if (comp < 0 || comp >= static_cast<int>(comps_.size())) return -1;
  std::vector<int> key = w;
  for (size_t i = static_cast<size_t>(n_); i < key.size(); ++i)
    if (key[i] != 0) return -1;
  key.resize(static_cast<size_t>(n_), 0);
  int deg = vec_sum(key) + comps_[static_cast<size_t>(comp)].off;
  if (deg < 0 || deg >= static_cast<int>(ranges_.size())) return -1;
  auto [lo, hi] = ranges_[static_cast<size_t>(deg)];
  BasisElt probe{std::move(key), comp, deg};
  auto first = basis_.begin() + lo, last = basis_.begin() + hi;
  auto it = std::lower_bound(first, last, probe, KeyLess{});
  if (it == last || it->w != probe.w || it->comp != comp) return -1;
  return static_cast<int>(it - basis_.begin());
}

int GradedModule::top_degree() const {
  if (!complete_)
    throw cutoff_error("top degree undefined on a cutoff materialization");
  return basis_.empty() ? -1 : basis_.back().deg;
}

int GradedModule::dim_in_degree(int d) const {
  if (d < 0 || d >= static_cast<int>(ranges_.size())) return 0;
  auto [lo, hi] = ranges_[static_cast<size_t>(d)];
  return hi - lo;
}

std::vector<int> GradedModule::degrees() const {
  std::vector<int> out;
  for (int d = 0; d < static_cast<int>(ranges_.size()); ++d)
    if (dim_in_degree(d) > 0) out.push_back(d);
  return out;
}

std::pair<int, int> GradedModule::degree_range(int d) const {
  if (d < 0 || d >= static_cast<int>(ranges_.size())) return {0, 0};
  return ranges_[static_cast<size_t>(d)];
}

MatF GradedModule::action_matrix(int i, int d) const {
  if (i < 0 || i >= n_) throw domain_error("variable index out of range");
  auto [slo, shi] = degree_range(d);
  auto [tlo, thi] = degree_range(d + 1);
  MatF A = MatF::Zero(thi - tlo, shi - slo);
  for (int b = slo; b < shi; ++b) {
    int t = act(i, b);
    if (t >= 0) A(t - tlo, b - slo) = Fp(1, ring_.ctx.p);
  }
  return A;
}

int GradedModule::weight_dim(const std::vector<int>& w) const {
  int d = 0;
  for (int c = 0; c < static_cast<int>(comps_.size()); ++c)
    if (lookup(w, c) >= 0) ++d;
  return d;
}

std::string GradedModule::json_dump() const {
  nlohmann::ordered_json j;
  j["p"] = ring_.ctx.p;
  j["q"] = ring_.q;
  j["n"] = n_;
  j["complete"] = complete_;
  j["basis"] = nlohmann::ordered_json::array();
  for (const BasisElt& e : basis_)
    j["basis"].push_back({{"w", e.w}, {"comp", e.comp}, {"deg", e.deg}});
  j["comps"] = nlohmann::ordered_json::array();
  for (const CompDef& c : comps_)
    j["comps"].push_back(
        {{"gen", c.gen}, {"copy", c.copy}, {"off", c.off}, {"mu", c.mu}});
  j["actions"] = nlohmann::ordered_json::array();
  for (int i = 0; i < n_; ++i) {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (size_t b = 0; b < basis_.size(); ++b)
      if (act(i, static_cast<int>(b)) >= 0)
        pairs.push_back({static_cast<int>(b), act(i, static_cast<int>(b))});
    j["actions"].push_back(pairs);
  }
  return j.dump();
}

int maxdeg(const GradedModule& M) { return M.top_degree(); }

std::map<int, int> module_generators(const GradedModule& M) {
  std::vector<char> hit(static_cast<size_t>(M.dim()), 0);
  for (int i = 0; i < M.n(); ++i)
    for (int b = 0; b < M.dim(); ++b) {
      int t = M.act(i, b);
      if (t >= 0) hit[static_cast<size_t>(t)] = 1;
    }
  std::map<int, int> out;
  for (int b = 0; b < M.dim(); ++b)
    if (!hit[static_cast<size_t>(b)]) ++out[M.basis()[static_cast<size_t>(b)].deg];
  return out;
}

FrobeniusQuotientRing::FrobeniusQuotientRing(const RingSpec& r, int n_)
    : ring(r), n(n_) {
  if (!ring.truncated()) throw domain_error("Frobenius quotient needs q > 0");
  if (n < 0) throw domain_error("negative variable count");
}

long long FrobeniusQuotientRing::total_dim() const {
  long long d = 1;
  for (int i = 0; i < n; ++i) {
    if (d > (1LL << 56) / ring.q) throw domain_error("ring dimension overflow");
    d *= ring.q;
  }
  return d;
}

// ---- family nodes ---------------------------------------------------------------

struct FamilyNode {
  enum class Kind {
    free_mod,
    quotient,
    ideal,
    slice,
    sum,
    twist,
    delta,
    kq,
    trunc_sub,
    trunc_quot
  };
  Kind kind;
  RingSpec ring;
  std::vector<GenSpec> gens{};
  GLIdeal I{}, J{};
  std::vector<NodePtr> kids{};
  int param = 0;
};

namespace {

using Kind = FamilyNode::Kind;

int gen_count(const FamilyNode& nd) {
  switch (nd.kind) {
    case Kind::free_mod:
      return static_cast<int>(nd.gens.size());
    case Kind::quotient:
    case Kind::ideal:
      return 1;
    case Kind::sum: {
      int s = 0;
      for (const NodePtr& k : nd.kids) s += gen_count(*k);
      return s;
    }
    default:
      return gen_count(*nd.kids[0]);
  }
}

long long node_bound(const FamilyNode& nd, int n) {
  const int q = nd.ring.q;
  switch (nd.kind) {
    case Kind::free_mod: {
      if (nd.gens.empty()) return 0;
      if (q == 0) return -1;
      long long g = 0;
      for (const GenSpec& gs : nd.gens)
        g = std::max<long long>(g, gs.orbit.empty() ? gs.degree : gs.orbit.size());
      return static_cast<long long>(q - 1) * n + g;
    }
    case Kind::quotient:
    case Kind::ideal:
      return q == 0 ? -1 : static_cast<long long>(q - 1) * n;
    case Kind::sum: {
      long long m = 0;
      for (const NodePtr& k : nd.kids) {
        long long b = node_bound(*k, n);
        if (b < 0) return -1;
        m = std::max(m, b);
      }
      return m;
    }
    case Kind::twist: {
      long long b = node_bound(*nd.kids[0], n);
      return b < 0 ? -1 : b + nd.param;
    }
    default:
      return node_bound(*nd.kids[0], n);
  }
}

// Distinct weight placements of the parts of lambda over N coordinates,
// enumerated in a fixed order.
std::vector<std::vector<int>> orbit_placements(const Partition& lambda, int N) {
  std::vector<std::pair<int, int>> groups;
  for (int part : lambda.parts) {
    if (!groups.empty() && groups.back().first == part) ++groups.back().second;
    else groups.emplace_back(part, 1);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> mu(static_cast<size_t>(N), 0);
  std::function<void(size_t)> place = [&](size_t g) {
    if (g == groups.size()) {
      out.push_back(mu);
      return;
    }
    const int val = groups[g].first;
    const size_t cnt = static_cast<size_t>(groups[g].second);
    std::vector<int> slots;
    for (int i = 0; i < N; ++i)
      if (mu[static_cast<size_t>(i)] == 0) slots.push_back(i);
    if (slots.size() < cnt) return;
    std::vector<int> pick;
    std::function<void(size_t)> comb = [&](size_t from) {
      if (pick.size() == cnt) {
        for (int s : pick) mu[static_cast<size_t>(s)] = val;
        place(g + 1);
        for (int s : pick) mu[static_cast<size_t>(s)] = 0;
        return;
      }
      for (size_t i = from; i + (cnt - pick.size()) <= slots.size(); ++i) {
        pick.push_back(slots[i]);
        comb(i + 1);
        pick.pop_back();
      }
    };
    comb(0);
  };
  place(0);
  return out;
}

std::vector<int> generator_indices(const GradedModule& M) {
  std::vector<char> hit(static_cast<size_t>(M.dim()), 0);
  for (int i = 0; i < M.n(); ++i)
    for (int b = 0; b < M.dim(); ++b) {
      int t = M.act(i, b);
      if (t >= 0) hit[static_cast<size_t>(t)] = 1;
    }
  std::vector<int> out;
  for (int b = 0; b < M.dim(); ++b)
    if (!hit[static_cast<size_t>(b)]) out.push_back(b);
  return out;
}

GradedModule materialize(const FamilyNode& nd, int n, const std::vector<int>& tail,
                         int d_max);

GradedModule assemble(const FamilyNode& nd, int n, int n_internal,
                      std::vector<BasisElt> basis, std::vector<CompDef> comps,
                      int d_max) {
  long long bound = node_bound(nd, n);
  bool complete = bound >= 0 && bound <= d_max;
  return GradedModule(nd.ring, n, n_internal, std::move(basis), std::move(comps),
                      complete, d_max);
}

GradedModule materialize_leaf(const FamilyNode& nd, int n,
                              const std::vector<int>& tail, int d_max) {
  const int N = n + static_cast<int>(tail.size());
  const int q = nd.ring.q;
  const int cap = q > 0 ? q - 1 : -1;
  std::vector<BasisElt> basis;
  std::vector<CompDef> comps;

  if (nd.kind == Kind::free_mod) {
    for (int gi = 0; gi < static_cast<int>(nd.gens.size()); ++gi) {
      const GenSpec& gs = nd.gens[static_cast<size_t>(gi)];
      std::vector<std::vector<int>> mus;
      const int copies = gs.multiplicity;
      int off = 0;
      if (gs.orbit.empty()) {
        mus.assign(1, std::vector<int>(static_cast<size_t>(N), 0));
        off = gs.degree;
      } else {
        mus = orbit_placements(gs.orbit, N);
      }
      for (int copy = 0; copy < copies; ++copy)
        for (const std::vector<int>& mu : mus) {
          bool ok = true;
          for (size_t k = 0; k < tail.size(); ++k) {
            int a = tail[k] - mu[static_cast<size_t>(n) + k];
            if (a < 0 || (q > 0 && a >= q)) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          int base = off;
          for (int i = 0; i < n; ++i) base += mu[static_cast<size_t>(i)];
          if (base > d_max) continue;
          const int ci = static_cast<int>(comps.size());
          comps.push_back(CompDef{gi, copy, off, mu});
          for (int dd = 0; base + dd <= d_max; ++dd)
            for_each_composition(n, dd, cap, [&](const std::vector<int>& a) {
              BasisElt e;
              e.w.resize(static_cast<size_t>(n));
              for (int i = 0; i < n; ++i)
                e.w[static_cast<size_t>(i)] =
                    a[static_cast<size_t>(i)] + mu[static_cast<size_t>(i)];
              e.comp = ci;
              e.deg = base + dd;
              basis.push_back(std::move(e));
            });
        }
    }
    return assemble(nd, n, N, std::move(basis), std::move(comps), d_max);
  }

  // quotient and ideal leaves
  comps.push_back(CompDef{0, 0, 0, {}});
  bool dead = false;
  if (q > 0)
    for (int t : tail)
      if (t >= q) dead = true;
  if (!dead) {
    MemberCache in_i(nd.I, nd.ring.ctx);
    MemberCache in_j(nd.J, nd.ring.ctx);
    std::vector<int> full(static_cast<size_t>(N), 0);
    for (size_t k = 0; k < tail.size(); ++k)
      full[static_cast<size_t>(n) + k] = tail[k];
    for (int dd = 0; dd <= d_max; ++dd)
      for_each_composition(n, dd, cap, [&](const std::vector<int>& a) {
        std::copy(a.begin(), a.end(), full.begin());
        bool present = nd.kind == Kind::quotient
                           ? !in_i.member(full)
                           : in_i.member(full) && !in_j.member(full);
        if (present) basis.push_back(BasisElt{a, 0, dd});
      });
  }
  return assemble(nd, n, N, std::move(basis), std::move(comps), d_max);
}

GradedModule materialize(const FamilyNode& nd, int n, const std::vector<int>& tail,
                         int d_max) {
  switch (nd.kind) {
    case Kind::free_mod:
    case Kind::quotient:
    case Kind::ideal:
      return materialize_leaf(nd, n, tail, d_max);

    case Kind::slice: {
      std::vector<int> t2 = tail;
      t2.push_back(nd.param);
      return materialize(*nd.kids[0], n, t2, d_max);
    }

    case Kind::sum: {
      std::vector<BasisElt> basis;
      std::vector<CompDef> comps;
      int gbase = 0;
      int n_int = n + static_cast<int>(tail.size());
      for (const NodePtr& kid : nd.kids) {
        GradedModule part = materialize(*kid, n, tail, d_max);
        n_int = std::max(n_int, part.n_internal());
        const int coff = static_cast<int>(comps.size());
        for (CompDef c : part.comps()) {
          c.gen += gbase;
          comps.push_back(std::move(c));
        }
        for (BasisElt e : part.basis()) {
          e.comp += coff;
          basis.push_back(std::move(e));
        }
        gbase += gen_count(*kid);
      }
      return assemble(nd, n, n_int, std::move(basis), std::move(comps), d_max);
    }

    case Kind::twist: {
      GradedModule part = materialize(*nd.kids[0], n, tail, d_max - nd.param);
      std::vector<BasisElt> basis = part.basis();
      std::vector<CompDef> comps = part.comps();
      for (BasisElt& e : basis) e.deg += nd.param;
      for (CompDef& c : comps) c.off += nd.param;
      return assemble(nd, n, part.n_internal(), std::move(basis), std::move(comps),
                      d_max);
    }

    case Kind::delta:
    case Kind::kq: {
      const int step = nd.ring.q / static_cast<int>(nd.ring.ctx.p);
      std::vector<int> t2 = tail;
      t2.push_back(step);
      GradedModule src = materialize(*nd.kids[0], n, tail, d_max);
      GradedModule dst = materialize(*nd.kids[0], n, t2, d_max);
      UnitMap um = make_unit_map(std::move(src), std::move(dst));
      std::vector<BasisElt> basis;
      if (nd.kind == Kind::kq) {
        for (int b = 0; b < um.src.dim(); ++b)
          if (um.to[static_cast<size_t>(b)] < 0)
            basis.push_back(um.src.basis()[static_cast<size_t>(b)]);
        return GradedModule(nd.ring, n, um.src.n_internal(), std::move(basis),
                            um.src.comps(), um.src.complete(), d_max);
      }
      std::vector<char> hit(static_cast<size_t>(um.dst.dim()), 0);
      for (int t : um.to)
        if (t >= 0) hit[static_cast<size_t>(t)] = 1;
      for (int b = 0; b < um.dst.dim(); ++b)
        if (!hit[static_cast<size_t>(b)])
          basis.push_back(um.dst.basis()[static_cast<size_t>(b)]);
      GradedModule out(nd.ring, n, um.dst.n_internal(), std::move(basis),
                       um.dst.comps(), um.dst.complete(), d_max);
      if (tail.empty() && um.src.complete()) {
        // the difference functor drops at least one generation degree
        GradedModule up = materialize(*nd.kids[0], n + 1, {},
                                      static_cast<int>(node_bound(*nd.kids[0], n + 1)));
        int t0 = -1;
        for (int b : generator_indices(up))
          t0 = std::max(t0, up.basis()[static_cast<size_t>(b)].deg);
        for (int b : generator_indices(out))
          if (out.basis()[static_cast<size_t>(b)].deg > t0 - 1)
            throw invariant_violation(
                "difference functor generated above t0 - 1");
      }
      return out;
    }

    case Kind::trunc_sub:
    case Kind::trunc_quot: {
      if (!tail.empty())
        throw invariant_violation(
            "truncation families do not compose with slicing functors");
      GradedModule part = materialize(*nd.kids[0], n, tail, d_max);
      std::vector<char> in(static_cast<size_t>(part.dim()), 0);
      std::vector<int> queue;
      for (int b = 0; b < part.dim(); ++b)
        if (part.basis()[static_cast<size_t>(b)].deg < nd.param) {
          in[static_cast<size_t>(b)] = 1;
          queue.push_back(b);
        }
      for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int i = 0; i < n; ++i) {
          int t = part.act(i, queue[qi]);
          if (t >= 0 && !in[static_cast<size_t>(t)]) {
            in[static_cast<size_t>(t)] = 1;
            queue.push_back(t);
          }
        }
      std::vector<BasisElt> basis;
      const bool want = nd.kind == Kind::trunc_sub;
      for (int b = 0; b < part.dim(); ++b)
        if (static_cast<bool>(in[static_cast<size_t>(b)]) == want)
          basis.push_back(part.basis()[static_cast<size_t>(b)]);
      return GradedModule(nd.ring, n, part.n_internal(), std::move(basis),
                          part.comps(), part.complete(), d_max);
    }
  }
  throw invariant_violation("unreachable family node kind");
}

NodePtr make_node(FamilyNode nd) {
  return std::make_shared<const FamilyNode>(std::move(nd));
}

std::string node_descriptor(const FamilyNode& nd) {
  switch (nd.kind) {
    case Kind::free_mod: {
      std::string s = "free[";
      for (size_t i = 0; i < nd.gens.size(); ++i) {
        if (i) s += ", ";
        const GenSpec& g = nd.gens[i];
        if (g.orbit.empty()) {
          s += "deg " + std::to_string(g.degree);
          if (g.multiplicity != 1) s += " x" + std::to_string(g.multiplicity);
        } else {
          s += g.orbit.str();
        }
      }
      return s + "]";
    }
    case Kind::quotient:
      return "S/(" + nd.I.str() + ")";
    case Kind::ideal:
      return nd.J.is_zero() ? "(" + nd.I.str() + ")"
                            : "(" + nd.I.str() + ")/(" + nd.J.str() + ")";
    case Kind::slice:
      return "Sh_" + std::to_string(nd.param) + "(" +
             node_descriptor(*nd.kids[0]) + ")";
    case Kind::sum:
      return "(" + node_descriptor(*nd.kids[0]) + " + " +
             node_descriptor(*nd.kids[1]) + ")";
    case Kind::twist:
      return "twist_" + std::to_string(nd.param) + "(" +
             node_descriptor(*nd.kids[0]) + ")";
    case Kind::delta:
      return "Delta(" + node_descriptor(*nd.kids[0]) + ")";
    case Kind::kq:
      return "K(" + node_descriptor(*nd.kids[0]) + ")";
    case Kind::trunc_sub:
      return "sub<" + std::to_string(nd.param) + "(" +
             node_descriptor(*nd.kids[0]) + ")";
    case Kind::trunc_quot:
      return "quot<" + std::to_string(nd.param) + "(" +
             node_descriptor(*nd.kids[0]) + ")";
  }
  return "?";
}

}  // namespace

// ---- ModuleFamily ---------------------------------------------------------------

ModuleFamily::ModuleFamily(RingSpec ring, NodePtr node)
    : ring_(std::move(ring)), node_(std::move(node)) {}

std::string ModuleFamily::descriptor() const { return node_descriptor(*node_); }

GradedModule ModuleFamily::eval(int n, int d_max) const {
  if (n < 0) throw domain_error("negative variable count");
  if (d_max < 0) throw domain_error("eval needs an explicit degree cutoff >= 0");
  return materialize(*node_, n, {}, d_max);
}

GradedModule ModuleFamily::eval_full(int n) const {
  long long b = top_bound(n);
  if (b < 0)
    throw cutoff_error(
        "evaluation over the polynomial ring is unbounded; pass a degree cutoff");
  return eval(n, static_cast<int>(b));
}

long long ModuleFamily::top_bound(int n) const { return node_bound(*node_, n); }

GradedModule eval_with_tail(const ModuleFamily& fam, int n,
                            const std::vector<int>& tail, int d_max) {
  if (n < 0) throw domain_error("negative variable count");
  if (d_max < 0) throw domain_error("eval needs an explicit degree cutoff >= 0");
  for (int t : tail)
    if (t < 0) throw domain_error("negative slice weight");
  return materialize(*fam.node(), n, tail, d_max);
}

ModuleFamily free_family(const RingSpec& ring, std::vector<GenSpec> gens) {
  for (GenSpec& g : gens) {
    if (g.multiplicity < 1) throw domain_error("generator multiplicity < 1");
    if (!g.orbit.empty()) {
      if (g.degree != 0 && g.degree != g.orbit.size())
        throw domain_error("generator degree clashes with its orbit weight");
      g.degree = g.orbit.size();
    } else if (g.degree < 0) {
      throw domain_error("negative generator degree");
    }
  }
  FamilyNode nd{FamilyNode::Kind::free_mod, ring};
  nd.gens = std::move(gens);
  return ModuleFamily(ring, make_node(std::move(nd)));
}

ModuleFamily quotient_family(const RingSpec& ring, const GLIdeal& I) {
  if (canonicalize(I.gens, ring.ctx) != I)
    throw domain_error("ideal not in canonical form");
  FamilyNode nd{FamilyNode::Kind::quotient, ring};
  nd.I = I;
  return ModuleFamily(ring, make_node(std::move(nd)));
}

ModuleFamily ideal_family(const RingSpec& ring, const GLIdeal& I,
                          const GLIdeal& J) {
  if (canonicalize(I.gens, ring.ctx) != I || canonicalize(J.gens, ring.ctx) != J)
    throw domain_error("ideal not in canonical form");
  if (!ideal_contains(I, J, ring.ctx))
    throw domain_error("ideal_family needs J contained in I");
  FamilyNode nd{FamilyNode::Kind::ideal, ring};
  nd.I = I;
  nd.J = J;
  return ModuleFamily(ring, make_node(std::move(nd)));
}

ModuleFamily ideal_family(const RingSpec& ring, const GLIdeal& I) {
  return ideal_family(ring, I, GLIdeal::zero());
}

ModuleFamily direct_sum(const ModuleFamily& a, const ModuleFamily& b) {
  if (!(a.ring() == b.ring()))
    throw domain_error("direct sum needs matching rings");
  FamilyNode nd{FamilyNode::Kind::sum, a.ring()};
  nd.kids = {a.node(), b.node()};
  return ModuleFamily(a.ring(), make_node(std::move(nd)));
}

int family_gen_count(const ModuleFamily& fam) { return gen_count(*fam.node()); }

ModuleFamily twist(const ModuleFamily& fam, int d) {
  if (d < 0) throw domain_error("negative twists would create negative degrees");
  FamilyNode nd{FamilyNode::Kind::twist, fam.ring()};
  nd.kids = {fam.node()};
  nd.param = d;
  return ModuleFamily(fam.ring(), make_node(std::move(nd)));
}

std::pair<ModuleFamily, ModuleFamily> truncate_below(const ModuleFamily& fam,
                                                     int d) {
  FamilyNode sub{FamilyNode::Kind::trunc_sub, fam.ring()};
  sub.kids = {fam.node()};
  sub.param = d;
  FamilyNode quot{FamilyNode::Kind::trunc_quot, fam.ring()};
  quot.kids = {fam.node()};
  quot.param = d;
  return {ModuleFamily(fam.ring(), make_node(std::move(sub))),
          ModuleFamily(fam.ring(), make_node(std::move(quot)))};
}

ModuleFamily shift_slice(const ModuleFamily& fam, int m) {
  if (m < 0) throw domain_error("negative slice weight");
  FamilyNode nd{FamilyNode::Kind::slice, fam.ring()};
  nd.kids = {fam.node()};
  nd.param = m;
  return ModuleFamily(fam.ring(), make_node(std::move(nd)));
}

ModuleFamily delta_family(const ModuleFamily& fam) {
  if (!fam.ring().truncated())
    throw domain_error("difference functor needs a truncated ring");
  FamilyNode nd{FamilyNode::Kind::delta, fam.ring()};
  nd.kids = {fam.node()};
  return ModuleFamily(fam.ring(), make_node(std::move(nd)));
}

ModuleFamily kq_family(const ModuleFamily& fam) {
  if (!fam.ring().truncated())
    throw domain_error("kernel functor needs a truncated ring");
  FamilyNode nd{FamilyNode::Kind::kq, fam.ring()};
  nd.kids = {fam.node()};
  return ModuleFamily(fam.ring(), make_node(std::move(nd)));
}

// ---- unit maps ------------------------------------------------------------------

bool UnitMap::injective() const {
  std::vector<char> seen(static_cast<size_t>(dst.dim()), 0);
  for (int t : to) {
    if (t < 0) return false;
    if (seen[static_cast<size_t>(t)]) return false;
    seen[static_cast<size_t>(t)] = 1;
  }
  return true;
}

long long UnitMap::rank() const {
  long long r = 0;
  for (int t : to)
    if (t >= 0) ++r;
  return r;
}

UnitMap make_unit_map(GradedModule src, GradedModule dst, int gen_offset) {
  const int st = src.n_internal() - src.n(), dt = dst.n_internal() - dst.n();
  if (src.n() > dst.n() || st > dt)
    throw invariant_violation("unit map cannot drop coordinates");
  std::map<CompDef, int> cidx;
  for (int k = 0; k < static_cast<int>(dst.comps().size()); ++k)
    cidx[dst.comps()[static_cast<size_t>(k)]] = k;
  std::vector<int> cmap(src.comps().size(), -1);
  for (size_t k = 0; k < src.comps().size(); ++k) {
    CompDef c = src.comps()[k];
    c.gen += gen_offset;
    if (c.gen < 0) continue;
    // re-seat the placement: module block first, sliced block after it
    std::vector<int> full = c.mu;
    full.resize(static_cast<size_t>(src.n_internal()), 0);
    std::vector<int> out(static_cast<size_t>(dst.n_internal()), 0);
    for (int i = 0; i < src.n(); ++i) out[static_cast<size_t>(i)] = full[static_cast<size_t>(i)];
    for (int i = 0; i < st; ++i)
      out[static_cast<size_t>(dst.n() + i)] = full[static_cast<size_t>(src.n() + i)];
    c.mu = trimmed(std::move(out));
    auto it = cidx.find(c);
    if (it != cidx.end()) cmap[k] = it->second;
  }
  std::vector<int> to(static_cast<size_t>(src.dim()), -1);
  for (int b = 0; b < src.dim(); ++b) {
    int ci = cmap[static_cast<size_t>(src.basis()[static_cast<size_t>(b)].comp)];
    if (ci < 0) continue;
    int t = dst.lookup(src.basis()[static_cast<size_t>(b)].w, ci);
    if (t >= 0 &&
        dst.basis()[static_cast<size_t>(t)].deg != src.basis()[static_cast<size_t>(b)].deg)
      throw invariant_violation("unit map shifted a degree");
    to[static_cast<size_t>(b)] = t;
  }
  return UnitMap{std::move(src), std::move(dst), std::move(to)};
}

UnitMap family_incl(const ModuleFamily& fam, int n, int d_max) {
  UnitMap um = make_unit_map(fam.eval(n, d_max), fam.eval(n + 1, d_max));
  if (!um.injective())
    throw invariant_violation("family inclusion failed to embed");
  std::vector<char> hit(static_cast<size_t>(um.dst.dim()), 0);
  for (int t : um.to) hit[static_cast<size_t>(t)] = 1;
  for (int b = 0; b < um.dst.dim(); ++b) {
    const BasisElt& e = um.dst.basis()[static_cast<size_t>(b)];
    const CompDef& c = um.dst.comps()[static_cast<size_t>(e.comp)];
    bool low = e.w[static_cast<size_t>(n)] == 0 &&
               (static_cast<int>(c.mu.size()) <= n || c.mu[static_cast<size_t>(n)] == 0);
    if (low != static_cast<bool>(hit[static_cast<size_t>(b)]))
      throw invariant_violation("inclusion image not cut out by weight support");
  }
  return um;
}

UnitMap natural_unit_map(const ModuleFamily& fam, int n) {
  if (!fam.ring().truncated())
    throw domain_error("natural map needs a truncated ring");
  const int step = fam.ring().q / static_cast<int>(fam.ring().ctx.p);
  long long b = fam.top_bound(n);
  int d_max = static_cast<int>(b);
  GradedModule src = fam.eval(n, d_max);
  GradedModule dst = eval_with_tail(fam, n, {step}, d_max);
  return make_unit_map(std::move(src), std::move(dst));
}

// ---- torsion and generators -------------------------------------------------------

GradedModule torsion_submodule(const ModuleFamily& fam, int n, int q) {
  if (!fam.ring().truncated() || fam.ring().q != q)
    throw domain_error("torsion needs the family's own truncation exponent");
  const int step = q / static_cast<int>(fam.ring().ctx.p);
  const int d_max = static_cast<int>(fam.top_bound(n));
  GradedModule base = fam.eval(n, d_max);
  const long long dim = base.dim();
  std::vector<char> prev(static_cast<size_t>(dim), 0);
  for (int t = 1; t <= dim + 1; ++t) {
    std::vector<GradedModule> stages;
    stages.push_back(base);
    std::vector<int> tail;
    for (int k = 1; k <= t; ++k) {
      tail.push_back(step);
      stages.push_back(eval_with_tail(fam, n, tail, d_max));
    }
    std::vector<UnitMap> maps;
    for (int k = 0; k < t; ++k)
      maps.push_back(make_unit_map(stages[static_cast<size_t>(k)],
                                   stages[static_cast<size_t>(k + 1)]));
    std::vector<char> dead(static_cast<size_t>(dim), 0);
    for (long long b = 0; b < dim; ++b) {
      int cur = static_cast<int>(b);
      for (int k = 0; k < t && cur >= 0; ++k)
        cur = maps[static_cast<size_t>(k)].to[static_cast<size_t>(cur)];
      if (cur < 0) dead[static_cast<size_t>(b)] = 1;
    }
    if (dead == prev) {
      std::vector<BasisElt> basis;
      for (long long b = 0; b < dim; ++b)
        if (dead[static_cast<size_t>(b)])
          basis.push_back(base.basis()[static_cast<size_t>(b)]);
      return GradedModule(fam.ring(), n, base.n_internal(), std::move(basis),
                          base.comps(), base.complete(), d_max);
    }
    prev = std::move(dead);
  }
  throw invariant_violation("torsion chain failed to stabilize");
}

std::map<int, int> generation_degrees(const ModuleFamily& fam, int n, int d_max) {
  int cap = d_max;
  if (cap < 0) {
    long long b = fam.top_bound(n);
    if (b < 0)
      throw cutoff_error("generation degrees over the polynomial ring need a cutoff");
    cap = static_cast<int>(b);
  }
  return module_generators(fam.eval(n, cap));
}

std::vector<long long> graded_dims(const GradedModule& M) {
  std::vector<long long> out;
  for (int b = 0; b < M.dim(); ++b) {
    int d = M.basis()[static_cast<size_t>(b)].deg;
    if (d >= static_cast<int>(out.size())) out.resize(static_cast<size_t>(d) + 1, 0);
    ++out[static_cast<size_t>(d)];
  }
  return out;
}

}  // namespace glfrob
