#include "glfrob/homology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "glfrob/enumerate.hpp"
#include "glfrob/errors.hpp"
#include "glfrob/linalg.hpp"

namespace glfrob {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

bool Rational::operator<(const Rational& o) const {
  return num * o.den < o.num * den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

long long BettiTable::at(int i, int j) const {
  auto it = entries.find({i, j});
  return it == entries.end() ? 0 : it->second;
}

std::string BettiTable::json_dump() const {
  nlohmann::ordered_json j;
  j["ring"] = ring.truncated() ? "truncated" : "polynomial";
  j["p"] = ring.ctx.p;
  if (ring.truncated()) j["q"] = ring.q;
  else j["q"] = nullptr;
  j["n"] = n;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [key, dim] : entries)
    j["entries"].push_back({{"i", key.first},
                            {"j", key.second},
                            {"dim", dim},
                            {"stable", stable(key.first, key.second)}});
  return j.dump();
}

std::string BettiTable::csv_dump() const {
  std::ostringstream out;
  out << "i,j,dim,stable\n";
  for (const auto& [key, dim] : entries)
    out << key.first << "," << key.second << "," << dim << ","
        << (stable(key.first, key.second) ? 1 : 0) << "\n";
  return out.str();
}

std::string BettiTable::pretty() const {
  if (entries.empty()) return "(zero table)\n";
  int rmin = 1 << 30, rmax = -(1 << 30);
  for (const auto& [key, dim] : entries) {
    (void)dim;
    rmin = std::min(rmin, key.second - key.first);
    rmax = std::max(rmax, key.second - key.first);
  }
  std::vector<size_t> width(static_cast<size_t>(i_max) + 1, 1);
  for (const auto& [key, dim] : entries) {
    std::string cell = std::to_string(dim);
    if (stable(key.first, key.second)) cell += "*";
    width[static_cast<size_t>(key.first)] =
        std::max(width[static_cast<size_t>(key.first)], cell.size());
  }
  std::ostringstream out;
  size_t rw = std::max(std::to_string(rmin).size(), std::to_string(rmax).size());
  out << std::string(rw + 1, ' ');
  for (int i = 0; i <= i_max; ++i) {
    std::string h = std::to_string(i);
    out << "  " << std::string(width[static_cast<size_t>(i)] - h.size(), ' ') << h;
  }
  out << "\n";
  for (int r = rmin; r <= rmax; ++r) {
    std::string rh = std::to_string(r);
    out << std::string(rw - rh.size(), ' ') << rh << ":";
    for (int i = 0; i <= i_max; ++i) {
      long long d = at(i, r + i);
      std::string cell = d == 0 ? "." : std::to_string(d);
      if (d != 0 && stable(i, r + i)) cell += "*";
      out << "  " << std::string(width[static_cast<size_t>(i)] - cell.size(), ' ')
          << cell;
    }
    out << "\n";
  }
  if (truncated) out << "(window truncated at j=" << j_max << ")\n";
  return out.str();
}

namespace {

long long perm_count(const std::vector<int>& sorted_w) {
  // distinct rearrangements: n! / prod(mult!), built from binomials
  long long total = 1;
  int remaining = static_cast<int>(sorted_w.size());
  size_t i = 0;
  while (i < sorted_w.size()) {
    size_t j = i;
    while (j < sorted_w.size() && sorted_w[j] == sorted_w[i]) ++j;
    int c = static_cast<int>(j - i);
    // C(remaining, c)
    long long b = 1;
    for (int k = 1; k <= c; ++k) b = b * (remaining - c + k) / k;
    total *= b;
    remaining -= c;
    i = j;
  }
  return total;
}

}  // namespace

BettiTable koszul_tor(const GradedModule& M, int i_max, int j_max) {
  if (M.ring().truncated())
    throw domain_error("koszul tor expects the full polynomial ring");
  if (i_max < 0 || j_max < 0) throw domain_error("negative window");
  if (!M.complete() && M.dcut() < j_max)
    throw cutoff_error("module not materialized through the requested window");
  const int n = M.n();

  BettiTable T{RingSpec(M.ring().ctx, 0), n, i_max, j_max, false, {}};
  const uint32_t p = M.ring().ctx.p;

  // the variable action preserves the component, so the complex splits by
  // the component degree offset; within a layer degree is weight size + off
  std::map<int, std::map<std::vector<int>, std::vector<int>>> layers;
  for (int b = 0; b < M.dim(); ++b) {
    const auto& e = M.basis()[static_cast<size_t>(b)];
    int off = e.deg;
    for (int wi : e.w) off -= wi;
    layers[off][e.w].push_back(b);
  }

  for (const auto& [off, wmap] : layers) {
    std::map<std::vector<int>, long long> class_total;
    for (const auto& [w, idx] : wmap) {
      std::vector<int> sw = w;
      std::sort(sw.begin(), sw.end(), std::greater<int>());
      class_total[sw] += static_cast<long long>(idx.size());
    }
    for (const auto& [sw, total] : class_total) {
      auto it = wmap.find(sw);
      long long rep = it == wmap.end() ? 0 : static_cast<long long>(it->second.size());
      if (total != perm_count(sw) * rep)
        throw invariant_violation("module support is not permutation stable");
    }

    std::vector<int> w(static_cast<size_t>(n), 0);
    for (int j = std::max(off, 0); j <= j_max; ++j) {
      for_each_partition(j - off, [&](const std::vector<int>& parts) {
        if (static_cast<int>(parts.size()) > n) return;
        std::fill(w.begin(), w.end(), 0);
        std::copy(parts.begin(), parts.end(), w.begin());
        long long mult = perm_count(w);

        std::vector<int> supp;
        for (int t = 0; t < n; ++t)
          if (w[static_cast<size_t>(t)] > 0) supp.push_back(t);
        const int smax = static_cast<int>(supp.size());
        const int levels = std::min(i_max + 1, smax);

        // level bases: subsets T of supp (as sorted position lists) x basis ids
        struct Level {
          std::vector<std::pair<std::vector<int>, int>> elts;
          std::map<std::pair<std::vector<int>, int>, int> index;
        };
        std::vector<Level> lv(static_cast<size_t>(levels) + 1);
        std::vector<int> pick;
        std::vector<int> wt(static_cast<size_t>(n));
        for (int i = 0; i <= levels; ++i) {
          auto& L = lv[static_cast<size_t>(i)];
          std::function<void(int)> comb = [&](int from) {
            if (static_cast<int>(pick.size()) == i) {
              wt = w;
              for (int t : pick) --wt[static_cast<size_t>(t)];
              auto it = wmap.find(wt);
              if (it != wmap.end())
                for (int b : it->second) {
                  L.index[{pick, b}] = static_cast<int>(L.elts.size());
                  L.elts.emplace_back(pick, b);
                }
              return;
            }
            for (int s = from; s < smax; ++s) {
              pick.push_back(supp[static_cast<size_t>(s)]);
              comb(s + 1);
              pick.pop_back();
            }
          };
          comb(0);
        }

        std::vector<int> ranks(static_cast<size_t>(levels) + 2, 0);
        for (int i = 1; i <= levels; ++i) {
          const auto& src = lv[static_cast<size_t>(i)];
          const auto& dst = lv[static_cast<size_t>(i - 1)];
          if (src.elts.empty() || dst.elts.empty()) continue;
          MatF D = MatF::Zero(static_cast<Eigen::Index>(dst.elts.size()),
                              static_cast<Eigen::Index>(src.elts.size()));
          for (size_t c = 0; c < src.elts.size(); ++c) {
            const auto& [Tset, b] = src.elts[c];
            for (size_t k = 0; k < Tset.size(); ++k) {
              int tb = M.act(Tset[k], b);
              if (tb < 0) continue;
              std::vector<int> Trem = Tset;
              Trem.erase(Trem.begin() + static_cast<long>(k));
              auto it = dst.index.find({Trem, tb});
              if (it == dst.index.end())
                throw invariant_violation("koszul target missing from level basis");
              Fp sign = (k % 2 == 0) ? Fp(1, p) : Fp(p - 1, p);
              D(it->second, static_cast<Eigen::Index>(c)) += sign;
            }
          }
          ranks[static_cast<size_t>(i)] = linalg::rank(std::move(D));
        }

        for (int i = 0; i <= std::min(i_max, levels); ++i) {
          long long dim = static_cast<long long>(lv[static_cast<size_t>(i)].elts.size());
          long long h = dim - ranks[static_cast<size_t>(i)] -
                        ranks[static_cast<size_t>(i) + 1];
          if (h < 0) throw invariant_violation("negative homology dimension");
          if (h > 0) T.entries[{i, j}] += mult * h;
        }
      });
    }
  }
  return T;
}

// ---- minimal resolutions over the truncated ring ---------------------------------

namespace {

// graded vector space with commuting degree +1 action matrices
struct Dense {
  std::vector<int> dims;                // indices 0..j_max
  std::vector<std::vector<MatF>> act;   // act[i][j]: dims[j] -> dims[j+1]
};

Dense dense_of(const GradedModule& M, int j_max) {
  Dense D;
  D.dims.assign(static_cast<size_t>(j_max) + 1, 0);
  for (int j = 0; j <= j_max; ++j) D.dims[static_cast<size_t>(j)] = M.dim_in_degree(j);
  D.act.assign(static_cast<size_t>(M.n()), {});
  for (int i = 0; i < M.n(); ++i) {
    auto& col = D.act[static_cast<size_t>(i)];
    col.resize(static_cast<size_t>(j_max));
    for (int j = 0; j + 1 <= j_max; ++j) col[static_cast<size_t>(j)] = M.action_matrix(i, j);
  }
  return D;
}

// ring scaffolding: basis of the truncated ring per degree plus, for each
// basis monomial of positive degree, a variable and the index it divides from
struct RingData {
  GradedModule R;
  std::vector<int> var;     // per global basis index
  std::vector<int> parent;  // global index of the monomial divided by var
  RingData(const RingSpec& ring, int n, int j_max)
      : R(free_family(ring, {GenSpec{0, Partition{}, 1}}).eval(n, j_max)) {
    var.assign(static_cast<size_t>(R.dim()), -1);
    parent.assign(static_cast<size_t>(R.dim()), -1);
    for (int b = 0; b < R.dim(); ++b) {
      const auto& w = R.basis()[static_cast<size_t>(b)].w;
      for (int i = 0; i < n; ++i)
        if (w[static_cast<size_t>(i)] > 0) {
          std::vector<int> par = w;
          --par[static_cast<size_t>(i)];
          var[static_cast<size_t>(b)] = i;
          parent[static_cast<size_t>(b)] = R.lookup(par, 0);
          break;
        }
    }
  }
  int dim_in(int d) const { return R.dim_in_degree(d); }
  int lo(int d) const { return R.degree_range(d).first; }
};

struct FreeMod {
  std::vector<int> gdeg;  // generator degrees, construction order
  // basis of degree j: for each generator g in order, the ring monomials of
  // degree j - gdeg[g] in ring order
  int dim_in(const RingData& rd, int j) const {
    int s = 0;
    for (int d : gdeg)
      if (j >= d) s += rd.dim_in(j - d);
    return s;
  }
};

// image of each generator vector pushed along all ring monomials: columns of
// the degree-j block of the map F -> target, where vec[g] sits in degree
// gdeg[g] of the target and tact moves target degrees up by one
std::map<int, MatF> push_map(const RingData& rd, const FreeMod& F,
                             const std::vector<VecF>& vec,
                             const std::vector<int>& tdims,
                             const std::vector<std::vector<MatF>>& tact,
                             int j_max) {
  const int G = static_cast<int>(F.gdeg.size());
  // u[g][rb]: target vector for generator g times ring monomial rb
  std::vector<std::vector<VecF>> u(static_cast<size_t>(G));
  for (int g = 0; g < G; ++g) {
    auto& ug = u[static_cast<size_t>(g)];
    ug.resize(static_cast<size_t>(rd.R.dim()));
    for (int rb = 0; rb < rd.R.dim(); ++rb) {
      int t = rd.R.basis()[static_cast<size_t>(rb)].deg;
      int dj = F.gdeg[static_cast<size_t>(g)] + t;
      if (dj > j_max) break;
      if (t == 0) {
        ug[static_cast<size_t>(rb)] = vec[static_cast<size_t>(g)];
      } else {
        int i = rd.var[static_cast<size_t>(rb)];
        const VecF& prev = ug[static_cast<size_t>(rd.parent[static_cast<size_t>(rb)])];
        ug[static_cast<size_t>(rb)] =
            tact[static_cast<size_t>(i)][static_cast<size_t>(dj - 1)] * prev;
      }
    }
  }
  std::map<int, MatF> out;
  for (int j = 0; j <= j_max; ++j) {
    int cols = F.dim_in(rd, j);
    MatF B = MatF::Zero(tdims[static_cast<size_t>(j)], cols);
    int c = 0;
    for (int g = 0; g < G; ++g) {
      int t = j - F.gdeg[static_cast<size_t>(g)];
      if (t < 0) continue;
      int lo = rd.lo(t);
      for (int k = 0; k < rd.dim_in(t); ++k)
        B.col(c++) = u[static_cast<size_t>(g)][static_cast<size_t>(lo + k)];
    }
    out[j] = std::move(B);
  }
  return out;
}

// generator degrees and coordinate unit vectors of a Dense module: the
// complement of the span of all action images, degree by degree
std::pair<std::vector<int>, std::vector<VecF>> dense_gens(const Dense& N, int n,
                                                          int j_max) {
  std::vector<int> degs;
  std::vector<VecF> vecs;
  for (int j = 0; j <= j_max; ++j) {
    int d = N.dims[static_cast<size_t>(j)];
    if (d == 0) continue;
    linalg::EchelonSpan span(d);
    if (j > 0 && N.dims[static_cast<size_t>(j) - 1] > 0)
      for (int i = 0; i < n; ++i) {
        const MatF& A = N.act[static_cast<size_t>(i)][static_cast<size_t>(j) - 1];
        for (Eigen::Index c = 0; c < A.cols(); ++c) span.insert(A.col(c));
      }
    for (int k = 0; k < d; ++k) {
      VecF e = VecF::Zero(d);
      e(k) = Fp(1);
      if (span.insert(e)) {
        degs.push_back(j);
        VecF gv = VecF::Zero(d);
        gv(k) = Fp(1);
        vecs.push_back(std::move(gv));
      }
    }
  }
  return {degs, vecs};
}

bool is_zero_mat(const MatF& A) {
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (!A(i, j).is_zero()) return false;
  return true;
}

}  // namespace

std::pair<ResolutionCertificate, BettiTable> minimal_resolution(
    const GradedModule& M, int i_max, int j_max) {
  if (!M.ring().truncated())
    throw domain_error("minimal resolutions need the truncated ring");
  if (i_max < 0 || j_max < 0) throw domain_error("negative window");
  if (!M.complete() && M.dcut() < j_max)
    throw cutoff_error("module not materialized through the requested window");
  const int n = M.n();
  const int q = M.ring().q;

  RingData rd(M.ring(), n, j_max);
  ResolutionCertificate cert;
  BettiTable T{M.ring(), n, i_max, j_max, false, {}};

  if (!M.complete()) cert.truncated = true;

  Dense target = dense_of(M, j_max);
  std::vector<int> mdims = target.dims;

  // per step: free module, its map to the previous free module (or to M),
  // and the kernel as a Dense with basis matrices K[j] inside the free module
  FreeMod prev_free;
  std::map<int, MatF> prev_kernel;  // degree -> columns in prev_free coords
  Dense kernel_dense;

  for (int step = 0; step <= i_max; ++step) {
    auto [gd, gv] = dense_gens(target, n, j_max);
    FreeMod F;
    F.gdeg = gd;
    cert.gens.push_back({});
    for (int d : gd) {
      ++cert.gens.back()[d];
      T.entries[{step, d}] += 1;
    }
    if (!gd.empty()) {
      int top = (q - 1) * n + *std::max_element(gd.begin(), gd.end());
      if (top > j_max) cert.truncated = true;
    }

    // the map F -> target in target coordinates
    std::map<int, MatF> phi =
        push_map(rd, F, gv, target.dims, target.act, j_max);

    // express the same map into the previous free module's coordinates for
    // the certificate: generator vectors are kernel columns there
    if (step == 0) {
      cert.augmentation = phi;
    } else {
      std::vector<VecF> in_free;
      in_free.reserve(gv.size());
      for (size_t g = 0; g < gv.size(); ++g) {
        const MatF& K = prev_kernel.at(gd[g]);
        in_free.push_back(K * gv[g]);
      }
      std::vector<int> fdims(static_cast<size_t>(j_max) + 1, 0);
      std::vector<std::vector<MatF>> fact(static_cast<size_t>(n));
      for (int j = 0; j <= j_max; ++j)
        fdims[static_cast<size_t>(j)] = prev_free.dim_in(rd, j);
      for (int i = 0; i < n; ++i) {
        fact[static_cast<size_t>(i)].resize(static_cast<size_t>(j_max));
        for (int j = 0; j + 1 <= j_max; ++j) {
          // block diagonal ring action on the previous free module
          MatF A = MatF::Zero(fdims[static_cast<size_t>(j) + 1],
                              fdims[static_cast<size_t>(j)]);
          int cs = 0, rs = 0;
          for (int dgen : prev_free.gdeg) {
            int t = j - dgen;
            int rows = j + 1 >= dgen ? rd.dim_in(j + 1 - dgen) : 0;
            int cols = t >= 0 ? rd.dim_in(t) : 0;
            if (cols > 0 && rows > 0)
              A.block(rs, cs, rows, cols) = rd.R.action_matrix(i, t);
            rs += rows;
            cs += cols;
          }
          fact[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(A);
        }
      }
      std::map<int, MatF> bnd = push_map(rd, F, in_free, fdims, fact, j_max);
      // minimality: no component on a generator position of equal degree
      for (const auto& [j, B] : bnd) {
        int r = 0;
        for (int dgen : prev_free.gdeg) {
          if (j >= dgen) {
            if (dgen == j)
              for (Eigen::Index c = 0; c < B.cols(); ++c)
                if (!B(r, c).is_zero()) {
                  cert.minimal = false;
                  throw invariant_violation("boundary carries a unit entry");
                }
            r += rd.dim_in(j - dgen);
          }
        }
      }
      // squares to zero against the previous map
      const auto& up = cert.boundaries.empty() ? cert.augmentation
                                               : cert.boundaries.back();
      for (const auto& [j, B] : bnd) {
        auto it = up.find(j);
        if (it != up.end() && it->second.cols() == B.rows() && B.cols() > 0)
          if (!is_zero_mat(it->second * B))
            throw invariant_violation("resolution square is nonzero");
      }
      cert.boundaries.push_back(std::move(bnd));
    }

    if (step == i_max) {
      // exactness bookkeeping across the window
      for (int s = 1; s < static_cast<int>(cert.gens.size()); ++s) {
        const auto& here =
            s == 1 ? cert.augmentation : cert.boundaries[static_cast<size_t>(s) - 2];
        const auto& next = cert.boundaries[static_cast<size_t>(s) - 1];
        for (const auto& [j, B] : next) {
          auto it = here.find(j);
          int dimF = static_cast<int>(B.rows());
          int rk_here = it == here.end() ? 0 : linalg::rank(it->second);
          int rk_next = linalg::rank(B);
          int ker = dimF - rk_here;
          if (ker != rk_next)
            throw invariant_violation("resolution not exact inside the window");
        }
      }
      // the augmentation must hit all of M in the window
      for (const auto& [j, B] : cert.augmentation)
        if (linalg::rank(B) != mdims[static_cast<size_t>(j)])
          throw invariant_violation("augmentation misses part of the module");
      break;
    }

    // kernel of phi per degree, then its induced module structure
    std::map<int, MatF> ker;
    Dense K;
    K.dims.assign(static_cast<size_t>(j_max) + 1, 0);
    K.act.assign(static_cast<size_t>(n), {});
    std::vector<int> fdims(static_cast<size_t>(j_max) + 1, 0);
    for (int j = 0; j <= j_max; ++j) {
      fdims[static_cast<size_t>(j)] = F.dim_in(rd, j);
      MatF kb = linalg::kernel_basis(phi.at(j));
      K.dims[static_cast<size_t>(j)] = static_cast<int>(kb.cols());
      ker[j] = std::move(kb);
    }
    for (int i = 0; i < n; ++i) {
      K.act[static_cast<size_t>(i)].resize(static_cast<size_t>(j_max));
      for (int j = 0; j + 1 <= j_max; ++j) {
        MatF A = MatF::Zero(fdims[static_cast<size_t>(j) + 1],
                            fdims[static_cast<size_t>(j)]);
        int cs = 0, rs = 0;
        for (int dgen : F.gdeg) {
          int t = j - dgen;
          int rows = j + 1 >= dgen ? rd.dim_in(j + 1 - dgen) : 0;
          int cols = t >= 0 ? rd.dim_in(t) : 0;
          if (cols > 0 && rows > 0)
            A.block(rs, cs, rows, cols) = rd.R.action_matrix(i, t);
          rs += rows;
          cs += cols;
        }
        K.act[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            linalg::solve_consistent(ker.at(j + 1), A * ker.at(j));
      }
    }

    prev_free = F;
    prev_kernel = std::move(ker);
    target = std::move(K);
  }
  return {std::move(cert), std::move(T)};
}

// ---- table readings ---------------------------------------------------------------

std::vector<int> t_sequence(const BettiTable& T) {
  std::vector<int> t(static_cast<size_t>(T.i_max) + 1, -1);
  for (const auto& [key, dim] : T.entries) {
    (void)dim;
    if (key.first <= T.i_max)
      t[static_cast<size_t>(key.first)] =
          std::max(t[static_cast<size_t>(key.first)], key.second);
  }
  return t;
}

SlopeResult slope(const BettiTable& T) {
  if (T.entries.empty()) throw domain_error("slope of a zero table");
  std::vector<int> t = t_sequence(T);
  if (t[0] < 0) throw domain_error("table has no generator row");
  SlopeResult out;
  out.cutoff = T.truncated;
  bool seen = false;
  for (int i = 1; i <= T.i_max; ++i)
    if (t[static_cast<size_t>(i)] >= 0) {
      Rational s(t[static_cast<size_t>(i)] - t[0], i);
      if (!seen || out.value < s) out.value = s;
      seen = true;
    }
  out.trivial = !seen;
  return out;
}

LineCover detect_lines(const BettiTable& T, int max_lines) {
  if (max_lines < 0) throw domain_error("negative line budget");
  std::vector<std::pair<int, int>> pts;  // (i, r)
  for (const auto& [key, dim] : T.entries) {
    (void)dim;
    pts.emplace_back(key.first, key.second - key.first);
  }
  std::sort(pts.begin(), pts.end());
  LineCover out;
  if (pts.empty()) return out;

  std::set<Rational> slopes{Rational(0, 1)};
  for (size_t a = 0; a < pts.size(); ++a)
    for (size_t b = a + 1; b < pts.size(); ++b) {
      if (pts[a].first == pts[b].first) continue;
      long long dr = pts[b].second - pts[a].second;
      long long di = pts[b].first - pts[a].first;
      if ((dr >= 0) == (di >= 0)) slopes.insert(Rational(dr, di));
    }

  struct Cand {
    Rational s, c;
    std::vector<int> cover;  // indices into pts
  };
  std::vector<Cand> cands;
  std::set<std::vector<int>> seen;
  for (const Rational& s : slopes)
    for (const auto& [i0, r0] : pts) {
      // c = r0 - s*i0 with denominator s.den
      Rational c(r0 * s.den - s.num * i0, s.den);
      std::vector<int> cover;
      for (size_t k = 0; k < pts.size(); ++k) {
        auto [i, r] = pts[k];
        if (r * s.den * c.den == s.num * i * c.den + c.num * s.den)
          cover.push_back(static_cast<int>(k));
      }
      if (seen.insert(cover).second) cands.push_back({s, c, std::move(cover)});
    }

  // iterative deepening exact cover
  std::vector<int> chosen;
  std::function<bool(std::vector<char>&, int, int)> solve =
      [&](std::vector<char>& covered, int used, int budget) {
        int first = -1;
        for (size_t k = 0; k < pts.size(); ++k)
          if (!covered[k]) {
            first = static_cast<int>(k);
            break;
          }
        if (first < 0) return true;
        if (used == budget) return false;
        for (size_t ci = 0; ci < cands.size(); ++ci) {
          bool hits = false;
          for (int k : cands[ci].cover)
            if (k == first) {
              hits = true;
              break;
            }
          if (!hits) continue;
          std::vector<char> c2 = covered;
          for (int k : cands[ci].cover) c2[static_cast<size_t>(k)] = 1;
          chosen.push_back(static_cast<int>(ci));
          if (solve(c2, used + 1, budget)) return true;
          chosen.pop_back();
        }
        return false;
      };

  bool solved = false;
  for (int budget = 1; budget <= max_lines && !solved; ++budget) {
    std::vector<char> covered(pts.size(), 0);
    chosen.clear();
    solved = solve(covered, 0, budget);
  }
  if (!solved) {
    // greedy fallback, leftovers reported
    std::vector<char> covered(pts.size(), 0);
    chosen.clear();
    for (int round = 0; round < max_lines; ++round) {
      int bi = -1, bc = 0;
      for (size_t ci = 0; ci < cands.size(); ++ci) {
        int c = 0;
        for (int k : cands[ci].cover)
          if (!covered[static_cast<size_t>(k)]) ++c;
        if (c > bc) {
          bc = c;
          bi = static_cast<int>(ci);
        }
      }
      if (bi < 0) break;
      for (int k : cands[static_cast<size_t>(bi)].cover)
        covered[static_cast<size_t>(k)] = 1;
      chosen.push_back(bi);
    }
    for (size_t k = 0; k < pts.size(); ++k)
      if (!covered[k]) {
        auto [i, r] = pts[k];
        out.residual.emplace_back(i, r + i);
      }
  }
  for (int ci : chosen) {
    CoverLine L;
    L.s = cands[static_cast<size_t>(ci)].s;
    L.c = cands[static_cast<size_t>(ci)].c;
    for (int k : cands[static_cast<size_t>(ci)].cover) {
      auto [i, r] = pts[static_cast<size_t>(k)];
      L.points.emplace_back(i, r + i);
    }
    out.lines.push_back(std::move(L));
  }
  return out;
}

FlatnessReport flatness_test(const ModuleFamily& fam,
                             const std::vector<int>& n_set) {
  if (!fam.ring().truncated())
    throw domain_error("flatness is over the truncated ring");
  const int q = fam.ring().q;
  FlatnessReport rep;
  rep.flat = true;
  for (int n : n_set) {
    GradedModule M = fam.eval_full(n);
    auto gens = module_generators(M);
    long long count = 0;
    for (const auto& [d, c] : gens) {
      (void)d;
      count += c;
    }
    long long qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    long long expected = count * qn;
    bool by_dim = M.dim() == expected;

    int top = 0;
    for (const auto& [d, c] : gens) {
      (void)c;
      top = std::max(top, d);
    }
    int j_max = (q - 1) * n + top + 1;
    auto [cert, table] = minimal_resolution(M, 1, j_max);
    (void)cert;
    bool by_syzygy = true;
    for (const auto& [key, dim] : table.entries) {
      (void)dim;
      if (key.first == 1) by_syzygy = false;
    }
    if (by_dim != by_syzygy)
      throw invariant_violation("flatness criteria disagree");
    rep.rows.push_back({n, by_dim, M.dim(), expected});
    rep.flat = rep.flat && by_dim;
  }
  return rep;
}

CiAudit ci_slope_audit(const GradedModule& M, int i_pairs) {
  if (!M.ring().truncated())
    throw domain_error("the audit resolves over the truncated ring");
  if (i_pairs < 1) throw domain_error("need at least one pair");
  const int q = M.ring().q;
  const int n = M.n();
  CiAudit out;
  out.q = q;

  int t0 = 0;
  for (const auto& [d, c] : module_generators(M)) {
    (void)c;
    t0 = std::max(t0, d);
  }
  int j_max = q * i_pairs + t0 + (q - 1) * n + 2;
  auto [cert, table] = minimal_resolution(M, 2 * i_pairs, j_max);
  out.truncated = cert.truncated;
  out.t = t_sequence(table);

  bool free_mod = true;
  for (const auto& [key, dim] : table.entries) {
    (void)dim;
    if (key.first >= 1) free_mod = false;
  }
  if (free_mod) {
    if (M.complete()) {
      long long count = 0;
      for (const auto& [d, c] : table.entries) {
        (void)d;
        count += c;
      }
      long long qn = 1;
      for (int i = 0; i < n; ++i) qn *= q;
      if (M.dim() != count * qn)
        throw invariant_violation("free verdict with the wrong dimension");
    }
    out.verdict = CiAudit::Verdict::flat;
    return out;
  }

  if (!out.truncated) {
    SlopeResult s = slope(table);
    if (!s.trivial && s.value < Rational(q, 2))
      throw invariant_violation("non-free module with slope below q/2");
  }

  std::vector<long long> shifts;
  for (int i = 1; i <= i_pairs; ++i) {
    int t2i = out.t[static_cast<size_t>(2 * i)];
    if (t2i < 0) {
      out.verdict = CiAudit::Verdict::inconclusive;
      return out;
    }
    shifts.push_back(t2i - static_cast<long long>(q) * i);
  }
  long long last = shifts.back();
  int settled = static_cast<int>(shifts.size());
  while (settled > 1 && shifts[static_cast<size_t>(settled) - 2] == last) --settled;
  if (settled >= static_cast<int>(shifts.size())) {
    out.verdict = CiAudit::Verdict::inconclusive;
    return out;
  }
  out.verdict = CiAudit::Verdict::linear;
  out.shift = last;
  out.settled_from = settled;
  return out;
}

void check_stable_agreement(const BettiTable& a, const BettiTable& b) {
  if (!(a.ring == b.ring))
    throw invariant_violation("tables over different rings compared");
  int jcap = std::min({a.n, b.n, a.j_max, b.j_max});
  int icap = std::min(a.i_max, b.i_max);
  for (int i = 0; i <= icap; ++i)
    for (int j = 0; j <= jcap; ++j)
      if ((a.at(i, j) != 0) != (b.at(i, j) != 0))
        throw invariant_violation("stable betti support disagrees across n");
}

BettiSweep betti_of_family(const ModuleFamily& fam, const std::vector<int>& n_set,
                           int i_max, int j_max) {
  BettiSweep out;
  for (int n : n_set) {
    GradedModule M = fam.eval(n, j_max);
    BettiTable T = fam.ring().truncated()
                       ? minimal_resolution(M, i_max, j_max).second
                       : koszul_tor(M, i_max, j_max);
    out.tables.emplace(n, std::move(T));
  }
  for (auto a = out.tables.begin(); a != out.tables.end(); ++a)
    for (auto b = std::next(a); b != out.tables.end(); ++b)
      check_stable_agreement(a->second, b->second);
  return out;
}

}  // namespace glfrob
