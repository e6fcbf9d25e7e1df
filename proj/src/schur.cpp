#include "glfrob/schur.hpp"

#include <algorithm>

#include "json.hpp"

#include "glfrob/errors.hpp"
#include "glfrob/linalg.hpp"

namespace glfrob {

namespace {

int step_of(const RingSpec& ring, int q) {
  if (!ring.truncated())
    throw domain_error("shift functors need a truncated ring");
  if (ring.q != q)
    throw domain_error("shift needs the family's own truncation exponent");
  return q / static_cast<int>(ring.ctx.p);
}

int bound_or(const ModuleFamily& fam, int n, int d_max) {
  if (d_max >= 0) return d_max;
  long long b = fam.top_bound(n);
  if (b < 0)
    throw cutoff_error("unbounded family needs an explicit degree cutoff");
  return static_cast<int>(b);
}

void pad_pair(std::vector<long long>& a, std::vector<long long>& b) {
  const size_t len = std::max(a.size(), b.size());
  a.resize(len, 0);
  b.resize(len, 0);
}

std::vector<int> zero_columns(const UnitMap& um) {
  std::vector<int> out;
  for (int b = 0; b < um.src.dim(); ++b)
    if (um.to[static_cast<size_t>(b)] < 0) out.push_back(b);
  return out;
}

std::vector<int> missed_rows(const UnitMap& um) {
  std::vector<char> hit(static_cast<size_t>(um.dst.dim()), 0);
  for (int t : um.to)
    if (t >= 0) hit[static_cast<size_t>(t)] = 1;
  std::vector<int> out;
  for (int b = 0; b < um.dst.dim(); ++b)
    if (!hit[static_cast<size_t>(b)]) out.push_back(b);
  return out;
}

std::vector<int> positions(const std::vector<int>& picked, long long dim) {
  std::vector<int> pos(static_cast<size_t>(dim), -1);
  for (size_t k = 0; k < picked.size(); ++k)
    pos[static_cast<size_t>(picked[k])] = static_cast<int>(k);
  return pos;
}

// im(f) == ker(g) on basis vectors, f injective, g a collision-free
// surjection.  Triples fed to the six-term check are built from inclusions
// and projections, so failures here mean the input was not exact.
template <class Err>
void check_exact_row(const UnitMap& f, const UnitMap& g, const char* what) {
  if (!f.injective()) throw Err(std::string(what) + ": subobject map fails to embed");
  std::vector<char> im(static_cast<size_t>(f.dst.dim()), 0);
  for (int t : f.to) im[static_cast<size_t>(t)] = 1;
  std::vector<char> hit(static_cast<size_t>(g.dst.dim()), 0);
  for (int b = 0; b < g.src.dim(); ++b) {
    int t = g.to[static_cast<size_t>(b)];
    if (t < 0) {
      if (!im[static_cast<size_t>(b)])
        throw Err(std::string(what) + ": kernel exceeds the subobject");
      continue;
    }
    if (im[static_cast<size_t>(b)])
      throw Err(std::string(what) + ": subobject survives the projection");
    if (hit[static_cast<size_t>(t)])
      throw Err(std::string(what) + ": projection collides");
    hit[static_cast<size_t>(t)] = 1;
  }
  for (char h : hit)
    if (!h) throw Err(std::string(what) + ": projection misses a vector");
}

void check_square(const UnitMap& bottom, const UnitMap& top, const UnitMap& left,
                  const UnitMap& right) {
  for (int b = 0; b < bottom.src.dim(); ++b) {
    int t = bottom.to[static_cast<size_t>(b)];
    int via_right = t < 0 ? -1 : right.to[static_cast<size_t>(t)];
    int u = left.to[static_cast<size_t>(b)];
    int via_top = u < 0 ? -1 : top.to[static_cast<size_t>(u)];
    if (via_right != via_top)
      throw invariant_violation("natural map square fails to commute");
  }
}

bool product_is_zero(const MatF& A, const MatF& B) {
  if (A.cols() != B.rows()) throw invariant_violation("map chain size mismatch");
  if (A.rows() == 0 || B.cols() == 0 || A.cols() == 0) return true;
  MatF C = A * B;
  for (Eigen::Index r = 0; r < C.rows(); ++r)
    for (Eigen::Index c = 0; c < C.cols(); ++c)
      if (!C(r, c).is_zero()) return false;
  return true;
}

}  // namespace

// ---- slice functors --------------------------------------------------------------

ModuleFamily hasse_schur(const ModuleFamily& fam, int m) {
  return shift_slice(fam, m);
}

ModuleFamily sm_shift(const ModuleFamily& fam, int q) {
  return shift_slice(fam, step_of(fam.ring(), q));
}

void validate(const ShiftDescriptor& sd, const PrimeContext& ctx) {
  switch (sd.mode) {
    case ShiftDescriptor::Mode::generic_slice:
      if (sd.m < 0) throw domain_error("negative slice weight");
      return;
    case ShiftDescriptor::Mode::sm_shift: {
      const int p = static_cast<int>(ctx.p);
      int r = sd.q;
      if (r < p) throw domain_error("shift exponent must be p^r with r >= 1");
      while (r % p == 0) r /= p;
      if (r != 1) throw domain_error("shift exponent must be p^r with r >= 1");
      if (sd.m != sd.q / p)
        throw domain_error("the truncation shift slices at weight q/p");
      return;
    }
    case ShiftDescriptor::Mode::block_shift:
      if (sd.a < 0) throw domain_error("negative block size");
      return;
  }
  throw invariant_violation("unreachable shift mode");
}

ModuleFamily apply_shift(const ShiftDescriptor& sd, const ModuleFamily& fam) {
  validate(sd, fam.ring().ctx);
  switch (sd.mode) {
    case ShiftDescriptor::Mode::generic_slice:
      return hasse_schur(fam, sd.m);
    case ShiftDescriptor::Mode::sm_shift:
      return sm_shift(fam, sd.q);
    case ShiftDescriptor::Mode::block_shift:
      break;
  }
  throw domain_error("block shift is a decomposition report, not a family");
}

// ---- product rule ---------------------------------------------------------------

LeibnizReport leibniz_check(const ModuleFamily& F, const ModuleFamily& G, int m,
                            int n, int d_max) {
  if (m < 0) throw domain_error("negative slice weight");
  if (n < 0) throw domain_error("negative variable count");
  if (!(F.ring() == G.ring())) throw domain_error("product rule needs one ring");
  int dr = d_max;
  if (dr < 0) {
    long long bf = F.top_bound(n + 1), bg = G.top_bound(n + 1);
    if (bf < 0 || bg < 0)
      throw cutoff_error("unbounded family needs an explicit degree cutoff");
    dr = static_cast<int>(bf + bg);
  }

  // raw (last weight, renormalized degree) counts of the n+1 evaluations;
  // no slice machinery on this side
  auto raw = [&](const ModuleFamily& X) {
    GradedModule M = X.eval(n + 1, dr + m);
    std::vector<std::vector<long long>> t(
        static_cast<size_t>(m + 1),
        std::vector<long long>(static_cast<size_t>(dr + 1), 0));
    for (const BasisElt& e : M.basis()) {
      int lw = e.w[static_cast<size_t>(n)];
      if (lw > m) continue;
      int d = e.deg - lw;
      if (d <= dr) ++t[static_cast<size_t>(lw)][static_cast<size_t>(d)];
    }
    return t;
  };
  const auto tf = raw(F), tg = raw(G);

  LeibnizReport rep;
  rep.m = m;
  rep.n = n;
  rep.d_max = dr;
  rep.product_slice.assign(static_cast<size_t>(dr + 1), 0);
  rep.leibniz_sum.assign(static_cast<size_t>(dr + 1), 0);
  for (int i = 0; i <= m; ++i)
    for (int e = 0; e <= dr; ++e) {
      if (tf[static_cast<size_t>(i)][static_cast<size_t>(e)] == 0) continue;
      for (int d = e; d <= dr; ++d)
        rep.product_slice[static_cast<size_t>(d)] +=
            tf[static_cast<size_t>(i)][static_cast<size_t>(e)] *
            tg[static_cast<size_t>(m - i)][static_cast<size_t>(d - e)];
    }
  for (int i = 0; i <= m; ++i) {
    std::vector<long long> a = graded_dims(hasse_schur(F, i).eval(n, dr));
    std::vector<long long> b = graded_dims(hasse_schur(G, m - i).eval(n, dr));
    for (size_t e = 0; e < a.size(); ++e) {
      if (a[e] == 0) continue;
      for (size_t d = 0; d < b.size() && e + d <= static_cast<size_t>(dr); ++d)
        rep.leibniz_sum[e + d] += a[e] * b[d];
    }
  }
  if (rep.product_slice != rep.leibniz_sum)
    throw invariant_violation("product rule dimensions disagree");
  return rep;
}

// ---- natural map and difference functors ------------------------------------------

NaturalMapData natural_map(const ModuleFamily& fam, int q, int n) {
  step_of(fam.ring(), q);
  NaturalMapData out{natural_unit_map(fam, n), {}, {}, 0, false};
  out.kernel = zero_columns(out.map);
  out.cokernel = missed_rows(out.map);
  out.injective = out.kernel.empty();
  GradedModule tor = torsion_submodule(fam, n, q);
  out.torsion_dim = tor.dim();
  for (int b : out.kernel) {
    const BasisElt& e = out.map.src.basis()[static_cast<size_t>(b)];
    if (tor.lookup(e.w, e.comp) < 0)
      throw invariant_violation("natural map kernel escapes the torsion submodule");
  }
  if (out.injective != (out.torsion_dim == 0))
    throw invariant_violation("injectivity disagrees with torsion vanishing");
  return out;
}

ModuleFamily delta(const ModuleFamily& fam, int q) {
  step_of(fam.ring(), q);
  return delta_family(fam);
}

ModuleFamily kq(const ModuleFamily& fam, int q) {
  step_of(fam.ring(), q);
  return kq_family(fam);
}

// ---- short exact triples ----------------------------------------------------------

FamilyTriple ses_from_ideals(const RingSpec& ring, const GLIdeal& I,
                             const GLIdeal& J) {
  return FamilyTriple{ideal_family(ring, I, J), quotient_family(ring, J),
                      quotient_family(ring, I), 0, 0};
}

FamilyTriple ses_split(const ModuleFamily& a, const ModuleFamily& b) {
  return FamilyTriple{a, direct_sum(a, b), b, 0, -family_gen_count(a)};
}

SixTermReport six_term_check(const FamilyTriple& T, int q, int n) {
  if (!(T.sub.ring() == T.mid.ring()) || !(T.mid.ring() == T.quot.ring()))
    throw domain_error("triple rings disagree");
  const int step = step_of(T.mid.ring(), q);
  const uint32_t p = T.mid.ring().ctx.p;
  const int D = static_cast<int>(std::max(
      {T.sub.top_bound(n), T.mid.top_bound(n), T.quot.top_bound(n)}));

  GradedModule L = T.sub.eval(n, D);
  GradedModule M = T.mid.eval(n, D);
  GradedModule N = T.quot.eval(n, D);
  GradedModule SL = eval_with_tail(T.sub, n, {step}, D);
  GradedModule SM = eval_with_tail(T.mid, n, {step}, D);
  GradedModule SN = eval_with_tail(T.quot, n, {step}, D);

  UnitMap f = make_unit_map(L, M, T.off_sub);
  UnitMap g = make_unit_map(M, N, T.off_quot);
  UnitMap sf = make_unit_map(SL, SM, T.off_sub);
  UnitMap sg = make_unit_map(SM, SN, T.off_quot);
  UnitMap iL = make_unit_map(std::move(L), std::move(SL));
  UnitMap iM = make_unit_map(std::move(M), std::move(SM));
  UnitMap iN = make_unit_map(std::move(N), std::move(SN));

  check_exact_row<domain_error>(f, g, "input triple");
  // slicing is exact, so the sliced row must stay a short exact sequence
  check_exact_row<invariant_violation>(sf, sg, "sliced triple");
  check_square(f, sf, iL, iM);
  check_square(g, sg, iM, iN);

  const std::vector<int> kL = zero_columns(iL), kM = zero_columns(iM),
                         kN = zero_columns(iN);
  const std::vector<int> dL = missed_rows(iL), dM = missed_rows(iM),
                         dN = missed_rows(iN);
  const std::vector<int> posKM = positions(kM, iM.src.dim());
  const std::vector<int> posKN = positions(kN, iN.src.dim());
  const std::vector<int> posDL = positions(dL, iL.dst.dim());
  const std::vector<int> posDM = positions(dM, iM.dst.dim());
  const std::vector<int> posDN = positions(dN, iN.dst.dim());

  const Fp one(1, p);
  MatF D1 = MatF::Zero(static_cast<Eigen::Index>(kM.size()),
                       static_cast<Eigen::Index>(kL.size()));
  for (size_t c = 0; c < kL.size(); ++c) {
    int t = f.to[static_cast<size_t>(kL[c])];
    int r = posKM[static_cast<size_t>(t)];
    if (r < 0)
      throw invariant_violation("subobject map leaves the kernel functor");
    D1(r, static_cast<Eigen::Index>(c)) = one;
  }
  MatF D2 = MatF::Zero(static_cast<Eigen::Index>(kN.size()),
                       static_cast<Eigen::Index>(kM.size()));
  for (size_t c = 0; c < kM.size(); ++c) {
    int t = g.to[static_cast<size_t>(kM[c])];
    if (t < 0) continue;
    int r = posKN[static_cast<size_t>(t)];
    if (r < 0)
      throw invariant_violation("projection leaves the kernel functor");
    D2(r, static_cast<Eigen::Index>(c)) = one;
  }

  // connecting map: lift along the projection, push through the natural
  // map, pull back along the sliced inclusion, read off the cokernel class
  std::vector<int> ginv(static_cast<size_t>(g.dst.dim()), -1);
  for (int b = 0; b < g.src.dim(); ++b)
    if (g.to[static_cast<size_t>(b)] >= 0)
      ginv[static_cast<size_t>(g.to[static_cast<size_t>(b)])] = b;
  std::vector<int> sfinv(static_cast<size_t>(sf.dst.dim()), -1);
  for (int b = 0; b < sf.src.dim(); ++b)
    if (sf.to[static_cast<size_t>(b)] >= 0)
      sfinv[static_cast<size_t>(sf.to[static_cast<size_t>(b)])] = b;
  std::vector<char> imIL(static_cast<size_t>(iL.dst.dim()), 0);
  for (int t : iL.to)
    if (t >= 0) imIL[static_cast<size_t>(t)] = 1;
  std::vector<char> imIM(static_cast<size_t>(iM.dst.dim()), 0);
  for (int t : iM.to)
    if (t >= 0) imIM[static_cast<size_t>(t)] = 1;
  std::vector<char> imIN(static_cast<size_t>(iN.dst.dim()), 0);
  for (int t : iN.to)
    if (t >= 0) imIN[static_cast<size_t>(t)] = 1;

  MatF D3 = MatF::Zero(static_cast<Eigen::Index>(dL.size()),
                       static_cast<Eigen::Index>(kN.size()));
  for (size_t c = 0; c < kN.size(); ++c) {
    int lift = ginv[static_cast<size_t>(kN[c])];
    int up = iM.to[static_cast<size_t>(lift)];
    if (up < 0) continue;
    int l = sfinv[static_cast<size_t>(up)];
    if (l < 0)
      throw invariant_violation("connecting lift misses the subobject slice");
    if (imIL[static_cast<size_t>(l)]) continue;
    D3(posDL[static_cast<size_t>(l)], static_cast<Eigen::Index>(c)) = one;
  }
  MatF D4 = MatF::Zero(static_cast<Eigen::Index>(dM.size()),
                       static_cast<Eigen::Index>(dL.size()));
  for (size_t c = 0; c < dL.size(); ++c) {
    int v = sf.to[static_cast<size_t>(dL[c])];
    if (imIM[static_cast<size_t>(v)]) continue;
    D4(posDM[static_cast<size_t>(v)], static_cast<Eigen::Index>(c)) = one;
  }
  MatF D5 = MatF::Zero(static_cast<Eigen::Index>(dN.size()),
                       static_cast<Eigen::Index>(dM.size()));
  for (size_t c = 0; c < dM.size(); ++c) {
    int t = sg.to[static_cast<size_t>(dM[c])];
    if (t < 0 || imIN[static_cast<size_t>(t)]) continue;
    D5(posDN[static_cast<size_t>(t)], static_cast<Eigen::Index>(c)) = one;
  }

  if (!product_is_zero(D2, D1) || !product_is_zero(D3, D2) ||
      !product_is_zero(D4, D3) || !product_is_zero(D5, D4))
    throw invariant_violation("consecutive maps fail to compose to zero");

  SixTermReport rep;
  rep.n = n;
  rep.dims = {static_cast<long long>(kL.size()), static_cast<long long>(kM.size()),
              static_cast<long long>(kN.size()), static_cast<long long>(dL.size()),
              static_cast<long long>(dM.size()), static_cast<long long>(dN.size())};
  rep.ranks = {linalg::rank(D1), linalg::rank(D2), linalg::rank(D3),
               linalg::rank(D4), linalg::rank(D5)};
  const auto& dm = rep.dims;
  const auto& rk = rep.ranks;
  bool exact = rk[0] == dm[0] && rk[0] + rk[1] == dm[1] && rk[1] + rk[2] == dm[2] &&
               rk[2] + rk[3] == dm[3] && rk[3] + rk[4] == dm[4] && rk[4] == dm[5];
  if (!exact) throw invariant_violation("six term sequence fails to be exact");

  rep.quot_torsion_free = torsion_submodule(T.quot, n, q).dim() == 0;
  if (rep.quot_torsion_free) {
    if (!kN.empty())
      throw invariant_violation("torsion free quotient with a nonzero kernel functor");
    if (rk[3] != dm[3])
      throw invariant_violation("difference row fails to stay short exact");
    rep.delta_three_term = true;
  }
  return rep;
}

// ---- functor interchange ------------------------------------------------------------

CommuteReport shift_commute_check(const ModuleFamily& fam, int q, int n) {
  step_of(fam.ring(), q);
  CommuteReport rep;
  rep.n = n;
  rep.shift_of_delta = graded_dims(sm_shift(delta_family(fam), q).eval_full(n));
  rep.delta_of_shift = graded_dims(delta_family(sm_shift(fam, q)).eval_full(n));
  pad_pair(rep.shift_of_delta, rep.delta_of_shift);
  if (rep.shift_of_delta != rep.delta_of_shift)
    throw invariant_violation("shift and difference functors fail to commute");
  return rep;
}

// ---- iterated shift experiment --------------------------------------------------------

ShiftExperiment shift_until_flat(const ModuleFamily& fam, int q, int l_max,
                                 const std::vector<int>& n_set) {
  step_of(fam.ring(), q);
  if (l_max < 0) throw domain_error("negative step budget");
  if (n_set.empty()) throw domain_error("empty evaluation set");
  for (int nn : n_set)
    if (nn < 1) throw domain_error("evaluation needs at least one variable");

  ShiftExperiment ex;
  ex.q = q;
  ex.n_set = n_set;
  const int n_ref = *std::max_element(n_set.begin(), n_set.end());

  ModuleFamily cur = fam;
  for (int l = 0; l <= l_max; ++l) {
    ShiftStep st;
    st.l = l;
    GradedModule M = cur.eval_full(n_ref);
    if (M.dim() == 0) {
      st.zero = true;
      st.slope.trivial = true;
    } else {
      std::map<int, int> gens = module_generators(M);
      const int top = gens.rbegin()->first;
      auto [cert, table] = minimal_resolution(M, 1, (q - 1) * n_ref + top + 1);
      (void)cert;
      std::vector<int> ts = t_sequence(table);
      st.t0 = ts.empty() ? -1 : ts[0];
      st.t1 = ts.size() > 1 ? ts[1] : -1;
      st.slope = slope(table);
    }
    st.torsion_free = true;
    for (int nn : n_set)
      if (torsion_submodule(cur, nn, q).dim() > 0) {
        st.torsion_free = false;
        break;
      }
    if (st.torsion_free && ex.l_torsion_free < 0) ex.l_torsion_free = l;
    FlatnessReport fr = flatness_test(cur, n_set);
    for (const auto& row : fr.rows) st.flat.emplace_back(row.n, row.flat);
    st.flat_all = fr.flat;
    ex.steps.push_back(std::move(st));
    if (fr.flat) {
      ex.l_flat = l;
      break;
    }
    if (l < l_max) cur = sm_shift(cur, q);
  }
  ex.inconclusive = ex.l_flat < 0;
  return ex;
}

std::string ShiftExperiment::json_dump() const {
  nlohmann::ordered_json j;
  j["q"] = q;
  j["n_set"] = n_set;
  j["steps"] = nlohmann::ordered_json::array();
  for (const ShiftStep& st : steps) {
    nlohmann::ordered_json s;
    s["l"] = st.l;
    s["zero"] = st.zero;
    if (st.t0 >= 0) s["t0"] = st.t0; else s["t0"] = nullptr;
    if (st.t1 >= 0) s["t1"] = st.t1; else s["t1"] = nullptr;
    if (st.zero || st.slope.trivial) s["slope"] = nullptr;
    else s["slope"] = st.slope.value.str();
    s["torsion_free"] = st.torsion_free;
    auto fl = nlohmann::ordered_json::array();
    for (const auto& [nn, ok] : st.flat)
      fl.push_back(nlohmann::ordered_json{{"n", nn}, {"flat", ok}});
    s["flat"] = std::move(fl);
    s["flat_all"] = st.flat_all;
    j["steps"].push_back(std::move(s));
  }
  if (l_flat >= 0) j["l_flat"] = l_flat; else j["l_flat"] = nullptr;
  if (l_torsion_free >= 0) j["l_torsion_free"] = l_torsion_free;
  else j["l_torsion_free"] = nullptr;
  j["inconclusive"] = inconclusive;
  return j.dump();
}

// ---- block decomposition ----------------------------------------------------------------

BlockShiftReport block_shift(const ModuleFamily& fam, int a, int n, int d_max) {
  if (a < 0) throw domain_error("negative block size");
  if (n < 0) throw domain_error("negative variable count");
  const int D = bound_or(fam, a + n, d_max);
  GradedModule M = fam.eval(a + n, D);

  BlockShiftReport rep;
  rep.a = a;
  rep.n = n;
  rep.d_max = D;
  for (const BasisElt& e : M.basis()) {
    int j = 0;
    for (int i = 0; i < a; ++i) j += e.w[static_cast<size_t>(i)];
    const int d = e.deg - j;
    auto& v = rep.pieces[j];
    if (static_cast<int>(v.size()) <= d) v.resize(static_cast<size_t>(d) + 1, 0);
    ++v[static_cast<size_t>(d)];
  }
  std::vector<long long> lead =
      rep.pieces.count(0) ? rep.pieces.at(0) : std::vector<long long>{};
  std::vector<long long> base = graded_dims(fam.eval(n, D));
  pad_pair(lead, base);
  if (lead != base)
    throw invariant_violation("leading block fails to reproduce the family");
  return rep;
}

}  // namespace glfrob
