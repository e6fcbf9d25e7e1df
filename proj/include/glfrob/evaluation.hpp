#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "glfrob/combinatorics.hpp"
#include "glfrob/fp.hpp"
#include "glfrob/glideal.hpp"

namespace glfrob {

// Coefficient ring of an evaluated module: the polynomial ring k[x_1..x_n]
// when q == 0, otherwise its truncation by the q-th powers of the variables
// (q a power of p, q >= p).
struct RingSpec {
  PrimeContext ctx;
  int q;

  RingSpec(const PrimeContext& c, int q_);
  bool truncated() const { return q != 0; }
  bool operator==(const RingSpec& o) const { return ctx.p == o.ctx.p && q == o.q; }
};

// One basis vector: torus weight over the module's n variables, a component
// id into the owning module's comp table, and the degree.  Degree is |w| plus
// a per-component offset, so it is stored rather than recomputed.
struct BasisElt {
  std::vector<int> w;
  int comp = 0;
  int deg = 0;
};

// Component tag.  gen/copy identify a generator instance; mu is that
// instance's weight placement over the full internal coordinate list
// (module variables first, then any sliced-away coordinates).  Tags match
// across evaluations by content, never by table position.
struct CompDef {
  int gen = 0;
  int copy = 0;
  int off = 0;  // degree of each basis vector in the component is |w| + off
  std::vector<int> mu;

  bool operator<(const CompDef& o) const;
  bool operator==(const CompDef&) const = default;
};

// Weight-graded module over RingSpec at a fixed variable count.  Basis
// vectors are monomial-type: the action of x_i sends a basis vector to the
// basis vector with weight w + e_i and the same component, or to zero when
// no such vector is present.  Construction sorts the basis, builds the
// action tables and verifies the module axioms (pairwise commutativity,
// degree/weight shifts, q-th power vanishing).
class GradedModule {
 public:
  GradedModule(RingSpec ring, int n, int n_internal,
               std::vector<BasisElt> basis, std::vector<CompDef> comps,
               bool complete, int dcut);

  const RingSpec& ring() const { return ring_; }
  int n() const { return n_; }
  int n_internal() const { return n_internal_; }
  long long dim() const { return static_cast<long long>(basis_.size()); }
  bool complete() const { return complete_; }
  int dcut() const { return dcut_; }

  const std::vector<BasisElt>& basis() const { return basis_; }
  const std::vector<CompDef>& comps() const { return comps_; }

  // Index of (w, comp) or -1.  w may carry trailing zeros beyond n().
  int lookup(const std::vector<int>& w, int comp) const;

  // Action of x_i on basis vector b: target index or -1.
  int act(int i, int b) const { return act_[static_cast<size_t>(i)][static_cast<size_t>(b)]; }

  // Largest degree with a basis vector; -1 for the zero module.  Requires a
  // complete materialization, otherwise the answer could be a cutoff artifact.
  int top_degree() const;

  int dim_in_degree(int d) const;
  std::vector<int> degrees() const;  // sorted distinct degrees present

  // Dense matrix of x_i from degree d to d+1 (rows index degree-(d+1) basis).
  MatF action_matrix(int i, int d) const;

  // Basis index range [lo, hi) of degree d.
  std::pair<int, int> degree_range(int d) const;

  // Dimension of the weight-w piece (over the first n coordinates).
  int weight_dim(const std::vector<int>& w) const;

  std::string json_dump() const;

 private:
  RingSpec ring_;
  int n_;
  int n_internal_;
  std::vector<BasisElt> basis_;
  std::vector<CompDef> comps_;
  std::vector<std::vector<int>> act_;
  std::vector<std::pair<int, int>> ranges_;  // per degree 0..top
  bool complete_;
  int dcut_;

  void validate() const;
};

int maxdeg(const GradedModule& M);

// Degrees (with multiplicity) of a minimal generating set: basis vectors not
// reached by any variable action.
std::map<int, int> module_generators(const GradedModule& M);

// The evaluated truncation k[x_1..x_n]/m^[q] as a ring datum.
struct FrobeniusQuotientRing {
  RingSpec ring;
  int n;

  FrobeniusQuotientRing(const RingSpec& r, int n_);
  long long total_dim() const;  // q^n
  int top_degree() const { return (ring.q - 1) * n; }
};

// ---- module families ---------------------------------------------------------

// Node tree describing how a family was built.  Families are immutable and
// evaluation is pure; evaluations at different n recompute from the tree.
struct FamilyNode;
using NodePtr = std::shared_ptr<const FamilyNode>;

struct GenSpec {
  int degree = 0;
  Partition orbit;       // empty + multiplicity k: k abstract copies, weight 0
  int multiplicity = 1;
};

class ModuleFamily {
 public:
  ModuleFamily(RingSpec ring, NodePtr node);

  const RingSpec& ring() const { return ring_; }
  const NodePtr& node() const { return node_; }
  std::string descriptor() const;

  // Materialize at n with degrees <= d_max.
  GradedModule eval(int n, int d_max) const;

  // Complete materialization; cutoff_error for families over the full
  // polynomial ring, whose evaluations are unbounded.
  GradedModule eval_full(int n) const;

  // Upper bound on degrees of eval(n); -1 when unbounded (q == 0).
  long long top_bound(int n) const;

 private:
  RingSpec ring_;
  NodePtr node_;
};

// The weight-t slice of eval(n + |tail|) where coordinate n+k is pinned to
// weight tail[k], regraded by the weight on the first n coordinates.  The
// evaluation engine of the shift functors; exposed for tests and experiments.
GradedModule eval_with_tail(const ModuleFamily& fam, int n,
                            const std::vector<int>& tail, int d_max);

ModuleFamily free_family(const RingSpec& ring, std::vector<GenSpec> gens);
ModuleFamily quotient_family(const RingSpec& ring, const GLIdeal& I);
ModuleFamily ideal_family(const RingSpec& ring, const GLIdeal& I,
                          const GLIdeal& J);
ModuleFamily ideal_family(const RingSpec& ring, const GLIdeal& I);
ModuleFamily direct_sum(const ModuleFamily& a, const ModuleFamily& b);
ModuleFamily twist(const ModuleFamily& fam, int d);

// Generator slots of the presentation.  Direct sums concatenate, so the
// second summand's components sit at this offset of the first.
int family_gen_count(const ModuleFamily& fam);

// Submodule generated below degree d, and the quotient by it.
std::pair<ModuleFamily, ModuleFamily> truncate_below(const ModuleFamily& fam,
                                                     int d);

// Weight-m slice in one adjoined last coordinate, degrees renormalized
// down by m.  Declared here because it is a family constructor; the schur
// module builds on it.
ModuleFamily shift_slice(const ModuleFamily& fam, int m);

// Cokernel / kernel families of the natural map into the q/p-shift.
// Require a truncated ring (q >= p).
ModuleFamily delta_family(const ModuleFamily& fam);
ModuleFamily kq_family(const ModuleFamily& fam);

// ---- maps between evaluations --------------------------------------------------

// A degree-preserving map sending each source basis vector to a target basis
// vector with coefficient 1, or to zero.  Every structural map in scope
// (inclusions, natural maps, connecting maps) has this shape.
struct UnitMap {
  GradedModule src, dst;
  std::vector<int> to;  // index into dst.basis() or -1

  bool injective() const;
  long long rank() const;
};

// Matches (weight, component) content.  Weights and the module block of each
// placement are padded with zeros up to the target's coordinate counts; the
// sliced-coordinate block keeps its order and may grow by zero slots.
// gen_offset is added to source generator ids before matching (direct-sum
// injections and projections pick components with it).
UnitMap make_unit_map(GradedModule src, GradedModule dst, int gen_offset = 0);

// eval(n) -> eval(n+1); asserts injectivity and the weight-support
// characterization of the image.
UnitMap family_incl(const ModuleFamily& fam, int n, int d_max);

// Multiplication by the degree-(q/p) power of one fresh variable:
// eval(n) -> slice of eval(n+1) at weight q/p, as a UnitMap.
UnitMap natural_unit_map(const ModuleFamily& fam, int n);

// ---- module measurements --------------------------------------------------------

// Everything killed by enough fresh-variable (q/p)-th powers: the increasing
// kernel chain of iterated natural maps, stopped when stable.  Returns the
// torsion part as a submodule of eval_full(n).
GradedModule torsion_submodule(const ModuleFamily& fam, int n, int q);

// Degrees (with multiplicity) of a minimal generating set of eval(n),
// i.e. degrees of M/(m M).  d_max must be supplied for q == 0 families.
std::map<int, int> generation_degrees(const ModuleFamily& fam, int n,
                                      int d_max = -1);

std::vector<long long> graded_dims(const GradedModule& M);

}  // namespace glfrob
