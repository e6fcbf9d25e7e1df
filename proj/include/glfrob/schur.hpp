#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "glfrob/evaluation.hpp"
#include "glfrob/homology.hpp"

namespace glfrob {

// ---- slice functors -------------------------------------------------------------

// Sh_m: the weight-m slice in one adjoined last coordinate, degrees
// renormalized down by m.  Sh_0 is the identity up to graded dimensions.
ModuleFamily hasse_schur(const ModuleFamily& fam, int m);

// The q-shift on modules over the truncated ring: Sh_{q/p}.  Checks that q
// is the family's own truncation exponent.
ModuleFamily sm_shift(const ModuleFamily& fam, int q);

struct ShiftDescriptor {
  enum class Mode { generic_slice, sm_shift, block_shift };
  Mode mode = Mode::generic_slice;
  int m = 0;  // slice weight; q/p in sm_shift mode
  int q = 0;  // truncation exponent, sm_shift mode only
  int a = 0;  // leading block size, block_shift mode only
};

// domain_error unless the descriptor is internally consistent over p.
void validate(const ShiftDescriptor& sd, const PrimeContext& ctx);

// The family functor named by sd; block_shift has no family form and is
// rejected (use block_shift() below).
ModuleFamily apply_shift(const ShiftDescriptor& sd, const ModuleFamily& fam);

// ---- product rule ---------------------------------------------------------------

// Per-degree dimension identity for the weight-m slice of F (x) G.  The
// product side is convolved from raw weight counts of the (n+1)-variable
// evaluations, the sum side from engine slices Sh_i(F), Sh_{m-i}(G); equality
// is asserted.  d_max bounds the renormalized degree and may be omitted for
// families with a finite evaluation bound.
struct LeibnizReport {
  int m = 0, n = 0, d_max = 0;
  std::vector<long long> product_slice;  // dim Sh_m(F (x) G) per degree
  std::vector<long long> leibniz_sum;    // sum_{i} dim Sh_i(F) conv Sh_{m-i}(G)
};
LeibnizReport leibniz_check(const ModuleFamily& F, const ModuleFamily& G, int m,
                            int n, int d_max = -1);

// ---- natural map and difference functors ------------------------------------------

// Multiplication by the (q/p)-th power of the adjoined variable,
// eval(n) -> sm_shift(fam).eval(n).  The slice grading absorbs the q/p
// degree shift, so the stored map is degree preserving.  Checked here:
// the kernel is spanned by torsion basis vectors, and the map is injective
// exactly when the torsion submodule vanishes.
struct NaturalMapData {
  UnitMap map;
  std::vector<int> kernel;    // source basis indices sent to zero
  std::vector<int> cokernel;  // target basis indices missed by the image
  long long torsion_dim = 0;
  bool injective = false;
};
NaturalMapData natural_map(const ModuleFamily& fam, int q, int n);

// Cokernel and kernel families of the natural map.  Evaluation asserts the
// generation-degree drop of the cokernel (every generator in degree
// <= t0 - 1).
ModuleFamily delta(const ModuleFamily& fam, int q);
ModuleFamily kq(const ModuleFamily& fam, int q);

// ---- short exact triples ----------------------------------------------------------

// sub -> mid -> quot with both maps realized at each evaluation by content
// matching after shifting generator ids; exactness is verified before use.
struct FamilyTriple {
  ModuleFamily sub, mid, quot;
  int off_sub = 0;   // generator shift of the map sub -> mid
  int off_quot = 0;  // generator shift of the map mid -> quot
};

// 0 -> I/J -> S/J -> S/I -> 0 for J contained in I.
FamilyTriple ses_from_ideals(const RingSpec& ring, const GLIdeal& I,
                             const GLIdeal& J);

// 0 -> a -> a (+) b -> b -> 0.
FamilyTriple ses_split(const ModuleFamily& a, const ModuleFamily& b);

// Exactness of 0 -> K(sub) -> K(mid) -> K(quot) -> D(sub) -> D(mid) ->
// D(quot) -> 0 at one evaluation, by composite-vanishing and rank
// bookkeeping; the connecting map is built from basis lifts.  When quot is
// torsion free, additionally asserts K(quot) = 0 and the short exactness of
// the D row.  Non-exact input triples are rejected with domain_error;
// bookkeeping failures are invariant violations.
struct SixTermReport {
  int n = 0;
  std::array<long long, 6> dims{};   // K(sub) K(mid) K(quot) D(sub) D(mid) D(quot)
  std::array<long long, 5> ranks{};  // the five interior maps
  bool quot_torsion_free = false;
  bool delta_three_term = false;
};
SixTermReport six_term_check(const FamilyTriple& T, int q, int n);

// ---- functor interchange ------------------------------------------------------------

// Graded dimensions of sm_shift(delta(fam)) and delta(sm_shift(fam)) at n;
// mismatch is an invariant violation.
struct CommuteReport {
  int n = 0;
  std::vector<long long> shift_of_delta, delta_of_shift;
};
CommuteReport shift_commute_check(const ModuleFamily& fam, int q, int n);

// ---- iterated shift experiment --------------------------------------------------------

// Applies sm_shift until the result passes flatness_test at every n in
// n_set, recording per step the generation degree t0, first syzygy degree
// t1, slope (all at the largest n), torsion vanishing, and the per-n flat
// verdicts.  Exhaustion of l_max is reported as inconclusive, never as a
// refutation.
struct ShiftStep {
  int l = 0;
  bool zero = false;  // evaluation vanished; flat for free
  int t0 = -1, t1 = -1;
  SlopeResult slope;
  bool torsion_free = false;
  std::vector<std::pair<int, bool>> flat;  // per n
  bool flat_all = false;
};
struct ShiftExperiment {
  int q = 0;
  std::vector<int> n_set;
  std::vector<ShiftStep> steps;
  int l_flat = -1;          // least l with flat_all, -1 on exhaustion
  int l_torsion_free = -1;  // least l with torsion gone at every n
  bool inconclusive = true;

  std::string json_dump() const;
};
ShiftExperiment shift_until_flat(const ModuleFamily& fam, int q, int l_max,
                                 const std::vector<int>& n_set);

// ---- block decomposition ----------------------------------------------------------------

// Regrades fam.eval(a + n) by the weight j carried on the first a
// coordinates: pieces[j] lists dimensions against the remaining degree.
// Piece 0 must reproduce the graded dimensions of fam.eval(n); asserted.
// d_max may be omitted for families with a finite evaluation bound.
struct BlockShiftReport {
  int a = 0, n = 0, d_max = 0;
  std::map<int, std::vector<long long>> pieces;
};
BlockShiftReport block_shift(const ModuleFamily& fam, int a, int n,
                             int d_max = -1);

}  // namespace glfrob
