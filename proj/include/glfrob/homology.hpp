#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "glfrob/evaluation.hpp"

namespace glfrob {

struct Rational {
  long long num = 0;
  long long den = 1;  // normalized, den > 0

  Rational() = default;
  Rational(long long n, long long d);

  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const;
  std::string str() const;
};

// Graded Betti numbers.  ring.q == 0 means the resolution ring is the
// polynomial ring; otherwise its truncation.  entries holds nonzero dims
// only.  truncated means generator degrees past j_max may exist, so the
// t-sequence can understate; entries inside the window are always exact.
struct BettiTable {
  RingSpec ring;
  int n = 0;
  int i_max = 0;
  int j_max = 0;
  bool truncated = false;
  std::map<std::pair<int, int>, long long> entries;

  long long at(int i, int j) const;
  bool stable(int, int j) const { return j <= n; }

  std::string json_dump() const;
  std::string csv_dump() const;
  std::string pretty() const;  // rows indexed by j - i, stars on stable entries
};

// Tor over the polynomial ring in M.n() variables against the residue field,
// from the Koszul complex, one torus multidegree class at a time.  M must
// live over the polynomial ring and be materialized through degree j_max.
// The basis support must be permutation stable, which holds for every module
// the family engine produces.
BettiTable koszul_tor(const GradedModule& M, int i_max, int j_max);

// Minimal free resolution data over the truncated ring.  boundaries[i][j] is
// the degree-j block of F_{i+1} -> F_i; augmentation[j] maps F_0 -> M.  The
// construction verifies squares-to-zero, exactness across the window and
// minimality, so a returned certificate is a checked witness.
struct ResolutionCertificate {
  std::vector<std::map<int, int>> gens;  // per homological index: degree -> count
  std::vector<std::map<int, MatF>> boundaries;
  std::map<int, MatF> augmentation;
  bool minimal = true;
  bool truncated = false;
};

std::pair<ResolutionCertificate, BettiTable> minimal_resolution(
    const GradedModule& M, int i_max, int j_max);

// t_i = max j with a nonzero entry in column i, -1 for an empty column.
std::vector<int> t_sequence(const BettiTable& T);

struct SlopeResult {
  Rational value;
  bool cutoff = false;   // table window may clip the true value
  bool trivial = false;  // no entries above homological index 0
};
SlopeResult slope(const BettiTable& T);

// Line cover of the nonzero entries in row coordinates r = j - i: the entry
// (i, j) lies on the line (s, c) iff r == s*i + c.  Slopes are nonnegative
// rationals; candidates come from entry pairs.  The cover is cardinality
// minimal when it fits in max_lines, otherwise greedy with the leftovers in
// residual.
struct CoverLine {
  Rational s;
  Rational c;
  std::vector<std::pair<int, int>> points;  // (i, j), sorted
};
struct LineCover {
  std::vector<CoverLine> lines;
  std::vector<std::pair<int, int>> residual;
};
LineCover detect_lines(const BettiTable& T, int max_lines);

// Freeness over the truncated ring at each n, decided two independent ways:
// first syzygies vanish, and dim == generators * q^n.  Disagreement is an
// engine bug and throws invariant_violation.
struct FlatnessReport {
  struct Row {
    int n = 0;
    bool flat = false;
    long long dim = 0;
    long long expected = 0;  // generators * q^n
  };
  std::vector<Row> rows;
  bool flat = false;  // all rows
};
FlatnessReport flatness_test(const ModuleFamily& fam, const std::vector<int>& n_set);

// Resolution growth audit over the truncated ring, out to homological index
// 2*i_pairs.  A non-free module whose window is not clipped must show slope
// at least q/2; below that the structure theory is violated.  When non-free,
// reports the eventual constant in t_{2i} = q*i + shift.
struct CiAudit {
  enum class Verdict { flat, linear, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  int q = 0;
  long long shift = 0;
  int settled_from = -1;  // first pair index where the shift is constant
  std::vector<int> t;
  bool truncated = false;
};
CiAudit ci_slope_audit(const GradedModule& M, int i_pairs);

// Dimensions of stable entries grow with n (they are values of a fixed
// polynomial functor), but vanishing does not: an entry in the shared stable
// window is zero at one truncation iff it is zero at the other.  Throws
// invariant_violation on a support mismatch.
void check_stable_agreement(const BettiTable& a, const BettiTable& b);

// Betti table of the family at each n, resolved over the family's own ring
// (Koszul over the polynomial ring, syzygy engine over a truncation), with
// the cross-n stable-support check applied to every pair.
struct BettiSweep {
  std::map<int, BettiTable> tables;
};
BettiSweep betti_of_family(const ModuleFamily& fam, const std::vector<int>& n_set,
                           int i_max, int j_max);

}  // namespace glfrob
