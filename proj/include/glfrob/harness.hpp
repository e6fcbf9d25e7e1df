#pragma once

// Reproducibility harness: golden-value bookkeeping, named verification
// suites with one entry per check, and the slice-until-flat experiment.

#include <string>
#include <vector>

#include "glfrob/evaluation.hpp"
#include "glfrob/homology.hpp"

namespace glfrob {

// ---- family descriptors ------------------------------------------------------

// Tiny registry language for naming module families on the command line and
// in golden records.
//
//   S                   the coefficient ring itself
//   S/EXPR              quotient by the ideal EXPR
//   ideal:EXPR          the ideal as a module
//   ideal:EXPR/EXPR2    relative ideal EXPR mod EXPR2
//   free:d              one abstract generator in degree d
//   free:d:(a,b,..)     one generator placed on the orbit of x1^a x2^b ..
//   frob:r              span of the p^r-th powers of the variables
//   delta(q,DESC)       difference functor applied to DESC
//   shift(q,DESC)       shift functor applied to DESC
//
// Unrecognized text throws parse_error.
ModuleFamily parse_family(const std::string& desc, const RingSpec& ring);

// ---- golden records ----------------------------------------------------------

// One pinned value.  reference records come from an external source and are
// never recomputed; trivial records are immediate bookkeeping facts; derived
// records name the oracle that regenerates them.
struct GoldenRecord {
  enum class Source { reference, trivial, derived };

  std::string suite;
  std::string id;
  std::string input;  // '|'-separated fields, shape fixed per oracle
  std::string expected;
  Source source = Source::reference;
  std::string oracle;  // nonempty exactly for derived records
};

const std::vector<GoldenRecord>& golden_records();

// Recomputes every derived record through its named oracle and returns the
// refreshed table.  Drift against the stored value, or an unregistered
// oracle name, is an engine bug and throws invariant_violation.  reference
// and trivial records pass through untouched.
std::vector<GoldenRecord> regenerate_goldens();

// ---- suites --------------------------------------------------------------------

struct SuiteEntry {
  std::string id;
  std::string status;  // "pass", "fail" or "resource"
  std::string diff;    // empty on pass
};

struct SuiteReport {
  std::string suite;
  long long seed = 0;
  int passed = 0;
  int failed = 0;  // fail and resource entries both count
  std::vector<SuiteEntry> entries;

  bool ok() const { return failed == 0; }
  std::string json_dump() const;
};

std::vector<std::string> suite_names();

// Runs one suite.  Entries are sorted by id and the outcome depends only on
// the seed.  Resource exhaustion inside an entry (cutoff, search caps,
// memory) is recorded as "resource", never as "fail".  Unknown names throw
// parse_error.
SuiteReport run_suite(const std::string& name, long long seed = 0);

// ---- shared corpora ------------------------------------------------------------

struct CorpusEntry {
  std::string id;
  uint32_t p = 2;
  int q = 0;            // coefficient ring truncation, 0 for the full ring
  std::string family;   // descriptor for parse_family
};

// Frobenius powers of m (GL-primes), all p in {2, 3, 5}.
const std::vector<CorpusEntry>& prime_corpus();
// Thirty composite ideals of total digit weight >= 2 across p in {2, 3, 5};
// family holds the ideal expression.
const std::vector<CorpusEntry>& composite_corpus();
// Twelve modules over the full ring, p in {2, 3}, for line-support scans.
const std::vector<CorpusEntry>& line_corpus();
// Six modules over truncated rings for slope audits.
const std::vector<CorpusEntry>& audit_corpus();

// ---- slice experiment ----------------------------------------------------------

// Applies the degree-m slice to a family over the full polynomial ring and
// reports the least m at which the result is flat at every n in n_set.
// Flatness is read off koszul_tor through the fixed window
// d = q_probe + 6: first syzygies of every corpus member fall inside it.
// A vanishing slice counts as flat.  Running out of m_max is reported as
// inconclusive, never as a refutation.
struct SShiftStep {
  int m = 0;
  bool zero = false;
  std::vector<std::pair<int, bool>> flat;  // per n
  bool flat_all = false;
};
struct SShiftReport {
  int q_probe = 0;
  int m_max = 0;
  std::vector<int> n_set;
  std::vector<SShiftStep> steps;
  int m_flat = -1;
  bool inconclusive = true;

  std::string json_dump() const;
};
SShiftReport s_shift_experiment(const ModuleFamily& fam, int q_probe, int m_max,
                                const std::vector<int>& n_set);

}  // namespace glfrob
