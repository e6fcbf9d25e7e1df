#pragma once

#include <stdexcept>
#include <string>

namespace glfrob {

// Error taxonomy shared by the library and the CLI exit-code mapping:
//   parse_error     -> 2   malformed expressions / descriptors / unknown suites
//   domain_error    -> 3   precondition violations (p not prime, bad q, ...)
//   cutoff_error    -> 4   a computation needs data beyond an explicit cutoff
//   exhaustion_error-> 5   a bounded search ended without a verdict
// invariant_violation signals a mathematical identity failing where the
// design guarantees it; it is never caught and converted, it should abort
// the run loudly (golden drift, stable-entry disagreement, d^2 != 0, ...).

struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct cutoff_error : std::runtime_error {
  explicit cutoff_error(const std::string& what) : std::runtime_error(what) {}
};

struct exhaustion_error : std::runtime_error {
  explicit exhaustion_error(const std::string& what) : std::runtime_error(what) {}
};

struct invariant_violation : std::logic_error {
  explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace glfrob
