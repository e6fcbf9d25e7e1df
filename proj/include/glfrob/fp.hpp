#pragma once

#include <cassert>
#include <cstdint>
#include <iosfwd>
#include <ostream>

#include <Eigen/Core>

#include "glfrob/errors.hpp"

namespace glfrob {

// Scalar of the prime field F_p with the modulus carried at runtime.
//
// Generic matrix code (Eigen included) materializes literal scalars via
// Scalar(0) / Scalar(1); those carry modulus 0 ("untyped exact integer") and
// adopt the modulus of the first typed operand they meet.  Untyped values are
// restricted to 0 and 1 so that deferred reduction can never change a zero
// test; every value born from actual data is constructed as Fp(v, p).
class Fp {
 public:
  Fp() : v_(0), m_(0) {}
  Fp(long long v) : v_(v), m_(0) {  // NOLINT: implicit for Scalar(0)/Scalar(1)
    if (v_ != 0 && v_ != 1)
      throw invariant_violation("untyped F_p literal outside {0,1}");
  }
  Fp(long long v, uint32_t p) : m_(p) {
    assert(p >= 2);
    v_ = v % static_cast<long long>(p);
    if (v_ < 0) v_ += p;
  }

  uint32_t modulus() const { return m_; }
  // Canonical representative in [0, p).
  long long value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) {
    uint32_t m = unify(a, b);
    return make(a.v_ + b.v_, m);
  }
  friend Fp operator-(Fp a, Fp b) {
    uint32_t m = unify(a, b);
    return make(a.v_ - b.v_, m);
  }
  friend Fp operator*(Fp a, Fp b) {
    uint32_t m = unify(a, b);
    return make(a.v_ * b.v_, m);
  }
  Fp operator-() const { return make(-v_, m_); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  Fp inverse() const {
    if (m_ == 0) {
      if (v_ == 1) return *this;
      throw domain_error("inverse of untyped F_p scalar");
    }
    if (v_ == 0) throw domain_error("inverse of zero in F_p");
    // extended Euclid on (v, m)
    long long t = 0, new_t = 1, r = m_, new_r = v_;
    while (new_r != 0) {
      long long qq = r / new_r;
      long long tmp = t - qq * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - qq * new_r;
      r = new_r;
      new_r = tmp;
    }
    return make(t, m_);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp& operator/=(Fp o) { return *this = *this / o; }

  friend bool operator==(Fp a, Fp b) {
    unify(a, b);
    return a.v_ == b.v_ || (a.m_ != 0 && (a.v_ - b.v_) % a.m_ == 0);
  }
  friend bool operator!=(Fp a, Fp b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

 private:
  static Fp make(long long v, uint32_t m) {
    Fp r;
    r.m_ = m;
    if (m == 0) {
      r.v_ = v;
    } else {
      r.v_ = v % static_cast<long long>(m);
      if (r.v_ < 0) r.v_ += m;
    }
    return r;
  }
  // Settles the common modulus of two operands, reducing in place.
  static uint32_t unify(Fp& a, Fp& b) {
    uint32_t m = a.m_ ? a.m_ : b.m_;
    if (a.m_ != 0 && b.m_ != 0 && a.m_ != b.m_)
      throw invariant_violation("mixed F_p moduli");
    if (m != 0) {
      a = make(a.v_, m);
      b = make(b.v_, m);
    }
    return m;
  }

  long long v_;
  uint32_t m_;
};

inline Fp fp(long long v, uint32_t p) { return Fp(v, p); }

using MatF = Eigen::Matrix<Fp, Eigen::Dynamic, Eigen::Dynamic>;
using VecF = Eigen::Matrix<Fp, Eigen::Dynamic, 1>;

}  // namespace glfrob

namespace Eigen {
template <>
struct NumTraits<glfrob::Fp> : GenericNumTraits<glfrob::Fp> {
  typedef glfrob::Fp Real;
  typedef glfrob::Fp NonInteger;
  typedef glfrob::Fp Nested;
  typedef glfrob::Fp Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline glfrob::Fp epsilon() { return glfrob::Fp(0); }
  static inline glfrob::Fp dummy_precision() { return glfrob::Fp(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
