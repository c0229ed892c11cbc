#ifndef DGLFORGE_MODULAR_HPP
#define DGLFORGE_MODULAR_HPP

#include "dglforge/rational.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <ostream>

namespace dglforge {

/// Element of the prime field Z/P. Used for the modular rank pre-pass.
template <std::uint32_t P>
class Zp {
 public:
  static constexpr std::uint32_t modulus = P;

  constexpr Zp() = default;
  constexpr Zp(std::int64_t v)  // NOLINT: implicit from integer literals
      : value_(static_cast<std::uint32_t>(((v % std::int64_t{P}) + P) % P)) {}

  constexpr std::uint32_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  Zp& operator+=(Zp o) {
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} + o.value_) % P);
    return *this;
  }
  Zp& operator-=(Zp o) {
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} + P - o.value_) % P);
    return *this;
  }
  Zp& operator*=(Zp o) {
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} * o.value_) % P);
    return *this;
  }
  Zp& operator/=(Zp o) { return *this *= o.inverse(); }

  friend Zp operator+(Zp a, Zp b) { return a += b; }
  friend Zp operator-(Zp a, Zp b) { return a -= b; }
  friend Zp operator*(Zp a, Zp b) { return a *= b; }
  friend Zp operator/(Zp a, Zp b) { return a /= b; }
  Zp operator-() const { return Zp{} - *this; }
  friend bool operator==(Zp a, Zp b) { return a.value_ == b.value_; }
  friend bool operator!=(Zp a, Zp b) { return a.value_ != b.value_; }

  Zp inverse() const {
    // Fermat; callers never invert zero.
    std::uint64_t base = value_, result = 1, e = P - 2;
    while (e) {
      if (e & 1) result = result * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return Zp(static_cast<std::int64_t>(result));
  }

  /// Reduction of a rational; empty when P divides the denominator.
  static std::optional<Zp> from_rational(const Rational& q) {
    const Integer num = boost::multiprecision::numerator(q) % P;
    const Integer den = boost::multiprecision::denominator(q) % P;
    if (den == 0) return std::nullopt;
    return Zp(num.convert_to<std::int64_t>()) / Zp(den.convert_to<std::int64_t>());
  }

  friend std::ostream& operator<<(std::ostream& os, Zp z) { return os << z.value_; }

 private:
  std::uint32_t value_ = 0;
};

template <std::uint32_t P>
inline bool is_zero(const Zp<P>& z) { return z.is_zero(); }

/// Primes below 2^31 used by the multi-modular pre-pass.
using Mod1 = Zp<2147483647u>;
using Mod2 = Zp<2147483629u>;
using Mod3 = Zp<2147483587u>;

}  // namespace dglforge

namespace Eigen {
template <std::uint32_t P>
struct NumTraits<dglforge::Zp<P>> : GenericNumTraits<dglforge::Zp<P>> {
  using Real = dglforge::Zp<P>;
  using NonInteger = dglforge::Zp<P>;
  using Nested = dglforge::Zp<P>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

#endif  // DGLFORGE_MODULAR_HPP
