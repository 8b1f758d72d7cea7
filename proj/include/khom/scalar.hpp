#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace khom {

/// Which ground field an algebra lives over.
struct FieldSpec {
  enum class Kind { rationals, prime };
  Kind kind = Kind::rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint32_t p) { return {Kind::prime, p}; }

  bool operator==(const FieldSpec&) const = default;
  std::string str() const;
};

bool is_prime(std::uint64_t n);

/// Exact rational number in lowest terms.
///
/// Values whose numerator and denominator fit in 63 bits are stored inline;
/// anything larger falls back to a shared immutable GMP rational. The
/// representation is canonical (a value that fits inline is never stored
/// big), so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) { set_small_or_big(n, 1); }  // NOLINT: Eigen needs implicit
  Rational(long long n, long long d);

  static Rational parse(std::string_view s);
  std::string str() const;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  int sign() const;

  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  bool is_small() const { return !big_; }

  /// Small integer drawn uniformly from [-range, range].
  static Rational random(std::mt19937_64& rng, int range = 4);
  static FieldSpec field() { return FieldSpec::rationals(); }

  struct Big;

 private:
  void set_small_or_big(__int128 n, __int128 d);
  static Rational from_big(const Big& b);
  Big to_big() const;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

/// Residue modulo a prime. The modulus is a per-thread setting installed
/// with PrimeScope; every ModP value in a computation shares it.
class ModP {
 public:
  ModP() = default;
  ModP(long long n);  // NOLINT: Eigen needs implicit

  static ModP parse(std::string_view s);
  std::string str() const { return std::to_string(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::uint32_t value() const { return v_; }
  ModP inverse() const;

  friend ModP operator+(ModP a, ModP b);
  friend ModP operator-(ModP a, ModP b);
  friend ModP operator*(ModP a, ModP b);
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  ModP operator-() const;
  ModP& operator+=(ModP b) { return *this = *this + b; }
  ModP& operator-=(ModP b) { return *this = *this - b; }
  ModP& operator*=(ModP b) { return *this = *this * b; }
  ModP& operator/=(ModP b) { return *this = *this / b; }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }
  friend bool operator!=(ModP a, ModP b) { return a.v_ != b.v_; }

  static std::uint32_t modulus();
  static ModP random(std::mt19937_64& rng, int range = 4);
  static FieldSpec field() { return FieldSpec::prime(modulus()); }

 private:
  friend class PrimeScope;
  static thread_local std::uint32_t modulus_;
  std::uint32_t v_ = 0;
};

/// Installs a modulus for ModP arithmetic on the current thread.
class PrimeScope {
 public:
  explicit PrimeScope(std::uint32_t p);
  ~PrimeScope();
  PrimeScope(const PrimeScope&) = delete;
  PrimeScope& operator=(const PrimeScope&) = delete;

 private:
  std::uint32_t saved_;
};

template <class K>
concept ExactField = requires(const K& a, std::mt19937_64& rng) {
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::convertible_to<K>;
  { a.str() } -> std::convertible_to<std::string>;
  { K::parse(std::string_view{}) } -> std::convertible_to<K>;
  { K::random(rng, 4) } -> std::convertible_to<K>;
  { K::field() } -> std::convertible_to<FieldSpec>;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }
inline std::ostream& operator<<(std::ostream& os, ModP x) { return os << x.str(); }

}  // namespace khom

namespace Eigen {

template <>
struct NumTraits<khom::Rational> : GenericNumTraits<khom::Rational> {
  using Real = khom::Rational;
  using NonInteger = khom::Rational;
  using Nested = khom::Rational;
  using Literal = khom::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

template <>
struct NumTraits<khom::ModP> : GenericNumTraits<khom::ModP> {
  using Real = khom::ModP;
  using NonInteger = khom::ModP;
  using Nested = khom::ModP;
  using Literal = khom::ModP;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

}  // namespace Eigen
