#include "khom/scalar.hpp"

#include <gmpxx.h>

#include <limits>

#include "khom/error.hpp"

namespace khom {

std::string FieldSpec::str() const {
  return kind == Kind::rationals ? "Q" : "F" + std::to_string(p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rational

struct Rational::Big {
  mpq_class q;
};

namespace {

constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) { return v <= kSmallMax && v >= -kSmallMax; }

mpz_class mpz_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

void Rational::set_small_or_big(__int128 n, __int128 d) {
  if (d == 0) throw MathError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  unsigned __int128 un = n < 0 ? -static_cast<unsigned __int128>(n) : n;
  unsigned __int128 g = gcd128(un, static_cast<unsigned __int128>(d));
  if (g > 1) {
    n /= static_cast<__int128>(g);
    d /= static_cast<__int128>(g);
  }
  if (n == 0) d = 1;
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
    return;
  }
  auto b = std::make_shared<Big>();
  b->q = mpq_class(mpz_from_i128(n), mpz_from_i128(d));
  b->q.canonicalize();
  big_ = std::move(b);
  num_ = 0;
  den_ = 1;
}

Rational::Rational(long long n, long long d) { set_small_or_big(n, d); }

Rational Rational::from_big(const Big& b) {
  Rational r;
  const mpz_class& n = b.q.get_num();
  const mpz_class& d = b.q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    long nn = n.get_si();
    long dd = d.get_si();
    if (nn != std::numeric_limits<long>::min() && dd != std::numeric_limits<long>::min()) {
      r.num_ = nn;
      r.den_ = dd;
      return r;
    }
  }
  r.big_ = std::make_shared<Big>(b);
  return r;
}

Rational::Big Rational::to_big() const {
  if (big_) return *big_;
  Big b;
  b.q = mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return b;
}

int Rational::sign() const {
  if (big_) return sgn(big_->q);
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::parse(std::string_view s) {
  std::string str(s);
  while (!str.empty() && str.front() == ' ') str.erase(str.begin());
  while (!str.empty() && str.back() == ' ') str.pop_back();
  if (str.empty()) throw ParseError("empty scalar");
  for (char c : str)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/' || c == '+'))
      throw ParseError("bad rational literal '" + str + "'");
  Big b;
  try {
    b.q = mpq_class(str, 10);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal '" + str + "'");
  }
  if (b.q.get_den() == 0) throw ParseError("zero denominator in '" + str + "'");
  b.q.canonicalize();
  return from_big(b);
}

std::string Rational::str() const {
  if (big_) return big_->q.get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::inverse() const {
  if (is_zero()) throw MathError("inverse of zero");
  if (!big_) {
    Rational r;
    r.set_small_or_big(den_, num_);
    return r;
  }
  Big b;
  b.q = 1 / big_->q;
  return from_big(b);
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r = *this;
    r.num_ = -num_;
    return r;
  }
  Big b;
  b.q = -big_->q;
  return from_big(b);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      long long s;
      if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != std::numeric_limits<long long>::min()) {
        Rational r;
        r.num_ = s;
        return r;
      }
    }
    Rational r;
    r.set_small_or_big(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                       static_cast<__int128>(a.den_) * b.den_);
    return r;
  }
  Rational::Big r;
  r.q = a.to_big().q + b.to_big().q;
  return Rational::from_big(r);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      long long s;
      if (!__builtin_mul_overflow(a.num_, b.num_, &s) && s != std::numeric_limits<long long>::min()) {
        Rational r;
        r.num_ = s;
        return r;
      }
    }
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    Rational r;
    r.set_small_or_big(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    return r;
  }
  Rational::Big r;
  r.q = a.to_big().q * b.to_big().q;
  return Rational::from_big(r);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return a.big_->q == b.big_->q;
  return false;
}

Rational Rational::random(std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  return Rational(dist(rng));
}

// ---------------------------------------------------------------------------
// ModP

thread_local std::uint32_t ModP::modulus_ = 0;

std::uint32_t ModP::modulus() {
  if (modulus_ == 0) throw MathError("ModP arithmetic outside a PrimeScope");
  return modulus_;
}

ModP::ModP(long long n) {
  long long p = modulus();
  long long r = n % p;
  if (r < 0) r += p;
  v_ = static_cast<std::uint32_t>(r);
}

ModP ModP::parse(std::string_view s) {
  std::string str(s);
  auto slash = str.find('/');
  try {
    if (slash != std::string::npos) {
      ModP num(std::stoll(str.substr(0, slash)));
      ModP den(std::stoll(str.substr(slash + 1)));
      if (den.is_zero()) throw ParseError("zero denominator mod p in '" + str + "'");
      return num / den;
    }
    std::size_t used = 0;
    long long v = std::stoll(str, &used);
    if (used != str.size()) throw ParseError("bad residue literal '" + str + "'");
    return ModP(v);
  } catch (const std::logic_error&) {
    throw ParseError("bad residue literal '" + str + "'");
  }
}

ModP operator+(ModP a, ModP b) {
  ModP r;
  std::uint64_t s = std::uint64_t(a.v_) + b.v_;
  std::uint32_t p = ModP::modulus_;
  r.v_ = static_cast<std::uint32_t>(s >= p ? s - p : s);
  return r;
}

ModP operator-(ModP a, ModP b) { return a + (-b); }

ModP ModP::operator-() const {
  ModP r;
  r.v_ = v_ == 0 ? 0 : modulus_ - v_;
  return r;
}

ModP operator*(ModP a, ModP b) {
  ModP r;
  r.v_ = static_cast<std::uint32_t>((std::uint64_t(a.v_) * b.v_) % ModP::modulus_);
  return r;
}

ModP ModP::inverse() const {
  if (v_ == 0) throw MathError("inverse of zero mod p");
  std::int64_t t = 0, newt = 1;
  std::int64_t r = modulus(), newr = v_;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::tie(t, newt) = std::make_pair(newt, t - q * newt);
    std::tie(r, newr) = std::make_pair(newr, r - q * newr);
  }
  if (t < 0) t += modulus_;
  ModP res;
  res.v_ = static_cast<std::uint32_t>(t);
  return res;
}

ModP ModP::random(std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<std::uint32_t> dist(0, modulus() - 1);
  (void)range;
  ModP r;
  r.v_ = dist(rng);
  return r;
}

PrimeScope::PrimeScope(std::uint32_t p) : saved_(ModP::modulus_) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  if (p > (1u << 31)) throw InputError("modulus too large");
  ModP::modulus_ = p;
}

PrimeScope::~PrimeScope() { ModP::modulus_ = saved_; }

}  // namespace khom
