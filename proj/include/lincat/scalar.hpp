#ifndef LINCAT_SCALAR_HPP
#define LINCAT_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "lincat/error.hpp"

namespace lincat {

namespace detail {

inline bool fits_i64(__int128 v) {
  // INT64_MIN is excluded so that negation never overflows.
  return v > static_cast<__int128>(std::numeric_limits<std::int64_t>::min()) &&
         v <= static_cast<__int128>(std::numeric_limits<std::int64_t>::max());
}

inline mpz_class mpz_from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// An exact field element: a rational number or a residue modulo a prime.
///
/// Rationals are kept in lowest terms with a positive denominator. Values whose
/// numerator and denominator fit in 64 bits are stored inline; anything larger
/// spills into a GMP rational and is demoted again as soon as it fits.
/// Residues carry their modulus, so mixing elements of different fields throws
/// `FieldMismatch` instead of silently producing garbage.
class Scalar {
 public:
  Scalar() = default;

  static Scalar rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw Error(ErrorKind::BadParams, "zero denominator");
    return from_i128(num, den);
  }

  static Scalar rational(const mpq_class& q) {
    Scalar s;
    s.set_big(q);
    return s;
  }

  static Scalar residue(std::int64_t value, std::uint64_t p) {
    Scalar s;
    s.rep_ = Rep::Mod;
    const std::int64_t pp = static_cast<std::int64_t>(p);
    std::int64_t v = value % pp;
    if (v < 0) v += pp;
    s.num_ = v;
    s.den_ = pp;
    return s;
  }

  Scalar(const Scalar& o) : rep_(o.rep_), num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      rep_ = o.rep_;
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Scalar& operator=(Scalar&&) noexcept = default;

  bool is_rational() const noexcept { return rep_ != Rep::Mod; }
  /// 0 for rationals, p for residues mod p.
  std::uint64_t modulus() const noexcept { return rep_ == Rep::Mod ? static_cast<std::uint64_t>(den_) : 0; }

  bool is_zero() const noexcept { return rep_ != Rep::Big && num_ == 0; }
  bool is_one() const noexcept { return rep_ == Rep::Mod ? num_ == 1 : (rep_ == Rep::Small && num_ == 1 && den_ == 1); }

  bool is_integer() const {
    if (rep_ == Rep::Mod) return true;
    if (rep_ == Rep::Small) return den_ == 1;
    return big_->get_den() == 1;
  }

  mpq_class to_mpq() const {
    if (rep_ == Rep::Big) return *big_;
    if (rep_ == Rep::Small) return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return mpq_class(static_cast<long>(num_));
  }

  /// Residue value for elements of a prime field.
  std::uint64_t residue_value() const noexcept { return static_cast<std::uint64_t>(num_); }

  /// Denominator of a rational as a GMP integer (1 for residues).
  mpz_class denominator() const {
    if (rep_ == Rep::Big) return big_->get_den();
    if (rep_ == Rep::Small) return mpz_class(static_cast<long>(den_));
    return 1;
  }

  std::string to_string() const {
    if (rep_ == Rep::Mod) return std::to_string(num_);
    if (rep_ == Rep::Small) return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    return big_->get_str();
  }

  Scalar operator-() const {
    Scalar r(*this);
    switch (rep_) {
      case Rep::Small: r.num_ = -num_; break;
      case Rep::Big: *r.big_ = -*big_; break;
      case Rep::Mod: r.num_ = num_ == 0 ? 0 : den_ - num_; break;
    }
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_compatible(a, b);
    if (a.rep_ == Rep::Mod) return mod(a.num_ + b.num_ >= a.den_ ? a.num_ + b.num_ - a.den_ : a.num_ + b.num_, a.den_);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.rep_ == Rep::Small && b.rep_ == Rep::Small) {
      if (a.den_ == 1 && b.den_ == 1) return from_i128(static_cast<__int128>(a.num_) + b.num_, 1);
      const __int128 g = std::gcd(a.den_, b.den_);
      const __int128 num = static_cast<__int128>(a.num_) * (b.den_ / g) + static_cast<__int128>(b.num_) * (a.den_ / g);
      const __int128 den = static_cast<__int128>(a.den_) * (b.den_ / g);
      return from_i128(num, den);
    }
    Scalar r;
    r.set_big(a.to_mpq() + b.to_mpq());
    return r;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_compatible(a, b);
    if (a.rep_ == Rep::Mod) {
      return mod(static_cast<std::int64_t>(detail::mulmod(static_cast<std::uint64_t>(a.num_), static_cast<std::uint64_t>(b.num_),
                                                          static_cast<std::uint64_t>(a.den_))),
                 a.den_);
    }
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    if (a.rep_ == Rep::Small && b.rep_ == Rep::Small) {
      if (a.den_ == 1 && b.den_ == 1) return from_i128(static_cast<__int128>(a.num_) * b.num_, 1);
      const std::int64_t g1 = std::gcd(a.num_, b.den_);
      const std::int64_t g2 = std::gcd(b.num_, a.den_);
      const __int128 num = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
      const __int128 den = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
      return from_i128(num, den);
    }
    Scalar r;
    r.set_big(a.to_mpq() * b.to_mpq());
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (rep_ == Rep::Mod) {
      const auto p = static_cast<std::uint64_t>(den_);
      return mod(static_cast<std::int64_t>(detail::powmod(static_cast<std::uint64_t>(num_), p - 2, p)), den_);
    }
    if (rep_ == Rep::Small) return num_ < 0 ? from_i128(-static_cast<__int128>(den_), -static_cast<__int128>(num_)) : from_i128(den_, num_);
    Scalar r;
    r.set_big(1 / *big_);
    return r;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.rep_ != b.rep_) {
      if (a.is_rational() && b.is_rational()) return false;  // Big values never fit Small.
      return false;
    }
    if (a.rep_ == Rep::Big) return *a.big_ == *b.big_;
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  enum class Rep : std::uint8_t { Small, Big, Mod };

  static void check_compatible(const Scalar& a, const Scalar& b) {
    const bool am = a.rep_ == Rep::Mod, bm = b.rep_ == Rep::Mod;
    if (am != bm || (am && a.den_ != b.den_)) {
      throw Error(ErrorKind::FieldMismatch, "arithmetic between " + a.field_tag() + " and " + b.field_tag());
    }
  }

  std::string field_tag() const { return rep_ == Rep::Mod ? "F_" + std::to_string(den_) : "Q"; }

  static Scalar mod(std::int64_t v, std::int64_t p) {
    Scalar s;
    s.rep_ = Rep::Mod;
    s.num_ = v;
    s.den_ = p;
    return s;
  }

  static Scalar from_i128(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (den != 1) {
      const __int128 g = detail::gcd128(num, den);
      if (g > 1) {
        num /= g;
        den /= g;
      }
    }
    if (detail::fits_i64(num) && detail::fits_i64(den)) {
      Scalar s;
      s.num_ = static_cast<std::int64_t>(num);
      s.den_ = static_cast<std::int64_t>(den);
      return s;
    }
    Scalar s;
    s.set_big(mpq_class(detail::mpz_from_i128(num), detail::mpz_from_i128(den)));
    return s;
  }

  void set_big(mpq_class q) {
    q.canonicalize();
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != std::numeric_limits<long>::min()) {
      rep_ = Rep::Small;
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
      return;
    }
    rep_ = Rep::Big;
    num_ = 1;  // keeps is_zero() false without touching the GMP value
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }

  Rep rep_ = Rep::Small;
  std::int64_t num_ = 0;  // Small: numerator, Mod: residue
  std::int64_t den_ = 1;  // Small: denominator > 0, Mod: modulus
  std::unique_ptr<mpq_class> big_;
};

/// The scalar field of a computation: ℚ or 𝔽_p.
class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  Field() = default;

  static Field rationals() { return Field(); }

  static Field prime(std::uint64_t p) {
    if (p >= (1ULL << 62) || !detail::is_prime(p)) {
      throw Error(ErrorKind::BadParams, "modulus " + std::to_string(p) + " is not a supported prime");
    }
    Field f;
    f.kind_ = Kind::PrimeField;
    f.p_ = p;
    return f;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::Rationals; }
  std::uint64_t characteristic() const noexcept { return p_; }

  Scalar zero() const { return from_int(0); }
  Scalar one() const { return from_int(1); }

  Scalar from_int(std::int64_t v) const {
    return is_rational() ? Scalar::rational(v) : Scalar::residue(v, p_);
  }

  /// Maps a rational into this field; throws when the denominator vanishes mod p.
  Scalar from_mpq(const mpq_class& q) const {
    if (is_rational()) return Scalar::rational(q);
    const mpz_class pz(static_cast<unsigned long>(p_));
    mpz_class num = q.get_num() % pz;
    mpz_class den = q.get_den() % pz;
    if (num < 0) num += pz;
    if (den == 0) throw Error(ErrorKind::ParseError, "denominator vanishes modulo " + std::to_string(p_));
    return Scalar::residue(static_cast<std::int64_t>(num.get_ui()), p_) /
           Scalar::residue(static_cast<std::int64_t>(den.get_ui()), p_);
  }

  /// Accepts "n", "-n" and "a/b" with arbitrary-size integers.
  Scalar parse(std::string_view text) const {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
    s = s.substr(start);
    auto valid_int = [](const std::string& t) {
      std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
      if (i >= t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw Error(ErrorKind::ParseError, "bad scalar '" + std::string(text) + "'");
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10), d(den[0] == '+' ? den.substr(1) : den, 10);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    return from_mpq(mpq_class(n, d));
  }

  /// True when `s` is an element of this field.
  bool contains(const Scalar& s) const noexcept {
    return is_rational() ? s.is_rational() : (!s.is_rational() && s.modulus() == p_);
  }

  std::string name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

  friend bool operator==(const Field& a, const Field& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  Kind kind_ = Kind::Rationals;
  std::uint64_t p_ = 0;
};

}  // namespace lincat

#endif  // LINCAT_SCALAR_HPP
