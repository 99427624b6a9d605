#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace corext {

class Scalar;

// The ground field: Q (characteristic 0) or F_p.
class Field {
 public:
  constexpr Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(uint32_t p);

  uint32_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(int64_t v) const;

  // "Q" or "F7"
  std::string to_string() const;
  static Field parse(std::string_view text);

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  explicit constexpr Field(uint32_t p) : p_(p) {}
  uint32_t p_ = 0;
};

// Exact scalar. A rational number (modulus 0) or a residue mod a prime.
// Small rationals live in two int64 words; anything larger spills to GMP.
// Arithmetic between a rational and a residue reduces the rational first,
// so integer literals mix freely with F_p values.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : num_(v) {}  // NOLINT: literals are scalars
  Scalar(int64_t v) : num_(v) {}  // NOLINT
  Scalar(const Scalar& o);
  Scalar(Scalar&& o) noexcept = default;
  Scalar& operator=(const Scalar& o);
  Scalar& operator=(Scalar&& o) noexcept = default;
  ~Scalar() = default;

  static Scalar rational(int64_t num, int64_t den);
  static Scalar from_mpq(const mpq_class& q);
  static Scalar residue(int64_t v, uint32_t p);

  uint32_t modulus() const { return mod_; }
  Field field() const;
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

  // Reduce into `f`. Rationals with denominator divisible by p throw.
  Scalar in_field(Field f) const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // "3", "-1/2", or "4 mod 7"
  std::string to_string() const;
  // Accepts "p/q", "n", "n mod p". The result is reduced into `f`.
  static Scalar parse(std::string_view text, Field f);

  mpq_class to_mpq() const;  // rational only

 private:
  static Scalar from_i128(__int128 num, __int128 den);
  void normalize_big();
  bool same_field_as(const Scalar& o, Scalar& a, Scalar& b) const;

  int64_t num_ = 0;  // numerator, or residue when mod_ != 0
  int64_t den_ = 1;
  uint32_t mod_ = 0;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace corext
