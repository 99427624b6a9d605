#include "corext/scalar.hpp"

#include <charconv>
#include <numeric>

#include "corext/errors.hpp"

namespace corext {

namespace {

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

int64_t mod_reduce(int64_t v, uint32_t p) {
  int64_t r = v % static_cast<int64_t>(p);
  return r < 0 ? r + p : r;
}

int64_t mod_pow(int64_t b, uint64_t e, uint32_t p) {
  uint64_t r = 1, x = static_cast<uint64_t>(b);
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<int64_t>(r);
}

}  // namespace

Field Field::prime(uint32_t p) {
  if (!is_prime(p) || p >= (1u << 31))
    throw UsageError("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  return Field(p);
}

Scalar Field::zero() const { return p_ ? Scalar::residue(0, p_) : Scalar(); }
Scalar Field::one() const { return from_int(1); }
Scalar Field::from_int(int64_t v) const { return p_ ? Scalar::residue(v, p_) : Scalar(v); }

std::string Field::to_string() const { return p_ ? "F" + std::to_string(p_) : "Q"; }

Field Field::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.size() > 1 && text[0] == 'F') {
    uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), p);
    if (ec == std::errc() && ptr == text.data() + text.size()) return prime(p);
  }
  throw ParseError("unknown field '" + std::string(text) + "'");
}

Scalar::Scalar(const Scalar& o) : num_(o.num_), den_(o.den_), mod_(o.mod_) {
  if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this != &o) {
    num_ = o.num_;
    den_ = o.den_;
    mod_ = o.mod_;
    big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
  }
  return *this;
}

Scalar Scalar::rational(int64_t num, int64_t den) {
  if (den == 0) throw UsageError("zero denominator");
  return from_i128(num, den);
}

Scalar Scalar::from_mpq(const mpq_class& q) {
  Scalar s;
  s.big_ = std::make_unique<mpq_class>(q);
  s.big_->canonicalize();
  s.normalize_big();
  return s;
}

Scalar Scalar::residue(int64_t v, uint32_t p) {
  Scalar s;
  s.mod_ = p;
  s.num_ = mod_reduce(v, p);
  return s;
}

Field Scalar::field() const { return mod_ ? Field::prime(mod_) : Field::rationals(); }

Scalar Scalar::from_i128(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Scalar s;
  if (num >= INT64_MIN && num <= INT64_MAX && den <= INT64_MAX) {
    s.num_ = static_cast<int64_t>(num);
    s.den_ = static_cast<int64_t>(den);
    return s;
  }
  s.big_ = std::make_unique<mpq_class>(mpz_from_i128(num), mpz_from_i128(den));
  return s;
}

void Scalar::normalize_big() {
  if (!big_) return;
  const mpz_class& n = big_->get_num();
  const mpz_class& d = big_->get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
  }
}

mpq_class Scalar::to_mpq() const {
  if (mod_) throw UsageError("residue has no rational value");
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Scalar Scalar::in_field(Field f) const {
  uint32_t p = f.characteristic();
  if (p == mod_) return *this;
  if (mod_ != 0) throw UsageError("cannot move a residue mod " + std::to_string(mod_) + " into " + f.to_string());
  int64_t n, d;
  if (big_) {
    mpz_class pn = big_->get_num() % p, pd = big_->get_den() % p;
    n = pn.get_si();
    d = pd.get_si();
  } else {
    n = num_ % static_cast<int64_t>(p);
    d = den_ % static_cast<int64_t>(p);
  }
  n = mod_reduce(n, p);
  d = mod_reduce(d, p);
  if (d == 0) throw UsageError("denominator divisible by " + std::to_string(p));
  return residue(static_cast<int64_t>(static_cast<uint64_t>(n) * mod_pow(d, p - 2, p) % p), p);
}

bool Scalar::same_field_as(const Scalar& o, Scalar& a, Scalar& b) const {
  // Returns true when both already share a field; otherwise fills a, b with
  // copies promoted into the common prime field.
  if (mod_ == o.mod_) return true;
  if (mod_ != 0 && o.mod_ != 0) throw UsageError("mixing residues of different characteristic");
  Field f = Field::prime(mod_ ? mod_ : o.mod_);
  a = in_field(f);
  b = o.in_field(f);
  return false;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar a, b;
  if (!same_field_as(o, a, b)) return a + b;
  if (mod_) return residue(num_ + o.num_, mod_);
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (big_ || o.big_) return from_mpq(to_mpq() + o.to_mpq());
  if (den_ == 1 && o.den_ == 1) return from_i128(static_cast<__int128>(num_) + o.num_, 1);
  return from_i128(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                   static_cast<__int128>(den_) * o.den_);
}

Scalar Scalar::operator-() const {
  if (mod_) return residue(-num_, mod_);
  if (big_) return from_mpq(-*big_);
  return from_i128(-static_cast<__int128>(num_), den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar a, b;
  if (!same_field_as(o, a, b)) return a * b;
  if (mod_)
    return residue(static_cast<int64_t>(static_cast<uint64_t>(num_) * static_cast<uint64_t>(o.num_) % mod_), mod_);
  if (is_zero() || o.is_zero()) return Scalar();
  if (big_ || o.big_) return from_mpq(to_mpq() * o.to_mpq());
  return from_i128(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw UsageError("division by zero");
  if (mod_) return residue(mod_pow(num_, mod_ - 2, mod_), mod_);
  if (big_) return from_mpq(1 / *big_);
  return from_i128(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  if (mod_ != o.mod_) {
    Scalar a, b;
    same_field_as(o, a, b);
    return a == b;
  }
  if (big_ || o.big_) return big_ && o.big_ && *big_ == *o.big_;
  return num_ == o.num_ && den_ == o.den_;
}

std::string Scalar::to_string() const {
  if (mod_) return std::to_string(num_) + " mod " + std::to_string(mod_);
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::parse(std::string_view text, Field f) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw ParseError("empty scalar");
  auto bad = [&] { return ParseError("malformed scalar '" + std::string(text) + "'"); };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    if (s.empty()) throw bad();
    mpz_class z;
    if (z.set_str(std::string(s[0] == '+' ? s.substr(1) : s), 10) != 0) throw bad();
    return z;
  };
  if (auto m = text.find("mod"); m != std::string_view::npos) {
    mpz_class v = parse_int(text.substr(0, m));
    mpz_class p = parse_int(text.substr(m + 3));
    if (!p.fits_ulong_p() || p.get_ui() != f.characteristic())
      throw ParseError("scalar '" + std::string(text) + "' is not in field " + f.to_string());
    mpz_class r = v % p;
    return residue(r.get_si(), f.characteristic());
  }
  mpq_class q;
  if (auto s = text.find('/'); s != std::string_view::npos) {
    mpz_class d = parse_int(text.substr(s + 1));
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    q = mpq_class(parse_int(text.substr(0, s)), d);
    q.canonicalize();
  } else {
    q = mpq_class(parse_int(text));
  }
  Scalar r = from_mpq(q);
  if (!f.is_rational()) {
    try {
      return r.in_field(f);
    } catch (const UsageError& e) {
      throw ParseError(e.what());
    }
  }
  return r;
}

}  // namespace corext
