#include "adelic/residue_arith.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace adelic {

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (u64 d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

u64 mod_floor(i64 a, u64 n) {
  if (a >= 0) return static_cast<u64>(a) % n;
  // -(a+1) avoids overflow at INT64_MIN
  u64 r = static_cast<u64>(-(a + 1)) % n;
  return n - 1 - r;
}

u64 mul_mod(u64 a, u64 b, u64 n) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % n);
}

u64 pow_mod(u64 base, u64 exp, u64 n) {
  u64 result = 1 % n;
  base %= n;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1;
  }
  return result;
}

u64 inverse_mod(u64 a, u64 n) {
  // extended Euclid on signed 128-bit to stay exact for any u64 modulus
  __int128 r0 = n, r1 = a % n, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) {
    throw Error(ErrorKind::NotInvertible,
                std::to_string(a) + " is not a unit modulo " + std::to_string(n));
  }
  __int128 m = n;
  s0 %= m;
  if (s0 < 0) s0 += m;
  return static_cast<u64>(s0);
}

// ---------------------------------------------------------------------------
// ZModN

ZModN::ZModN(i64 value, u64 modulus) : modulus_(modulus) {
  if (modulus == 0) throw std::invalid_argument("ZModN: modulus must be positive");
  value_ = mod_floor(value, modulus);
}

ZModN ZModN::operator+(const ZModN& o) const {
  u64 s = value_ + o.value_;
  if (s >= modulus_ || s < value_) s -= modulus_;
  return {s, modulus_, 0};
}

ZModN ZModN::operator-(const ZModN& o) const {
  return {value_ >= o.value_ ? value_ - o.value_ : modulus_ - (o.value_ - value_), modulus_, 0};
}

ZModN ZModN::operator*(const ZModN& o) const { return {mul_mod(value_, o.value_, modulus_), modulus_, 0}; }

ZModN ZModN::operator-() const { return {value_ == 0 ? 0 : modulus_ - value_, modulus_, 0}; }

ZModN ZModN::pow(u64 e) const { return {pow_mod(value_, e, modulus_), modulus_, 0}; }

ZModN ZModN::inverse() const { return {inverse_mod(value_, modulus_), modulus_, 0}; }

bool ZModN::is_unit() const {
  u64 a = value_, b = modulus_;
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a == 1;
}

// ---------------------------------------------------------------------------
// PolyFp

PolyFp PolyFp::from_integers(std::span<const i64> coeffs, u64 p) {
  PolyFp out{p, {}};
  out.c.reserve(coeffs.size());
  for (i64 v : coeffs) out.c.push_back(mod_floor(v, p));
  out.trim();
  return out;
}

void PolyFp::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

u64 PolyFp::eval(u64 x) const {
  u64 acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (mul_mod(acc, x, p) + *it) % p;
  return acc;
}

std::string PolyFp::str(char var) const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    u64 a = c[k];
    if (a == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0 || a != 1) os << a;
    if (k >= 1) os << var;
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

PolyFp poly_add(const PolyFp& a, const PolyFp& b) {
  PolyFp out{a.p, std::vector<u64>(std::max(a.c.size(), b.c.size()), 0)};
  for (size_t i = 0; i < out.c.size(); ++i) {
    u64 x = i < a.c.size() ? a.c[i] : 0;
    u64 y = i < b.c.size() ? b.c[i] : 0;
    out.c[i] = (x + y) % a.p;
  }
  out.trim();
  return out;
}

PolyFp poly_sub(const PolyFp& a, const PolyFp& b) {
  PolyFp out{a.p, std::vector<u64>(std::max(a.c.size(), b.c.size()), 0)};
  for (size_t i = 0; i < out.c.size(); ++i) {
    u64 x = i < a.c.size() ? a.c[i] : 0;
    u64 y = i < b.c.size() ? b.c[i] : 0;
    out.c[i] = (x + a.p - y) % a.p;
  }
  out.trim();
  return out;
}

PolyFp poly_mul(const PolyFp& a, const PolyFp& b) {
  if (a.is_zero() || b.is_zero()) return {a.p, {}};
  PolyFp out{a.p, std::vector<u64>(a.c.size() + b.c.size() - 1, 0)};
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      out.c[i + j] = (out.c[i + j] + mul_mod(a.c[i], b.c[j], a.p)) % a.p;
  out.trim();
  return out;
}

std::pair<PolyFp, PolyFp> poly_divmod(const PolyFp& a, const PolyFp& b) {
  if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
  const u64 p = a.p;
  PolyFp rem = a;
  PolyFp quo{p, {}};
  if (rem.degree() < b.degree()) return {quo, rem};
  quo.c.assign(rem.c.size() - b.c.size() + 1, 0);
  const u64 lead_inv = inverse_mod(b.c.back(), p);
  for (int k = rem.degree(); k >= b.degree(); --k) {
    u64 coef = mul_mod(rem.c[k], lead_inv, p);
    if (coef == 0) continue;
    int shift = k - b.degree();
    quo.c[shift] = coef;
    for (int i = 0; i <= b.degree(); ++i)
      rem.c[shift + i] = (rem.c[shift + i] + p - mul_mod(coef, b.c[i], p)) % p;
  }
  quo.trim();
  rem.trim();
  return {quo, rem};
}

PolyFp poly_derivative(const PolyFp& a) {
  PolyFp out{a.p, {}};
  for (size_t k = 1; k < a.c.size(); ++k) out.c.push_back(mul_mod(a.c[k], k % a.p, a.p));
  out.trim();
  return out;
}

PolyFp poly_gcd(PolyFp a, PolyFp b) {
  while (!b.is_zero()) {
    auto r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  u64 inv = inverse_mod(a.c.back(), a.p);
  for (auto& x : a.c) x = mul_mod(x, inv, a.p);
  return a;
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

bool factor_less(const PolyFactor& x, const PolyFactor& y) {
  if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
  return x.factor.c < y.factor.c;
}

}  // namespace

std::vector<PolyFactor> factor_poly_mod_p(std::span<const i64> monic_coeffs, u64 p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
  PolyFp f = PolyFp::from_integers(monic_coeffs, p);
  if (f.degree() != static_cast<int>(monic_coeffs.size()) - 1 || !f.is_monic())
    throw std::invalid_argument("factor_poly_mod_p: polynomial must be monic");
  if (f.degree() > 3) throw Error(ErrorKind::DegreeTooLarge, "degree " + std::to_string(f.degree()));

  std::vector<PolyFactor> out;
  for (u64 r = 0; r < p && f.degree() >= 1; ++r) {
    PolyFp lin{p, {(p - r) % p, 1}};
    int mult = 0;
    while (f.degree() >= 1 && f.eval(r) == 0) {
      f = poly_divmod(f, lin).first;
      ++mult;
    }
    if (mult > 0) out.push_back({lin, mult});
  }
  // rootless remainder of degree <= 3 is irreducible
  if (f.degree() >= 2) out.push_back({f, 1});
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

int legendre(i64 a, u64 ell) {
  if (ell % 2 == 0) throw Error(ErrorKind::EvenModulus, "Legendre symbol needs an odd prime");
  u64 r = pow_mod(mod_floor(a, ell), (ell - 1) / 2, ell);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// F_q

FqContext::FqContext(u64 p, PolyFp modulus)
    : p_(p), f_(modulus.degree()), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < f_; ++i) q_ *= p_;
}

std::shared_ptr<const FqContext> FqContext::create(u64 p, const PolyFp& modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
  if (p >= (u64{1} << 32)) throw Error(ErrorKind::FieldTooLarge, "characteristic must be below 2^32");
  PolyFp g = modulus;
  g.p = p;
  for (auto& x : g.c) x %= p;
  g.trim();
  if (!g.is_monic()) throw std::invalid_argument("FqContext: modulus must be monic");
  if (g.degree() < 1) throw std::invalid_argument("FqContext: modulus must have positive degree");
  if (g.degree() > 3) throw Error(ErrorKind::DegreeTooLarge, "extension degree " + std::to_string(g.degree()));
  if (g.degree() >= 2) {
    for (u64 r = 0; r < p; ++r) {
      if (g.eval(r) == 0)
        throw Error(ErrorKind::ReducibleModulus, g.str() + " has root " + std::to_string(r) + " mod " + std::to_string(p));
    }
  }
  return std::shared_ptr<const FqContext>(new FqContext(p, std::move(g)));
}

std::shared_ptr<const FqContext> FqContext::prime_field(u64 p) { return create(p, PolyFp{p, {0, 1}}); }

FqElement FqContext::zero() const { return {this, {0, 0, 0}}; }

FqElement FqContext::one() const { return {this, {1, 0, 0}}; }

FqElement FqContext::generator() const { return from_poly(PolyFp{p_, {0, 1}}); }

FqElement FqContext::from_int(i64 v) const { return {this, {mod_floor(v, p_), 0, 0}}; }

FqElement FqContext::from_poly(const PolyFp& poly) const {
  PolyFp r = poly_divmod(poly, modulus_).second;
  std::array<u64, 3> c{};
  for (size_t i = 0; i < r.c.size(); ++i) c[i] = r.c[i];
  return {this, c};
}

FqElement FqContext::element(u64 index) const {
  if (index >= q_) throw std::out_of_range("FqContext::element: index out of range");
  std::array<u64, 3> c{};
  for (int i = 0; i < f_; ++i) {
    c[i] = index % p_;
    index /= p_;
  }
  return {this, c};
}

u64 FqElement::index() const {
  u64 idx = 0;
  for (int i = ctx_->f_ - 1; i >= 0; --i) idx = idx * ctx_->p_ + c_[i];
  return idx;
}

FqElement FqElement::operator+(const FqElement& o) const {
  const u64 p = ctx_->p_;
  std::array<u64, 3> r{};
  for (int i = 0; i < 3; ++i) r[i] = (c_[i] + o.c_[i]) % p;
  return {ctx_, r};
}

FqElement FqElement::operator-(const FqElement& o) const {
  const u64 p = ctx_->p_;
  std::array<u64, 3> r{};
  for (int i = 0; i < 3; ++i) r[i] = (c_[i] + p - o.c_[i]) % p;
  return {ctx_, r};
}

FqElement FqElement::operator-() const { return ctx_->zero() - *this; }

FqElement FqElement::operator*(const FqElement& o) const {
  const u64 p = ctx_->p_;
  const int f = ctx_->f_;
  // p < 2^32 so every product fits in 64 bits
  std::array<u64, 5> prod{};
  for (int i = 0; i < f; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + c_[i] * o.c_[j]) % p;
  }
  const auto& g = ctx_->modulus_.c;
  for (int k = 2 * f - 2; k >= f; --k) {
    u64 coef = prod[k];
    if (coef == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < f; ++i) prod[k - f + i] = (prod[k - f + i] + (p - coef) * g[i]) % p;
  }
  return {ctx_, {prod[0], prod[1], prod[2]}};
}

FqElement FqElement::pow(u64 e) const {
  FqElement result = ctx_->one();
  FqElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

FqElement FqElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::NotInvertible, "zero has no inverse in F_q");
  return pow(ctx_->q_ - 2);
}

std::string FqElement::str() const {
  PolyFp poly{ctx_->p_, {c_[0], c_[1], c_[2]}};
  poly.trim();
  return poly.str('a');
}

FqElement fq_eval(std::span<const FqElement> poly, const FqElement& x) {
  FqElement acc = x.context().zero();
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<FqElement> fq_roots(std::span<const FqElement> poly) {
  std::vector<FqElement> coeffs(poly.begin(), poly.end());
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.empty()) throw std::invalid_argument("fq_roots: zero polynomial");
  if (coeffs.size() > 4) throw Error(ErrorKind::DegreeTooLarge, "fq_roots handles degree <= 3");
  const FqContext& ctx = coeffs.front().context();

  std::vector<FqElement> roots;
  for (u64 i = 0; i < ctx.order() && coeffs.size() > 1; ++i) {
    FqElement r = ctx.element(i);
    // synthetic division by (x - r) while r remains a root
    while (coeffs.size() > 1 && fq_eval(coeffs, r).is_zero()) {
      std::vector<FqElement> quo(coeffs.size() - 1, ctx.zero());
      FqElement carry = ctx.zero();
      for (size_t k = coeffs.size() - 1; k >= 1; --k) {
        carry = coeffs[k] + carry * r;
        quo[k - 1] = carry;
      }
      coeffs = std::move(quo);
      roots.push_back(r);
    }
  }
  return roots;
}

}  // namespace adelic
