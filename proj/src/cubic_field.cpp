#include "adelic/cubic_field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace adelic {

namespace {

using Vec3 = std::array<mpz_class, 3>;

void require_same_field(const MonicCubic& a, const MonicCubic& b) {
  if (!(a == b)) throw std::invalid_argument("OrderElement: operands belong to different fields");
}

mpz_class to_mpz(i64 v) {
  mpz_class out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

mpz_class to_mpz(u64 v) {
  mpz_class out;
  mpz_set_ui(out.get_mpz_t(), static_cast<unsigned long>(v));
  return out;
}

u64 to_u64(const mpz_class& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) throw Error(ErrorKind::Overflow, v.get_str() + " exceeds 64 bits");
  return static_cast<u64>(mpz_get_ui(v.get_mpz_t()));
}

mpq_class eval_cubic(const MonicCubic& f, const mpq_class& x) {
  return ((x + mpq_class(to_mpz(f.a2))) * x + mpq_class(to_mpz(f.a1))) * x + mpq_class(to_mpz(f.a0));
}

/// Interval [lo, hi] image of t -> k * t.
std::pair<mpq_class, mpq_class> scale(const mpz_class& k, const mpq_class& lo, const mpq_class& hi) {
  mpq_class a = k * lo, b = k * hi;
  if (a <= b) return {a, b};
  return {b, a};
}

std::pair<mpq_class, mpq_class> square(const mpq_class& lo, const mpq_class& hi) {
  if (lo >= 0) return {lo * lo, hi * hi};
  if (hi <= 0) return {hi * hi, lo * lo};
  mpq_class m = std::max(mpq_class(lo * lo), mpq_class(hi * hi));
  return {mpq_class(0), m};
}

std::vector<i64> symmetric_coeffs(const PolyFp& g) {
  std::vector<i64> out;
  for (u64 c : g.c) out.push_back(c <= g.p / 2 ? static_cast<i64>(c) : static_cast<i64>(c) - static_cast<i64>(g.p));
  return out;
}

/// (Z/p^k)[y]/(G) for a monic G of degree 1..3, used for p-adic embeddings.
class LocalRing {
 public:
  LocalRing(const PolyFp& g, const mpz_class& modulus) : modulus_(modulus), deg_(g.degree()) {
    for (u64 c : g.c) g_.push_back(to_mpz(c));
  }

  int degree() const { return deg_; }
  const mpz_class& modulus() const { return modulus_; }

  Vec3 reduce(std::array<mpz_class, 5> d) const {
    for (int k = 4; k >= deg_; --k) {
      if (d[k] == 0) continue;
      mpz_class c = d[k];
      d[k] = 0;
      for (int i = 0; i < deg_; ++i) d[k - deg_ + i] -= c * g_[i];
    }
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      mpz_class r = i < deg_ ? mpz_class(d[i] % modulus_) : mpz_class(0);
      if (r < 0) r += modulus_;
      out[i] = r;
    }
    return out;
  }

  Vec3 constant(const mpz_class& v) const { return reduce({v, 0, 0, 0, 0}); }
  Vec3 variable() const { return reduce({0, 1, 0, 0, 0}); }

  Vec3 add(const Vec3& a, const Vec3& b) const { return reduce({a[0] + b[0], a[1] + b[1], a[2] + b[2], 0, 0}); }
  Vec3 sub(const Vec3& a, const Vec3& b) const { return reduce({a[0] - b[0], a[1] - b[1], a[2] - b[2], 0, 0}); }

  Vec3 mul(const Vec3& a, const Vec3& b) const {
    std::array<mpz_class, 5> d;
    for (auto& x : d) x = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d[i + j] += a[i] * b[j];
    return reduce(d);
  }

  /// Evaluates c0 + c1 t + c2 t^2 (+ t^3 when monic_cubic) at t.
  Vec3 eval(const std::array<mpz_class, 4>& c, const Vec3& t) const {
    Vec3 acc = constant(c[3]);
    for (int k = 2; k >= 0; --k) acc = add(mul(acc, t), constant(c[k]));
    return acc;
  }

 private:
  mpz_class modulus_;
  int deg_;
  std::vector<mpz_class> g_;
};

int ceil_log2(int k) {
  int r = 0;
  while ((1 << r) < k) ++r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

MonicCubic MonicCubic::from_coefficients(std::span<const i64> coeffs) {
  if (coeffs.size() != 4 || coeffs[3] != 1)
    throw Error(ErrorKind::Config, "expected a monic cubic given as four coefficients, low degree first");
  return {coeffs[0], coeffs[1], coeffs[2]};
}

mpz_class cubic_discriminant(const MonicCubic& f) {
  // x^3 + a x^2 + b x + c: a^2 b^2 - 4 b^3 - 4 a^3 c - 27 c^2 + 18 a b c
  mpz_class a = to_mpz(f.a2), b = to_mpz(f.a1), c = to_mpz(f.a0);
  return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

OrderElement OrderElement::operator+(const OrderElement& o) const {
  require_same_field(f_, o.f_);
  return {f_, c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2]};
}

OrderElement OrderElement::operator-(const OrderElement& o) const {
  require_same_field(f_, o.f_);
  return {f_, c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2]};
}

OrderElement OrderElement::operator-() const { return {f_, -c_[0], -c_[1], -c_[2]}; }

OrderElement OrderElement::operator*(const OrderElement& o) const {
  require_same_field(f_, o.f_);
  std::array<mpz_class, 5> d;
  for (auto& x : d) x = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d[i + j] += c_[i] * o.c_[j];
  const mpz_class a2 = to_mpz(f_.a2), a1 = to_mpz(f_.a1), a0 = to_mpz(f_.a0);
  for (int k = 4; k >= 3; --k) {
    mpz_class c = d[k];
    d[k] = 0;
    d[k - 1] -= a2 * c;
    d[k - 2] -= a1 * c;
    d[k - 3] -= a0 * c;
  }
  return {f_, d[0], d[1], d[2]};
}

OrderElement OrderElement::operator*(long k) const { return {f_, c_[0] * k, c_[1] * k, c_[2] * k}; }

OrderElement OrderElement::pow(unsigned e) const {
  OrderElement result(f_, 1);
  OrderElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::string OrderElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 2; k >= 0; --k) {
    const mpz_class& c = c_[k];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k >= 1) os << 'a';
    if (k == 2) os << "^2";
  }
  if (first) os << '0';
  return os.str();
}

// ---------------------------------------------------------------------------

std::string PrimeIdeal::label() const {
  static constexpr char letters[] = {'P', 'Q', 'R'};
  return std::string(1, letters[index]) + "_" + std::to_string(p);
}

std::string PrimeIdeal::annotated_label() const {
  std::string out = label() + " [f=" + std::to_string(residue_degree);
  if (ramification > 1) out += ",e=" + std::to_string(ramification);
  return out + "]";
}

// ---------------------------------------------------------------------------

int mpz_valuation(mpz_class n, u64 p) {
  if (n == 0) throw Error(ErrorKind::ZeroElement, "valuation of zero");
  n = abs(n);
  int v = 0;
  mpz_class pp = to_mpz(p);
  while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
    n /= pp;
    ++v;
  }
  return v;
}

std::vector<std::pair<u64, int>> factor_integer(const mpz_class& n) {
  if (n == 0) throw Error(ErrorKind::ZeroElement, "cannot factor zero");
  mpz_class m = abs(n);
  std::vector<std::pair<u64, int>> out;
  auto strip = [&](u64 d) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      int e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        ++e;
      }
      out.emplace_back(d, e);
    }
  };
  strip(2);
  for (u64 d = 3; m > 1; d += 2) {
    mpz_class dd = to_mpz(d);
    if (dd * dd > m) break;
    strip(d);
  }
  if (m > 1) out.emplace_back(to_u64(m), 1);
  return out;
}

mpq_class minkowski_bound_upper(const mpz_class& disc) {
  // pi > 3141592653 / 10^9, so 4/pi < 4 * 10^9 / 3141592653
  const mpz_class scale_sq("1000000000000000000");
  const mpz_class scale("1000000000");
  mpz_class radicand = abs(disc) * scale_sq;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  if (root * root < radicand) root += 1;
  mpq_class four_over_pi(mpz_class(4) * scale, mpz_class("3141592653"));
  four_over_pi.canonicalize();
  mpq_class sqrt_up(root, scale);
  sqrt_up.canonicalize();
  mpq_class result = mpq_class(6, 27) * four_over_pi * sqrt_up;
  result.canonicalize();
  return result;
}

// ---------------------------------------------------------------------------

namespace {

void require_irreducible(const MonicCubic& f) {
  // a rational root of a monic integer cubic is an integer dividing a0
  if (f.a0 == 0) throw Error(ErrorKind::Reducible, "x divides the polynomial");
  std::vector<mpz_class> divisors = {1};
  for (auto [p, e] : factor_integer(to_mpz(f.a0))) {
    std::vector<mpz_class> next;
    for (const auto& d : divisors) {
      mpz_class pk = 1;
      for (int k = 0; k <= e; ++k) {
        next.push_back(d * pk);
        pk *= to_mpz(p);
      }
    }
    divisors = std::move(next);
  }
  const MonicCubic g = f;
  for (const auto& d : divisors) {
    for (int s : {1, -1}) {
      mpz_class r = d * s;
      mpz_class v = ((r + to_mpz(g.a2)) * r + to_mpz(g.a1)) * r + to_mpz(g.a0);
      if (v == 0) throw Error(ErrorKind::Reducible, "integer root " + r.get_str());
    }
  }
}

std::pair<mpq_class, mpq_class> isolate_real_root(const MonicCubic& f) {
  mpz_class bound = 1 + std::max({abs(to_mpz(f.a0)), abs(to_mpz(f.a1)), abs(to_mpz(f.a2))});
  mpq_class lo(-bound), hi(bound);
  const mpq_class width_cap(mpz_class(1), mpz_class(1) << 64);
  // f(lo) < 0 < f(hi) holds throughout
  while (hi - lo >= width_cap) {
    mpq_class mid = (lo + hi) / 2;
    mpq_class v = eval_cubic(f, mid);
    if (v == 0) {
      throw Error(ErrorKind::Reducible, "rational root " + mid.get_str());
    }
    (v < 0 ? lo : hi) = mid;
  }
  return {lo, hi};
}

}  // namespace

CubicField CubicField::create(std::span<const i64> coeffs) { return create(MonicCubic::from_coefficients(coeffs)); }

CubicField CubicField::create(const MonicCubic& f) {
  require_irreducible(f);
  mpz_class disc = cubic_discriminant(f);
  for (auto [p, e] : factor_integer(disc)) {
    if (e > 1)
      throw Error(ErrorKind::NonSquarefreeDiscriminant,
                  "discriminant " + disc.get_str() + " is divisible by " + std::to_string(p) + "^2");
  }
  if (disc > 0) throw Error(ErrorKind::WrongSignature, "positive discriminant means three real roots");
  return CubicField(f, disc, isolate_real_root(f));
}

OrderElement CubicField::element(long c0, long c1, long c2) const { return {f_, c0, c1, c2}; }

OrderElement CubicField::element(const std::array<mpz_class, 3>& c) const { return {f_, c[0], c[1], c[2]}; }

bool CubicField::is_ramified(u64 p) const {
  return p > 0 && mpz_divisible_ui_p(disc_.get_mpz_t(), static_cast<unsigned long>(p));
}

std::vector<u64> CubicField::ramified_primes() const {
  std::vector<u64> out;
  for (auto [p, e] : factor_integer(disc_)) out.push_back(p);
  return out;
}

mpz_class CubicField::norm(const OrderElement& x) const {
  // determinant of multiplication by x on the basis 1, alpha, alpha^2
  OrderElement cols[3] = {x, x * alpha(), x * alpha() * alpha()};
  auto m = [&](int r, int c) -> const mpz_class& { return cols[c][r]; };
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

bool CubicField::is_unit(const OrderElement& x) const { return abs(norm(x)) == 1; }

int CubicField::real_sign(const OrderElement& x) const {
  require_same_field(f_, x.cubic());
  if (x.is_zero()) return 0;
  mpq_class lo = root_.first, hi = root_.second;
  while (true) {
    auto [l1, h1] = scale(x[1], lo, hi);
    auto [sq_lo, sq_hi] = square(lo, hi);
    auto [l2, h2] = scale(x[2], sq_lo, sq_hi);
    mpq_class low = mpq_class(x[0]) + l1 + l2;
    mpq_class high = mpq_class(x[0]) + h1 + h2;
    if (low > 0) return 1;
    if (high < 0) return -1;
    // refine a local copy; f(lo) < 0 < f(hi)
    mpq_class mid = (lo + hi) / 2;
    (eval_cubic(f_, mid) < 0 ? lo : hi) = mid;
  }
}

std::vector<PrimeIdeal> CubicField::split_prime(u64 p) const {
  auto coeffs = f_.coefficients();
  auto factors = factor_poly_mod_p(coeffs, p);
  std::vector<PrimeIdeal> out;
  for (const auto& pf : factors) {
    PrimeIdeal P;
    P.p = p;
    P.generator = pf.factor;
    P.residue_degree = pf.factor.degree();
    P.ramification = pf.multiplicity;
    P.residue_field = FqContext::create(p, pf.factor);
    out.push_back(std::move(P));
  }
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.residue_degree != b.residue_degree) return a.residue_degree > b.residue_degree;
    return symmetric_coeffs(a.generator) < symmetric_coeffs(b.generator);
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
  return out;
}

PrimeIdeal CubicField::prime_by_label(const std::string& label) const {
  auto parse_p = [&](const std::string& digits) -> u64 {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw Error(ErrorKind::UnknownPlace, "cannot parse place label '" + label + "'");
    u64 p = std::stoull(digits);
    if (!is_prime(p)) throw Error(ErrorKind::UnknownPlace, label + ": " + digits + " is not prime");
    return p;
  };
  if (label.size() >= 3 && label.front() == '(' && label.back() == ')') {
    u64 p = parse_p(label.substr(1, label.size() - 2));
    auto primes = split_prime(p);
    if (primes.size() != 1) throw Error(ErrorKind::UnknownPlace, label + " is not prime in K");
    return primes.front();
  }
  if (label.size() >= 3 && label[1] == '_') {
    int idx = std::string("PQR").find(label[0]);
    if (idx >= 0) {
      u64 p = parse_p(label.substr(2));
      auto primes = split_prime(p);
      if (idx < static_cast<int>(primes.size())) return primes[idx];
    }
  }
  throw Error(ErrorKind::UnknownPlace, "no prime labelled '" + label + "'");
}

PrimeIdeal CubicField::unique_degree_one_prime(u64 p) const {
  std::vector<PrimeIdeal> hits;
  for (auto& P : split_prime(p))
    if (P.residue_degree == 1) hits.push_back(P);
  if (hits.empty()) throw Error(ErrorKind::UnknownPlace, "no degree-1 prime above " + std::to_string(p));
  if (hits.size() > 1)
    throw Error(ErrorKind::DuplicateDegreeOnePrime, std::to_string(hits.size()) + " degree-1 primes above " + std::to_string(p));
  return hits.front();
}

FqElement CubicField::reduce_mod_prime(const OrderElement& x, const PrimeIdeal& P) const {
  require_same_field(f_, x.cubic());
  if (P.ramified()) throw Error(ErrorKind::RamifiedUnsupported, "reduction at ramified " + P.label());
  const mpz_class pz = to_mpz(P.p);
  PolyFp poly{P.p, {}};
  for (const auto& c : x.coords()) {
    mpz_class r = c % pz;
    if (r < 0) r += pz;
    poly.c.push_back(to_u64(r));
  }
  poly.trim();
  return P.residue_field->from_poly(poly);
}

int CubicField::element_valuation(const OrderElement& x, const PrimeIdeal& P) const {
  require_same_field(f_, x.cubic());
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "valuation of zero");
  if (P.ramified()) throw Error(ErrorKind::RamifiedUnsupported, "valuation at ramified " + P.label());

  const mpz_class pz = to_mpz(P.p);
  const auto fc = f_.coefficients();
  const std::array<mpz_class, 4> f_poly = {to_mpz(fc[0]), to_mpz(fc[1]), to_mpz(fc[2]), 1};
  const std::array<mpz_class, 4> df_poly = {to_mpz(fc[1]), 2 * to_mpz(fc[2]), 3, 0};
  const std::array<mpz_class, 4> x_poly = {x[0], x[1], x[2], 0};

  for (int precision = 4;; precision *= 2) {
    mpz_class modulus;
    mpz_pow_ui(modulus.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(precision));
    LocalRing ring(P.generator, modulus);
    const int rounds = ceil_log2(precision) + 1;

    auto inverse = [&](const Vec3& a) {
      // invert mod p in the residue field, then lift by b <- b(2 - ab)
      PolyFp reduced{P.p, {}};
      for (const auto& c : a) {
        mpz_class r = c % pz;
        reduced.c.push_back(to_u64(r));
      }
      reduced.trim();
      FqElement inv = P.residue_field->from_poly(reduced).inverse();
      Vec3 b = ring.reduce({to_mpz(inv.coeffs()[0]), to_mpz(inv.coeffs()[1]), to_mpz(inv.coeffs()[2]), 0, 0});
      for (int i = 0; i < rounds; ++i) b = ring.mul(b, ring.sub(ring.constant(2), ring.mul(a, b)));
      return b;
    };

    Vec3 theta = ring.variable();
    for (int i = 0; i < rounds; ++i) {
      Vec3 step = ring.mul(ring.eval(f_poly, theta), inverse(ring.eval(df_poly, theta)));
      theta = ring.sub(theta, step);
    }

    Vec3 value = ring.eval(x_poly, theta);
    int v = precision;
    for (int i = 0; i < ring.degree(); ++i) {
      if (value[i] != 0) v = std::min(v, mpz_valuation(value[i], P.p));
    }
    if (v < precision) return v;
  }
}

std::vector<IdealFactor> CubicField::ideal_factorization(const OrderElement& x) const {
  require_same_field(f_, x.cubic());
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "factorization of zero");
  std::vector<IdealFactor> out;
  for (auto [p, e] : factor_integer(norm(x))) {
    if (is_ramified(p))
      throw Error(ErrorKind::RamifiedUnsupported, "norm of " + x.str() + " is divisible by ramified prime " + std::to_string(p));
    int accounted = 0;
    for (auto& P : split_prime(p)) {
      int v = element_valuation(x, P);
      accounted += v * P.residue_degree;
      if (v > 0) out.push_back({P, v});
    }
    if (accounted != e) throw std::logic_error("ideal_factorization: valuations disagree with the norm at " + std::to_string(p));
  }
  return out;
}

// ---------------------------------------------------------------------------

FieldProfile field_preflight(std::span<const i64> coeffs, int witness_box) {
  const MonicCubic f = MonicCubic::from_coefficients(coeffs);
  require_irreducible(f);

  FieldProfile profile;
  profile.cubic = f;
  profile.discriminant = cubic_discriminant(f);
  profile.witness_box = witness_box;
  profile.non_galois = !mpz_perfect_square_p(profile.discriminant.get_mpz_t());
  if (!profile.non_galois) return profile;

  const CubicField K = CubicField::create(f);
  profile.minkowski_bound = minkowski_bound_upper(profile.discriminant);
  profile.class_number_one = profile.minkowski_bound < 2;
  // with one real place, -1 is a unit of negative sign, so every principal
  // ideal has a totally positive generator
  profile.narrow_class_trivial = profile.class_number_one;

  std::vector<std::array<long, 3>> box;
  for (long a = -witness_box; a <= witness_box; ++a)
    for (long b = -witness_box; b <= witness_box; ++b)
      for (long c = -witness_box; c <= witness_box; ++c) box.push_back({a, b, c});
  auto key = [](const std::array<long, 3>& v) {
    int top = v[2] != 0 ? 2 : (v[1] != 0 ? 1 : 0);
    return std::make_tuple(std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]), top, v);
  };
  std::stable_sort(box.begin(), box.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  for (const auto& v : box) {
    OrderElement u = K.element(v[0], v[1], v[2]);
    OrderElement u1 = u + K.one();
    if (u.is_zero() || u1.is_zero()) continue;
    if (K.is_unit(u) && K.is_unit(u1) && K.real_sign(u1) > 0) {
      profile.unit_witness = u;
      break;
    }
  }
  return profile;
}

}  // namespace adelic
