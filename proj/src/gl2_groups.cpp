#include "adelic/gl2_groups.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "adelic/error.hpp"

namespace adelic {

namespace {

constexpr u64 kMaxModulus = 1u << 16;

std::vector<std::pair<u64, int>> factor_small(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int k = 0;
    while (n % p == 0) n /= p, ++k;
    out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// BFS closure of the identity under right multiplication by generators.
std::vector<u64> close(u64 n, const std::vector<Mat2>& gens, u64 cap) {
  const Mat2 id = Mat2::identity(n);
  std::unordered_set<u64> seen{id.key()};
  std::deque<Mat2> queue{id};
  while (!queue.empty()) {
    Mat2 x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Mat2 y = x * g;
      if (seen.insert(y.key()).second) {
        if (seen.size() > cap)
          throw Error(ErrorKind::CapExceeded, fmt::format("closure mod {} exceeds {} elements", n, cap));
        queue.push_back(y);
      }
    }
  }
  std::vector<u64> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b * a.inverse() * b.inverse(); }

}  // namespace

Mat2::Mat2(i64 a, i64 b, i64 c, i64 d, u64 n) : n_(n) {
  if (n == 0 || n >= kMaxModulus) throw Error(ErrorKind::Overflow, fmt::format("modulus {} out of range", n));
  e_ = {mod_floor(a, n), mod_floor(b, n), mod_floor(c, n), mod_floor(d, n)};
}

Mat2 Mat2::from_key(u64 key, u64 n) {
  Mat2 m;
  m.n_ = n;
  for (int i = 0; i < 4; ++i) m.e_[i] = (key >> (16 * i)) & 0xffff;
  return m;
}

u64 Mat2::det() const { return (e_[0] * e_[3] + n_ * n_ - e_[1] * e_[2]) % n_; }

bool Mat2::invertible() const { return std::gcd(det(), n_) == 1; }

Mat2 Mat2::operator*(const Mat2& o) const {
  Mat2 r;
  r.n_ = n_;
  r.e_ = {(e_[0] * o.e_[0] + e_[1] * o.e_[2]) % n_, (e_[0] * o.e_[1] + e_[1] * o.e_[3]) % n_,
          (e_[2] * o.e_[0] + e_[3] * o.e_[2]) % n_, (e_[2] * o.e_[1] + e_[3] * o.e_[3]) % n_};
  return r;
}

Mat2 Mat2::operator+(const Mat2& o) const {
  Mat2 r = *this;
  for (int i = 0; i < 4; ++i) r.e_[i] = (e_[i] + o.e_[i]) % n_;
  return r;
}

Mat2 Mat2::operator-(const Mat2& o) const {
  Mat2 r = *this;
  for (int i = 0; i < 4; ++i) r.e_[i] = (e_[i] + n_ - o.e_[i]) % n_;
  return r;
}

Mat2 Mat2::scaled(u64 k) const {
  Mat2 r = *this;
  for (auto& x : r.e_) x = x * (k % n_) % n_;
  return r;
}

Mat2 Mat2::inverse() const {
  u64 di = inverse_mod(det(), n_);
  Mat2 adj(static_cast<i64>(e_[3]), -static_cast<i64>(e_[1]), -static_cast<i64>(e_[2]), static_cast<i64>(e_[0]), n_);
  return adj.scaled(di);
}

Mat2 Mat2::reduce(u64 m) const {
  if (m == 0 || n_ % m) throw std::invalid_argument(fmt::format("{} does not divide {}", m, n_));
  return Mat2(static_cast<i64>(e_[0]), static_cast<i64>(e_[1]), static_cast<i64>(e_[2]), static_cast<i64>(e_[3]), m);
}

std::string Mat2::str() const { return fmt::format("[[{}, {}], [{}, {}]] mod {}", e_[0], e_[1], e_[2], e_[3], n_); }

int sgn(const Mat2& m) {
  if (m.modulus() % 2) throw Error(ErrorKind::OddModulus, fmt::format("sgn needs an even modulus, got {}", m.modulus()));
  Mat2 r = m.reduce(2);
  auto index = [](u64 x, u64 y) { return x == 1 && y == 0 ? 0 : (x == 0 ? 1 : 2); };
  // images of (1,0), (0,1), (1,1)
  int perm[3] = {index(r.a(), r.c()), index(r.b(), r.d()), index((r.a() + r.b()) % 2, (r.c() + r.d()) % 2)};
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) inversions += perm[i] > perm[j];
  return inversions % 2 ? -1 : 1;
}

u64 gl2_order(u64 n) {
  u64 order = 1;
  for (auto [l, k] : factor_small(n)) {
    for (int i = 0; i < 4 * (k - 1); ++i) order *= l;
    order *= (l * l - 1) * (l * l - l);
  }
  return order;
}

u64 euler_phi(u64 n) {
  u64 phi = n;
  for (auto [p, k] : factor_small(n)) phi = phi / p * (p - 1);
  return phi;
}

std::vector<u64> unit_generators(u64 n) {
  std::vector<u64> gens;
  std::vector<char> in(n, 0);
  in[1 % n] = 1;
  std::vector<u64> members{1 % n};
  for (u64 u = 2; u < n; ++u) {
    if (in[u] || std::gcd(u, n) != 1) continue;
    gens.push_back(u);
    // extend the subgroup by multiplying every member by powers of u
    std::vector<u64> next = members;
    for (size_t i = 0; i < next.size(); ++i) {
      u64 y = next[i] * u % n;
      if (!in[y]) {
        in[y] = 1;
        next.push_back(y);
      }
    }
    members = std::move(next);
  }
  return gens;
}

std::vector<Mat2> gl2_generators(u64 n) {
  std::vector<Mat2> gens{Mat2(1, 1, 0, 1, n), Mat2(0, -1, 1, 0, n)};
  for (u64 u : unit_generators(n)) gens.emplace_back(static_cast<i64>(u), 0, 0, 1, n);
  return gens;
}

Mat2 random_gl2(u64 n, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> d(0, static_cast<i64>(n) - 1);
  for (;;) {
    Mat2 m(d(rng), d(rng), d(rng), d(rng), n);
    if (m.invertible()) return m;
  }
}

SubgroupZn::SubgroupZn(u64 n, std::vector<Mat2> generators, u64 cap)
    : n_(n), gens_(std::move(generators)), cap_(cap), cache_(std::make_shared<Cache>()) {
  for (const auto& g : gens_) {
    if (g.modulus() != n_) throw std::invalid_argument("generator has the wrong modulus");
    if (!g.invertible()) throw Error(ErrorKind::NotInvertible, g.str() + " is not in GL2");
  }
}

SubgroupZn SubgroupZn::from_elements(u64 n, std::vector<u64> keys, u64 cap) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<Mat2> gens;
  std::vector<u64> current = close(n, gens, cap);
  for (u64 k : keys) {
    if (std::binary_search(current.begin(), current.end(), k)) continue;
    gens.push_back(Mat2::from_key(k, n));
    current = close(n, gens, cap);
  }
  if (current != keys) throw std::logic_error("element set is not a subgroup");
  SubgroupZn H(n, std::move(gens), cap);
  std::call_once(H.cache_->once, [&] { H.cache_->elements = std::move(current); });
  return H;
}

const std::vector<u64>& SubgroupZn::elements() const {
  std::call_once(cache_->once, [this] { cache_->elements = close(n_, gens_, cap_); });
  return cache_->elements;
}

bool SubgroupZn::contains(const Mat2& m) const {
  const auto& e = elements();
  return m.modulus() == n_ && std::binary_search(e.begin(), e.end(), m.key());
}

SubgroupZn SubgroupZn::reduce(u64 m) const {
  std::vector<Mat2> gens;
  for (const auto& g : gens_) gens.push_back(g.reduce(m));
  return SubgroupZn(m, std::move(gens), cap_);
}

SubgroupZn commutator_subgroup(const SubgroupZn& H) {
  const u64 n = H.modulus();
  const auto& hg = H.generators();
  std::vector<Mat2> gens;
  for (size_t i = 0; i < hg.size(); ++i)
    for (size_t j = i + 1; j < hg.size(); ++j) {
      Mat2 c = commutator(hg[i], hg[j]);
      if (!c.is_identity()) gens.push_back(c);
    }
  SubgroupZn N(n, gens);
  // normal closure: add conjugates until every generator conjugate stays inside
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < gens.size() && !changed; ++i)
      for (const auto& g : hg) {
        Mat2 y = g * gens[i] * g.inverse();
        if (!N.contains(y)) {
          gens.push_back(y);
          N = SubgroupZn(n, gens);
          changed = true;
          break;
        }
      }
  }
  return N;
}

u64 count_index2_subgroups(const SubgroupZn& H) {
  const SubgroupZn D = commutator_subgroup(H);
  const u64 n = H.modulus();
  u64 roots = 0;
  for (u64 k : H.elements()) {
    Mat2 g = Mat2::from_key(k, n);
    roots += D.contains(g * g);
  }
  return roots / D.order() - 1;
}

SignDetImage sign_det_image(const SubgroupZn& H) {
  const u64 n = H.modulus();
  if (n % 2) throw Error(ErrorKind::OddModulus, fmt::format("sign_det_image needs an even modulus, got {}", n));
  std::vector<std::pair<int, u64>> gens;
  for (const auto& g : H.generators()) gens.emplace_back(sgn(g), g.det());
  std::vector<std::pair<int, u64>> out{{1, 1 % n}};
  for (size_t i = 0; i < out.size(); ++i)
    for (auto [s, d] : gens) {
      std::pair<int, u64> y{out[i].first * s, out[i].second * d % n};
      if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
    }
  std::sort(out.begin(), out.end());
  return SignDetImage{n, std::move(out)};
}

std::vector<u64> det_image(const SubgroupZn& H) {
  const u64 n = H.modulus();
  std::vector<char> in(n, 0);
  std::vector<u64> out{1 % n};
  in[1 % n] = 1;
  for (size_t i = 0; i < out.size(); ++i)
    for (const auto& g : H.generators()) {
      u64 y = out[i] * g.det() % n;
      if (!in[y]) in[y] = 1, out.push_back(y);
    }
  std::sort(out.begin(), out.end());
  return out;
}

ConjugationSpan conj_module_span(const Mat2& C, u64 ell) {
  if (!is_prime(ell)) throw Error(ErrorKind::NotPrime, fmt::format("{} is not prime", ell));
  if (ell > 13) throw std::invalid_argument("conj_module_span enumerates GL2(F_l) and needs l <= 13");
  const Mat2 c = C.reduce(ell);
  ConjugationSpan span;
  std::vector<int> pivots;
  auto insert = [&](std::array<u64, 4> v) {
    for (size_t r = 0; r < span.basis.size(); ++r) {
      u64 f = v[pivots[r]];
      if (f == 0) continue;
      for (int k = 0; k < 4; ++k) v[k] = (v[k] + (ell - f) * span.basis[r][k]) % ell;
    }
    int piv = -1;
    for (int k = 0; k < 4 && piv < 0; ++k)
      if (v[k]) piv = k;
    if (piv < 0) return;
    u64 inv = inverse_mod(v[piv], ell);
    for (auto& x : v) x = x * inv % ell;
    for (auto& row : span.basis) {
      u64 f = row[piv];
      if (f)
        for (int k = 0; k < 4; ++k) row[k] = (row[k] + (ell - f) * v[k]) % ell;
    }
    span.basis.push_back(v);
    pivots.push_back(piv);
  };
  for (u64 k = 0; k < ell * ell * ell * ell && span.basis.size() < 4; ++k) {
    Mat2 g(static_cast<i64>(k % ell), static_cast<i64>(k / ell % ell), static_cast<i64>(k / (ell * ell) % ell),
           static_cast<i64>(k / (ell * ell * ell)), ell);
    if (!g.invertible()) continue;
    insert((g * c * g.inverse()).entries());
  }
  // rows in pivot order
  std::vector<size_t> order(span.basis.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return pivots[x] < pivots[y]; });
  std::vector<std::array<u64, 4>> sorted;
  for (size_t i : order) sorted.push_back(span.basis[i]);
  span.basis = std::move(sorted);
  span.dimension = static_cast<int>(span.basis.size());
  return span;
}

QuadraticCharacter QuadraticCharacter::trivial(u64 n) {
  QuadraticCharacter chi;
  chi.n_ = n;
  chi.table_.assign(n, 0);
  for (u64 u = 0; u < n; ++u)
    if (std::gcd(u, n) == 1) chi.table_[u] = 1;
  return chi;
}

QuadraticCharacter QuadraticCharacter::from_generator_values(u64 n, const std::vector<std::pair<u64, int>>& values) {
  QuadraticCharacter chi;
  chi.n_ = n;
  chi.table_.assign(n, 0);
  for (auto [u, v] : values) {
    if (std::gcd(u % n, n) != 1) throw Error(ErrorKind::NotInvertible, fmt::format("{} is not a unit mod {}", u, n));
    if (v != 1 && v != -1) throw Error(ErrorKind::InconsistentCharacter, "character values must be +1 or -1");
  }
  std::vector<u64> seen{1 % n};
  chi.table_[1 % n] = 1;
  for (size_t i = 0; i < seen.size(); ++i)
    for (auto [u, v] : values) {
      u64 y = seen[i] * (u % n) % n;
      int val = chi.table_[seen[i]] * v;
      if (chi.table_[y] == 0) {
        chi.table_[y] = static_cast<signed char>(val);
        seen.push_back(y);
      } else if (chi.table_[y] != val) {
        throw Error(ErrorKind::InconsistentCharacter, fmt::format("values force chi({}) to be both signs mod {}", y, n));
      }
    }
  if (seen.size() != euler_phi(n))
    throw Error(ErrorKind::Config, fmt::format("listed units do not generate (Z/{}Z)^*", n));
  return chi;
}

QuadraticCharacter QuadraticCharacter::mod8_with_kernel(u64 k) {
  if (k != 3 && k != 5 && k != 7) throw std::invalid_argument("kernel element must be 3, 5 or 7");
  u64 other = k == 3 ? 5 : 3;
  return from_generator_values(8, {{k, 1}, {other, -1}});
}

int QuadraticCharacter::operator()(u64 unit) const {
  int v = table_[unit % n_];
  if (v == 0) throw Error(ErrorKind::NotInvertible, fmt::format("{} is not a unit mod {}", unit, n_));
  return v;
}

bool QuadraticCharacter::is_trivial() const {
  return std::none_of(table_.begin(), table_.end(), [](signed char v) { return v < 0; });
}

QuadraticCharacter QuadraticCharacter::pullback(u64 m) const {
  if (m % n_) throw std::invalid_argument(fmt::format("{} does not divide {}", n_, m));
  QuadraticCharacter chi;
  chi.n_ = m;
  chi.table_.assign(m, 0);
  for (u64 u = 0; u < m; ++u)
    if (std::gcd(u, m) == 1) chi.table_[u] = table_[u % n_];
  return chi;
}

SubgroupZn serre_subgroup(const QuadraticCharacter& chi) {
  const u64 n = chi.modulus();
  if (n % 2) throw Error(ErrorKind::OddModulus, fmt::format("Serre subgroups need an even modulus, got {}", n));
  const auto G = SubgroupZn::full(n);
  std::vector<u64> keep;
  for (u64 k : G.elements()) {
    Mat2 g = Mat2::from_key(k, n);
    if (sgn(g) == chi(g.det())) keep.push_back(k);
  }
  return SubgroupZn::from_elements(n, std::move(keep));
}

const char* to_string(LiftClause c) {
  switch (c) {
    case LiftClause::TwoAdicMod8: return "two_adic_mod8";
    case LiftClause::TwoAdicMod4SignDet: return "two_adic_mod4_sign_det";
    case LiftClause::OddSquare: return "odd_square";
    case LiftClause::LargeDet: return "large_det";
  }
  return "?";
}

LiftStep lift_predicate(const LiftEvidence& ev) {
  auto mismatch = [&](const std::string& why) {
    return Error(ErrorKind::EvidenceMismatch, fmt::format("clause {} at l = {}: {}", to_string(ev.clause), ev.ell, why));
  };
  if (!is_prime(ev.ell)) throw mismatch("l is not prime");
  const u64 l = ev.ell;
  std::string statement;
  switch (ev.clause) {
    case LiftClause::TwoAdicMod8:
      if (l != 2) throw mismatch("needs l = 2");
      if (!ev.surjective_mod_8) throw mismatch("surjectivity mod 8 not established");
      statement = "H surjects onto GL2(Z/8), so H_2 = GL2(Z_2)";
      break;
    case LiftClause::TwoAdicMod4SignDet:
      if (l != 2) throw mismatch("needs l = 2");
      if (!ev.surjective_mod_4) throw mismatch("surjectivity mod 4 not established");
      if (!ev.sign_det_surjective) throw mismatch("(sgn, det) surjectivity not established");
      statement = "H surjects onto GL2(Z/4) and (sgn, det)(H) = {+-1} x Z_2^*, so H_2 = GL2(Z_2)";
      break;
    case LiftClause::OddSquare:
      if (l == 2) throw mismatch("needs odd l");
      if (!ev.surjective_mod_ell_squared) throw mismatch("surjectivity mod l^2 not established");
      statement = fmt::format("H surjects onto GL2(Z/{}), so H_{} = GL2(Z_{})", l * l, l, l);
      break;
    case LiftClause::LargeDet:
      if (l < 5) throw mismatch("needs l >= 5");
      if (!ev.surjective_mod_ell) throw mismatch("surjectivity mod l not established");
      if (!ev.det_surjective) throw mismatch("det surjectivity not established");
      statement = fmt::format("H surjects onto GL2(F_{}) and det(H) = Z_{}^*, so H_{} = GL2(Z_{})", l, l, l, l);
      break;
  }
  return LiftStep{l, ev.clause, statement};
}

}  // namespace adelic
