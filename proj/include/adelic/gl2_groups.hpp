#pragma once

// Finite subgroups of GL2(Z/nZ) and the few group-theoretic operations the
// certifier needs. Matrices are packed into 64-bit keys, so n < 2^16.

#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "adelic/residue_arith.hpp"

namespace adelic {

/// [[a, b], [c, d]] over Z/nZ. Need not be invertible (conj_module_span works
/// in the full matrix ring).
class Mat2 {
 public:
  Mat2() = default;
  Mat2(i64 a, i64 b, i64 c, i64 d, u64 n);

  static Mat2 identity(u64 n) { return Mat2(1, 0, 0, 1, n); }
  static Mat2 from_key(u64 key, u64 n);

  u64 modulus() const { return n_; }
  u64 a() const { return e_[0]; }
  u64 b() const { return e_[1]; }
  u64 c() const { return e_[2]; }
  u64 d() const { return e_[3]; }
  ZModN entry(int i) const { return ZModN(static_cast<i64>(e_[i]), n_); }
  const std::array<u64, 4>& entries() const { return e_; }

  u64 key() const { return e_[0] | e_[1] << 16 | e_[2] << 32 | e_[3] << 48; }
  u64 det() const;
  bool invertible() const;
  bool is_identity() const { return e_[0] == 1 % n_ && e_[1] == 0 && e_[2] == 0 && e_[3] == 1 % n_; }

  Mat2 operator*(const Mat2& o) const;
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 scaled(u64 k) const;
  /// Throws NotInvertible.
  Mat2 inverse() const;
  /// Entries reduced mod m; m must divide n.
  Mat2 reduce(u64 m) const;

  std::string str() const;
  friend bool operator==(const Mat2&, const Mat2&) = default;

 private:
  u64 n_ = 1;
  std::array<u64, 4> e_{};
};

/// Parity of the action on the three nonzero vectors of F_2^2. Throws OddModulus.
int sgn(const Mat2& m);

/// |GL2(Z/nZ)| as the product over l^k || n of l^(4(k-1)) (l^2 - 1)(l^2 - l).
u64 gl2_order(u64 n);
/// Euler phi.
u64 euler_phi(u64 n);
/// A small generating set of (Z/nZ)^*.
std::vector<u64> unit_generators(u64 n);
/// T, S and diag(u, 1) for u in unit_generators(n).
std::vector<Mat2> gl2_generators(u64 n);
/// Uniform over GL2(Z/nZ) by rejection.
Mat2 random_gl2(u64 n, std::mt19937_64& rng);

inline constexpr u64 kDefaultClosureCap = 10'000'000;

/// Subgroup of GL2(Z/nZ) given by generators. The element set is computed on
/// first use (thread-safe) and shared between copies.
class SubgroupZn {
 public:
  SubgroupZn(u64 n, std::vector<Mat2> generators, u64 cap = kDefaultClosureCap);
  /// Wraps a set already known to be a subgroup; a generating set is chosen
  /// greedily and the closure is checked against the set.
  static SubgroupZn from_elements(u64 n, std::vector<u64> keys, u64 cap = kDefaultClosureCap);
  static SubgroupZn full(u64 n) { return SubgroupZn(n, gl2_generators(n)); }

  u64 modulus() const { return n_; }
  const std::vector<Mat2>& generators() const { return gens_; }
  /// Sorted keys of every element. Throws CapExceeded.
  const std::vector<u64>& elements() const;
  u64 order() const { return elements().size(); }
  bool contains(const Mat2& m) const;
  bool is_full() const { return order() == gl2_order(n_); }
  /// Image under reduction mod m (m | n).
  SubgroupZn reduce(u64 m) const;

  friend bool operator==(const SubgroupZn& a, const SubgroupZn& b) {
    return a.n_ == b.n_ && a.elements() == b.elements();
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<u64> elements;
  };

  u64 n_;
  std::vector<Mat2> gens_;
  u64 cap_;
  std::shared_ptr<Cache> cache_;
};

/// Exact [H, H]: normal closure in H of the commutators of generators.
SubgroupZn commutator_subgroup(const SubgroupZn& H);
/// Number of index-2 subgroups: |{g : g^2 in H'}| / |H'| - 1.
u64 count_index2_subgroups(const SubgroupZn& H);

/// Image of (sgn, det) as a set of pairs; n even.
struct SignDetImage {
  u64 n = 0;
  /// Sorted pairs (sgn, det).
  std::vector<std::pair<int, u64>> pairs;
  bool full() const { return pairs.size() == 2 * euler_phi(n); }
};
SignDetImage sign_det_image(const SubgroupZn& H);

/// Image of det as a sorted list of units.
std::vector<u64> det_image(const SubgroupZn& H);

struct ConjugationSpan {
  int dimension = 0;
  /// Row-reduced basis of the span, as (a, b, c, d) tuples mod ell.
  std::vector<std::array<u64, 4>> basis;
  bool full() const { return dimension == 4; }
};
/// F_ell-span of { g C g^-1 : g in GL2(F_ell) } inside M2(F_ell); ell <= 13.
ConjugationSpan conj_module_span(const Mat2& C, u64 ell);

/// A character (Z/nZ)^* -> {+1, -1}, stored as a value table.
class QuadraticCharacter {
 public:
  static QuadraticCharacter trivial(u64 n);
  /// Defined by values on a generating set of (Z/nZ)^*. Throws
  /// InconsistentCharacter if the values are not multiplicative, and Config if
  /// the listed units do not generate.
  static QuadraticCharacter from_generator_values(u64 n, const std::vector<std::pair<u64, int>>& values);
  /// Mod 8 character with kernel {1, k}, k in {3, 5, 7}.
  static QuadraticCharacter mod8_with_kernel(u64 k);

  u64 modulus() const { return n_; }
  int operator()(u64 unit) const;
  bool is_trivial() const;
  /// The same character viewed mod m, where n | m.
  QuadraticCharacter pullback(u64 m) const;

 private:
  u64 n_ = 1;
  std::vector<signed char> table_;
};

/// { g : sgn(g) = chi(det g) }. Throws OddModulus.
SubgroupZn serre_subgroup(const QuadraticCharacter& chi);

enum class LiftClause {
  /// l = 2 and H surjects onto GL2(Z/8).
  TwoAdicMod8,
  /// l = 2, H surjects onto GL2(Z/4), and (sgn, det) is onto {+-1} x Z_2^*.
  TwoAdicMod4SignDet,
  /// l odd and H surjects onto GL2(Z/l^2).
  OddSquare,
  /// l >= 5, H surjects onto GL2(F_l), det(H) = Z_l^*.
  LargeDet,
};
const char* to_string(LiftClause c);

struct LiftEvidence {
  u64 ell = 0;
  LiftClause clause = LiftClause::OddSquare;
  bool surjective_mod_ell = false;
  bool surjective_mod_ell_squared = false;
  bool surjective_mod_4 = false;
  bool surjective_mod_8 = false;
  bool det_surjective = false;
  bool sign_det_surjective = false;
};

struct LiftStep {
  u64 ell = 0;
  LiftClause clause;
  std::string statement;
};

/// Checks the evidence carries exactly what the named clause needs and
/// returns the certificate step. Throws EvidenceMismatch.
LiftStep lift_predicate(const LiftEvidence& ev);

}  // namespace adelic
