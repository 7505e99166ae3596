#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabcat/linalg.hpp"

namespace stabcat {

/// A product of generators; word {i, j} acts as action(i) * action(j).
using Word = std::vector<std::size_t>;

/// Finite-dimensional representation of the free algebra on g generators.
///
/// The name is a display label only. Two modules compare equal when they
/// have the same field, dimension and action matrices.
class Module {
 public:
  Module() : Module(PrimeField(2), 0, 1) {}
  /// Zero module.
  Module(PrimeField field, std::size_t dim, std::size_t generators);
  Module(std::string name, PrimeField field, std::size_t dim, std::vector<Mat> actions);

  static Module zero(PrimeField field, std::size_t generators) { return Module(field, 0, generators); }

  const std::string& name() const { return name_; }
  Module renamed(std::string name) const;
  PrimeField field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t generators() const { return actions_.size(); }
  const Mat& action(std::size_t i) const { return actions_.at(i); }
  const std::vector<Mat>& actions() const { return actions_; }
  bool is_zero() const { return dim_ == 0; }

  /// Content fingerprint: equal modules have equal keys.
  const std::string& key() const { return key_; }

  friend bool operator==(const Module& a, const Module& b) { return a.key_ == b.key_; }

 private:
  std::string name_;
  PrimeField field_{2};
  std::size_t dim_ = 0;
  std::vector<Mat> actions_;
  std::string key_;
};

Mat word_action(const Module& m, const Word& w);
/// Empty when every word acts as zero, otherwise a description of the first
/// violated relation.
std::optional<std::string> relation_violation(const Module& m, const std::vector<Word>& relations);

class NotIntertwining : public std::invalid_argument {
 public:
  NotIntertwining(const std::string& what, std::size_t generator)
      : std::invalid_argument(what), generator_(generator) {}
  std::size_t generator() const { return generator_; }

 private:
  std::size_t generator_;
};

/// A module homomorphism; the matrix is dst.dim x src.dim.
class Morphism {
 public:
  Morphism() = default;
  /// Throws NotIntertwining when some generator does not commute.
  Morphism(Module src, Module dst, Mat mat);

  static Morphism identity(const Module& m);
  static Morphism zero(const Module& src, const Module& dst);

  const Module& src() const { return src_; }
  const Module& dst() const { return dst_; }
  const Mat& mat() const { return mat_; }
  bool is_zero() const { return mat_.is_zero(); }

  Morphism operator-() const;
  Morphism scaled(std::uint32_t s) const;

  friend Morphism operator+(const Morphism& a, const Morphism& b);
  friend Morphism operator-(const Morphism& a, const Morphism& b);
  /// Composition g * f means "f first, then g".
  friend Morphism operator*(const Morphism& g, const Morphism& f);
  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.mat_ == b.mat_;
  }

 private:
  struct Trusted {};
  Morphism(Module src, Module dst, Mat mat, Trusted);
  friend Morphism trusted_morphism(Module src, Module dst, Mat mat);

  Module src_;
  Module dst_;
  Mat mat_;
};

/// Builds a morphism without the intertwining check. For results of
/// constructions that intertwine by construction.
Morphism trusted_morphism(Module src, Module dst, Mat mat);

/// Canonical basis of Hom(src, dst) plus a fast coordinate map.
struct HomSpace {
  Module src;
  Module dst;
  std::vector<Morphism> basis;

  std::size_t dim() const { return basis.size(); }
  /// Coordinates of a matrix known to lie in the span of the basis.
  Mat coordinates(const Mat& m) const;
  /// Linear combination of basis elements; coeffs is dim() x 1.
  Morphism combine(const Mat& coeffs) const;
  /// Columns vec(basis_i) stacked; (src.dim*dst.dim) x dim().
  const Mat& vec_basis() const { return vec_basis_; }

  Mat vec_basis_;
  std::vector<std::size_t> coord_rows_;
  Mat coord_inverse_;
};

/// Memoized and thread-safe. The basis is the canonical kernel basis of the
/// intertwining system in the row-major vec(X) unknowns.
std::shared_ptr<const HomSpace> hom_space(const Module& m, const Module& n);
std::vector<Morphism> hom_basis(const Module& m, const Module& n);

struct KernelResult {
  Module obj;
  Morphism incl;
  /// The unique u' with incl * u' = u, for u with f * u = 0.
  Morphism factor(const Morphism& u) const;
};

struct CokernelResult {
  Module obj;
  Morphism proj;
  /// The unique v' with v' * proj = v, for v with v * f = 0.
  Morphism factor(const Morphism& v) const;
};

KernelResult kernel(const Morphism& f);
CokernelResult cokernel(const Morphism& f);

struct ImageResult {
  Module obj;
  Morphism coimage;  // src -> im, surjective
  Morphism incl;     // im -> dst
};
ImageResult image(const Morphism& f);

struct DirectSum {
  Module obj;
  std::vector<Morphism> in;
  std::vector<Morphism> out;
};
DirectSum direct_sum(const Module& a, const Module& b);
DirectSum direct_sum(const std::vector<Module>& parts, PrimeField field, std::size_t generators);
Module power(const Module& m, std::size_t k);

/// (f_1, ..., f_k): A_1 + ... + A_k -> B
Morphism row_morphism(const std::vector<Morphism>& parts);
/// (f_1; ...; f_k): A -> B_1 + ... + B_k
Morphism column_morphism(const std::vector<Morphism>& parts);
Morphism block_diag(const Morphism& a, const Morphism& b);

struct PullbackResult {
  Module obj;
  Morphism q1;  // PB -> src(f)
  Morphism q2;  // PB -> src(p)
  KernelResult ker;  // kernel of (f, -p)
  /// Unique m with q1 m = u1, q2 m = u2 whenever f u1 = p u2.
  Morphism mediate(const Morphism& u1, const Morphism& u2) const;
};
PullbackResult pullback(const Morphism& f, const Morphism& p);

struct PushoutResult {
  Module obj;
  Morphism j1;  // dst(f) -> PO
  Morphism j2;  // dst(i) -> PO
  CokernelResult coker;  // cokernel of (f; -i)
  /// Unique m with m j1 = v1, m j2 = v2 whenever v1 f = v2 i.
  Morphism mediate(const Morphism& v1, const Morphism& v2) const;
};
PushoutResult pushout(const Morphism& f, const Morphism& i);

bool is_mono(const Morphism& f);
bool is_epi(const Morphism& f);

struct ShortExactSeq {
  Morphism left;
  Morphism right;
};
/// Empty when 0 -> A -> B -> C -> 0 is exact, else the failing condition.
std::optional<std::string> exactness_defect(const ShortExactSeq& s);

/// Some H with via * H = target, or none. H ranges over module maps
/// src(target) -> src(via).
std::optional<Morphism> lift_through(const Morphism& via, const Morphism& target);
/// Some H with H * via = target, or none. H ranges over dst(via) -> dst(target).
std::optional<Morphism> extend_through(const Morphism& via, const Morphism& target);

/// Affine solution set of via * H = target: a particular H and a basis of
/// the homogeneous solutions.
struct LiftSet {
  Morphism particular;
  std::vector<Morphism> homogeneous;
};
std::optional<LiftSet> all_lifts(const Morphism& via, const Morphism& target);

enum class Decision { yes, no, undecided };
const char* to_string(Decision d);

struct IsoResult {
  Decision decision = Decision::undecided;
  std::optional<Morphism> iso;
  std::string method;
};

/// Ambient isomorphism test. Exhaustive over Hom when p <= 3 and the hom
/// dimension is at most 8; otherwise invariants plus a seeded random search.
IsoResult module_iso(const Module& a, const Module& b, std::uint64_t seed = 0);
bool is_iso(const Morphism& f);

/// Ranks of all words up to the given length, in a fixed order.
std::vector<std::size_t> word_rank_profile(const Module& m, std::size_t max_len);

}  // namespace stabcat
