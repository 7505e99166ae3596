#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "stabcat/module.hpp"

namespace stabcat {

/// p: X_C -> C with X_C = W^m, plus its kernel iota: K_C -> X_C.
struct RightApprox {
  Module x;
  Morphism p;
  Module k;
  Morphism iota;
  std::shared_ptr<const HomSpace> components;  // Hom(W, C)
  /// Basis elements kept in p = (h_1, ..., h_m): those not already reached
  /// from earlier kept ones through End(W).
  std::vector<Morphism> parts;
};

/// nu: C -> X^C with X^C = W^m, plus its cokernel pi: X^C -> K^C.
struct LeftApprox {
  Module x;
  Morphism nu;
  Module k;
  Morphism pi;
  std::shared_ptr<const HomSpace> components;  // Hom(C, W)
  std::vector<Morphism> parts;  // nu = (h_1; ...; h_m), chosen as for RightApprox
};

/// Hom(src, dst) split into the subspace of maps factoring through X and a
/// complement that represents the stable hom space.
struct StableHomSpace {
  std::shared_ptr<const HomSpace> hom;
  Mat factoring;   // hom-coordinate columns spanning the X-factoring maps
  Mat projection;  // stable-dim x hom-dim, kills the factoring subspace
  std::vector<Morphism> stable_basis;

  std::size_t dim() const { return stable_basis.size(); }
  Mat stable_coordinates(const Morphism& f) const { return projection * hom->coordinates(f.mat()); }
  /// Representative of a stable coordinate vector.
  Morphism representative(const Mat& coords) const;
};

/// Row-reduced spanning set of the maps src -> dst that factor through X,
/// as flattened (row-major) matrices.
struct FactoringSpace {
  Mat reduced;
  std::vector<std::size_t> pivots;
  bool contains(const Mat& m) const;
};

/// The subcategory X = add(W) together with canonically assigned
/// approximations. Records are built on demand, cached, and identical for
/// identical modules regardless of query order.
///
/// The assignment generator is normally W itself. A different one yields a
/// deliberately inconsistent context, used only for negative controls:
/// approximations are then built from it while stable equality still means
/// factoring through add(W).
class ApproxContext {
 public:
  ApproxContext(Module w, std::vector<Module> universe);
  ApproxContext(Module w, Module assignment_generator, std::vector<Module> universe);
  ApproxContext(const ApproxContext&) = delete;
  ApproxContext& operator=(const ApproxContext&) = delete;

  const Module& generator() const { return w_; }
  const Module& assignment_generator() const { return assign_; }
  bool consistent() const { return w_ == assign_; }
  const std::vector<Module>& universe() const { return universe_; }
  PrimeField field() const { return w_.field(); }
  std::size_t generators() const { return w_.generators(); }

  const RightApprox& right(const Module& c) const;
  const LeftApprox& left(const Module& c) const;
  const StableHomSpace& stable_hom(const Module& m, const Module& n) const;
  const FactoringSpace& factoring(const Module& m, const Module& n) const;

  /// Some H: src(f) -> X_C with p_C H = f, with the homogeneous solutions.
  std::optional<LiftSet> lift_through_right(const Module& c, const Morphism& f) const;
  /// Some Y: X^C -> dst(f) with Y nu^C = f, with the homogeneous solutions.
  std::optional<LiftSet> extend_through_left(const Module& c, const Morphism& f) const;

 private:
  Module w_;
  Module assign_;
  std::vector<Module> universe_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::unique_ptr<RightApprox>> right_;
  mutable std::map<std::string, std::unique_ptr<LeftApprox>> left_;
  mutable std::map<std::pair<std::string, std::string>, std::unique_ptr<StableHomSpace>> stable_;
  mutable std::map<std::pair<std::string, std::string>, std::unique_ptr<FactoringSpace>> factoring_;
};

using ContextPtr = std::shared_ptr<const ApproxContext>;

/// Builds the context and assigns records for every universe member.
std::shared_ptr<ApproxContext> build_context(Module w, std::vector<Module> universe);

/// A morphism viewed in the stable category. Equality is stable equality.
class StableMorphism {
 public:
  StableMorphism(Morphism rep, const ApproxContext& ctx) : rep_(std::move(rep)), ctx_(&ctx) {}
  const Morphism& rep() const { return rep_; }
  const ApproxContext& context() const { return *ctx_; }
  friend bool operator==(const StableMorphism& a, const StableMorphism& b);

 private:
  Morphism rep_;
  const ApproxContext* ctx_;
};

bool is_X_epic(const Morphism& f, const ApproxContext& ctx);
bool is_X_monic(const Morphism& f, const ApproxContext& ctx);

/// (g, p_A): B + X_A -> A.
Morphism make_special_epic(const Morphism& g, const ApproxContext& ctx);
/// (g; nu^A): A -> B + X^A.
Morphism make_special_monic(const Morphism& g, const ApproxContext& ctx);

/// True iff f - g factors through X. Throws on non-parallel input.
bool stable_equal(const Morphism& f, const Morphism& g, const ApproxContext& ctx);
bool stably_zero(const Morphism& f, const ApproxContext& ctx);
std::size_t stable_hom_dim(const Module& m, const Module& n, const ApproxContext& ctx);
/// The object is zero in C/X, i.e. its identity factors through X.
bool is_stably_zero(const Module& m, const ApproxContext& ctx);

/// A stable inverse of f if f is an isomorphism in C/X. A one-sided inverse
/// is solved for on the smaller side, then checked on the other side.
std::optional<Morphism> stable_inverse(const Morphism& f, const ApproxContext& ctx);
bool is_stable_iso(const Morphism& f, const ApproxContext& ctx);

/// Isomorphism in C/X. Exhaustive over the stable hom space when p <= 3 and
/// its dimension is at most 12; otherwise a seeded random search that may
/// return undecided.
IsoResult stable_iso(const Module& a, const Module& b, const ApproxContext& ctx, std::uint64_t seed = 0);

/// dim Ext^1(m, n) from the assigned presentation 0 -> K_m -> X_m -> m -> 0.
/// Throws "presentation unavailable" if p_m is not surjective.
std::size_t ext1_dim(const Module& m, const Module& n, const ApproxContext& ctx);

/// k-linear duality: actions transposed, so words act in reverse order.
Module dual_module(const Module& m);
/// f^T: D(dst) -> D(src)
Morphism dual_morphism(const Morphism& f);
/// Context for D(W) over the dual universe.
std::shared_ptr<ApproxContext> dual_context(const ApproxContext& ctx);

}  // namespace stabcat
