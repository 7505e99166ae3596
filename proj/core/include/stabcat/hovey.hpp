#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabcat/repfile.hpp"
#include "stabcat/report.hpp"
#include "stabcat/sampling.hpp"
#include "stabcat/triangles.hpp"
#include "stabcat/verify.hpp"

namespace stabcat {

// ---- classes of objects -----------------------------------------------------

/// A finite list of modules standing in for a class closed under finite
/// direct sums and isomorphism.
struct ClassSpec {
  std::string name;
  std::vector<Module> members;
};

/// Throws std::invalid_argument if two members are identical.
ClassSpec make_class(std::string name, std::vector<Module> members);
ClassSpec class_spec(const RepFile& rf, std::string_view name);

/// m is isomorphic to a direct sum of members (the zero module always is).
/// Memoized per instance; not thread-safe.
class ClassMembership {
 public:
  explicit ClassMembership(ClassSpec spec, std::uint64_t seed = 0) : spec_(std::move(spec)), seed_(seed) {}
  const ClassSpec& spec() const { return spec_; }
  Decision operator()(const Module& m);

 private:
  ClassSpec spec_;
  std::uint64_t seed_;
  std::vector<Module> gens_;
  std::map<std::string, Decision> memo_;
};

Decision class_contains(const ClassSpec& c, const Module& m, std::uint64_t seed = 0);

/// Members of the universe (and of either class) lying in both classes.
ClassSpec class_intersection(const ClassSpec& a, const ClassSpec& b, const std::vector<Module>& universe);

/// Members that are not direct sums of strictly smaller members.
std::vector<Module> class_generators(const ClassSpec& c);

// ---- cotorsion pairs --------------------------------------------------------

/// 0 -> E -> D -> A -> 0 ("enough projectives") and 0 -> A -> E' -> D' -> 0
/// ("enough injectives") with D, D' in the left class and E, E' in the right.
struct CotorsionWitness {
  Module a;
  ShortExactSeq projective;
  ShortExactSeq injective;
  std::string projective_source;
  std::string injective_source;
};

struct CotorsionCounterexample {
  enum class Kind { ext_nonzero, not_maximal_left, not_maximal_right, incomplete };
  Kind kind;
  Module x;
  Module y;
  std::size_t ext1 = 0;
  std::string detail;
};
const char* to_string(CotorsionCounterexample::Kind k);

struct CotorsionResult {
  bool ok = false;
  std::vector<CotorsionWitness> witnesses;
  std::optional<CotorsionCounterexample> counterexample;  // first failure found
  Report report;
};

/// Ext^1(D, E) = 0 on all member pairs, maximality of both classes within
/// the universe, and completeness witnesses for every universe object drawn
/// from the identity and assigned approximation sequences. Everything is
/// quantified over the given finite universe only.
CotorsionResult check_cotorsion_pair(const ClassSpec& d, const ClassSpec& e, const ApproxContext& ctx,
                                     const std::vector<Module>& universe, std::uint64_t seed = 0);

struct HoveyReport {
  CotorsionResult first;   // (C, W n F)
  CotorsionResult second;  // (C n W, F)
  Report report;           // all rows, including thickness
  std::optional<Witness> thickness_counterexample;
  bool pass() const { return report.verdict() == Verdict::pass; }
};

/// Both induced cotorsion pairs plus thickness of the trivial class:
/// two-out-of-three on short exact sequences 0 -> A -> E -> C -> 0 with
/// A, C in the universe and dim E <= 6 (one sequence per Ext^1 class), and
/// closure under direct summands on universe pairs.
HoveyReport check_hovey_triple(const ClassSpec& cofibrant, const ClassSpec& trivial, const ClassSpec& fibrant,
                               const ApproxContext& ctx, const std::vector<Module>& universe,
                               std::uint64_t seed = 0);

// ---- the four stable categories --------------------------------------------

struct HoveyClasses {
  ClassSpec cofibrant;
  ClassSpec trivial;
  ClassSpec fibrant;
  std::vector<Module> universe;
};

enum class StableQuotient { fibrant_mod_omega, fibrant_mod_bifibrant, cofibrant_mod_omega, cofibrant_mod_bifibrant };
const char* to_string(StableQuotient q);

/// A context over the chosen class together with the side whose axioms it
/// carries: left for fibrant objects, right for cofibrant ones.
struct ClassEngine {
  std::shared_ptr<ApproxContext> ctx;
  std::vector<Module> universe;
  Side side = Side::left;
  StableQuotient which = StableQuotient::fibrant_mod_omega;
};

/// omega is add(w_omega); the bifibrant quotients use the direct sum of
/// class_generators(C n F). Throws std::runtime_error naming the object and
/// construction when Omega (fibrant side) or Sigma (cofibrant side) leaves
/// the class.
ClassEngine omega_class_tri(const HoveyClasses& classes, StableQuotient which, const Module& w_omega,
                            std::uint64_t seed = 0);

/// Identity on bifibrant objects. Throws std::invalid_argument("replacement
/// not supported") otherwise.
Module cofibrant_replacement(const Module& m, const HoveyClasses& classes);
Module fibrant_replacement(const Module& m, const HoveyClasses& classes);

// ---- adjunction -------------------------------------------------------------

/// phi(alpha) = -kappa_alpha for alpha: Sigma(A) -> B, where
/// p_B x = alpha pi^A and iota_B kappa_alpha = x nu^A.
Morphism adjunction_forward(const Module& a, const Morphism& alpha, const ApproxContext& ctx);
/// psi(beta) = -kappa^beta for beta: A -> Omega(B), where
/// y nu^A = iota_B beta and kappa^beta pi^A = p_B y.
Morphism adjunction_backward(const Module& b, const Morphism& beta, const ApproxContext& ctx);

/// phi and psi as matrices in stable-hom coordinates of
/// Hom(Sigma A, B) and Hom(A, Omega B).
struct AdjunctionMaps {
  Module a;
  Module b;
  Mat forward;   // dim Hom(A, Omega B) x dim Hom(Sigma A, B)
  Mat backward;  // dim Hom(Sigma A, B) x dim Hom(A, Omega B)
  bool forward_round_trip = false;   // psi phi = 1
  bool backward_round_trip = false;  // phi psi = 1
  bool ok() const { return forward_round_trip && backward_round_trip; }
};
AdjunctionMaps adjunction_phi(const Module& a, const Module& b, const ApproxContext& ctx);

/// Round trips on all universe pairs of dim <= max_dim and naturality
/// phi(b alpha Sigma(a)) = Omega(b) phi(alpha) a on sampled instances.
Report verify_adjunction(const ApproxContext& ctx, const SampleSpec& spec);

// ---- pretriangulated fillers ------------------------------------------------

struct PretriFill {
  Morphism delta;
  bool first = false;   // left filler: delta mu^f = eta_g beta;  right: eta_g delta = beta mu^f
  bool second = false;  // left filler: g delta = psi(alpha) pi^f; right: delta f = zeta_g phi(alpha)
  bool ok() const { return first && second; }
};

/// Top row A --f--> B --mu--> PO(f) --pi--> Sigma(A) (distinguished right),
/// bottom row Omega(C) --zeta--> PB(g) --eta--> D --g--> C (distinguished
/// left), alpha: A -> Omega(C), beta: B -> PB(g). Requires beta f and
/// zeta alpha to agree stably, else throws std::invalid_argument("left
/// square does not commute stably").
PretriFill pretri_fill_left(const RightTriangle& top, const LeftTriangle& bottom, const Morphism& alpha,
                            const Morphism& beta, const ApproxContext& ctx);

/// Same rows, alpha: Sigma(A) -> C, beta: PO(f) -> D with g beta and
/// alpha pi agreeing stably; delta: B -> PB(g). Throws
/// std::invalid_argument("right square does not commute stably").
PretriFill pretri_fill_right(const RightTriangle& top, const LeftTriangle& bottom, const Morphism& alpha,
                             const Morphism& beta, const ApproxContext& ctx);

/// Fillers on sampled compatible squares (spec.pairs of each kind) and
/// rejection of sampled non-commuting squares.
Report verify_pretriangulated(const ApproxContext& ctx, const SampleSpec& spec);

/// Sigma Omega C and Omega Sigma C stably isomorphic to C for every object
/// in the sample universe. Holds when W is a self-injective regular module.
Report verify_loop_suspension_inverse(const ApproxContext& ctx, const SampleSpec& spec);

}  // namespace stabcat
