#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabcat/approx.hpp"

namespace stabcat {

// ---- loop and suspension ----------------------------------------------------

/// Omega(C) = K_C, the kernel of the assigned right approximation.
const Module& omega_obj(const Module& c, const ApproxContext& ctx);
/// Sigma(C) = K^C, the cokernel of the assigned left approximation.
const Module& sigma_obj(const Module& c, const ApproxContext& ctx);

/// x: X_C -> X_D with p_D x = f p_C and its restriction kappa: K_C -> K_D.
struct OmegaLift {
  Morphism x;
  Morphism kappa;
};
/// All lifts x of f p_C through p_D.
LiftSet omega_lifts(const Morphism& f, const ApproxContext& ctx);
/// The restriction of a given lift. Throws if x is not a lift of f.
OmegaLift omega_from_lift(const Morphism& f, const Morphism& x, const ApproxContext& ctx);
OmegaLift omega_lift(const Morphism& f, const ApproxContext& ctx);
StableMorphism omega_mor(const Morphism& f, const ApproxContext& ctx);

/// y: X^C -> X^D with y nu^C = nu^D f and the induced kappa^f: K^C -> K^D.
struct SigmaLift {
  Morphism y;
  Morphism kappa;
};
LiftSet sigma_lifts(const Morphism& f, const ApproxContext& ctx);
SigmaLift sigma_from_lift(const Morphism& f, const Morphism& y, const ApproxContext& ctx);
SigmaLift sigma_lift(const Morphism& f, const ApproxContext& ctx);
StableMorphism sigma_mor(const Morphism& f, const ApproxContext& ctx);

// ---- left triangles ---------------------------------------------------------

enum class Provenance { distinguished, induced, rotated, isomorphic_image, trivial };
const char* to_string(Provenance p);

/// Pullback of f: B -> A along p_A, realized as the kernel of
/// (f, p_A): B + X_A -> A with inclusion (eta; -theta).
struct PullbackRecord {
  Morphism f;
  Module pb;
  Morphism eta;    // PB -> B
  Morphism theta;  // PB -> X_A, p_A theta = f eta
  Morphism zeta;   // K_A -> PB, eta zeta = 0, theta zeta = iota_A
  KernelResult ker;

  /// The unique m with eta m = u and theta m = v, given f u = p_A v.
  Morphism mediate(const Morphism& u, const Morphism& v) const;
};

/// Kernel data of an X-epic g: B -> A.
struct InducedRecord {
  Morphism g;
  Module ker;
  Morphism iota;   // ker g -> B
  Morphism delta;  // X_A -> B, g delta = p_A
  Morphism gamma;  // K_A -> ker g, iota gamma = delta iota_A
};

/// Omega(A) --h--> C --g--> B --f--> A, maps taken in the stable category.
struct LeftTriangle {
  Morphism h;
  Morphism g;
  Morphism f;
  Provenance provenance = Provenance::distinguished;
  std::shared_ptr<const PullbackRecord> pullback;
  std::shared_ptr<const InducedRecord> induced;

  const Module& a() const { return f.dst(); }
  const Module& b() const { return f.src(); }
  const Module& c() const { return g.src(); }
};

PullbackRecord pullback_record(const Morphism& f, const ApproxContext& ctx);
/// Omega(A) --zeta--> PB(f) --eta--> B --f--> A
LeftTriangle distinguished_left_triangle(const Morphism& f, const ApproxContext& ctx);

/// Throws std::invalid_argument("not X-epic") unless g is X-epic.
InducedRecord induced_record(const Morphism& g, const ApproxContext& ctx);
/// Omega(A) --(-gamma_g)--> ker g --iota--> B --g--> A
LeftTriangle induced_left_triangle(const Morphism& g, const ApproxContext& ctx);

/// 0 -> A --1--> A -> 0
LeftTriangle trivial_left_triangle(const Module& a, const ApproxContext& ctx);

/// Omega(B) --(-Omega f)--> Omega(A) --h--> C --g--> B
LeftTriangle rotate_left(const LeftTriangle& t, const ApproxContext& ctx);

/// Outcome of checking a candidate morphism of triangles.
struct SquareCheck {
  bool left = false;    // gamma h1 = h2 Omega(alpha)   (right triangles: gamma g1 = g2 beta)
  bool middle = false;  // g2 gamma = beta g1           (right triangles: Sigma(alpha) h1 = h2 gamma)
  bool right = false;   // f2 beta = alpha f1           (right triangles: beta f1 = f2 alpha)
  bool all() const { return left && middle && right; }
};
SquareCheck check_left_morphism(const LeftTriangle& t1, const LeftTriangle& t2, const Morphism& gamma,
                                const Morphism& beta, const Morphism& alpha, const ApproxContext& ctx);

struct TriangleIso {
  Morphism gamma;
  Morphism beta;
  Morphism alpha;
};

struct TriangleComparison {
  Decision decision = Decision::undecided;
  std::optional<TriangleIso> iso;
  std::string method;
};

struct CompareOptions {
  /// Outer maps to try first. When absent and the outer objects coincide,
  /// identities are tried first.
  std::optional<std::pair<Morphism, Morphism>> hint;  // (beta, alpha)
  /// Upper bound on candidate tests before reporting undecided.
  std::size_t budget = 4096;
  std::uint64_t seed = 0;
};

/// Searches for a triple of stable isomorphisms forming a morphism of left
/// triangles t1 -> t2.
TriangleComparison compare_triangles(const LeftTriangle& t1, const LeftTriangle& t2, const ApproxContext& ctx,
                                     const CompareOptions& opts = {});

/// A filler gamma: C1 -> C2 with (gamma, beta, alpha) a morphism of
/// triangles. Throws "square does not commute stably" if alpha f1 and
/// f2 beta differ stably.
StableMorphism fill_lt3(const LeftTriangle& t1, const LeftTriangle& t2, const Morphism& alpha, const Morphism& beta,
                        const ApproxContext& ctx);

/// Octahedral data for g: C -> B (X-epic) and f: B -> A.
struct OctahedronRecord {
  Morphism g;
  Morphism f;
  InducedRecord ind_g;
  PullbackRecord pb_fg;
  PullbackRecord pb_f;
  Morphism alpha;  // ker g -> PB(fg)
  Morphism beta;   // PB(fg) -> PB(f)
  Morphism delta_beta;  // X_{PB(f)} -> PB(fg), beta delta = p_{PB(f)}
  Morphism gamma_beta;  // K_{PB(f)} -> ker g, alpha gamma_beta = delta_beta iota_{PB(f)}
  Morphism omega_f;
  Morphism omega_eta_f;
  /// -alpha gamma_g - zeta_fg Omega(f), recorded for inspection.
  Morphism left_top_defect;
  LeftTriangle column;  // Omega(PB f) --(-gamma_beta)--> ker g --alpha--> PB(fg) --beta--> PB(f)

  struct Check {
    std::string name;
    bool pass;
  };
  std::vector<Check> checks;
  bool ok() const;
};

/// Throws std::invalid_argument("not X-epic") unless g is X-epic.
OctahedronRecord octahedron(const Morphism& g, const Morphism& f, const ApproxContext& ctx);

// ---- right triangles --------------------------------------------------------

/// Pushout of g: C -> D along nu^C with pi^g: PO -> Sigma(C).
struct PushoutRecord {
  Morphism g;
  Module po;
  Morphism mu;  // D -> PO
  Morphism m;   // X^C -> PO, mu g = m nu^C
  Morphism pi;  // PO -> K^C, pi mu = 0, pi m = pi^C
  PushoutResult push;
};

/// C --f--> D --g--> E --h--> Sigma(C)
struct RightTriangle {
  Morphism f;
  Morphism g;
  Morphism h;
  Provenance provenance = Provenance::distinguished;
  std::shared_ptr<const PushoutRecord> pushout;

  const Module& a() const { return f.src(); }
  const Module& b() const { return f.dst(); }
  const Module& c() const { return g.dst(); }
};

PushoutRecord pushout_record(const Morphism& g, const ApproxContext& ctx);
RightTriangle distinguished_right_triangle(const Morphism& g, const ApproxContext& ctx);
/// 0 -> A --1--> A -> 0
RightTriangle trivial_right_triangle(const Module& a, const ApproxContext& ctx);
/// B --g--> C --h--> Sigma(A) --(-Sigma f)--> Sigma(B)
RightTriangle rotate_right(const RightTriangle& t, const ApproxContext& ctx);

SquareCheck check_right_morphism(const RightTriangle& t1, const RightTriangle& t2, const Morphism& alpha,
                                 const Morphism& beta, const Morphism& gamma, const ApproxContext& ctx);
TriangleComparison compare_right_triangles(const RightTriangle& t1, const RightTriangle& t2, const ApproxContext& ctx,
                                           const CompareOptions& opts = {});
/// gamma: C1 -> C2 with (alpha, beta, gamma) a morphism of right triangles.
StableMorphism fill_rt3(const RightTriangle& t1, const RightTriangle& t2, const Morphism& alpha, const Morphism& beta,
                        const ApproxContext& ctx);

// ---- shared solver ----------------------------------------------------------

/// One stable equation  L * X * R == T  in an unknown X: src -> dst.
struct StableEquation {
  Morphism left;
  Morphism right;
  Morphism target;
};

/// All X in Hom(src, dst) satisfying every equation stably: a particular
/// solution and homogeneous solutions independent modulo X-factoring maps.
std::optional<LiftSet> solve_stable(const Module& src, const Module& dst, const std::vector<StableEquation>& eqs,
                                    const ApproxContext& ctx);

/// Some D: W^m -> src(via) with via * D = target, solved one summand at a
/// time. `target` must have source W^m for the given generator power.
std::optional<Morphism> lift_from_power(const Morphism& via, const Morphism& target, const Module& w);

}  // namespace stabcat
