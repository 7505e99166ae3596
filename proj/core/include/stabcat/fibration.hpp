#pragma once

#include <optional>

#include "stabcat/report.hpp"
#include "stabcat/sampling.hpp"

namespace stabcat {

// Fibrations are the X-epics, weak equivalences the maps that become
// isomorphisms in C/X.

/// Canonical path object A --q--> A + X_A --(p0; p1)--> A + A with
/// q = (1; 0), p0 = (1, p_A), p1 = (1, 0).
struct PathObjectRecord {
  Module a;
  Module obj;
  Morphism q;
  Morphism p0;
  Morphism p1;

  /// (p0; p1): A + X_A -> A + A
  Morphism fibration() const { return column_morphism({p0, p1}); }
};

PathObjectRecord path_object(const Module& a, const ApproxContext& ctx);

/// f = fib * we with we = (1; 0): A -> A + X_B and fib = (f, p_B).
struct Factorization {
  Morphism we;
  Morphism fib;
};
Factorization factorize(const Morphism& f, const ApproxContext& ctx);

bool is_fibration(const Morphism& f, const ApproxContext& ctx);
bool is_weak_equivalence(const Morphism& f, const ApproxContext& ctx);
/// X-epic, split by some right inverse, with stably zero kernel.
bool is_acyclic_fibration(const Morphism& f, const ApproxContext& ctx);

/// A homotopy H: A -> B + X_B with p0 H = f and p1 H = g, solved directly
/// against the path object of B.
std::optional<Morphism> homotopy(const Morphism& f, const Morphism& g, const ApproxContext& ctx);
/// Throws on non-parallel input, and throws std::logic_error if the answer
/// ever disagrees with stable_equal.
bool homotopic(const Morphism& f, const Morphism& g, const ApproxContext& ctx);

/// H = (g; t) with p_B t = f - g, so that p0 H = f and p1 H = g exactly.
/// Throws std::invalid_argument("not stably equal") otherwise.
Morphism right_homotopy_witness(const Morphism& f, const Morphism& g, const ApproxContext& ctx);

/// Axioms F1-F4 plus the homotopy and path-object checks on samples.
Report verify_fibration_axioms(const ApproxContext& ctx, const SampleSpec& spec);
/// The same checks for the cofibration structure, run in the dual context.
Report verify_cofibration_axioms(const ApproxContext& ctx, const SampleSpec& spec);

/// For sampled acyclic fibrations t and maps f out of src(t): a right inverse
/// s exists and f s is independent of the choice of s up to stable equality.
Report homotopy_category_form_check(const ApproxContext& ctx, const SampleSpec& spec);

}  // namespace stabcat
