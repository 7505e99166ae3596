#pragma once

#include "stabcat/report.hpp"
#include "stabcat/sampling.hpp"
#include "stabcat/triangles.hpp"

namespace stabcat {

enum class Side { left, right };

/// Runs LT1-LT4 (or RT1-RT4) on sampled morphisms and composable pairs.
///
/// Left side rows also cover the agreement of induced and distinguished
/// triangles on sampled X-epics. The right octahedral axiom is checked by
/// running the left one in the dual context on transposed maps.
Report verify_axioms(const ApproxContext& ctx, const SampleSpec& spec, Side side);

/// Well-definedness and functor laws for Omega and Sigma: independence of
/// the chosen lift, compatibility with stable equality, identities,
/// composition and addition.
Report verify_functors(const ApproxContext& ctx, const SampleSpec& spec);

/// Witness entry for a list of labelled morphisms.
Witness make_witness(std::string instance, std::string detail,
                     std::initializer_list<std::pair<const char*, const Morphism*>> maps);

/// "S -> R" style label.
std::string arrow(const Morphism& f);

}  // namespace stabcat
