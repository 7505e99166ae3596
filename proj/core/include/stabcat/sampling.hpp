#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "stabcat/approx.hpp"

namespace stabcat {

/// Which objects and how many instances a verifier samples.
struct SampleSpec {
  std::vector<Module> universe;
  std::size_t morphisms = 200;
  std::size_t pairs = 50;
  std::uint64_t seed = 0;
  std::size_t max_dim = 4;  // universe members above this are skipped
};

/// Deterministic source of random objects and morphisms. All draws go
/// through a single mt19937_64, so a run is fixed by its seed.
class Sampler {
 public:
  Sampler(const ApproxContext& ctx, std::vector<Module> universe, std::uint64_t seed);

  bool empty() const { return universe_.empty(); }
  const std::vector<Module>& universe() const { return universe_; }
  std::mt19937_64& rng() { return rng_; }

  std::uint32_t scalar();
  std::size_t index(std::size_t n);
  const Module& object();
  /// Uniform element of Hom(a, b).
  Morphism hom(const Module& a, const Module& b);
  /// Uniform morphism between random universe members; prefers pairs with a
  /// nonzero hom space.
  Morphism morphism();
  /// Random map a -> b that factors through add(W).
  Morphism factoring_map(const Module& a, const Module& b);
  /// Random automorphism of a; the identity if none is found quickly.
  Morphism automorphism(const Module& a);

 private:
  const ApproxContext* ctx_;
  std::vector<Module> universe_;
  std::mt19937_64 rng_;
};

/// Universe members of dimension at most spec.max_dim.
std::vector<Module> sample_universe(const SampleSpec& spec);

}  // namespace stabcat
