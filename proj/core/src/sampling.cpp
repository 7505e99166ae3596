#include "stabcat/sampling.hpp"

namespace stabcat {

Sampler::Sampler(const ApproxContext& ctx, std::vector<Module> universe, std::uint64_t seed)
    : ctx_(&ctx), universe_(std::move(universe)), rng_(seed) {}

std::uint32_t Sampler::scalar() { return static_cast<std::uint32_t>(rng_() % ctx_->field().modulus()); }

std::size_t Sampler::index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

const Module& Sampler::object() { return universe_[index(universe_.size())]; }

Morphism Sampler::hom(const Module& a, const Module& b) {
  const auto hs = hom_space(a, b);
  Mat c(ctx_->field(), hs->dim(), 1);
  for (std::size_t i = 0; i < hs->dim(); ++i) c.set(i, 0, scalar());
  return hs->combine(c);
}

Morphism Sampler::morphism() {
  for (int tries = 0; tries < 8; ++tries) {
    const Module& b = object();
    const Module& a = object();
    if (hom_space(b, a)->dim() > 0 || tries == 7) return hom(b, a);
  }
  return hom(object(), object());
}

Morphism Sampler::factoring_map(const Module& a, const Module& b) {
  const Module& w = ctx_->generator();
  Morphism out = Morphism::zero(a, b);
  for (int k = 0; k < 2; ++k) out = out + hom(w, b) * hom(a, w);
  return out;
}

Morphism Sampler::automorphism(const Module& a) {
  for (int tries = 0; tries < 32; ++tries) {
    Morphism f = hom(a, a);
    if (is_iso(f)) return f;
  }
  return Morphism::identity(a);
}

std::vector<Module> sample_universe(const SampleSpec& spec) {
  std::vector<Module> out;
  for (const auto& m : spec.universe)
    if (m.dim() <= spec.max_dim) out.push_back(m);
  return out;
}

}  // namespace stabcat
