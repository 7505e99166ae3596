#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/sampling.hpp"
#include "support.hpp"

using namespace stabcat;
using namespace testing_support;

TEST_CASE("assigned approximations in F1") {
  auto fx = open_fixture("F1");
  const auto& ctx = *fx.ctx;
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  const auto& ra = ctx.right(S);
  CHECK(ra.p.mat() == Mat::from_rows(S.field(), {{1, 0}}));
  CHECK(module_iso(ra.k, S).decision == Decision::yes);
  CHECK(oracle::hom_dim(to_rep(R), to_rep(S)) == 1);

  const auto& rw = ctx.right(R);
  CHECK(is_epi(rw.p));
  CHECK(lift_through(rw.p, Morphism::identity(R)).has_value());

  const auto& r0 = ctx.right(Module::zero(S.field(), 1));
  CHECK(r0.x.dim() == 0);
  CHECK(r0.p.is_zero());
}

TEST_CASE("X-epics") {
  auto fx = open_fixture("F1");
  const auto& ctx = *fx.ctx;
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  CHECK(is_X_epic(ctx.right(S).p, ctx));
  CHECK_FALSE(is_X_epic(Morphism::zero(S, S), ctx));
  CHECK_FALSE(oracle::is_X_epic(to_rep(S), to_rep(S), {{0}}, to_rep(R)));
  CHECK(is_X_epic(Morphism::zero(S, Module::zero(S.field(), 1)), ctx));

  auto e = make_special_epic(Morphism::identity(S), ctx);
  CHECK(e.src().dim() == 3);
  CHECK(is_X_epic(e, ctx));
  auto e0 = make_special_epic(Morphism::zero(S, S), ctx);
  CHECK(is_X_epic(e0, ctx));
  CHECK(e0.mat() == Mat::from_rows(S.field(), {{0, 1, 0}}));
  Module z = Module::zero(S.field(), 1);
  CHECK(make_special_epic(Morphism::zero(S, z), ctx).dst().dim() == 0);
}

TEST_CASE("stable equality and stable hom dimensions") {
  auto fx = open_fixture("F1");
  const auto& ctx = *fx.ctx;
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  const Morphism& p = fx.map("p");
  CHECK(stable_equal(p, p, ctx));
  CHECK_FALSE(stable_equal(Morphism::identity(S), Morphism::zero(S, S), ctx));
  CHECK_FALSE(oracle::factors_through({{1}}, to_rep(S), to_rep(S), to_rep(R)));
  CHECK(stable_equal(p, Morphism::zero(R, S), ctx));
  CHECK_THROWS_AS(stable_equal(p, Morphism::zero(S, S), ctx), DimensionError);

  CHECK(stable_hom_dim(S, S, ctx) == 1);
  CHECK(stable_hom_dim(R, S, ctx) == 0);
  CHECK(stable_hom_dim(Module::zero(S.field(), 1), S, ctx) == 0);
  CHECK(is_stably_zero(R, ctx));
  CHECK_FALSE(is_stably_zero(S, ctx));

  for (const char* name : {"F1", "F2", "F3"}) {
    auto f = open_fixture(name);
    auto w = to_rep(f.ctx->generator());
    for (const auto& a : f.file.modules)
      for (const auto& b : f.file.modules) {
        if (a.dim() * b.dim() > 6 || a.dim() > 3 || b.dim() > 3) continue;
        CAPTURE(name);
        CAPTURE(a.name());
        CAPTURE(b.name());
        CHECK(stable_hom_dim(a, b, *f.ctx) == static_cast<std::size_t>(oracle::stable_hom_dim(to_rep(a), to_rep(b), w)));
      }
  }
}

TEST_CASE("Ext^1 from the assigned presentation matches cocycle counting") {
  auto fx = open_fixture("F1");
  const auto& ctx = *fx.ctx;
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  CHECK(ext1_dim(S, S, ctx) == 1);
  for (const auto& n : fx.file.modules) CHECK(ext1_dim(R, n, ctx) == 0);
  CHECK(ext1_dim(Module::zero(S.field(), 1), S, ctx) == 0);

  for (const char* name : {"F1", "F2", "F3"}) {
    auto f = open_fixture(name);
    auto rel = relations(f.file);
    for (const auto& c : f.file.modules)
      for (const auto& a : f.file.modules) {
        if (c.dim() * a.dim() > 4) continue;
        CAPTURE(name);
        CAPTURE(c.name());
        CAPTURE(a.name());
        CHECK(ext1_dim(c, a, *f.ctx) == static_cast<std::size_t>(oracle::ext1_dim(to_rep(c), to_rep(a), rel)));
      }
  }
}

TEST_CASE("property: stable equality is a congruence") {
  for (const char* name : {"F1", "F2", "F3"}) {
    auto fx = open_fixture(name);
    const auto& ctx = *fx.ctx;
    Sampler s(ctx, fx.file.class_members("upto3"), 17);
    for (int it = 0; it < 60; ++it) {
      const Module& a = s.object();
      const Module& b = s.object();
      const Module& c = s.object();
      Morphism f = s.hom(a, b);
      Morphism f2 = f + s.factoring_map(a, b);
      Morphism g = s.hom(b, c);
      Morphism g2 = g + s.factoring_map(b, c);
      CHECK(stable_equal(f, f2, ctx));
      CHECK(stable_equal(g * f, g2 * f2, ctx));
      CHECK(stable_equal(g * f + g * f, g2 * f2 + g2 * f, ctx));
    }
  }
}

TEST_CASE("records are canonical and independent of query order") {
  auto fx1 = open_fixture("F2");
  auto fx2 = open_fixture("F2");
  const auto& mods = fx1.file.modules;
  for (const auto& m : mods) (void)fx1.ctx->right(m);
  for (auto it = mods.rbegin(); it != mods.rend(); ++it) (void)fx2.ctx->right(*it);
  for (const auto& m : mods) {
    CHECK(fx1.ctx->right(m).p == fx2.ctx->right(m).p);
    CHECK(fx1.ctx->left(m).nu == fx2.ctx->left(m).nu);
  }
}

TEST_CASE("stable inverses and stable isomorphism") {
  auto fx = open_fixture("F2");
  const auto& ctx = *fx.ctx;
  const Module& S = fx.mod("S");
  const Module& M2 = fx.mod("M2");
  CHECK(is_stable_iso(Morphism::identity(S), ctx));
  CHECK_FALSE(is_stable_iso(Morphism::zero(S, S), ctx));
  CHECK(stable_iso(M2, M2, ctx).decision == Decision::yes);
  CHECK(stable_iso(S, M2, ctx).decision == Decision::no);
  CHECK(stable_iso(fx.mod("R3"), Module::zero(S.field(), 1), ctx).decision == Decision::yes);
  CHECK_FALSE(oracle::stably_isomorphic(to_rep(S), to_rep(M2), to_rep(fx.mod("R3"))));
}

TEST_CASE("duality reverses maps") {
  auto fx = open_fixture("F1");
  const Morphism& p = fx.map("p");
  auto d = dual_morphism(p);
  CHECK(d.src() == dual_module(fx.mod("S")));
  CHECK(d.mat() == p.mat().transpose());
  auto dctx = dual_context(*fx.ctx);
  CHECK(dctx->generator() == dual_module(fx.mod("R")));
}
