#include <doctest.h>

#include "oracles.hpp"
#include "stabcat/fibration.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/triangles.hpp"
#include "support.hpp"

using namespace stabcat;
using namespace testing_support;

TEST_CASE("path objects") {
  auto fx = open_fixture("F1");
  const auto& ctx = *fx.ctx;
  for (const auto& a : fx.file.modules) {
    auto po = path_object(a, ctx);
    auto id = Morphism::identity(a);
    CHECK(po.p0 * po.q == id);
    CHECK(po.p1 * po.q == id);
    CHECK(is_fibration(po.fibration(), ctx));
    CHECK(module_iso(kernel(po.fibration()).obj, omega_obj(a, ctx)).decision == Decision::yes);
  }
}

TEST_CASE("factorization") {
  auto fx = open_fixture("F1");
  const auto& ctx = *fx.ctx;
  const Module& S = fx.mod("S");
  auto id = Morphism::identity(S);
  auto f = factorize(id, ctx);
  CHECK(f.fib * f.we == id);
  CHECK(is_weak_equivalence(f.we, ctx));
  CHECK(is_fibration(f.fib, ctx));

  auto z = Morphism::zero(S, S);
  auto fz = factorize(z, ctx);
  CHECK(fz.fib * fz.we == z);
  CHECK(fz.fib.mat() == Mat::from_rows(S.field(), {{0, 1, 0}}));
  CHECK(fz.we.mat() == Mat::from_rows(S.field(), {{1}, {0}, {0}}));

  auto f2 = open_fixture("F2");
  std::mt19937_64 rng(4);
  for (int it = 0; it < 30; ++it) {
    const auto& mods = f2.file.modules;
    Morphism g = random_hom(mods[rng() % mods.size()], mods[rng() % mods.size()], rng);
    auto fg = factorize(g, *f2.ctx);
    CHECK(fg.fib.mat() * fg.we.mat() == g.mat());
    CHECK(is_fibration(fg.fib, *f2.ctx));
    CHECK(is_weak_equivalence(fg.we, *f2.ctx));
  }
}

TEST_CASE("acyclic fibrations") {
  auto fx = open_fixture("F1");
  const auto& ctx = *fx.ctx;
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  auto fold = row_morphism({Morphism::identity(R), Morphism::identity(R)});
  CHECK(is_acyclic_fibration(fold, ctx));
  CHECK_FALSE(is_acyclic_fibration(fx.map("p"), ctx));
  CHECK_FALSE(oracle::has_right_inverse(to_rep(R), to_rep(S), {{1, 0}}));
  CHECK(is_acyclic_fibration(Morphism::identity(S), ctx));
  CHECK(is_acyclic_fibration(fx.map("x") + Morphism::identity(R), ctx));
}

TEST_CASE("homotopy agrees with stable equality") {
  auto fx = open_fixture("F1");
  const auto& ctx = *fx.ctx;
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  const Morphism& p = fx.map("p");
  CHECK(homotopic(p, p, ctx));
  CHECK_FALSE(homotopic(Morphism::identity(S), Morphism::zero(S, S), ctx));
  CHECK(homotopic(p, Morphism::zero(R, S), ctx));
  CHECK_THROWS(homotopic(p, Morphism::zero(S, S), ctx));

  // Exhaustive over all module maps H: S -> S + R, no homotopy from id_S to 0 exists.
  auto po = path_object(S, ctx);
  bool found = false;
  for (const auto& h : oracle::all_homs(to_rep(S), to_rep(po.obj))) {
    auto l = oracle::mul(to_imat(po.p0.mat()), h, 1, 2);
    auto r = oracle::mul(to_imat(po.p1.mat()), h, 1, 2);
    if (l == oracle::IMat{{1}} && r == oracle::IMat{{0}}) found = true;
  }
  CHECK_FALSE(found);
}

TEST_CASE("right homotopy witnesses") {
  auto fx = open_fixture("F1");
  const auto& ctx = *fx.ctx;
  const Module& R = fx.mod("R");
  const Module& S = fx.mod("S");
  const Morphism& p = fx.map("p");
  auto po = path_object(S, ctx);
  auto h = right_homotopy_witness(p, p, ctx);
  CHECK(po.p0 * h == p);
  CHECK(po.p1 * h == p);
  CHECK(h.mat().block(1, 0, 2, 2).is_zero());

  auto z = Morphism::zero(R, S);
  auto h2 = right_homotopy_witness(p, z, ctx);
  CHECK(po.p0 * h2 == p);
  CHECK(po.p1 * h2 == z);

  CHECK_THROWS_WITH_AS(right_homotopy_witness(Morphism::identity(S), Morphism::zero(S, S), ctx), "not stably equal",
                       std::invalid_argument);

  auto f2 = open_fixture("F2");
  Sampler s(*f2.ctx, f2.file.class_members("upto3"), 8);
  for (int it = 0; it < 30; ++it) {
    const Module& a = s.object();
    const Module& b = s.object();
    Morphism f = s.hom(a, b);
    Morphism g = f + s.factoring_map(a, b);
    auto pb = path_object(b, *f2.ctx);
    auto w = right_homotopy_witness(f, g, *f2.ctx);
    CHECK(pb.p0 * w == f);
    CHECK(pb.p1 * w == g);
  }
}

TEST_CASE("fibration axioms on the fixtures") {
  for (const char* name : {"F1", "F2", "F3"}) {
    auto fx = open_fixture(name);
    SampleSpec spec{fx.file.class_members("upto3"), 40, 10, 11, 3};
    CAPTURE(name);
    CHECK(verify_fibration_axioms(*fx.ctx, spec).verdict() == Verdict::pass);
    CHECK(verify_cofibration_axioms(*fx.ctx, spec).verdict() == Verdict::pass);
    CHECK(homotopy_category_form_check(*fx.ctx, spec).verdict() == Verdict::pass);
  }
  auto fx = open_fixture("F1");
  SampleSpec empty{{}, 10, 5, 0, 4};
  CHECK(verify_fibration_axioms(*fx.ctx, empty).verdict() == Verdict::pass);
}

TEST_CASE("corrupted assignment fails the F3 and path-object checks") {
  auto fx = open_fixture("F1");
  ApproxContext bad(fx.mod("R"), fx.mod("S"), fx.file.class_members("upto3"));
  SampleSpec spec{fx.file.class_members("upto3"), 60, 20, 11, 3};
  auto rep = verify_fibration_axioms(bad, spec);
  CHECK(rep.verdict() == Verdict::fail);
  // Acyclic fibrations are split epis with kernel in add(W) whatever the
  // assignment, so their base change cannot break; fibrations can.
  CHECK(rep.find("F3 pullback of an acyclic fibration is acyclic")->failures == 0);
  const auto* row = rep.find("F3 pullback of a fibration is a fibration");
  REQUIRE(row);
  CHECK(row->failures > 0);
  CHECK_FALSE(row->witnesses.empty());
  CHECK(rep.find("F4 factorization into weak equivalence and fibration")->failures > 0);
  CHECK(rep.find("Homotopic iff stably equal")->failures > 0);
}
