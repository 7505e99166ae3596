#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stabcat/fixtures.hpp"
#include "support.hpp"

using namespace stabcat;
using namespace testing_support;

TEST_CASE("hom spaces agree with enumeration") {
  auto fx = open_fixture("F1");
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  CHECK(hom_basis(R, R).size() == 2);
  CHECK(oracle::hom_dim(to_rep(R), to_rep(R)) == 2);
  CHECK(hom_basis(S, S).size() == 1);
  CHECK(oracle::hom_dim(to_rep(S), to_rep(S)) == 1);
  CHECK(hom_basis(R, Module::zero(R.field(), 1)).empty());

  for (const char* name : {"F1", "F2", "F3"}) {
    auto f = open_fixture(name);
    for (const auto& a : f.file.modules)
      for (const auto& b : f.file.modules) {
        if (a.dim() * b.dim() > 9) continue;
        CAPTURE(name);
        CAPTURE(a.name());
        CAPTURE(b.name());
        CHECK(hom_basis(a, b).size() == static_cast<std::size_t>(oracle::hom_dim(to_rep(a), to_rep(b))));
      }
  }
}

TEST_CASE("kernel and cokernel of the top and socle maps") {
  auto fx = open_fixture("F1");
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  auto k = kernel(fx.map("p"));
  CHECK(k.obj.dim() == 1);
  CHECK(k.obj.action(0).is_zero());
  CHECK(k.incl.mat() == Mat::from_rows(S.field(), {{0}, {1}}));
  CHECK(oracle::modules_isomorphic(to_rep(k.obj), oracle::kernel_rep(to_rep(R), to_imat(fx.map("p").mat()))));

  auto c = cokernel(fx.map("i"));
  CHECK(c.obj.dim() == 1);
  CHECK(module_iso(c.obj, S).decision == Decision::yes);
  CHECK(oracle::modules_isomorphic(to_rep(c.obj), oracle::cokernel_rep(to_rep(R), to_imat(fx.map("i").mat()), 1)));

  CHECK(kernel(Morphism::identity(R)).obj.dim() == 0);
  auto kz = kernel(Morphism::zero(R, S));
  CHECK(kz.obj == R);
  CHECK(kz.incl.mat().is_identity());
  CHECK(cokernel(Morphism::identity(R)).obj.dim() == 0);
  auto cz = cokernel(Morphism::zero(S, R));
  CHECK(cz.obj == R);
  CHECK(cz.proj.mat().is_identity());
}

TEST_CASE("direct sums satisfy the biproduct laws") {
  auto fx = open_fixture("F1");
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  CHECK(module_iso(direct_sum(S, Module::zero(S.field(), 1)).obj, S).decision == Decision::yes);
  auto ss = direct_sum(S, S);
  CHECK(ss.obj.dim() == 2);
  CHECK(ss.obj.action(0).is_zero());
  auto rs = direct_sum(R, S);
  CHECK(rs.obj.dim() == 3);
  CHECK((rs.out[0] * rs.in[0]).mat().is_identity());
  CHECK((rs.out[1] * rs.in[1]).mat().is_identity());
  CHECK((rs.out[0] * rs.in[1]).is_zero());
  CHECK((rs.out[1] * rs.in[0]).is_zero());
  CHECK((rs.in[0] * rs.out[0] + rs.in[1] * rs.out[1]).mat().is_identity());
}

TEST_CASE("pullbacks and pushouts") {
  auto fx = open_fixture("F1");
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  const Morphism& p = fx.map("p");
  const Morphism& i = fx.map("i");

  auto pb = pullback(Morphism::identity(S), p);
  CHECK(module_iso(pb.obj, R).decision == Decision::yes);
  CHECK(Morphism(S, S, Mat::identity(S.field(), 1)) * pb.q1 == p * pb.q2);

  auto pbid = pullback(p, Morphism::identity(S));
  CHECK(pbid.obj.dim() == R.dim());
  CHECK(is_iso(pbid.q1));

  auto pb0 = pullback(Morphism::zero(S, S), p);
  CHECK(pb0.obj.dim() == 2);
  CHECK(module_iso(pb0.obj, direct_sum(S, kernel(p).obj).obj).decision == Decision::yes);

  auto po = pushout(i, i);
  CHECK(po.obj.dim() == 3);
  CHECK(po.j1 * i == po.j2 * i);
  // Cokernel oracle on (i; -i): S -> R + R.
  oracle::IMat col = {{0}, {1}, {0}, {1}};
  auto rr = to_rep(direct_sum(R, R).obj);
  CHECK(oracle::modules_isomorphic(to_rep(po.obj), oracle::cokernel_rep(rr, col, 1)));

  auto poid = pushout(Morphism::identity(S), i);
  CHECK(poid.obj.dim() == R.dim());

  auto po0 = pushout(Morphism::zero(S, S), Morphism::zero(S, S));
  CHECK(po0.obj == direct_sum(S, S).obj);
}

TEST_CASE("property: universal properties on random maps") {
  std::mt19937_64 rng(9);
  for (const char* name : {"F1", "F2", "F3"}) {
    auto fx = open_fixture(name);
    const auto& mods = fx.file.modules;
    for (int it = 0; it < 40; ++it) {
      const Module& a = mods[rng() % mods.size()];
      const Module& b = mods[rng() % mods.size()];
      const Module& c = mods[rng() % mods.size()];
      Morphism f = random_hom(a, b, rng);
      auto k = kernel(f);
      auto ck = cokernel(f);
      CHECK((f * k.incl).is_zero());
      CHECK((ck.proj * f).is_zero());
      CHECK(is_mono(k.incl));
      CHECK(is_epi(ck.proj));
      CHECK(k.obj.dim() + ck.obj.dim() == a.dim() - rank(f.mat()) + b.dim() - rank(f.mat()));
      CHECK_FALSE(exactness_defect({k.incl, image(f).coimage}));

      // Mediating maps are unique solutions.
      Morphism g = random_hom(c, b, rng);
      auto pb = pullback(f, g);
      CHECK(f * pb.q1 == g * pb.q2);
      Morphism u = random_hom(c, a, rng);
      Morphism fu = f * u;
      if (auto v = lift_through(g, fu)) {
        Morphism m = pb.mediate(u, *v);
        CHECK(pb.q1 * m == u);
        CHECK(pb.q2 * m == *v);
      }
      Morphism h = random_hom(a, c, rng);
      auto po = pushout(f, h);
      CHECK(po.j1 * f == po.j2 * h);
    }
  }
}

TEST_CASE("intertwining is enforced") {
  auto fx = open_fixture("F1");
  const Module& S = fx.mod("S");
  const Module& R = fx.mod("R");
  try {
    Morphism bad(R, S, Mat::from_rows(R.field(), {{0, 1}}));
    FAIL("expected NotIntertwining");
  } catch (const NotIntertwining& e) {
    CHECK(e.generator() == 0);
  }
}

TEST_CASE("module_iso finds and rejects isomorphisms") {
  auto fx = open_fixture("F2");
  std::mt19937_64 rng(5);
  for (const auto& m : fx.file.modules) {
    auto r = module_iso(m, m);
    CHECK(r.decision == Decision::yes);
    // Conjugating by a random invertible matrix gives an isomorphic module.
    Mat t;
    do t = random_mat(m.field(), m.dim(), m.dim(), rng);
    while (!inverse(t));
    std::vector<Mat> acts;
    for (const auto& a : m.actions()) acts.push_back(t * a * *inverse(t));
    Module m2("conj", m.field(), m.dim(), acts);
    CHECK(module_iso(m, m2).decision == Decision::yes);
    CHECK(oracle::modules_isomorphic(to_rep(m), to_rep(m2)));
  }
  CHECK(module_iso(fx.mod("S2M2"), fx.mod("M2M2")).decision == Decision::no);
  CHECK(module_iso(fx.mod("SR3"), fx.mod("M2M2")).decision == Decision::no);
}
