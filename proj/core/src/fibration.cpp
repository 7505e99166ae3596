#include "stabcat/fibration.hpp"

#include <stdexcept>

#include "stabcat/verify.hpp"

namespace stabcat {

PathObjectRecord path_object(const Module& a, const ApproxContext& ctx) {
  const auto& ra = ctx.right(a);
  PathObjectRecord r;
  r.a = a;
  const auto ds = direct_sum(a, ra.x);
  r.obj = ds.obj;
  r.q = ds.in[0];
  const Morphism id = Morphism::identity(a);
  r.p0 = row_morphism({id, ra.p});
  r.p1 = row_morphism({id, Morphism::zero(ra.x, a)});
  return r;
}

Factorization factorize(const Morphism& f, const ApproxContext& ctx) {
  const auto& rb = ctx.right(f.dst());
  return {column_morphism({Morphism::identity(f.src()), Morphism::zero(f.src(), rb.x)}), row_morphism({f, rb.p})};
}

bool is_fibration(const Morphism& f, const ApproxContext& ctx) { return is_X_epic(f, ctx); }

bool is_weak_equivalence(const Morphism& f, const ApproxContext& ctx) { return is_stable_iso(f, ctx); }

bool is_acyclic_fibration(const Morphism& f, const ApproxContext& ctx) {
  if (!is_X_epic(f, ctx)) return false;
  if (!lift_through(f, Morphism::identity(f.dst()))) return false;
  return is_stably_zero(kernel(f).obj, ctx);
}

std::optional<Morphism> homotopy(const Morphism& f, const Morphism& g, const ApproxContext& ctx) {
  if (!(f.src() == g.src()) || !(f.dst() == g.dst())) throw DimensionError("homotopy: morphisms are not parallel");
  const PathObjectRecord po = path_object(f.dst(), ctx);
  return lift_through(po.fibration(), column_morphism({f, g}));
}

bool homotopic(const Morphism& f, const Morphism& g, const ApproxContext& ctx) {
  const bool h = homotopy(f, g, ctx).has_value();
  if (h != stable_equal(f, g, ctx)) throw std::logic_error("homotopy relation disagrees with stable equality");
  return h;
}

Morphism right_homotopy_witness(const Morphism& f, const Morphism& g, const ApproxContext& ctx) {
  if (!stable_equal(f, g, ctx)) throw std::invalid_argument("not stably equal");
  auto t = ctx.lift_through_right(f.dst(), f - g);
  if (!t) throw std::runtime_error("f - g factors through X but not through p_B");
  return column_morphism({g, t->particular});
}

namespace {

// A split epi A + W -> A with kernel isomorphic to W, or the fold map W + W -> W.
Morphism sample_acyclic_fibration(Sampler& s, const ApproxContext& ctx) {
  const Module& w = ctx.generator();
  if (s.index(3) == 0) {
    const Morphism id = Morphism::identity(w);
    return row_morphism({id, id});
  }
  const Module& a = s.object();
  return row_morphism({s.automorphism(a), s.hom(w, a)});
}

// A map out of b of a random kind: arbitrary, automorphism, or the split
// mono b -> b + X_b.
Morphism sample_from(Sampler& s, const Module& b, const ApproxContext& ctx) {
  switch (s.index(3)) {
    case 0: return s.hom(b, s.object());
    case 1: return s.automorphism(b);
    default: return factorize(Morphism::identity(b), ctx).we;
  }
}

std::string tag(std::size_t i) { return "#" + std::to_string(i); }

}  // namespace

Report verify_fibration_axioms(const ApproxContext& ctx, const SampleSpec& spec) {
  Report rep("fibration structure");
  rep.seed = spec.seed;
  const char* r_iso = "F1 isomorphisms are fibrations and weak equivalences";
  const char* r_comp = "F1 composites of fibrations are fibrations";
  const char* r_2of3 = "F2 two-out-of-three for weak equivalences";
  const char* r_pbf = "F3 pullback of a fibration is a fibration";
  const char* r_pba = "F3 pullback of an acyclic fibration is acyclic";
  const char* r_fact = "F4 factorization into weak equivalence and fibration";
  const char* r_htpy = "Homotopic iff stably equal";
  const char* r_wit = "Right homotopy witness satisfies p0 H = f and p1 H = g";
  const char* r_path = "Path object: p0 q = p1 q = 1 and (p0; p1) is a fibration";
  const char* r_ker = "Path object kernel is isomorphic to Omega(A)";
  for (const char* n : {r_iso, r_comp, r_2of3, r_pbf, r_pba, r_fact, r_htpy, r_wit, r_path, r_ker}) rep.row(n);
  Sampler s(ctx, sample_universe(spec), spec.seed);
  if (s.empty()) return rep;
  rep.notes.push_back("kernels exist for every morphism in the ambient module category");

  for (std::size_t i = 0; i < spec.morphisms; ++i) {
    const std::string inst = tag(i);

    const Module& a0 = s.object();
    Morphism u = s.automorphism(a0);
    rep.row(r_iso).record(is_fibration(u, ctx) && is_weak_equivalence(u, ctx),
                          make_witness(inst + " " + arrow(u), "", {{"u", &u}}));

    {
      Morphism g = s.morphism();
      if (!is_fibration(g, ctx)) g = make_special_epic(g, ctx);
      Morphism f = s.hom(g.dst(), s.object());
      for (int tries = 0; tries < 8 && !is_fibration(f, ctx); ++tries) f = s.hom(g.dst(), s.object());
      if (!is_fibration(f, ctx)) f = s.automorphism(g.dst());
      Morphism fg = f * g;
      rep.row(r_comp).record(is_fibration(fg, ctx), make_witness(inst, "composite not X-epic", {{"g", &g}, {"f", &f}}));
    }

    {
      const Module& a = s.object();
      Morphism f1;
      switch (s.index(4)) {
        case 0: f1 = s.hom(a, s.object()); break;
        case 1: f1 = s.automorphism(a); break;
        case 2: f1 = factorize(Morphism::identity(a), ctx).we; break;
        default: f1 = sample_acyclic_fibration(s, ctx); break;
      }
      Morphism g1 = sample_from(s, f1.dst(), ctx);
      Morphism gf = g1 * f1;
      const int n = is_weak_equivalence(f1, ctx) + is_weak_equivalence(g1, ctx) + is_weak_equivalence(gf, ctx);
      rep.row(r_2of3).record(n != 2, make_witness(inst, "exactly two of f, g, gf are weak equivalences",
                                                  {{"f", &f1}, {"g", &g1}}));
    }

    {
      Morphism p = s.morphism();
      if (!is_fibration(p, ctx)) p = make_special_epic(p, ctx);
      Morphism base = s.hom(s.object(), p.dst());
      auto pb = pullback(p, base);
      rep.row(r_pbf).record(is_fibration(pb.q2, ctx),
                            make_witness(inst, "base change not X-epic", {{"p", &p}, {"f", &base}}));

      Morphism t = sample_acyclic_fibration(s, ctx);
      Morphism base2 = s.hom(s.object(), t.dst());
      auto pb2 = pullback(t, base2);
      const bool pre = is_acyclic_fibration(t, ctx);
      rep.row(r_pba).record(pre && is_acyclic_fibration(pb2.q2, ctx),
                            make_witness(inst, pre ? "base change not acyclic" : "sampled map not acyclic",
                                         {{"t", &t}, {"f", &base2}, {"t'", &pb2.q2}}));
    }

    {
      Morphism h = s.morphism();
      auto fz = factorize(h, ctx);
      const bool ok = fz.fib * fz.we == h && is_fibration(fz.fib, ctx) && is_weak_equivalence(fz.we, ctx);
      rep.row(r_fact).record(ok, make_witness(inst + " " + arrow(h), "fib * we != f or a factor has the wrong type", {{"f", &h}, {"we", &fz.we}, {"fib", &fz.fib}}));
    }

    {
      Morphism h1 = s.morphism();
      Morphism h2 = i % 2 == 0 ? h1 + s.factoring_map(h1.src(), h1.dst()) : s.hom(h1.src(), h1.dst());
      const std::string hi = inst + " " + arrow(h1);
      try {
        const bool se = homotopic(h1, h2, ctx);
        rep.row(r_htpy).pass();
        if (se) {
          const PathObjectRecord po = path_object(h1.dst(), ctx);
          Morphism wH = right_homotopy_witness(h1, h2, ctx);
          rep.row(r_wit).record(po.p0 * wH == h1 && po.p1 * wH == h2,
                                make_witness(hi, "p0 H != f or p1 H != g", {{"f", &h1}, {"g", &h2}, {"H", &wH}}));
        }
      } catch (const std::logic_error& e) {
        rep.row(r_htpy).fail(make_witness(hi, e.what(), {{"f", &h1}, {"g", &h2}}));
      }
    }
  }

  const std::size_t n_obj = std::max<std::size_t>(20, s.universe().size());
  for (std::size_t i = 0; i < n_obj; ++i) {
    Module a = i < s.universe().size() ? s.universe()[i] : s.object();
    if (i >= s.universe().size()) {
      const Module& b = s.object();
      if (a.dim() + b.dim() <= 6) a = direct_sum(a, b).obj.renamed(a.name() + "+" + b.name());
    }
    const PathObjectRecord po = path_object(a, ctx);
    const Morphism id = Morphism::identity(a);
    const Morphism fib = po.fibration();
    rep.row(r_path).record(po.p0 * po.q == id && po.p1 * po.q == id && is_fibration(fib, ctx),
                           make_witness(a.name(), "path object identities or X-epic check failed", {{"p0", &po.p0}, {"p1", &po.p1}}));
    auto iso = module_iso(kernel(fib).obj, ctx.right(a).k, spec.seed);
    Witness w = make_witness(a.name(), iso.method, {{"(p0; p1)", &fib}});
    if (iso.decision == Decision::undecided)
      rep.row(r_ker).undecide(w);
    else
      rep.row(r_ker).record(iso.decision == Decision::yes, w);
  }
  return rep;
}

Report verify_cofibration_axioms(const ApproxContext& ctx, const SampleSpec& spec) {
  auto dual = dual_context(ctx);
  SampleSpec ds = spec;
  ds.universe.clear();
  for (const auto& m : spec.universe) ds.universe.push_back(dual_module(m));
  Report rep("cofibration structure (dual context)");
  rep.seed = spec.seed;
  rep.merge(verify_fibration_axioms(*dual, ds));
  return rep;
}

Report homotopy_category_form_check(const ApproxContext& ctx, const SampleSpec& spec) {
  Report rep("homotopy category morphisms");
  rep.seed = spec.seed;
  const char* r_split = "Acyclic fibrations admit right inverses";
  const char* r_ind = "f s is independent of the right inverse s";
  const char* r_id = "Identity acyclic fibration rewrites to f";
  for (const char* n : {r_split, r_ind, r_id}) rep.row(n);
  Sampler s(ctx, sample_universe(spec), spec.seed);
  if (s.empty()) return rep;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < spec.morphisms; ++i) {
    const std::string inst = tag(i);
    Morphism t;
    if (i % 4 == 3) {
      t = make_special_epic(s.morphism(), ctx);
      if (!is_acyclic_fibration(t, ctx)) {
        ++skipped;
        continue;
      }
    } else {
      t = sample_acyclic_fibration(s, ctx);
    }
    Morphism f = s.hom(t.src(), s.object());
    auto ls = all_lifts(t, Morphism::identity(t.dst()));
    rep.row(r_split).record(ls.has_value(), make_witness(inst, "no right inverse", {{"t", &t}}));
    if (!ls) continue;
    Morphism s2 = ls->particular;
    for (const auto& hgen : ls->homogeneous) s2 = s2 + hgen.scaled(s.scalar());
    if (s2 == ls->particular && !ls->homogeneous.empty()) s2 = s2 + ls->homogeneous.front();
    Morphism r1 = f * ls->particular, r2 = f * s2;
    rep.row(r_ind).record(t * s2 == Morphism::identity(t.dst()) && stable_equal(r1, r2, ctx),
                          make_witness(inst, "", {{"t", &t}, {"f", &f}, {"s", &ls->particular}, {"s'", &s2}}));

    Morphism id = Morphism::identity(f.src());
    auto li = lift_through(id, id);
    rep.row(r_id).record(li && f * *li == f, make_witness(inst, "", {{"f", &f}}));
  }
  if (skipped) rep.notes.push_back("skipped " + std::to_string(skipped) + " sampled fibrations that are not acyclic");
  return rep;
}

}  // namespace stabcat
