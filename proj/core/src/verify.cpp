#include "stabcat/verify.hpp"

#include "stabcat/repfile.hpp"

namespace stabcat {

std::string arrow(const Morphism& f) { return f.src().name() + " -> " + f.dst().name(); }

Witness make_witness(std::string instance, std::string detail,
                     std::initializer_list<std::pair<const char*, const Morphism*>> maps) {
  Witness w{std::move(instance), std::move(detail), {}};
  for (const auto& [label, m] : maps) w.matrices.emplace_back(label, matrix_literal(m->mat()));
  return w;
}

namespace {

std::string tag(const char* prefix, std::size_t i) { return std::string(prefix) + std::to_string(i); }

// Runs one instance; an exception becomes a failure of the named row.
template <class Fn>
void guarded(Report& rep, const char* row, const std::string& inst, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    rep.row(row).fail(Witness{inst, e.what(), {}});
  }
}

// ---- left side --------------------------------------------------------------

std::optional<std::string> pullback_defect(const PullbackRecord& r, const ApproxContext& ctx) {
  const auto& ra = ctx.right(r.f.dst());
  if (!(ra.p * r.theta == r.f * r.eta)) return "p_A theta != f eta";
  if (!(r.theta * r.zeta == ra.iota)) return "theta zeta != iota_A";
  if (!(r.eta * r.zeta).is_zero()) return "eta zeta != 0";
  if (!is_mono(r.zeta)) return "zeta not mono";
  if (rank(r.eta.mat()) + ra.k.dim() != r.pb.dim()) return "row K_A -> PB -> B not exact at PB";
  if (!is_X_epic(r.eta, ctx)) return "eta not X-epic";
  return std::nullopt;
}

void check_lt1(const ApproxContext& ctx, const Module& a, std::size_t i, Report& rep) {
  auto& row = rep.row("LT1 identity triangle 0 -> A -> A -> 0 is distinguished");
  const Module z = Module::zero(ctx.field(), ctx.generators());
  auto t1 = trivial_left_triangle(a, ctx);
  auto t2 = distinguished_left_triangle(Morphism::zero(a, z), ctx);
  auto c = compare_triangles(t1, t2, ctx);
  Witness w = make_witness(tag("A#", i) + " " + a.name(), c.method, {{"C", &t2.g}});
  if (c.decision == Decision::undecided)
    row.undecide(w);
  else
    row.record(c.decision == Decision::yes, w);
}

void check_lt2(const ApproxContext& ctx, const LeftTriangle& t, const std::string& inst, Report& rep) {
  auto& row = rep.row("LT2 rotation of a distinguished triangle is distinguished");
  const LeftTriangle rt = rotate_left(t, ctx);
  const LeftTriangle d2 = distinguished_left_triangle(rt.f, ctx);
  const Morphism id_b = Morphism::identity(rt.b());
  const Morphism id_a = Morphism::identity(rt.a());
  std::string how = "constructive comparison";
  bool ok = false;
  // gamma into PB(g) from (h; v) with p_B v = g h.
  if (auto v = ctx.lift_through_right(rt.a(), rt.f * rt.g)) {
    Morphism gamma = d2.pullback->mediate(rt.g, v->particular);
    ok = check_left_morphism(rt, d2, gamma, id_b, id_a, ctx).all() && is_stable_iso(gamma, ctx);
  }
  if (!ok) {
    CompareOptions opts;
    opts.hint = std::make_pair(id_b, id_a);
    auto c = compare_triangles(rt, d2, ctx, opts);
    how = c.method;
    if (c.decision == Decision::undecided) {
      row.undecide(make_witness(inst, how, {{"f", &t.f}, {"h'", &rt.h}}));
      return;
    }
    ok = c.decision == Decision::yes;
  }
  row.record(ok, make_witness(inst, how, {{"f", &t.f}, {"h'", &rt.h}}));
}

void check_lt3(const ApproxContext& ctx, Sampler& s, std::size_t i, Report& rep) {
  auto& row = rep.row("LT3 filler completes a morphism of triangles");
  Morphism f1 = s.morphism();
  const Module& a2 = s.object();
  const Module& b2 = s.object();
  Morphism alpha = s.hom(f1.dst(), a2);
  Morphism beta = s.hom(f1.src(), b2);
  Morphism f2;
  auto sol = solve_stable(b2, a2, {{Morphism::identity(a2), beta, alpha * f1}}, ctx);
  if (sol) {
    f2 = sol->particular;
    for (const auto& hgen : sol->homogeneous) f2 = f2 + hgen.scaled(s.scalar());
  } else {
    f2 = alpha * f1;
    beta = Morphism::identity(f1.src());
  }
  const std::string inst = tag("#", i) + " " + arrow(f1) + " => " + arrow(f2);
  auto t1 = distinguished_left_triangle(f1, ctx);
  auto t2 = distinguished_left_triangle(f2, ctx);
  try {
    auto gamma = fill_lt3(t1, t2, alpha, beta, ctx);
    bool ok = check_left_morphism(t1, t2, gamma.rep(), beta, alpha, ctx).all();
    row.record(ok, make_witness(inst, "filler squares", {{"f1", &f1}, {"f2", &f2}, {"alpha", &alpha},
                                                         {"beta", &beta}, {"gamma", &gamma.rep()}}));
  } catch (const std::exception& e) {
    row.fail(make_witness(inst, e.what(), {{"f1", &f1}, {"f2", &f2}, {"alpha", &alpha}, {"beta", &beta}}));
  }
}

void record_octahedron(CheckRow& row, const OctahedronRecord& o, const std::string& inst) {
  std::string failed;
  for (const auto& c : o.checks)
    if (!c.pass) failed += (failed.empty() ? "" : "; ") + c.name;
  row.record(o.ok(), make_witness(inst, failed.empty() ? "all identities hold" : failed,
                                  {{"g", &o.g}, {"f", &o.f}, {"alpha", &o.alpha}, {"beta", &o.beta},
                                   {"left-top defect", &o.left_top_defect}}));
}

void check_lt4(const ApproxContext& ctx, Sampler& s, std::size_t i, Report& rep) {
  auto& row = rep.row("LT4 octahedron (kernel, X-epic and stable identities)");
  const Module& c = s.object();
  const Module& b = s.object();
  const Module& a = s.object();
  Morphism g = s.hom(c, b);
  Morphism f = s.hom(b, a);
  if (!is_X_epic(g, ctx)) g = make_special_epic(g, ctx);
  const std::string inst = tag("#", i) + " " + arrow(g) + " ; " + arrow(f);
  try {
    record_octahedron(row, octahedron(g, f, ctx), inst);
  } catch (const std::exception& e) {
    row.fail(make_witness(inst, e.what(), {{"g", &g}, {"f", &f}}));
  }
}

void check_induced(const ApproxContext& ctx, Sampler& s, std::size_t i, Report& rep) {
  auto& row = rep.row("Induced and distinguished triangles of an X-epic are isomorphic");
  Morphism g = s.morphism();
  if (!is_X_epic(g, ctx)) g = make_special_epic(g, ctx);
  const std::string inst = tag("#", i) + " " + arrow(g);
  auto c = compare_triangles(induced_left_triangle(g, ctx), distinguished_left_triangle(g, ctx), ctx);
  Witness w = make_witness(inst, c.method, {{"g", &g}});
  if (c.decision == Decision::undecided)
    row.undecide(w);
  else
    row.record(c.decision == Decision::yes, w);
}

void check_round_trip(const ApproxContext& ctx, const LeftTriangle& t, const std::string& inst, Report& rep) {
  auto& row = rep.row("Distinguished eta is X-epic and its induced triangle round-trips");
  const Morphism& eta = t.g;
  if (!is_X_epic(eta, ctx)) {
    row.fail(make_witness(inst, "eta not X-epic", {{"f", &t.f}, {"eta", &eta}}));
    return;
  }
  auto c = compare_triangles(induced_left_triangle(eta, ctx), distinguished_left_triangle(eta, ctx), ctx);
  Witness w = make_witness(inst, c.method, {{"f", &t.f}, {"eta", &eta}});
  if (c.decision == Decision::undecided)
    row.undecide(w);
  else
    row.record(c.decision == Decision::yes, w);
}

void verify_left(const ApproxContext& ctx, const SampleSpec& spec, Sampler& s, Report& rep) {
  rep.row("LT1 distinguished triangle of every morphism");
  rep.row("LT1 identity triangle 0 -> A -> A -> 0 is distinguished");
  rep.row("LT2 rotation of a distinguished triangle is distinguished");
  rep.row("LT3 filler completes a morphism of triangles");
  rep.row("LT4 octahedron (kernel, X-epic and stable identities)");
  rep.row("Induced and distinguished triangles of an X-epic are isomorphic");
  rep.row("Distinguished eta is X-epic and its induced triangle round-trips");
  if (s.empty()) return;
  for (std::size_t i = 0; i < s.universe().size(); ++i)
    guarded(rep, "LT1 identity triangle 0 -> A -> A -> 0 is distinguished", tag("A#", i),
            [&] { check_lt1(ctx, s.universe()[i], i, rep); });
  for (std::size_t i = 0; i < spec.morphisms; ++i) {
    Morphism f = s.morphism();
    const std::string inst = tag("#", i) + " " + arrow(f);
    std::optional<LeftTriangle> t;
    guarded(rep, "LT1 distinguished triangle of every morphism", inst, [&] {
      t = distinguished_left_triangle(f, ctx);
      auto d = pullback_defect(*t->pullback, ctx);
      rep.row("LT1 distinguished triangle of every morphism")
          .record(!d, make_witness(inst, d.value_or(""), {{"f", &f}, {"eta", &t->g}, {"zeta", &t->h}}));
    });
    if (t)
      guarded(rep, "LT2 rotation of a distinguished triangle is distinguished", inst,
              [&] { check_lt2(ctx, *t, inst, rep); });
    check_lt3(ctx, s, i, rep);
  }
  for (std::size_t i = 0; i < spec.pairs; ++i) {
    check_lt4(ctx, s, i, rep);
    guarded(rep, "Induced and distinguished triangles of an X-epic are isomorphic", tag("#", i),
            [&] { check_induced(ctx, s, i, rep); });
    Morphism f = s.morphism();
    const std::string inst = tag("#", i) + " " + arrow(f);
    guarded(rep, "Distinguished eta is X-epic and its induced triangle round-trips", inst,
            [&] { check_round_trip(ctx, distinguished_left_triangle(f, ctx), inst, rep); });
  }
}

// ---- right side -------------------------------------------------------------

std::optional<std::string> pushout_defect(const PushoutRecord& r, const ApproxContext& ctx) {
  const auto& la = ctx.left(r.g.src());
  if (!(r.mu * r.g == r.m * la.nu)) return "mu g != m nu^C";
  if (!(r.pi * r.mu).is_zero()) return "pi mu != 0";
  if (!(r.pi * r.m == la.pi)) return "pi m != pi^C";
  if (!is_epi(r.pi)) return "pi not epi";
  if (rank(r.mu.mat()) + la.k.dim() != r.po.dim()) return "row D -> PO -> K^C not exact at PO";
  if (!is_X_monic(r.mu, ctx)) return "mu not X-monic";
  return std::nullopt;
}

void check_rt1(const ApproxContext& ctx, const Module& a, std::size_t i, Report& rep) {
  auto& row = rep.row("RT1 identity triangle 0 -> A -> A -> 0 is distinguished");
  const Module z = Module::zero(ctx.field(), ctx.generators());
  auto t1 = trivial_right_triangle(a, ctx);
  auto t2 = distinguished_right_triangle(Morphism::zero(z, a), ctx);
  auto c = compare_right_triangles(t1, t2, ctx);
  Witness w = make_witness(tag("A#", i) + " " + a.name(), c.method, {{"mu", &t2.g}});
  if (c.decision == Decision::undecided)
    row.undecide(w);
  else
    row.record(c.decision == Decision::yes, w);
}

void check_rt2(const ApproxContext& ctx, const RightTriangle& t, const std::string& inst, Report& rep) {
  auto& row = rep.row("RT2 rotation of a distinguished triangle is distinguished");
  const RightTriangle rr = rotate_right(t, ctx);
  const RightTriangle d2 = distinguished_right_triangle(rr.f, ctx);
  const Morphism id_a = Morphism::identity(rr.a());
  const Morphism id_b = Morphism::identity(rr.b());
  std::string how = "constructive comparison";
  bool ok = false;
  // gamma out of PO(g) from (h, v) with v nu^B = h g.
  if (auto v = ctx.extend_through_left(rr.a(), rr.g * rr.f)) {
    Morphism gamma = d2.pushout->push.mediate(rr.g, v->particular);
    ok = check_right_morphism(d2, rr, id_a, id_b, gamma, ctx).all() && is_stable_iso(gamma, ctx);
  }
  if (!ok) {
    CompareOptions opts;
    opts.hint = std::make_pair(id_b, id_a);
    auto c = compare_right_triangles(d2, rr, ctx, opts);
    how = c.method;
    if (c.decision == Decision::undecided) {
      row.undecide(make_witness(inst, how, {{"f", &t.f}, {"h'", &rr.h}}));
      return;
    }
    ok = c.decision == Decision::yes;
  }
  row.record(ok, make_witness(inst, how, {{"f", &t.f}, {"h'", &rr.h}}));
}

void check_rt3(const ApproxContext& ctx, Sampler& s, std::size_t i, Report& rep) {
  auto& row = rep.row("RT3 filler completes a morphism of triangles");
  Morphism f1 = s.morphism();
  const Module& a2 = s.object();
  const Module& b2 = s.object();
  Morphism alpha = s.hom(f1.src(), a2);
  Morphism beta = s.hom(f1.dst(), b2);
  Morphism f2;
  auto sol = solve_stable(a2, b2, {{Morphism::identity(b2), alpha, beta * f1}}, ctx);
  if (sol) {
    f2 = sol->particular;
    for (const auto& hgen : sol->homogeneous) f2 = f2 + hgen.scaled(s.scalar());
  } else {
    f2 = beta * f1;
    alpha = Morphism::identity(f1.src());
  }
  const std::string inst = tag("#", i) + " " + arrow(f1) + " => " + arrow(f2);
  auto t1 = distinguished_right_triangle(f1, ctx);
  auto t2 = distinguished_right_triangle(f2, ctx);
  try {
    auto gamma = fill_rt3(t1, t2, alpha, beta, ctx);
    bool ok = check_right_morphism(t1, t2, alpha, beta, gamma.rep(), ctx).all();
    row.record(ok, make_witness(inst, "filler squares", {{"f1", &f1}, {"f2", &f2}, {"alpha", &alpha},
                                                         {"beta", &beta}, {"gamma", &gamma.rep()}}));
  } catch (const std::exception& e) {
    row.fail(make_witness(inst, e.what(), {{"f1", &f1}, {"f2", &f2}, {"alpha", &alpha}, {"beta", &beta}}));
  }
}

void check_rt4(const ApproxContext& ctx, const ApproxContext& dual, Sampler& s, std::size_t i, Report& rep) {
  auto& row = rep.row("RT4 octahedron (dual context)");
  const Module& a = s.object();
  const Module& b = s.object();
  const Module& c = s.object();
  Morphism f = s.hom(a, b);
  Morphism g = s.hom(b, c);
  // D(g) must be X-epic in the dual context, so g is made X-monic.
  if (!is_X_monic(g, ctx)) g = make_special_monic(g, ctx);
  const std::string inst = tag("#", i) + " " + arrow(f) + " ; " + arrow(g);
  try {
    record_octahedron(row, octahedron(dual_morphism(g), dual_morphism(f), dual), inst);
  } catch (const std::exception& e) {
    row.fail(make_witness(inst, e.what(), {{"f", &f}, {"g", &g}}));
  }
}

void verify_right(const ApproxContext& ctx, const SampleSpec& spec, Sampler& s, Report& rep) {
  rep.row("RT1 distinguished triangle of every morphism");
  rep.row("RT1 identity triangle 0 -> A -> A -> 0 is distinguished");
  rep.row("RT2 rotation of a distinguished triangle is distinguished");
  rep.row("RT3 filler completes a morphism of triangles");
  rep.row("RT4 octahedron (dual context)");
  if (s.empty()) return;
  for (std::size_t i = 0; i < s.universe().size(); ++i)
    guarded(rep, "RT1 identity triangle 0 -> A -> A -> 0 is distinguished", tag("A#", i),
            [&] { check_rt1(ctx, s.universe()[i], i, rep); });
  for (std::size_t i = 0; i < spec.morphisms; ++i) {
    Morphism f = s.morphism();
    const std::string inst = tag("#", i) + " " + arrow(f);
    std::optional<RightTriangle> t;
    guarded(rep, "RT1 distinguished triangle of every morphism", inst, [&] {
      t = distinguished_right_triangle(f, ctx);
      auto d = pushout_defect(*t->pushout, ctx);
      rep.row("RT1 distinguished triangle of every morphism")
          .record(!d, make_witness(inst, d.value_or(""), {{"f", &f}, {"mu", &t->g}, {"pi", &t->h}}));
    });
    if (t)
      guarded(rep, "RT2 rotation of a distinguished triangle is distinguished", inst,
              [&] { check_rt2(ctx, *t, inst, rep); });
    check_rt3(ctx, s, i, rep);
  }
  auto dual = dual_context(ctx);
  for (std::size_t i = 0; i < spec.pairs; ++i) check_rt4(ctx, *dual, s, i, rep);
}

}  // namespace

Report verify_axioms(const ApproxContext& ctx, const SampleSpec& spec, Side side) {
  Report rep(side == Side::left ? "left triangulation" : "right triangulation");
  rep.seed = spec.seed;
  Sampler s(ctx, sample_universe(spec), spec.seed);
  if (side == Side::left)
    verify_left(ctx, spec, s, rep);
  else
    verify_right(ctx, spec, s, rep);
  return rep;
}

Report verify_functors(const ApproxContext& ctx, const SampleSpec& spec) {
  Report rep("loop and suspension functors");
  rep.seed = spec.seed;
  Sampler s(ctx, sample_universe(spec), spec.seed);
  const char* names[] = {"Omega independent of the chosen lift",    "Omega respects stable equality",
                         "Omega preserves identities",              "Omega preserves composition",
                         "Omega is additive",                       "Sigma independent of the chosen extension",
                         "Sigma respects stable equality",          "Sigma preserves identities",
                         "Sigma preserves composition",             "Sigma is additive"};
  for (const char* n : names) rep.row(n);
  if (s.empty()) return rep;

  auto om = [&](const Morphism& f) { return omega_lift(f, ctx).kappa; };
  auto sg = [&](const Morphism& f) { return sigma_lift(f, ctx).kappa; };

  for (std::size_t i = 0; i < spec.morphisms; ++i) {
    Morphism f = s.morphism();
    const std::string inst = tag("#", i) + " " + arrow(f);
    try {
      // Re-lift: perturb the particular lift by a random homogeneous solution.
      LiftSet xs = omega_lifts(f, ctx);
      Morphism x2 = xs.particular;
      for (const auto& hgen : xs.homogeneous) x2 = x2 + hgen.scaled(s.scalar());
      if (x2 == xs.particular && !xs.homogeneous.empty()) x2 = x2 + xs.homogeneous[s.index(xs.homogeneous.size())];
      Morphism k1 = omega_from_lift(f, xs.particular, ctx).kappa;
      Morphism k2 = omega_from_lift(f, x2, ctx).kappa;
      rep.row(names[0]).record(stable_equal(k1, k2, ctx),
                               make_witness(inst, "kappa differs stably", {{"x", &xs.particular}, {"x'", &x2}}));

      LiftSet ys = sigma_lifts(f, ctx);
      Morphism y2 = ys.particular;
      for (const auto& hgen : ys.homogeneous) y2 = y2 + hgen.scaled(s.scalar());
      if (y2 == ys.particular && !ys.homogeneous.empty()) y2 = y2 + ys.homogeneous[s.index(ys.homogeneous.size())];
      Morphism c1 = sigma_from_lift(f, ys.particular, ctx).kappa;
      Morphism c2 = sigma_from_lift(f, y2, ctx).kappa;
      rep.row(names[5]).record(stable_equal(c1, c2, ctx),
                               make_witness(inst, "kappa differs stably", {{"y", &ys.particular}, {"y'", &y2}}));

      if (i % 2 == 0) {
        Morphism g = f + s.factoring_map(f.src(), f.dst());
        const bool se = stable_equal(f, g, ctx);
        Morphism of = om(f), og = om(g), sf = sg(f), sgm = sg(g);
        rep.row(names[1]).record(se && stable_equal(of, og, ctx), make_witness(inst, "", {{"f", &f}, {"g", &g}}));
        rep.row(names[6]).record(se && stable_equal(sf, sgm, ctx), make_witness(inst, "", {{"f", &f}, {"g", &g}}));

        const Module& a = f.src();
        Morphism ida = Morphism::identity(a);
        Morphism oid = om(ida), sid = sg(ida);
        rep.row(names[2]).record(stable_equal(oid, Morphism::identity(oid.src()), ctx),
                                 make_witness(a.name(), "", {{"Omega(1)", &oid}}));
        rep.row(names[7]).record(stable_equal(sid, Morphism::identity(sid.src()), ctx),
                                 make_witness(a.name(), "", {{"Sigma(1)", &sid}}));

        Morphism h = s.hom(f.dst(), s.object());
        Morphism hf = h * f;
        rep.row(names[3]).record(stable_equal(om(hf), om(h) * of, ctx),
                                 make_witness(inst, "", {{"f", &f}, {"h", &h}}));
        rep.row(names[8]).record(stable_equal(sg(hf), sg(h) * sf, ctx),
                                 make_witness(inst, "", {{"f", &f}, {"h", &h}}));

        Morphism f2 = s.hom(f.src(), f.dst());
        rep.row(names[4]).record(stable_equal(om(f + f2), of + om(f2), ctx),
                                 make_witness(inst, "", {{"f", &f}, {"f'", &f2}}));
        rep.row(names[9]).record(stable_equal(sg(f + f2), sf + sg(f2), ctx),
                                 make_witness(inst, "", {{"f", &f}, {"f'", &f2}}));
      }
    } catch (const std::exception& e) {
      rep.row(names[0]).fail(Witness{inst, e.what(), {}});
    }
  }
  return rep;
}

}  // namespace stabcat
