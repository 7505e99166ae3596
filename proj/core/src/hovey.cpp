#include "stabcat/hovey.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace stabcat {

// ---- classes ----------------------------------------------------------------

ClassSpec make_class(std::string name, std::vector<Module> members) {
  std::set<std::string> seen;
  for (const auto& m : members)
    if (!seen.insert(m.key()).second)
      throw std::invalid_argument("class " + name + ": member " + m.name() + " listed twice");
  return {std::move(name), std::move(members)};
}

ClassSpec class_spec(const RepFile& rf, std::string_view name) {
  return make_class(std::string(name), rf.class_members(name));
}

namespace {

// Sums of `gens` of total dimension m.dim(), tested for isomorphism with m.
Decision sum_of(const Module& m, const std::vector<Module>& gens, std::uint64_t seed) {
  if (m.dim() == 0) return Decision::yes;
  for (const auto& g : gens)
    if (g == m) return Decision::yes;
  bool undecided = false;
  std::vector<Module> parts;
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
    if (left == 0) {
      const Module sum = direct_sum(parts, m.field(), m.generators()).obj;
      const IsoResult r = module_iso(m, sum, seed);
      if (r.decision == Decision::undecided) undecided = true;
      return r.decision == Decision::yes;
    }
    for (std::size_t i = from; i < gens.size(); ++i) {
      if (gens[i].dim() == 0 || gens[i].dim() > left) continue;
      parts.push_back(gens[i]);
      const bool found = rec(i, left - gens[i].dim());
      parts.pop_back();
      if (found) return true;
    }
    return false;
  };
  if (rec(0, m.dim())) return Decision::yes;
  return undecided ? Decision::undecided : Decision::no;
}

std::vector<Module> reduce_generators(std::vector<Module> members, std::uint64_t seed) {
  std::stable_sort(members.begin(), members.end(), [](const Module& a, const Module& b) { return a.dim() < b.dim(); });
  std::vector<Module> gens;
  for (const auto& m : members) {
    if (m.dim() == 0) continue;
    if (sum_of(m, gens, seed) != Decision::yes) gens.push_back(m);
  }
  return gens;
}

}  // namespace

std::vector<Module> class_generators(const ClassSpec& c) { return reduce_generators(c.members, 0); }

Decision ClassMembership::operator()(const Module& m) {
  if (gens_.empty() && !spec_.members.empty()) gens_ = reduce_generators(spec_.members, seed_);
  auto it = memo_.find(m.key());
  if (it != memo_.end()) return it->second;
  const Decision d = sum_of(m, gens_, seed_);
  memo_.emplace(m.key(), d);
  return d;
}

Decision class_contains(const ClassSpec& c, const Module& m, std::uint64_t seed) {
  ClassMembership mem(c, seed);
  return mem(m);
}

ClassSpec class_intersection(const ClassSpec& a, const ClassSpec& b, const std::vector<Module>& universe) {
  ClassMembership ma(a), mb(b);
  std::vector<Module> out;
  std::set<std::string> seen;
  auto consider = [&](const Module& m) {
    if (seen.count(m.key())) return;
    if (ma(m) == Decision::yes && mb(m) == Decision::yes) {
      seen.insert(m.key());
      out.push_back(m);
    }
  };
  for (const auto& m : a.members) consider(m);
  for (const auto& m : b.members) consider(m);
  for (const auto& m : universe) consider(m);
  return {a.name + " n " + b.name, std::move(out)};
}

// ---- cotorsion pairs --------------------------------------------------------

const char* to_string(CotorsionCounterexample::Kind k) {
  switch (k) {
    case CotorsionCounterexample::Kind::ext_nonzero: return "ext_nonzero";
    case CotorsionCounterexample::Kind::not_maximal_left: return "not_maximal_left";
    case CotorsionCounterexample::Kind::not_maximal_right: return "not_maximal_right";
    case CotorsionCounterexample::Kind::incomplete: return "incomplete";
  }
  return "?";
}

namespace {

std::optional<std::size_t> try_ext1(const Module& x, const Module& y, const ApproxContext& ctx) {
  try {
    return ext1_dim(x, y, ctx);
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
}

Witness seq_witness(const std::string& inst, const std::string& detail, const ShortExactSeq& s) {
  return make_witness(inst, detail, {{"left", &s.left}, {"right", &s.right}});
}

}  // namespace

CotorsionResult check_cotorsion_pair(const ClassSpec& d, const ClassSpec& e, const ApproxContext& ctx,
                                     const std::vector<Module>& universe, std::uint64_t seed) {
  using Kind = CotorsionCounterexample::Kind;
  const std::string label = "(" + d.name + ", " + e.name + ") ";
  CotorsionResult res;
  res.report = Report("cotorsion pair " + label);
  res.report.seed = seed;
  Report& rep = res.report;
  const std::string r_orth = label + "Ext^1 orthogonality on member pairs";
  const std::string r_maxl = label + "left class is maximal in the universe";
  const std::string r_maxr = label + "right class is maximal in the universe";
  const std::string r_proj = label + "enough projectives";
  const std::string r_inj = label + "enough injectives";
  for (const auto& n : {r_orth, r_maxl, r_maxr, r_proj, r_inj}) rep.row(n);
  rep.notes.push_back(label + "maximality and completeness quantified over " + std::to_string(universe.size()) +
                      " universe objects");

  ClassMembership in_d(d, seed), in_e(e, seed);
  const std::vector<Module> gd = class_generators(d), ge = class_generators(e);
  auto note = [&](CotorsionCounterexample c) {
    if (!res.counterexample) res.counterexample = std::move(c);
  };

  for (const auto& x : gd)
    for (const auto& y : ge) {
      const std::string inst = "Ext^1(" + x.name() + ", " + y.name() + ")";
      const auto n = try_ext1(x, y, ctx);
      if (!n) {
        rep.row(r_orth).undecide({inst, "presentation unavailable", {}});
      } else if (*n != 0) {
        rep.row(r_orth).fail({inst, "dimension " + std::to_string(*n), {}});
        note({Kind::ext_nonzero, x, y, *n, inst + " = " + std::to_string(*n)});
      } else {
        rep.row(r_orth).pass();
      }
    }

  // X with Ext^1(X, E) = 0 must lie in D, and X with Ext^1(D, X) = 0 in E.
  for (const auto& x : universe) {
    bool orth_left = true, orth_right = true, unknown = false;
    for (const auto& y : ge) {
      const auto n = try_ext1(x, y, ctx);
      if (!n) unknown = true;
      else if (*n) orth_left = false;
    }
    for (const auto& y : gd) {
      const auto n = try_ext1(y, x, ctx);
      if (!n) unknown = true;
      else if (*n) orth_right = false;
    }
    if (unknown) {
      rep.row(r_maxl).undecide({x.name(), "presentation unavailable", {}});
      rep.row(r_maxr).undecide({x.name(), "presentation unavailable", {}});
      continue;
    }
    if (orth_left) {
      const Decision m = in_d(x);
      if (m == Decision::yes) rep.row(r_maxl).pass();
      else if (m == Decision::undecided) rep.row(r_maxl).undecide({x.name(), "membership undecided", {}});
      else {
        const std::string det = x.name() + " is Ext-orthogonal to every member of " + e.name + " but not in " + d.name;
        rep.row(r_maxl).fail({x.name(), det, {}});
        note({Kind::not_maximal_left, x, x, 0, det});
      }
    } else {
      rep.row(r_maxl).pass();
    }
    if (orth_right) {
      const Decision m = in_e(x);
      if (m == Decision::yes) rep.row(r_maxr).pass();
      else if (m == Decision::undecided) rep.row(r_maxr).undecide({x.name(), "membership undecided", {}});
      else {
        const std::string det = "every member of " + d.name + " is Ext-orthogonal to " + x.name() + " but it is not in " + e.name;
        rep.row(r_maxr).fail({x.name(), det, {}});
        note({Kind::not_maximal_right, x, x, 0, det});
      }
    } else {
      rep.row(r_maxr).pass();
    }
  }

  for (const auto& a : universe) {
    CotorsionWitness w;
    w.a = a;
    bool have_p = false, have_i = false;
    // 0 -> E -> D -> A -> 0
    if (in_d(a) == Decision::yes) {
      const Module z = Module::zero(a.field(), a.generators());
      w.projective = {Morphism::zero(z, a), Morphism::identity(a)};
      w.projective_source = "A in left class";
      have_p = true;
    } else {
      const auto& ra = ctx.right(a);
      ShortExactSeq s{ra.iota, ra.p};
      if (!exactness_defect(s) && in_d(ra.x) == Decision::yes && in_e(ra.k) == Decision::yes) {
        w.projective = s;
        w.projective_source = "0 -> K_A -> X_A -> A -> 0";
        have_p = true;
      }
    }
    // 0 -> A -> E' -> D' -> 0
    if (in_e(a) == Decision::yes) {
      const Module z = Module::zero(a.field(), a.generators());
      w.injective = {Morphism::identity(a), Morphism::zero(a, z)};
      w.injective_source = "A in right class";
      have_i = true;
    } else {
      const auto& la = ctx.left(a);
      ShortExactSeq s{la.nu, la.pi};
      if (!exactness_defect(s) && in_e(la.x) == Decision::yes && in_d(la.k) == Decision::yes) {
        w.injective = s;
        w.injective_source = "0 -> A -> X^A -> K^A -> 0";
        have_i = true;
      }
    }
    const std::string none = "no witness among the identity and approximation sequences";
    if (have_p) rep.row(r_proj).pass();
    else {
      rep.row(r_proj).undecide({a.name(), none, {}});
      note({Kind::incomplete, a, a, 0, "enough projectives: " + none + " for " + a.name()});
    }
    if (have_i) rep.row(r_inj).pass();
    else {
      rep.row(r_inj).undecide({a.name(), none, {}});
      note({Kind::incomplete, a, a, 0, "enough injectives: " + none + " for " + a.name()});
    }
    if (have_p && have_i) res.witnesses.push_back(std::move(w));
  }
  res.ok = rep.verdict() == Verdict::pass;
  return res;
}

namespace {

// One extension 0 -> A -> E -> C -> 0 per class in Ext^1(C, A), the split
// one included, as pushouts of 0 -> K_C -> X_C -> C -> 0 along K_C -> A.
std::vector<ShortExactSeq> extensions(const Module& c, const Module& a, const ApproxContext& ctx) {
  const auto& rc = ctx.right(c);
  const auto hk = hom_space(rc.k, a);
  const auto hx = hom_space(rc.x, a);
  Mat img(ctx.field(), hk->dim(), 0);
  for (const auto& b : hx->basis) img = hcat(img, hk->coordinates((b * rc.iota).mat()));
  const Mat comp = complement_basis(column_space(img));
  std::vector<Morphism> reps;
  for (std::size_t j = 0; j < comp.cols(); ++j) reps.push_back(hk->combine(comp.col(j)));

  std::vector<ShortExactSeq> out;
  const std::size_t n = reps.size();
  const std::uint32_t p = ctx.field().modulus();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n && total <= 4096; ++i) total *= p;
  total = std::min<std::uint64_t>(total, 4096);
  for (std::uint64_t code = 0; code < total; ++code) {
    Morphism u = Morphism::zero(rc.k, a);
    std::uint64_t x = code;
    for (std::size_t i = 0; i < n; ++i) {
      u = u + reps[i].scaled(static_cast<std::uint32_t>(x % p));
      x /= p;
    }
    const PushoutResult po = pushout(rc.iota, u);
    out.push_back({po.j2, po.mediate(rc.p, Morphism::zero(a, c))});
  }
  return out;
}

}  // namespace

HoveyReport check_hovey_triple(const ClassSpec& cofibrant, const ClassSpec& trivial, const ClassSpec& fibrant,
                               const ApproxContext& ctx, const std::vector<Module>& universe, std::uint64_t seed) {
  HoveyReport hr;
  hr.report = Report("Hovey triple (" + cofibrant.name + ", " + trivial.name + ", " + fibrant.name + ")");
  hr.report.seed = seed;
  const ClassSpec wf = class_intersection(trivial, fibrant, universe);
  const ClassSpec cw = class_intersection(cofibrant, trivial, universe);
  hr.first = check_cotorsion_pair(cofibrant, wf, ctx, universe, seed);
  hr.second = check_cotorsion_pair(cw, fibrant, ctx, universe, seed);
  hr.report.merge(hr.first.report);
  hr.report.merge(hr.second.report);

  const std::string r_ses = "Trivial class has two-out-of-three on short exact sequences";
  const std::string r_sum = "Trivial class is closed under direct summands";
  hr.report.row(r_ses);
  hr.report.row(r_sum);
  ClassMembership in_w(trivial, seed);
  auto flag = [&](const std::string& row, Witness w) {
    if (!hr.thickness_counterexample) hr.thickness_counterexample = w;
    hr.report.row(row).fail(std::move(w));
  };

  for (const auto& c : universe)
    for (const auto& a : universe) {
      if (a.dim() + c.dim() > 6) continue;
      for (const auto& s : extensions(c, a, ctx)) {
        const Module& e = s.left.dst();
        const std::string inst = "0 -> " + a.name() + " -> E -> " + c.name() + " -> 0";
        if (auto bad = exactness_defect(s)) {
          hr.report.row(r_ses).fail(seq_witness(inst, "constructed sequence not exact: " + *bad, s));
          continue;
        }
        const Decision da = in_w(a), de = in_w(e), dc = in_w(c);
        const int yes = (da == Decision::yes) + (de == Decision::yes) + (dc == Decision::yes);
        const int no = (da == Decision::no) + (de == Decision::no) + (dc == Decision::no);
        if (yes == 2 && no == 1) {
          const std::string which = da == Decision::no ? "A" : de == Decision::no ? "E" : "C";
          flag(r_ses, seq_witness(inst, "two terms trivial, " + which + " is not", s));
        } else if (yes == 2) {
          hr.report.row(r_ses).undecide(seq_witness(inst, "membership undecided", s));
        } else {
          hr.report.row(r_ses).pass();
        }
      }
    }

  for (std::size_t i = 0; i < universe.size(); ++i)
    for (std::size_t j = i; j < universe.size(); ++j) {
      const Module& x = universe[i];
      const Module& y = universe[j];
      if (x.dim() + y.dim() > 6) continue;
      const Module sum = direct_sum(x, y).obj;
      if (in_w(sum) != Decision::yes) {
        hr.report.row(r_sum).pass();
        continue;
      }
      const Decision dx = in_w(x), dy = in_w(y);
      const std::string inst = x.name() + " + " + y.name();
      if (dx == Decision::no || dy == Decision::no)
        flag(r_sum, {inst, "sum is trivial, summand " + (dx == Decision::no ? x.name() : y.name()) + " is not", {}});
      else if (dx == Decision::undecided || dy == Decision::undecided)
        hr.report.row(r_sum).undecide({inst, "membership undecided", {}});
      else
        hr.report.row(r_sum).pass();
    }
  hr.report.notes.push_back("thickness checked on sequences with middle term of dim <= 6");
  return hr;
}

// ---- the four stable categories --------------------------------------------

const char* to_string(StableQuotient q) {
  switch (q) {
    case StableQuotient::fibrant_mod_omega: return "A_f/omega";
    case StableQuotient::fibrant_mod_bifibrant: return "A_f/A_cf";
    case StableQuotient::cofibrant_mod_omega: return "A_c/omega";
    case StableQuotient::cofibrant_mod_bifibrant: return "A_c/A_cf";
  }
  return "?";
}

ClassEngine omega_class_tri(const HoveyClasses& classes, StableQuotient which, const Module& w_omega,
                            std::uint64_t seed) {
  const bool fibrant = which == StableQuotient::fibrant_mod_omega || which == StableQuotient::fibrant_mod_bifibrant;
  const ClassSpec& cls = fibrant ? classes.fibrant : classes.cofibrant;
  ClassMembership in_cls(cls, seed);

  Module w = w_omega;
  if (which == StableQuotient::fibrant_mod_bifibrant || which == StableQuotient::cofibrant_mod_bifibrant) {
    const auto gens = class_generators(class_intersection(classes.cofibrant, classes.fibrant, classes.universe));
    if (gens.empty()) throw std::runtime_error("bifibrant class is empty");
    w = direct_sum(gens, gens.front().field(), gens.front().generators()).obj.renamed("A_cf");
  }
  if (in_cls(w) != Decision::yes) throw std::runtime_error("generator " + w.name() + " is not in class " + cls.name);

  ClassEngine eng;
  eng.which = which;
  eng.side = fibrant ? Side::left : Side::right;
  for (const auto& m : classes.universe)
    if (in_cls(m) == Decision::yes) eng.universe.push_back(m);
  eng.ctx = build_context(w, eng.universe);
  for (const auto& m : eng.universe) {
    const Module& k = fibrant ? eng.ctx->right(m).k : eng.ctx->left(m).k;
    if (in_cls(k) != Decision::yes)
      throw std::runtime_error(std::string(fibrant ? "Omega(" : "Sigma(") + m.name() + ") leaves class " + cls.name);
  }
  return eng;
}

namespace {
bool bifibrant(const Module& m, const HoveyClasses& c) {
  return class_contains(c.cofibrant, m) == Decision::yes && class_contains(c.fibrant, m) == Decision::yes;
}
}  // namespace

Module cofibrant_replacement(const Module& m, const HoveyClasses& classes) {
  if (!bifibrant(m, classes)) throw std::invalid_argument("replacement not supported");
  return m;
}

Module fibrant_replacement(const Module& m, const HoveyClasses& classes) {
  if (!bifibrant(m, classes)) throw std::invalid_argument("replacement not supported");
  return m;
}

// ---- adjunction -------------------------------------------------------------

Morphism adjunction_forward(const Module& a, const Morphism& alpha, const ApproxContext& ctx) {
  const auto& la = ctx.left(a);
  const Module& b = alpha.dst();
  if (!(alpha.src() == la.k)) throw DimensionError("adjunction: alpha must start at Sigma(A)");
  const auto& rb = ctx.right(b);
  auto x = ctx.lift_through_right(b, alpha * la.pi);
  if (!x) throw std::runtime_error("adjunction: alpha pi^A does not lift through p_B");
  auto kappa = lift_through(rb.iota, x->particular * la.nu);
  if (!kappa) throw std::runtime_error("adjunction: x nu^A does not land in Omega(B)");
  return -*kappa;
}

Morphism adjunction_backward(const Module& b, const Morphism& beta, const ApproxContext& ctx) {
  const auto& rb = ctx.right(b);
  const Module& a = beta.src();
  if (!(beta.dst() == rb.k)) throw DimensionError("adjunction: beta must end at Omega(B)");
  const auto& la = ctx.left(a);
  auto y = ctx.extend_through_left(a, rb.iota * beta);
  if (!y) throw std::runtime_error("adjunction: iota_B beta does not extend along nu^A");
  auto kappa = extend_through(la.pi, rb.p * y->particular);
  if (!kappa) throw std::runtime_error("adjunction: p_B y does not factor through Sigma(A)");
  return -*kappa;
}

AdjunctionMaps adjunction_phi(const Module& a, const Module& b, const ApproxContext& ctx) {
  AdjunctionMaps m;
  m.a = a;
  m.b = b;
  const Module& sa = ctx.left(a).k;
  const Module& ob = ctx.right(b).k;
  const StableHomSpace& left = ctx.stable_hom(sa, b);
  const StableHomSpace& right = ctx.stable_hom(a, ob);
  m.forward = Mat(ctx.field(), right.dim(), 0);
  for (const auto& al : left.stable_basis)
    m.forward = hcat(m.forward, right.stable_coordinates(adjunction_forward(a, al, ctx)));
  m.backward = Mat(ctx.field(), left.dim(), 0);
  for (const auto& be : right.stable_basis)
    m.backward = hcat(m.backward, left.stable_coordinates(adjunction_backward(b, be, ctx)));
  if (left.dim() == right.dim()) {
    m.forward_round_trip = (m.backward * m.forward).is_identity();
    m.backward_round_trip = (m.forward * m.backward).is_identity();
  }
  return m;
}

Report verify_adjunction(const ApproxContext& ctx, const SampleSpec& spec) {
  Report rep("adjunction");
  rep.seed = spec.seed;
  const std::string r_fw = "Adjunction round trip psi phi = 1 on stable bases";
  const std::string r_bw = "Adjunction round trip phi psi = 1 on stable bases";
  const std::string r_nat_phi = "phi is natural: phi(b alpha Sigma(a)) = Omega(b) phi(alpha) a";
  const std::string r_nat_psi = "psi is natural: psi(Omega(b) beta a) = b psi(beta) Sigma(a)";
  for (const auto& n : {r_fw, r_bw, r_nat_phi, r_nat_psi}) rep.row(n);
  const std::vector<Module> uni = sample_universe(spec);
  for (const auto& a : uni)
    for (const auto& b : uni) {
      const AdjunctionMaps m = adjunction_phi(a, b, ctx);
      const std::string inst = "(" + a.name() + ", " + b.name() + ")";
      Witness w{inst, "stable dims " + std::to_string(m.forward.cols()) + " and " + std::to_string(m.forward.rows()),
                {{"phi", matrix_literal(m.forward)}, {"psi", matrix_literal(m.backward)}}};
      rep.row(r_fw).record(m.forward_round_trip, w);
      rep.row(r_bw).record(m.backward_round_trip, w);
    }

  Sampler s(ctx, uni, spec.seed);
  if (s.empty()) return rep;
  for (std::size_t i = 0; i < spec.pairs; ++i) {
    const std::string inst = "#" + std::to_string(i);
    const Module& a1 = s.object();
    const Module& a = s.object();
    const Module& b = s.object();
    const Module& b1 = s.object();
    Morphism am = s.hom(a1, a), bm = s.hom(b, b1);
    Morphism sa = sigma_mor(am, ctx).rep();
    Morphism ob = omega_mor(bm, ctx).rep();

    Morphism alpha = s.hom(ctx.left(a).k, b);
    Morphism lhs = adjunction_forward(a1, bm * alpha * sa, ctx);
    Morphism rhs = ob * adjunction_forward(a, alpha, ctx) * am;
    rep.row(r_nat_phi).record(stable_equal(lhs, rhs, ctx),
                              make_witness(inst, "", {{"a", &am}, {"b", &bm}, {"alpha", &alpha}}));

    Morphism beta = s.hom(a, ctx.right(b).k);
    Morphism lhs2 = adjunction_backward(b1, ob * beta * am, ctx);
    Morphism rhs2 = bm * adjunction_backward(b, beta, ctx) * sa;
    rep.row(r_nat_psi).record(stable_equal(lhs2, rhs2, ctx),
                              make_witness(inst, "", {{"a", &am}, {"b", &bm}, {"beta", &beta}}));
  }
  return rep;
}

// ---- pretriangulated fillers ------------------------------------------------

namespace {
void need_records(const RightTriangle& top, const LeftTriangle& bottom) {
  if (!top.pushout || !bottom.pullback) throw std::invalid_argument("fillers need distinguished triangles");
}
}  // namespace

PretriFill pretri_fill_left(const RightTriangle& top, const LeftTriangle& bottom, const Morphism& alpha,
                            const Morphism& beta, const ApproxContext& ctx) {
  need_records(top, bottom);
  const PushoutRecord& po = *top.pushout;
  const PullbackRecord& pb = *bottom.pullback;
  const Morphism diff = beta * top.f - pb.zeta * alpha;
  if (!stably_zero(diff, ctx)) throw std::invalid_argument("left square does not commute stably");
  const auto& rp = ctx.right(pb.pb);
  auto h = ctx.lift_through_right(pb.pb, diff);
  if (!h) throw std::runtime_error("beta f - zeta alpha does not lift through p_PB");
  auto l = ctx.extend_through_left(top.a(), h->particular);
  if (!l) throw std::runtime_error("H does not extend along nu^A");
  PretriFill out;
  out.delta = po.push.mediate(pb.eta * beta, pb.eta * rp.p * l->particular);
  out.first = stable_equal(out.delta * po.mu, pb.eta * beta, ctx);
  out.second = stable_equal(bottom.f * out.delta, adjunction_backward(bottom.a(), alpha, ctx) * po.pi, ctx);
  return out;
}

PretriFill pretri_fill_right(const RightTriangle& top, const LeftTriangle& bottom, const Morphism& alpha,
                             const Morphism& beta, const ApproxContext& ctx) {
  need_records(top, bottom);
  const PushoutRecord& po = *top.pushout;
  const PullbackRecord& pb = *bottom.pullback;
  const Morphism diff = bottom.f * beta - alpha * po.pi;
  if (!stably_zero(diff, ctx)) throw std::invalid_argument("right square does not commute stably");
  auto h = ctx.lift_through_right(bottom.a(), diff);
  if (!h) throw std::runtime_error("g beta - alpha pi does not lift through p_C");
  PretriFill out;
  out.delta = pb.mediate(beta * po.mu, h->particular * po.mu);
  out.first = stable_equal(pb.eta * out.delta, beta * po.mu, ctx);
  out.second = stable_equal(out.delta * top.f, pb.zeta * adjunction_forward(top.a(), alpha, ctx), ctx);
  return out;
}

namespace {

// Random element of a stable solution set, perturbed by an X-factoring map.
Morphism pick(Sampler& s, const LiftSet& ls) {
  Morphism m = ls.particular;
  for (const auto& hgen : ls.homogeneous) m = m + hgen.scaled(s.scalar());
  return m + s.factoring_map(m.src(), m.dst());
}

}  // namespace

Report verify_pretriangulated(const ApproxContext& ctx, const SampleSpec& spec) {
  Report rep("pretriangulated fillers");
  rep.seed = spec.seed;
  const std::string r_left = "Left filler: delta mu = eta beta and g delta = psi(alpha) pi";
  const std::string r_right = "Right filler: eta delta = beta mu and delta f = zeta phi(alpha)";
  const std::string r_left_rej = "Left filler rejects squares that do not commute";
  const std::string r_right_rej = "Right filler rejects squares that do not commute";
  for (const auto& n : {r_left, r_right, r_left_rej, r_right_rej}) rep.row(n);
  Sampler s(ctx, sample_universe(spec), spec.seed);
  if (s.empty()) return rep;

  for (std::size_t i = 0; i < spec.pairs; ++i) {
    const std::string inst = "#" + std::to_string(i);
    Morphism f = s.morphism(), g = s.morphism();
    const RightTriangle top = distinguished_right_triangle(f, ctx);
    const LeftTriangle bottom = distinguished_left_triangle(g, ctx);
    const Module& a = f.src();
    const Module& b = f.dst();
    const PullbackRecord& pb = *bottom.pullback;
    const PushoutRecord& po = *top.pushout;
    const Module& oc = pb.zeta.src();
    const Module& sa = po.pi.dst();

    {
      Morphism alpha = s.hom(a, oc);
      auto sol = solve_stable(b, pb.pb, {{Morphism::identity(pb.pb), f, pb.zeta * alpha}}, ctx);
      if (!sol) {
        alpha = Morphism::zero(a, oc);
        sol = solve_stable(b, pb.pb, {{Morphism::identity(pb.pb), f, Morphism::zero(a, pb.pb)}}, ctx);
      }
      Morphism beta = pick(s, *sol);
      alpha = alpha + s.factoring_map(a, oc);
      try {
        PretriFill fill = pretri_fill_left(top, bottom, alpha, beta, ctx);
        rep.row(r_left).record(fill.ok(), make_witness(inst, fill.first ? "g delta != psi(alpha) pi" : "delta mu != eta beta",
                                                       {{"f", &f}, {"g", &g}, {"alpha", &alpha}, {"beta", &beta}}));
      } catch (const std::exception& e) {
        rep.row(r_left).fail(make_witness(inst, e.what(), {{"f", &f}, {"g", &g}, {"alpha", &alpha}, {"beta", &beta}}));
      }
      for (int t = 0; t < 16; ++t) {
        Morphism a2 = s.hom(a, oc), b2 = s.hom(b, pb.pb);
        if (stable_equal(b2 * f, pb.zeta * a2, ctx)) continue;
        bool rejected = false;
        try {
          pretri_fill_left(top, bottom, a2, b2, ctx);
        } catch (const std::invalid_argument&) {
          rejected = true;
        }
        rep.row(r_left_rej).record(rejected, make_witness(inst, "accepted", {{"alpha", &a2}, {"beta", &b2}}));
        break;
      }
    }

    {
      const Module& c = bottom.a();
      Morphism alpha = s.hom(sa, c);
      auto sol = solve_stable(po.po, g.src(), {{g, Morphism::identity(po.po), alpha * po.pi}}, ctx);
      if (!sol) {
        alpha = Morphism::zero(sa, c);
        sol = solve_stable(po.po, g.src(), {{g, Morphism::identity(po.po), Morphism::zero(po.po, c)}}, ctx);
      }
      Morphism beta = pick(s, *sol);
      alpha = alpha + s.factoring_map(sa, c);
      try {
        PretriFill fill = pretri_fill_right(top, bottom, alpha, beta, ctx);
        rep.row(r_right).record(fill.ok(), make_witness(inst, fill.first ? "delta f != zeta phi(alpha)" : "eta delta != beta mu",
                                                        {{"f", &f}, {"g", &g}, {"alpha", &alpha}, {"beta", &beta}}));
      } catch (const std::exception& e) {
        rep.row(r_right).fail(make_witness(inst, e.what(), {{"f", &f}, {"g", &g}, {"alpha", &alpha}, {"beta", &beta}}));
      }
      for (int t = 0; t < 16; ++t) {
        Morphism a2 = s.hom(sa, c), b2 = s.hom(po.po, g.src());
        if (stable_equal(g * b2, a2 * po.pi, ctx)) continue;
        bool rejected = false;
        try {
          pretri_fill_right(top, bottom, a2, b2, ctx);
        } catch (const std::invalid_argument&) {
          rejected = true;
        }
        rep.row(r_right_rej).record(rejected, make_witness(inst, "accepted", {{"alpha", &a2}, {"beta", &b2}}));
        break;
      }
    }
  }
  return rep;
}

Report verify_loop_suspension_inverse(const ApproxContext& ctx, const SampleSpec& spec) {
  Report rep("loop and suspension inverse");
  rep.seed = spec.seed;
  const std::string r_so = "Sigma Omega C is stably isomorphic to C";
  const std::string r_os = "Omega Sigma C is stably isomorphic to C";
  rep.row(r_so);
  rep.row(r_os);
  for (const auto& c : sample_universe(spec)) {
    const Module& so = sigma_obj(omega_obj(c, ctx), ctx);
    const Module& os = omega_obj(sigma_obj(c, ctx), ctx);
    for (const auto& [row, obj] : {std::pair{&r_so, &so}, std::pair{&r_os, &os}}) {
      const IsoResult r = stable_iso(*obj, c, ctx, spec.seed);
      Witness w{c.name(), r.method, {}};
      if (r.decision == Decision::undecided) rep.row(*row).undecide(w);
      else rep.row(*row).record(r.decision == Decision::yes, w);
    }
  }
  return rep;
}

}  // namespace stabcat
