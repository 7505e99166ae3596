#include "stabcat/triangles.hpp"

#include <random>
#include <stdexcept>

namespace stabcat {

namespace {

Morphism solve_left(const Morphism& via, const Morphism& target, const char* what) {
  // via * x = target with via mono; x is unique when it exists.
  auto x = solve(via.mat(), target.mat());
  if (!x) throw std::runtime_error(what);
  return trusted_morphism(target.src(), via.src(), std::move(*x));
}

Morphism solve_right(const Morphism& via, const Morphism& target, const char* what) {
  // x * via = target with via epi.
  auto xt = solve(via.mat().transpose(), target.mat().transpose());
  if (!xt) throw std::runtime_error(what);
  return trusted_morphism(via.dst(), target.dst(), xt->transpose());
}

// Incremental echelon basis used to pick vectors independent modulo a span.
class Echelon {
 public:
  explicit Echelon(PrimeField f) : f_(f) {}

  void add_reduced(const Mat& reduced, const std::vector<std::size_t>& pivots) {
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      auto r = reduced.row(i);
      rows_.emplace_back(r.begin(), r.end());
      piv_.push_back(pivots[i]);
    }
  }

  /// Adds v if independent; returns whether it was added.
  bool insert(std::vector<std::uint32_t> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::uint32_t c = v[piv_[i]];
      if (c == 0) continue;
      const auto& row = rows_[i];
      const std::uint32_t s = f_.mul(c, f_.inv(row[piv_[i]]));
      for (std::size_t j = 0; j < v.size(); ++j)
        if (row[j] != 0) v[j] = f_.sub(v[j], f_.mul(s, row[j]));
    }
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        rows_.push_back(std::move(v));
        piv_.push_back(j);
        return true;
      }
    return false;
  }

 private:
  PrimeField f_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> piv_;
};

std::vector<std::uint32_t> flat(const Mat& m) { return {m.entries().begin(), m.entries().end()}; }

Morphism affine_point(const LiftSet& ls, const std::vector<std::uint32_t>& c) {
  Mat m = ls.particular.mat();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) m += ls.homogeneous[i].mat().scaled(c[i]);
  return trusted_morphism(ls.particular.src(), ls.particular.dst(), std::move(m));
}

struct Budget {
  std::size_t left;
  bool exhaustive = true;
};

// Calls fn on points of the affine set until it returns true. Exhaustive when
// the set is small enough for the remaining budget, otherwise sampled.
template <class Fn>
bool search_affine(const LiftSet& ls, std::uint32_t p, Budget& budget, std::mt19937_64& rng, Fn&& fn) {
  const std::size_t k = ls.homogeneous.size();
  std::uint64_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < k && small; ++i) {
    total *= p;
    if (total > budget.left) small = false;
  }
  std::vector<std::uint32_t> c(k, 0);
  if (small) {
    for (std::uint64_t code = 0; code < total; ++code) {
      if (budget.left == 0) {
        budget.exhaustive = false;
        return false;
      }
      --budget.left;
      std::uint64_t x = code;
      for (std::size_t i = 0; i < k; ++i) {
        c[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      if (fn(affine_point(ls, c))) return true;
    }
    return false;
  }
  budget.exhaustive = false;
  const std::size_t tries = std::min<std::size_t>(budget.left, 256);
  for (std::size_t t = 0; t < tries; ++t) {
    --budget.left;
    for (auto& x : c) x = static_cast<std::uint32_t>(rng() % p);
    if (t == 0) std::fill(c.begin(), c.end(), 0);
    if (fn(affine_point(ls, c))) return true;
  }
  return false;
}

// Stable classes of maps m -> n as an affine set with zero particular part.
LiftSet stable_classes(const Module& m, const Module& n, const ApproxContext& ctx) {
  const auto& sh = ctx.stable_hom(m, n);
  return LiftSet{Morphism::zero(m, n), sh.stable_basis};
}

Module zero_like(const ApproxContext& ctx) { return Module::zero(ctx.field(), ctx.generators()); }

}  // namespace

// ---- loop and suspension ----------------------------------------------------

const Module& omega_obj(const Module& c, const ApproxContext& ctx) { return ctx.right(c).k; }
const Module& sigma_obj(const Module& c, const ApproxContext& ctx) { return ctx.left(c).k; }

LiftSet omega_lifts(const Morphism& f, const ApproxContext& ctx) {
  const auto& rc = ctx.right(f.src());
  auto ls = ctx.lift_through_right(f.dst(), f * rc.p);
  if (!ls) throw std::runtime_error("Omega: f p_C does not lift through p_D");
  return std::move(*ls);
}

OmegaLift omega_from_lift(const Morphism& f, const Morphism& x, const ApproxContext& ctx) {
  const auto& rc = ctx.right(f.src());
  const auto& rd = ctx.right(f.dst());
  if (!(rd.p * x == f * rc.p)) throw std::invalid_argument("Omega: x is not a lift of f p_C");
  return {x, solve_left(rd.iota, x * rc.iota, "Omega: lift does not restrict to kernels")};
}

OmegaLift omega_lift(const Morphism& f, const ApproxContext& ctx) {
  return omega_from_lift(f, omega_lifts(f, ctx).particular, ctx);
}

StableMorphism omega_mor(const Morphism& f, const ApproxContext& ctx) {
  return StableMorphism(omega_lift(f, ctx).kappa, ctx);
}

LiftSet sigma_lifts(const Morphism& f, const ApproxContext& ctx) {
  const auto& ld = ctx.left(f.dst());
  auto ls = ctx.extend_through_left(f.src(), ld.nu * f);
  if (!ls) throw std::runtime_error("Sigma: nu^D f does not extend through nu^C");
  return std::move(*ls);
}

SigmaLift sigma_from_lift(const Morphism& f, const Morphism& y, const ApproxContext& ctx) {
  const auto& lc = ctx.left(f.src());
  const auto& ld = ctx.left(f.dst());
  if (!(y * lc.nu == ld.nu * f)) throw std::invalid_argument("Sigma: y is not an extension of nu^D f");
  return {y, solve_right(lc.pi, ld.pi * y, "Sigma: extension does not descend to cokernels")};
}

SigmaLift sigma_lift(const Morphism& f, const ApproxContext& ctx) {
  return sigma_from_lift(f, sigma_lifts(f, ctx).particular, ctx);
}

StableMorphism sigma_mor(const Morphism& f, const ApproxContext& ctx) {
  return StableMorphism(sigma_lift(f, ctx).kappa, ctx);
}

// ---- left triangles ---------------------------------------------------------

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::distinguished: return "distinguished";
    case Provenance::induced: return "induced";
    case Provenance::rotated: return "rotated";
    case Provenance::isomorphic_image: return "isomorphic_image";
    default: return "trivial";
  }
}

Morphism PullbackRecord::mediate(const Morphism& u, const Morphism& v) const {
  return ker.factor(column_morphism({u, -v}));
}

PullbackRecord pullback_record(const Morphism& f, const ApproxContext& ctx) {
  const auto& ra = ctx.right(f.dst());
  PullbackRecord r;
  r.f = f;
  const Morphism fp = row_morphism({f, ra.p});
  r.ker = kernel(fp);
  r.pb = r.ker.obj;
  const Module& b = f.src();
  const std::size_t n = r.pb.dim();
  r.eta = trusted_morphism(r.pb, b, r.ker.incl.mat().block(0, 0, b.dim(), n));
  r.theta = trusted_morphism(r.pb, ra.x, -r.ker.incl.mat().block(b.dim(), 0, ra.x.dim(), n));
  r.zeta = r.ker.factor(column_morphism({Morphism::zero(ra.k, b), -ra.iota}));
  return r;
}

LeftTriangle distinguished_left_triangle(const Morphism& f, const ApproxContext& ctx) {
  auto rec = std::make_shared<PullbackRecord>(pullback_record(f, ctx));
  LeftTriangle t{rec->zeta, rec->eta, f, Provenance::distinguished, rec, nullptr};
  return t;
}

std::optional<Morphism> lift_from_power(const Morphism& via, const Morphism& target, const Module& w) {
  const std::size_t wd = w.dim();
  const std::size_t n = target.src().dim();
  if (wd == 0 || n % wd != 0) throw DimensionError("lift_from_power: source is not a power of W");
  Mat out(via.mat().field(), via.src().dim(), 0);
  for (std::size_t i = 0; i < n / wd; ++i) {
    Morphism part = trusted_morphism(w, target.dst(), target.mat().block(0, i * wd, target.dst().dim(), wd));
    auto l = lift_through(via, part);
    if (!l) return std::nullopt;
    out = hcat(out, l->mat());
  }
  return trusted_morphism(target.src(), via.src(), std::move(out));
}

InducedRecord induced_record(const Morphism& g, const ApproxContext& ctx) {
  if (!is_X_epic(g, ctx)) throw std::invalid_argument("not X-epic");
  const auto& ra = ctx.right(g.dst());
  InducedRecord r;
  r.g = g;
  auto k = kernel(g);
  r.ker = k.obj;
  r.iota = k.incl;
  auto d = lift_from_power(g, ra.p, ctx.assignment_generator());
  if (!d) throw std::runtime_error("p_A does not lift through g");
  r.delta = *d;
  r.gamma = solve_left(r.iota, r.delta * ra.iota, "delta iota_A does not land in ker g");
  return r;
}

LeftTriangle induced_left_triangle(const Morphism& g, const ApproxContext& ctx) {
  auto rec = std::make_shared<InducedRecord>(induced_record(g, ctx));
  LeftTriangle t{-rec->gamma, rec->iota, g, Provenance::induced, nullptr, rec};
  return t;
}

LeftTriangle trivial_left_triangle(const Module& a, const ApproxContext& ctx) {
  const Module z = zero_like(ctx);
  LeftTriangle t;
  t.f = Morphism::zero(a, z);
  t.g = Morphism::identity(a);
  t.h = Morphism::zero(ctx.right(z).k, a);
  t.provenance = Provenance::trivial;
  return t;
}

LeftTriangle rotate_left(const LeftTriangle& t, const ApproxContext& ctx) {
  LeftTriangle r;
  r.h = -omega_lift(t.f, ctx).kappa;
  r.g = t.h;
  r.f = t.g;
  r.provenance = Provenance::rotated;
  return r;
}

SquareCheck check_left_morphism(const LeftTriangle& t1, const LeftTriangle& t2, const Morphism& gamma,
                                const Morphism& beta, const Morphism& alpha, const ApproxContext& ctx) {
  SquareCheck s;
  s.right = stable_equal(t2.f * beta, alpha * t1.f, ctx);
  s.middle = stable_equal(t2.g * gamma, beta * t1.g, ctx);
  s.left = stable_equal(gamma * t1.h, t2.h * omega_lift(alpha, ctx).kappa, ctx);
  return s;
}

std::optional<LiftSet> solve_stable(const Module& src, const Module& dst, const std::vector<StableEquation>& eqs,
                                    const ApproxContext& ctx) {
  const PrimeField fld = ctx.field();
  const auto hs = hom_space(src, dst);
  const std::size_t h = hs->dim();
  std::size_t rows = 0, extra = 0;
  std::vector<const FactoringSpace*> fss;
  for (const auto& e : eqs) {
    if (!(e.left.src() == dst) || !(e.right.dst() == src) || !(e.target.src() == e.right.src()) ||
        !(e.target.dst() == e.left.dst()))
      throw DimensionError("solve_stable: equation shapes do not match the unknown");
    fss.push_back(&ctx.factoring(e.target.src(), e.target.dst()));
    rows += e.target.src().dim() * e.target.dst().dim();
    extra += fss.back()->reduced.rows();
  }
  Mat sys(fld, rows, h + extra);
  Mat rhs(fld, rows, 1);
  std::size_t r0 = 0, c0 = h;
  for (std::size_t ei = 0; ei < eqs.size(); ++ei) {
    const auto& e = eqs[ei];
    const std::size_t len = e.target.src().dim() * e.target.dst().dim();
    for (std::size_t j = 0; j < h; ++j) {
      const Mat prod = e.left.mat() * hs->basis[j].mat() * e.right.mat();
      const auto v = prod.entries();
      for (std::size_t i = 0; i < len; ++i)
        if (v[i] != 0) sys.set(r0 + i, j, v[i]);
    }
    const Mat& red = fss[ei]->reduced;
    for (std::size_t k = 0; k < red.rows(); ++k)
      for (std::size_t i = 0; i < len; ++i)
        if (red(k, i) != 0) sys.set(r0 + i, c0 + k, red(k, i));
    const auto t = e.target.mat().entries();
    for (std::size_t i = 0; i < len; ++i)
      if (t[i] != 0) rhs.set(r0 + i, 0, t[i]);
    r0 += len;
    c0 += red.rows();
  }
  auto sol = solve_all(sys, rhs);
  if (!sol) return std::nullopt;
  LiftSet ls{hs->combine(sol->particular.block(0, 0, h, 1)), {}};
  Echelon ech(fld);
  const FactoringSpace& fs = ctx.factoring(src, dst);
  ech.add_reduced(fs.reduced, fs.pivots);
  for (const auto& z : sol->null_basis) {
    Morphism m = hs->combine(z.block(0, 0, h, 1));
    if (ech.insert(flat(m.mat()))) ls.homogeneous.push_back(std::move(m));
  }
  return ls;
}

namespace {

// Shared driver for both triangle kinds. `outer` gives the stable solutions
// for beta once alpha is fixed; `inner` gives those for gamma once both are
// fixed.
template <class Outer, class Inner>
TriangleComparison compare_driver(const Module& a1, const Module& a2, const Module& b1, const Module& b2,
                                  const Module& c1, const Module& c2, const ApproxContext& ctx,
                                  const CompareOptions& opts, Outer&& outer, Inner&& inner) {
  TriangleComparison res;
  for (auto [x, y, label] : {std::tuple{&a1, &a2, "first"}, std::tuple{&b1, &b2, "second"},
                             std::tuple{&c1, &c2, "third"}}) {
    auto r = stable_iso(*x, *y, ctx, opts.seed);
    if (r.decision == Decision::no) {
      res.decision = Decision::no;
      res.method = std::string(label) + " objects not stably isomorphic";
      return res;
    }
  }
  const std::uint32_t p = ctx.field().modulus();
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  Budget budget{opts.budget};

  auto try_pair = [&](const Morphism& beta, const Morphism& alpha) -> bool {
    auto gs = inner(beta, alpha);
    if (!gs) return false;
    return search_affine(*gs, p, budget, rng, [&](const Morphism& gamma) {
      if (!is_stable_iso(gamma, ctx)) return false;
      res.iso = TriangleIso{gamma, beta, alpha};
      return true;
    });
  };

  auto with_alpha = [&](const Morphism& alpha) -> bool {
    if (!is_stable_iso(alpha, ctx)) return false;
    auto bs = outer(alpha);
    if (!bs) return false;
    return search_affine(*bs, p, budget, rng, [&](const Morphism& beta) {
      return is_stable_iso(beta, ctx) && try_pair(beta, alpha);
    });
  };

  if (opts.hint) {
    Budget probe = budget;
    if (try_pair(opts.hint->first, opts.hint->second)) {
      res.decision = Decision::yes;
      res.method = "hinted outer maps";
      return res;
    }
    budget.left = probe.left;
  } else if (a1 == a2 && b1 == b2) {
    if (try_pair(Morphism::identity(b1), Morphism::identity(a1))) {
      res.decision = Decision::yes;
      res.method = "identity outer maps";
      return res;
    }
    budget.exhaustive = true;
  }

  if (search_affine(stable_classes(a1, a2, ctx), p, budget, rng, with_alpha)) {
    res.decision = Decision::yes;
    res.method = budget.exhaustive ? "exhaustive search" : "sampled search";
    return res;
  }
  res.decision = budget.exhaustive ? Decision::no : Decision::undecided;
  res.method = budget.exhaustive ? "exhaustive search" : "search budget exhausted";
  return res;
}

}  // namespace

TriangleComparison compare_triangles(const LeftTriangle& t1, const LeftTriangle& t2, const ApproxContext& ctx,
                                     const CompareOptions& opts) {
  if (t1.f == t2.f && t1.g == t2.g && t1.h == t2.h) {
    TriangleComparison res;
    res.decision = Decision::yes;
    res.iso = TriangleIso{Morphism::identity(t1.c()), Morphism::identity(t1.b()), Morphism::identity(t1.a())};
    res.method = "identical";
    return res;
  }
  auto outer = [&](const Morphism& alpha) {
    return solve_stable(t1.b(), t2.b(), {{t2.f, Morphism::identity(t1.b()), alpha * t1.f}}, ctx);
  };
  auto inner = [&](const Morphism& beta, const Morphism& alpha) -> std::optional<LiftSet> {
    if (!stable_equal(t2.f * beta, alpha * t1.f, ctx)) return std::nullopt;
    const Morphism oa = omega_lift(alpha, ctx).kappa;
    return solve_stable(t1.c(), t2.c(),
                        {{Morphism::identity(t2.c()), t1.h, t2.h * oa},
                         {t2.g, Morphism::identity(t1.c()), beta * t1.g}},
                        ctx);
  };
  return compare_driver(t1.a(), t2.a(), t1.b(), t2.b(), t1.c(), t2.c(), ctx, opts, outer, inner);
}

StableMorphism fill_lt3(const LeftTriangle& t1, const LeftTriangle& t2, const Morphism& alpha, const Morphism& beta,
                        const ApproxContext& ctx) {
  const Morphism diff = alpha * t1.f - t2.f * beta;
  if (!stably_zero(diff, ctx)) throw std::invalid_argument("square does not commute stably");
  if (t1.pullback && t2.pullback) {
    // Exact mediation: gamma zeta_1 = zeta_2 kappa_alpha on the nose.
    auto hl = ctx.lift_through_right(t2.a(), diff);
    if (!hl) throw std::runtime_error("stably zero map does not lift through p_A");
    const Morphism& h = hl->particular;
    const OmegaLift xa = omega_lift(alpha, ctx);
    const auto& p1 = *t1.pullback;
    const auto& p2 = *t2.pullback;
    Morphism gamma = p2.mediate(beta * p1.eta, xa.x * p1.theta - h * p1.eta);
    return StableMorphism(gamma, ctx);
  }
  const Morphism oa = omega_lift(alpha, ctx).kappa;
  auto sol = solve_stable(t1.c(), t2.c(),
                          {{Morphism::identity(t2.c()), t1.h, t2.h * oa},
                           {t2.g, Morphism::identity(t1.c()), beta * t1.g}},
                          ctx);
  if (!sol) throw std::runtime_error("no filler exists");
  return StableMorphism(sol->particular, ctx);
}

bool OctahedronRecord::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

OctahedronRecord octahedron(const Morphism& g, const Morphism& f, const ApproxContext& ctx) {
  OctahedronRecord o;
  o.g = g;
  o.f = f;
  o.ind_g = induced_record(g, ctx);
  o.pb_fg = pullback_record(f * g, ctx);
  o.pb_f = pullback_record(f, ctx);
  const auto& rpf = ctx.right(o.pb_f.pb);
  auto add = [&](std::string name, bool pass) { o.checks.push_back({std::move(name), pass}); };

  o.alpha = o.pb_fg.mediate(o.ind_g.iota, Morphism::zero(o.ind_g.ker, ctx.right(f.dst()).x));
  o.beta = o.pb_f.mediate(g * o.pb_fg.eta, o.pb_fg.theta);
  add("beta alpha = 0", (o.beta * o.alpha).is_zero());
  add("alpha mono", is_mono(o.alpha));
  add("alpha is a kernel of beta",
      o.ind_g.ker.dim() + rank(o.beta.mat()) == o.pb_fg.pb.dim());
  add("beta X-epic", is_X_epic(o.beta, ctx));
  add("zeta_f = beta zeta_fg", o.pb_f.zeta == o.beta * o.pb_fg.zeta);
  add("eta_f beta = g eta_fg", o.pb_f.eta * o.beta == g * o.pb_fg.eta);
  add("theta_f beta = theta_fg", o.pb_f.theta * o.beta == o.pb_fg.theta);
  add("eta_fg alpha = iota_g", o.pb_fg.eta * o.alpha == o.ind_g.iota);

  o.omega_f = omega_lift(f, ctx).kappa;
  o.omega_eta_f = omega_lift(o.pb_f.eta, ctx).kappa;
  o.left_top_defect = -(o.alpha * o.ind_g.gamma) - o.pb_fg.zeta * o.omega_f;
  add("-alpha gamma_g = zeta_fg Omega(f) stably", stably_zero(o.left_top_defect, ctx));

  auto d = lift_from_power(o.beta, rpf.p, ctx.assignment_generator());
  bool have_gamma = false;
  if (d) {
    o.delta_beta = *d;
    if (auto x = solve(o.alpha.mat(), (o.delta_beta * rpf.iota).mat())) {
      o.gamma_beta = trusted_morphism(rpf.k, o.ind_g.ker, std::move(*x));
      have_gamma = true;
    }
  }
  add("column triangle induced by beta with kernel alpha", have_gamma);
  if (have_gamma) {
    add("gamma_beta = gamma_g Omega(eta_f) stably",
        stable_equal(o.gamma_beta, o.ind_g.gamma * o.omega_eta_f, ctx));
    auto rec = std::make_shared<InducedRecord>();
    rec->g = o.beta;
    rec->ker = o.ind_g.ker;
    rec->iota = o.alpha;
    rec->delta = o.delta_beta;
    rec->gamma = o.gamma_beta;
    o.column = LeftTriangle{-o.gamma_beta, o.alpha, o.beta, Provenance::induced, nullptr, rec};
  }
  return o;
}

// ---- right triangles --------------------------------------------------------

PushoutRecord pushout_record(const Morphism& g, const ApproxContext& ctx) {
  const auto& la = ctx.left(g.src());
  PushoutRecord r;
  r.g = g;
  r.push = pushout(g, la.nu);
  r.po = r.push.obj;
  r.mu = r.push.j1;
  r.m = r.push.j2;
  r.pi = r.push.mediate(Morphism::zero(g.dst(), la.k), la.pi);
  return r;
}

RightTriangle distinguished_right_triangle(const Morphism& g, const ApproxContext& ctx) {
  auto rec = std::make_shared<PushoutRecord>(pushout_record(g, ctx));
  RightTriangle t{g, rec->mu, rec->pi, Provenance::distinguished, rec};
  return t;
}

RightTriangle trivial_right_triangle(const Module& a, const ApproxContext& ctx) {
  const Module z = zero_like(ctx);
  RightTriangle t;
  t.f = Morphism::zero(z, a);
  t.g = Morphism::identity(a);
  t.h = Morphism::zero(a, ctx.left(z).k);
  t.provenance = Provenance::trivial;
  return t;
}

RightTriangle rotate_right(const RightTriangle& t, const ApproxContext& ctx) {
  RightTriangle r;
  r.f = t.g;
  r.g = t.h;
  r.h = -sigma_lift(t.f, ctx).kappa;
  r.provenance = Provenance::rotated;
  return r;
}

SquareCheck check_right_morphism(const RightTriangle& t1, const RightTriangle& t2, const Morphism& alpha,
                                 const Morphism& beta, const Morphism& gamma, const ApproxContext& ctx) {
  SquareCheck s;
  s.right = stable_equal(beta * t1.f, t2.f * alpha, ctx);
  s.left = stable_equal(gamma * t1.g, t2.g * beta, ctx);
  s.middle = stable_equal(sigma_lift(alpha, ctx).kappa * t1.h, t2.h * gamma, ctx);
  return s;
}

TriangleComparison compare_right_triangles(const RightTriangle& t1, const RightTriangle& t2, const ApproxContext& ctx,
                                           const CompareOptions& opts) {
  if (t1.f == t2.f && t1.g == t2.g && t1.h == t2.h) {
    TriangleComparison res;
    res.decision = Decision::yes;
    res.iso = TriangleIso{Morphism::identity(t1.c()), Morphism::identity(t1.b()), Morphism::identity(t1.a())};
    res.method = "identical";
    return res;
  }
  auto outer = [&](const Morphism& alpha) {
    return solve_stable(t1.b(), t2.b(), {{Morphism::identity(t2.b()), t1.f, t2.f * alpha}}, ctx);
  };
  auto inner = [&](const Morphism& beta, const Morphism& alpha) -> std::optional<LiftSet> {
    if (!stable_equal(beta * t1.f, t2.f * alpha, ctx)) return std::nullopt;
    const Morphism sa = sigma_lift(alpha, ctx).kappa;
    return solve_stable(t1.c(), t2.c(),
                        {{Morphism::identity(t2.c()), t1.g, t2.g * beta},
                         {t2.h, Morphism::identity(t1.c()), sa * t1.h}},
                        ctx);
  };
  return compare_driver(t1.a(), t2.a(), t1.b(), t2.b(), t1.c(), t2.c(), ctx, opts, outer, inner);
}

StableMorphism fill_rt3(const RightTriangle& t1, const RightTriangle& t2, const Morphism& alpha, const Morphism& beta,
                        const ApproxContext& ctx) {
  const Morphism diff = beta * t1.f - t2.f * alpha;
  if (!stably_zero(diff, ctx)) throw std::invalid_argument("square does not commute stably");
  if (t1.pushout && t2.pushout) {
    // Exact mediation: kappa^alpha pi_1 = pi_2 gamma on the nose.
    auto hl = ctx.extend_through_left(t1.a(), diff);
    if (!hl) throw std::runtime_error("stably zero map does not extend through nu^A");
    const Morphism& h = hl->particular;
    const SigmaLift ya = sigma_lift(alpha, ctx);
    const auto& p1 = *t1.pushout;
    const auto& p2 = *t2.pushout;
    Morphism gamma = p1.push.mediate(p2.mu * beta, p2.m * ya.y + p2.mu * h);
    return StableMorphism(gamma, ctx);
  }
  const Morphism sa = sigma_lift(alpha, ctx).kappa;
  auto sol = solve_stable(t1.c(), t2.c(),
                          {{Morphism::identity(t2.c()), t1.g, t2.g * beta},
                           {t2.h, Morphism::identity(t1.c()), sa * t1.h}},
                          ctx);
  if (!sol) throw std::runtime_error("no filler exists");
  return StableMorphism(sol->particular, ctx);
}

}  // namespace stabcat
