#include "stabcat/approx.hpp"

#include <algorithm>
#include <random>

namespace stabcat {

namespace {

// Solves sum_u coeff_u * images[u] = target over flattened matrices.
std::optional<SolveResult> solve_combination(const std::vector<Mat>& images, const Mat& target) {
  Mat sys(target.field(), target.rows() * target.cols(), images.size());
  for (std::size_t u = 0; u < images.size(); ++u) {
    const auto e = images[u].entries();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) sys.set(i, u, e[i]);
  }
  return solve_all(sys, target.vec());
}

Mat columns_of_vecs(const std::vector<Mat>& ms, PrimeField f, std::size_t len) {
  Mat out(f, len, ms.size());
  for (std::size_t u = 0; u < ms.size(); ++u) {
    const auto e = ms[u].entries();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) out.set(i, u, e[i]);
  }
  return out;
}

// Greedy generating subset of a hom basis under the action of End(W):
// a basis element is kept unless it already lies in the span of
// {act(kept, e) : e in End(W)}. Higher-rank elements are tried first.
std::vector<Morphism> generating_parts(const HomSpace& hs, const Module& w, bool precompose) {
  std::vector<Morphism> kept;
  if (hs.dim() == 0) return kept;
  auto ends = hom_space(w, w);
  const PrimeField f = w.field();
  const std::size_t len = hs.src.dim() * hs.dst.dim();
  Mat span(f, 0, len);
  std::size_t r = 0;
  std::vector<Morphism> order = hs.basis;
  std::stable_sort(order.begin(), order.end(),
                   [](const Morphism& a, const Morphism& b) { return rank(a.mat()) > rank(b.mat()); });
  for (const auto& h : order) {
    Mat trial = vcat(span, h.mat().vec().transpose());
    if (rank(trial) == r) continue;
    kept.push_back(h);
    for (const auto& e : ends->basis)
      span = vcat(span, (precompose ? h.mat() * e.mat() : e.mat() * h.mat()).vec().transpose());
    auto rr = rref(span);
    r = rr.rank;
    span = rr.reduced.block(0, 0, r, len);
  }
  return kept;
}

}  // namespace

Morphism StableHomSpace::representative(const Mat& coords) const {
  Mat m(hom->src.field(), hom->dst.dim(), hom->src.dim());
  for (std::size_t i = 0; i < stable_basis.size(); ++i)
    if (coords(i, 0) != 0) m += stable_basis[i].mat().scaled(coords(i, 0));
  return trusted_morphism(hom->src, hom->dst, std::move(m));
}

bool FactoringSpace::contains(const Mat& m) const {
  const PrimeField f = m.field();
  std::vector<std::uint32_t> v(m.entries().begin(), m.entries().end());
  if (v.size() != reduced.cols()) throw DimensionError("factoring test: shape mismatch");
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const std::uint32_t c = v[pivots[i]];
    if (c == 0) continue;
    const auto row = reduced.row(i);
    for (std::size_t j = pivots[i]; j < v.size(); ++j)
      if (row[j] != 0) v[j] = f.sub(v[j], f.mul(c, row[j]));
  }
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

ApproxContext::ApproxContext(Module w, std::vector<Module> universe)
    : w_(w), assign_(w), universe_(std::move(universe)) {}

ApproxContext::ApproxContext(Module w, Module assignment_generator, std::vector<Module> universe)
    : w_(std::move(w)), assign_(std::move(assignment_generator)), universe_(std::move(universe)) {
  if (!(w_.field() == assign_.field()) || w_.generators() != assign_.generators())
    throw DimensionError("assignment generator lives over a different algebra");
}

const RightApprox& ApproxContext::right(const Module& c) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = right_.find(c.key()); it != right_.end()) return *it->second;
  }
  auto rec = std::make_unique<RightApprox>();
  rec->components = hom_space(assign_, c);
  rec->parts = generating_parts(*rec->components, assign_, true);
  rec->x = power(assign_, rec->parts.size()).renamed("X_" + c.name());
  Mat p(c.field(), c.dim(), 0);
  for (const auto& h : rec->parts) p = hcat(p, h.mat());
  rec->p = trusted_morphism(rec->x, c, p);
  auto k = kernel(rec->p);
  rec->k = k.obj.renamed("K_" + c.name());
  rec->iota = trusted_morphism(rec->k, rec->x, k.incl.mat());
  std::lock_guard<std::mutex> lock(mu_);
  return *right_.try_emplace(c.key(), std::move(rec)).first->second;
}

const LeftApprox& ApproxContext::left(const Module& c) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = left_.find(c.key()); it != left_.end()) return *it->second;
  }
  auto rec = std::make_unique<LeftApprox>();
  rec->components = hom_space(c, assign_);
  rec->parts = generating_parts(*rec->components, assign_, false);
  rec->x = power(assign_, rec->parts.size()).renamed("X^" + c.name());
  Mat nu(c.field(), 0, c.dim());
  for (const auto& h : rec->parts) nu = vcat(nu, h.mat());
  rec->nu = trusted_morphism(c, rec->x, nu);
  auto q = cokernel(rec->nu);
  rec->k = q.obj.renamed("K^" + c.name());
  rec->pi = trusted_morphism(rec->x, rec->k, q.proj.mat());
  std::lock_guard<std::mutex> lock(mu_);
  return *left_.try_emplace(c.key(), std::move(rec)).first->second;
}

const StableHomSpace& ApproxContext::stable_hom(const Module& m, const Module& n) const {
  auto key = std::make_pair(m.key(), n.key());
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = stable_.find(key); it != stable_.end()) return *it->second;
  }
  auto sh = std::make_unique<StableHomSpace>();
  sh->hom = hom_space(m, n);
  const auto into_hs = hom_space(m, w_);
  const auto from_hs = hom_space(w_, n);
  const auto& into_w = into_hs->basis;
  const auto& from_w = from_hs->basis;
  const PrimeField f = m.field();
  const std::size_t h = sh->hom->dim();
  Mat coords(f, h, 0);
  for (const auto& a : from_w)
    for (const auto& b : into_w) coords = hcat(coords, sh->hom->coordinates((a * b).mat()));
  sh->factoring = column_space(coords);
  const Mat comp = complement_basis(sh->factoring);
  const Mat t = hcat(sh->factoring, comp);
  sh->projection = inverse(t)->block(sh->factoring.cols(), 0, comp.cols(), h);
  for (std::size_t j = 0; j < comp.cols(); ++j) sh->stable_basis.push_back(sh->hom->combine(comp.col(j)));
  std::lock_guard<std::mutex> lock(mu_);
  return *stable_.try_emplace(key, std::move(sh)).first->second;
}

const FactoringSpace& ApproxContext::factoring(const Module& m, const Module& n) const {
  auto key = std::make_pair(m.key(), n.key());
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = factoring_.find(key); it != factoring_.end()) return *it->second;
  }
  const auto into_hs = hom_space(m, w_);
  const auto from_hs = hom_space(w_, n);
  const auto& into_w = into_hs->basis;
  const auto& from_w = from_hs->basis;
  const std::size_t len = m.dim() * n.dim();
  Mat span(m.field(), into_w.size() * from_w.size(), len);
  std::size_t r = 0;
  for (const auto& a : from_w)
    for (const auto& b : into_w) {
      const Mat prod = a.mat() * b.mat();
      const auto e = prod.entries();
      for (std::size_t j = 0; j < len; ++j)
        if (e[j] != 0) span.set(r, j, e[j]);
      ++r;
    }
  auto rr = rref(span);
  auto fs = std::make_unique<FactoringSpace>();
  fs->reduced = rr.reduced.block(0, 0, rr.rank, len);
  fs->pivots = std::move(rr.pivots);
  std::lock_guard<std::mutex> lock(mu_);
  return *factoring_.try_emplace(key, std::move(fs)).first->second;
}

std::optional<LiftSet> ApproxContext::lift_through_right(const Module& c, const Morphism& f) const {
  const RightApprox& ra = right(c);
  if (!(f.dst() == c)) throw DimensionError("lift through p_C: target is not C");
  const auto& comps = ra.parts;
  auto into_w = hom_space(f.src(), assign_);
  std::vector<Mat> images;
  for (const auto& h : comps)
    for (const auto& b : into_w->basis) images.push_back(h.mat() * b.mat());
  auto sol = solve_combination(images, f.mat());
  if (!sol) return std::nullopt;
  const std::size_t nb = into_w->dim();
  auto assemble = [&](const Mat& coeff) {
    Mat hm(field(), 0, f.src().dim());
    for (std::size_t i = 0; i < comps.size(); ++i)
      hm = vcat(hm, into_w->combine(coeff.block(i * nb, 0, nb, 1)).mat());
    return trusted_morphism(f.src(), ra.x, hm);
  };
  LiftSet ls{assemble(sol->particular), {}};
  for (const auto& z : sol->null_basis) ls.homogeneous.push_back(assemble(z));
  return ls;
}

std::optional<LiftSet> ApproxContext::extend_through_left(const Module& c, const Morphism& f) const {
  const LeftApprox& la = left(c);
  if (!(f.src() == c)) throw DimensionError("extend through nu^C: source is not C");
  const auto& comps = la.parts;
  auto from_w = hom_space(assign_, f.dst());
  std::vector<Mat> images;
  for (const auto& h : comps)
    for (const auto& b : from_w->basis) images.push_back(b.mat() * h.mat());
  auto sol = solve_combination(images, f.mat());
  if (!sol) return std::nullopt;
  const std::size_t nb = from_w->dim();
  auto assemble = [&](const Mat& coeff) {
    Mat ym(field(), f.dst().dim(), 0);
    for (std::size_t i = 0; i < comps.size(); ++i)
      ym = hcat(ym, from_w->combine(coeff.block(i * nb, 0, nb, 1)).mat());
    return trusted_morphism(la.x, f.dst(), ym);
  };
  LiftSet ls{assemble(sol->particular), {}};
  for (const auto& z : sol->null_basis) ls.homogeneous.push_back(assemble(z));
  return ls;
}

std::shared_ptr<ApproxContext> build_context(Module w, std::vector<Module> universe) {
  auto ctx = std::make_shared<ApproxContext>(std::move(w), std::move(universe));
  for (const auto& c : ctx->universe()) {
    ctx->right(c);
    ctx->left(c);
  }
  return ctx;
}

bool operator==(const StableMorphism& a, const StableMorphism& b) {
  return stable_equal(a.rep_, b.rep_, *a.ctx_);
}

bool is_X_epic(const Morphism& f, const ApproxContext& ctx) {
  const auto& w = ctx.generator();
  auto target = hom_space(w, f.dst());
  if (target->dim() == 0) return true;
  std::vector<Mat> imgs;
  const auto src_hs = hom_space(w, f.src());
  for (const auto& b : src_hs->basis) imgs.push_back((f * b).mat());
  return rank(columns_of_vecs(imgs, w.field(), w.dim() * f.dst().dim())) == target->dim();
}

bool is_X_monic(const Morphism& f, const ApproxContext& ctx) {
  const auto& w = ctx.generator();
  auto target = hom_space(f.src(), w);
  if (target->dim() == 0) return true;
  std::vector<Mat> imgs;
  const auto dst_hs = hom_space(f.dst(), w);
  for (const auto& b : dst_hs->basis) imgs.push_back((b * f).mat());
  return rank(columns_of_vecs(imgs, w.field(), w.dim() * f.src().dim())) == target->dim();
}

Morphism make_special_epic(const Morphism& g, const ApproxContext& ctx) {
  return row_morphism({g, ctx.right(g.dst()).p});
}

Morphism make_special_monic(const Morphism& g, const ApproxContext& ctx) {
  return column_morphism({g, ctx.left(g.src()).nu});
}

bool stable_equal(const Morphism& f, const Morphism& g, const ApproxContext& ctx) {
  if (!(f.src() == g.src()) || !(f.dst() == g.dst()))
    throw DimensionError("stable_equal: morphisms are not parallel");
  if (f.mat() == g.mat()) return true;
  return ctx.factoring(f.src(), f.dst()).contains((f - g).mat());
}

bool stably_zero(const Morphism& f, const ApproxContext& ctx) {
  if (f.is_zero()) return true;
  return ctx.factoring(f.src(), f.dst()).contains(f.mat());
}

std::size_t stable_hom_dim(const Module& m, const Module& n, const ApproxContext& ctx) {
  return ctx.stable_hom(m, n).dim();
}

bool is_stably_zero(const Module& m, const ApproxContext& ctx) { return stable_hom_dim(m, m, ctx) == 0; }

std::optional<Morphism> stable_inverse(const Morphism& f, const ApproxContext& ctx) {
  const Module& m = f.src();
  const Module& n = f.dst();
  // Any one-sided stable inverse of an isomorphism is its inverse, so solve
  // the side with fewer equations and confirm the other side.
  const bool left = m.dim() <= n.dim();
  const Module& side = left ? m : n;
  const FactoringSpace& fs = ctx.factoring(side, side);
  auto back = hom_space(n, m);
  const std::size_t len = side.dim() * side.dim();
  const PrimeField fld = m.field();
  Mat sys(fld, len, back->dim() + fs.reduced.rows());
  for (std::size_t j = 0; j < back->dim(); ++j) {
    const Mat prod = left ? (back->basis[j] * f).mat() : (f * back->basis[j]).mat();
    const auto e = prod.entries();
    for (std::size_t i = 0; i < len; ++i)
      if (e[i] != 0) sys.set(i, j, e[i]);
  }
  for (std::size_t k = 0; k < fs.reduced.rows(); ++k)
    for (std::size_t i = 0; i < len; ++i)
      if (fs.reduced(k, i) != 0) sys.set(i, back->dim() + k, fs.reduced(k, i));
  auto x = solve(sys, Mat::identity(fld, side.dim()).vec());
  if (!x) return std::nullopt;
  Morphism g = back->combine(x->block(0, 0, back->dim(), 1));
  const Morphism other = left ? f * g : g * f;
  if (!stable_equal(other, Morphism::identity(other.src()), ctx)) return std::nullopt;
  return g;
}

bool is_stable_iso(const Morphism& f, const ApproxContext& ctx) { return stable_inverse(f, ctx).has_value(); }

IsoResult stable_iso(const Module& a, const Module& b, const ApproxContext& ctx, std::uint64_t seed) {
  IsoResult res;
  if (a == b) {
    res.decision = Decision::yes;
    res.iso = Morphism::identity(a);
    res.method = "identical";
    return res;
  }
  const bool za = is_stably_zero(a, ctx), zb = is_stably_zero(b, ctx);
  if (za || zb) {
    res.decision = za && zb ? Decision::yes : Decision::no;
    if (za && zb) res.iso = Morphism::zero(a, b);
    res.method = "stable zero test";
    return res;
  }
  const auto& sab = ctx.stable_hom(a, b);
  const std::size_t s = sab.dim();
  if (s != stable_hom_dim(b, a, ctx) || s != stable_hom_dim(a, a, ctx) || s != stable_hom_dim(b, b, ctx)) {
    res.decision = Decision::no;
    res.method = "stable hom dimensions";
    return res;
  }
  const std::uint32_t p = a.field().modulus();
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
  Mat c(a.field(), s, 1);
  for (int trial = 0; trial < 64; ++trial) {
    for (std::size_t i = 0; i < s; ++i) c.set(i, 0, static_cast<std::int64_t>(rng() % p));
    Morphism f = sab.representative(c);
    if (is_stable_iso(f, ctx)) {
      res.decision = Decision::yes;
      res.iso = f;
      res.method = "random";
      return res;
    }
  }
  if (p <= 3 && s <= 12) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < s; ++i) total *= p;
    for (std::uint64_t code = 1; code < total; ++code) {
      std::uint64_t x = code;
      for (std::size_t i = 0; i < s; ++i) {
        c.set(i, 0, static_cast<std::int64_t>(x % p));
        x /= p;
      }
      Morphism f = sab.representative(c);
      if (is_stable_iso(f, ctx)) {
        res.decision = Decision::yes;
        res.iso = f;
        res.method = "exhaustive";
        return res;
      }
    }
    res.decision = Decision::no;
    res.method = "exhaustive";
    return res;
  }
  res.decision = Decision::undecided;
  res.method = "random search exhausted";
  return res;
}

std::size_t ext1_dim(const Module& m, const Module& n, const ApproxContext& ctx) {
  if (m.is_zero()) return 0;
  const RightApprox& ra = ctx.right(m);
  if (!is_epi(ra.p)) throw std::runtime_error("presentation unavailable for " + m.name());
  auto from_k = hom_space(ra.k, n);
  std::vector<Mat> restricted;
  const auto out = hom_space(ra.x, n);
  for (const auto& h : out->basis) restricted.push_back((h * ra.iota).mat());
  const std::size_t r = rank(columns_of_vecs(restricted, m.field(), n.dim() * ra.k.dim()));
  return from_k->dim() - r;
}

Module dual_module(const Module& m) {
  std::vector<Mat> acts;
  for (const auto& a : m.actions()) acts.push_back(a.transpose());
  return Module("D(" + m.name() + ")", m.field(), m.dim(), std::move(acts));
}

Morphism dual_morphism(const Morphism& f) {
  return trusted_morphism(dual_module(f.dst()), dual_module(f.src()), f.mat().transpose());
}

std::shared_ptr<ApproxContext> dual_context(const ApproxContext& ctx) {
  std::vector<Module> uni;
  for (const auto& u : ctx.universe()) uni.push_back(dual_module(u));
  return std::make_shared<ApproxContext>(dual_module(ctx.generator()), dual_module(ctx.assignment_generator()),
                                         std::move(uni));
}

}  // namespace stabcat
