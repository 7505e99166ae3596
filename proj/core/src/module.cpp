#include "stabcat/module.hpp"

#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace stabcat {

namespace {

std::string make_key(PrimeField f, std::size_t dim, const std::vector<Mat>& actions) {
  std::string k = std::to_string(f.modulus()) + ":" + std::to_string(dim) + ":" + std::to_string(actions.size());
  for (const auto& a : actions) {
    k += '|';
    for (auto v : a.entries()) {
      k += std::to_string(v);
      k += ',';
    }
  }
  return k;
}

void require_compatible(const Module& a, const Module& b, const char* op) {
  if (!(a.field() == b.field()))
    throw DimensionError(std::string(op) + ": modules over different fields");
  if (a.generators() != b.generators())
    throw DimensionError(std::string(op) + ": generator count mismatch (" +
                         std::to_string(a.generators()) + " vs " + std::to_string(b.generators()) + ")");
}

}  // namespace

Module::Module(PrimeField field, std::size_t dim, std::size_t generators)
    : name_(dim == 0 ? "0" : "k^" + std::to_string(dim)), field_(field), dim_(dim) {
  for (std::size_t i = 0; i < generators; ++i) actions_.emplace_back(field, dim, dim);
  key_ = make_key(field_, dim_, actions_);
}

Module::Module(std::string name, PrimeField field, std::size_t dim, std::vector<Mat> actions)
    : name_(std::move(name)), field_(field), dim_(dim), actions_(std::move(actions)) {
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    const auto& a = actions_[i];
    if (!(a.field() == field_))
      throw DimensionError("module " + name_ + ": generator " + std::to_string(i) + " over wrong field");
    if (a.rows() != dim_ || a.cols() != dim_)
      throw DimensionError("module " + name_ + ": generator " + std::to_string(i) + " is " +
                           std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", expected " +
                           std::to_string(dim_) + "x" + std::to_string(dim_));
  }
  key_ = make_key(field_, dim_, actions_);
}

Module Module::renamed(std::string name) const {
  Module m = *this;
  m.name_ = std::move(name);
  return m;
}

Mat word_action(const Module& m, const Word& w) {
  Mat r = Mat::identity(m.field(), m.dim());
  for (auto i : w) r = r * m.action(i);
  return r;
}

std::optional<std::string> relation_violation(const Module& m, const std::vector<Word>& relations) {
  for (const auto& w : relations) {
    for (auto i : w)
      if (i >= m.generators()) return "relation uses generator " + std::to_string(i) + " out of range";
    if (!word_action(m, w).is_zero()) {
      std::string s;
      for (auto i : w) s += (s.empty() ? "" : " ") + std::to_string(i);
      return "module " + m.name() + " violates relation [" + s + "]";
    }
  }
  return std::nullopt;
}

Morphism::Morphism(Module src, Module dst, Mat mat)
    : src_(std::move(src)), dst_(std::move(dst)), mat_(std::move(mat)) {
  require_compatible(src_, dst_, "morphism");
  if (mat_.rows() != dst_.dim() || mat_.cols() != src_.dim())
    throw DimensionError("morphism " + src_.name() + " -> " + dst_.name() + ": matrix is " +
                         std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()) + ", expected " +
                         std::to_string(dst_.dim()) + "x" + std::to_string(src_.dim()));
  for (std::size_t i = 0; i < src_.generators(); ++i)
    if (!(mat_ * src_.action(i) == dst_.action(i) * mat_))
      throw NotIntertwining("morphism " + src_.name() + " -> " + dst_.name() +
                                " does not intertwine generator " + std::to_string(i),
                            i);
}

Morphism::Morphism(Module src, Module dst, Mat mat, Trusted)
    : src_(std::move(src)), dst_(std::move(dst)), mat_(std::move(mat)) {}

Morphism trusted_morphism(Module src, Module dst, Mat mat) {
  return Morphism(std::move(src), std::move(dst), std::move(mat), Morphism::Trusted{});
}

Morphism Morphism::identity(const Module& m) {
  return trusted_morphism(m, m, Mat::identity(m.field(), m.dim()));
}

Morphism Morphism::zero(const Module& src, const Module& dst) {
  require_compatible(src, dst, "zero morphism");
  return trusted_morphism(src, dst, Mat(src.field(), dst.dim(), src.dim()));
}

Morphism Morphism::operator-() const { return trusted_morphism(src_, dst_, -mat_); }

Morphism Morphism::scaled(std::uint32_t s) const { return trusted_morphism(src_, dst_, mat_.scaled(s)); }

Morphism operator+(const Morphism& a, const Morphism& b) {
  if (!(a.src_ == b.src_) || !(a.dst_ == b.dst_)) throw DimensionError("sum of non-parallel morphisms");
  return trusted_morphism(a.src_, a.dst_, a.mat_ + b.mat_);
}

Morphism operator-(const Morphism& a, const Morphism& b) {
  if (!(a.src_ == b.src_) || !(a.dst_ == b.dst_))
    throw DimensionError("difference of non-parallel morphisms");
  return trusted_morphism(a.src_, a.dst_, a.mat_ - b.mat_);
}

Morphism operator*(const Morphism& g, const Morphism& f) {
  if (!(f.dst_ == g.src_))
    throw DimensionError("composition: " + f.dst_.name() + " (dim " + std::to_string(f.dst_.dim()) +
                         ") does not match " + g.src_.name() + " (dim " + std::to_string(g.src_.dim()) + ")");
  return trusted_morphism(f.src_, g.dst_, g.mat_ * f.mat_);
}

// ---- hom spaces -----------------------------------------------------------

Mat HomSpace::coordinates(const Mat& m) const {
  Mat v(m.field(), coord_rows_.size(), 1);
  const Mat flat = m.vec();
  for (std::size_t i = 0; i < coord_rows_.size(); ++i) v.set(i, 0, flat(coord_rows_[i], 0));
  return coord_inverse_ * v;
}

Morphism HomSpace::combine(const Mat& coeffs) const {
  Mat m(src.field(), dst.dim(), src.dim());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto c = coeffs(i, 0);
    if (c != 0) m += basis[i].mat().scaled(c);
  }
  return trusted_morphism(src, dst, std::move(m));
}

namespace {

std::shared_ptr<const HomSpace> compute_hom(const Module& m, const Module& n) {
  auto hs = std::make_shared<HomSpace>();
  hs->src = m;
  hs->dst = n;
  const PrimeField f = m.field();
  const std::size_t a = n.dim(), b = m.dim();  // X is a x b
  const std::size_t unknowns = a * b;
  Mat sys(f, m.generators() * unknowns, unknowns);
  for (std::size_t g = 0; g < m.generators(); ++g) {
    const Mat& A = m.action(g);
    const Mat& B = n.action(g);
    // (X A - B X)[r][c] = sum_k X[r][k] A[k][c] - sum_k B[r][k] X[k][c]
    for (std::size_t r = 0; r < a; ++r)
      for (std::size_t c = 0; c < b; ++c) {
        const std::size_t eq = g * unknowns + r * b + c;
        for (std::size_t k = 0; k < b; ++k)
          if (A(k, c) != 0) sys.set(eq, r * b + k, sys(eq, r * b + k) + A(k, c));
        for (std::size_t k = 0; k < a; ++k)
          if (B(r, k) != 0) sys.set(eq, k * b + c, static_cast<std::int64_t>(sys(eq, k * b + c)) - B(r, k));
      }
  }
  const Mat ker = m.generators() == 0 ? Mat::identity(f, unknowns) : kernel_basis(sys);
  for (std::size_t j = 0; j < ker.cols(); ++j)
    hs->basis.push_back(trusted_morphism(m, n, Mat::unvec(ker.col(j), a, b)));
  hs->vec_basis_ = ker;
  const auto rr = rref(ker.transpose());
  hs->coord_rows_ = rr.pivots;
  Mat sub(f, ker.cols(), ker.cols());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) sub.set(i, j, ker(rr.pivots[i], j));
  hs->coord_inverse_ = *inverse(sub);
  return hs;
}

}  // namespace

std::shared_ptr<const HomSpace> hom_space(const Module& m, const Module& n) {
  require_compatible(m, n, "hom");
  static std::mutex mu;
  static std::map<std::pair<std::string, std::string>, std::shared_ptr<const HomSpace>> cache;
  auto key = std::make_pair(m.key(), n.key());
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) {
      if (it->second->src.name() == m.name() && it->second->dst.name() == n.name()) return it->second;
      // Same content under different labels: reuse the matrices, relabel.
      auto relabeled = std::make_shared<HomSpace>(*it->second);
      relabeled->src = m;
      relabeled->dst = n;
      for (auto& h : relabeled->basis) h = trusted_morphism(m, n, h.mat());
      return relabeled;
    }
  }
  auto hs = compute_hom(m, n);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 50000) cache.clear();
  return cache.try_emplace(key, hs).first->second;
}

std::vector<Morphism> hom_basis(const Module& m, const Module& n) { return hom_space(m, n)->basis; }

// ---- kernels, cokernels, sums ---------------------------------------------

namespace {

// Actions restricted to the subspace spanned by the independent columns of
// `basis`, which must be invariant.
Module restrict_to(const Module& m, const Mat& basis, std::string name) {
  std::vector<Mat> acts;
  for (const auto& a : m.actions()) acts.push_back(*solve(basis, a * basis));
  return Module(std::move(name), m.field(), basis.cols(), std::move(acts));
}

}  // namespace

Morphism KernelResult::factor(const Morphism& u) const {
  auto x = solve(incl.mat(), u.mat());
  if (!x) throw std::invalid_argument("kernel factorization: map does not land in the kernel");
  return trusted_morphism(u.src(), obj, *x);
}

Morphism CokernelResult::factor(const Morphism& v) const {
  auto x = solve(proj.mat().transpose(), v.mat().transpose());
  if (!x) throw std::invalid_argument("cokernel factorization: map does not kill the image");
  return trusted_morphism(obj, v.dst(), x->transpose());
}

KernelResult kernel(const Morphism& f) {
  const Mat basis = kernel_basis(f.mat());
  Module k = restrict_to(f.src(), basis, "ker");
  return {k, trusted_morphism(k, f.src(), basis)};
}

CokernelResult cokernel(const Morphism& f) {
  const Module& d = f.dst();
  const Mat img = column_space(f.mat());
  const Mat comp = complement_basis(img);
  // coordinates w.r.t. [img | comp]; the quotient keeps the last block
  const Mat t = hcat(img, comp);
  const Mat tinv = *inverse(t);
  const Mat proj = tinv.block(img.cols(), 0, comp.cols(), d.dim());
  std::vector<Mat> acts;
  for (const auto& a : d.actions()) acts.push_back(proj * a * comp);
  Module q("coker", d.field(), comp.cols(), std::move(acts));
  return {q, trusted_morphism(d, q, proj)};
}

ImageResult image(const Morphism& f) {
  const Mat basis = column_space(f.mat());
  Module im = restrict_to(f.dst(), basis, "im");
  Morphism incl = trusted_morphism(im, f.dst(), basis);
  Morphism co = trusted_morphism(f.src(), im, *solve(basis, f.mat()));
  return {im, co, incl};
}

DirectSum direct_sum(const std::vector<Module>& parts, PrimeField field, std::size_t generators) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  std::vector<Mat> acts;
  for (std::size_t g = 0; g < generators; ++g) {
    Mat a(field, total, total);
    std::size_t off = 0;
    for (const auto& p : parts) {
      for (std::size_t r = 0; r < p.dim(); ++r)
        for (std::size_t c = 0; c < p.dim(); ++c) a.set(off + r, off + c, p.action(g)(r, c));
      off += p.dim();
    }
    acts.push_back(std::move(a));
  }
  std::string name;
  for (const auto& p : parts) name += (name.empty() ? "" : "+") + p.name();
  if (name.empty()) name = "0";
  Module sum(name, field, total, std::move(acts));
  DirectSum ds{sum, {}, {}};
  std::size_t off = 0;
  for (const auto& p : parts) {
    Mat in(field, total, p.dim());
    Mat out(field, p.dim(), total);
    for (std::size_t i = 0; i < p.dim(); ++i) {
      in.set(off + i, i, 1);
      out.set(i, off + i, 1);
    }
    ds.in.push_back(trusted_morphism(p, sum, in));
    ds.out.push_back(trusted_morphism(sum, p, out));
    off += p.dim();
  }
  return ds;
}

DirectSum direct_sum(const Module& a, const Module& b) {
  require_compatible(a, b, "direct sum");
  return direct_sum({a, b}, a.field(), a.generators());
}

Module power(const Module& m, std::size_t k) {
  auto ds = direct_sum(std::vector<Module>(k, m), m.field(), m.generators());
  return ds.obj.renamed(k == 0 ? "0" : m.name() + "^" + std::to_string(k));
}

Morphism row_morphism(const std::vector<Morphism>& parts) {
  if (parts.empty()) throw std::invalid_argument("row_morphism: no parts");
  std::vector<Module> srcs;
  for (const auto& p : parts) {
    if (!(p.dst() == parts[0].dst())) throw DimensionError("row_morphism: targets differ");
    srcs.push_back(p.src());
  }
  auto ds = direct_sum(srcs, parts[0].src().field(), parts[0].src().generators());
  Mat m(ds.obj.field(), parts[0].dst().dim(), 0);
  for (const auto& p : parts) m = hcat(m, p.mat());
  return trusted_morphism(ds.obj, parts[0].dst(), m);
}

Morphism column_morphism(const std::vector<Morphism>& parts) {
  if (parts.empty()) throw std::invalid_argument("column_morphism: no parts");
  std::vector<Module> dsts;
  for (const auto& p : parts) {
    if (!(p.src() == parts[0].src())) throw DimensionError("column_morphism: sources differ");
    dsts.push_back(p.dst());
  }
  auto ds = direct_sum(dsts, parts[0].src().field(), parts[0].src().generators());
  Mat m(ds.obj.field(), 0, parts[0].src().dim());
  for (const auto& p : parts) m = vcat(m, p.mat());
  return trusted_morphism(parts[0].src(), ds.obj, m);
}

Morphism block_diag(const Morphism& a, const Morphism& b) {
  auto s = direct_sum(a.src(), b.src());
  auto d = direct_sum(a.dst(), b.dst());
  return trusted_morphism(s.obj, d.obj, block_diag(a.mat(), b.mat()));
}

Morphism PullbackResult::mediate(const Morphism& u1, const Morphism& u2) const {
  return ker.factor(column_morphism({u1, u2}));
}

PullbackResult pullback(const Morphism& f, const Morphism& p) {
  if (!(f.dst() == p.dst())) throw DimensionError("pullback: codomains differ");
  Morphism diff = row_morphism({f, -p});
  auto k = kernel(diff);
  Module obj = k.obj.renamed("PB");
  k.obj = obj;
  k.incl = trusted_morphism(obj, k.incl.dst(), k.incl.mat());
  const Mat& inc = k.incl.mat();
  Morphism q1 = trusted_morphism(obj, f.src(), inc.block(0, 0, f.src().dim(), obj.dim()));
  Morphism q2 = trusted_morphism(obj, p.src(), inc.block(f.src().dim(), 0, p.src().dim(), obj.dim()));
  return {obj, q1, q2, k};
}

Morphism PushoutResult::mediate(const Morphism& v1, const Morphism& v2) const {
  return coker.factor(row_morphism({v1, v2}));
}

PushoutResult pushout(const Morphism& f, const Morphism& i) {
  if (!(f.src() == i.src())) throw DimensionError("pushout: domains differ");
  Morphism diff = column_morphism({f, -i});
  auto c = cokernel(diff);
  Module obj = c.obj.renamed("PO");
  c.obj = obj;
  c.proj = trusted_morphism(c.proj.src(), obj, c.proj.mat());
  const Mat& pr = c.proj.mat();
  Morphism j1 = trusted_morphism(f.dst(), obj, pr.block(0, 0, obj.dim(), f.dst().dim()));
  Morphism j2 = trusted_morphism(i.dst(), obj, pr.block(0, f.dst().dim(), obj.dim(), i.dst().dim()));
  return {obj, j1, j2, c};
}

bool is_mono(const Morphism& f) { return rank(f.mat()) == f.src().dim(); }
bool is_epi(const Morphism& f) { return rank(f.mat()) == f.dst().dim(); }
bool is_iso(const Morphism& f) { return f.src().dim() == f.dst().dim() && is_mono(f); }

std::optional<std::string> exactness_defect(const ShortExactSeq& s) {
  if (!(s.left.dst() == s.right.src())) return "middle objects differ";
  if (!is_mono(s.left)) return "left map is not injective";
  if (!is_epi(s.right)) return "right map is not surjective";
  if (!(s.right * s.left).is_zero()) return "composite is not zero";
  if (s.left.src().dim() + s.right.dst().dim() != s.left.dst().dim()) return "image differs from kernel";
  return std::nullopt;
}

// ---- factorization --------------------------------------------------------

namespace {

// Solves sum_j c_j (images_j) = target in vec form; images are matrices of
// target's shape.
std::optional<SolveResult> combo_solve(const std::vector<Mat>& images, const Mat& target) {
  const PrimeField f = target.field();
  Mat sys(f, target.rows() * target.cols(), images.size());
  for (std::size_t j = 0; j < images.size(); ++j) {
    const auto e = images[j].entries();
    for (std::size_t i = 0; i < e.size(); ++i) sys.set(i, j, e[i]);
  }
  return solve_all(sys, target.vec());
}

}  // namespace

std::optional<LiftSet> all_lifts(const Morphism& via, const Morphism& target) {
  if (!(via.dst() == target.dst())) throw DimensionError("lift: targets differ");
  auto hs = hom_space(target.src(), via.src());
  std::vector<Mat> imgs;
  for (const auto& h : hs->basis) imgs.push_back(via.mat() * h.mat());
  auto sol = combo_solve(imgs, target.mat());
  if (!sol) return std::nullopt;
  LiftSet ls{hs->combine(sol->particular), {}};
  for (const auto& n : sol->null_basis) ls.homogeneous.push_back(hs->combine(n));
  return ls;
}

std::optional<Morphism> lift_through(const Morphism& via, const Morphism& target) {
  if (auto ls = all_lifts(via, target)) return ls->particular;
  return std::nullopt;
}

std::optional<Morphism> extend_through(const Morphism& via, const Morphism& target) {
  if (!(via.src() == target.src())) throw DimensionError("extend: sources differ");
  auto hs = hom_space(via.dst(), target.dst());
  std::vector<Mat> imgs;
  for (const auto& h : hs->basis) imgs.push_back(h.mat() * via.mat());
  auto sol = combo_solve(imgs, target.mat());
  if (!sol) return std::nullopt;
  return hs->combine(sol->particular);
}

// ---- isomorphism ----------------------------------------------------------

const char* to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    default: return "undecided";
  }
}

std::vector<std::size_t> word_rank_profile(const Module& m, std::size_t max_len) {
  std::vector<std::size_t> out;
  std::vector<Word> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (std::size_t g = 0; g < m.generators(); ++g) {
        Word v = w;
        v.push_back(g);
        out.push_back(rank(word_action(m, v)));
        next.push_back(std::move(v));
      }
    layer = std::move(next);
  }
  return out;
}

namespace {

// For one generator: ranks of (A - l)^j for every scalar l and j <= dim,
// plus whether the characteristic polynomial splits. When it splits these
// ranks determine the Jordan form.
std::pair<std::vector<std::size_t>, bool> eigen_profile(const Module& m) {
  std::vector<std::size_t> out;
  const std::size_t d = m.dim();
  const std::uint32_t p = m.field().modulus();
  std::size_t alg = 0;
  for (std::uint32_t l = 0; l < p; ++l) {
    Mat b = m.action(0) - Mat::identity(m.field(), d).scaled(l);
    Mat acc = Mat::identity(m.field(), d);
    std::size_t last = d;
    for (std::size_t j = 1; j <= d; ++j) {
      acc = acc * b;
      last = rank(acc);
      out.push_back(last);
    }
    alg += d - last;
  }
  return {out, alg == d};
}

}  // namespace

IsoResult module_iso(const Module& a, const Module& b, std::uint64_t seed) {
  IsoResult res;
  if (!(a.field() == b.field()) || a.generators() != b.generators() || a.dim() != b.dim()) {
    res.decision = Decision::no;
    res.method = "dimension";
    return res;
  }
  if (a.dim() == 0) {
    res.decision = Decision::yes;
    res.iso = Morphism::zero(a, b);
    res.method = "zero";
    return res;
  }
  if (word_rank_profile(a, 3) != word_rank_profile(b, 3)) {
    res.decision = Decision::no;
    res.method = "word ranks";
    return res;
  }
  const bool single = a.generators() == 1 && a.field().modulus() <= 1000;
  bool complete_invariant_equal = false;
  if (single) {
    auto [pa, split_a] = eigen_profile(a);
    auto [pb, split_b] = eigen_profile(b);
    if (pa != pb || split_a != split_b) {
      res.decision = Decision::no;
      res.method = "eigen ranks";
      return res;
    }
    complete_invariant_equal = split_a;
  }
  auto hs = hom_space(a, b);
  const std::size_t h = hs->dim();
  const std::uint32_t p = a.field().modulus();
  if (h == 0) {
    res.decision = Decision::no;
    res.method = "hom";
    return res;
  }
  if (p <= 3 && h <= 8) {
    Mat c(a.field(), h, 1);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < h; ++i) total *= p;
    for (std::uint64_t code = 1; code < total; ++code) {
      std::uint64_t x = code;
      for (std::size_t i = 0; i < h; ++i) {
        c.set(i, 0, static_cast<std::int64_t>(x % p));
        x /= p;
      }
      Morphism f = hs->combine(c);
      if (is_iso(f)) {
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
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Mat c(a.field(), h, 1);
  for (int trial = 0; trial < 256; ++trial) {
    for (std::size_t i = 0; i < h; ++i) c.set(i, 0, static_cast<std::int64_t>(rng() % p));
    Morphism f = hs->combine(c);
    if (is_iso(f)) {
      res.decision = Decision::yes;
      res.iso = f;
      res.method = "random";
      return res;
    }
  }
  if (complete_invariant_equal) {
    res.decision = Decision::yes;
    res.method = "jordan invariants";
    return res;
  }
  res.decision = Decision::undecided;
  res.method = "random search exhausted";
  return res;
}

}  // namespace stabcat
