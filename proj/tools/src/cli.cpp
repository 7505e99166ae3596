#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabcat/fibration.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/hovey.hpp"
#include "stabcat/verify.hpp"

namespace stabcat::cli {

using nlohmann::json;

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

json witness_json(const Witness& w) {
  json m = json::object();
  for (const auto& [label, lit] : w.matrices) m[label] = lit;
  return {{"instance", w.instance}, {"detail", w.detail}, {"matrices", m}};
}

const char* mark(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::undecided: return "UNDECIDED";
  }
  return "?";
}

Verdict overall(const std::vector<Report>& reports) {
  Verdict v = Verdict::pass;
  for (const auto& r : reports) {
    if (r.verdict() == Verdict::fail) return Verdict::fail;
    if (r.verdict() == Verdict::undecided) v = Verdict::undecided;
  }
  return v;
}

}  // namespace

void render(std::ostream& out, Format fmt, const ReportHeader& h, const std::vector<Report>& reports,
            const double* wall_ms) {
  const Verdict v = overall(reports);
  if (fmt == Format::jsonl) {
    out << json{{"type", "header"},     {"tool", "stabcat"}, {"version", kVersion}, {"command", h.command},
                {"input", h.input},     {"input_digest", h.digest}, {"seed", h.seed}}
               .dump()
        << '\n';
    for (const auto& r : reports) {
      for (const auto& row : r.rows()) {
        json ws = json::array();
        for (const auto& w : row.witnesses) ws.push_back(witness_json(w));
        out << json{{"type", "row"},           {"report", r.title()},       {"name", row.name},
                    {"instances", row.instances}, {"failures", row.failures}, {"undecided", row.undecided},
                    {"verdict", to_string(row.verdict())}, {"witnesses", ws}}
                   .dump()
            << '\n';
      }
      for (const auto& n : r.notes) out << json{{"type", "note"}, {"report", r.title()}, {"text", n}}.dump() << '\n';
    }
    json s = {{"type", "summary"}, {"verdict", to_string(v)}};
    if (wall_ms) s["wall_ms"] = *wall_ms;
    out << s.dump() << '\n';
    return;
  }
  out << "stabcat " << kVersion << "  " << h.command << "\n";
  out << "input " << h.input << "  fnv1a " << h.digest << "  seed " << h.seed << "\n";
  for (const auto& r : reports) {
    out << "\n== " << r.title() << "\n";
    for (const auto& row : r.rows()) {
      out << "  " << std::left << std::setw(10) << mark(row.verdict()) << std::right << std::setw(6) << row.instances
          << "  " << row.name << "\n";
      for (const auto& w : row.witnesses) {
        out << "      " << w.instance;
        if (!w.detail.empty()) out << ": " << w.detail;
        out << "\n";
        for (const auto& [label, lit] : w.matrices) out << "        " << label << " = " << lit << "\n";
      }
    }
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
  }
  out << "\nverdict: " << to_string(v) << "\n";
  if (wall_ms) out << "wall-clock: " << std::fixed << std::setprecision(1) << *wall_ms << " ms\n";
}

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::string fixture = "F1";
  std::string context = "main";
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  std::size_t pairs = 50;
  std::size_t max_dim = 4;
  std::string universe;
  bool timing = false;
};

struct Loaded {
  std::string label;
  std::string text;
  RepFile rf;
  std::shared_ptr<ApproxContext> ctx;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Loaded load(const Options& o) {
  Loaded l;
  if (!o.file.empty()) {
    l.label = o.file;
    l.text = read_file(o.file);
  } else {
    const char* dir = std::getenv("STABCAT_FIXTURE_DIR");
    const std::filesystem::path p = dir ? std::filesystem::path(dir) / (o.fixture + ".rep") : std::filesystem::path();
    if (dir && std::filesystem::exists(p)) {
      l.label = p.string();
      l.text = read_file(p.string());
    } else {
      l.label = o.fixture;
      l.text = std::string(fixture_text(o.fixture));
    }
  }
  l.rf = parse_repfile(l.text);
  l.ctx = make_context(l.rf, o.context);
  return l;
}

const Module& module_arg(const Loaded& l, const std::string& name) {
  if (!l.rf.has_module(name)) throw UnknownName("unknown module '" + name + "'");
  return l.rf.module(name);
}

const Morphism& morphism_arg(const Loaded& l, const std::string& name) {
  if (!l.rf.has_morphism(name)) throw UnknownName("unknown morphism '" + name + "'");
  return l.rf.morphism(name).map;
}

SampleSpec sample_spec(const Options& o, const Loaded& l) {
  SampleSpec s;
  s.universe = o.universe.empty() ? l.ctx->universe() : l.rf.class_members(o.universe);
  s.morphisms = o.samples;
  s.pairs = o.pairs;
  s.seed = o.seed;
  s.max_dim = o.max_dim;
  return s;
}

// Plain results of the computation commands, one record per command.
class Result {
 public:
  explicit Result(std::string command) { j_["command"] = std::move(command); }

  void add(const std::string& key, json v, std::string text) {
    j_[key] = std::move(v);
    if (!text.empty()) lines_.push_back(std::move(text));
  }
  void line(std::string text) { lines_.push_back(std::move(text)); }

  void emit(std::ostream& out, Format fmt) const {
    if (fmt == Format::jsonl) out << j_.dump() << '\n';
    else
      for (const auto& l : lines_) out << l << '\n';
  }

 private:
  json j_;
  std::vector<std::string> lines_;
};

std::string lit(const Morphism& f) { return matrix_literal(f.mat()); }

std::string describe(const Module& m) {
  std::string s = (m.name().empty() ? std::string("<unnamed>") : m.name()) + " dim " + std::to_string(m.dim());
  for (std::size_t i = 0; i < m.generators(); ++i) s += "\n  gen " + std::to_string(i) + ": " + matrix_literal(m.action(i));
  return s;
}

json module_json(const Module& m) {
  json acts = json::array();
  for (const auto& a : m.actions()) acts.push_back(matrix_literal(a));
  return {{"name", m.name()}, {"dim", m.dim()}, {"actions", acts}};
}

int verdict_code(Verdict v) { return v == Verdict::pass ? 0 : 1; }

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable categories modulo add(W): approximations, loop and suspension, triangles and axiom checks"};
  app.name("stabcat");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--file", o.file, "RepFile to load instead of a fixture");
  app.add_option("--fixture", o.fixture, "Bundled fixture F1, F2 or F3 (default F1)");
  app.add_option("--context", o.context, "Context declared in the file (default main)");
  app.add_option("--format", o.format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
  app.add_option("--seed", o.seed, "Sampling seed");
  app.add_option("--samples", o.samples, "Sampled morphisms per check");
  app.add_option("--pairs", o.pairs, "Sampled pairs or squares per check");
  app.add_option("--max-dim", o.max_dim, "Largest object dimension sampled");
  app.add_option("--universe", o.universe, "Class to sample objects from");
  app.add_flag("--timing", o.timing, "Append wall-clock time to reports");

  std::string m1, m2, side, what;
  auto* c_hom = app.add_subcommand("hom", "Basis of Hom(M, N)");
  c_hom->add_option("M", m1)->required();
  c_hom->add_option("N", m2)->required();
  auto* c_shom = app.add_subcommand("stable-hom", "Dimension and representatives of the stable Hom(M, N)");
  c_shom->add_option("M", m1)->required();
  c_shom->add_option("N", m2)->required();
  auto* c_approx = app.add_subcommand("approx", "Assigned approximations of C");
  c_approx->add_option("C", m1)->required();
  auto* c_omega = app.add_subcommand("omega", "Omega of a module or morphism");
  c_omega->add_option("name", m1)->required();
  auto* c_sigma = app.add_subcommand("sigma", "Sigma of a module or morphism");
  c_sigma->add_option("name", m1)->required();
  auto* c_tri = app.add_subcommand("triangle", "Distinguished left or right triangle of f");
  c_tri->add_option("side", side)->required()->check(CLI::IsMember({"left", "right"}));
  c_tri->add_option("f", m1)->required();
  auto* c_oct = app.add_subcommand("octahedron", "Octahedral data for g: C -> B and f: B -> A");
  c_oct->add_option("g", m1)->required();
  c_oct->add_option("f", m2)->required();
  auto* c_adj = app.add_subcommand("adjunction", "phi and psi on the stable bases of Hom(Sigma A, B) and Hom(A, Omega B)");
  c_adj->add_option("A", m1)->required();
  c_adj->add_option("B", m2)->required();
  std::string cof = "cof", triv = "triv", fib = "fib";
  auto* c_ver = app.add_subcommand("verify", "Run an axiom check and print a report");
  c_ver->add_option("what", what, "lt, rt, functors, fibration, cofibration, homotopy, hovey, adjunction, pretri, loop-inverse")
      ->required()
      ->check(CLI::IsMember({"lt", "rt", "functors", "fibration", "cofibration", "homotopy", "hovey", "adjunction",
                             "pretri", "loop-inverse"}));
  c_ver->add_option("--cofibrant", cof, "Class of cofibrant objects (hovey)");
  c_ver->add_option("--trivial", triv, "Class of trivial objects (hovey)");
  c_ver->add_option("--fibrant", fib, "Class of fibrant objects (hovey)");

  std::vector<std::string> argv_s{"stabcat"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  const Format fmt = o.format == "jsonl" ? Format::jsonl : Format::text;

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const Loaded l = load(o);
    const ApproxContext& ctx = *l.ctx;
    ReportHeader hdr{"", l.label, fnv1a_hex(l.text), o.seed};

    if (c_hom->parsed()) {
      const Module& a = module_arg(l, m1);
      const Module& b = module_arg(l, m2);
      auto hs = hom_space(a, b);
      Result r("hom");
      r.add("dim", hs->dim(), "dim Hom(" + m1 + ", " + m2 + ") = " + std::to_string(hs->dim()));
      json basis = json::array();
      for (std::size_t i = 0; i < hs->dim(); ++i) {
        basis.push_back(lit(hs->basis[i]));
        r.line("  b" + std::to_string(i) + " = " + lit(hs->basis[i]));
      }
      r.add("basis", basis, "");
      r.emit(out, fmt);
      return 0;
    }
    if (c_shom->parsed()) {
      const Module& a = module_arg(l, m1);
      const Module& b = module_arg(l, m2);
      const StableHomSpace& sh = ctx.stable_hom(a, b);
      Result r("stable-hom");
      r.add("dim", sh.dim(), "dim stable Hom(" + m1 + ", " + m2 + ") = " + std::to_string(sh.dim()));
      json reps = json::array();
      for (std::size_t i = 0; i < sh.dim(); ++i) {
        reps.push_back(lit(sh.stable_basis[i]));
        r.line("  s" + std::to_string(i) + " = " + lit(sh.stable_basis[i]));
      }
      r.add("representatives", reps, "");
      r.emit(out, fmt);
      return 0;
    }
    if (c_approx->parsed()) {
      const Module& c = module_arg(l, m1);
      const RightApprox& ra = ctx.right(c);
      const LeftApprox& la = ctx.left(c);
      Result r("approx");
      r.add("right", {{"X", module_json(ra.x)}, {"p", lit(ra.p)}, {"K", module_json(ra.k)}, {"iota", lit(ra.iota)}},
            "right approximation p_C: X_C -> C, X_C of dim " + std::to_string(ra.x.dim()) + "\n  p_C = " + lit(ra.p) +
                "\n  K_C = " + describe(ra.k) + "\n  iota = " + lit(ra.iota));
      r.add("left", {{"X", module_json(la.x)}, {"nu", lit(la.nu)}, {"K", module_json(la.k)}, {"pi", lit(la.pi)}},
            "left approximation nu^C: C -> X^C, X^C of dim " + std::to_string(la.x.dim()) + "\n  nu^C = " + lit(la.nu) +
                "\n  K^C = " + describe(la.k) + "\n  pi = " + lit(la.pi));
      r.emit(out, fmt);
      return 0;
    }
    if (c_omega->parsed() || c_sigma->parsed()) {
      const bool om = c_omega->parsed();
      const std::string cmd = om ? "omega" : "sigma";
      Result r(cmd);
      if (l.rf.has_module(m1)) {
        const Module& k = om ? omega_obj(l.rf.module(m1), ctx) : sigma_obj(l.rf.module(m1), ctx);
        r.add("object", module_json(k), std::string(om ? "Omega(" : "Sigma(") + m1 + ") = " + describe(k));
      } else {
        const Morphism& f = morphism_arg(l, m1);
        const StableMorphism s = om ? omega_mor(f, ctx) : sigma_mor(f, ctx);
        r.add("morphism", lit(s.rep()), std::string(om ? "Omega(" : "Sigma(") + m1 + ") = " + lit(s.rep()));
      }
      r.emit(out, fmt);
      return 0;
    }
    if (c_tri->parsed()) {
      const Morphism& f = morphism_arg(l, m1);
      Result r("triangle " + side);
      if (side == "left") {
        const LeftTriangle t = distinguished_left_triangle(f, ctx);
        r.add("objects", {t.h.src().dim(), t.c().dim(), t.b().dim(), t.a().dim()},
              "Omega(A) --h--> PB(f) --eta--> B --f--> A with dims " + std::to_string(t.h.src().dim()) + ", " +
                  std::to_string(t.c().dim()) + ", " + std::to_string(t.b().dim()) + ", " + std::to_string(t.a().dim()));
        r.add("h", lit(t.h), "  h = " + lit(t.h));
        r.add("g", lit(t.g), "  eta = " + lit(t.g));
        r.add("f", lit(t.f), "  f = " + lit(t.f));
      } else {
        const RightTriangle t = distinguished_right_triangle(f, ctx);
        r.add("objects", {t.a().dim(), t.b().dim(), t.c().dim(), t.h.dst().dim()},
              "A --f--> B --mu--> PO(f) --pi--> Sigma(A) with dims " + std::to_string(t.a().dim()) + ", " +
                  std::to_string(t.b().dim()) + ", " + std::to_string(t.c().dim()) + ", " + std::to_string(t.h.dst().dim()));
        r.add("f", lit(t.f), "  f = " + lit(t.f));
        r.add("g", lit(t.g), "  mu = " + lit(t.g));
        r.add("h", lit(t.h), "  pi = " + lit(t.h));
      }
      r.emit(out, fmt);
      return 0;
    }
    if (c_oct->parsed()) {
      Morphism g = morphism_arg(l, m1);
      const Morphism& f = morphism_arg(l, m2);
      if (!(g.dst() == f.src())) throw InputError("octahedron: g must end where f starts");
      Report rep("octahedron " + m1 + ", " + m2);
      rep.seed = o.seed;
      if (!is_X_epic(g, ctx)) {
        g = make_special_epic(g, ctx);
        rep.notes.push_back(m1 + " is not X-epic; replaced by its special X-epic (g, p_B)");
      }
      const OctahedronRecord oc = octahedron(g, f, ctx);
      for (const auto& c : oc.checks) rep.row(c.name).record(c.pass, {m1 + ", " + m2, "", {}});
      hdr.command = "octahedron " + m1 + " " + m2;
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      render(out, fmt, hdr, {rep}, o.timing ? &ms : nullptr);
      return verdict_code(rep.verdict());
    }
    if (c_adj->parsed()) {
      const Module& a = module_arg(l, m1);
      const Module& b = module_arg(l, m2);
      const AdjunctionMaps m = adjunction_phi(a, b, ctx);
      Result r("adjunction");
      r.add("dims", {m.forward.cols(), m.forward.rows()},
            "dim stable Hom(Sigma " + m1 + ", " + m2 + ") = " + std::to_string(m.forward.cols()) +
                ", dim stable Hom(" + m1 + ", Omega " + m2 + ") = " + std::to_string(m.forward.rows()));
      r.add("phi", matrix_literal(m.forward), "  phi = " + matrix_literal(m.forward));
      r.add("psi", matrix_literal(m.backward), "  psi = " + matrix_literal(m.backward));
      r.add("round_trip", m.ok(), std::string("  round trip: ") + (m.ok() ? "identity" : "FAILED"));
      r.emit(out, fmt);
      return m.ok() ? 0 : 1;
    }

    // verify
    const SampleSpec spec = sample_spec(o, l);
    std::vector<Report> reps;
    hdr.command = "verify " + what;
    if (what == "lt") reps.push_back(verify_axioms(ctx, spec, Side::left));
    else if (what == "rt") reps.push_back(verify_axioms(ctx, spec, Side::right));
    else if (what == "functors") reps.push_back(verify_functors(ctx, spec));
    else if (what == "fibration") reps.push_back(verify_fibration_axioms(ctx, spec));
    else if (what == "cofibration") reps.push_back(verify_cofibration_axioms(ctx, spec));
    else if (what == "homotopy") reps.push_back(homotopy_category_form_check(ctx, spec));
    else if (what == "adjunction") reps.push_back(verify_adjunction(ctx, spec));
    else if (what == "pretri") reps.push_back(verify_pretriangulated(ctx, spec));
    else if (what == "loop-inverse") reps.push_back(verify_loop_suspension_inverse(ctx, spec));
    else if (what == "hovey") {
      for (const auto* n : {&cof, &triv, &fib})
        if (!l.rf.has_class(*n)) throw UnknownName("unknown class '" + *n + "'");
      hdr.command += " --cofibrant " + cof + " --trivial " + triv + " --fibrant " + fib;
      const auto universe = o.universe.empty() ? ctx.universe() : l.rf.class_members(o.universe);
      reps.push_back(check_hovey_triple(class_spec(l.rf, cof), class_spec(l.rf, triv), class_spec(l.rf, fib), ctx,
                                        universe, o.seed)
                         .report);
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    render(out, fmt, hdr, reps, o.timing ? &ms : nullptr);
    return verdict_code(overall(reps));
  } catch (const ParseError& e) {
    err << "stabcat: " << e.what() << "\n";
    return 2;
  } catch (const UnknownName& e) {
    err << "stabcat: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "stabcat: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    err << "stabcat: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "stabcat: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace stabcat::cli
