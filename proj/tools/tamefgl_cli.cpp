#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tamefgl/certify/certify.hpp"
#include "tamefgl/certify/hensel.hpp"
#include "tamefgl/curves/elliptic.hpp"
#include "tamefgl/curves/family.hpp"
#include "tamefgl/error.hpp"
#include "tamefgl/fgl/json.hpp"
#include "tamefgl/padic/discriminant.hpp"
#include "tamefgl/series/json.hpp"

using namespace tamefgl;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRefused = 2;

struct Options {
  int ell = 5;
  std::optional<int> prec;
  std::optional<int> cap;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  bool explain = false;
  int jobs = 1;
  std::string law = "product-supersingular";
  std::string law_file;
  std::string input;
  std::vector<std::int64_t> weierstrass;
  std::vector<std::string> coeffs;
  std::vector<std::int64_t> offsets;
  std::vector<std::int64_t> asym;
  std::vector<std::int64_t> free;
  int m = 0;
  int count = 0;
  int k = 4;
  bool unit_entry = false;
};

int precision(const Options& o) {
  if (o.prec) return *o.prec;
  if (const char* env = std::getenv("TAMEFGL_PRECISION")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("TAMEFGL_PRECISION is not an integer: ") + env);
    }
  }
  return Ring::default_precision(o.ell);
}

Ring ring(const Options& o) { return Ring(o.ell, precision(o)); }

int fgl_cap(const Options& o) {
  int need = o.ell * o.ell + 2;
  int cap = o.cap.value_or(need);
  if (cap < need)
    throw Error(ErrorCode::CapTooSmall, "cap " + std::to_string(cap) + " < l^2 + 2 = " + std::to_string(need));
  return cap;
}

void require_certification_precision(const Ring& R) {
  if (R.prec() < 5) throw Error(ErrorCode::PrecisionUnsupported, "certification needs precision at least 5");
}

ojson ordered(const nlohmann::json& j) { return ojson::parse(j.dump()); }

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

class Output {
 public:
  explicit Output(const Options& o) : opt_(o) {}

  void json(const ojson& j) { text(opt_.format == "report" ? j.dump(2) : j.dump()); }

  void certificate(const TameCertificate& c, const ojson& extra = ojson()) {
    if (opt_.format == "report") {
      text(explain(c));
    } else {
      ojson j = ordered(certificate_to_json(c));
      if (!extra.is_null()) j = ojson{{"subject", extra}, {"certificate", j}};
      text(j.dump());
    }
    if (opt_.explain) std::cerr << explain(c) << "\n";
  }

  void text(const std::string& s) { buf_ << s << "\n"; }

  void flush() {
    if (opt_.out.empty()) {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(opt_.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + opt_.out);
    f << buf_.str();
  }

 private:
  const Options& opt_;
  std::ostringstream buf_;
};

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::CertifiedTame: return kExitOk;
    case Verdict::Refused: return kExitRefused;
    case Verdict::Error: return kExitError;
  }
  return kExitError;
}

int exit_for_all(const std::vector<Verdict>& vs) {
  int code = kExitOk;
  for (Verdict v : vs) {
    int c = exit_for(v);
    if (c == kExitError) return kExitError;
    if (c == kExitRefused) code = kExitRefused;
  }
  return code;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results keep index order.
template <class T>
std::vector<T> parallel_map(int n, int jobs, const std::function<T(int)>& fn) {
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  int workers = std::max(1, std::min(jobs, n));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) {
        try {
          slots[static_cast<std::size_t>(i)].emplace(fn(i));
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  std::vector<T> out;
  for (int i = 0; i < n; ++i) {
    if (errors[static_cast<std::size_t>(i)]) std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
    out.push_back(std::move(*slots[static_cast<std::size_t>(i)]));
  }
  return out;
}

std::uint64_t subseed(std::uint64_t seed, int i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i)};
  std::array<std::uint32_t, 2> v{};
  seq.generate(v.begin(), v.end());
  return (static_cast<std::uint64_t>(v[0]) << 32) | v[1];
}

Weierstrass weierstrass_from(const std::vector<std::int64_t>& c) {
  if (c.size() != 5) throw Error(ErrorCode::InvalidArgument, "--weierstrass takes a1,a2,a3,a4,a6");
  return {c[0], c[1], c[2], c[3], c[4]};
}

FormalGroupLaw build_law(const Options& o) {
  if (!o.law_file.empty()) return law_from_json(read_json_file(o.law_file));
  Ring R = ring(o);
  int cap = fgl_cap(o);
  auto super = [&] { return elliptic_fgl(R, supersingular_base_curve(o.ell).curve.weierstrass(), cap); };
  auto ordinary = [&] { return elliptic_fgl(R, Weierstrass{0, 0, 0, 1, 1}, cap); };
  const std::string& n = o.law;
  if (n == "additive") return additive_fgl(R, cap);
  if (n == "multiplicative") return multiplicative_fgl(R, cap);
  if (n == "supersingular") return super();
  if (n == "ordinary") return ordinary();
  if (n == "elliptic") return elliptic_fgl(R, weierstrass_from(o.weierstrass), cap);
  if (n == "product-supersingular") {
    auto e = super();
    return product_fgl(e, e);
  }
  if (n == "product-mixed") return product_fgl(super(), ordinary());
  if (n == "product-ordinary") {
    auto e = ordinary();
    return product_fgl(e, e);
  }
  if (n == "product-elliptic") {
    auto e = elliptic_fgl(R, weierstrass_from(o.weierstrass), cap);
    return product_fgl(e, e);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown law '" + n + "'");
}

std::array<Residue, 7> parse_coeffs(const Ring& R, const std::vector<std::string>& c) {
  if (c.size() != 7) throw Error(ErrorCode::InvalidArgument, "--coeffs takes f0,...,f6");
  std::array<Residue, 7> f{};
  for (std::size_t i = 0; i < 7; ++i) f[i] = R.from_decimal(c[i]);
  return f;
}

template <std::size_t N>
std::array<std::int64_t, N> fixed(const std::vector<std::int64_t>& v, const char* flag) {
  if (v.empty()) return {};
  if (v.size() != N) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " takes " + std::to_string(N) + " integers");
  std::array<std::int64_t, N> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

ojson fp2_json(const Fp2Element& x) {
  if (x.in_base_field()) return ojson(static_cast<std::int64_t>(x.c0()));
  return ojson(x.to_string());
}

// Commands.

int cmd_deuring(const Options& o, Output& out) {
  auto h = deuring_poly(o.ell);
  ojson c = ojson::array();
  for (int k = 0; k <= (o.ell - 1) / 2; ++k)
    c.push_back(static_cast<std::int64_t>(h.coeff(Exponent{static_cast<std::uint16_t>(k)})));
  out.json({{"ell", o.ell}, {"coeffs", c}});
  return kExitOk;
}

int cmd_factor(const Options& o, Output& out) {
  auto f = find_quadratic_factor(o.ell);
  out.json({{"ell", o.ell}, {"a", f.a}});
  return kExitOk;
}

int cmd_base_curve(const Options& o, Output& out) {
  auto p = supersingular_base_curve(o.ell);
  ojson torsion = ojson::array();
  for (auto& x : two_torsion(p.curve)) torsion.push_back(fp2_json(x));
  auto g = glue_preconditions(p.curve);
  ojson j{{"ell", o.ell},
          {"a", p.factor.a},
          {"b", p.curve.b},
          {"points", p.points},
          {"supersingular", p.supersingular},
          {"lambda", p.lambda ? fp2_json(*p.lambda) : ojson()},
          {"lambda_verified", p.lambda_verified},
          {"delta_g", p.delta_g},
          {"two_torsion_x", torsion},
          {"gluing",
           {{"pass", g.pass()}, {"route", g.route}, {"j", g.j}, {"automorphisms", g.automorphisms}}}};
  out.json(j);
  return p.supersingular && g.pass() ? kExitOk : kExitRefused;
}

int cmd_fgl_build(const Options& o, Output& out) {
  out.json(ordered(law_to_json(build_law(o))));
  return kExitOk;
}

int cmd_fgl_mul(const Options& o, Output& out) {
  int m = o.m == 0 ? o.ell : o.m;
  out.json(ordered(mul_to_json(mul_by_m(build_law(o), m))));
  return kExitOk;
}

MulByM ell_map_of(const Options& o) {
  if (!o.input.empty()) return mul_from_json(read_json_file(o.input));
  return mul_by_m(build_law(o), o.ell);
}

int cmd_fgl_height(const Options& o, Output& out) {
  auto h = height(ell_map_of(o));
  ojson j{{"infinite", h.infinite}};
  if (!h.infinite) {
    j["height"] = h.h;
    j["r"] = h.r;
    j["s"] = h.s;
  }
  if (!h.note.empty()) j["note"] = h.note;
  out.json(j);
  return kExitOk;
}

int cmd_fgl_r(const Options& o, Output& out) {
  out.json({{"r", r_exponent(ell_map_of(o))}});
  return kExitOk;
}

int cmd_certify_fgl(const Options& o, Output& out) {
  auto f = build_law(o);
  require_certification_precision(f.ring());
  auto cert = certify_symmetric(f, o.law_file.empty() ? o.law : o.law_file);
  out.certificate(cert);
  return exit_for(cert.verdict);
}

int cmd_certify_curve(const Options& o, Output& out) {
  std::optional<Ring> R;
  std::array<Residue, 7> f{};
  if (!o.input.empty()) {
    auto [r, c] = curve_from_json(read_json_file(o.input));
    R.emplace(r);
    f = c;
  } else {
    R.emplace(ring(o));
    f = parse_coeffs(*R, o.coeffs);
  }
  auto cert = validate_curve(*R, f);
  out.certificate(cert);
  return exit_for(cert.verdict);
}

ojson member_json(const FamilyMember& m) {
  return {{"curve", ordered(curve_to_json(m.curve))}, {"certificate", ordered(certificate_to_json(m.certificate))}};
}

int emit_members(const Options& o, Output& out, const std::vector<FamilyMember>& ms) {
  std::vector<Verdict> vs;
  for (const auto& m : ms) {
    vs.push_back(m.certificate.verdict);
    if (o.format == "report") out.text(m.curve.to_string() + "\n" + explain(m.certificate));
    else out.text(member_json(m).dump());
    if (o.explain) std::cerr << explain(m.certificate) << "\n";
  }
  return exit_for_all(vs);
}

std::array<std::int64_t, 4> random_offsets(int ell, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::array<std::int64_t, 4> d{};
  for (auto& x : d) x = ell * (static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * ell + 1)) - ell);
  return d;
}

int cmd_family_primera(const Options& o, Output& out) {
  Ring R = ring(o);
  require_certification_precision(R);
  if (o.count > 0) {
    auto ms = parallel_map<FamilyMember>(o.count, o.jobs, [&](int i) {
      return family_primera(R, random_offsets(o.ell, subseed(o.seed, i)));
    });
    return emit_members(o, out, ms);
  }
  return emit_members(o, out, {family_primera(R, fixed<4>(o.offsets, "--offsets"))});
}

int cmd_family_main(const Options& o, Output& out) {
  Ring R = ring(o);
  require_certification_precision(R);
  if (o.count > 0) {
    auto ms = parallel_map<FamilyMember>(o.count, o.jobs,
                                         [&](int i) { return random_family_main(R, subseed(o.seed, i)); });
    return emit_members(o, out, ms);
  }
  auto base = family_primera(R, fixed<4>(o.offsets, "--offsets")).curve;
  return emit_members(o, out, {family_main(base, fixed<3>(o.asym, "--asym"), fixed<3>(o.free, "--free"))});
}

int cmd_perturb_certify(const Options& o, Output& out) {
  auto f = build_law(o);
  require_certification_precision(f.ring());
  auto ell_map = mul_by_m(f, o.ell);
  auto base = certify_symmetric(f, ell_map, o.law);
  int n = std::max(1, o.count);
  auto certs = parallel_map<TameCertificate>(n, o.jobs, [&](int i) {
    std::uint64_t s = o.count > 0 ? subseed(o.seed, i) : o.seed;
    auto fp = perturb_law(f, o.k, s, o.unit_entry);
    return certify_perturbed(base, ell_map, fp,
                             o.law + " perturbed by l^" + std::to_string(o.k) + " (seed " + std::to_string(s) + ")");
  });
  std::vector<Verdict> vs;
  for (const auto& c : certs) {
    out.certificate(c);
    vs.push_back(c.verdict);
  }
  return exit_for_all(vs);
}

int cmd_hensel(const Options& o, Output& out) {
  std::vector<TruncatedSeries> system;
  std::vector<Residue> start;
  std::optional<Ring> R;
  Residue e = 0;
  bool refine = false;
  if (!o.input.empty()) {
    auto j = read_json_file(o.input);
    try {
      for (const auto& eq : j.at("equations")) system.push_back(series_from_json(eq));
      if (system.empty()) throw Error(ErrorCode::ParseError, "no equations");
      R.emplace(system.front().ring());
      for (const auto& s : j.at("start")) start.push_back(R->from_decimal(s.get<std::string>()));
      e = R->from_decimal(j.at("e").get<std::string>());
      refine = j.value("refine", false);
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::ParseError, ex.what());
    }
  } else {
    // (ℓx − ℓ⁵ + x⁷, ℓy − ℓ⁶ + y⁷) from the origin.
    R.emplace(ring(o));
    const int cap = 8;
    auto x = TruncatedSeries::variable(*R, 2, cap, 0), y = TruncatedSeries::variable(*R, 2, cap, 1);
    auto c = [&](int k) { return TruncatedSeries::constant(*R, 2, cap, R->ell_power(k)); };
    auto p7 = [&](int i) {
      Exponent ex{};
      ex[static_cast<std::size_t>(i)] = 7;
      return TruncatedSeries::from_terms(*R, 2, cap, {{ex, 1}});
    };
    system = {x.scaled(o.ell) - c(5) + p7(0), y.scaled(o.ell) - c(6) + p7(1)};
    start = {0, 0};
    e = R->mul(R->from_int(o.ell), R->from_int(o.ell));
  }
  auto res = refine ? newton_refine(system, start, e) : hensel_lift(system, start, e);
  ojson root = ojson::array(), vals = ojson::array();
  for (Residue r : res.root) {
    root.push_back(R->to_signed_decimal(r));
    vals.push_back(R->reduce(r) == 0 ? ojson() : ojson(R->valuation(r).value()));
  }
  out.json({{"ell", R->ell()},
            {"prec", R->prec()},
            {"root", root},
            {"valuations", vals},
            {"precision", res.precision},
            {"iterations", res.iterations},
            {"residual_valuation", res.residual_valuation},
            {"shift_valuation", res.shift_valuation}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tame ramification certificates for formal group laws and genus-2 curves"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--ell", o.ell, "prime l > 3")->capture_default_str();
    s->add_option("--prec", o.prec, "precision N (default: TAMEFGL_PRECISION or a per-l default)");
    s->add_option("--seed", o.seed, "seed for all randomness")->capture_default_str();
    s->add_option("--out", o.out, "write output to this file");
    s->add_option("--format", o.format, "json or report")->check(CLI::IsMember({"json", "report"}));
    s->add_flag("--explain", o.explain, "render checklists with anchors on stderr");
    s->add_option("--jobs", o.jobs, "threads across independent subjects")->check(CLI::PositiveNumber);
  };
  auto law_opts = [&](CLI::App* s) {
    s->add_option("--cap", o.cap, "truncation cap (>= l^2 + 2)");
    s->add_option("--law", o.law,
                  "additive | multiplicative | supersingular | ordinary | elliptic | product-supersingular | "
                  "product-mixed | product-ordinary | product-elliptic")
        ->capture_default_str();
    s->add_option("--law-file", o.law_file, "law JSON written by fgl-build");
    s->add_option("--weierstrass", o.weierstrass, "a1,a2,a3,a4,a6 for the elliptic laws")->delimiter(',');
  };

  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Options&, Output&);
  };
  std::vector<std::pair<CLI::App*, int (*)(const Options&, Output&)>> cmds;
  auto add = [&](const char* name, const char* help, int (*run)(const Options&, Output&)) {
    auto* s = app.add_subcommand(name, help);
    common(s);
    cmds.emplace_back(s, run);
    return s;
  };

  add("deuring", "coefficients of the Deuring polynomial mod l", cmd_deuring);
  add("factor", "canonical factor x^2 - x + a of the Deuring polynomial", cmd_factor);
  add("base-curve", "supersingular base curve, point count and gluing data", cmd_base_curve);
  law_opts(add("fgl-build", "build a formal group law", cmd_fgl_build));
  {
    auto* s = add("fgl-mul", "multiplication-by-m map of a law", cmd_fgl_mul);
    law_opts(s);
    s->add_option("--m", o.m, "multiplier (default l)");
  }
  for (auto [name, help, run] : {Cmd{"fgl-height", "height from [l]", cmd_fgl_height},
                                 Cmd{"fgl-r", "r-exponent of [l] mod l", cmd_fgl_r}}) {
    auto* s = add(name, help, run);
    law_opts(s);
    s->add_option("--input", o.input, "[l] JSON written by fgl-mul");
  }
  law_opts(add("certify-fgl", "certify a symmetric 2-dim law", cmd_certify_fgl));
  {
    auto* s = add("certify-curve", "decide the main-family conditions for y^2 = f(x)", cmd_certify_curve);
    s->add_option("--coeffs", o.coeffs, "f0,...,f6 (coefficient of x^i)")->delimiter(',');
    s->add_option("--input", o.input, "curve JSON");
  }
  {
    auto* s = add("family-primera", "member of the first family", cmd_family_primera);
    s->add_option("--offsets", o.offsets, "d0,d1,d2,d3 in (l)")->delimiter(',');
    s->add_option("--count", o.count, "emit this many seeded random members as NDJSON");
  }
  {
    auto* s = add("family-main", "member of the main family", cmd_family_main);
    s->add_option("--offsets", o.offsets, "base offsets d0,d1,d2,d3 in (l)")->delimiter(',');
    s->add_option("--asym", o.asym, "e60,e51,e42 in (l^4)")->delimiter(',');
    s->add_option("--free", o.free, "g0,g1,g2 in (l)")->delimiter(',');
    s->add_option("--count", o.count, "emit this many seeded random members as NDJSON");
  }
  {
    auto* s = add("perturb-certify", "perturb a certified law and re-certify", cmd_perturb_certify);
    law_opts(s);
    s->add_option("--k", o.k, "perturbation T = I + l^k M")->capture_default_str();
    s->add_flag("--unit-entry", o.unit_entry, "force one unit off-diagonal entry in M");
    s->add_option("--count", o.count, "number of seeded perturbations");
  }
  {
    auto* s = add("hensel", "lift an approximate root (default: built-in example system)", cmd_hensel);
    s->add_option("--input", o.input, "system JSON {equations, start, e, refine}");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    for (auto& [s, run] : cmds) {
      if (!s->parsed()) continue;
      Output out(o);
      int code = run(o, out);
      out.flush();
      return code;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
