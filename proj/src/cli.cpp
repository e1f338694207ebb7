#include "hmcusp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "hmcusp/cusp.hpp"
#include "hmcusp/eisenstein.hpp"
#include "hmcusp/error.hpp"
#include "hmcusp/field.hpp"
#include "hmcusp/gk.hpp"
#include "hmcusp/lvalues.hpp"

namespace hmcusp {
namespace {

using nlohmann::json;

constexpr int kCacheVersion = 1;

json fe_json(const FieldElement& x) {
    return json{{"a", rat_to_string(x.a)}, {"b", rat_to_string(x.b)}};
}

std::string fe_text(const FieldElement& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// result cache: one JSON object {version, entries:{disc: exact data}}.
// Only exact values are stored (rational strings, unit coordinates, fan
// digits) so a hit can never shift a numerical result; a stored value that
// disagrees with a recomputation means the file is stale and is an error.
// ---------------------------------------------------------------------------

struct CacheFile {
    std::string path;  // empty when caching is unavailable
    bool hit = false;
    json root;
};

std::string default_cache_path() {
    std::filesystem::path base;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        base = xdg;
    else if (const char* home = std::getenv("HOME"); home && *home)
        base = std::filesystem::path(home) / ".cache";
    else
        return "";
    return (base / "hmcusp" / "cache.json").string();
}

CacheFile load_cache(const std::string& requested, long disc) {
    CacheFile c;
    c.path = requested.empty() ? default_cache_path() : requested;
    c.root = json{{"version", kCacheVersion}, {"entries", json::object()}};
    if (c.path.empty()) return c;
    std::ifstream in(c.path);
    if (in) {
        try {
            json parsed = json::parse(in);
            if (parsed.is_object() && parsed.value("version", 0) == kCacheVersion &&
                parsed.contains("entries") && parsed["entries"].is_object())
                c.root = std::move(parsed);
        } catch (const json::exception&) {
            // unreadable file: start over with an empty cache
        }
    }
    c.hit = c.root["entries"].contains(std::to_string(disc));
    return c;
}

void cache_put(CacheFile& c, long disc, const std::string& key, const json& value) {
    if (c.path.empty()) return;
    json& entry = c.root["entries"][std::to_string(disc)];
    if (entry.contains(key) && entry[key] != value)
        throw Error(errkind::CacheMismatch,
                    "cached value of '" + key + "' for discriminant " +
                        std::to_string(disc) +
                        " disagrees with the computed one; remove " + c.path);
    entry[key] = value;
}

void save_cache(const CacheFile& c, std::ostream& err) {
    if (c.path.empty()) return;
    std::error_code ec;
    std::filesystem::path p(c.path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream out(c.path);
    if (!out) {
        err << "warning: cache file " << c.path << " is not writable" << std::endl;
        return;
    }
    out << c.root.dump(2) << "\n";
}

json cache_json(const CacheFile& c) {
    return json{{"path", c.path}, {"hit", c.hit}};
}

// ---------------------------------------------------------------------------
// option bag shared by the subcommands
// ---------------------------------------------------------------------------

struct Options {
    long disc = 5;
    std::string format = "text";
    std::string cache_path;
    double tol = 0;  // per-subcommand default applied at setup
    long trace_bound = 8;
    double s = 1.5;
    std::vector<double> y{2.0, 2.0};
    std::vector<double> z{0.0, 1.0, 0.0, 1.0};
    double bound = 80.0;
    int quadrature = 8;
    long power = 1;
    int degree = 2;
    std::string check = "all";
};

struct Rendered {
    json doc;
    std::vector<std::string> text;
    int code = 0;
};

void emit(const Rendered& r, const Options& o, std::ostream& out) {
    if (o.format == "json") {
        out << r.doc.dump(2) << "\n";
    } else {
        for (const auto& line : r.text) out << line << "\n";
    }
}

std::string passfail(bool b) { return b ? "PASS" : "FAIL"; }

// ---------------------------------------------------------------------------
// subcommand handlers
// ---------------------------------------------------------------------------

Rendered run_field(const Options& o, std::ostream& err) {
    QuadraticField F(o.disc);
    CacheFile cache = load_cache(o.cache_path, o.disc);
    cache_put(cache, o.disc, "fund_unit", fe_json(F.fund_unit()));
    cache_put(cache, o.disc, "unit_norm", F.unit_norm());
    cache_put(cache, o.disc, "class_number", F.class_number());
    cache_put(cache, o.disc, "narrow_class_number", F.narrow_class_number());
    save_cache(cache, err);

    Rendered r;
    r.doc = json{{"command", "field"},
                 {"disc", o.disc},
                 {"par", F.par()},
                 {"fund_unit", fe_json(F.fund_unit())},
                 {"unit_norm", F.unit_norm()},
                 {"regulator", F.regulator()},
                 {"class_number", F.class_number()},
                 {"narrow_class_number", F.narrow_class_number()},
                 {"narrow_h1", F.narrow_h1()},
                 {"cache", cache_json(cache)}};
    r.text = {"disc: " + std::to_string(o.disc),
              "integral basis: 1, (" + std::to_string(F.par()) + " + sqrt(" +
                  std::to_string(o.disc) + "))/2",
              "fundamental unit: " + fe_text(F.fund_unit()) +
                  "  (norm " + std::to_string(F.unit_norm()) + ")",
              "regulator: " + fmt(F.regulator()),
              "class number: " + std::to_string(F.class_number()),
              "narrow class number: " + std::to_string(F.narrow_class_number())};
    return r;
}

Rendered run_zeta(const Options& o, std::ostream& err) {
    QuadraticField F(o.disc);
    const Rat exact = zeta_minus1_exact(F);
    NumericOptions nopts;
    nopts.rel_tol = 1e-13;
    const double pi = boost::math::constants::pi<double>();
    // route the value through the completed functional equation: the exact
    // special value must match D^{3/2} zeta_F(2) / (4 pi^4)
    const double analytic = std::pow(static_cast<double>(o.disc), 1.5) *
                            dedekind_zeta(F, 2.0, nopts) / (4 * std::pow(pi, 4));
    const double abs_err = std::fabs(rat_to_double(exact) - analytic);
    const bool pass = abs_err <= o.tol;

    CacheFile cache = load_cache(o.cache_path, o.disc);
    cache_put(cache, o.disc, "zeta_minus_one", rat_to_string(exact));
    save_cache(cache, err);

    Rendered r;
    r.doc = json{{"command", "zeta"},
                 {"disc", o.disc},
                 {"zeta_minus_one", rat_to_string(exact)},
                 {"zeta_minus_one_numeric", analytic},
                 {"abs_err", abs_err},
                 {"tol", o.tol},
                 {"volume_interior", volume_interior(F)},
                 {"volume_boundary", volume_boundary(F)},
                 {"pass", pass},
                 {"cache", cache_json(cache)}};
    r.text = {"disc: " + std::to_string(o.disc),
              "zeta(-1) exact: " + rat_to_string(exact),
              "zeta(-1) via functional equation: " + fmt(analytic),
              "difference: " + fmt(abs_err) + "  (tol " + fmt(o.tol) + ")",
              "volume interior: " + fmt(volume_interior(F)),
              "volume boundary: " + fmt(volume_boundary(F)),
              passfail(pass)};
    r.code = pass ? 0 : 1;
    return r;
}

Rendered run_cusp_resolve(const Options& o, std::ostream& err) {
    QuadraticField F(o.disc);
    CuspFan fan = build_cusp_fan(F);
    const long n = static_cast<long>(fan.cycle.size());

    bool unimodular = true, recursion = true;
    for (long k = 0; k + 1 <= n; ++k) {
        Rat det = fan.rays[k].a * fan.rays[k + 1].b - fan.rays[k].b * fan.rays[k + 1].a;
        if (det != Rat(1)) unimodular = false;
    }
    for (long k = 1; k + 1 <= n; ++k) {
        FieldElement lhs = fan.rays[k - 1] + fan.rays[k + 1];
        FieldElement rhs = fan.rays[k] * Rat(Int(fan.cycle[k]));
        if (lhs != rhs) recursion = false;
    }
    const bool free_action = check_free_action(F, fan, F.tp_generator());
    const bool pass = unimodular && recursion && free_action;

    CacheFile cache = load_cache(o.cache_path, o.disc);
    cache_put(cache, o.disc, "period", json(fan.primitive_cycle));
    save_cache(cache, err);

    json rays = json::array();
    for (const auto& A : fan.rays) rays.push_back(fe_json(A));
    Rendered r;
    r.doc = json{{"command", "cusp resolve"},
                 {"disc", o.disc},
                 {"period", fan.primitive_cycle},
                 {"cycle", fan.cycle},
                 {"rays", rays},
                 {"seed", fe_json(fan.seed)},
                 {"closure", fe_json(fan.closure)},
                 {"checks",
                  json{{"unimodular", unimodular},
                       {"recursion", recursion},
                       {"free_action", free_action}}},
                 {"pass", pass},
                 {"cache", cache_json(cache)}};
    std::ostringstream period;
    for (size_t i = 0; i < fan.primitive_cycle.size(); ++i)
        period << (i ? "," : "") << fan.primitive_cycle[i];
    r.text = {"disc: " + std::to_string(o.disc),
              "period: [" + period.str() + "]",
              "cycle length: " + std::to_string(n),
              "seed: " + fe_text(fan.seed),
              "closure: " + fe_text(fan.closure),
              std::string("adjacent determinants: ") + passfail(unimodular),
              std::string("three-term recursion: ") + passfail(recursion),
              std::string("free unit action: ") + passfail(free_action),
              passfail(pass)};
    r.code = pass ? 0 : 1;
    return r;
}

Rendered run_cusp_homology(const Options& o) {
    QuadraticField F(o.disc);
    CuspFan fan = build_cusp_fan(F);
    const long n = static_cast<long>(fan.cycle.size());
    ComplexHomology H = homology(boundary_complex(fan));
    LinkHomology L = link_homology(F);

    const bool betti_ok =
        H.betti[0] == 1 && H.betti[1] == 1 && H.betti[2] == n;
    const bool link_ok = L.betti[0] == 1 && L.betti[1] == 1 && L.betti[2] == 1 &&
                         L.betti[3] == 1;
    const bool pass = betti_ok && link_ok;

    auto int_strings = [](const std::vector<Int>& v) {
        json a = json::array();
        for (const Int& x : v) a.push_back(x.str());
        return a;
    };
    json monodromy = json::array();
    for (const auto& row : L.monodromy) {
        json jrow = json::array();
        for (const Int& x : row) jrow.push_back(x.str());
        monodromy.push_back(jrow);
    }

    Rendered r;
    r.doc = json{{"command", "cusp homology"},
                 {"disc", o.disc},
                 {"betti", {H.betti[0], H.betti[1], H.betti[2]}},
                 {"torsion0", int_strings(H.torsion0)},
                 {"torsion1", int_strings(H.torsion1)},
                 {"link",
                  json{{"betti", {L.betti[0], L.betti[1], L.betti[2], L.betti[3]}},
                       {"h1_torsion", int_strings(L.h1_torsion)},
                       {"monodromy_trace", L.monodromy_trace.str()},
                       {"monodromy", monodromy}}},
                 {"pass", pass}};
    std::ostringstream tors;
    for (const Int& x : L.h1_torsion) tors << " " << x;
    r.text = {"disc: " + std::to_string(o.disc),
              "quotient betti: (" + std::to_string(H.betti[0]) + ", " +
                  std::to_string(H.betti[1]) + ", " + std::to_string(H.betti[2]) + ")",
              "link betti: (" + std::to_string(L.betti[0]) + ", " +
                  std::to_string(L.betti[1]) + ", " + std::to_string(L.betti[2]) +
                  ", " + std::to_string(L.betti[3]) + ")",
              "link H1 torsion:" + (L.h1_torsion.empty() ? " none" : tors.str()),
              "monodromy trace: " + L.monodromy_trace.str(),
              passfail(pass)};
    r.code = pass ? 0 : 1;
    return r;
}

Rendered run_cusp_circle(const Options& o) {
    QuadraticField F(o.disc);
    CuspFan fan = build_cusp_fan(F);
    CircleClass c = extract_circle(F, fan, F.unit_pow(2 * o.power));
    const bool pass = c.class_coefficient == o.power;

    Rendered r;
    r.doc = json{{"command", "cusp circle"},
                 {"disc", o.disc},
                 {"power", o.power},
                 {"class_coefficient", c.class_coefficient},
                 {"edge_count", c.edge_count},
                 {"pass", pass}};
    r.text = {"disc: " + std::to_string(o.disc),
              "closure power: " + std::to_string(o.power),
              "degree-one class: " + std::to_string(c.class_coefficient) +
                  " x generator",
              "edges traversed: " + std::to_string(c.edge_count),
              passfail(pass)};
    r.code = pass ? 0 : 1;
    return r;
}

Rendered run_eis_fourier(const Options& o) {
    QuadraticField F(o.disc);
    FourierExpansion E = fourier_holomorphic(F, o.trace_bound);
    HeckeReport rep = hecke_checks(F, E);

    json coeffs = json::array();
    for (const auto& [alpha, value] : E.coeffs) {
        coeffs.push_back(json{{"alpha", fe_json(alpha)},
                              {"trace", rat_to_string(F.trace(alpha))},
                              {"value", value.str()}});
    }
    Rendered r;
    r.doc = json{{"command", "eis fourier"},
                 {"disc", o.disc},
                 {"trace_bound", o.trace_bound},
                 {"constant", rat_to_string(E.constant)},
                 {"coefficients", coeffs},
                 {"hecke",
                  json{{"coefficients_available", rep.coefficients_available},
                       {"prime_checks", rep.prime_checks},
                       {"multiplicative_checks", rep.multiplicative_checks},
                       {"recursion_checks", rep.recursion_checks},
                       {"all_pass", rep.all_pass}}},
                 {"pass", rep.all_pass}};
    r.text = {"disc: " + std::to_string(o.disc),
              "constant term: " + rat_to_string(E.constant),
              "coefficients up to trace " + std::to_string(o.trace_bound) + ": " +
                  std::to_string(E.coeffs.size())};
    for (const auto& [alpha, value] : E.coeffs)
        r.text.push_back("  " + fe_text(alpha) + "  ->  " + value.str());
    r.text.push_back("prime checks: " + std::to_string(rep.prime_checks) +
                     ", multiplicative: " + std::to_string(rep.multiplicative_checks) +
                     ", recursion: " + std::to_string(rep.recursion_checks));
    r.text.push_back(passfail(rep.all_pass));
    r.code = rep.all_pass ? 0 : 1;
    return r;
}

Rendered run_eis_eval(const Options& o) {
    QuadraticField F(o.disc);
    FourierExpansion E = fourier_holomorphic(F, o.trace_bound);
    EisPoint z{o.z[0], o.z[1], o.z[2], o.z[3]};
    EvalResult v = eval_holomorphic(F, E, z);

    Rendered r;
    r.doc = json{{"command", "eis eval"},
                 {"disc", o.disc},
                 {"trace_bound", o.trace_bound},
                 {"z", o.z},
                 {"value", {{"re", v.value.real()}, {"im", v.value.imag()}}},
                 {"tail_bound", v.tail_bound}};
    r.text = {"disc: " + std::to_string(o.disc),
              "value: " + fmt(v.value.real()) + " + " + fmt(v.value.imag()) + " i",
              "certified tail: " + fmt(v.tail_bound)};
    return r;
}

Rendered run_eis_constant_term(const Options& o) {
    QuadraticField F(o.disc);
    ConstantTermReport rep =
        constant_term_numeric(F, o.y[0], o.y[1], o.s, o.bound, o.quadrature);
    const bool pass = rep.abs_err <= o.tol;

    Rendered r;
    r.doc = json{{"command", "eis constant-term"},
                 {"disc", o.disc},
                 {"s", o.s},
                 {"y", o.y},
                 {"bound", o.bound},
                 {"quadrature", o.quadrature},
                 {"measured", rep.measured},
                 {"predicted", rep.predicted},
                 {"abs_err", rep.abs_err},
                 {"leading", rep.leading},
                 {"reflected", rep.reflected},
                 {"tol", o.tol},
                 {"pass", pass}};
    r.text = {"disc: " + std::to_string(o.disc),
              "measured x-average: " + fmt(rep.measured),
              "predicted constant term: " + fmt(rep.predicted),
              "  leading piece: " + fmt(rep.leading),
              "  reflected piece: " + fmt(rep.reflected),
              "difference: " + fmt(rep.abs_err) + "  (tol " + fmt(o.tol) + ")",
              passfail(pass)};
    r.code = pass ? 0 : 1;
    return r;
}

Rendered run_gk_verify(const Options& o) {
    struct Line {
        std::string name;
        bool pass;
        long count;
        std::string detail;
    };
    std::vector<Line> lines;

    auto want = [&](const char* name) { return o.check == name || o.check == "all"; };

    if (want("d2")) {
        IdentityReport rep = verify_dd(o.degree);
        lines.push_back({"d-squared-zero", rep.pass, rep.checks, rep.detail});
    }
    if (want("defective") && (o.check == "defective" || o.degree >= 2)) {
        IdentityReport rep = verify_defective(o.degree);
        lines.push_back({"pair-defect-primitive", rep.pass, rep.checks, rep.detail});
    }
    if (want("harder") && (o.check == "harder" || o.degree >= 3)) {
        IdentityReport rep = verify_harder(o.degree);
        lines.push_back({"conjugation-primitive", rep.pass, rep.checks, rep.detail});
    }
    if (want("closed")) {
        ClosednessCensus c = closedness_census(o.degree);
        lines.push_back({"closedness-census", c.pass, c.keys,
                         std::to_string(c.closed) + " of " + std::to_string(c.keys) +
                             " basis keys closed"});
    }

    bool pass = true;
    json checks = json::array();
    Rendered r;
    r.text.push_back("degree: " + std::to_string(o.degree));
    for (const Line& l : lines) {
        pass = pass && l.pass;
        checks.push_back(json{{"name", l.name},
                              {"pass", l.pass},
                              {"checks", l.count},
                              {"detail", l.detail}});
        r.text.push_back(passfail(l.pass) + " " + l.name + " (" +
                         std::to_string(l.count) + " checks)");
        if (!l.detail.empty()) r.text.push_back("  " + l.detail);
    }
    r.doc = json{{"command", "gk verify"},
                 {"degree", o.degree},
                 {"identities", checks},
                 {"pass", pass}};
    r.text.push_back(passfail(pass));
    r.code = pass ? 0 : 1;
    return r;
}

Rendered run_verify_residue(const Options& o) {
    QuadraticField F(o.disc);
    ResidueIdentityReport rep = verify_residue_identity(F, o.tol);

    Rendered r;
    r.doc = json{{"command", "verify residue-identity"},
                 {"disc", o.disc},
                 {"lhs", rep.lhs},
                 {"rhs", rep.rhs},
                 {"abs_err", rep.abs_err},
                 {"tol", o.tol},
                 {"pass", rep.pass}};
    r.text = {"disc: " + std::to_string(o.disc),
              "class number x regulator / xi(2): " + fmt(rep.lhs),
              "boundary volume / interior volume: " + fmt(rep.rhs),
              "difference: " + fmt(rep.abs_err) + "  (tol " + fmt(o.tol) + ")",
              passfail(rep.pass)};
    r.code = rep.pass ? 0 : 1;
    return r;
}

Rendered run_verify_weak_periods(const Options& o) {
    QuadraticField F(o.disc);
    ResidueIdentityReport residue = verify_residue_identity(F, o.tol);
    IdentityReport defective = verify_defective(2);

    const Rat z = zeta_minus1_exact(F);
    const Rat az = z < Rat(0) ? -z : z;
    if (az == Rat(0))
        throw Error(errkind::PoleAtOne, "special value vanishes; constant undefined");
    const Rat constant = Rat(1) / (Rat(2) * az);
    const bool pass = residue.pass && defective.pass;

    Rendered r;
    r.doc = json{{"command", "verify weak-periods"},
                 {"disc", o.disc},
                 {"residue",
                  json{{"lhs", residue.lhs},
                       {"rhs", residue.rhs},
                       {"abs_err", residue.abs_err},
                       {"pass", residue.pass}}},
                 {"defective",
                  json{{"pass", defective.pass},
                       {"checks", defective.checks},
                       {"witness", defective.detail}}},
                 {"constant", rat_to_string(constant)},
                 {"pass", pass}};
    r.text = {"disc: " + std::to_string(o.disc),
              std::string("residue identity: ") + passfail(residue.pass) +
                  "  (lhs " + fmt(residue.lhs) + ", rhs " + fmt(residue.rhs) +
                  ", difference " + fmt(residue.abs_err) + ")",
              std::string("pair defect primitive: ") + passfail(defective.pass) +
                  " (" + std::to_string(defective.checks) + " pair)",
              "  " + defective.detail,
              "assembled constant 1/(2|zeta(-1)|) = " + rat_to_string(constant),
              passfail(pass)};
    r.code = pass ? 0 : 1;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// parser and dispatch
// ---------------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    // the format choice must survive parse failures so that JSON consumers
    // always receive a document
    bool want_json = false;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--format=json") want_json = true;
        if (args[i] == "--format" && i + 1 < args.size() && args[i + 1] == "json")
            want_json = true;
    }

    Options o;
    CLI::App app{"arithmetic, boundary geometry and Eisenstein structure of "
                 "Hilbert modular surfaces"};
    app.name("hmcusp");
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd, bool with_disc, bool with_cache) {
        if (with_disc)
            cmd->add_option("--disc", o.disc, "fundamental discriminant")->required();
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        if (with_cache)
            cmd->add_option("--cache", o.cache_path,
                            "cache file (default: user cache directory)");
    };

    CLI::App* field = app.add_subcommand("field", "field invariants");
    add_common(field, true, true);

    CLI::App* zeta = app.add_subcommand("zeta", "special value and volumes");
    add_common(zeta, true, true);
    double zeta_tol = 1e-8;
    zeta->add_option("--tol", zeta_tol, "agreement tolerance")->capture_default_str();

    CLI::App* cusp = app.add_subcommand("cusp", "cusp boundary geometry");
    cusp->require_subcommand(1);
    CLI::App* resolve = cusp->add_subcommand("resolve", "boundary fan and cycle");
    add_common(resolve, true, true);
    CLI::App* hom = cusp->add_subcommand("homology", "boundary and link homology");
    add_common(hom, true, false);
    CLI::App* circle = cusp->add_subcommand("circle", "unit-power circle class");
    add_common(circle, true, false);
    circle->add_option("--power", o.power, "power of the closure unit")
        ->capture_default_str();

    CLI::App* eis = app.add_subcommand("eis", "Eisenstein series");
    eis->require_subcommand(1);
    CLI::App* fourier = eis->add_subcommand("fourier", "coefficients and checks");
    add_common(fourier, true, false);
    fourier->add_option("--trace-bound", o.trace_bound, "largest trace")
        ->check(CLI::Range(1L, 64L))
        ->capture_default_str();
    CLI::App* eval = eis->add_subcommand("eval", "evaluate with certified tail");
    add_common(eval, true, false);
    eval->add_option("--trace-bound", o.trace_bound, "truncation trace")
        ->check(CLI::Range(1L, 64L))
        ->capture_default_str();
    eval->add_option("--z", o.z, "point re1,im1,re2,im2")
        ->delimiter(',')
        ->expected(4);
    CLI::App* cterm = eis->add_subcommand("constant-term", "lattice-sum average");
    add_common(cterm, true, false);
    double cterm_tol = 1e-2;
    cterm->add_option("--s", o.s, "spectral parameter")->capture_default_str();
    cterm->add_option("--y", o.y, "imaginary parts y1,y2")->delimiter(',')->expected(2);
    cterm->add_option("--bound", o.bound, "orbit box size")->capture_default_str();
    cterm->add_option("--quadrature", o.quadrature, "x-grid points per axis")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();
    cterm->add_option("--tol", cterm_tol, "agreement tolerance")->capture_default_str();

    CLI::App* gk = app.add_subcommand("gk", "symbolic differential engine");
    gk->require_subcommand(1);
    CLI::App* gkverify = gk->add_subcommand("verify", "identity checks");
    add_common(gkverify, false, false);
    gkverify->add_option("--degree", o.degree, "number of axes")
        ->check(CLI::Range(1, 5))
        ->capture_default_str();
    gkverify->add_option("--check", o.check, "which identity family")
        ->check(CLI::IsMember({"d2", "defective", "harder", "closed", "all"}))
        ->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "composite verifications");
    verify->require_subcommand(1);
    CLI::App* resid = verify->add_subcommand("residue-identity",
                                             "volume ratio against the zeta residue");
    add_common(resid, true, false);
    double resid_tol = 1e-9;
    resid->add_option("--tol", resid_tol, "agreement tolerance")->capture_default_str();
    CLI::App* weak = verify->add_subcommand(
        "weak-periods", "assembled numeric and symbolic period report");
    add_common(weak, true, false);
    double weak_tol = 1e-9;
    weak->add_option("--tol", weak_tol, "residue tolerance")->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hmcusp");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        if (want_json) {
            out << json{{"error",
                         {{"kind", errkind::Usage}, {"message", e.what()}}}}
                       .dump(2)
                << "\n";
        } else {
            err << "usage error: " << e.what() << std::endl;
        }
        return 2;
    }

    try {
        Rendered r;
        if (app.got_subcommand(field)) {
            r = run_field(o, err);
        } else if (app.got_subcommand(zeta)) {
            o.tol = zeta_tol;
            r = run_zeta(o, err);
        } else if (app.got_subcommand(cusp)) {
            if (cusp->got_subcommand(resolve)) r = run_cusp_resolve(o, err);
            else if (cusp->got_subcommand(hom)) r = run_cusp_homology(o);
            else r = run_cusp_circle(o);
        } else if (app.got_subcommand(eis)) {
            if (eis->got_subcommand(fourier)) r = run_eis_fourier(o);
            else if (eis->got_subcommand(eval)) r = run_eis_eval(o);
            else {
                o.tol = cterm_tol;
                r = run_eis_constant_term(o);
            }
        } else if (app.got_subcommand(gk)) {
            r = run_gk_verify(o);
        } else {
            if (verify->got_subcommand(resid)) {
                o.tol = resid_tol;
                r = run_verify_residue(o);
            } else {
                o.tol = weak_tol;
                r = run_verify_weak_periods(o);
            }
        }
        emit(r, o, out);
        return r.code;
    } catch (const Error& e) {
        if (want_json || o.format == "json") {
            out << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2)
                << "\n";
        } else {
            err << "error [" << e.kind() << "]: " << e.what() << std::endl;
        }
        return 3;
    } catch (const std::exception& e) {
        if (want_json || o.format == "json") {
            out << json{{"error", {{"kind", errkind::Internal}, {"message", e.what()}}}}
                       .dump(2)
                << "\n";
        } else {
            err << "internal error: " << e.what() << std::endl;
        }
        return 3;
    }
}

}  // namespace hmcusp
