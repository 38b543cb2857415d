#include "pwl/cli.hpp"

#include "pwl/chebyshev.hpp"
#include "pwl/errors.hpp"
#include "pwl/flow.hpp"
#include "pwl/geometry.hpp"
#include "pwl/melnikov.hpp"
#include "pwl/presets.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace pwl::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Tolerances {
    double xcheck = 1e-6;
    double quad_abs = 1e-10;
    double flow_rtol = default_map_options().rtol;
    double flow_atol = default_map_options().atol;
    double match = 0.05;  // verify: |r_fixed - r_predicted| <= match * r_predicted
};

struct Options {
    std::string preset;
    std::string coeffs_path;
    int order = 1;
    double eps = 1e-3;
    std::string range;
    int grid = 0;
    std::string format = "text";
    std::string out;
    std::optional<double> xcheck_tol;
    std::string basis = "prop2";
    std::string poly;
};

struct Loaded {
    std::string label;
    PWLCoefficients c;
    std::optional<ExactPWLCoefficients> exact;
    std::optional<std::array<Rational, 8>> lambdas;
};

Tolerances read_tolerances() {
    Tolerances t;
    const char* env = std::getenv("PWL_TOL_OVERRIDE");
    if (!env || !*env) return t;
    json j;
    try {
        j = json::parse(env);
    } catch (const json::exception& e) {
        throw ParseError(std::string("PWL_TOL_OVERRIDE is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("PWL_TOL_OVERRIDE must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw ParseError("PWL_TOL_OVERRIDE." + key + " must be a number");
        const double v = value.get<double>();
        if (!(v > 0) || !std::isfinite(v)) throw ParseError("PWL_TOL_OVERRIDE." + key + " must be positive");
        if (key == "xcheck_tol")
            t.xcheck = v;
        else if (key == "quad_abs_tol")
            t.quad_abs = v;
        else if (key == "flow_rtol")
            t.flow_rtol = v;
        else if (key == "flow_atol")
            t.flow_atol = v;
        else if (key == "match_tol")
            t.match = v;
        else
            throw ParseError("PWL_TOL_OVERRIDE: unknown key '" + key + "'");
    }
    return t;
}

Loaded load(const Options& o) {
    if (!o.preset.empty() && !o.coeffs_path.empty()) throw ParseError("use either --preset or --coeffs, not both");
    Loaded l;
    if (!o.preset.empty()) {
        l.label = o.preset;
        l.c = preset(o.preset);
        l.exact = exact_preset(o.preset);
        l.lambdas = preset_lambdas(o.preset);
        return l;
    }
    if (o.coeffs_path.empty()) throw ParseError("one of --preset or --coeffs is required");
    std::ifstream in(o.coeffs_path);
    if (!in) throw ParseError("cannot read " + o.coeffs_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(o.coeffs_path + ": " + e.what());
    }
    l.label = o.coeffs_path;
    l.exact = exact_coefficients_from_json(j);
    l.c = to_double(*l.exact);
    validate(l.c);
    return l;
}

std::pair<double, double> parse_range(const std::string& text, double lo, double hi) {
    if (text.empty()) return {lo, hi};
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("--range must be LO:HI");
    try {
        std::size_t p1 = 0, p2 = 0;
        const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        lo = std::stod(a, &p1);
        hi = std::stod(b, &p2);
        if (p1 != a.size() || p2 != b.size()) throw ParseError("");
    } catch (const std::exception&) {
        throw ParseError("malformed --range '" + text + "'");
    }
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ParseError("--range needs LO < HI");
    return {lo, hi};
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << (v == 0 ? 0.0 : v);
    return s.str();
}

// Writes to --out when given, else to `out`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os_ = &fallback;
        } else {
            file_.open(path);
            if (!file_) throw ParseError("cannot write " + path);
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void check_format(const std::string& f) {
    if (f != "text" && f != "csv" && f != "json") throw ParseError("--format must be text, csv or json");
}

// ---------------------------------------------------------------------------

int cmd_polar(const Options& o, std::ostream& out) {
    check_format(o.format);
    const Loaded l = load(o);
    if (o.order != 1 && o.order != 2) throw ParseError("--order must be 1 or 2");
    const PolarSeries s = o.order == 1 ? polar_first_order(l.c) : polar_second_order(l.c);
    Sink sink(o.out, out);
    std::ostream& os = *sink;
    const std::pair<const char*, const TrigPolySeries*> zones[] = {{"plus", &s.plus}, {"minus", &s.minus}};
    if (o.format == "json") {
        json j;
        j["order"] = o.order;
        for (const auto& [name, series] : zones) {
            json terms = json::array();
            for (const auto& t : series->terms())
                terms.push_back({{"r_power", t.r_power}, {"harmonic", t.harmonic}, {"cos", t.cos_coeff + 0.0}, {"sin", t.sin_coeff + 0.0}});
            j[name] = terms;
        }
        os << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        os << "zone,r_power,harmonic,cos,sin\n";
        for (const auto& [name, series] : zones)
            for (const auto& t : series->terms())
                os << name << "," << t.r_power << "," << t.harmonic << "," << fmt(t.cos_coeff) << "," << fmt(t.sin_coeff)
                   << "\n";
    } else {
        os << "F" << o.order << " of " << l.label << ": sum r^p (c cos(h t) + s sin(h t))\n";
        for (const auto& [name, series] : zones) {
            os << "[" << name << "]\n";
            if (series->is_zero()) os << "  0\n";
            for (const auto& t : series->terms())
                os << "  p=" << std::setw(2) << t.r_power << "  h=" << t.harmonic << "  c=" << std::setw(24) << fmt(t.cos_coeff)
                   << "  s=" << std::setw(24) << fmt(t.sin_coeff) << "\n";
        }
    }
    return ok;
}

int cmd_melnikov(const Options& o, const Tolerances& tol, std::ostream& out, std::ostream& err) {
    check_format(o.format);
    const Loaded l = load(o);
    if (o.order != 1 && o.order != 2) throw ParseError("--order must be 1 or 2");
    const auto [lo, hi] = parse_range(o.range, o.order == 1 ? 0.05 : 0.5, 5.0);
    if (!(lo > 0)) throw ParseError("--range must lie in r > 0");
    const int n = o.grid > 0 ? o.grid : 100;
    const double xtol = o.xcheck_tol.value_or(tol.xcheck);

    std::optional<Delta2Coeffs> d2;
    if (o.order == 2) d2 = delta2_coeffs(l.c);
    const GammaCoeffs<double> g = gamma_coeffs(l.c);
    const NonsmoothSystem sys = paper_family_system(l.c);
    MelnikovOptions mo;
    mo.abs_tol = tol.quad_abs;

    struct Row {
        double r, engine, closed, diff;
    };
    std::vector<Row> rows;
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        const double r = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        const Vec x = Vec::Constant(1, r);
        double engine, closed;
        if (o.order == 1) {
            engine = melnikov1(sys, x, mo)[0];
            closed = 2 * std::numbers::pi * delta1_closed(g, r);
        } else {
            engine = melnikov2(sys, x, mo)[0];
            closed = 2 * std::numbers::pi * delta2_closed(*d2, r);
        }
        rows.push_back({r, engine, closed, std::abs(engine - closed)});
        worst = std::max(worst, rows.back().diff);
    }
    Sink sink(o.out, out);
    std::ostream& os = *sink;
    if (o.format == "json") {
        json j = json::array();
        for (const auto& r : rows) j.push_back({{"r", r.r}, {"engine", r.engine}, {"closed_form", r.closed}, {"abs_diff", r.diff}});
        os << j.dump(2) << "\n";
    } else {
        os << "r,engine_value,closed_form_value,abs_diff\n";
        for (const auto& r : rows) os << fmt(r.r) << "," << fmt(r.engine) << "," << fmt(r.closed) << "," << fmt(r.diff) << "\n";
    }
    if (worst > xtol) {
        err << "cross-check failed: max |engine - closed form| = " << worst << " > " << xtol << "\n";
        return cross_check_failure;
    }
    return ok;
}

struct RootReport {
    std::string kind;
    RatPoly poly;
    bool exact = true;
};

RootReport relevant_polynomial(const Loaded& l) {
    if (!satisfies_vanishing_delta1(l.c)) {
        if (l.exact) {
            const GammaCoeffs<PiLaurent> g = gamma_coeffs(*l.exact);
            if (g.gamma0.is_rational() && g.gamma1.is_rational() && g.gamma2.is_rational())
                return {"p1", p1_poly(g), true};
        }
        return {"p1", p1_poly(gamma_coeffs(l.c)), false};
    }
    if (l.lambdas) return {"p2", p2_poly(*l.lambdas), true};
    if (l.exact) {
        const LambdaCoeffs lam = lambda_coeffs(*l.exact);
        if (lam.exact) return {"p2", p2_poly(*lam.exact), true};
    }
    return {"p2", p2_poly(lambda_coeffs(l.c)), false};
}

json roots_json(const RatPoly& p) {
    json j;
    j["polynomial"] = p.to_string();
    j["positive_root_count"] = sturm_count(p, Rational(0), std::nullopt);
    json roots = json::array();
    for (const auto& r : isolate_roots(p, Rational(0), std::nullopt))
        roots.push_back({{"interval", {to_string(r.lo), to_string(r.hi)}}, {"value", r.value}, {"radius", r_of_x(r.value)}});
    j["roots"] = roots;
    return j;
}

int cmd_roots(const Options& o, std::ostream& out, std::ostream& err) {
    json j;
    if (!o.poly.empty()) {
        if (!o.preset.empty() || !o.coeffs_path.empty()) throw ParseError("--poly excludes --preset/--coeffs");
        const RatPoly p = RatPoly::parse(o.poly);
        if (p.is_zero()) throw ZeroPolynomial("the polynomial is identically zero");
        j = roots_json(p);
        j["kind"] = "given";
    } else {
        const Loaded l = load(o);
        const RootReport rep = relevant_polynomial(l);
        if (rep.poly.is_zero()) {
            err << "the " << rep.kind << " polynomial of " << l.label << " is identically zero; no isolated zeros\n";
            return input_error;
        }
        j = roots_json(rep.poly);
        j["kind"] = rep.kind;
        j["exact_coefficients"] = rep.exact;
        j["source"] = l.label;
    }
    Sink sink(o.out, out);
    *sink << j.dump(2) << "\n";
    return ok;
}

int cmd_wronskian(const Options& o, std::ostream& out) {
    check_format(o.format);
    const std::vector<RatPoly> basis = basis_from_spec(o.basis);
    Sink sink(o.out, out);
    std::ostream& os = *sink;
    json j = json::array();
    for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
        const RatPoly w = wronskian(basis, k);
        if (o.format == "json")
            j.push_back({{"k", k}, {"W", w.to_string()}});
        else
            os << "W" << k << " = " << w.to_string() << "\n";
    }
    if (o.format == "json") os << j.dump(2) << "\n";
    return ok;
}

FlowOptions flow_options(const Tolerances& tol) {
    FlowOptions f = default_map_options();
    f.rtol = tol.flow_rtol;
    f.atol = tol.flow_atol;
    return f;
}

struct Verification {
    CycleSearch search;
    std::vector<double> expected;
    bool count_ok = false;
    bool radii_ok = false;
};

Verification verify(const PWLCoefficients& c, double eps, double lo, double hi, int grid, const Tolerances& tol) {
    Verification v;
    v.search = find_cycles(c, eps, lo, hi, grid, flow_options(tol));
    for (double r : predicted_radii(c))
        if (r >= lo && r <= hi) v.expected.push_back(r);
    v.count_ok = !v.search.degenerate && v.search.cycles.size() == v.expected.size();
    v.radii_ok = v.count_ok;
    if (v.count_ok)
        for (const auto& rec : v.search.cycles)
            if (!rec.r_predicted || std::abs(rec.r_fixed - *rec.r_predicted) > tol.match * *rec.r_predicted)
                v.radii_ok = false;
    return v;
}

int cmd_verify(const Options& o, const Tolerances& tol, std::ostream& out, std::ostream& err) {
    const Loaded l = load(o);
    const auto [lo, hi] = parse_range(o.range, 0.01, 1.5);
    if (!(lo > 0)) throw ParseError("--range must lie in r > 0");
    const int grid = o.grid > 0 ? o.grid : 400;
    const Verification v = verify(l.c, o.eps, lo, hi, grid, tol);
    Sink sink(o.out, out);
    *sink << to_json(v.search.cycles).dump(2) << "\n";
    if (v.search.degenerate) {
        err << "degenerate: the displacement vanishes identically on the grid (no isolated cycles)\n";
        return degenerate;
    }
    err << "found " << v.search.cycles.size() << " cycle(s), expected " << v.expected.size() << " in [" << lo << ", "
        << hi << "]\n";
    if (!v.radii_ok) {
        if (v.count_ok) err << "some cycle is farther than " << tol.match << " r_predicted from its prediction\n";
        return cross_check_failure;
    }
    return ok;
}

// ---------------------------------------------------------------------------

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    if (!f) throw ParseError("cannot write " + p.string());
    f << text;
}

std::string table_csv(const RatPoly& p, int from, int to) {
    // x = k/100, evaluated exactly and rounded once
    std::ostringstream s;
    s << "x,p\n";
    for (int k = from; k <= to; ++k) {
        const Rational x{mpz_class(k), mpz_class(100)};
        Rational xc = x;
        xc.canonicalize();
        s << fmt(to_double(xc)) << "," << fmt(to_double(p.evaluate(xc))) << "\n";
    }
    return s.str();
}

std::string gnuplot(const std::string& csv, const std::string& title, const std::string& png) {
    std::ostringstream s;
    s << "set datafile separator ','\nset key off\nset grid\nset xzeroaxis\n";
    s << "set title '" << title << "'\nset terminal pngcairo size 800,500\nset output '" << png << "'\n";
    s << "plot '" << csv << "' using 1:2 every ::1 with lines lw 2\n";
    return s.str();
}

int cmd_reproduce(const Options& o, const Tolerances& tol, std::ostream& out, std::ostream& err) {
    if (o.out.empty()) throw ParseError("reproduce-paper needs --out DIR");
    const fs::path dir(o.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ParseError("cannot create directory " + dir.string());

    std::vector<std::pair<std::string, bool>> claims;
    auto claim = [&](const std::string& what, bool pass) { claims.emplace_back(what, pass); };

    // First order: gammas, p1, Fig. 2
    const ExactPWLCoefficients ex1 = *exact_preset("example1");
    const GammaCoeffs<PiLaurent> g1 = gamma_coeffs(ex1);
    const RatPoly p1 = p1_poly(g1);
    {
        json j;
        j["preset"] = "example1";
        j["coefficients"] = to_json(ex1);
        j["gamma0"] = g1.gamma0.to_string();
        j["gamma1"] = g1.gamma1.to_string();
        j["gamma2"] = g1.gamma2.to_string();
        j["p1"] = p1.to_string();
        write_file(dir / "gamma.json", j.dump(2) + "\n");
        claim("gamma(example1) = (-1/20, 1, -2) exactly",
              g1.gamma0 == PiLaurent(Rational(-1, 20)) && g1.gamma1 == PiLaurent(1) && g1.gamma2 == PiLaurent(-2));
    }
    write_file(dir / "fig2.csv", table_csv(p1, -20, 100));
    write_file(dir / "fig2.gp", gnuplot("fig2.csv", "p1(x) = x^5 - 2x^2 + x - 0.05", "fig2.png"));
    const int p1_count = sturm_count(p1, Rational(0), std::nullopt);
    claim("p1 has exactly 3 positive roots", p1_count == 3);
    claim("p1 sign pattern p1(0)<0, p1(0.1)>0, p1(0.5)<0, p1(1)<0, p1(1.2)>0",
          sgn(p1.evaluate(Rational(0))) < 0 && sgn(p1.evaluate(Rational(1, 10))) > 0 &&
              sgn(p1.evaluate(Rational(1, 2))) < 0 && sgn(p1.evaluate(Rational(1))) < 0 &&
              sgn(p1.evaluate(Rational(6, 5))) > 0);

    // Second order: lambdas, p2, identity, Fig. 3
    const std::array<Rational, 8> choice = choice_lambdas();
    const RatPoly p2 = p2_poly(choice);
    {
        const LambdaCoeffs computed = lambda_coeffs(preset("example2"));
        json j = json::array();
        double worst = 0;
        for (int k = 0; k < 8; ++k) {
            const double published = to_double(choice[k]);
            const double rel = std::abs(computed.value[k] - published) / std::abs(published);
            worst = std::max(worst, rel);
            j.push_back({{"k", k}, {"published", to_string(choice[k])}, {"published_value", published},
                         {"computed", computed.value[k]}, {"relative_diff", rel}});
        }
        write_file(dir / "lambda.json", j.dump(2) + "\n");
        claim("lambda(example2) matches the published choice to 1e-10 relative", worst <= 1e-10);
    }
    RatPoly product = RatPoly(std::vector<Rational>{423361, 1097712, 39204}) * Rational(-1, 1749821402);
    for (int k = 1; k <= 7; ++k) product *= RatPoly{-k, 1};
    {
        std::ostringstream s;
        s << "p2 (sum lambda_k u_k)      = " << p2.to_string() << "\n";
        s << "-(39204x^2+1097712x+423361)/1749821402 prod_{k=1..7}(x-k) = " << product.to_string() << "\n";
        s << "exact equality: " << (p2 == product ? "yes" : "no") << "\n";
        s << "positive roots (Sturm): " << sturm_count(p2, Rational(0), std::nullopt) << "\n";
        write_file(dir / "p2_identity.txt", s.str());
    }
    claim("p2 equals the published product form exactly", p2 == product);
    claim("p2 has exactly 7 positive roots", sturm_count(p2, Rational(0), std::nullopt) == 7);
    write_file(dir / "fig3.csv", table_csv(p2, 0, 750));
    write_file(dir / "fig3.gp", gnuplot("fig3.csv", "p2(x), roots at 1..7", "fig3.png"));

    // Wronskians
    {
        std::ostringstream s;
        const std::vector<RatPoly> b1 = prop1_basis(), b2 = prop2_basis();
        s << "basis [1, x + x^5, x^2]\n";
        for (int k = 0; k < 3; ++k) s << "  W" << k << " = " << wronskian(b1, k).to_string() << "\n";
        s << "basis [x^5, x^4, x^6, x^7, 1, x^2, x^3 - x^7, x + 3x^9]\n";
        for (int k = 0; k < 8; ++k) s << "  W" << k << " = " << wronskian(b2, k).to_string() << "\n";
        write_file(dir / "wronskians.txt", s.str());
        claim("W2 of [1, x+x^5, x^2] is 2 - 30x^4", wronskian(b1, 2) == RatPoly{2, 0, 0, 0, -30});
        claim("W7 of the second-order basis is -125411328000(1 + 189x^8)",
              wronskian(b2, 7) == RatPoly::parse("-125411328000 - 23702740992000*x^8"));
        claim("[1, x+x^5, x^2] is ECT with accuracy 1 on (0, 1)",
              ect_classify(b1, 0, 1).classification == EctClass::ECT_ACCURACY_1);
    }

    // Direct integration
    {
        const Verification v1 = verify(preset("example1"), 1e-3, 0.01, 1.5, 400, tol);
        write_file(dir / "cycles_example1.json", to_json(v1.search.cycles).dump(2) + "\n");
        bool close = v1.count_ok;
        for (const auto& rec : v1.search.cycles)
            close = close && rec.r_predicted && std::abs(rec.r_fixed - *rec.r_predicted) <= 10 * 1e-3;
        claim("example1, eps = 1e-3: 3 cycles within 10 eps of the predicted radii", close && v1.expected.size() == 3);
    }
    {
        const Verification v2 = verify(preset("example2"), 1e-4, 1.0, 30.0, 400, tol);
        write_file(dir / "cycles_example2.json", to_json(v2.search.cycles).dump(2) + "\n");
        claim("example2, eps = 1e-4: cycles near sqrt(2), sqrt(68), sqrt(738)", v2.radii_ok && v2.expected.size() == 3);
    }

    std::ostringstream s;
    bool all = true;
    for (const auto& [what, pass] : claims) {
        s << (pass ? "PASS  " : "FAIL  ") << what << "\n";
        all = all && pass;
    }
    write_file(dir / "summary.txt", s.str());
    out << s.str();
    if (!all) err << "some claims failed; see " << (dir / "summary.txt").string() << "\n";
    return all ? ok : cross_check_failure;
}

int classify(const Error& e) {
    if (dynamic_cast<const ConditionViolation*>(&e) || dynamic_cast<const OrderingViolation*>(&e) ||
        dynamic_cast<const GrazingDetected*>(&e))
        return precondition_violation;
    if (dynamic_cast<const QuadratureFailure*>(&e) || dynamic_cast<const NoReturn*>(&e) ||
        dynamic_cast<const StepLimitExceeded*>(&e))
        return cross_check_failure;
    return input_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Melnikov analysis of cubic-switched piecewise-linear systems", "pwl"};
    app.require_subcommand(1);
    Options o;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--preset", o.preset, "Built-in coefficient set (example1, example1-literal, example2)");
        sub->add_option("--coeffs", o.coeffs_path, "JSON coefficient file");
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output file (default: stdout)"); };

    CLI::App* polar = app.add_subcommand("polar", "Fourier tables of the polar right-hand side");
    add_input(polar);
    polar->add_option("--order", o.order, "1 or 2");
    polar->add_option("--format", o.format, "text, csv or json");
    add_out(polar);

    CLI::App* mel = app.add_subcommand("melnikov", "Quadrature engine against the closed forms on an r grid");
    add_input(mel);
    mel->add_option("--order", o.order, "1 or 2");
    mel->add_option("--range", o.range, "LO:HI in r");
    mel->add_option("--grid", o.grid, "Number of grid points")->check(CLI::Range(2, 10000000));
    mel->add_option("--format", o.format, "csv or json");
    mel->add_option("--xcheck-tol", o.xcheck_tol, "Maximum allowed |engine - 2 pi closed form|");
    add_out(mel);

    CLI::App* roots = app.add_subcommand("roots", "Exact positive-root count and isolation");
    add_input(roots);
    roots->add_option("--poly", o.poly, "Polynomial text such as '1/20 - x + x^2'");
    add_out(roots);

    CLI::App* wr = app.add_subcommand("wronskian", "Wronskians of a polynomial basis");
    wr->add_option("--basis", o.basis, "prop1, prop2, or polynomials separated by ';'");
    wr->add_option("--format", o.format, "text or json");
    add_out(wr);

    CLI::App* ver = app.add_subcommand("verify", "Locate limit cycles by direct integration");
    add_input(ver);
    ver->add_option("--eps", o.eps, "Perturbation size");
    ver->add_option("--range", o.range, "LO:HI in r");
    ver->add_option("--grid", o.grid, "Number of log-spaced scan points")->check(CLI::Range(2, 10000000));
    add_out(ver);

    CLI::App* rep = app.add_subcommand("reproduce-paper", "Regenerate the figures, tables and checks");
    rep->add_option("--out", o.out, "Output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }

    try {
        const Tolerances tol = read_tolerances();
        if (*polar) return cmd_polar(o, out);
        if (*mel) return cmd_melnikov(o, tol, out, err);
        if (*roots) return cmd_roots(o, out, err);
        if (*wr) return cmd_wronskian(o, out);
        if (*ver) return cmd_verify(o, tol, out, err);
        if (*rep) return cmd_reproduce(o, tol, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return classify(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    return input_error;
}

}  // namespace pwl::cli
