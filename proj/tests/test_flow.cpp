#include "pwl/errors.hpp"
#include "pwl/flow.hpp"
#include "pwl/geometry.hpp"
#include "pwl/melnikov.hpp"
#include "pwl/presets.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace pwl;

namespace {

constexpr double pi = std::numbers::pi;
using LD = long double;

FlowOptions cartesian() { return FlowOptions{}; }

double angle_of(const std::array<double, 2>& p) {
    double a = std::atan2(p[1], p[0]);
    return a < 0 ? a + 2 * pi : a;
}

double angle_distance(double a, double b) {
    const double d = std::fmod(std::abs(a - b), 2 * pi);
    return std::min(d, 2 * pi - d);
}

// Exact flow of one affine zone: z' = A z + b.
struct AffineZone {
    LD a[2][2], b[2];
    LD inv_b[2];  // A^{-1} b
    LD s, w;      // trace / 2, rotation frequency
    LD n[2][2];   // A - s I

    AffineZone(const PWLCoefficients& c, Zone zone, LD eps) {
        const ZoneField f = zone_field(c, zone);
        const LD e2 = eps * eps;
        a[0][0] = eps * f.p1.x + e2 * f.p2.x;
        a[0][1] = 1 + eps * f.p1.y + e2 * f.p2.y;
        a[1][0] = -1 + eps * f.q1.x + e2 * f.q2.x;
        a[1][1] = eps * f.q1.y + e2 * f.q2.y;
        b[0] = eps * f.p1.constant + e2 * f.p2.constant;
        b[1] = eps * f.q1.constant + e2 * f.q2.constant;
        const LD det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        inv_b[0] = (a[1][1] * b[0] - a[0][1] * b[1]) / det;
        inv_b[1] = (-a[1][0] * b[0] + a[0][0] * b[1]) / det;
        s = (a[0][0] + a[1][1]) / 2;
        n[0][0] = a[0][0] - s, n[0][1] = a[0][1], n[1][0] = a[1][0], n[1][1] = a[1][1] - s;
        w = std::sqrt(-(n[0][0] * n[0][0] + n[0][1] * n[1][0]));
    }

    std::array<LD, 2> at(const std::array<LD, 2>& z0, LD t) const {
        const LD u0 = z0[0] + inv_b[0], u1 = z0[1] + inv_b[1];
        const LD g = std::exp(s * t), cs = std::cos(w * t), sn = std::sin(w * t) / w;
        const LD e00 = g * (cs + sn * n[0][0]), e01 = g * sn * n[0][1];
        const LD e10 = g * sn * n[1][0], e11 = g * (cs + sn * n[1][1]);
        return {e00 * u0 + e01 * u1 - inv_b[0], e10 * u0 + e11 * u1 - inv_b[1]};
    }
};

struct OracleReturn {
    LD r1, time;
};

// Follows the exact piecewise-affine flow from (r0, 0) around one revolution.
OracleReturn oracle_return(const PWLCoefficients& c, double eps, double r0) {
    const AffineZone plus(c, Zone::plus, eps), minus(c, Zone::minus, eps);
    std::array<LD, 2> z{r0, 0};
    LD elapsed = 0;
    int switches = 0;
    const AffineZone* zone = &minus;
    auto sw = [](const std::array<LD, 2>& p) { return p[1] - p[0] * p[0] * p[0]; };
    const LD dt = 1e-3L;
    while (true) {
        const int kind_needed = switches >= 2 ? 1 : 0;  // 0: switch, 1: section or switch
        LD t0 = 0, t1 = dt;
        std::array<LD, 2> prev = z;
        int kind = -1;
        for (int k = 0; k < 100000 && kind < 0; ++k) {
            const auto next = zone->at(z, t1);
            if (k > 0 || std::abs(sw(prev)) > 1e-15L)
                if ((sw(prev) > 0) != (sw(next) > 0)) kind = 0;
            if (kind < 0 && kind_needed == 1 && prev[1] > 0 && next[1] <= 0 && next[0] > 0) kind = 1;
            if (kind < 0) {
                prev = next;
                t0 = t1;
                t1 += dt;
            }
        }
        REQUIRE(kind >= 0);
        auto f = [&](LD t) {
            const auto p = zone->at(z, t);
            return kind == 0 ? sw(p) : p[1];
        };
        const bool lo_positive = f(t0) > 0;
        for (int it = 0; it < 120; ++it) {
            const LD m = (t0 + t1) / 2;
            if ((f(m) > 0) == lo_positive) t0 = m; else t1 = m;
        }
        z = zone->at(z, t1);
        elapsed += t1;
        if (kind == 1) return {z[0], elapsed};
        ++switches;
        zone = zone == &minus ? &plus : &minus;
    }
}

PWLCoefficients random_coefficients(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PWLCoefficients c;
    for (const auto& f : coefficient_fields<double>()) c.*(f.member) = u(rng);
    return c;
}

}  // namespace

TEST_CASE("unperturbed flow: circle, two crossings, crossing points") {
    const auto segs = integrate_piecewise(PWLCoefficients{}, 0.0, {1.0, 0.0}, 100, cartesian(), 2 * pi);
    REQUIRE(segs.size() == 3);
    CHECK(segs[0].piece == Zone::minus);
    CHECK(segs[1].piece == Zone::plus);
    CHECK(segs[2].piece == Zone::minus);
    CHECK(segs[0].terminal_event == TerminalEvent::switch_crossing);
    CHECK(segs[1].terminal_event == TerminalEvent::switch_crossing);
    CHECK(segs[2].terminal_event == TerminalEvent::time_limit);
    const auto end = segs.back().states.back();
    CHECK(std::abs(end[0] - 1.0) <= 1e-10);
    CHECK(std::abs(end[1]) <= 1e-10);
    CHECK(segs.back().times.back() == doctest::Approx(2 * pi).epsilon(1e-15));

    // clockwise: the third-quadrant crossing comes first
    const SwitchingAngle a = solve_theta1(1.0);
    const auto first = segs[0].states.back();
    const auto second = segs[1].states.back();
    CHECK(std::abs(first[0] + std::cos(a.theta1)) <= 1e-9);
    CHECK(std::abs(first[1] + std::sin(a.theta1)) <= 1e-9);
    CHECK(std::abs(second[0] - std::cos(a.theta1)) <= 1e-9);
    CHECK(std::abs(second[1] - std::sin(a.theta1)) <= 1e-9);
    CHECK(segs[0].times.back() == doctest::Approx(pi - a.theta1).epsilon(1e-10));
}

TEST_CASE("unperturbed flow: radius conserved, events on the curve at the predicted angles") {
    for (double r0 : {0.5, 1.0, 5.0, 50.0}) {
        const auto segs = integrate_piecewise(PWLCoefficients{}, 0.0, {r0, 0.0}, 100, cartesian(), 2 * pi);
        const SwitchingAngle a = solve_theta1(r0);
        int events = 0;
        double last_t = -1.0;
        for (const auto& seg : segs) {
            for (std::size_t i = 0; i < seg.states.size(); ++i) {
                CHECK(std::abs(std::hypot(seg.states[i][0], seg.states[i][1]) - r0) <= 1e-9);
                if (i > 0) CHECK(seg.times[i] > seg.times[i - 1]);
            }
            CHECK(seg.times.front() >= last_t);
            last_t = seg.times.back();
            if (seg.terminal_event != TerminalEvent::switch_crossing) continue;
            ++events;
            const auto p = seg.states.back();
            CHECK(std::abs(p[1] - p[0] * p[0] * p[0]) <= 1e-12 * std::max(1.0, r0 * r0 * r0));
            const double ang = angle_of(p);
            CHECK(std::min(angle_distance(ang, a.theta1), angle_distance(ang, a.theta2)) <= 1e-9);
        }
        CHECK(events == 2);
    }
}

TEST_CASE("event residual and piece correctness with perturbation") {
    for (const char* name : {"example1", "example2"}) {
        const PWLCoefficients c = preset(name);
        const auto segs = integrate_piecewise(c, 1e-2, {0.8, 0.0}, 6, cartesian());
        REQUIRE(segs.size() == 6);
        for (std::size_t k = 0; k < segs.size(); ++k) {
            const auto& seg = segs[k];
            CHECK(seg.piece == (k % 2 == 0 ? Zone::minus : Zone::plus));
            for (const auto& p : seg.states) {
                const double e = p[1] - p[0] * p[0] * p[0];
                if (seg.piece == Zone::plus) CHECK(e >= -1e-9);
                else CHECK(e <= 1e-9);
            }
            if (seg.terminal_event == TerminalEvent::switch_crossing) {
                const auto p = seg.states.back();
                CHECK(std::abs(p[1] - p[0] * p[0] * p[0]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("piece order against the switching angles") {
    const double r0 = 1.3;
    const auto segs = integrate_piecewise(PWLCoefficients{}, 0.0, {r0, 0.0}, 100, cartesian(), 2 * pi);
    const SwitchingAngle a = solve_theta1(r0);
    REQUIRE(segs.size() == 3);
    for (const auto& p : segs[0].states) {
        const double t = angle_of(p);
        CHECK((t == 0.0 || t >= a.theta2 - 1e-9));
    }
    for (const auto& p : segs[1].states) {
        const double t = angle_of(p);
        CHECK(t >= a.theta1 - 1e-9);
        CHECK(t <= a.theta2 + 1e-9);
    }
    for (const auto& p : segs[2].states) CHECK((angle_of(p) <= a.theta1 + 1e-9 || angle_of(p) > 2 * pi - 1e-9));
}

TEST_CASE("reversal consistency") {
    for (const char* name : {"example1", "example2"}) {
        const PWLCoefficients c = preset(name);
        const std::array<double, 2> start{0.8, 0.0};
        const auto fwd = integrate_piecewise(c, 1e-2, start, 100, cartesian(), 5.0);
        const auto end = fwd.back().states.back();
        FlowOptions back = cartesian();
        back.backward = true;
        const auto bwd = integrate_piecewise(c, 1e-2, end, 100, back, 5.0);
        const auto home = bwd.back().states.back();
        CHECK(std::abs(home[0] - start[0]) <= 1e-8);
        CHECK(std::abs(home[1] - start[1]) <= 1e-8);
        CHECK(bwd.back().times.back() == doctest::Approx(-5.0));
        CHECK(bwd.size() == fwd.size());
    }
    FlowOptions bad = default_map_options();
    bad.backward = true;
    CHECK_THROWS_AS(integrate_piecewise(PWLCoefficients{}, 0.0, {1.0, 0.0}, 2, bad), DomainError);
}

TEST_CASE("poincare_map at eps = 0") {
    for (double r0 : {0.1, 1.0, 10.0}) {
        for (const FlowOptions& opt : {default_map_options(), cartesian()}) {
            const PoincareResult p = poincare_map(PWLCoefficients{}, 0.0, r0, opt);
            CHECK(std::abs(p.r1 - r0) <= 1e-10);
            CHECK(std::abs(p.return_time - 2 * pi) <= 1e-9);
            CHECK(p.switch_events == 2);
        }
    }
    CHECK_THROWS_AS(poincare_map(PWLCoefficients{}, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(poincare_map(PWLCoefficients{}, 0.0, -1.0), DomainError);
}

TEST_CASE("poincare_map agrees with the exact piecewise-affine flow") {
    struct Case {
        PWLCoefficients c;
        double eps, r0;
    };
    std::vector<Case> cases;
    for (double r0 : {0.3, 0.8, 1.2}) cases.push_back({preset("example1"), 1e-2, r0});
    for (double r0 : {1.5, 4.0}) cases.push_back({preset("example2"), 1e-3, r0});
    std::mt19937_64 rng(41);
    for (int k = 0; k < 3; ++k) cases.push_back({random_coefficients(rng), 1e-2, 0.5 + k});
    for (const auto& cs : cases) {
        const OracleReturn want = oracle_return(cs.c, cs.eps, cs.r0);
        const PoincareResult got = poincare_map(cs.c, cs.eps, cs.r0);
        CHECK(std::abs(got.r1 - static_cast<double>(want.r1)) <= 1e-12 * (1 + cs.r0));
        CHECK(std::abs(got.displacement - static_cast<double>(want.r1 - cs.r0)) <= 1e-12 * (1 + cs.r0));
        CHECK(std::abs(got.return_time - static_cast<double>(want.time)) <= 1e-10);
        const PoincareResult cart = poincare_map(cs.c, cs.eps, cs.r0, cartesian());
        CHECK(std::abs(cart.r1 - static_cast<double>(want.r1)) <= 1e-10 * (1 + cs.r0));
    }
}

TEST_CASE("displacement follows the first-order Melnikov function") {
    const PWLCoefficients c = preset("example1");
    const GammaCoeffs<double> g = gamma_coeffs(c);
    const double eps = 1e-3;
    for (double r0 : {0.02, 0.2, 1.0, 1.4}) {
        const double d = poincare_map(c, eps, r0).displacement;
        const double first = -eps * 2 * pi * delta1_closed(g, r0);
        CHECK((d > 0) == (first > 0));
        CHECK(std::abs(d - first) <= 0.05 * std::abs(first));
    }
    // spiralling away from the innermost predicted cycle, monotonically
    const double r1 = predicted_radii(c).front();
    double r = 0.9 * r1;
    const double sign = -delta1_closed(g, r) > 0 ? 1.0 : -1.0;
    for (int k = 0; k < 4; ++k) {
        const PoincareResult p = poincare_map(c, eps, r);
        CHECK(p.r1 != r);
        CHECK(p.displacement * sign > 0);
        r = p.r1;
    }
}

TEST_CASE("displacement follows the second-order Melnikov function") {
    // d = -eps^2 Delta_2 + O(eps^3): the relative gap must shrink linearly in eps
    const PWLCoefficients c = preset("example2");
    const Delta2Coeffs d2 = delta2_coeffs(c);
    for (double x : {0.5, 1.5, 2.5}) {
        const double r0 = r_of_x(x);
        const double second = -2 * pi * delta2_closed(d2, r0);
        auto gap = [&](double eps) {
            const double d = poincare_map(c, eps, r0).displacement / (eps * eps);
            CHECK((d > 0) == (second > 0));
            return std::abs(d - second) / std::abs(second);
        };
        const double coarse = gap(1e-4), fine = gap(1e-5);
        INFO("x=" << x << " gap(1e-4)=" << coarse << " gap(1e-5)=" << fine);
        CHECK(coarse <= 0.3);
        CHECK(fine <= 0.03);
        CHECK(fine <= 0.15 * coarse);
    }
}

TEST_CASE("error paths: grazing, step limit, no return") {
    FlowOptions graze = cartesian();
    graze.grazing_tol = 1e3;
    CHECK_THROWS_AS(integrate_piecewise(preset("example1"), 1e-3, {1.0, 0.0}, 4, graze), GrazingDetected);
    CHECK_THROWS_AS(poincare_map(preset("example1"), 1e-3, 1.0, graze), GrazingDetected);

    FlowOptions tiny = cartesian();
    tiny.max_steps = 5;
    CHECK_THROWS_AS(integrate_piecewise(preset("example1"), 1e-3, {1.0, 0.0}, 4, tiny), StepLimitExceeded);
    FlowOptions tiny_map = default_map_options();
    tiny_map.max_steps = 5;
    CHECK_THROWS_AS(poincare_map(preset("example1"), 1e-3, 1.0, tiny_map), NoReturn);
}

TEST_CASE("find_cycles: degenerate and first-order examples") {
    const CycleSearch none = find_cycles(PWLCoefficients{}, 0.0, 0.1, 2.0, 20);
    CHECK(none.cycles.empty());
    CHECK(none.degenerate);
    CHECK(none.grid.size() == 20);
    CHECK_THROWS_AS(find_cycles(PWLCoefficients{}, 0.0, 2.0, 1.0, 20), DomainError);

    const PWLCoefficients c = preset("example1");
    const double eps = 1e-3;
    const CycleSearch s = find_cycles(c, eps, 0.01, 1.5, 400);
    CHECK(!s.degenerate);
    REQUIRE(s.cycles.size() == 3);
    const auto pred = predicted_radii(c);
    REQUIRE(pred.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const CycleRecord& rec = s.cycles[k];
        REQUIRE(rec.r_predicted.has_value());
        CHECK(*rec.r_predicted == pred[k]);
        CHECK(std::abs(rec.r_fixed - *rec.r_predicted) <= 10 * eps);
        CHECK(rec.residual <= 1e-10 * (1 + rec.r_fixed));
        CHECK(std::abs(rec.return_time - 2 * pi) <= 0.1);
        CHECK(rec.eps == eps);
        CHECK(rec.stability != Stability::neutral);
        if (k > 0) CHECK(rec.stability != s.cycles[k - 1].stability);
    }
}

TEST_CASE("find_cycles: second-order example near the first two roots") {
    const PWLCoefficients c = preset("example2");
    const CycleSearch s = find_cycles(c, 1e-4, 1.0, 10.0, 100);
    REQUIRE(s.cycles.size() == 2);
    CHECK(std::abs(s.cycles[0].r_fixed - std::sqrt(2.0)) <= 0.05 * std::sqrt(2.0));
    CHECK(std::abs(s.cycles[1].r_fixed - std::sqrt(68.0)) <= 0.05 * std::sqrt(68.0));
    for (const auto& rec : s.cycles) CHECK(rec.residual <= 1e-10 * (1 + rec.r_fixed));
}

TEST_CASE("predicted_radii") {
    const auto one = predicted_radii(preset("example1"));
    REQUIRE(one.size() == 3);
    const GammaCoeffs<double> g = gamma_coeffs(preset("example1"));
    for (double r : one) CHECK(std::abs(delta1_closed(g, r)) <= 1e-10);
    const auto two = predicted_radii(preset("example2"));
    REQUIRE(two.size() == 7);
    for (int k = 0; k < 7; ++k) CHECK(two[k] == doctest::Approx(r_of_x(k + 1)).epsilon(1e-9));
    CHECK(predicted_radii(PWLCoefficients{}).empty());
}

TEST_CASE("convergence_study: first-order cycle converges linearly") {
    const ConvergenceTable t = convergence_study(preset("example1"), {1e-2, 3e-3, 1e-3, 3e-4}, 3);
    REQUIRE(t.rows.size() == 4);
    for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(t.rows[k].error < t.rows[k - 1].error);
    CHECK(t.slope >= 0.8);
    CHECK(t.slope <= 1.2);
    CHECK(t.r_predicted == doctest::Approx(predicted_radii(preset("example1"))[2]));
    CHECK_THROWS_AS(convergence_study(preset("example1"), {1e-3, 1e-2}, 1), DomainError);
    CHECK_THROWS_AS(convergence_study(preset("example1"), {1e-3}, 4), DomainError);
}

TEST_CASE("CycleRecord JSON round trip") {
    CycleRecord a{1e-3, 0.4854250001, 0.4833, 3e-14, Stability::unstable, 6.2831};
    CycleRecord b{1e-4, 8.0119, std::nullopt, 0.0, Stability::neutral, 6.28};
    CHECK(cycle_from_json(to_json(a)) == a);
    CHECK(cycle_from_json(to_json(b)) == b);
    const std::vector<CycleRecord> v{a, b};
    CHECK(cycles_from_json(to_json(v)) == v);
    CHECK(cycles_from_json(nlohmann::json::parse(to_json(v).dump())) == v);
    CHECK(to_json(a).at("stability") == "unstable");
    CHECK_THROWS_AS(cycle_from_json(nlohmann::json::parse(R"({"eps": 1})")), ParseError);
}
