#include "pwl/flow.hpp"

#include "pwl/chebyshev.hpp"
#include "pwl/errors.hpp"
#include "pwl/geometry.hpp"
#include "pwl/melnikov.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

namespace pwl {

const char* to_string(TerminalEvent e) {
    switch (e) {
        case TerminalEvent::section_return: return "section_return";
        case TerminalEvent::switch_crossing: return "switch_crossing";
        case TerminalEvent::step_limit: return "step_limit";
        case TerminalEvent::time_limit: return "time_limit";
    }
    return "?";
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::unstable: return "unstable";
        case Stability::neutral: return "neutral";
    }
    return "?";
}

FlowOptions default_map_options() {
    FlowOptions o;
    o.formulation = Formulation::co_rotating;
    // Long double leaves room below the double-level tolerances; second-order
    // displacements need it (see README, flow precision).
    o.rtol = 1e-16;
    o.atol = 1e-16;
    return o;
}

namespace {

using LD = long double;
using State = std::array<LD, 2>;
constexpr LD two_pi = 2 * std::numbers::pi_v<LD>;

struct AffineLD {
    LD c = 0, x = 0, y = 0;
    LD operator()(LD px, LD py) const { return c + x * px + y * py; }
};

struct Perturbation {
    AffineLD p, q;
};

Perturbation perturbation(const PWLCoefficients& co, Zone z, LD eps) {
    const ZoneField f = zone_field(co, z);
    const LD e2 = eps * eps;
    auto mix = [&](const AffineForm& o1, const AffineForm& o2) {
        return AffineLD{eps * o1.constant + e2 * o2.constant, eps * o1.x + e2 * o2.x, eps * o1.y + e2 * o2.y};
    };
    return {mix(f.p1, f.p2), mix(f.q1, f.q2)};
}

// Dormand-Prince 5(4)
constexpr LD c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5, c5 = 8.0L / 9;
constexpr LD a21 = 1.0L / 5;
constexpr LD a31 = 3.0L / 40, a32 = 9.0L / 40;
constexpr LD a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
constexpr LD a51 = 19372.0L / 6561, a52 = -25360.0L / 2187, a53 = 64448.0L / 6561, a54 = -212.0L / 729;
constexpr LD a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247, a64 = 49.0L / 176,
             a65 = -5103.0L / 18656;
constexpr LD a71 = 35.0L / 384, a73 = 500.0L / 1113, a74 = 125.0L / 192, a75 = -2187.0L / 6784, a76 = 11.0L / 84;
constexpr LD e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920, e5 = -17253.0L / 339200,
             e6 = 22.0L / 525, e7 = -1.0L / 40;
constexpr LD d1 = -12715105075.0L / 11282082432, d3 = 87487479700.0L / 32700410799,
             d4 = -10690763975.0L / 1880347072, d5 = 701980252875.0L / 199316789632,
             d6 = -1453857185.0L / 822651844, d7 = 69997945.0L / 29380423;

struct Step {
    State y0, y1;
    std::array<State, 7> k;
    LD t = 0, h = 0, err = 0;

    State dense(LD theta) const {
        State out;
        for (int i = 0; i < 2; ++i) {
            const LD ydiff = y1[i] - y0[i];
            const LD bspl = h * k[0][i] - ydiff;
            const LD r4 = ydiff - h * k[6][i] - bspl;
            const LD r5 = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] + d6 * k[5][i] + d7 * k[6][i]);
            out[i] = y0[i] + theta * (ydiff + (1 - theta) * (bspl + theta * (r4 + (1 - theta) * r5)));
        }
        return out;
    }
};

struct RunResult {
    std::vector<TrajectorySegment> segments;
    LD t = 0;
    State y{};
    int events = 0;
    TerminalEvent terminal = TerminalEvent::step_limit;
};

class Flow {
public:
    Flow(const PWLCoefficients& c, double eps, std::array<double, 2> z0, const FlowOptions& opt)
        : opt_(opt), plus_(perturbation(c, Zone::plus, eps)), minus_(perturbation(c, Zone::minus, eps)),
          z0_{z0[0], z0[1]} {
        if (opt_.backward && opt_.formulation != Formulation::cartesian)
            throw DomainError("backward integration needs the Cartesian formulation");
        dir_ = opt_.backward ? -1 : 1;
        const LD norm = std::hypot(z0_[0], z0_[1]);
        if (opt_.formulation == Formulation::co_rotating)
            atol_ = std::max<LD>(LDBL_MIN, static_cast<LD>(opt_.atol) * std::abs(static_cast<LD>(eps)) * (1 + norm));
        else
            atol_ = opt_.atol;
    }

    State initial() const {
        if (opt_.formulation == Formulation::co_rotating) return {0, 0};
        return z0_;
    }

    State cartesian(LD t, const State& y) const {
        if (opt_.formulation == Formulation::cartesian) return y;
        const LD c = std::cos(t), s = std::sin(t);
        const LD wx = z0_[0] + y[0], wy = z0_[1] + y[1];
        return {c * wx + s * wy, -s * wx + c * wy};
    }

    // Position in the frame rotating with the unperturbed flow.
    State rotating(LD t, const State& y) const {
        if (opt_.formulation == Formulation::co_rotating) return {z0_[0] + y[0], z0_[1] + y[1]};
        const LD c = std::cos(t), s = std::sin(t);
        return {c * y[0] - s * y[1], s * y[0] + c * y[1]};
    }

    const Perturbation& field(Zone z) const { return z == Zone::plus ? plus_ : minus_; }

    State rhs(LD t, const State& y, Zone zone) const {
        const Perturbation& f = field(zone);
        if (opt_.formulation == Formulation::cartesian)
            return {dir_ * (y[1] + f.p(y[0], y[1])), dir_ * (-y[0] + f.q(y[0], y[1]))};
        const LD c = std::cos(t), s = std::sin(t);
        const LD wx = z0_[0] + y[0], wy = z0_[1] + y[1];
        const LD X = c * wx + s * wy, Y = -s * wx + c * wy;
        const LD px = f.p(X, Y), py = f.q(X, Y);
        return {c * px - s * py, s * px + c * py};
    }

    LD switch_fn(LD t, const State& y) const {
        const State z = cartesian(t, y);
        return z[1] - z[0] * z[0] * z[0];
    }

    // d/dt (y - x^3) along the given piece.
    LD switch_rate(LD t, const State& y, Zone zone) const {
        const State z = cartesian(t, y);
        const Perturbation& f = field(zone);
        const LD xd = z[1] + f.p(z[0], z[1]);
        const LD yd = -z[0] + f.q(z[0], z[1]);
        return dir_ * (yd - 3 * z[0] * z[0] * xd);
    }

    // Zero after one clockwise revolution: t minus the angle drift in the rotating frame, minus 2 pi.
    LD section_fn(LD t, const State& y) const {
        const State w = rotating(t, y);
        const LD cross = z0_[0] * w[1] - z0_[1] * w[0];
        const LD dot = z0_[0] * w[0] + z0_[1] * w[1];
        return t - std::atan2(cross, dot) - two_pi;
    }

    Step step(LD t, const State& y, LD h, Zone zone, const State* k1) const {
        Step s;
        s.y0 = y;
        s.t = t;
        s.h = h;
        auto& k = s.k;
        k[0] = k1 ? *k1 : rhs(t, y, zone);
        auto stage = [&](std::initializer_list<LD> a) {
            State out = y;
            int j = 0;
            for (LD aj : a) {
                for (int i = 0; i < 2; ++i) out[i] += h * aj * k[j][i];
                ++j;
            }
            return out;
        };
        k[1] = rhs(t + c2 * h, stage({a21}), zone);
        k[2] = rhs(t + c3 * h, stage({a31, a32}), zone);
        k[3] = rhs(t + c4 * h, stage({a41, a42, a43}), zone);
        k[4] = rhs(t + c5 * h, stage({a51, a52, a53, a54}), zone);
        k[5] = rhs(t + h, stage({a61, a62, a63, a64, a65}), zone);
        s.y1 = stage({a71, 0, a73, a74, a75, a76});
        k[6] = rhs(t + h, s.y1, zone);
        LD err = 0;
        for (int i = 0; i < 2; ++i) {
            const LD e = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);
            const LD sc = atol_ + opt_.rtol * std::max(std::abs(y[i]), std::abs(s.y1[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        s.err = err;
        return s;
    }

    Zone initial_zone(const State& y) const {
        const LD e = switch_fn(0, y);
        if (e > 0) return Zone::plus;
        if (e < 0) return Zone::minus;
        return switch_rate(0, y, Zone::plus) > 0 ? Zone::plus : Zone::minus;
    }

    RunResult run(int max_events, LD t_end, bool stop_at_section, bool record) const {
        RunResult res;
        LD t = 0;
        State y = initial();
        Zone zone = initial_zone(y);
        LD h = std::min<LD>(1e-3L, opt_.h_max);
        LD err_prev = 1e-4L;
        std::optional<State> k1;
        TrajectorySegment seg;
        seg.piece = zone;
        auto push = [&](LD tt, const State& yy) {
            if (!record) return;
            const State z = cartesian(tt, yy);
            seg.times.push_back(static_cast<double>(dir_ * tt));
            seg.states.push_back({static_cast<double>(z[0]), static_cast<double>(z[1])});
        };
        push(t, y);
        long steps = 0;

        auto leaving = [&](LD e) { return zone == Zone::plus ? e < 0 : e > 0; };

        while (true) {
            if (t >= t_end) {
                res.terminal = TerminalEvent::time_limit;
                break;
            }
            if (++steps > opt_.max_steps) {
                seg.terminal_event = TerminalEvent::step_limit;
                if (record) res.segments.push_back(seg);
                throw StepLimitExceeded("integration exceeded " + std::to_string(opt_.max_steps) + " steps at t = " +
                                        std::to_string(static_cast<double>(t)));
            }
            h = std::min<LD>(h, opt_.h_max);
            if (t + h > t_end) h = t_end - t;
            if (h <= 1e-15L * (1 + std::abs(t)))
                throw StepLimitExceeded("step size underflow at t = " + std::to_string(static_cast<double>(t)));

            Step s = step(t, y, h, zone, k1 ? &*k1 : nullptr);
            if (!(s.err <= 1)) {
                const LD fac = std::isfinite(static_cast<double>(s.err))
                                   ? std::max<LD>(0.2L, 0.9L * std::pow(s.err, -0.2L))
                                   : 0.2L;
                h *= std::min<LD>(fac, 1);
                k1 = s.k[0];
                continue;
            }

            // Events inside the accepted step.
            const LD t1 = t + h;
            const bool crossing = leaving(switch_fn(t1, s.y1));
            const bool section = stop_at_section && section_fn(t1, s.y1) >= 0;
            LD theta_switch = 2, theta_section = 2;
            auto locate = [&](auto crossed) {
                LD lo = 0, hi = 1;
                for (int it = 0; it < 80 && hi - lo > 4 * LDBL_EPSILON; ++it) {
                    const LD mid = 0.5L * (lo + hi);
                    if (crossed(t + mid * h, s.dense(mid)))
                        hi = mid;
                    else
                        lo = mid;
                }
                return hi;
            };
            if (crossing) theta_switch = locate([&](LD tt, const State& yy) { return leaving(switch_fn(tt, yy)); });
            if (section) theta_section = locate([&](LD tt, const State& yy) { return section_fn(tt, yy) >= 0; });

            if (!crossing && !section) {
                t = t1;
                y = s.y1;
                k1 = s.k[6];
                push(t, y);
                const LD err = std::max<LD>(s.err, 1e-10L);
                LD fac = 0.9L * std::pow(err, -0.14L) * std::pow(err_prev, 0.08L);
                fac = std::clamp<LD>(fac, 0.2L, 5.0L);
                err_prev = err;
                h *= fac;
                continue;
            }

            // Land exactly on the earliest event with a fresh step of the reduced size.
            const LD theta = std::min(theta_switch, theta_section);
            const LD tau = theta * h;
            const Step landing = step(t, y, tau, zone, &s.k[0]);
            t += tau;
            y = landing.y1;
            k1.reset();
            push(t, y);

            if (theta_section <= theta_switch) {
                seg.terminal_event = TerminalEvent::section_return;
                res.terminal = TerminalEvent::section_return;
                break;
            }

            const Zone next = zone == Zone::plus ? Zone::minus : Zone::plus;
            const LD rate_old = switch_rate(t, y, zone), rate_new = switch_rate(t, y, next);
            if (std::abs(rate_old) < opt_.grazing_tol || std::abs(rate_new) < opt_.grazing_tol ||
                (rate_old > 0) != (rate_new > 0)) {
                const State z = cartesian(t, y);
                throw GrazingDetected("near-tangent contact with y = x^3 at (" + std::to_string(static_cast<double>(z[0])) +
                                      ", " + std::to_string(static_cast<double>(z[1])) + "), rates " +
                                      std::to_string(static_cast<double>(rate_old)) + " / " +
                                      std::to_string(static_cast<double>(rate_new)));
            }
            ++res.events;
            seg.terminal_event = TerminalEvent::switch_crossing;
            if (record) res.segments.push_back(seg);
            seg = TrajectorySegment{};
            seg.piece = next;
            zone = next;
            push(t, y);
            if (res.events >= max_events) {
                res.terminal = TerminalEvent::switch_crossing;
                seg.terminal_event = TerminalEvent::switch_crossing;
                break;
            }
        }
        if (res.terminal == TerminalEvent::time_limit) seg.terminal_event = TerminalEvent::time_limit;
        if (record && (res.segments.empty() || seg.times.size() > 1 || res.terminal != TerminalEvent::switch_crossing))
            res.segments.push_back(seg);
        res.t = t;
        res.y = y;
        return res;
    }

    const State& origin() const { return z0_; }

private:
    FlowOptions opt_;
    Perturbation plus_, minus_;
    State z0_;
    LD atol_ = 0;
    LD dir_ = 1;
};

}  // namespace

std::vector<TrajectorySegment> integrate_piecewise(const PWLCoefficients& c, double eps, std::array<double, 2> start,
                                                   int max_events, const FlowOptions& opt, double t_end) {
    validate(c);
    if (!std::isfinite(eps)) throw DomainError("eps must be finite");
    if (max_events < 0) throw DomainError("max_events must be nonnegative");
    if (max_events == 0 && !std::isfinite(t_end)) throw DomainError("need max_events > 0 or a finite t_end");
    const Flow flow(c, eps, start, opt);
    return flow.run(max_events == 0 ? std::numeric_limits<int>::max() : max_events, t_end, false, true).segments;
}

PoincareResult poincare_map(const PWLCoefficients& c, double eps, double r0, const FlowOptions& opt,
                            bool keep_trajectory) {
    validate(c);
    if (!(r0 > 0.0) || !std::isfinite(r0)) throw DomainError("poincare_map needs r0 > 0");
    if (!std::isfinite(eps)) throw DomainError("eps must be finite");
    const Flow flow(c, eps, {r0, 0.0}, opt);
    RunResult run;
    try {
        run = flow.run(std::numeric_limits<int>::max(), 3 * two_pi, true, keep_trajectory);
    } catch (const StepLimitExceeded& e) {
        throw NoReturn(std::string("no return to the section: ") + e.what());
    }
    if (run.terminal != TerminalEvent::section_return)
        throw NoReturn("no return to the section within three periods from r0 = " + std::to_string(r0));

    PoincareResult out;
    out.return_time = static_cast<double>(run.t);
    out.switch_events = run.events;
    const State w = flow.rotating(run.t, run.y);
    const LD r1 = std::hypot(w[0], w[1]);
    out.r1 = static_cast<double>(r1);
    const LD r0l = r0;
    if (opt.formulation == Formulation::co_rotating) {
        const LD ux = run.y[0], uy = run.y[1];
        out.displacement = static_cast<double>((2 * r0l * ux + ux * ux + uy * uy) / (r1 + r0l));
    } else {
        out.displacement = static_cast<double>(r1 - r0l);
    }
    if (keep_trajectory) out.segments = std::move(run.segments);
    return out;
}

nlohmann::json to_json(const CycleRecord& r) {
    nlohmann::json j;
    j["eps"] = r.eps;
    j["r_fixed"] = r.r_fixed;
    j["r_predicted"] = r.r_predicted ? nlohmann::json(*r.r_predicted) : nlohmann::json(nullptr);
    j["residual"] = r.residual;
    j["stability"] = to_string(r.stability);
    j["return_time"] = r.return_time;
    return j;
}

CycleRecord cycle_from_json(const nlohmann::json& j) {
    try {
        CycleRecord r;
        r.eps = j.at("eps").get<double>();
        r.r_fixed = j.at("r_fixed").get<double>();
        if (j.contains("r_predicted") && !j.at("r_predicted").is_null()) r.r_predicted = j.at("r_predicted").get<double>();
        r.residual = j.at("residual").get<double>();
        const std::string s = j.at("stability").get<std::string>();
        if (s == "stable")
            r.stability = Stability::stable;
        else if (s == "unstable")
            r.stability = Stability::unstable;
        else if (s == "neutral")
            r.stability = Stability::neutral;
        else
            throw ParseError("unknown stability '" + s + "'");
        r.return_time = j.at("return_time").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed cycle record: ") + e.what());
    }
}

nlohmann::json to_json(const std::vector<CycleRecord>& rs) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rs) j.push_back(to_json(r));
    return j;
}

std::vector<CycleRecord> cycles_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("cycle report must be a JSON array");
    std::vector<CycleRecord> out;
    for (const auto& e : j) out.push_back(cycle_from_json(e));
    return out;
}

std::vector<double> predicted_radii(const PWLCoefficients& c) {
    const RatPoly p = satisfies_vanishing_delta1(c) ? p2_poly(lambda_coeffs(c)) : p1_poly(gamma_coeffs(c));
    std::vector<double> out;
    if (p.is_zero()) return out;
    for (const auto& root : isolate_roots(p, Rational(0), std::nullopt))
        if (root.value > 0) out.push_back(r_of_x(root.value));
    return out;
}

CycleSearch find_cycles(const PWLCoefficients& c, double eps, double r_lo, double r_hi, int grid_n,
                        const FlowOptions& opt) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw DomainError("find_cycles needs 0 < r_lo < r_hi");
    if (grid_n < 2) throw DomainError("find_cycles needs at least two grid nodes");
    CycleSearch out;
    const double ratio = std::log(r_hi / r_lo);
    for (int i = 0; i < grid_n; ++i) {
        const double r = i == grid_n - 1 ? r_hi : r_lo * std::exp(ratio * i / (grid_n - 1));
        out.grid.push_back(r);
        out.displacement.push_back(poincare_map(c, eps, r, opt).displacement);
    }
    out.degenerate = std::all_of(out.displacement.begin(), out.displacement.end(), [](double d) { return d == 0.0; });
    if (out.degenerate) return out;

    const std::vector<double> predicted = predicted_radii(c);
    auto attach = [&](double r, double d, double return_time, int left_sign, int right_sign) {
        CycleRecord rec;
        rec.eps = eps;
        rec.r_fixed = r;
        rec.residual = std::abs(d);
        rec.return_time = return_time;
        if (left_sign > 0 && right_sign < 0)
            rec.stability = Stability::stable;
        else if (left_sign < 0 && right_sign > 0)
            rec.stability = Stability::unstable;
        if (!predicted.empty())
            rec.r_predicted = *std::min_element(predicted.begin(), predicted.end(), [r](double a, double b) {
                return std::abs(a - r) < std::abs(b - r);
            });
        out.cycles.push_back(rec);
    };
    auto sign = [](double v) { return (v > 0) - (v < 0); };

    const auto& g = out.grid;
    const auto& d = out.displacement;
    for (int i = 0; i < grid_n; ++i) {
        if (d[i] == 0.0) {
            const int left = i > 0 ? sign(d[i - 1]) : 0;
            const int right = i + 1 < grid_n ? sign(d[i + 1]) : 0;
            attach(g[i], 0.0, poincare_map(c, eps, g[i], opt).return_time, left, right);
            continue;
        }
        if (i + 1 >= grid_n || d[i + 1] == 0.0 || sign(d[i]) == sign(d[i + 1])) continue;
        double lo = g[i], hi = g[i + 1], dlo = d[i];
        double mid = 0.5 * (lo + hi);
        PoincareResult pm = poincare_map(c, eps, mid, opt);
        for (int it = 0; it < 200; ++it) {
            if (pm.displacement == 0.0) break;
            if (sign(pm.displacement) == sign(dlo)) {
                lo = mid;
                dlo = pm.displacement;
            } else {
                hi = mid;
            }
            const double next = 0.5 * (lo + hi);
            const bool narrow = hi - lo <= 1e-12 * next;
            mid = next;
            pm = poincare_map(c, eps, mid, opt);
            if (narrow && std::abs(pm.displacement) <= 1e-10 * (1 + mid)) break;
        }
        attach(mid, pm.displacement, pm.return_time, sign(d[i]), sign(d[i + 1]));
    }
    return out;
}

ConvergenceTable convergence_study(const PWLCoefficients& c, const std::vector<double>& eps_list, int root_index,
                                   const FlowOptions& opt) {
    if (eps_list.empty()) throw DomainError("empty eps list");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0)) throw DomainError("eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw DomainError("eps values must be decreasing");
    }
    const std::vector<double> predicted = predicted_radii(c);
    if (root_index < 1 || root_index > static_cast<int>(predicted.size()))
        throw DomainError("root index " + std::to_string(root_index) + " out of range (" +
                          std::to_string(predicted.size()) + " predicted cycles)");
    ConvergenceTable table;
    table.r_predicted = predicted[root_index - 1];
    const double rp = table.r_predicted;
    for (double eps : eps_list) {
        const CycleSearch s = find_cycles(c, eps, rp * 0.75, rp * 1.25, 41, opt);
        if (s.cycles.empty())
            throw NoReturn("no cycle found near r = " + std::to_string(rp) + " at eps = " + std::to_string(eps));
        const CycleRecord& best = *std::min_element(s.cycles.begin(), s.cycles.end(), [rp](const auto& a, const auto& b) {
            return std::abs(a.r_fixed - rp) < std::abs(b.r_fixed - rp);
        });
        table.rows.push_back({eps, best.r_fixed, std::abs(best.r_fixed - rp)});
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : table.rows) {
        if (!(row.error > 0)) continue;
        const double lx = std::log(row.eps), ly = std::log(row.error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n >= 2) table.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return table;
}

}  // namespace pwl
