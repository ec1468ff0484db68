#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "heatlab/errors.hpp"
#include "heatlab/harness.hpp"
#include "heatlab/heat.hpp"
#include "heatlab/obstruction.hpp"
#include "heatlab/random.hpp"
#include "heatlab/sine_transform.hpp"
#include "heatlab/synthesis.hpp"

namespace heatlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kDumpCap = 512;
constexpr double kPulseFormulaTol = 1e-9;
constexpr double kLiftIdentityTol = 1e-10;
constexpr double kResimTol = 1e-3;
constexpr double kAdjointResidualTol = 1e-8;

std::string indexed(const std::string& base, std::size_t j) { return base + "_" + std::to_string(j + 1); }

std::vector<std::size_t> spread(std::size_t n, std::size_t cap) {
    std::vector<std::size_t> idx;
    if (n == 0) return idx;
    const std::size_t k = std::min(n, cap);
    for (std::size_t j = 0; j < k; ++j)
        idx.push_back(k == 1 ? 0 : static_cast<std::size_t>(std::llround(static_cast<double>(j) * (n - 1) / (k - 1))));
    return idx;
}

void add_trajectory(RunRecord& rec, const Trajectory& tr, bool dump) {
    for (std::size_t s = 0; s < tr.times.size(); ++s)
        rec.norms.push_back({tr.times[s], tr.diag.l2_norms[s], tr.diag.interior_min[s]});
    if (!dump || tr.states.empty()) return;
    FieldDump f;
    const std::size_t n = tr.states.front().size();
    const auto xi = spread(n, kDumpCap);
    for (std::size_t i : xi) f.x.push_back(tr.states.front().x(i));
    for (std::size_t s : spread(tr.states.size(), kDumpCap)) {
        f.t.push_back(tr.times[s]);
        std::vector<double> row;
        for (std::size_t i : xi) row.push_back(tr.states[s][i]);
        f.y.push_back(std::move(row));
    }
    rec.fields = std::move(f);
}

void add_mp(RunRecord& rec, const Trajectory& tr, const MpContext& ctx) {
    const MpReport r = maximum_principle_report(tr, ctx);
    rec.scalar("mp_min", r.min_value);
    rec.scalar("mp_max", r.max_value);
    rec.scalar("mp_K", r.K);
    if (r.i_applicable) rec.verdict("mp_i_nonnegative", r.i_pass);
    if (r.ii_applicable) rec.verdict("mp_ii_bounded", r.ii_pass);
    if (r.iii_applicable) {
        rec.scalar("mp_interior_min", r.interior_min);
        rec.verdict("mp_iii_positive", r.iii_pass);
    }
}

MpContext context_for(const GridFunction& y0) {
    MpContext c;
    c.y0_nonneg = y0.min() >= 0.0;
    c.y0_nonzero = y0.max() > 0.0;
    c.initial_max = y0.max();
    return c;
}

// Exact solution of the semi-discrete system y' = D2 y + c y, so a CN run
// compared against it shows the time error alone.
GridFunction semi_discrete_exact(const GridFunction& y0, double c, double T) {
    const std::size_t n = y0.size();
    const std::size_t N = n - 1;
    const double h = y0.spacing();
    std::vector<double> in(y0.values().begin() + 1, y0.values().end() - 1), coef(N - 1), out(N - 1);
    dst1(in.data(), coef.data(), N - 1);
    for (std::size_t k = 1; k < N; ++k) {
        const double s = std::sin(static_cast<double>(k) * kPi * h / 2.0);
        const double lam = 4.0 / (h * h) * s * s;
        coef[k - 1] *= std::exp((c - lam) * T) / (2.0 * static_cast<double>(N));
    }
    dst1(coef.data(), out.data(), N - 1);
    std::vector<double> v(n, 0.0);
    std::copy(out.begin(), out.end(), v.begin() + 1);
    return GridFunction(std::move(v));
}

void run_simulate(const ScenarioConfig& cfg, RunRecord& rec) {
    const GridFunction y0 = make_shape(cfg.y0, cfg.n_points);
    MpContext ctx = context_for(y0);
    ctx.v_nonpos = cfg.reaction <= 0.0;
    const SineSeries s0 = project_to_sine(y0, cfg.k_max);
    if (cfg.solver == "spectral") {
        if (cfg.reaction != 0.0) throw ConfigError("heat.reaction", "the spectral solver has no reaction term; use cn");
        SpectralOptions o;
        o.n_eval = cfg.n_points;
        const Trajectory tr = evolve_additive(s0, {}, cfg.T, o);
        rec.scalar("final_l2", norm_l2(tr.final));
        rec.scalar("final_l2_series", norm_l2(*tr.final_series));
        rec.scalar("measured_error", 0.0);
        add_trajectory(rec, tr, true);
        add_mp(rec, tr, ctx);
        return;
    }
    std::vector<ReactionWindow> w;
    if (cfg.reaction != 0.0) w.push_back(ReactionWindow{0.0, cfg.T, cfg.reaction, Interval(0.0, 1.0)});
    const Trajectory tr = evolve_multiplicative(y0, w, cfg.T, cfg.dt);
    const GridFunction spectral =
        std::exp(cfg.reaction * cfg.T) * evaluate_series(evolve_free(s0, cfg.T), cfg.n_points);
    const double spectral_gap = distance_l2(tr.final, spectral);
    rec.scalar("final_l2", norm_l2(tr.final));
    rec.scalar("spectral_distance", spectral_gap);
    rec.scalar("time_error", distance_l2(tr.final, semi_discrete_exact(y0, cfg.reaction, cfg.T)));
    rec.scalar("measured_error", spectral_gap);
    add_trajectory(rec, tr, true);
    add_mp(rec, tr, ctx);
}

void run_check_pulse(const ScenarioConfig& cfg, RunRecord& rec) {
    std::vector<SineSeries> targets;
    if (cfg.target.shape != "zero") {
        targets.push_back(project_to_sine(make_shape(cfg.target, cfg.n_points), cfg.k_max));
    } else {
        for (int s = 0; s < cfg.samples; ++s) {
            Rng rng = Rng(cfg.seed).split(static_cast<std::uint64_t>(s));
            std::vector<double> a(32);
            for (std::size_t k = 0; k < a.size(); ++k) a[k] = rng.uniform(-1.0, 1.0) / static_cast<double>((k + 1) * (k + 1));
            targets.emplace_back(std::move(a));
        }
    }
    double worst_resid = 0.0, worst_pred = 0.0, worst_meas = 0.0;
    for (const PulseVariant variant : {PulseVariant::plain, PulseVariant::zero_tail}) {
        for (const auto& target : targets) {
            const double delta = cfg.delta > 0.0 ? cfg.delta : choose_delta(target, cfg.epsilon, variant, cfg.T / 4.0);
            const PulseControl pc = build_pulse_control(target, Interval(0.0, 1.0), cfg.T, delta, variant);
            const SineSeries yT = evolve_additive_final(SineSeries::zeros(target.k_max()), {pc.window()}, cfg.T);
            const double measured = norm_h01(yT - target);
            const double predicted = predict_pulse_error(target, delta, variant);
            worst_resid = std::max(worst_resid, std::abs(measured - predicted));
            worst_pred = std::max(worst_pred, predicted);
            worst_meas = std::max(worst_meas, measured);
        }
    }
    rec.scalar("targets", static_cast<double>(targets.size()));
    rec.scalar("formula_residual", worst_resid);
    rec.scalar("predicted_error", worst_pred);
    rec.scalar("measured_error", worst_meas);
    rec.verdict("pulse_formula_match", worst_resid <= kPulseFormulaTol);
    if (cfg.delta == 0.0) rec.verdict("error_within_epsilon", worst_meas <= cfg.epsilon);
}

// Checks u = 0 at grid points outside omega(t) for times spread over each window.
bool controls_respect_schedule(const MobilePlan& plan) {
    for (std::size_t j = 0; j < plan.controls.size(); ++j) {
        if (!plan.active[j]) continue;
        const SourceWindow w = plan.controls[j].window();
        const GridFunction g = evaluate_series(std::get<SineSeries>(w.profile), plan.n_points);
        double scale = 0.0;
        for (double v : g.values()) scale = std::max(scale, std::abs(v));
        for (int s = 0; s < 8; ++s) {
            const double t = w.t_start + (w.t_end - w.t_start) * (s + 0.5) / 8.0;
            const Interval om = plan.schedule.support_at(t);
            for (std::size_t i = 0; i < g.size(); ++i)
                if (!om.contains(g.x(i)) && std::abs(g[i]) > 1e-12 * scale) return false;
        }
    }
    return true;
}

bool windows_disjoint(const std::vector<SourceWindow>& ws) {
    for (std::size_t i = 1; i < ws.size(); ++i)
        if (ws[i].t_start < ws[i - 1].t_end) return false;
    return true;
}

void add_plan_scalars(RunRecord& rec, const MobilePlan& plan) {
    rec.scalar("pieces", plan.decomposition.piece_count);
    for (std::size_t j = 0; j < plan.deltas.size(); ++j) {
        rec.scalar(indexed("delta", j), plan.deltas[j]);
        rec.scalar(indexed("mollify_error", j), plan.mollify_errors[j]);
        rec.scalar(indexed("steering_error", j), plan.steering_errors[j]);
    }
    rec.scalar("predicted_error", plan.predicted_error);
}

void run_synthesize_additive(const ScenarioConfig& cfg, RunRecord& rec) {
    const GridFunction y_d = make_shape(cfg.target, cfg.n_points);
    const GridFunction y0 = make_shape(cfg.y0, cfg.n_points);
    const MobilePlan plan = synthesize_mobile_additive(y_d, cfg.length_l, cfg.T, cfg.epsilon);
    SpectralOptions o;
    o.n_eval = cfg.n_points;
    const auto windows = plan.source_windows();
    const Trajectory tr = evolve_additive(project_to_sine(y0, plan.k_max), windows, cfg.T, o);
    const double err = distance_l2(tr.final, y_d);
    add_plan_scalars(rec, plan);
    rec.scalar("measured_error", err);
    rec.verdict("error_within_epsilon", err <= cfg.epsilon);
    rec.verdict("windows_disjoint", windows_disjoint(windows));
    rec.verdict("control_within_support", controls_respect_schedule(plan));
    add_trajectory(rec, tr, true);
    MpContext ctx = context_for(y0);
    ctx.u_zero = windows.empty();
    add_mp(rec, tr, ctx);
}

void add_damping(RunRecord& rec, const DampingResult& d, double epsilon, double energy_tol) {
    const auto& c = d.certificate;
    rec.scalar("damping_final_norm", c.final_norm);
    rec.scalar("window_threshold", c.window_threshold);
    rec.scalar("T_M", d.T_M);
    bool win = true, cum = true, energy = true;
    for (std::size_t j = 0; j < d.m.size(); ++j) {
        rec.scalar(indexed("m", j), d.m[j]);
        rec.scalar(indexed("T", j), d.T_j[j]);
        rec.scalar(indexed("window_norm_sq", j), c.window_norms[j]);
        rec.scalar(indexed("cumulative_norm_sq", j), c.cumulative_norms[j]);
        win = win && c.window_ok(j);
        cum = cum && c.cumulative_ok(j);
        if (c.shortcut) continue;
        rec.scalar(indexed("energy", j), c.energy_integrals[j]);
        rec.scalar(indexed("energy_bound", j), c.energy_bounds[j]);
        rec.scalar(indexed("C1", j), c.C1[j]);
        rec.scalar(indexed("C2", j), c.C2[j]);
        rec.scalar(indexed("gap_cap", j), c.gap_caps[j]);
        rec.scalar(indexed("within_cap", j), c.within_cap[j] ? 1.0 : 0.0);
        energy = energy && c.energy_ok(j, energy_tol);
    }
    rec.verdict("damping_final_norm", c.final_ok(epsilon));
    rec.verdict("damping_window_inequality", win);
    rec.verdict("damping_cumulative_inequality", cum);
    rec.verdict("damping_energy_inequality", energy);
}

DampingOptions damping_options(const ScenarioConfig& cfg) {
    DampingOptions o;
    o.m_grid = cfg.m_grid;
    o.dt = cfg.dt;
    return o;
}

void run_damping(const ScenarioConfig& cfg, RunRecord& rec) {
    const GridFunction y0 = make_shape(cfg.y0, cfg.n_points);
    const DampingOptions o = damping_options(cfg);
    const DampingResult d = damping_sweep(y0, cfg.length_l, cfg.epsilon, cfg.T, o);
    add_damping(rec, d, cfg.epsilon, o.energy_tol);
    rec.scalar("measured_error", d.certificate.final_norm);
    rec.scalar("predicted_error", cfg.epsilon / 2.0);
    add_trajectory(rec, d.trajectory, true);
    add_mp(rec, d.trajectory, context_for(y0));
}

void run_lift(const ScenarioConfig& cfg, RunRecord& rec) {
    const GridFunction y0 = make_shape(cfg.y0, cfg.n_points);
    const GridFunction y_d = make_shape(cfg.target, cfg.n_points);
    const MobilePlan plan = synthesize_mobile_additive(y_d, cfg.length_l, cfg.T, cfg.epsilon);
    LiftResult lift;
    try {
        lift = lift_to_multiplicative(plan, y0);
    } catch (const std::exception& e) {
        throw StageFailure("lift", e.what());
    }
    const GridFunction additive =
        evaluate_series(evolve_additive_final(lift.y0_series, plan.source_windows(), cfg.T), cfg.n_points);
    CnOptions o;
    o.snapshot_cap = 128;
    const Trajectory tr = evolve_multiplicative(y0, lift.windows, cfg.T, cfg.dt, o);
    const double resim = distance_l2(tr.final, additive);
    add_plan_scalars(rec, plan);
    rec.scalar("rho", lift.rho_measured);
    rec.scalar("u_sup", lift.u_sup);
    rec.scalar("v_sup", lift.v_sup);
    rec.scalar("identity_residual", lift.identity_residual);
    rec.scalar("resim_distance", resim);
    rec.scalar("measured_error", distance_l2(additive, y_d));
    rec.verdict("v_finite", std::isfinite(lift.v_sup));
    rec.verdict("lift_identity", lift.identity_residual <= kLiftIdentityTol);
    rec.verdict("resim_matches_additive", resim <= kResimTol);
    add_trajectory(rec, tr, true);
    MpContext ctx = context_for(y0);
    ctx.v_nonpos = lift.windows.empty();
    add_mp(rec, tr, ctx);
}

void run_synthesize_multiplicative(const ScenarioConfig& cfg, RunRecord& rec) {
    const GridFunction y0 = make_shape(cfg.y0, cfg.n_points);
    const GridFunction y_d = make_shape(cfg.target, cfg.n_points);
    MultiplicativeOptions o;
    o.damping = damping_options(cfg);
    const MultiplicativePlan p = synthesize_multiplicative_mobile(y0, y_d, cfg.length_l, cfg.T, cfg.epsilon, o);
    add_damping(rec, p.damping, cfg.epsilon, o.damping.energy_tol);
    add_plan_scalars(rec, p.additive);
    rec.scalar("residue_norm", p.residue_norm);
    rec.scalar("stage2_error", p.stage2_error);
    rec.scalar("total_error", p.total_error);
    rec.scalar("measured_error", p.total_error);
    rec.scalar("rho", p.lift.rho_measured);
    rec.scalar("v_sup", p.lift.v_sup);
    rec.scalar("identity_residual", p.lift.identity_residual);
    rec.scalar("final_min", p.final_state.min());
    rec.verdict("error_within_epsilon", p.total_error <= cfg.epsilon);
    rec.verdict("triangle_bound", p.total_error <= p.residue_norm + p.stage2_error + 1e-12 &&
                                      p.residue_norm <= cfg.epsilon / 2.0 && p.stage2_error <= cfg.epsilon / 2.0);
    rec.verdict("lift_identity", p.lift.identity_residual <= kLiftIdentityTol);
    rec.verdict("final_nonnegative", p.final_state.min() >= -kNegativityTol);
    add_trajectory(rec, p.damping.trajectory, true);
    add_mp(rec, p.damping.trajectory, context_for(y0));
}

void run_verify_static(const ScenarioConfig& cfg, RunRecord& rec) {
    const StaticAdjoint adj = build_static_adjoint(cfg.m, cfg.T);
    if (!(cfg.omega.lo >= 1.0 / cfg.m)) throw ConfigError("obstruction.omega", "must lie in (1/m, 1)");
    std::vector<PiecewiseControl> controls;
    for (int s = 0; s < cfg.samples; ++s) {
        Rng rng = Rng(cfg.seed).split(static_cast<std::uint64_t>(s));
        controls.push_back(random_source_control(rng, cfg.omega, cfg.T, cfg.n_points));
    }
    PairingOptions po;
    po.k_max = cfg.k_max;
    po.n_eval = cfg.n_points;
    const ObstructionReport r = duality_pairing_static(adj, controls, po);

    // sign certificates on a sample lattice
    double h_min = std::numeric_limits<double>::infinity();
    double p_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 20; ++j) {
            const double x = i / 200.0, t = cfg.T * j / 20.0;
            h_min = std::min(h_min, adj.h(x, t));
            if (x >= 1.0 / cfg.m) p_max = std::max(p_max, adj.p(x, t));
        }
    double min_dist = std::numeric_limits<double>::infinity();
    for (const auto& s : r.samples) min_dist = std::min(min_dist, s.distance);
    const double resid = static_adjoint_residual(adj);
    rec.scalar("gap_lower_bound", r.gap_lower_bound);
    rec.scalar("phi_norm", adj.phi_norm());
    rec.scalar("identity_residual", r.identity_residual);
    rec.scalar("pairing_value", r.pairing_value);
    rec.scalar("adjoint_residual", resid);
    rec.scalar("h_min", h_min);
    rec.scalar("p_max", p_max);
    if (!r.samples.empty()) rec.scalar("min_distance", min_dist);
    rec.pairings = r.samples;
    rec.verdict("identity", r.identity_residual <= po.identity_tol);
    rec.verdict("pairing_nonpositive", r.pairing_value <= po.quadrature_tol);
    rec.verdict("gap", r.samples.empty() || min_dist >= r.gap_lower_bound - po.gap_tol);
    rec.verdict("adjoint_residual", resid <= kAdjointResidualTol);
    rec.verdict("sign_h", h_min >= 0.0);
    rec.verdict("sign_p", p_max <= 0.0);
}

void run_verify_boundary(const ScenarioConfig& cfg, RunRecord& rec) {
    std::vector<BoundarySignal> signals;
    for (int s = 0; s < cfg.samples; ++s) {
        Rng rng = Rng(cfg.seed).split(static_cast<std::uint64_t>(s));
        signals.push_back(random_boundary_signal(rng, cfg.T));
    }
    PairingOptions po;
    po.k_max = cfg.k_max;
    po.n_eval = cfg.n_points;
    const ObstructionReport r = boundary_pairing(signals, cfg.T, po);
    const ObstructionReport unit = boundary_pairing({BoundarySignal{{BoundaryPiece{0.0, cfg.T, 1.0, 0.0}}}}, cfg.T, po);

    const BoundaryAdjoint adj{cfg.T};
    bool flux_signs = true;
    for (int j = 0; j <= 100; ++j) {
        const double t = cfg.T * j / 100.0;
        flux_signs = flux_signs && adj.px0(t) < 0.0 && adj.px1(t) > 0.0;
    }
    const double resid = boundary_adjoint_residual(adj);
    double final_min = std::numeric_limits<double>::infinity();
    for (const auto& s : signals)
        final_min = std::min(final_min, evaluate_series(evolve_boundary(s, cfg.T, cfg.k_max).state, cfg.n_points).min());
    rec.scalar("identity_residual", std::max(r.identity_residual, unit.identity_residual));
    rec.scalar("pairing_value", r.pairing_value);
    rec.scalar("rhs_unit_u0", unit.samples.front().rhs);
    rec.scalar("lhs_unit_u0", unit.samples.front().lhs);
    rec.scalar("gap_lower_bound", boundary_gap());
    rec.scalar("adjoint_residual", resid);
    if (!signals.empty()) rec.scalar("final_min", final_min);
    rec.pairings = r.samples;
    rec.verdict("identity", r.pass() && unit.pass());
    rec.verdict("adjoint_residual", resid <= kAdjointResidualTol);
    rec.verdict("flux_signs", flux_signs);
    if (!signals.empty()) rec.verdict("mp_i_nonnegative", final_min >= -kNegativityTol);
}

void run_verify_strip(const ScenarioConfig& cfg, RunRecord& rec) {
    if (cfg.strip.overlaps(cfg.omega)) throw ConfigError("obstruction.strip", "must be disjoint from omega");
    const GridFunction y0 = make_shape(cfg.y0, cfg.n_points);
    std::vector<std::vector<ReactionWindow>> vs;
    for (int s = 0; s < cfg.samples; ++s) {
        Rng rng = Rng(cfg.seed).split(static_cast<std::uint64_t>(s));
        vs.push_back(random_reaction(rng, cfg.omega, cfg.T, cfg.n_points, cfg.v_bound, false));
    }
    StripOptions so;
    so.dt = cfg.dt;
    const StripReport r = verify_strip_obstruction(y0, vs, cfg.omega, cfg.strip, cfg.T, so);
    const StripReport zero = verify_strip_obstruction(y0, {{}}, cfg.omega, cfg.strip, cfg.T, so);
    double worst = std::numeric_limits<double>::infinity(), min_value = zero.samples.front().min_value;
    for (const auto& s : r.samples) {
        worst = std::min(worst, s.strip_norm);
        min_value = std::min(min_value, s.min_value);
        rec.pairings.push_back(PairingSample{s.id, s.strip_norm, r.floor, s.strip_norm - r.floor, 0.0, s.pass});
    }
    rec.scalar("floor", r.floor);
    rec.scalar("zero_v_strip_norm", zero.samples.front().strip_norm);
    if (!r.samples.empty()) rec.scalar("min_strip_norm", worst);
    rec.scalar("mp_min", min_value);
    rec.scalar("vacuous", r.vacuous ? 1.0 : 0.0);
    rec.verdict("strip_floor", r.pass());
    rec.verdict("zero_v_strict", r.vacuous || zero.samples.front().strip_norm > r.floor);
    rec.verdict("mp_i_nonnegative", min_value >= -kNegativityTol);
}

void run_check_p1(const ScenarioConfig& cfg, RunRecord& rec) {
    struct Case {
        GridFunction y0, v;
    };
    std::vector<Case> cases;
    if (cfg.y0.shape != "zero") {
        const GridFunction y0 = make_shape(cfg.y0, cfg.n_points);
        const GridFunction v = GridFunction::sample(cfg.n_points, [&](double x) {
            return cfg.omega.contains(x) ? -cfg.v_bound : 0.0;
        });
        cases.push_back({y0, v});
    }
    for (int s = 0; s < cfg.samples; ++s) {
        Rng rng = Rng(cfg.seed).split(static_cast<std::uint64_t>(s));
        GridFunction y0 = random_smooth_bump(rng, cfg.n_points);
        const double a = rng.uniform(0.0, 0.6);
        const Interval support(a, a + rng.uniform(0.1, 1.0 - a));
        auto w = random_reaction(rng, support, cfg.T, cfg.n_points, cfg.v_bound, true, 1);
        cases.push_back({std::move(y0), std::get<GridFunction>(w.front().coefficient)});
    }
    P1Options po;
    po.dt = cfg.dt;
    bool a = true, b = true, c = true;
    double slack_a = std::numeric_limits<double>::infinity(), min_value = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const P1Report r = check_p1_bounds(cases[i].y0, cases[i].v, cfg.T, po);
        a = a && r.a_pass;
        b = b && r.b_pass;
        c = c && r.c_pass;
        slack_a = std::min(slack_a, r.bound_a - r.max_yt);
        min_value = std::min(min_value, r.min_value);
        rec.scalar(indexed("max_yt", i), r.max_yt);
        rec.scalar(indexed("bound_a", i), r.bound_a);
        rec.scalar(indexed("min_yx0", i), r.min_yx0);
        rec.scalar(indexed("max_yx0", i), r.max_yx0);
        rec.scalar(indexed("bound_b", i), r.bound_b);
        rec.scalar(indexed("min_yx1", i), r.min_yx1);
        rec.scalar(indexed("max_yx1", i), r.max_yx1);
        rec.scalar(indexed("bound_c", i), r.bound_c);
    }
    if (!cases.empty()) rec.scalar("min_slack_a", slack_a);
    rec.scalar("mp_min", min_value);
    rec.verdict("p1_a", a);
    rec.verdict("p1_b", b);
    rec.verdict("p1_c", c);
    rec.verdict("mp_i_nonnegative", min_value >= -kNegativityTol);
}

void run_study(const ScenarioConfig& cfg, RunRecord& rec) {
    rec.sweep = convergence_study(cfg, cfg.sweep_param, cfg.sweep_values, cfg.workers);
    bool all = true;
    for (const auto& row : rec.sweep) all = all && row.verdict;
    rec.verdict("sweep_runs_pass", all);
    if (cfg.sweep_param == "delta") {
        // measured error must not grow as delta shrinks, up to 5% noise
        std::vector<SweepRow> rows = rec.sweep;
        std::sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) { return x.value > y.value; });
        bool mono = true;
        for (std::size_t i = 1; i < rows.size(); ++i) mono = mono && rows[i].measured <= 1.05 * rows[i - 1].measured;
        rec.verdict("monotone_in_delta", mono);
    }
    if (cfg.sweep_param == "dt" && rec.sweep.size() >= 2) {
        for (std::size_t i = 1; i < rec.sweep.size(); ++i)
            rec.scalar(indexed("error_ratio", i - 1), rec.sweep[i - 1].measured / rec.sweep[i].measured);
    }
}

void dispatch(const ScenarioConfig& cfg, RunRecord& rec) {
    switch (cfg.kind) {
        case ScenarioKind::simulate: return run_simulate(cfg, rec);
        case ScenarioKind::synthesize_additive: return run_synthesize_additive(cfg, rec);
        case ScenarioKind::synthesize_multiplicative: return run_synthesize_multiplicative(cfg, rec);
        case ScenarioKind::verify_static: return run_verify_static(cfg, rec);
        case ScenarioKind::verify_boundary: return run_verify_boundary(cfg, rec);
        case ScenarioKind::verify_strip: return run_verify_strip(cfg, rec);
        case ScenarioKind::check_p1: return run_check_p1(cfg, rec);
        case ScenarioKind::study_convergence: return run_study(cfg, rec);
        case ScenarioKind::check_pulse: return run_check_pulse(cfg, rec);
        case ScenarioKind::damping_sweep: return run_damping(cfg, rec);
        case ScenarioKind::lift_additive: return run_lift(cfg, rec);
    }
}

}  // namespace

RunRecord run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    RunRecord rec;
    rec.config = cfg;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        dispatch(cfg, rec);
    } catch (const ConfigError&) {
        throw;
    } catch (const StageFailure& e) {
        rec.error = e.what();
    } catch (const std::exception& e) {
        rec.error = std::string(to_string(cfg.kind)) + ": " + e.what();
    }
    rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

}  // namespace heatlab
