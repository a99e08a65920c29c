#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "optomech/drive.hpp"
#include "optomech/dynamics_bld.hpp"
#include "optomech/dynamics_ld.hpp"
#include "optomech/errors.hpp"
#include "optomech/hilbert.hpp"
#include "optomech/sync.hpp"

namespace optomech {

// Angles and phases are carried symbolically (rational multiples of pi, with
// a raw-radians fallback for the arcsin-type steps) so that every duration is
// derived in one place from angle / effective Rabi frequency.
struct AngleLit {
    bool rational = true;
    long long num = 0;
    long long den = 1;
    double raw = 0.0;  // radians, used when !rational

    double radians() const {
        return rational ? static_cast<double>(num) * std::numbers::pi / static_cast<double>(den)
                        : raw;
    }
    static AngleLit of(long long num, long long den) { return {true, num, den, 0.0}; }
    static AngleLit radians_of(double r) { return {false, 0, 1, r}; }

    friend bool operator==(const AngleLit& a, const AngleLit& b) {
        if (a.rational != b.rational)
            return false;
        return a.rational ? (a.num == b.num && a.den == b.den) : a.raw == b.raw;
    }
};

struct ProgramStep {
    std::variant<Pulse, MultiSidebandPulse> op;
    std::string label;
    AngleLit phase;
    AngleLit angle;             // block angle at the reference occupations
    std::vector<int> ref_occ;   // LD: one entry (the sqrt index); BLD: per mode
    std::optional<SyncSolution> sync;
    std::optional<StateVector> checkpoint;  // expected state after this step

    bool is_ld() const { return std::holds_alternative<Pulse>(op); }
    const Pulse& ld() const { return std::get<Pulse>(op); }
    const MultiSidebandPulse& bld() const { return std::get<MultiSidebandPulse>(op); }
};

struct PulseProgram {
    Model model = Model::LD;
    int n_modes = 0;
    int cutoff = 0;
    std::vector<ProgramStep> steps;
    TargetState target;

    double total_duration() const {
        double t = 0.0;
        for (const auto& s : steps)
            t += s.is_ld() ? s.ld().duration : s.bld().duration;
        return t;
    }
};

// Duration of a step from its symbolic angle, the single centralized spot
// where angle -> time arithmetic happens.
inline double step_duration_ld(PulseKind kind, int membrane, const AngleLit& angle, int ref,
                               const DriveConfig& cfg) {
    const double theta = angle.radians();
    if (kind == PulseKind::Carrier)
        return theta / cfg.omega_rabi;
    if (ref < 1)
        throw std::invalid_argument("step_duration_ld: sideband reference occupation must be >= 1");
    return theta / (cfg.omega_rabi * cfg.eta.at(membrane) * std::sqrt(static_cast<double>(ref)));
}

inline double step_duration_bld(const std::vector<int>& orders, const AngleLit& angle,
                                const std::vector<int>& ref, const DriveConfig& cfg) {
    const double rabi = std::abs(effective_rabi(ref, orders, cfg));
    if (rabi < 1e-12 * std::abs(cfg.omega_rabi))
        throw unreachable_transition("step duration: effective Rabi frequency below floor");
    return angle.radians() / rabi;
}

struct CheckpointResult {
    std::string label;
    double fidelity = 0.0;
};

struct RunReport {
    StateVector final_state;
    double fidelity = 0.0;
    std::vector<CheckpointResult> checkpoints;
    double total_duration = 0.0;
    std::vector<SyncSolution> sync_solutions;
};

inline StateVector apply_step(const StateVector& psi, const ProgramStep& step,
                              const DriveConfig& cfg) {
    if (step.is_ld())
        return apply_pulse(psi, step.ld(), cfg);
    return apply_multisideband(psi, step.bld(), cfg);
}

inline RunReport run_program(const PulseProgram& program, const StateVector& initial,
                             const DriveConfig& cfg) {
    if (initial.n_modes() != program.n_modes || initial.cutoff() != program.cutoff)
        throw dimension_mismatch("run_program: initial state does not match the program space");
    if (cfg.n_modes() != program.n_modes)
        throw dimension_mismatch("run_program: config does not match the program mode count");

    RunReport rep{initial};
    StateVector psi = initial;
    for (std::size_t i = 0; i < program.steps.size(); ++i) {
        const auto& step = program.steps[i];
        if (program.model == Model::LD && !step.is_ld())
            throw std::invalid_argument("run_program: multisideband step in an ld program");
        try {
            psi = apply_step(psi, step, cfg);
        } catch (const cutoff_violation& e) {
            throw cutoff_violation("step " + std::to_string(i) + " (" + step.label + "): " +
                                   e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("step " + std::to_string(i) + " (" + step.label + "): " +
                                        e.what());
        }
        if (step.checkpoint)
            rep.checkpoints.push_back({step.label, overlap_fidelity(*step.checkpoint, psi)});
        if (step.sync)
            rep.sync_solutions.push_back(*step.sync);
    }
    rep.final_state = psi;
    rep.fidelity = overlap_fidelity(program.target.state, psi);
    rep.total_duration = program.total_duration();
    return rep;
}

inline RunReport run_program(const PulseProgram& program, const DriveConfig& cfg) {
    return run_program(
        program, basis_state(program.n_modes, program.cutoff, false,
                             std::vector<int>(program.n_modes, 0)),
        cfg);
}

// ---------------------------------------------------------------------------
// Protocol builders.

namespace detail {

constexpr double kDurationCapOverOmega = 1e4;
constexpr long long kPhaseHalfPi = 1, kPhaseDen = 2;

struct LadderKet {
    bool excited = false;
    std::vector<int> occ;
};

class ProgramBuilder {
  public:
    ProgramBuilder(Model model, int n_modes, int cutoff, const DriveConfig& cfg, int sync_depth)
        : model_(model), n_modes_(n_modes), cutoff_(cutoff), cfg_(cfg), depth_(sync_depth) {}

    void carrier(AngleLit angle, AngleLit phase, std::string label) {
        ProgramStep s;
        s.angle = angle;
        s.phase = phase;
        s.label = std::move(label);
        const double dt = step_duration_ld(PulseKind::Carrier, -1, angle, 1, cfg_);
        s.op = Pulse{PulseKind::Carrier, -1, phase.radians(), dt};
        steps_.push_back(std::move(s));
    }

    void sideband(PulseKind kind, int membrane, int ref, AngleLit angle, AngleLit phase,
                  std::string label) {
        ProgramStep s;
        s.angle = angle;
        s.phase = phase;
        s.ref_occ = {ref};
        s.label = std::move(label);
        const double dt = step_duration_ld(kind, membrane, angle, ref, cfg_);
        s.op = Pulse{kind, membrane, phase.radians(), dt};
        steps_.push_back(std::move(s));
    }

    void multisideband(std::vector<int> orders, std::vector<int> ref, AngleLit angle,
                       AngleLit phase, std::string label) {
        const double rabi = std::abs(effective_rabi(ref, orders, cfg_));
        if (rabi < 1e-12 * std::abs(cfg_.omega_rabi))
            throw unreachable_transition("synthesis: order vector (" + orders_string(orders) +
                                         ") has effective Rabi below 1e-12 Omega");
        ProgramStep s;
        s.angle = angle;
        s.phase = phase;
        s.ref_occ = ref;
        s.label = std::move(label);
        const double dt = step_duration_bld(orders, angle, ref, cfg_);
        s.op = MultiSidebandPulse{std::move(orders), phase.radians(), dt};
        steps_.push_back(std::move(s));
    }

    // Synchronized two-branch sideband pulse. idx_g / idx_e are the block
    // indices of the branch currently in g / e on this membrane. The phase is
    // chosen so both transferred amplitudes end with the same sign.
    void sync_sideband(PulseKind kind, int membrane, int idx_g, int idx_e, std::string label) {
        const long long n = std::max(idx_g, idx_e);
        const long long m = std::min(idx_g, idx_e);
        const double rabi_unit = cfg_.omega_rabi * cfg_.eta.at(membrane);
        SyncSolution sol = best_sync_duration(n, m, depth_, rabi_unit,
                                              kDurationCapOverOmega / cfg_.omega_rabi);
        const int sign_g = (idx_g == n) ? sol.sign_n : sol.sign_m;
        const int sign_e = (idx_e == n) ? sol.sign_n : sol.sign_m;
        AngleLit phase = AngleLit::of(0, 1);
        if (sign_g * sign_e < 0)
            phase = (sign_e > 0) ? AngleLit::of(1, 2) : AngleLit::of(3, 2);

        // Exact block angle at the m-side reference occupation.
        AngleLit angle;
        switch (sol.variant) {
            case RatioVariant::rational_both_odd:
                angle = AngleLit::of(2 * sol.q + 1, 2);
                break;
            case RatioVariant::irrational:
                angle = AngleLit::of(sol.approx_m, 2);
                break;
            case RatioVariant::rational_one_even: {
                const RatioClass rc = classify_ratio(n, m);
                const long long D = sol.branch > 0 ? rc.n_reduced + rc.m_reduced
                                                   : rc.n_reduced - rc.m_reduced;
                angle = AngleLit::of(rc.m_reduced * sol.p, D);
                break;
            }
        }
        ProgramStep s;
        s.angle = angle;
        s.phase = phase;
        s.ref_occ = {static_cast<int>(m)};
        s.label = std::move(label);
        s.sync = sol;
        const double dt = step_duration_ld(kind, membrane, angle, static_cast<int>(m), cfg_);
        s.op = Pulse{kind, membrane, phase.radians(), dt};
        steps_.push_back(std::move(s));
    }

    void checkpoint(const StateVector& expected) {
        if (steps_.empty())
            throw std::invalid_argument("checkpoint before any step");
        steps_.back().checkpoint = expected;
    }

    void checkpoint_kets(const std::vector<LadderKet>& kets) {
        StateVector s(n_modes_, cutoff_);
        const double a = 1.0 / std::sqrt(static_cast<double>(kets.size()));
        for (const auto& k : kets)
            s.set_amplitude({k.excited, k.occ}, a);
        checkpoint(s);
    }

    PulseProgram finish(TargetState target) {
        PulseProgram p;
        p.model = model_;
        p.n_modes = n_modes_;
        p.cutoff = cutoff_;
        p.steps = std::move(steps_);
        p.target = std::move(target);
        return p;
    }

  private:
    static std::string orders_string(const std::vector<int>& o) {
        std::string s;
        for (std::size_t i = 0; i < o.size(); ++i)
            s += (i ? "," : "") + std::to_string(o[i]);
        return s;
    }

    Model model_;
    int n_modes_, cutoff_;
    const DriveConfig& cfg_;
    int depth_;
    std::vector<ProgramStep> steps_;
};

inline void require_modes(const DriveConfig& cfg, int n, const char* who) {
    if (cfg.n_modes() != n)
        throw std::invalid_argument(std::string(who) + ": config must have exactly " +
                                    std::to_string(n) + " membranes");
}

}  // namespace detail

inline constexpr int kDefaultSyncDepth = 8;

// Carrier pi/2, then red_1 (pi/4 block angle) and red_2 (pi/2): three steps to
// the two-mode Bell state.
inline PulseProgram synth_bell(const DriveConfig& cfg) {
    detail::require_modes(cfg, 2, "synth_bell");
    detail::ProgramBuilder b(Model::LD, 2, 6, cfg, 1);
    b.carrier(AngleLit::of(1, 2), AngleLit::of(3, 2), "carrier pi/2");
    b.checkpoint_kets({{true, {0, 0}}});
    b.sideband(PulseKind::Red, 0, 1, AngleLit::of(1, 4), AngleLit::of(1, 2), "red_1 pi/4");
    b.checkpoint_kets({{true, {0, 0}}, {false, {1, 0}}});
    b.sideband(PulseKind::Red, 1, 1, AngleLit::of(1, 2), AngleLit::of(1, 2), "red_2 pi/2");
    auto target = target_state(TargetKind::Bell, 2, 6);
    b.checkpoint(target.state);
    return b.finish(std::move(target));
}

// Carrier pi/2, then N red pulses with arcsin(1/sqrt(N+1-i)) block angles.
inline PulseProgram synth_w(int n, const DriveConfig& cfg) {
    if (n < 2)
        throw std::invalid_argument("synth_w: need N >= 2");
    detail::require_modes(cfg, n, "synth_w");
    const int cutoff = 6;
    detail::ProgramBuilder b(Model::LD, n, cutoff, cfg, 1);
    b.carrier(AngleLit::of(1, 2), AngleLit::of(3, 2), "carrier pi/2");
    b.checkpoint_kets({{true, std::vector<int>(n, 0)}});
    for (int i = 0; i < n; ++i) {
        const int remaining = n - i;
        const AngleLit angle = remaining == 1
                                   ? AngleLit::of(1, 2)
                                   : AngleLit::radians_of(std::asin(1.0 / std::sqrt(
                                         static_cast<double>(remaining))));
        b.sideband(PulseKind::Red, i, 1, angle, AngleLit::of(1, 2),
                   "red_" + std::to_string(i + 1) + " arcsin");
        // exact running state: sum_j<=i 1/sqrt(N) |g,e_j> + sqrt((N-i-1)/N)|e,0>
        StateVector chk(n, cutoff);
        for (int j = 0; j <= i; ++j) {
            std::vector<int> occ(n, 0);
            occ[j] = 1;
            chk.set_amplitude({false, std::move(occ)}, 1.0 / std::sqrt(static_cast<double>(n)));
        }
        if (i + 1 < n)
            chk.set_amplitude({true, std::vector<int>(n, 0)},
                              std::sqrt(static_cast<double>(n - i - 1) / n));
        b.checkpoint(chk);
    }
    return b.finish(target_state(TargetKind::W, n, cutoff));
}

// Fig.-4-style NOON ladder: blue_2 seed, alternating red/carrier build-up,
// half-rotation, a synchronized red ladder, and a closing red_1 pulse.
inline PulseProgram synth_noon(int n_phonon, const DriveConfig& cfg,
                               int sync_depth = kDefaultSyncDepth) {
    if (n_phonon < 1)
        throw std::invalid_argument("synth_noon: need N >= 1");
    detail::require_modes(cfg, 2, "synth_noon");
    const int cutoff = n_phonon + 5;
    detail::ProgramBuilder b(Model::LD, 2, cutoff, cfg, sync_depth);
    auto target = target_state(TargetKind::NOON, 2, cutoff, n_phonon);

    if (n_phonon == 1) {  // Bell by the NOON route
        b.carrier(AngleLit::of(1, 2), AngleLit::of(3, 2), "carrier pi/2");
        b.checkpoint_kets({{true, {0, 0}}});
        b.sideband(PulseKind::Red, 1, 1, AngleLit::of(1, 4), AngleLit::of(1, 2), "red_2 pi/4");
        b.checkpoint_kets({{true, {0, 0}}, {false, {0, 1}}});
        b.sideband(PulseKind::Red, 0, 1, AngleLit::of(1, 2), AngleLit::of(1, 2), "red_1 pi/2");
        b.checkpoint(target.state);
        return b.finish(std::move(target));
    }

    const int half_lo = (n_phonon - 1) / 2;       // membrane-1 count after step (i)
    const int half_hi = n_phonon / 2;             // membrane-2 count after step (i)
    std::vector<int> occ = {0, 1};
    b.sideband(PulseKind::Blue, 1, 1, AngleLit::of(1, 2), AngleLit::of(3, 2), "blue_2 pi/2");
    int mem = 0;
    for (int p = 0; p < n_phonon - 2; ++p) {
        b.sideband(PulseKind::Red, mem, occ[mem] + 1, AngleLit::of(1, 2), AngleLit::of(1, 2),
                   "ladder red_" + std::to_string(mem + 1));
        occ[mem] += 1;
        b.carrier(AngleLit::of(1, 2), AngleLit::of(3, 2), "ladder carrier");
        mem = 1 - mem;
    }
    b.checkpoint_kets({{true, {half_lo, half_hi}}});

    detail::LadderKet bra, brb;  // branch in g, branch in e
    if (n_phonon % 2 == 0) {
        b.sideband(PulseKind::Red, 0, half_hi, AngleLit::of(1, 4), AngleLit::of(1, 2),
                   "half red_1");
        bra = {false, {half_hi, half_hi}};
        brb = {true, {half_lo, half_hi}};
    } else {
        b.sideband(PulseKind::Red, 1, half_lo + 1, AngleLit::of(1, 4), AngleLit::of(1, 2),
                   "half red_2");
        bra = {false, {half_lo, half_lo + 1}};
        brb = {true, {half_lo, half_lo}};
    }
    b.checkpoint_kets({brb, bra});

    int sync_mem = (n_phonon % 2 == 0) ? 1 : 0;
    for (int j = 0; j < n_phonon - 1; ++j) {
        const int idx_g = bra.occ[sync_mem];
        const int idx_e = brb.occ[sync_mem] + 1;
        b.sync_sideband(PulseKind::Red, sync_mem, idx_g, idx_e,
                        "sync red_" + std::to_string(sync_mem + 1));
        bra.occ[sync_mem] -= 1;
        bra.excited = true;
        brb.occ[sync_mem] += 1;
        brb.excited = false;
        std::swap(bra, brb);  // keep bra = branch in g
        sync_mem = 1 - sync_mem;
    }
    b.checkpoint_kets({{true, {n_phonon - 1, 0}}, {false, {0, n_phonon}}});
    b.sideband(PulseKind::Red, 0, n_phonon, AngleLit::of(1, 2), AngleLit::of(1, 2),
               "closing red_1");
    b.checkpoint(target.state);
    return b.finish(std::move(target));
}

// Appendix-style GHZ for general N; the literal seven-step figure sequence
// for N = 3.
inline PulseProgram synth_ghz(int n, const DriveConfig& cfg, int sync_depth = kDefaultSyncDepth);

namespace detail {

inline PulseProgram synth_ghz3_figure(const DriveConfig& cfg, int sync_depth) {
    ProgramBuilder b(Model::LD, 3, 7, cfg, sync_depth);
    auto target = target_state(TargetKind::GHZ, 3, 7);
    b.carrier(AngleLit::of(1, 2), AngleLit::of(3, 2), "carrier pi/2");
    b.checkpoint_kets({{true, {0, 0, 0}}});
    b.sideband(PulseKind::Red, 0, 1, AngleLit::of(1, 2), AngleLit::of(1, 2), "red_1 pi/2");
    b.checkpoint_kets({{false, {1, 0, 0}}});
    b.carrier(AngleLit::of(1, 4), AngleLit::of(3, 2), "carrier pi/4");
    b.checkpoint_kets({{false, {1, 0, 0}}, {true, {1, 0, 0}}});
    b.sync_sideband(PulseKind::Blue, 0, /*idx_g=*/2, /*idx_e=*/1, "sync blue_1");
    b.checkpoint_kets({{false, {0, 0, 0}}, {true, {2, 0, 0}}});
    b.sideband(PulseKind::Red, 2, 1, AngleLit::of(1, 2), AngleLit::of(1, 2), "red_3 pi/2");
    b.checkpoint_kets({{false, {0, 0, 0}}, {false, {2, 0, 1}}});
    b.sideband(PulseKind::Red, 0, 2, AngleLit::of(1, 2), AngleLit::of(3, 2), "red_1 pi/2");
    b.checkpoint_kets({{false, {0, 0, 0}}, {true, {1, 0, 1}}});
    b.sideband(PulseKind::Red, 1, 1, AngleLit::of(1, 2), AngleLit::of(1, 2), "red_2 pi/2");
    b.checkpoint(target.state);
    return b.finish(std::move(target));
}

}  // namespace detail

inline PulseProgram synth_ghz(int n, const DriveConfig& cfg, int sync_depth) {
    if (n < 2)
        throw std::invalid_argument("synth_ghz: need N >= 2");
    detail::require_modes(cfg, n, "synth_ghz");
    if (n == 3)
        return detail::synth_ghz3_figure(cfg, sync_depth);

    const int cutoff = n + 4;  // occupations peak at N-1
    detail::ProgramBuilder b(Model::LD, n, cutoff, cfg, sync_depth);
    auto target = target_state(TargetKind::GHZ, n, cutoff);

    // step (i): pump membrane 1 with carrier/red pairs.
    bool lo_excited, hi_excited;
    int lo_m, hi_m;
    const int pump = (n % 2 == 1) ? (n - 1) / 2 : n / 2 - 1;
    for (int j = 0; j < pump; ++j) {
        b.carrier(AngleLit::of(1, 2), AngleLit::of(3, 2), "pump carrier");
        b.sideband(PulseKind::Red, 0, j + 1, AngleLit::of(1, 2), AngleLit::of(1, 2), "pump red_1");
    }
    if (n % 2 == 0 && (n / 2) % 2 == 0) {
        b.carrier(AngleLit::of(1, 2), AngleLit::of(3, 2), "pump carrier");
        b.checkpoint_kets({{true, [&] { std::vector<int> o(n, 0); o[0] = pump; return o; }()}});
    } else {
        b.checkpoint_kets({{false, [&] { std::vector<int> o(n, 0); o[0] = pump; return o; }()}});
    }

    // step (ii): half rotation into two branches on membrane 1.
    if (n % 2 == 1) {
        b.carrier(AngleLit::of(1, 4), AngleLit::of(3, 2), "half carrier");
        lo_excited = false; lo_m = pump;
        hi_excited = true;  hi_m = pump;
    } else if ((n / 2) % 2 == 0) {
        b.sideband(PulseKind::Red, 0, n / 2, AngleLit::of(1, 4), AngleLit::of(1, 2), "half red_1");
        lo_excited = true;  lo_m = n / 2 - 1;
        hi_excited = false; hi_m = n / 2;
    } else {
        b.sideband(PulseKind::Blue, 0, n / 2, AngleLit::of(1, 4), AngleLit::of(3, 2),
                   "half blue_1");
        lo_excited = false; lo_m = n / 2 - 1;
        hi_excited = true;  hi_m = n / 2;
    }
    {
        std::vector<int> olo(n, 0), ohi(n, 0);
        olo[0] = lo_m; ohi[0] = hi_m;
        b.checkpoint_kets({{lo_excited, olo}, {hi_excited, ohi}});
    }

    // step (iii): walk the lower branch to 0 and the upper to N-1.
    while (lo_m > 0 || hi_m < n - 1) {
        if (!lo_excited && hi_excited) {
            b.sync_sideband(PulseKind::Red, 0, /*idx_g=*/lo_m, /*idx_e=*/hi_m + 1, "sync red_1");
            lo_excited = true;  lo_m -= 1;
            hi_excited = false; hi_m += 1;
        } else if (lo_excited && !hi_excited) {
            b.sync_sideband(PulseKind::Blue, 0, /*idx_g=*/hi_m + 1, /*idx_e=*/lo_m, "sync blue_1");
            lo_excited = false; lo_m -= 1;
            hi_excited = true;  hi_m += 1;
        } else {
            throw std::logic_error("synth_ghz: branch parity clash");
        }
    }
    if (lo_excited) {  // carrier flip so the empty branch sits in g
        b.carrier(AngleLit::of(1, 2), AngleLit::of(0, 1), "flip carrier");
        lo_excited = false;
        hi_excited = true;
    }
    {
        std::vector<int> ohi(n, 0);
        ohi[0] = n - 1;
        b.checkpoint_kets({{false, std::vector<int>(n, 0)}, {true, ohi}});
    }

    // step (iv): distribute phonons, R_j at index 1 then R_1 back down.
    int m1 = n - 1;
    for (int j = 2; j <= n; ++j) {
        b.sideband(PulseKind::Red, j - 1, 1, AngleLit::of(1, 2), AngleLit::of(1, 2),
                   "spread red_" + std::to_string(j));
        if (j < n) {
            b.sideband(PulseKind::Red, 0, m1, AngleLit::of(1, 2), AngleLit::of(3, 2),
                       "lower red_1");
            m1 -= 1;
        }
    }
    b.checkpoint(target.state);
    return b.finish(std::move(target));
}

// Three-step beyond-Lamb-Dicke NOON: carrier, order (N,0) red, order (0,N) red.
inline PulseProgram synth_noon_bld(int n_phonon, const DriveConfig& cfg) {
    if (n_phonon < 1)
        throw std::invalid_argument("synth_noon_bld: need N >= 1");
    detail::require_modes(cfg, 2, "synth_noon_bld");
    const int cutoff = n_phonon + 5;
    detail::ProgramBuilder b(Model::BLD, 2, cutoff, cfg, 1);
    auto target = target_state(TargetKind::NOON, 2, cutoff, n_phonon);
    const AngleLit phase_n = AngleLit::of(1 + 2LL * n_phonon, 2);  // pi/2 + N pi

    b.multisideband({0, 0}, {0, 0}, AngleLit::of(1, 2), AngleLit::of(3, 2), "carrier pi/2");
    b.checkpoint_kets({{true, {0, 0}}});
    b.multisideband({n_phonon, 0}, {0, 0}, AngleLit::of(1, 4), phase_n,
                    "order-(N,0) red pi/4");
    b.checkpoint_kets({{true, {0, 0}}, {false, {n_phonon, 0}}});
    b.multisideband({0, n_phonon}, {0, 0}, AngleLit::of(1, 2), phase_n,
                    "order-(0,N) red pi/2");
    b.checkpoint(target.state);
    return b.finish(std::move(target));
}

// Two-step beyond-Lamb-Dicke GHZ for three membranes.
inline PulseProgram synth_ghz_bld(const DriveConfig& cfg) {
    detail::require_modes(cfg, 3, "synth_ghz_bld");
    const int cutoff = 6;
    detail::ProgramBuilder b(Model::BLD, 3, cutoff, cfg, 1);
    auto target = target_state(TargetKind::GHZ, 3, cutoff);
    b.multisideband({0, 0, 0}, {0, 0, 0}, AngleLit::of(1, 4), AngleLit::of(3, 2), "carrier pi/4");
    b.checkpoint_kets({{false, {0, 0, 0}}, {true, {0, 0, 0}}});
    b.multisideband({1, 1, 1}, {0, 0, 0}, AngleLit::of(1, 2), AngleLit::of(3, 2),
                    "order-(1,1,1) red pi/2");
    b.checkpoint(target.state);
    return b.finish(std::move(target));
}

}  // namespace optomech
