#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "optomech/errors.hpp"

namespace optomech {

using Complex = std::complex<double>;

inline constexpr double kPruneEps = 1e-14;

// |s, m_1 ... m_N> with s the two-level cavity label (false = g, true = e).
struct BasisLabel {
    bool excited = false;
    std::vector<int> occupations;

    friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

inline std::string to_string(const BasisLabel& l) {
    std::string s = "|";
    s += l.excited ? 'e' : 'g';
    for (int m : l.occupations)
        s += "," + std::to_string(m);
    return s + ">";
}

// Sparse amplitude map over the two-level-cavity x truncated-Fock basis.
// Treated as immutable by the propagators: they return new states.
class StateVector {
  public:
    StateVector(int n_modes, int cutoff) : n_modes_(n_modes), cutoff_(cutoff) {
        if (n_modes < 1 || cutoff < 1)
            throw std::invalid_argument("StateVector: need n_modes >= 1 and cutoff >= 1");
    }

    int n_modes() const { return n_modes_; }
    int cutoff() const { return cutoff_; }
    const std::map<BasisLabel, Complex>& amplitudes() const { return amps_; }

    Complex amplitude(const BasisLabel& l) const {
        auto it = amps_.find(l);
        return it == amps_.end() ? Complex{} : it->second;
    }

    void accumulate(const BasisLabel& l, Complex a) {
        check_label(l);
        amps_[l] += a;
    }

    void set_amplitude(const BasisLabel& l, Complex a) {
        check_label(l);
        amps_[l] = a;
    }

    double norm() const {
        double s = 0.0;
        for (const auto& [l, a] : amps_)
            s += std::norm(a);
        return std::sqrt(s);
    }

    void prune(double eps = kPruneEps) {
        for (auto it = amps_.begin(); it != amps_.end();) {
            if (std::abs(it->second) < eps)
                it = amps_.erase(it);
            else
                ++it;
        }
    }

    void normalize() {
        const double n = norm();
        if (n == 0.0)
            throw std::invalid_argument("StateVector::normalize: zero state");
        for (auto& [l, a] : amps_)
            a /= n;
    }

    std::size_t term_count() const { return amps_.size(); }

  private:
    void check_label(const BasisLabel& l) const {
        if (static_cast<int>(l.occupations.size()) != n_modes_)
            throw dimension_mismatch("StateVector: label has wrong number of modes");
        for (int m : l.occupations)
            if (m < 0 || m >= cutoff_)
                throw cutoff_violation("StateVector: occupation " + std::to_string(m) +
                                       " outside [0, " + std::to_string(cutoff_) + ")");
    }

    int n_modes_;
    int cutoff_;
    std::map<BasisLabel, Complex> amps_;
};

inline StateVector basis_state(int n_modes, int cutoff, bool excited, std::vector<int> occupations) {
    StateVector s(n_modes, cutoff);
    s.set_amplitude({excited, std::move(occupations)}, Complex{1.0, 0.0});
    return s;
}

inline Complex overlap(const StateVector& a, const StateVector& b) {
    if (a.n_modes() != b.n_modes() || a.cutoff() != b.cutoff())
        throw dimension_mismatch("overlap: states live on different spaces");
    // iterate the smaller support
    const StateVector& small = a.term_count() <= b.term_count() ? a : b;
    const StateVector& large = a.term_count() <= b.term_count() ? b : a;
    const bool small_is_a = &small == &a;
    Complex s{};
    for (const auto& [l, amp] : small.amplitudes()) {
        const Complex other = large.amplitude(l);
        s += small_is_a ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return s;
}

// |<a|b>|^2; global phases drop out.
inline double overlap_fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(overlap(a, b));
}

enum class TargetKind { Bell, NOON, GHZ, W };

inline std::string to_string(TargetKind k) {
    switch (k) {
        case TargetKind::Bell: return "bell";
        case TargetKind::NOON: return "noon";
        case TargetKind::GHZ: return "ghz";
        case TargetKind::W: return "w";
    }
    return "?";
}

struct TargetState {
    TargetKind kind;
    int n_modes;
    int n_phonon;  // NOON only; 1 otherwise
    StateVector state;
};

// Normalized target with the cavity factor |g>.
inline TargetState target_state(TargetKind kind, int n_modes, int cutoff, int n_phonon = 1) {
    const double r2 = 1.0 / std::sqrt(2.0);
    StateVector s(n_modes, cutoff);
    switch (kind) {
        case TargetKind::Bell: {
            if (n_modes != 2)
                throw std::invalid_argument("target_state: Bell needs exactly 2 modes");
            s.set_amplitude({false, {1, 0}}, r2);
            s.set_amplitude({false, {0, 1}}, r2);
            n_phonon = 1;
            break;
        }
        case TargetKind::NOON: {
            if (n_modes != 2)
                throw std::invalid_argument("target_state: NOON needs exactly 2 modes");
            if (n_phonon < 1)
                throw std::invalid_argument("target_state: NOON phonon number must be >= 1");
            s.set_amplitude({false, {n_phonon, 0}}, r2);
            s.set_amplitude({false, {0, n_phonon}}, r2);
            break;
        }
        case TargetKind::GHZ: {
            if (n_modes < 2)
                throw std::invalid_argument("target_state: GHZ needs >= 2 modes");
            s.set_amplitude({false, std::vector<int>(n_modes, 0)}, r2);
            s.set_amplitude({false, std::vector<int>(n_modes, 1)}, r2);
            n_phonon = 1;
            break;
        }
        case TargetKind::W: {
            if (n_modes < 2)
                throw std::invalid_argument("target_state: W needs >= 2 modes");
            const double rn = 1.0 / std::sqrt(static_cast<double>(n_modes));
            for (int i = 0; i < n_modes; ++i) {
                std::vector<int> occ(n_modes, 0);
                occ[i] = 1;
                s.set_amplitude({false, std::move(occ)}, rn);
            }
            n_phonon = 1;
            break;
        }
    }
    return {kind, n_modes, n_phonon, std::move(s)};
}

}  // namespace optomech
