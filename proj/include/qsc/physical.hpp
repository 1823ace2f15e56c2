// physical.hpp: circuit-QED parameter calculator for the transmon
// realization: effective exchange coupling through a shared resonator,
// dispersive-regime checks and the classifier's response-time budget.
//
// Frequency convention: every frequency is an ordinary frequency (the
// "omega / 2 pi" value quoted for a device), in GHz; qubit-resonator
// couplings g and effective couplings J are in MHz. The effective-coupling
// formula is homogeneous in frequency, so no 2 pi factors enter it. The only
// place the convention matters is the dimensionless product J * tau used by
// the collision engine, see FrequencyConvention.

#pragma once

#include <cstddef>
#include <vector>

namespace qsc::physical {

struct TransmonQubit {
    double omega_ghz = 0.0;
    double g_mhz = 0.0;
};

/// Resonator plus qubits; qubits[0] is the system qubit, the rest are
/// reservoir qubits.
struct TransmonParams {
    double omega_r_ghz = 0.0;
    std::vector<TransmonQubit> qubits;

    /// Frequencies > 0 and no qubit resonant with the resonator.
    void validate() const;
};

/// J = (g1 g2 / 2)(1/Δ1 + 1/Δ2), g in MHz, Δ in GHz, J in MHz (signed).
double effective_coupling(double g1_mhz, double g2_mhz, double delta1_ghz, double delta2_ghz);

struct QubitDispersiveCheck {
    std::size_t index = 0;
    double detuning_ghz = 0.0;
    double ratio = 0.0;  // |Δ| / g, both in MHz
    bool pass = false;
};

struct ReservoirDecouplingCheck {
    std::size_t a = 0;
    std::size_t b = 0;
    double coupling_mhz = 0.0;  // |J_ab|
    double ratio = 0.0;         // |ω_a - ω_b| / |J_ab|
    bool pass = false;
};

struct DispersiveReport {
    std::vector<QubitDispersiveCheck> qubits;
    std::vector<ReservoirDecouplingCheck> reservoir_pairs;

    bool all_pass() const;
};

inline constexpr double kDefaultDispersiveRatio = 10.0;

DispersiveReport validate_dispersive(const TransmonParams& params,
                                     double ratio_min = kDefaultDispersiveRatio);

/// Effective system-reservoir couplings J_{0,i} for i >= 1, in MHz.
std::vector<double> system_couplings(const TransmonParams& params);

struct TimingBudget {
    double tau_int_ns = 5.0;
    double tau_r_us = 0.0;
    double tau_pr_ns = 0.0;
    double t1_us = 20.0;
    std::size_t n_collisions = 0;
};

struct ResponseTime {
    double total_us = 0.0;
    bool t1_ok = false;
};

/// n_collisions * tau_int (the period between collisions is taken as
/// tau_int since reset is fast and reservoir relaxation slow); t1_ok when
/// the system qubit outlives the response.
ResponseTime response_time(const TimingBudget& budget);

enum class FrequencyConvention { ordinary, angular };

/// Dimensionless J * tau for J in MHz and tau in ns; the angular convention
/// multiplies by 2 pi.
double coupling_phase(double j_mhz, double tau_ns, FrequencyConvention convention);

}  // namespace qsc::physical
