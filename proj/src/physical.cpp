#include "qsc/physical.hpp"

#include "qsc/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsc::physical {

namespace {
constexpr double kMhzPerGhz = 1e3;
}

void TransmonParams::validate() const {
    if (!(omega_r_ghz > 0.0)) throw InvalidArgument("resonator frequency must be > 0");
    for (const auto& q : qubits) {
        if (!(q.omega_ghz > 0.0)) throw InvalidArgument("qubit frequency must be > 0");
        if (!(q.g_mhz > 0.0)) throw InvalidArgument("qubit-resonator coupling must be > 0");
        if (q.omega_ghz == omega_r_ghz) throw ZeroDetuning("qubit resonant with the resonator");
    }
}

double effective_coupling(double g1_mhz, double g2_mhz, double delta1_ghz, double delta2_ghz) {
    if (delta1_ghz == 0.0 || delta2_ghz == 0.0) {
        throw ZeroDetuning("effective_coupling: detuning must be nonzero");
    }
    const double inverse_mhz = (1.0 / delta1_ghz + 1.0 / delta2_ghz) / kMhzPerGhz;
    return 0.5 * g1_mhz * g2_mhz * inverse_mhz;
}

bool DispersiveReport::all_pass() const {
    for (const auto& q : qubits)
        if (!q.pass) return false;
    for (const auto& p : reservoir_pairs)
        if (!p.pass) return false;
    return true;
}

DispersiveReport validate_dispersive(const TransmonParams& params, double ratio_min) {
    params.validate();
    DispersiveReport report;
    for (std::size_t i = 0; i < params.qubits.size(); ++i) {
        const auto& q = params.qubits[i];
        const double delta = q.omega_ghz - params.omega_r_ghz;
        const double ratio = std::abs(delta) * kMhzPerGhz / q.g_mhz;
        report.qubits.push_back({i, delta, ratio, ratio >= ratio_min});
    }
    // Reservoir qubits must not talk to each other.
    for (std::size_t a = 1; a < params.qubits.size(); ++a) {
        for (std::size_t b = a + 1; b < params.qubits.size(); ++b) {
            const auto& qa = params.qubits[a];
            const auto& qb = params.qubits[b];
            const double j = std::abs(effective_coupling(qa.g_mhz, qb.g_mhz,
                                                         qa.omega_ghz - params.omega_r_ghz,
                                                         qb.omega_ghz - params.omega_r_ghz));
            const double split = std::abs(qa.omega_ghz - qb.omega_ghz) * kMhzPerGhz;
            const double ratio = j > 0.0 ? split / j : INFINITY;
            report.reservoir_pairs.push_back({a, b, j, ratio, ratio >= ratio_min});
        }
    }
    return report;
}

std::vector<double> system_couplings(const TransmonParams& params) {
    params.validate();
    std::vector<double> out;
    if (params.qubits.empty()) return out;
    const auto& sys = params.qubits.front();
    for (std::size_t i = 1; i < params.qubits.size(); ++i) {
        const auto& q = params.qubits[i];
        out.push_back(effective_coupling(sys.g_mhz, q.g_mhz, sys.omega_ghz - params.omega_r_ghz,
                                         q.omega_ghz - params.omega_r_ghz));
    }
    return out;
}

ResponseTime response_time(const TimingBudget& budget) {
    if (!(budget.tau_int_ns > 0.0)) throw InvalidArgument("response_time: tau_int must be > 0");
    const double total_us = static_cast<double>(budget.n_collisions) * budget.tau_int_ns / 1e3;
    return {total_us, total_us < budget.t1_us};
}

double coupling_phase(double j_mhz, double tau_ns, FrequencyConvention convention) {
    // MHz * ns = 1e-3
    const double cycles = j_mhz * tau_ns * 1e-3;
    return convention == FrequencyConvention::angular ? 2.0 * std::numbers::pi * cycles : cycles;
}

}  // namespace qsc::physical
