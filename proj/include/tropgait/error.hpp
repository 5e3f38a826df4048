#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropgait {

enum class errc {
    dimension_mismatch,
    not_square,
    positive_circuit,
    negative_power_of_epsilon,
    not_irreducible,
    all_epsilon_vector,
    not_partition,
    bad_index,
    not_normal_gait,
    assumption_a1_violated,
    assumption_a2_violated,
    bad_exponent,
    non_monotone_trajectory,
    parse_error,
    bad_quantum,
    advancing_disturbance,
    invalid_plan,
    io_error,
    consistency_failure,
};

constexpr std::string_view to_string(errc code) noexcept {
    switch (code) {
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::not_square: return "NotSquare";
        case errc::positive_circuit: return "PositiveCircuit";
        case errc::negative_power_of_epsilon: return "NegativePowerOfEpsilon";
        case errc::not_irreducible: return "NotIrreducible";
        case errc::all_epsilon_vector: return "AllEpsilonVector";
        case errc::not_partition: return "NotPartition";
        case errc::bad_index: return "BadIndex";
        case errc::not_normal_gait: return "NotNormalGait";
        case errc::assumption_a1_violated: return "AssumptionA1Violated";
        case errc::assumption_a2_violated: return "AssumptionA2Violated";
        case errc::bad_exponent: return "BadExponent";
        case errc::non_monotone_trajectory: return "NonMonotoneTrajectory";
        case errc::parse_error: return "ParseError";
        case errc::bad_quantum: return "BadQuantum";
        case errc::advancing_disturbance: return "AdvancingDisturbance";
        case errc::invalid_plan: return "InvalidPlan";
        case errc::io_error: return "IoError";
        case errc::consistency_failure: return "ConsistencyFailure";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can branch without parsing messages.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace tropgait
