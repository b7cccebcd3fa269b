#pragma once

#include "rydberg_eit/config.hpp"
#include "rydberg_eit/errors.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace rydberg::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailure = 1,
    kConfigError = 2,
    kNumericalViolation = 3,
    kSolverFailure = 4,
};

struct Context {
    std::ostream& out;
    std::ostream& err;
    unsigned jobs = 1;
};

struct FieldCount {
    FieldKind field;
    std::size_t total = 0;
    std::size_t reachable_origin = 0;
};

/// Per-field transition counts for the configured scenario and polarizations.
std::vector<FieldCount> transition_counts(const RunConfig& config);

int cmd_transitions(const RunConfig& config, bool list, Context& ctx);
int cmd_dress(const RunConfig& config, Context& ctx);
int cmd_spectrum(const RunConfig& config, Context& ctx);
int cmd_diagram(const RunConfig& config, Context& ctx);

struct ValidateOptions {
    /// Flips the sign of one RF matrix element before the reduction check.
    bool inject_hamiltonian_sign_fault = false;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the oracle suite. Throws InvalidArgument before running anything when
/// the configured cluster tolerance is not positive.
std::vector<CheckResult> run_validation(const RunConfig& config, const ValidateOptions& options = {});
int cmd_validate(const RunConfig& config, const ValidateOptions& options, Context& ctx);

/// Runs `body`, mapping library exceptions onto exit codes and reporting them on ctx.err.
template <typename Body>
int guarded(Context& ctx, Body&& body)
{
    try {
        return body();
    } catch (const ConfigError& e) {
        ctx.err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const InvalidArgument& e) {
        ctx.err << "invalid argument: " << e.what() << "\n";
        return kConfigError;
    } catch (const InvalidScenario& e) {
        ctx.err << "invalid scenario: " << e.what() << "\n";
        return kConfigError;
    } catch (const ContractViolation& e) {
        ctx.err << "numerical contract violation: " << e.what() << "\n";
        return kNumericalViolation;
    } catch (const Error& e) {
        ctx.err << "solver failure: " << e.what() << "\n";
        return kSolverFailure;
    }
}

} // namespace rydberg::cli
