// params.hpp - system parameters for the PPM multipath synchronization model
//
// Two parameterizations are supported. The physical one is expressed in
// bandwidth, symbol time, delay spread, energy and the flash fraction; the
// canonical one is (M, L, k), where M is the number of resolvable delay
// positions, L the number of paths and k the SNR scale with the per-path
// amplitude A = sqrt(k ln M / L). All logarithms are natural.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppmsync {

/// Thrown for malformed or out-of-domain parameters. `field()` names the
/// offending input.
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string field, const std::string& message);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct PhysicalParams {
    double bandwidth = 0.0;      // W, Hz
    double symbol_time = 0.0;    // T_s, s
    double delay_spread = 0.0;   // T_d, s
    double symbol_energy = 0.0;  // noise-normalized energy per symbol
    double flash_theta = 0.0;    // fraction of coherence periods in use, (0,1]
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
};

struct CanonicalParams {
    std::uint64_t num_positions = 0;  // M
    std::uint64_t num_paths = 0;      // L
    double snr_scale = 0.0;           // k

    /// sqrt(k ln M / L); requires M >= 2.
    double amplitude() const;

    /// Throws ParameterError unless 1 <= L <= M and k > 0.
    void check() const;

    friend bool operator==(const CanonicalParams&, const CanonicalParams&) = default;
};

struct RegimeSpec {
    double exponent = 0.0;  // a in (0,1]; L = ceil(M^a)
    std::vector<std::uint64_t> ladder;
    double snr_scale = 0.0;
};

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    bool passed = false;
    double theta_floor = 0.0;  // k1 / ln(W k2)
    std::uint64_t num_pulse_positions = 0;  // N = round(W T_s)
    std::uint64_t num_positions = 0;        // M = round(W T_d)
    std::vector<ValidationCheck> checks;

    /// Names of the failed checks, comma separated.
    std::string failures() const;
};

/// Round half up to an unsigned count; negative or non-finite input is an error.
std::uint64_t round_half_up(double x);

/// Field-level errors (non-positive values, theta outside (0,1]) throw
/// ParameterError. Model constraints are reported, not thrown.
ValidationReport validate_physical(const PhysicalParams& p);

/// Per-path amplitude sqrt(E / (theta L)) straight from the physical inputs.
double physical_amplitude(const PhysicalParams& p, std::uint64_t num_paths);

/// M = round(W T_d), the given L, and k = E / (theta ln M) so that both
/// parameterizations yield the same amplitude. Throws if validation fails or M < 2.
CanonicalParams to_canonical(const PhysicalParams& p, std::uint64_t num_paths);

/// ceil(M^a), snapping to the nearest integer when M^a is integral up to rounding.
std::uint64_t paths_for_exponent(std::uint64_t num_positions, double exponent);

/// One CanonicalParams per ladder entry, in ladder order.
std::vector<CanonicalParams> expand_regime(const RegimeSpec& r);

}  // namespace ppmsync
