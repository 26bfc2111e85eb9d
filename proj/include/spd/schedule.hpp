#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace spd {

/// Diminishing step-size sequences for the tracker weight (omega) and the
/// proximal step (alpha).
///
/// The power-law family is
///
///     omega(1) = 1,  omega(k) = (k + omega_offset)^(-rho_omega)  for k >= 2
///     alpha(k) = c_alpha * (k + alpha_offset)^(-rho_alpha)
///
/// with rho_omega, rho_alpha in (0.5, 1] and rho_alpha > rho_omega. Under these
/// conditions both sequences have divergent sums and summable squares, and
/// alpha(k) / omega(k) -> 0. Every Schedule instance has been validated;
/// construction fails with ScheduleError otherwise. Immutable and shareable.
class Schedule {
public:
    struct PowerLaw {
        double rho_omega = 0.6;
        double rho_alpha = 0.9;
        double alpha_scale = 1.0;
        std::uint64_t omega_offset = 0;
        std::uint64_t alpha_offset = 0;
    };

    using Sequence = std::function<double(std::uint64_t)>;

    /// (0.6, 0.9, 1.0) with zero offsets.
    Schedule();

    static Schedule power_law(const PowerLaw& params);

    /// Arbitrary sequences. Screened on a 10^6-term prefix for omega(1) = 1,
    /// ranges, monotone tails, and crude proxies of the three summability
    /// conditions. The screen is heuristic: it can reject slowly converging
    /// valid sequences and cannot prove an asymptotic property.
    static Schedule custom(Sequence omega, Sequence alpha, std::string description = "custom");

    double omega(std::uint64_t k) const;
    double alpha(std::uint64_t k) const;

    bool is_power_law() const noexcept { return !custom_omega_; }
    const PowerLaw& params() const noexcept { return params_; }
    std::string describe() const;

private:
    PowerLaw params_;
    Sequence custom_omega_;
    Sequence custom_alpha_;
    std::string description_;
};

/// Validating constructor for the power-law family.
Schedule make_schedule(double rho_omega, double rho_alpha, double alpha_scale,
                       std::uint64_t omega_offset = 0, std::uint64_t alpha_offset = 0);

}  // namespace spd
