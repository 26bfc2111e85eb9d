#include "spd/schedule.hpp"

#include <cmath>
#include <sstream>

#include "spd/error.hpp"

namespace spd {

namespace {

constexpr std::uint64_t kScreenTerms = 1'000'000;

void require_exponent(double rho, const char* name, const char* sum_name) {
    if (!std::isfinite(rho)) throw ScheduleError(std::string(name) + " must be finite");
    if (rho <= 0.5) throw ScheduleError(std::string("Σ") + sum_name + "² diverges (" + name + " <= 0.5)");
    if (rho > 1.0) throw ScheduleError(std::string("Σ") + sum_name + " converges (" + name + " > 1)");
}

void validate_power_law(const Schedule::PowerLaw& p) {
    require_exponent(p.rho_omega, "rho_omega", "ω_k");
    require_exponent(p.rho_alpha, "rho_alpha", "α_k");
    if (!(p.rho_alpha > p.rho_omega))
        throw ScheduleError("α_k/ω_k does not vanish (rho_alpha must exceed rho_omega)");
    if (!(p.alpha_scale > 0.0) || !std::isfinite(p.alpha_scale))
        throw ScheduleError("α_k must be positive (alpha_scale > 0)");
}

void screen_custom(const Schedule::Sequence& omega, const Schedule::Sequence& alpha) {
    if (!omega || !alpha) throw ScheduleError("custom schedule needs both sequences");
    if (omega(1) != 1.0) throw ScheduleError("ω_1 must equal 1");
    double prev_omega = 1.0;
    double prev_alpha = 0.0;
    for (std::uint64_t k = 1; k <= kScreenTerms; ++k) {
        const double w = omega(k);
        const double a = alpha(k);
        if (!(w > 0.0 && w <= 1.0)) throw ScheduleError("ω_k outside (0, 1] at k = " + std::to_string(k));
        if (!(a > 0.0) || !std::isfinite(a)) throw ScheduleError("α_k not positive at k = " + std::to_string(k));
        if (k >= 3 && w > prev_omega) throw ScheduleError("ω_k increases at k = " + std::to_string(k));
        if (k >= 2 && a > prev_alpha) throw ScheduleError("α_k increases at k = " + std::to_string(k));
        prev_omega = w;
        prev_alpha = a;
    }
    // Tail proxies. For a monotone sequence a_k, k*a_k -> 0 is necessary for
    // summability, so a tail that stays near its head level signals divergence.
    const double n = static_cast<double>(kScreenTerms);
    const double w2 = omega(2), wn = omega(kScreenTerms);
    const double a1 = alpha(1), an = alpha(kScreenTerms);
    if (n * wn < 0.5 * 2.0 * w2) throw ScheduleError("Σω_k appears to converge");
    if (n * wn * wn > 0.5 * 2.0 * w2 * w2) throw ScheduleError("Σω_k² appears to diverge");
    if (n * an < 0.5 * a1) throw ScheduleError("Σα_k appears to converge");
    if (n * an * an > 0.5 * a1 * a1) throw ScheduleError("Σα_k² appears to diverge");
    if (an / wn > 0.5 * alpha(2) / w2) throw ScheduleError("α_k/ω_k does not vanish");
}

void require_positive_k(std::uint64_t k) {
    if (k == 0) throw InvalidArgument("schedule index k must be >= 1");
}

}  // namespace

Schedule::Schedule() { validate_power_law(params_); }

Schedule Schedule::power_law(const PowerLaw& params) {
    validate_power_law(params);
    Schedule s;
    s.params_ = params;
    return s;
}

Schedule Schedule::custom(Sequence omega, Sequence alpha, std::string description) {
    screen_custom(omega, alpha);
    Schedule s;
    s.custom_omega_ = std::move(omega);
    s.custom_alpha_ = std::move(alpha);
    s.description_ = std::move(description);
    return s;
}

double Schedule::omega(std::uint64_t k) const {
    require_positive_k(k);
    if (custom_omega_) return custom_omega_(k);
    if (k == 1) return 1.0;
    return std::pow(static_cast<double>(k + params_.omega_offset), -params_.rho_omega);
}

double Schedule::alpha(std::uint64_t k) const {
    require_positive_k(k);
    if (custom_alpha_) return custom_alpha_(k);
    return params_.alpha_scale * std::pow(static_cast<double>(k + params_.alpha_offset), -params_.rho_alpha);
}

std::string Schedule::describe() const {
    if (custom_omega_) return description_;
    std::ostringstream os;
    os << "power-law(rho_omega=" << params_.rho_omega << ", rho_alpha=" << params_.rho_alpha
       << ", alpha_scale=" << params_.alpha_scale << ", omega_offset=" << params_.omega_offset
       << ", alpha_offset=" << params_.alpha_offset << ")";
    return os.str();
}

Schedule make_schedule(double rho_omega, double rho_alpha, double alpha_scale, std::uint64_t omega_offset,
                       std::uint64_t alpha_offset) {
    return Schedule::power_law({rho_omega, rho_alpha, alpha_scale, omega_offset, alpha_offset});
}

}  // namespace spd
