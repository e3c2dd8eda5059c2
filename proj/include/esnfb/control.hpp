#pragma once

#include <optional>
#include <string_view>

namespace esnfb {

struct PdGains {
    double k_p = 1e-3;
    double k_d = 1e-5;

    friend bool operator==(const PdGains&, const PdGains&) = default;
};

// Throws InvalidArgument if either gain is negative or non-finite.
void validate(const PdGains& gains);

enum class ControlMethod {
    EsnFb,  // online ESN feedforward plus P-D feedback
    Esn,    // online ESN alone
    Tesn,   // online ESN alone, readout pre-trained on random inputs
    Fb,     // P-D feedback alone
};

std::string_view to_string(ControlMethod method) noexcept;
std::optional<ControlMethod> parse_method(std::string_view name) noexcept;

// K_P e + K_D (y_prev - y_curr), on the noisy measurements.
double pd_output(const PdGains& gains, double e_tilde, double y_tilde_prev, double y_tilde_curr) noexcept;

/**
 * Control output before saturation:
 *   EsnFb       u = u_bar[k-1] + u_f[k] - u_f[k-1] + u_b[k]
 *   Esn, Tesn   u = u_f[k]
 *   Fb          u = u_bar[k-1] + u_b[k]
 */
double compose_output(ControlMethod method, double u_bar_prev, double u_f_curr, double u_f_prev,
                      double u_b_curr) noexcept;

// 0.5 u (1 + sign u), with sign(0) = 0: passes positive inputs, zero otherwise.
double saturate(double u) noexcept;

}  // namespace esnfb
