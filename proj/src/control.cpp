#include "esnfb/control.hpp"

#include <cmath>

#include "esnfb/error.hpp"

namespace esnfb {

void validate(const PdGains& gains) {
    if (!(gains.k_p >= 0.0) || !std::isfinite(gains.k_p)) throw InvalidArgument("P gain must be non-negative");
    if (!(gains.k_d >= 0.0) || !std::isfinite(gains.k_d)) throw InvalidArgument("D gain must be non-negative");
}

std::string_view to_string(ControlMethod method) noexcept {
    switch (method) {
        case ControlMethod::EsnFb: return "esnfb";
        case ControlMethod::Esn: return "esn";
        case ControlMethod::Tesn: return "tesn";
        case ControlMethod::Fb: return "fb";
    }
    return "unknown";
}

std::optional<ControlMethod> parse_method(std::string_view name) noexcept {
    for (auto m : {ControlMethod::EsnFb, ControlMethod::Esn, ControlMethod::Tesn, ControlMethod::Fb})
        if (to_string(m) == name) return m;
    return std::nullopt;
}

double pd_output(const PdGains& gains, double e_tilde, double y_tilde_prev, double y_tilde_curr) noexcept {
    return gains.k_p * e_tilde + gains.k_d * (y_tilde_prev - y_tilde_curr);
}

double compose_output(ControlMethod method, double u_bar_prev, double u_f_curr, double u_f_prev,
                      double u_b_curr) noexcept {
    switch (method) {
        case ControlMethod::EsnFb: return u_bar_prev + u_f_curr - u_f_prev + u_b_curr;
        case ControlMethod::Esn:
        case ControlMethod::Tesn: return u_f_curr;
        case ControlMethod::Fb: return u_bar_prev + u_b_curr;
    }
    return 0.0;
}

double saturate(double u) noexcept {
    return u > 0.0 ? u : 0.0;
}

}  // namespace esnfb
