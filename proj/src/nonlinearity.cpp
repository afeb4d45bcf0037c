#include <cmath>

#include "heatobs/dynamics.hpp"
#include "heatobs/error.hpp"

namespace heatobs {

std::string to_string(NonlinearityKind k) {
    switch (k) {
    case NonlinearityKind::zero: return "zero";
    case NonlinearityKind::power_odd: return "power_odd";
    case NonlinearityKind::bounded_lipschitz: return "bounded_lipschitz";
    }
    return "zero";
}

NonlinearityKind nonlinearity_kind_from_string(const std::string& s) {
    if (s == "zero") return NonlinearityKind::zero;
    if (s == "power_odd") return NonlinearityKind::power_odd;
    if (s == "bounded_lipschitz") return NonlinearityKind::bounded_lipschitz;
    fail(ErrorKind::InvalidParameter, "unknown nonlinearity kind '" + s + "'");
}

double NonlinearitySpec::operator()(double y) const noexcept {
    switch (kind) {
    case NonlinearityKind::zero: return 0.0;
    case NonlinearityKind::power_odd: return lambda * std::pow(std::abs(y), p - 1.0) * y;
    case NonlinearityKind::bounded_lipschitz: return lambda * std::sin(y);
    }
    return 0.0;
}

double NonlinearitySpec::derivative(double y) const noexcept {
    switch (kind) {
    case NonlinearityKind::zero: return 0.0;
    case NonlinearityKind::power_odd: return lambda * p * std::pow(std::abs(y), p - 1.0);
    case NonlinearityKind::bounded_lipschitz: return lambda * std::cos(y);
    }
    return 0.0;
}

void validate(const NonlinearitySpec& f) {
    require(std::isfinite(f.lambda), ErrorKind::InvalidParameter, "coupling must be finite");
    if (f.kind == NonlinearityKind::power_odd)
        require(std::isfinite(f.p) && f.p > 1.0, ErrorKind::InvalidParameter, "power_odd needs exponent p > 1");
}

void require_subcritical_exponent(const NonlinearitySpec& f, int n) {
    if (f.kind != NonlinearityKind::power_odd) return;
    const double limit = 1.0 + 4.0 / static_cast<double>(n);
    require(f.p < limit, ErrorKind::ExponentOutOfRange,
            "exponent p=" + std::to_string(f.p) + " must be below 1+4/n=" + std::to_string(limit));
}

double lipschitz_on_ball(const NonlinearitySpec& f, double M) {
    require(M >= 0.0, ErrorKind::InvalidParameter, "ball radius must be >= 0");
    switch (f.kind) {
    case NonlinearityKind::zero: return 0.0;
    case NonlinearityKind::power_odd: return std::abs(f.lambda) * f.p * std::pow(M, f.p - 1.0);
    // |cos| reaches 1 at s = 0, which every ball contains
    case NonlinearityKind::bounded_lipschitz: return std::abs(f.lambda);
    }
    return 0.0;
}

}  // namespace heatobs
