#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "modwij/bigint.hpp"
#include "modwij/cantor.hpp"
#include "modwij/piecewise_affine.hpp"

namespace modwij {

/// Declared properties of a modulus. These are claims made by the
/// constructor, not certificates; sampled checks can only refute them.
struct ModulusClaims {
    bool unbounded = false;
    bool concave = false;
    bool slowly_varying = false;
};

/// An evaluable modulus function on [0, infinity). Immutable after
/// construction; cheap to copy and safe to evaluate concurrently.
class Modulus {
public:
    Modulus(std::string name, std::function<double(double)> eval, ModulusClaims claims,
            std::shared_ptr<const PiecewiseAffine> exact = nullptr,
            std::optional<double> linear_coeff = std::nullopt)
        : name_(std::move(name)),
          eval_(std::move(eval)),
          claims_(claims),
          exact_(std::move(exact)),
          linear_coeff_(linear_coeff) {}

    double operator()(double x) const {
        if (!(x >= 0)) throw std::domain_error("modulus '" + name_ + "': negative argument");
        return eval_(x);
    }

    const std::string& name() const { return name_; }
    const ModulusClaims& claims() const { return claims_; }

    bool has_exact_form() const { return exact_ != nullptr; }
    const PiecewiseAffine& exact_form() const {
        if (!exact_) throw std::logic_error("modulus '" + name_ + "' has no exact form");
        return *exact_;
    }

    /// Exact value at an integer argument; requires an exact form.
    BigRat eval_exact(const BigInt& x) const {
        if (x < 0) throw std::domain_error("modulus '" + name_ + "': negative argument");
        return exact_form().eval_exact(x);
    }

    /// Set when the modulus is exactly x -> a*x; ratios of such moduli cancel
    /// exactly, which callers exploit to avoid rounding.
    std::optional<double> linear_coeff() const { return linear_coeff_; }
    bool is_linear() const { return linear_coeff_.has_value(); }

private:
    std::string name_;
    std::function<double(double)> eval_;
    ModulusClaims claims_;
    std::shared_ptr<const PiecewiseAffine> exact_;
    std::optional<double> linear_coeff_;
};

// ---- built-ins ----

inline Modulus identity_modulus() {
    return Modulus("id", [](double x) { return x; },
                   {.unbounded = true, .concave = true, .slowly_varying = false}, nullptr, 1.0);
}

inline Modulus scale_modulus(double a) {
    if (!(a > 0)) throw std::invalid_argument("scale: coefficient must be positive");
    return Modulus("scale(" + std::to_string(a) + ")", [a](double x) { return a * x; },
                   {.unbounded = true, .concave = true, .slowly_varying = false}, nullptr, a);
}

inline Modulus power_modulus(double p) {
    if (!(p > 0 && p <= 1)) throw std::invalid_argument("pow: exponent must be in (0, 1]");
    return Modulus("pow(" + std::to_string(p) + ")", [p](double x) { return std::pow(x, p); },
                   {.unbounded = true, .concave = true, .slowly_varying = false});
}

inline Modulus log1p_modulus() {
    return Modulus("log1p", [](double x) { return std::log1p(x); },
                   {.unbounded = true, .concave = true, .slowly_varying = true});
}

inline Modulus extended_cantor_modulus() {
    return Modulus("cantor_ext", [](double x) { return extended_cantor(x); },
                   {.unbounded = true, .concave = false, .slowly_varying = false});
}

/// x / (1 + x): a bounded modulus, useful for exercising the unbounded-only
/// code paths' error handling.
inline Modulus bounded_ratio_modulus() {
    return Modulus("bounded_ratio", [](double x) { return x / (1.0 + x); },
                   {.unbounded = false, .concave = true, .slowly_varying = true});
}

// ---- combinators ----

inline Modulus compose_modulus(const Modulus& outer, const Modulus& inner) {
    ModulusClaims c{.unbounded = outer.claims().unbounded && inner.claims().unbounded,
                    .concave = outer.claims().concave && inner.claims().concave,
                    .slowly_varying = outer.claims().slowly_varying && inner.claims().slowly_varying};
    auto f = outer, g = inner;
    return Modulus("compose(" + outer.name() + "," + inner.name() + ")",
                   [f, g](double x) { return f(g(x)); }, c);
}

inline Modulus linear_combination(double a, const Modulus& m1, double b, const Modulus& m2) {
    if (!(a > 0) || !(b > 0))
        throw std::invalid_argument("lin: coefficients must be positive");
    ModulusClaims c{.unbounded = m1.claims().unbounded || m2.claims().unbounded,
                    .concave = m1.claims().concave && m2.claims().concave,
                    .slowly_varying = m1.claims().slowly_varying && m2.claims().slowly_varying};
    auto f = m1, g = m2;
    return Modulus("lin(" + std::to_string(a) + "," + m1.name() + "," + std::to_string(b) + "," +
                       m2.name() + ")",
                   [a, b, f, g](double x) { return a * f(x) + b * g(x); }, c);
}

inline Modulus max_modulus(const Modulus& m1, const Modulus& m2) {
    ModulusClaims c{.unbounded = m1.claims().unbounded || m2.claims().unbounded,
                    .concave = false,  // max need not preserve concavity
                    .slowly_varying = m1.claims().slowly_varying && m2.claims().slowly_varying};
    auto f = m1, g = m2;
    return Modulus("max(" + m1.name() + "," + m2.name() + ")",
                   [f, g](double x) { return std::max(f(x), g(x)); }, c);
}

enum class CombineKind { compose, linear, max };

inline Modulus combine(CombineKind kind, double a, double b, const Modulus& m1, const Modulus& m2) {
    switch (kind) {
        case CombineKind::compose: return compose_modulus(m1, m2);
        case CombineKind::linear: return linear_combination(a, m1, b, m2);
        case CombineKind::max: return max_modulus(m1, m2);
    }
    throw std::invalid_argument("combine: unknown kind");
}

}  // namespace modwij
