#pragma once

#include "koiso/covariant.hpp"
#include "koiso/lie_eigen.hpp"
#include "koiso/monte_carlo.hpp"
#include "koiso/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace koiso {

/// The closed list of verified identities. Integral tags relate an L^2
/// pairing to a multiple of int f^3 dV; pointwise tags hold at every chart
/// point; f3_closed is the exact evaluation of int f_gamma^3 itself.
enum class IdentityId {
    trace_free,
    codifferential_free,
    hess_f_ip,
    hess_cube,
    koi_hess_id,
    rough_laplacian_hess,
    dhess_1,
    dhess_2,
    notkoi_4d,
    f3_closed,
};

enum class IdentityKind { Pointwise, Integral, Exact };

enum class CheckMethod { Closed, MonteCarlo, Pointwise };

struct IdentityInfo {
    IdentityId id;
    std::string_view name;
    IdentityKind kind;
    /// real-coordinate pairing = riem_factor * complex-coordinate pairing
    /// (0 where not applicable)
    int riem_factor;
    std::string_view statement;
};

std::span<const IdentityInfo> identity_table();
const IdentityInfo& identity_info(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);
std::string_view method_name(CheckMethod m);

struct CheckConfig {
    std::uint64_t samples = 200000;
    std::uint64_t seed = 1;
    int partitions = 1;
    int threads = 0;

    double mc_sigma = 3.0;   // |lhs - rhs| <= mc_sigma * std_error
    double mc_rel = 0.02;    // and relative error <= mc_rel (waived when rhs == 0)
    double pointwise_rel = 1e-4;          // engine-evaluated pointwise checks
    double closed_pointwise_rel = 1e-10;  // closed-form pointwise checks
    int pointwise_points = 100;

    /// Pointwise engine checks and MC integrands use f_gamma by default;
    /// with eta_random set they draw a seeded random eta instead.
    bool eta_random = false;
    std::uint64_t eta_seed = 7;
};

/// Either an exact rational multiple of a pi power or a float.
struct CheckValue {
    std::optional<ExactValue> exact;
    double value = 0.0;

    static CheckValue from_exact(ExactValue v);
    static CheckValue from_double(double v) { return CheckValue{std::nullopt, v}; }
};

struct CheckReport {
    IdentityId id{};
    int n = 0;
    CheckMethod method{};
    CheckValue lhs, rhs;
    double abs_err = 0.0;
    /// |lhs-rhs| / |rhs|; for pointwise checks the worst point's scaled
    /// error; absent when rhs == 0 (the sigma clause alone governs)
    std::optional<double> rel_err;
    std::optional<double> sigma;  // MC std error, when stochastic
    bool pass = false;
    std::string detail;
};

/// LHS/RHS of one identity. Closed method requires eta = gamma (the closed
/// forms exist only there) and yields exact values for integral tags.
std::pair<CheckValue, CheckValue> evaluate_identity_sides(IdentityId id, int n,
                                                          const TracelessHermitian& eta,
                                                          CheckMethod method,
                                                          const CheckConfig& config);

/// Pointwise complex-coordinate integrand of an integral identity, built
/// from a derivative stack (the generic-eta Monte Carlo path). The
/// complex-to-real conversion factor is included. For closed gamma stacks
/// this agrees with the closed-form polynomial in |w|^2 to rounding.
double identity_integrand(IdentityId id, const DerivativeStack& stack);

/// Minimal stack order the integrand of `id` needs (1, 2, or 4).
int identity_stack_order(IdentityId id);

CheckReport check_identity(IdentityId id, int n, CheckMethod method, const CheckConfig& config);

/// Every tag x dimension x applicable method, in deterministic
/// (tag, n, method) order. Integral and exact tags run Closed always and
/// MonteCarlo when samples > 0; pointwise tags run Closed (closed-form
/// stack) and Pointwise (numeric-engine stack) when samples > 0.
std::vector<CheckReport> run_suite(std::span<const int> n_list, const CheckConfig& config);

}  // namespace koiso
