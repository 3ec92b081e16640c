#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "watlab/coeffs.hpp"
#include "watlab/iterlog.hpp"
#include "watlab/lattice.hpp"
#include "watlab/symbol.hpp"

namespace watlab {

using ordered_json = nlohmann::ordered_json;

// Default tolerances.
inline constexpr double kBoundTol = 1e-9;          // inequality checks on tables
inline constexpr double kSzegoTol = 1e-6;          // log-integral quadrature
inline constexpr double kIdentityTol = 1e-10;      // |b|^2 against its double integral
inline constexpr double kQuadratureRelTol = 1e-8;  // adaptive quadrature
inline constexpr double kLogFloor = 1e-300;        // |f|, |F| clamped here inside logs

/// One verified inequality. pass == (lhs <= rhs + tolerance).
struct BoundReport {
    std::string check;
    ordered_json params = ordered_json::object();
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    double tolerance = 0.0;
    bool pass = false;
    ordered_json meta = ordered_json::object();

    ordered_json to_json() const;
};

BoundReport make_report(std::string check, ordered_json params, double lhs, double rhs,
                        double tolerance, ordered_json meta = ordered_json::object());

// -- Decay inequalities on a computed table ---------------------------------

struct SeriesOptions {
    bool positive_only = false;  // restrict to m >= 1
    double tolerance = kBoundTol;
};

/// sum over table rows m != N of |b_{m,m-k}|^2 / |m - N|, against C. The
/// report is a lower bound for the infinite series (nonnegative terms).
BoundReport check_weighted_series(const DiagonalTable& table, std::int64_t N, std::int64_t k,
                                  double C, const SeriesOptions& options = {});

/// (1/(p+1)) sum_{m=M}^{M+p} |b_{m,m-k}|^2 <= C / log(p+1).
BoundReport check_mean_bound_ii(const DiagonalTable& table, std::int64_t M, std::int64_t p,
                                std::int64_t k, double C, double tolerance = kBoundTol);

/// (int_1^{p+1} dt / (t g(t+gamma))) sum |b|^2 <= (C/(1-alpha)) (p+gamma)/g(p+gamma)
/// with g = L_q.
BoundReport check_mean_bound_iii(const DiagonalTable& table, int q, double alpha, double gamma,
                                 std::int64_t M, std::int64_t p, std::int64_t k, double C,
                                 double tolerance = kBoundTol);

/// Right-hand side of the iterated-log mean bound for (q, alpha_q, gamma_q).
double mean_bound_iv_rhs(double C, const IteratedLogParams& params, std::int64_t p);

/// The q = 1 form written out: (C/(1 - 1/log 3)) / (log(p+3) [log log(p+4) - log log 4]).
double mean_bound_q1_closed_form(double C, std::int64_t p);

/// (1/(p+gamma_q)) sum |b|^2 <= mean_bound_iv_rhs, params from find_constants(q).
BoundReport check_mean_bound_iv(const DiagonalTable& table, int q, std::int64_t M,
                                std::int64_t p, std::int64_t k, double C,
                                double tolerance = kBoundTol);

// -- Checks that sample the symbol ------------------------------------------

/// log|f^(0)| <= grid mean of log|f| (Helson-Lowdenslager / Szego) with f
/// sampled on a half-cell shifted grid so zeros at grid points are avoided.
BoundReport szego_check(const TrigSymbol& f, const HalfSpace& S, const Resolution& resolution,
                        double tolerance = kSzegoTol);

/// Double-grid quadrature of int int |log|F(x,y)|| with
/// F = e^{2 pi i nu.(x-y)} - r f(x) conj(f(y)), against log(4/(r |f^(0)|^2)).
BoundReport log_integral_bound_check(const TrigSymbol& f, const LatticePoint& nu, double r,
                                     const Resolution& resolution,
                                     double tol_e = kDefaultUnitModulusTol,
                                     double tolerance = kBoundTol);

/// |b_{n,n-k}|^2 from the table kernel against the double integral over E x E
/// of (f(x) conj f(y) e^{-2 pi i nu.(x-y)})^n e^{2 pi i k nu.(x-y)}, summed
/// pair by pair. The factorised product of single integrals is recorded too.
/// Report: lhs = |difference|, rhs = tolerance bound.
BoundReport identity_check(const TrigSymbol& f, const LatticePoint& nu, std::int64_t n,
                           std::int64_t k, const Resolution& resolution,
                           double tol_e = kDefaultUnitModulusTol,
                           double tolerance = kIdentityTol);

struct AbelReports {
    BoundReport agreement;      // |series - double integral| <= tail bound
    BoundReport partial_bound;  // series <= log(16 / (r^2 |f^(0)|^4))
};

/// sum_{n=1}^{n_trunc} (|b_{n+N,n+N-k}|^2 + |b_{-n+N,-n+N-k}|^2) r^n / n against
/// 2 int_E int_E w^N e^{2 pi i k nu.(x-y)} log(1/|F|), w = f(x) conj f(y) e^{-2 pi i nu.(x-y)}.
/// Both sides use the same grid, where the identity is exact up to the
/// geometric tail of the series.
AbelReports abel_series_check(const TrigSymbol& f, const LatticePoint& nu, std::int64_t N,
                              std::int64_t k, double r, std::int64_t n_trunc,
                              const Resolution& resolution,
                              double tol_e = kDefaultUnitModulusTol);

/// Returns H_p after asserting, for every m in [M, M+p], that
/// sum_{N in [M,M+p], N != m} 1/|m-N| >= H_p >= log(p+1). Throws
/// std::logic_error if either comparison fails.
double harmonic_block_bound(std::int64_t M, std::int64_t p);

/// Report form: lhs = log(p+1), rhs = min over m of the double-sided sum.
BoundReport check_harmonic_block(std::int64_t M, std::int64_t p);

/// For each x > gamma: 1/g(gamma) + int_0^{x-gamma} dt/g(t+gamma) < (1/(1-alpha)) x/g(x)
/// with g = L_q. Report: lhs = max ratio of the two sides, rhs = 1 - quadrature slack.
BoundReport cauchy_mvt_bound_check(int q, double alpha, double gamma,
                                   const std::vector<double>& x_samples);

/// int_1^{p+1} dt / (t L_q(t + gamma)), adaptive Gauss-Kronrod in log t.
double weighted_log_integral(int q, double gamma, double p);

}  // namespace watlab
