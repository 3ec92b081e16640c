#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "watlab/lattice.hpp"
#include "watlab/symbol.hpp"

namespace watlab {

/// b_{n,n-k} = integral over E of f(x)^n e^{-2 pi i (n-k) nu.x} dx for
/// n in [n_min, n_max] and k in [-k_max, k_max].
///
/// Rows with n < 0 use f^n := conj(f)^{|n|} on E (|f| = 1 there), so that
/// b_{-n,-n-k} = conj(b_{n,n+k}).
struct DiagonalTable {
    LatticePoint nu;
    std::int64_t n_min = 0;
    std::int64_t n_max = 0;
    std::int64_t k_max = 0;
    std::vector<cplx> values;  // row-major: (n - n_min) * (2 k_max + 1) + (k + k_max)

    Resolution resolution;
    double tol_e = kDefaultUnitModulusTol;
    double measure_e = 0.0;   // measure of E used for the table; 0 when degenerate
    bool degenerate = false;  // E has measure zero; every entry is exactly 0
    bool resolved = true;     // characters and powers resolved by the grid
    std::string symbol_id;    // opaque tag set by the caller (hash of the symbol spec)

    std::size_t row_width() const noexcept { return static_cast<std::size_t>(2 * k_max + 1); }
    bool has(std::int64_t n, std::int64_t k) const noexcept {
        return n >= n_min && n <= n_max && k >= -k_max && k <= k_max;
    }
    /// Throws InvalidInput when (n, k) is outside the table.
    cplx at(std::int64_t n, std::int64_t k) const;
    double abs2(std::int64_t n, std::int64_t k) const;
    double max_abs() const noexcept;
};

/// c_{n,beta}: Fourier coefficient beta of phi^n on the whole circle.
struct MatrixSlab {
    std::int64_t n_min = 0;
    std::int64_t n_max = 0;
    std::int64_t beta_min = 0;
    std::int64_t beta_max = 0;
    std::vector<cplx> values;
    std::size_t grid = 0;

    std::size_t row_width() const noexcept { return static_cast<std::size_t>(beta_max - beta_min + 1); }
    cplx at(std::int64_t n, std::int64_t beta) const;
    double row_energy(std::int64_t n) const;
};

struct TableRange {
    std::int64_t n_min = 1;
    std::int64_t n_max = 1;
    std::int64_t k_max = 0;
};

/// Smallest per-axis power-of-two grid for which the table kernel accepts
/// (nu, n, k) with |n| <= n_abs_max and |k| <= k_max. It is the larger of
/// 2 |nu_i| (n_abs_max + k_max) + 2 and a bound on the integrand's frequency
/// content: n |envelope - nu_i| + k_max |nu_i|, with a 5% + 32 guard band for
/// Blaschke products whose spectra are infinite but decay geometrically
/// beyond the envelope.
Resolution required_resolution(const TrigSymbol& f, const LatticePoint& nu,
                               std::int64_t n_abs_max, std::int64_t k_max);

struct TableOptions {
    /// When false the grid is taken as a discrete measure in its own right;
    /// the kernel then accepts any grid and marks the table unresolved.
    bool enforce_resolution = true;
};

/// Power iteration h_n = h_{n-1} u on E with u = f e^{-2 pi i nu.x} projected
/// to unit modulus, renormalised every step, so h_n = 1_E f^n e^{-2 pi i n nu.x}.
/// Each entry is the compensated, fixed-order grid average of h_n e^{2 pi i k nu.x}.
DiagonalTable compute_b_table(const TrigSymbol& f, const GridSampling& samples,
                              const UnitModulusSet& e, const LatticePoint& nu,
                              const TableRange& range, const TableOptions& options = {});

/// Convenience: samples f and detects E at the given grid first.
DiagonalTable compute_b_table(const TrigSymbol& f, const Resolution& resolution, double tol_e,
                              const LatticePoint& nu, const TableRange& range,
                              const TableOptions& options = {});

/// Requires a one-dimensional symbol whose spectrum avoids the negative
/// integers, n_min >= 0, and a grid resolving phi^n against every beta.
MatrixSlab compute_c_table(const TrigSymbol& phi, std::int64_t n_min, std::int64_t n_max,
                           std::int64_t beta_min, std::int64_t beta_max, std::size_t grid);

/// Direct quadrature of the defining integral: f evaluated afresh at every
/// node, raised to the n-th power pointwise, multiplied by the character.
cplx brute_force_b(const TrigSymbol& f, const LatticePoint& nu, std::int64_t n, std::int64_t k,
                   const Resolution& resolution, double tol_e = kDefaultUnitModulusTol);

// Table export: comment header (# key=value) followed by n,k,re,im,abs2 rows.
void write_table_csv(const DiagonalTable& table, std::ostream& os);
DiagonalTable read_table_csv(std::istream& is);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace watlab
