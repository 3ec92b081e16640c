#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "watlab/lattice.hpp"

namespace watlab {

using cplx = std::complex<double>;

/// Grid resolution per axis; every entry a power of two.
using Resolution = std::vector<std::size_t>;

/// Tolerance on the grid sup norm when testing ||f||_inf <= 1.
inline constexpr double kSupNormSlack = 1e-12;
/// Default modulus tolerance for detecting the unit-modulus set.
inline constexpr double kDefaultUnitModulusTol = 1e-9;

struct SpectralTerm {
    LatticePoint index;
    cplx coefficient;
};

/// What the structure of a symbol says about E = {|f| = 1}, independent of
/// any grid.
enum class UnitModulusStructure {
    Full,   // |f| = 1 everywhere (inner functions, unimodular monomials)
    Empty,  // |f| < 1 everywhere
    Null,   // a set of measure zero (non-monomial trig polynomials)
};

/// A bounded function on T^d: either a finite Fourier series or one of the
/// built-in analytic families on the circle.
class TrigSymbol {
public:
    enum class Family { Spectrum, Blaschke, Constant };

    /// Zero coefficients are dropped; repeated indices are summed.
    static TrigSymbol from_spectrum(std::size_t dimension, std::vector<SpectralTerm> terms);
    /// Finite Blaschke product on T^1, one factor (z + a)/(1 + conj(a) z) per
    /// parameter. Each factor takes the value a at z = 0 and vanishes at -a.
    static TrigSymbol blaschke(std::vector<cplx> params);
    static TrigSymbol constant(std::size_t dimension, cplx value);

    Family family() const noexcept { return family_; }
    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<SpectralTerm>& spectrum() const noexcept { return terms_; }
    const std::vector<cplx>& blaschke_params() const noexcept { return params_; }
    cplx constant_value() const noexcept { return constant_; }

    /// Exact f^(0) from the symbol's definition.
    cplx mean_value() const;

    /// Pointwise value at x in [0,1)^d, computed directly from the
    /// definition with no lookup tables.
    cplx value_at(std::span<const double> x) const;

    UnitModulusStructure unit_modulus_structure(double tol = kDefaultUnitModulusTol) const;

    /// Smallest power-of-two resolution per axis that resolves the spectrum
    /// (2 max|xi_i| + 2); families return 2.
    Resolution nyquist_resolution() const;

    /// Range [lo, hi] of local frequencies of f along each axis: for finite
    /// spectra the extreme indices, for Blaschke products the range of the
    /// boundary phase derivative. f^n then has local frequencies in
    /// [n lo, n hi].
    std::vector<std::pair<double, double>> frequency_envelope() const;

    std::string describe() const;

private:
    Family family_ = Family::Constant;
    std::size_t dimension_ = 1;
    std::vector<SpectralTerm> terms_;
    std::vector<cplx> params_;
    cplx constant_{1.0, 0.0};
};

/// Samples of a symbol on the uniform grid x_j = j / G (per axis), stored
/// row-major with the last axis fastest.
struct GridSampling {
    Resolution resolution;
    std::vector<cplx> samples;

    std::size_t size() const noexcept { return samples.size(); }
};

/// Approximation of E on a grid.
struct UnitModulusSet {
    std::vector<bool> mask;
    double tol = kDefaultUnitModulusTol;
    double measure = 0.0;
    std::size_t count = 0;
};

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;
std::size_t node_count(const Resolution& resolution);

/// Throws InvalidInput unless every axis is a power of two >= 2.
void validate_resolution(const Resolution& resolution, std::size_t dimension);

/// Rejects resolutions below the spectral Nyquist bound.
GridSampling evaluate_on_grid(const TrigSymbol& f, const Resolution& resolution);

/// Samples at x_j = (j + offset_i) / G_i; offsets are fractions of a cell.
/// Used where nodes must avoid zeros of f sitting at grid points.
GridSampling evaluate_on_shifted_grid(const TrigSymbol& f, const Resolution& resolution,
                                      std::span<const double> offsets);

/// Grid average of f e^{-2 pi i xi.x}; requires |xi_i| < G_i / 2.
cplx fourier_coefficient(const GridSampling& s, const LatticePoint& xi);

double sup_norm(const GridSampling& s) noexcept;

/// True iff every spectral index in S carries |coefficient| <= tol.
bool vanishing_on_halfspace(const TrigSymbol& f, const HalfSpace& S, double tol);

/// Mask of nodes with ||f(x)| - 1| <= tol and the fraction of marked nodes.
UnitModulusSet unit_modulus_set(const GridSampling& s, double tol);

/// unit_modulus_set, emptied when the symbol's structure says E is null or
/// empty: a grid can only catch isolated nodes of a measure-zero set, and
/// those must not be weighted as cells.
UnitModulusSet effective_unit_modulus_set(const TrigSymbol& f, const GridSampling& s, double tol);

/// Exact e^{2 pi i j / G}: quarter turns are reproduced exactly.
class UnitRoots {
public:
    explicit UnitRoots(std::size_t order);
    std::size_t order() const noexcept { return order_; }
    cplx operator()(std::int64_t j) const noexcept {
        auto m = static_cast<std::size_t>(j & static_cast<std::int64_t>(order_ - 1));
        return table_[m];
    }

private:
    std::size_t order_;
    std::vector<cplx> table_;
};

/// Maps flat node indices to phases: phase(xi, j) = sum_i xi_i j_i (Gmax/G_i)
/// modulo Gmax, so e^{2 pi i xi.x_j} = roots(phase).
class GridIndexer {
public:
    explicit GridIndexer(Resolution resolution);
    const Resolution& resolution() const noexcept { return resolution_; }
    std::size_t size() const noexcept { return size_; }
    std::size_t max_order() const noexcept { return max_order_; }
    std::vector<std::size_t> multi_index(std::size_t flat) const;
    std::int64_t phase(const LatticePoint& xi, std::size_t flat) const;
    /// Node coordinates j_i / G_i.
    std::vector<double> coordinates(std::size_t flat) const;

private:
    Resolution resolution_;
    std::size_t size_;
    std::size_t max_order_;
};

}  // namespace watlab
