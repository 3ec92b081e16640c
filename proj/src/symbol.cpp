#include "watlab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "watlab/errors.hpp"
#include "watlab/summation.hpp"

namespace watlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx unit_phase(double turns) {
    // reduce to [0,1) before scaling so large arguments keep full accuracy
    double frac = turns - std::floor(turns);
    return std::polar(1.0, kTwoPi * frac);
}

cplx blaschke_value(const std::vector<cplx>& params, cplx z) {
    cplx out{1.0, 0.0};
    for (const cplx& a : params) out *= (z + a) / (1.0 + std::conj(a) * z);
    return out;
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) noexcept {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::size_t node_count(const Resolution& resolution) {
    std::size_t n = 1;
    for (std::size_t g : resolution) n *= g;
    return n;
}

void validate_resolution(const Resolution& resolution, std::size_t dimension) {
    if (resolution.size() != dimension)
        throw InvalidInput("resolution has " + std::to_string(resolution.size()) +
                           " axes, symbol has dimension " + std::to_string(dimension));
    for (std::size_t g : resolution)
        if (g < 2 || !is_power_of_two(g))
            throw InvalidInput("grid resolution " + std::to_string(g) +
                               " is not a power of two >= 2");
}

// ---------------------------------------------------------------------------
// TrigSymbol

TrigSymbol TrigSymbol::from_spectrum(std::size_t dimension, std::vector<SpectralTerm> terms) {
    if (dimension == 0) throw InvalidInput("symbol dimension must be positive");
    std::map<LatticePoint, cplx> merged;
    for (auto& t : terms) {
        if (t.index.dimension() != dimension)
            throw InvalidInput("spectral index " + t.index.to_string() +
                               " does not match dimension " + std::to_string(dimension));
        if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag()))
            throw InvalidInput("non-finite spectral coefficient at " + t.index.to_string());
        merged[t.index] += t.coefficient;
    }
    TrigSymbol f;
    f.family_ = Family::Spectrum;
    f.dimension_ = dimension;
    for (auto& [idx, c] : merged)
        if (c != cplx{0.0, 0.0}) f.terms_.push_back({idx, c});
    return f;
}

TrigSymbol TrigSymbol::blaschke(std::vector<cplx> params) {
    if (params.empty()) throw InvalidInput("Blaschke product needs at least one factor");
    for (const cplx& a : params)
        if (!(std::abs(a) < 1.0))
            throw InvalidInput("Blaschke parameter must satisfy |a| < 1");
    TrigSymbol f;
    f.family_ = Family::Blaschke;
    f.dimension_ = 1;
    f.params_ = std::move(params);
    return f;
}

TrigSymbol TrigSymbol::constant(std::size_t dimension, cplx value) {
    if (dimension == 0) throw InvalidInput("symbol dimension must be positive");
    TrigSymbol f;
    f.family_ = Family::Constant;
    f.dimension_ = dimension;
    f.constant_ = value;
    return f;
}

cplx TrigSymbol::mean_value() const {
    switch (family_) {
        case Family::Constant:
            return constant_;
        case Family::Blaschke: {
            cplx prod{1.0, 0.0};
            for (const cplx& a : params_) prod *= a;
            return prod;
        }
        case Family::Spectrum:
            for (const auto& t : terms_)
                if (t.index.is_zero()) return t.coefficient;
            return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

cplx TrigSymbol::value_at(std::span<const double> x) const {
    if (x.size() != dimension_) throw InvalidInput("evaluation point has wrong dimension");
    switch (family_) {
        case Family::Constant:
            return constant_;
        case Family::Blaschke:
            return blaschke_value(params_, unit_phase(x[0]));
        case Family::Spectrum: {
            cplx acc{0.0, 0.0};
            for (const auto& t : terms_) {
                double turns = 0.0;
                for (std::size_t i = 0; i < dimension_; ++i) {
                    double prod = static_cast<double>(t.index[i]) * x[i];
                    turns += prod - std::floor(prod);
                }
                acc += t.coefficient * unit_phase(turns);
            }
            return acc;
        }
    }
    return {0.0, 0.0};
}

UnitModulusStructure TrigSymbol::unit_modulus_structure(double tol) const {
    switch (family_) {
        case Family::Blaschke:
            return UnitModulusStructure::Full;
        case Family::Constant:
            return std::fabs(std::abs(constant_) - 1.0) <= tol ? UnitModulusStructure::Full
                                                                : UnitModulusStructure::Empty;
        case Family::Spectrum:
            if (terms_.empty()) return UnitModulusStructure::Empty;
            if (terms_.size() == 1)
                return std::fabs(std::abs(terms_[0].coefficient) - 1.0) <= tol
                           ? UnitModulusStructure::Full
                           : UnitModulusStructure::Empty;
            // 1 - |f|^2 is a nonnegative trig polynomial; vanishing on a set of
            // positive measure would force |f| = 1 identically, which only
            // monomials achieve.
            return UnitModulusStructure::Null;
    }
    return UnitModulusStructure::Null;
}

Resolution TrigSymbol::nyquist_resolution() const {
    Resolution out(dimension_, 2);
    if (family_ != Family::Spectrum) return out;
    for (std::size_t i = 0; i < dimension_; ++i) {
        std::int64_t m = 0;
        for (const auto& t : terms_) m = std::max<std::int64_t>(m, std::llabs(t.index[i]));
        out[i] = next_power_of_two(static_cast<std::size_t>(2 * m + 2));
    }
    return out;
}

std::vector<std::pair<double, double>> TrigSymbol::frequency_envelope() const {
    std::vector<std::pair<double, double>> env(dimension_, {0.0, 0.0});
    if (family_ == Family::Blaschke) {
        double lo = 0.0, hi = 0.0;
        for (const cplx& a : params_) {
            const double r = std::abs(a);
            lo += (1.0 - r) / (1.0 + r);
            hi += (1.0 + r) / (1.0 - r);
        }
        env[0] = {lo, hi};
    } else if (family_ == Family::Spectrum && !terms_.empty()) {
        for (std::size_t i = 0; i < dimension_; ++i) {
            double lo = static_cast<double>(terms_[0].index[i]);
            double hi = lo;
            for (const auto& t : terms_) {
                lo = std::min(lo, static_cast<double>(t.index[i]));
                hi = std::max(hi, static_cast<double>(t.index[i]));
            }
            env[i] = {lo, hi};
        }
    }
    return env;
}

std::string TrigSymbol::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (family_) {
        case Family::Constant:
            os << "constant(d=" << dimension_ << ", c=" << constant_ << ")";
            break;
        case Family::Blaschke:
            os << "blaschke(";
            for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
            os << ")";
            break;
        case Family::Spectrum:
            os << "spectrum(d=" << dimension_ << ";";
            for (const auto& t : terms_) os << " " << t.index.to_string() << ":" << t.coefficient;
            os << ")";
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Grid helpers

UnitRoots::UnitRoots(std::size_t order) : order_(order), table_(order) {
    if (!is_power_of_two(order)) throw InvalidInput("root table order must be a power of two");
    if (order < 4) {
        for (std::size_t j = 0; j < order; ++j)
            table_[j] = j == 0 ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
        return;
    }
    const std::size_t quarter = order / 4;
    for (std::size_t r = 0; r < quarter; ++r) {
        const cplx w = std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(order));
        table_[r] = w;
        table_[r + quarter] = {-w.imag(), w.real()};
        table_[r + 2 * quarter] = {-w.real(), -w.imag()};
        table_[r + 3 * quarter] = {w.imag(), -w.real()};
    }
}

GridIndexer::GridIndexer(Resolution resolution)
    : resolution_(std::move(resolution)), size_(node_count(resolution_)), max_order_(1) {
    for (std::size_t g : resolution_) max_order_ = std::max(max_order_, g);
}

std::vector<std::size_t> GridIndexer::multi_index(std::size_t flat) const {
    std::vector<std::size_t> j(resolution_.size());
    for (std::size_t i = resolution_.size(); i-- > 0;) {
        j[i] = flat % resolution_[i];
        flat /= resolution_[i];
    }
    return j;
}

std::int64_t GridIndexer::phase(const LatticePoint& xi, std::size_t flat) const {
    const auto mask = static_cast<std::int64_t>(max_order_ - 1);
    std::int64_t acc = 0;
    for (std::size_t i = resolution_.size(); i-- > 0;) {
        const auto j = static_cast<std::int64_t>(flat % resolution_[i]);
        flat /= resolution_[i];
        const auto scale = static_cast<std::int64_t>(max_order_ / resolution_[i]);
        acc = (acc + ((xi[i] & mask) * j % static_cast<std::int64_t>(max_order_)) * scale) & mask;
    }
    return acc;
}

std::vector<double> GridIndexer::coordinates(std::size_t flat) const {
    auto j = multi_index(flat);
    std::vector<double> x(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        x[i] = static_cast<double>(j[i]) / static_cast<double>(resolution_[i]);
    return x;
}

// ---------------------------------------------------------------------------
// Operations

GridSampling evaluate_on_grid(const TrigSymbol& f, const Resolution& resolution) {
    validate_resolution(resolution, f.dimension());
    const Resolution need = f.nyquist_resolution();
    for (std::size_t i = 0; i < resolution.size(); ++i)
        if (resolution[i] < need[i])
            throw InvalidInput("resolution " + std::to_string(resolution[i]) + " on axis " +
                               std::to_string(i) + " aliases the spectrum; need at least " +
                               std::to_string(need[i]));

    GridIndexer grid(resolution);
    UnitRoots roots(grid.max_order());
    GridSampling s{resolution, std::vector<cplx>(grid.size())};

    switch (f.family()) {
        case TrigSymbol::Family::Constant:
            std::fill(s.samples.begin(), s.samples.end(), f.constant_value());
            break;
        case TrigSymbol::Family::Blaschke: {
            std::vector<cplx> params = f.blaschke_params();
            for (std::size_t j = 0; j < grid.size(); ++j)
                s.samples[j] = blaschke_value(params, roots(static_cast<std::int64_t>(j)));
            break;
        }
        case TrigSymbol::Family::Spectrum:
            for (std::size_t j = 0; j < grid.size(); ++j) {
                cplx acc{0.0, 0.0};
                for (const auto& t : f.spectrum()) acc += t.coefficient * roots(grid.phase(t.index, j));
                s.samples[j] = acc;
            }
            break;
    }
    return s;
}

GridSampling evaluate_on_shifted_grid(const TrigSymbol& f, const Resolution& resolution,
                                      std::span<const double> offsets) {
    validate_resolution(resolution, f.dimension());
    if (offsets.size() != resolution.size()) throw InvalidInput("one offset per axis required");
    GridIndexer grid(resolution);
    GridSampling s{resolution, std::vector<cplx>(grid.size())};
    std::vector<double> x(resolution.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        auto idx = grid.multi_index(j);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = (static_cast<double>(idx[i]) + offsets[i]) / static_cast<double>(resolution[i]);
        s.samples[j] = f.value_at(x);
    }
    return s;
}

cplx fourier_coefficient(const GridSampling& s, const LatticePoint& xi) {
    if (xi.dimension() != s.resolution.size())
        throw InvalidInput("frequency dimension does not match grid");
    for (std::size_t i = 0; i < s.resolution.size(); ++i)
        if (2 * static_cast<std::size_t>(std::llabs(xi[i])) >= s.resolution[i])
            throw InvalidInput("frequency " + xi.to_string() + " is beyond the grid Nyquist limit");
    GridIndexer grid(s.resolution);
    UnitRoots roots(grid.max_order());
    const LatticePoint neg = -xi;
    CompensatedComplexSum acc;
    for (std::size_t j = 0; j < s.size(); ++j) acc += s.samples[j] * roots(grid.phase(neg, j));
    return acc.value() / static_cast<double>(s.size());
}

double sup_norm(const GridSampling& s) noexcept {
    double m = 0.0;
    for (const cplx& z : s.samples) m = std::max(m, std::abs(z));
    return m;
}

bool vanishing_on_halfspace(const TrigSymbol& f, const HalfSpace& S, double tol) {
    if (S.dimension() != f.dimension())
        throw InvalidInput("half-space dimension does not match symbol");
    switch (f.family()) {
        case TrigSymbol::Family::Constant:
            return true;
        case TrigSymbol::Family::Blaschke:
            // spectrum is {0, 1, 2, ...}; S avoids it iff S is the negative half-line
            return !S.contains(LatticePoint{1});
        case TrigSymbol::Family::Spectrum:
            for (const auto& t : f.spectrum())
                if (S.contains(t.index) && std::abs(t.coefficient) > tol) return false;
            return true;
    }
    return false;
}

UnitModulusSet unit_modulus_set(const GridSampling& s, double tol) {
    if (!(tol > 0.0)) throw InvalidInput("unit-modulus tolerance must be positive");
    UnitModulusSet e;
    e.tol = tol;
    e.mask.resize(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        const bool on = std::fabs(std::abs(s.samples[j]) - 1.0) <= tol;
        e.mask[j] = on;
        e.count += on ? 1 : 0;
    }
    e.measure = s.size() ? static_cast<double>(e.count) / static_cast<double>(s.size()) : 0.0;
    return e;
}

UnitModulusSet effective_unit_modulus_set(const TrigSymbol& f, const GridSampling& s, double tol) {
    UnitModulusSet e = unit_modulus_set(s, tol);
    if (f.unit_modulus_structure(tol) != UnitModulusStructure::Full) {
        std::fill(e.mask.begin(), e.mask.end(), false);
        e.count = 0;
        e.measure = 0.0;
    }
    return e;
}

}  // namespace watlab
