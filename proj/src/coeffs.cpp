#include "watlab/coeffs.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "watlab/errors.hpp"
#include "watlab/summation.hpp"

namespace watlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// slack on |b| <= measure(E); the entries are averages of unit-modulus terms
constexpr double kEntryBoundSlack = 1e-12;

std::int64_t mod_pow2(std::int64_t a, std::size_t order) {
    return a & static_cast<std::int64_t>(order - 1);
}

// Neumaier accumulation in L independent lanes. Lane l only ever sees the
// terms with index = l (mod L), so the result does not depend on how the
// compiler schedules the lanes.
constexpr std::size_t kLanes = 8;

inline void lane_add(double* __restrict s, double* __restrict c, const double* __restrict x) {
    for (std::size_t l = 0; l < kLanes; ++l) {
        const double a = s[l], v = x[l];
        const double t = a + v;
        const bool ge = std::fabs(a) >= std::fabs(v);
        const double big = ge ? a : v;
        const double small = ge ? v : a;
        c[l] += (big - t) + small;
        s[l] = t;
    }
}

double lane_total(const double* s, const double* c) {
    CompensatedSum acc;
    for (std::size_t l = 0; l < kLanes; ++l) acc.add(s[l]);
    for (std::size_t l = 0; l < kLanes; ++l) acc.add(c[l]);
    return acc.value();
}

// One power step (h <- h u / |h u|) for a block of kLanes masked nodes,
// followed by the k-window sums of h e^{2 pi i k nu.x}. Accumulators are laid
// out as [slot][re s, re c, im s, im c][lane].
inline void block_step(bool advance, double* __restrict hr, double* __restrict hi,
                       const double* __restrict ur, const double* __restrict ui,
                       const double* __restrict c1r, const double* __restrict c1i,
                       const double* __restrict c0r, const double* __restrict c0i,
                       std::size_t width, double* __restrict acc) {
    if (advance) {
        for (std::size_t l = 0; l < kLanes; ++l) {
            const double a = hr[l] * ur[l] - hi[l] * ui[l];
            const double b = hr[l] * ui[l] + hi[l] * ur[l];
            const double inv = 1.0 / std::sqrt(a * a + b * b);
            hr[l] = a * inv;
            hi[l] = b * inv;
        }
    }
    alignas(64) double zr[kLanes], zi[kLanes];
    for (std::size_t l = 0; l < kLanes; ++l) {
        zr[l] = hr[l] * c0r[l] - hi[l] * c0i[l];
        zi[l] = hr[l] * c0i[l] + hi[l] * c0r[l];
    }
    for (std::size_t k = 0; k < width; ++k) {
        double* slot = acc + k * 4 * kLanes;
        lane_add(slot, slot + kLanes, zr);
        lane_add(slot + 2 * kLanes, slot + 3 * kLanes, zi);
        for (std::size_t l = 0; l < kLanes; ++l) {
            const double tr = zr[l] * c1r[l] - zi[l] * c1i[l];
            const double ti = zr[l] * c1i[l] + zi[l] * c1r[l];
            zr[l] = tr;
            zi[l] = ti;
        }
    }
}

void check_range(const TableRange& r) {
    if (r.n_min > r.n_max) throw InvalidInput("table n range is empty");
    if (r.k_max < 0) throw InvalidInput("k window must be nonnegative");
}

}  // namespace

// ---------------------------------------------------------------------------
// DiagonalTable / MatrixSlab

cplx DiagonalTable::at(std::int64_t n, std::int64_t k) const {
    if (!has(n, k))
        throw InvalidInput("entry (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                           ") is outside the table");
    return values[static_cast<std::size_t>(n - n_min) * row_width() +
                  static_cast<std::size_t>(k + k_max)];
}

double DiagonalTable::abs2(std::int64_t n, std::int64_t k) const { return std::norm(at(n, k)); }

double DiagonalTable::max_abs() const noexcept {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

cplx MatrixSlab::at(std::int64_t n, std::int64_t beta) const {
    if (n < n_min || n > n_max || beta < beta_min || beta > beta_max)
        throw InvalidInput("slab entry out of range");
    return values[static_cast<std::size_t>(n - n_min) * row_width() +
                  static_cast<std::size_t>(beta - beta_min)];
}

double MatrixSlab::row_energy(std::int64_t n) const {
    CompensatedSum acc;
    for (std::int64_t b = beta_min; b <= beta_max; ++b) acc.add(std::norm(at(n, b)));
    return acc.value();
}

// ---------------------------------------------------------------------------

Resolution required_resolution(const TrigSymbol& f, const LatticePoint& nu,
                               std::int64_t n_abs_max, std::int64_t k_max) {
    if (nu.dimension() != f.dimension()) throw InvalidInput("nu has the wrong dimension");
    const auto env = f.frequency_envelope();
    const bool guard = f.family() == TrigSymbol::Family::Blaschke;
    Resolution out(f.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = static_cast<double>(nu[i]);
        const double n = static_cast<double>(n_abs_max);
        const double k = static_cast<double>(k_max);
        const double by_character = 2.0 * std::fabs(v) * (n + k) + 2.0;
        double spread = n * std::max(std::fabs(env[i].second - v), std::fabs(env[i].first - v));
        if (guard) spread = std::ceil(1.05 * spread) + 32.0;
        const double by_band = spread + k * std::fabs(v) + 1.0;
        out[i] = next_power_of_two(static_cast<std::size_t>(std::ceil(std::max({by_character, by_band, 2.0}))));
    }
    return out;
}

DiagonalTable compute_b_table(const TrigSymbol& f, const GridSampling& samples,
                              const UnitModulusSet& e, const LatticePoint& nu,
                              const TableRange& range, const TableOptions& options) {
    check_range(range);
    validate_resolution(samples.resolution, f.dimension());
    if (nu.dimension() != f.dimension()) throw InvalidInput("nu has the wrong dimension");
    if (e.mask.size() != samples.size()) throw InvalidInput("E mask is not aligned with the grid");

    const std::int64_t n_abs_max = std::max(std::llabs(range.n_min), std::llabs(range.n_max));
    if (options.enforce_resolution) {
        const Resolution need = required_resolution(f, nu, n_abs_max, range.k_max);
        for (std::size_t i = 0; i < need.size(); ++i)
            if (samples.resolution[i] < need[i])
                throw InvalidInput("grid " + std::to_string(samples.resolution[i]) + " on axis " +
                                   std::to_string(i) + " does not resolve n up to " +
                                   std::to_string(n_abs_max) + " with |k| <= " +
                                   std::to_string(range.k_max) + "; required resolution is " +
                                   std::to_string(need[i]));
    }

    DiagonalTable table;
    table.nu = nu;
    table.n_min = range.n_min;
    table.n_max = range.n_max;
    table.k_max = range.k_max;
    table.resolution = samples.resolution;
    table.tol_e = e.tol;
    table.measure_e = e.measure;
    table.resolved = options.enforce_resolution;
    const std::size_t width = table.row_width();
    table.values.assign(static_cast<std::size_t>(range.n_max - range.n_min + 1) * width, cplx{});

    const UnitModulusStructure structure = f.unit_modulus_structure(e.tol);
    if (e.count == 0 || structure != UnitModulusStructure::Full) {
        table.degenerate = true;
        table.measure_e = 0.0;
        return table;
    }

    GridIndexer grid(samples.resolution);
    UnitRoots roots(grid.max_order());

    constexpr std::size_t L = kLanes;
    const std::size_t count = e.count;
    const std::size_t padded = (count + L - 1) / L * L;
    // Padding lanes carry h = u = 1 and zero characters so they add exact zeros.
    std::vector<double> hr(padded, 1.0), hi(padded, 0.0), ur(padded, 1.0), ui(padded, 0.0);
    std::vector<double> c1r(padded, 0.0), c1i(padded, 0.0), c0r(padded, 0.0), c0i(padded, 0.0);
    {
        std::size_t m = 0;
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (!e.mask[j]) continue;
            const std::int64_t p = grid.phase(nu, j);
            const cplx fv = samples.samples[j] / std::abs(samples.samples[j]);
            const cplx u = fv * roots(-p);
            ur[m] = u.real();
            ui[m] = u.imag();
            const cplx c1 = roots(p);
            const cplx c0 = roots(-range.k_max * p);
            c1r[m] = c1.real();
            c1i[m] = c1.imag();
            c0r[m] = c0.real();
            c0i[m] = c0.imag();
            ++m;
        }
    }

    const double inv_nodes = 1.0 / static_cast<double>(samples.size());
    std::vector<cplx> row(width);

    auto store = [&](std::int64_t n) {
        if (n >= range.n_min && n <= range.n_max) {
            auto base = static_cast<std::size_t>(n - range.n_min) * width;
            for (std::size_t c = 0; c < width; ++c) table.values[base + c] = row[c];
        }
        const std::int64_t neg = -n;
        if (n != 0 && neg >= range.n_min && neg <= range.n_max) {
            auto base = static_cast<std::size_t>(neg - range.n_min) * width;
            for (std::size_t c = 0; c < width; ++c) table.values[base + c] = std::conj(row[width - 1 - c]);
        }
    };

    std::vector<double> acc(width * 4 * L);
    for (std::int64_t n = 0; n <= n_abs_max; ++n) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t b = 0; b < padded; b += L)
            block_step(n > 0, hr.data() + b, hi.data() + b, ur.data() + b, ui.data() + b,
                       c1r.data() + b, c1i.data() + b, c0r.data() + b, c0i.data() + b, width,
                       acc.data());
        for (std::size_t k = 0; k < width; ++k) {
            const double* slot = acc.data() + k * 4 * L;
            row[k] = cplx{lane_total(slot, slot + L), lane_total(slot + 2 * L, slot + 3 * L)} * inv_nodes;
        }
        store(n);
    }

    if (table.max_abs() > table.measure_e + kEntryBoundSlack)
        throw std::logic_error("table entry exceeds measure(E); kernel bug");
    return table;
}

DiagonalTable compute_b_table(const TrigSymbol& f, const Resolution& resolution, double tol_e,
                              const LatticePoint& nu, const TableRange& range,
                              const TableOptions& options) {
    GridSampling s = evaluate_on_grid(f, resolution);
    UnitModulusSet e = unit_modulus_set(s, tol_e);
    return compute_b_table(f, s, e, nu, range, options);
}

MatrixSlab compute_c_table(const TrigSymbol& phi, std::int64_t n_min, std::int64_t n_max,
                           std::int64_t beta_min, std::int64_t beta_max, std::size_t grid_size) {
    if (phi.dimension() != 1) throw InvalidInput("composition matrices need a symbol on T^1");
    if (!vanishing_on_halfspace(phi, HalfSpace({0}, {-1}), 0.0))
        throw InvalidInput("composition symbol must be analytic (no negative frequencies)");
    if (n_min < 0 || n_min > n_max) throw InvalidInput("c-table rows need 0 <= n_min <= n_max");
    if (beta_min > beta_max) throw InvalidInput("c-table column range is empty");

    const auto env = phi.frequency_envelope()[0];
    double hi = static_cast<double>(n_max) * env.second;
    if (phi.family() == TrigSymbol::Family::Blaschke) hi = std::ceil(1.05 * hi) + 32.0;
    const double lo = static_cast<double>(n_min) * env.first;
    const double band = std::max({hi - static_cast<double>(beta_min),
                                  static_cast<double>(beta_max) - lo,
                                  2.0 * static_cast<double>(std::max(std::llabs(beta_min), std::llabs(beta_max)))});
    if (static_cast<double>(grid_size) <= band)
        throw InvalidInput("grid " + std::to_string(grid_size) +
                           " does not resolve the requested composition-matrix block; need more than " +
                           std::to_string(static_cast<std::size_t>(band)));

    GridSampling s = evaluate_on_grid(phi, Resolution{grid_size});
    UnitRoots roots(grid_size);

    MatrixSlab slab;
    slab.n_min = n_min;
    slab.n_max = n_max;
    slab.beta_min = beta_min;
    slab.beta_max = beta_max;
    slab.grid = grid_size;
    slab.values.assign(static_cast<std::size_t>(n_max - n_min + 1) * slab.row_width(), cplx{});

    std::vector<cplx> power(grid_size, cplx{1.0, 0.0});
    const double inv = 1.0 / static_cast<double>(grid_size);
    for (std::int64_t n = 0; n <= n_max; ++n) {
        if (n > 0)
            for (std::size_t j = 0; j < grid_size; ++j) power[j] *= s.samples[j];
        if (n < n_min) continue;
        for (std::int64_t b = beta_min; b <= beta_max; ++b) {
            CompensatedComplexSum acc;
            for (std::size_t j = 0; j < grid_size; ++j)
                acc += power[j] * roots(-b * static_cast<std::int64_t>(j));
            slab.values[static_cast<std::size_t>(n - n_min) * slab.row_width() +
                        static_cast<std::size_t>(b - beta_min)] = acc.value() * inv;
        }
    }
    for (std::int64_t n = n_min; n <= n_max; ++n)
        if (slab.row_energy(n) > 1.0 + 1e-9)
            throw std::logic_error("composition-matrix row energy exceeds one; kernel bug");
    return slab;
}

cplx brute_force_b(const TrigSymbol& f, const LatticePoint& nu, std::int64_t n, std::int64_t k,
                   const Resolution& resolution, double tol_e) {
    validate_resolution(resolution, f.dimension());
    if (nu.dimension() != f.dimension()) throw InvalidInput("nu has the wrong dimension");
    const std::int64_t freq = n - k;
    for (std::size_t i = 0; i < resolution.size(); ++i)
        if (2 * std::llabs(freq * nu[i]) >= static_cast<std::int64_t>(resolution[i]))
            throw InvalidInput("character (n-k) nu is beyond the Nyquist limit of the oracle grid");
    if (f.unit_modulus_structure(tol_e) != UnitModulusStructure::Full) return {0.0, 0.0};

    GridIndexer grid(resolution);
    const std::size_t order = grid.max_order();
    std::vector<double> x(resolution.size());
    std::vector<std::size_t> idx(resolution.size());
    CompensatedComplexSum acc;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (std::size_t i = resolution.size(), rest = j; i-- > 0;) {
            idx[i] = rest % resolution[i];
            rest /= resolution[i];
        }
        std::int64_t phase = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = static_cast<double>(idx[i]) / static_cast<double>(resolution[i]);
            const auto scale = static_cast<std::int64_t>(order / resolution[i]);
            phase = mod_pow2(phase + mod_pow2(freq * nu[i], order) * static_cast<std::int64_t>(idx[i]) % static_cast<std::int64_t>(order) * scale, order);
        }
        const cplx v = f.value_at(x);
        if (std::fabs(std::abs(v) - 1.0) > tol_e) continue;
        const cplx base = n >= 0 ? v : std::conj(v);
        const cplx power = std::pow(base, static_cast<double>(std::llabs(n)));
        const cplx character = std::polar(1.0, -kTwoPi * static_cast<double>(phase) / static_cast<double>(order));
        acc += power * character;
    }
    return acc.value() / static_cast<double>(grid.size());
}

// ---------------------------------------------------------------------------
// CSV

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf.data(), ptr);
}

namespace {

std::string join_ints(std::span<const std::int64_t> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InvalidInput("bad number in table: '" + s + "'");
    return v;
}

std::int64_t parse_int(const std::string& s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InvalidInput("bad integer in table: '" + s + "'");
    return v;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
    std::vector<std::int64_t> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(parse_int(tok));
    return out;
}

}  // namespace

void write_table_csv(const DiagonalTable& t, std::ostream& os) {
    std::vector<std::int64_t> grid(t.resolution.begin(), t.resolution.end());
    os << "# format=watlab-diagonal-table/1\n"
       << "# symbol_hash=" << t.symbol_id << "\n"
       << "# nu=" << join_ints(t.nu.coords()) << "\n"
       << "# grid=" << join_ints(grid) << "\n"
       << "# n_min=" << t.n_min << "\n"
       << "# n_max=" << t.n_max << "\n"
       << "# k_max=" << t.k_max << "\n"
       << "# tol_e=" << format_double(t.tol_e) << "\n"
       << "# measure_e=" << format_double(t.measure_e) << "\n"
       << "# degenerate=" << (t.degenerate ? "true" : "false") << "\n"
       << "# resolved=" << (t.resolved ? "true" : "false") << "\n"
       << "# negative_n=conjugate-power\n"
       << "n,k,re,im,abs2\n";
    for (std::int64_t n = t.n_min; n <= t.n_max; ++n)
        for (std::int64_t k = -t.k_max; k <= t.k_max; ++k) {
            const cplx v = t.at(n, k);
            os << n << ',' << k << ',' << format_double(v.real()) << ',' << format_double(v.imag())
               << ',' << format_double(std::norm(v)) << '\n';
        }
}

DiagonalTable read_table_csv(std::istream& is) {
    DiagonalTable t;
    std::string line;
    bool have_header = false;
    std::vector<std::int64_t> grid;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(2, eq - 2);
            std::string val = line.substr(eq + 1);
            if (key == "symbol_hash") t.symbol_id = val;
            else if (key == "nu") t.nu = LatticePoint(parse_ints(val));
            else if (key == "grid") grid = parse_ints(val);
            else if (key == "n_min") t.n_min = parse_int(val);
            else if (key == "n_max") t.n_max = parse_int(val);
            else if (key == "k_max") t.k_max = parse_int(val);
            else if (key == "tol_e") t.tol_e = parse_double(val);
            else if (key == "measure_e") t.measure_e = parse_double(val);
            else if (key == "degenerate") t.degenerate = val == "true";
            else if (key == "resolved") t.resolved = val == "true";
            continue;
        }
        if (!have_header) {
            if (line != "n,k,re,im,abs2") throw InvalidInput("table CSV is missing its column header");
            have_header = true;
            if (t.n_min > t.n_max || t.k_max < 0) throw InvalidInput("table CSV header has an empty range");
            t.values.assign(static_cast<std::size_t>(t.n_max - t.n_min + 1) * t.row_width(), cplx{});
            continue;
        }
        std::array<std::string, 5> cols;
        std::istringstream ls(line);
        for (auto& c : cols)
            if (!std::getline(ls, c, ',')) throw InvalidInput("short row in table CSV: " + line);
        const std::int64_t n = parse_int(cols[0]);
        const std::int64_t k = parse_int(cols[1]);
        if (!t.has(n, k)) throw InvalidInput("row outside declared table range: " + line);
        t.values[static_cast<std::size_t>(n - t.n_min) * t.row_width() + static_cast<std::size_t>(k + t.k_max)] =
            cplx{parse_double(cols[2]), parse_double(cols[3])};
    }
    if (!have_header) throw InvalidInput("table CSV has no data header");
    for (auto g : grid) t.resolution.push_back(static_cast<std::size_t>(g));
    return t;
}

}  // namespace watlab
