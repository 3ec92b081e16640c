#include "watlab/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "watlab/errors.hpp"

namespace watlab {

bool LatticePoint::is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

LatticePoint LatticePoint::operator-() const { return scaled(-1); }

LatticePoint LatticePoint::operator+(const LatticePoint& other) const {
    if (other.dimension() != dimension())
        throw InvalidInput("lattice point dimension mismatch in addition");
    std::vector<std::int64_t> out(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i] + other.coords_[i];
    return LatticePoint(std::move(out));
}

LatticePoint LatticePoint::scaled(std::int64_t factor) const {
    std::vector<std::int64_t> out(coords_);
    for (auto& c : out) c *= factor;
    return LatticePoint(std::move(out));
}

LatticePoint LatticePoint::concat(const LatticePoint& head, const LatticePoint& tail) {
    std::vector<std::int64_t> out(head.coords_);
    out.insert(out.end(), tail.coords_.begin(), tail.coords_.end());
    return LatticePoint(std::move(out));
}

std::string LatticePoint::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(coords_[i]);
    }
    return s + ")";
}

HalfSpace::HalfSpace(std::size_t dimension) : order_(dimension), sign_(dimension, 1) {
    if (dimension == 0) throw InvalidInput("half-space dimension must be positive");
    std::iota(order_.begin(), order_.end(), std::size_t{0});
}

HalfSpace::HalfSpace(std::vector<std::size_t> axis_order, std::vector<int> axis_sign)
    : order_(std::move(axis_order)), sign_(std::move(axis_sign)) {
    if (order_.empty()) throw InvalidInput("half-space dimension must be positive");
    if (sign_.size() != order_.size())
        throw InvalidInput("axis_sign length must equal axis_order length");
    std::vector<std::size_t> sorted(order_);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i) throw InvalidInput("axis_order must be a permutation of 0..d-1");
    for (int s : sign_)
        if (s != 1 && s != -1) throw InvalidInput("axis_sign entries must be +1 or -1");
}

bool HalfSpace::contains(const LatticePoint& xi) const {
    if (xi.dimension() != dimension())
        throw InvalidInput("lattice point of dimension " + std::to_string(xi.dimension()) +
                           " tested against half-space of dimension " +
                           std::to_string(dimension()));
    for (std::size_t i = 0; i < order_.size(); ++i) {
        const std::size_t axis = order_[i];
        const std::int64_t c = xi[axis] * sign_[axis];
        if (c != 0) return c > 0;
    }
    return false;
}

HalfSpace HalfSpace::reflect() const {
    std::vector<int> flipped(sign_);
    for (auto& s : flipped) s = -s;
    return HalfSpace(order_, std::move(flipped));
}

HalfSpace product_halfspace(const HalfSpace& first, const HalfSpace& second) {
    const std::size_t d1 = first.dimension();
    std::vector<std::size_t> order(first.axis_order());
    std::vector<int> sign(first.axis_sign());
    for (std::size_t i = 0; i < second.dimension(); ++i) {
        order.push_back(second.axis_order()[i] + d1);
        sign.push_back(second.axis_sign()[i]);
    }
    return HalfSpace(std::move(order), std::move(sign));
}

std::vector<LatticePoint> window_points(std::size_t dimension, std::int64_t w) {
    std::vector<LatticePoint> out;
    std::vector<std::int64_t> cur(dimension, -w);
    if (dimension == 0 || w < 0) return out;
    while (true) {
        out.emplace_back(cur);
        std::size_t axis = dimension;
        while (axis > 0) {
            --axis;
            if (cur[axis] < w) {
                ++cur[axis];
                break;
            }
            cur[axis] = -w;
            if (axis == 0) return out;
        }
    }
}

}  // namespace watlab
