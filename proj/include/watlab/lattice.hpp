#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace watlab {

/// A point of Z^d.
class LatticePoint {
public:
    LatticePoint() = default;
    LatticePoint(std::initializer_list<std::int64_t> coords) : coords_(coords) {}
    explicit LatticePoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

    std::size_t dimension() const noexcept { return coords_.size(); }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }
    std::span<const std::int64_t> coords() const noexcept { return coords_; }

    bool is_zero() const noexcept;
    LatticePoint operator-() const;
    LatticePoint operator+(const LatticePoint& other) const;
    LatticePoint scaled(std::int64_t factor) const;

    /// Concatenation (x, y) in Z^{d1+d2}.
    static LatticePoint concat(const LatticePoint& head, const LatticePoint& tail);

    std::string to_string() const;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

private:
    std::vector<std::int64_t> coords_;
};

/// A half-space of lattice points realised as a signed lexicographic order:
/// xi is a member iff its first nonzero coordinate, scanning axes in
/// `axis_order` and multiplying axis a by `axis_sign[a]`, is positive. Such a set
/// excludes 0, contains exactly one of xi and -xi for xi != 0, and is
/// closed under addition.
class HalfSpace {
public:
    /// Natural axis order, all signs +1.
    explicit HalfSpace(std::size_t dimension);
    HalfSpace(std::vector<std::size_t> axis_order, std::vector<int> axis_sign);

    std::size_t dimension() const noexcept { return order_.size(); }
    const std::vector<std::size_t>& axis_order() const noexcept { return order_; }
    const std::vector<int>& axis_sign() const noexcept { return sign_; }

    /// Throws InvalidInput on dimension mismatch.
    bool contains(const LatticePoint& xi) const;

    /// -S = { -xi : xi in S }.
    HalfSpace reflect() const;

    friend bool operator==(const HalfSpace&, const HalfSpace&) = default;

private:
    std::vector<std::size_t> order_;
    std::vector<int> sign_;
};

/// Half-space T of Z^{d1+d2} containing S1 x Z^{d2} and {0} x S2: the
/// first block is compared under S1's order, ties broken by S2's.
HalfSpace product_halfspace(const HalfSpace& first, const HalfSpace& second);

/// Enumerates the window {-w..w}^d in lexicographic order.
std::vector<LatticePoint> window_points(std::size_t dimension, std::int64_t w);

}  // namespace watlab
