#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hurwitz {

/// A permutation of {0..N-1}; printed and parsed 1-based in cycle notation.
struct Perm {
    std::vector<uint16_t> img;

    Perm() = default;
    explicit Perm(std::vector<uint16_t> images) : img(std::move(images)) {}
    static Perm identity(size_t n);

    size_t degree() const { return img.size(); }
    bool is_identity() const;
    /// (a*b)(x) = a(b(x)).
    Perm operator*(const Perm& b) const;
    Perm inverse() const;
    long order() const;
    Perm extended(size_t n) const;
    std::string cycles() const;

    bool operator==(const Perm& o) const { return img == o.img; }
    bool operator<(const Perm& o) const { return img < o.img; }
};

struct PermHash {
    size_t operator()(const Perm& p) const noexcept;
};

/// Parses "(1 2 3)(4 5)" or "()" on `degree` points (0 = infer from the largest point).
Perm parse_cycles(const std::string& text, size_t degree = 0);

}  // namespace hurwitz
