#include "hurwitz/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "hurwitz/arith.hpp"

namespace hurwitz {

Perm Perm::identity(size_t n) {
    std::vector<uint16_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Perm(std::move(v));
}

bool Perm::is_identity() const {
    for (size_t i = 0; i < img.size(); ++i)
        if (img[i] != i) return false;
    return true;
}

Perm Perm::operator*(const Perm& b) const {
    if (b.img.size() != img.size()) {
        size_t n = std::max(img.size(), b.img.size());
        return extended(n) * b.extended(n);
    }
    std::vector<uint16_t> out(img.size());
    for (size_t i = 0; i < img.size(); ++i) out[i] = img[b.img[i]];
    return Perm(std::move(out));
}

Perm Perm::inverse() const {
    std::vector<uint16_t> out(img.size());
    for (size_t i = 0; i < img.size(); ++i) out[img[i]] = static_cast<uint16_t>(i);
    return Perm(std::move(out));
}

long Perm::order() const {
    std::vector<bool> seen(img.size(), false);
    long result = 1;
    for (size_t i = 0; i < img.size(); ++i) {
        if (seen[i]) continue;
        long len = 0;
        for (size_t j = i; !seen[j]; j = img[j]) {
            seen[j] = true;
            ++len;
        }
        result = lcm_l(result, len);
    }
    return result;
}

Perm Perm::extended(size_t n) const {
    Perm p = *this;
    for (size_t i = p.img.size(); i < n; ++i) p.img.push_back(static_cast<uint16_t>(i));
    return p;
}

std::string Perm::cycles() const {
    std::string out;
    std::vector<bool> seen(img.size(), false);
    for (size_t i = 0; i < img.size(); ++i) {
        if (seen[i] || img[i] == i) continue;
        out += "(";
        bool first = true;
        for (size_t j = i; !seen[j]; j = img[j]) {
            seen[j] = true;
            if (!first) out += " ";
            out += std::to_string(j + 1);
            first = false;
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

size_t PermHash::operator()(const Perm& p) const noexcept {
    size_t h = 1469598103934665603ull;
    for (uint16_t x : p.img) {
        h ^= x;
        h *= 1099511628211ull;
    }
    return h;
}

Perm parse_cycles(const std::string& text, size_t degree) {
    std::vector<std::vector<long>> cycles;
    long max_point = 0;
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw DomainError("cycle_syntax", why + " in '" + text + "'");
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c != '(') fail("expected '('");
        ++i;
        std::vector<long> cyc;
        while (true) {
            while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
            if (i >= text.size()) fail("unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a point");
            long v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                if (v > 65535) fail("point too large");
                ++i;
            }
            if (v < 1) fail("points are 1-based");
            cyc.push_back(v);
            max_point = std::max(max_point, v);
        }
        cycles.push_back(std::move(cyc));
    }
    size_t n = std::max<size_t>(degree, static_cast<size_t>(max_point));
    if (degree != 0 && static_cast<size_t>(max_point) > degree) fail("point exceeds degree");
    Perm result = Perm::identity(n);
    // Cycles compose right to left, as in (a)(b) = a*b.
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
        const auto& cyc = *it;
        std::vector<long> seen = cyc;
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) fail("repeated point in a cycle");
        Perm c = Perm::identity(n);
        for (size_t k = 0; k < cyc.size(); ++k)
            c.img[cyc[k] - 1] = static_cast<uint16_t>(cyc[(k + 1) % cyc.size()] - 1);
        result = c * result;
    }
    return result;
}

}  // namespace hurwitz
