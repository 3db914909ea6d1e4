#pragma once

#include <memory>
#include <optional>
#include <random>

#include "hurwitz/datum.hpp"

namespace testsupport {

inline hurwitz::GroupPtr group(const std::string& name) {
    return std::make_shared<const hurwitz::Group>(hurwitz::Group::named(name));
}

/// Random datum with b entries drawn from the nontrivial elements; nullopt when the genus is not integral.
inline std::optional<hurwitz::HurwitzDatum> random_datum(const hurwitz::GroupPtr& g, long base_genus, long b,
                                                         std::mt19937& rng) {
    hurwitz::HurwitzDatum xi(g);
    if (g->order() > 1) {
        std::uniform_int_distribution<hurwitz::Elem> pick(1, static_cast<hurwitz::Elem>(g->order() - 1));
        for (long i = 0; i < b; ++i) xi.add(pick(rng));
    }
    try {
        hurwitz::genus_from_datum(base_genus, xi);
    } catch (const hurwitz::DomainError&) {
        return std::nullopt;
    }
    return xi;
}

/// Datum read off a random genus-0 tuple with product 1 generating G; nullopt if none found quickly.
inline std::optional<hurwitz::HurwitzDatum> random_realizable_datum(const hurwitz::GroupPtr& g, long b,
                                                                    std::mt19937& rng) {
    if (g->order() == 1 || b < 2) return std::nullopt;
    std::uniform_int_distribution<hurwitz::Elem> pick(1, static_cast<hurwitz::Elem>(g->order() - 1));
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<hurwitz::Elem> t;
        hurwitz::Elem p = 0;
        for (long i = 0; i + 1 < b; ++i) {
            t.push_back(pick(rng));
            p = g->mul(p, t.back());
        }
        t.push_back(g->inv(p));
        if (t.back() == 0 || g->generated(t).size() != g->order()) continue;
        hurwitz::HurwitzDatum xi(g);
        for (auto x : t) xi.add(x);
        return xi;
    }
    return std::nullopt;
}

}  // namespace testsupport
