#pragma once

#include <string>

#include "json.hpp"
#include "qadic/qalgebra/element.hpp"

namespace qadic {

/// Canonical text: terms "coeff * word" joined by " + "; unit coefficients are omitted.
template <class C>
std::string to_text(const QElement<C>& e) {
    using traits = coeff_traits<C>;
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : e.terms()) {
        if (!out.empty()) out += " + ";
        std::string w = to_string(m);
        if (traits::equal(c, traits::one())) {
            out += w;
        } else {
            out += traits::to_string(c);
            if (w != "1") out += " * " + w;
        }
    }
    return out;
}

template <class C>
nlohmann::json to_json(const QElement<C>& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : e.terms()) {
        nlohmann::json t{{"j", m.j}, {"r", m.r}, {"i", m.i}, {"m0", m.m0}};
        if constexpr (coeff_traits<C>::exact) {
            t["re"] = c.re.str();
            t["im"] = c.im.str();
        } else {
            t["re"] = c.real();
            t["im"] = c.imag();
        }
        terms.push_back(std::move(t));
    }
    return nlohmann::json{{"terms", std::move(terms)}};
}

}  // namespace qadic
