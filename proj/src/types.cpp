#include "sfft/types.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sfft {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::map<std::string, std::string, std::less<>> parse_fields(std::string_view text) {
    std::map<std::string, std::string, std::less<>> fields;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw std::invalid_argument("model: expected key=value, got '" + std::string(item) + "'");
        }
        fields.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    return fields;
}

double number_field(const std::map<std::string, std::string, std::less<>>& fields, std::string_view key,
                    double fallback) {
    const auto it = fields.find(key);
    if (it == fields.end()) {
        return fallback;
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != it->second.size()) {
        throw std::invalid_argument("model: bad number for '" + std::string(key) + "'");
    }
    return value;
}

} // namespace

void validate(const CompressibilityModel& model) {
    std::visit(overloaded{
                   [](const ExactSparse& m) {
                       if (m.sparsity < 1) {
                           throw std::invalid_argument("exact model: sparsity must be >= 1");
                       }
                   },
                   [](const Algebraic& m) {
                       if (!(m.p > 1.0) || !(m.c > 0.0)) {
                           throw std::invalid_argument("algebraic model: need p > 1 and c > 0");
                       }
                   },
                   [](const Exponential& m) {
                       if (!(m.alpha > 0.0) || !(m.c > 0.0)) {
                           throw std::invalid_argument("exponential model: need alpha > 0 and c > 0");
                       }
                   },
               },
               model);
}

CompressibilityModel parse_model(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    const auto fields = parse_fields(colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));

    CompressibilityModel model;
    if (kind == "exact") {
        const double b = number_field(fields, "B", 1.0);
        if (b < 1.0 || b != std::floor(b)) {
            throw std::invalid_argument("exact model: B must be a positive integer");
        }
        model = ExactSparse{static_cast<std::size_t>(b)};
    } else if (kind == "algebraic") {
        model = Algebraic{number_field(fields, "p", 2.0), number_field(fields, "c", 1.0)};
    } else if (kind == "exponential") {
        model = Exponential{number_field(fields, "alpha", 1.0), number_field(fields, "c", 1.0)};
    } else {
        throw std::invalid_argument("unknown model '" + std::string(kind) + "'");
    }
    validate(model);
    return model;
}

std::string describe(const CompressibilityModel& model) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const ExactSparse& m) { os << "exact:B=" << m.sparsity; },
                   [&](const Algebraic& m) { os << "algebraic:p=" << m.p << ",c=" << m.c; },
                   [&](const Exponential& m) { os << "exponential:alpha=" << m.alpha << ",c=" << m.c; },
               },
               model);
    return os.str();
}

} // namespace sfft
