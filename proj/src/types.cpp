#include "lpsparse/types.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "lpsparse/errors.hpp"

namespace lpsparse {

namespace {
constexpr std::array<std::pair<Method, std::string_view>, 5> kMethodTags{{
    {Method::Lse, "LSE"},
    {Method::LpRelse, "LP_RELSE"},
    {Method::OracleLse, "ORACLE_LSE"},
    {Method::Lasso, "LASSO"},
    {Method::AdaLasso, "ADALASSO"},
}};
}  // namespace

std::string_view to_string(Method method) {
    for (const auto& [m, tag] : kMethodTags) {
        if (m == method) return tag;
    }
    return "UNKNOWN";
}

std::optional<Method> parse_method(std::string_view tag) {
    for (const auto& [m, name] : kMethodTags) {
        if (name == tag) return m;
    }
    return std::nullopt;
}

Support support_of(const Vector& x, double cushion) {
    Support s;
    for (Index i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) > cushion) s.push_back(i);
    }
    return s;
}

void require_finite(const Matrix& m, std::string_view what) {
    if (!m.allFinite()) {
        throw DomainError(std::string(what) + " contains non-finite entries");
    }
}

}  // namespace lpsparse
