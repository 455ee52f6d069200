#include "iocbench/rational.hpp"

#include "iocbench/error.hpp"

namespace iocbench {

std::string to_decimal(const Rational& r, int places) {
    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    const bool negative = r.numerator() < 0;
    const BigInt num = negative ? BigInt(-r.numerator()) : r.numerator();
    const BigInt& den = r.denominator();
    // round(num * scale / den), half away from zero
    const BigInt scaled = (num * scale * 2 + den) / (den * 2);
    const BigInt whole = scaled / scale;
    const BigInt frac = scaled % scale;
    std::string out = negative && scaled != 0 ? "-" : "";
    out += whole.str();
    if (places > 0) {
        std::string f = frac.str();
        out += '.';
        out += std::string(static_cast<std::size_t>(places) - f.size(), '0');
        out += f;
    }
    return out;
}

double to_double(const Rational& r) {
    return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

nlohmann::json rational_to_json(const Rational& r) {
    return {{"num", r.numerator().convert_to<std::int64_t>()}, {"den", r.denominator().convert_to<std::int64_t>()}};
}

Rational rational_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.size() != 2 || !j.contains("num") || !j.contains("den") ||
        !j["num"].is_number_integer() || !j["den"].is_number_integer() || j["den"].get<std::int64_t>() <= 0) {
        throw Error(ErrorCode::SchemaError, "malformed rational: " + j.dump());
    }
    return make_rational(j["num"].get<std::int64_t>(), j["den"].get<std::int64_t>());
}

}  // namespace iocbench
