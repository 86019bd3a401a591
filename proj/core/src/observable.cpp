#include "penosc/observable.hpp"

#include <charconv>

#include "penosc/csv.hpp"
#include "penosc/error.hpp"

namespace penosc {

namespace {

double number(const std::string& text, const std::string& context) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw UsageError("bad number '" + text + "' in observable '" + context + "'");
    }
    return v;
}

}  // namespace

Observable Observable::identity() { return {Kind::Identity, "identity"}; }

Observable Observable::square() { return {Kind::Square, "square"}; }

Observable Observable::indicator(double a, double b) {
    if (!(a <= b)) {
        throw ContractViolation("indicator needs a <= b");
    }
    Observable g(Kind::Indicator, "indicator:" + format_double(a) + "," + format_double(b));
    g.a_ = a;
    g.b_ = b;
    return g;
}

Observable Observable::constant(double c) {
    Observable g(Kind::Constant, "constant:" + format_double(c));
    g.a_ = c;
    return g;
}

Observable Observable::custom(std::string name, std::function<double(double)> fn) {
    if (!fn) {
        throw ContractViolation("custom observable needs a function");
    }
    Observable g(Kind::Custom, std::move(name));
    g.fn_ = std::move(fn);
    return g;
}

Observable Observable::parse(const std::string& text) {
    if (text == "identity") {
        return identity();
    }
    if (text == "square") {
        return square();
    }
    if (text.rfind("indicator:", 0) == 0) {
        const std::string args = text.substr(10);
        const auto comma = args.find(',');
        if (comma == std::string::npos) {
            throw UsageError("indicator needs 'indicator:a,b'");
        }
        const double a = number(args.substr(0, comma), text);
        const double b = number(args.substr(comma + 1), text);
        if (!(a <= b)) {
            throw UsageError("indicator needs a <= b");
        }
        return indicator(a, b);
    }
    if (text.rfind("constant:", 0) == 0) {
        return constant(number(text.substr(9), text));
    }
    throw UsageError("unknown observable '" + text + "' (expected identity, square, indicator:a,b or constant:c)");
}

}  // namespace penosc
