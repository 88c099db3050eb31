#pragma once

// State files and report serialization.
//
// A state file is {"n": 4, "amplitudes": [[re, im], ...]} with 16 pairs in
// decimal index order, or "n": 3 with 8 pairs. In exact mode each component
// may also be a string "p/q" or a decimal string; numbers are read through
// their shortest decimal form.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"
#include "quartet/scalar.hpp"
#include "quartet/state.hpp"

namespace quartet {

using Json = nlohmann::ordered_json;

class StateFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

template <Scalar S>
S parse_component(const Json &v);

template <>
inline Complex parse_component<Complex>(const Json &v) {
    if (!v.is_array() || v.size() != 2) throw StateFormatError("amplitude must be a [re, im] pair");
    auto part = [](const Json &x) {
        if (x.is_number()) return x.get<double>();
        if (x.is_string()) return parse_rational(x.get<std::string>()).get_d();
        throw StateFormatError("amplitude component must be a number or a rational string");
    };
    return {part(v[0]), part(v[1])};
}

template <>
inline GaussianRational parse_component<GaussianRational>(const Json &v) {
    if (!v.is_array() || v.size() != 2) throw StateFormatError("amplitude must be a [re, im] pair");
    auto part = [](const Json &x) -> mpq_class {
        if (x.is_number_integer()) {
            return x.is_number_unsigned() ? mpq_class(std::to_string(x.get<unsigned long long>()))
                                          : mpq_class(std::to_string(x.get<long long>()));
        }
        if (x.is_number_float()) return rational_from_double(x.get<double>());
        if (x.is_string()) return parse_rational(x.get<std::string>());
        throw StateFormatError("amplitude component must be a number or a rational string");
    };
    return GaussianRational(part(v[0]), part(v[1]));
}

template <Scalar S>
using AnyState = std::variant<FourQubitState<S>, ThreeQubitState<S>>;

/// Parses a state document; "n" must be 3 or 4 and match the pair count.
template <Scalar S>
AnyState<S> parse_state(const Json &doc) {
    if (!doc.is_object()) throw StateFormatError("state document must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw StateFormatError("missing integer field \"n\"");
    if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
        throw StateFormatError("missing array field \"amplitudes\"");
    }
    const long n = doc["n"].get<long>();
    const auto &amps = doc["amplitudes"];
    const size_t expected = n == 4 ? 16 : n == 3 ? 8 : 0;
    if (expected == 0) throw StateFormatError("\"n\" must be 3 or 4, got " + std::to_string(n));
    if (amps.size() != expected) {
        throw StateFormatError("expected " + std::to_string(expected) + " amplitudes for n = " + std::to_string(n) +
                               ", got " + std::to_string(amps.size()));
    }
    std::vector<S> z;
    z.reserve(expected);
    for (const auto &a : amps) z.push_back(parse_component<S>(a));
    try {
        if (n == 4) return FourQubitState<S>::from_span(z);
        return ThreeQubitState<S>::from_span(z);
    } catch (const std::invalid_argument &e) {
        throw StateFormatError(e.what());
    }
}

template <Scalar S>
AnyState<S> parse_state(const std::string &text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw StateFormatError(std::string("malformed JSON: ") + e.what());
    }
    return parse_state<S>(doc);
}

template <Scalar S>
AnyState<S> read_state_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw StateFormatError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_state<S>(buf.str());
}

// ---------------------------------------------------------------------------
// Serialization.

inline Json to_json(const Complex &z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const GaussianRational &z) { return Json::array({to_string(z.real()), to_string(z.imag())}); }

template <Scalar S, size_t N>
Json state_to_json(const QubitState<S, N> &z) {
    Json amps = Json::array();
    for (const S &x : z.amplitudes()) amps.push_back(to_json(x));
    return Json{{"n", N == 16 ? 4 : 3}, {"amplitudes", amps}};
}

/// Formats a double with 17 significant digits.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "null";
    if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline void dump(const Json &j, std::string &out, int indent, int depth) {
    const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<size_t>(indent * depth), ' ');
    auto compact_array = [&]() {
        return std::all_of(j.begin(), j.end(), [](const Json &e) { return e.is_primitive(); });
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(it.key()).dump() + ": ";
                dump(it.value(), out, indent, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (compact_array()) {
                out += "[";
                for (size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    dump(j[i], out, indent, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                dump(j[i], out, indent, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_number(j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

}  // namespace detail

/// Deterministic rendering: insertion-ordered keys, %.17g numbers.
inline std::string dump_json(const Json &j, int indent = 2) {
    std::string out;
    detail::dump(j, out, indent, 0);
    return out;
}

}  // namespace quartet
