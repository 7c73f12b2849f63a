#include "arith/config.hpp"

#include "arith/errors.hpp"

namespace arith {

namespace {

Rat json_rat(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_number_float()) return Rat(j.get<double>()); // exact dyadic
    throw ConfigError("expected a rational (string or number)");
}

long json_long(const nlohmann::json& j) {
    if (j.is_string()) {
        Rat q = parse_rational(j.get<std::string>());
        if (q.get_den() != 1) throw ConfigError("expected an integer, got " + rat_str(q));
        return static_cast<long>(mpz_get_si(q.get_num().get_mpz_t()));
    }
    if (j.is_number_integer()) return static_cast<long>(j.get<long long>());
    throw ConfigError("expected an integer");
}

} // namespace

TargetVector parse_vector(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("vector: expected a nonempty array");
    std::vector<Rat> coords;
    for (const auto& e : j) coords.push_back(json_rat(e));
    return TargetVector::of(std::move(coords));
}

DecreasingSequence parse_sequence(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type")) throw ConfigError("sequence: expected {type: ...}");
    std::string type = j.at("type").get<std::string>();
    if (type == "geometric") {
        Rat C = json_rat(j.at("C"));
        long tau = json_long(j.at("tau"));
        return DecreasingSequence::geometric(std::move(C), tau);
    }
    if (type == "table") {
        std::vector<Rat> vals;
        for (const auto& e : j.at("values")) vals.push_back(json_rat(e));
        return DecreasingSequence::table(std::move(vals));
    }
    throw ConfigError("sequence: unknown type " + type);
}

PolynomialMap parse_map(const nlohmann::json& j) {
    PolynomialMap f;
    f.domain_dim = static_cast<int>(json_long(j.at("d")));
    f.codomain_dim = static_cast<int>(json_long(j.at("n")));
    f.curvature_order = static_cast<int>(json_long(j.at("l")));
    if (f.domain_dim < 1 || f.codomain_dim < 1 || f.curvature_order < 1)
        throw ConfigError("map: d, n, l must all be >= 1");
    const auto& comps = j.at("components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != f.codomain_dim)
        throw ConfigError("map: need exactly n component term lists");
    for (const auto& comp : comps) {
        Polynomial p = Polynomial::zero(f.domain_dim);
        for (const auto& term : comp) {
            if (!term.is_array() || static_cast<int>(term.size()) != f.domain_dim + 1)
                throw ConfigError("map: each term is [coeff, e_1, ..., e_d]");
            Rat c = json_rat(term[0]);
            Monomial m(f.domain_dim, 0u);
            for (int v = 0; v < f.domain_dim; ++v) {
                long e = json_long(term[static_cast<size_t>(v) + 1]);
                if (e < 0) throw ConfigError("map: exponents must be >= 0");
                m[v] = static_cast<unsigned>(e);
            }
            p.add_term(std::move(m), std::move(c));
        }
        f.comps.push_back(std::move(p));
    }
    return f;
}

} // namespace arith
