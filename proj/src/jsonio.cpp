#include "nilpact/jsonio.hpp"

#include "nilpact/errors.hpp"

namespace nilpact::jsonio {

namespace {

std::vector<long long> parse_factor_list(const json& j, const char* what) {
    if (!j.is_array()) throw config_error(std::string(what) + ": expected an array");
    std::vector<long long> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw config_error(std::string(what) + ": expected integers");
        out.push_back(v.get<long long>());
    }
    return out;
}

Rat parse_rat(const json& j, const char* what) {
    if (j.is_number_integer()) return to_rat(j.get<long long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(Int(s));
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) throw config_error(std::string(what) + ": zero denominator");
            Rat r(num);
            return r / Rat(den);
        } catch (const std::invalid_argument&) {
            throw config_error(std::string(what) + ": malformed rational '" + s + "'");
        }
    }
    throw config_error(std::string(what) + ": expected integer or \"p/q\" string");
}

GaussRat parse_gauss(const json& j, const char* what) {
    if (j.is_array()) {
        if (j.size() != 2) throw config_error(std::string(what) + ": expected [re, im]");
        return GaussRat(parse_rat(j[0], what), parse_rat(j[1], what));
    }
    return GaussRat(parse_rat(j, what), Rat(0));
}

}  // namespace

finabel::FinAbGroup parse_abelian(const json& j) {
    const json& arr = j.is_object() && j.contains("abelian") ? j.at("abelian") : j;
    try {
        return finabel::FinAbGroup(parse_factor_list(arr, "abelian"));
    } catch (const precondition_error& e) {
        throw config_error(std::string("abelian: ") + e.what());
    }
}

heisenberg::BilinearPairing parse_heisenberg(const json& j) {
    const json& h = j.is_object() && j.contains("heisenberg") ? j.at("heisenberg") : j;
    if (!h.is_object() || !h.contains("A") || !h.contains("B") || !h.contains("C") ||
        !h.contains("matrix"))
        throw config_error("heisenberg: need A, B, C, matrix");
    finabel::FinAbGroup A = parse_abelian(h.at("A"));
    finabel::FinAbGroup B = parse_abelian(h.at("B"));
    finabel::FinAbGroup C = parse_abelian(h.at("C"));

    const json& m = h.at("matrix");
    if (!m.is_array() || m.size() != A.num_factors())
        throw config_error("heisenberg: matrix needs one row per generator of A");
    std::vector<std::vector<finabel::FinAbElem>> values;
    for (const auto& row : m) {
        if (!row.is_array() || row.size() != B.num_factors())
            throw config_error("heisenberg: matrix row length must match generators of B");
        std::vector<finabel::FinAbElem> out_row;
        for (const auto& entry : row) {
            if (entry.is_number_integer()) {
                if (C.num_factors() > 1)
                    throw config_error(
                        "heisenberg: integer matrix entries need cyclic C; use coordinate arrays");
                std::vector<long long> coords(C.num_factors(), 0);
                if (!coords.empty()) coords[0] = entry.get<long long>();
                out_row.emplace_back(C, coords);
            } else if (entry.is_array()) {
                out_row.emplace_back(C, parse_factor_list(entry, "heisenberg matrix entry"));
            } else {
                throw config_error("heisenberg: matrix entries are integers or arrays");
            }
        }
        values.push_back(std::move(out_row));
    }
    try {
        return heisenberg::BilinearPairing(A, B, C, std::move(values));
    } catch (const precondition_error& e) {
        throw config_error(std::string("heisenberg: ") + e.what());
    }
}

heisenberg::BilinearPairing parse_extraspecial(const json& j) {
    const json& h = j.is_object() && j.contains("extraspecial") ? j.at("extraspecial") : j;
    if (!h.is_object() || !h.contains("p") || !h.contains("n"))
        throw config_error("extraspecial: need p and n");
    long long p = h.at("p").get<long long>();
    long long n = h.at("n").get<long long>();
    if (p < 2 || n < 1) throw config_error("extraspecial: p >= 2 and n >= 1 required");
    if (h.contains("exponent")) {
        const json& e = h.at("exponent");
        bool ok = (e.is_string() && e.get<std::string>() == "p") ||
                  (e.is_number_integer() && e.get<long long>() == p);
        if (!ok)
            throw config_error("extraspecial: only the exponent-p family is built in");
    }
    return heisenberg::BilinearPairing::standard_dot(p, static_cast<std::size_t>(n));
}

theta::AdmissibleTuple parse_admissible(const json& j) {
    const json& a = j.is_object() && j.contains("admissible") ? j.at("admissible") : j;
    if (!a.is_object() || !a.contains("entries"))
        throw config_error("admissible: need entries");
    std::optional<long long> excl;
    if (a.contains("char_exclusion")) excl = a.at("char_exclusion").get<long long>();
    try {
        return theta::AdmissibleTuple(parse_factor_list(a.at("entries"), "admissible"), excl);
    } catch (const precondition_error& e) {
        throw config_error(std::string("admissible: ") + e.what());
    }
}

lattice::IsotropicSublatticeData parse_sublattice(const json& j) {
    const json& s = j.is_object() && j.contains("sublattice") ? j.at("sublattice") : j;
    if (!s.is_object() || !s.contains("n") || !s.contains("c") || !s.contains("H") ||
        !s.contains("lambda") || !s.contains("gamma_denominator"))
        throw config_error("sublattice: need n, c, H, lambda, gamma_denominator");
    int n = s.at("n").get<int>();
    long long c = s.at("c").get<long long>();
    long long g = s.at("gamma_denominator").get<long long>();

    std::vector<std::vector<GaussRat>> H;
    for (const auto& row : s.at("H")) {
        std::vector<GaussRat> r;
        for (const auto& e : row) r.push_back(parse_gauss(e, "sublattice H"));
        H.push_back(std::move(r));
    }
    std::vector<std::vector<long long>> lambda;
    for (const auto& row : s.at("lambda"))
        lambda.push_back(parse_factor_list(row, "sublattice lambda"));
    try {
        return lattice::IsotropicSublatticeData(n, std::move(H), c, std::move(lambda), g);
    } catch (const precondition_error& e) {
        throw config_error(std::string("sublattice: ") + e.what());
    }
}

PipelineConfig parse_config(const json& j) {
    if (!j.is_object()) throw config_error("config: expected a JSON object");
    PipelineConfig cfg;

    auto parse_factor = [](const json& f) {
        if (f.is_object() && f.contains("extraspecial")) return parse_extraspecial(f);
        if (f.is_object() && f.contains("heisenberg")) return parse_heisenberg(f);
        throw config_error("config: each factor is {\"heisenberg\": ...} or {\"extraspecial\": ...}");
    };

    if (j.contains("factors")) {
        if (!j.at("factors").is_array() || j.at("factors").empty())
            throw config_error("config: factors must be a non-empty array");
        for (const auto& f : j.at("factors")) cfg.factors.push_back(parse_factor(f));
    } else if (j.contains("heisenberg") || j.contains("extraspecial")) {
        cfg.factors.push_back(parse_factor(j));
    } else {
        throw config_error("config: need factors, heisenberg, or extraspecial");
    }

    if (j.contains("rank_bound")) cfg.rank_bound = j.at("rank_bound").get<long long>();
    if (j.contains("char_exclusion")) cfg.char_exclusion = j.at("char_exclusion").get<long long>();
    if (j.contains("d")) {
        cfg.d = j.at("d").get<long long>();
        if (cfg.d < 1) throw config_error("config: d must be positive");
    }
    return cfg;
}

}  // namespace nilpact::jsonio
