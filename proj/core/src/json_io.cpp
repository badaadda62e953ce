#include "hpf/json_io.hpp"

#include <stdexcept>

namespace hpf {

Measure measure_from_json(const nlohmann::json& j, int beta, int n) {
    const std::string kind = j.value("kind", "gaussian");
    const int quad_order = j.value("quad_order", 80);
    Measure m = Measure::gaussian(quad_order);
    if (kind == "gaussian") {
        m = Measure::gaussian(quad_order);
    } else if (kind == "jacobi") {
        m = Measure::jacobi(j.value("a", 1.0), j.value("b", 1.0), quad_order);
    } else if (kind == "uniform") {
        m = Measure::uniform(j.value("lo", 0.0), j.value("hi", 1.0), quad_order);
    } else if (kind == "circular") {
        m = Measure::circular(n, beta, quad_order);
    } else {
        throw std::invalid_argument("measure_from_json: unknown kind " + kind);
    }
    if (j.contains("atoms")) {
        std::vector<std::pair<double, cplx>> atoms;
        for (const auto& a : j.at("atoms"))
            atoms.emplace_back(a.at("x").get<double>(), cplx(a.value("c", 1.0)));
        m = m.with_atoms(atoms);
    }
    return m;
}

nlohmann::ordered_json result_to_json(const ZnResult& r) {
    nlohmann::ordered_json j;
    j["beta"] = r.beta;
    j["L"] = r.L;
    j["N"] = r.N;
    j["geometry"] = to_string(r.geometry);
    j["case"] = to_string(r.ensemble_case);
    j["value"] = {{"re", r.value.real()}, {"im", r.value.imag()}};
    nlohmann::ordered_json oracles = nlohmann::ordered_json::object();
    for (const auto& [name, value] : r.oracle_values) {
        nlohmann::ordered_json entry;
        entry["value"] = value;
        const auto it = r.discrepancies.find(name);
        entry["rel_err"] = (it != r.discrepancies.end()) ? it->second : 0.0;
        oracles[name] = entry;
    }
    j["oracles"] = oracles;
    j["seconds"] = r.seconds;
    return j;
}

}  // namespace hpf
