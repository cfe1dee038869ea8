#include "relay/json_io.hpp"

#include <stdexcept>

#include <json.hpp>

namespace relay::io {

using nlohmann::json;

std::string code_to_json(const st::CodeDefinition& code) {
    json j;
    j["name"] = code.label;
    j["n_t"] = code.n_t;
    j["T"] = code.T;
    j["k"] = code.k;
    json gens = json::array();
    for (const auto& g : code.generators) {
        json flat = json::array();
        for (int r = 0; r < g.rows(); ++r)
            for (int c = 0; c < g.cols(); ++c)
                flat.push_back(json::array({g(r, c).real(), g(r, c).imag()}));
        gens.push_back(std::move(flat));
    }
    j["generators"] = std::move(gens);
    if (code.declared_partition) {
        j["partition"] = {{"groups", code.declared_partition->groups},
                          {"conditioned", code.declared_partition->conditioned}};
    } else {
        j["partition"] = nullptr;
    }
    return j.dump(2);
}

st::CodeDefinition code_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad code JSON: ") + e.what());
    }
    st::CodeDefinition code;
    try {
        code.label = j.at("name").get<std::string>();
        code.n_t = j.at("n_t").get<int>();
        code.T = j.at("T").get<int>();
        code.k = j.at("k").get<int>();
        if (code.n_t < 1 || code.T < 1 || code.k < 1)
            throw std::invalid_argument("n_t, T, k must be positive");
        const auto& gens = j.at("generators");
        if (static_cast<int>(gens.size()) != code.k)
            throw std::invalid_argument("generator count != k");
        for (const auto& flat : gens) {
            if (static_cast<int>(flat.size()) != code.n_t * code.T)
                throw std::invalid_argument("generator entry count != n_t*T");
            Eigen::MatrixXcd g(code.n_t, code.T);
            int idx = 0;
            for (int r = 0; r < code.n_t; ++r)
                for (int c = 0; c < code.T; ++c, ++idx)
                    g(r, c) = {flat[idx].at(0).get<double>(), flat[idx].at(1).get<double>()};
            code.generators.push_back(std::move(g));
        }
        if (j.contains("partition") && !j["partition"].is_null()) {
            st::GroupPartition p;
            p.groups = j["partition"].at("groups").get<std::vector<std::vector<int>>>();
            p.conditioned = j["partition"].at("conditioned").get<std::vector<int>>();
            code.declared_partition = std::move(p);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad code JSON: ") + e.what());
    }
    if (auto known = st::code_from_string(code.label)) code.name = *known;
    return code;
}

std::string certification_to_json(const CertificationReport& report) {
    json j;
    j["code"] = report.code;
    j["ordering"] = report.ordering;
    json rows = json::array();
    for (int r = 0; r < report.mask.rows(); ++r) {
        std::string row(report.mask.cols(), '0');
        for (int c = 0; c < report.mask.cols(); ++c)
            if (report.mask(r, c)) row[c] = '1';
        rows.push_back(std::move(row));
    }
    j["mask"] = std::move(rows);
    j["partition"] = {{"groups", report.partition.groups},
                      {"conditioned", report.partition.conditioned}};
    j["exponent"] = report.exponent;
    j["stability_trials"] = report.stability_trials;
    j["pass"] = report.pass;
    return j.dump(2);
}

}  // namespace relay::io
