#include "siegelkit/io.hpp"

#include <sstream>

#include <json.hpp>

namespace siegelkit {

namespace {

using json = nlohmann::ordered_json;

std::string exp_text(int h) {
    if (h % 2 == 0) return std::to_string(h / 2);
    return std::to_string(h) + "/2";
}

// One variable factor, empty when the exponent is zero.
std::string var_text(const std::string& name, int h) {
    if (h == 0) return "";
    if (h == 2) return name;
    return name + "^{" + exp_text(h) + "}";
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, true);
    return j;
}

}  // namespace

std::string render(const BiLaurent& b) {
    if (b.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : b.terms()) {
        Rational ac = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        std::string vars = var_text("X", e.first);
        std::string ypart = var_text("Y", e.second);
        if (!ypart.empty()) vars += (vars.empty() ? "" : "*") + ypart;
        if (vars.empty()) {
            out << rat_to_string(ac);
        } else if (ac == 1) {
            out << vars;
        } else {
            out << rat_to_string(ac) << "*" << vars;
        }
    }
    return out.str();
}

std::string render_poly(const std::vector<Integer>& coeffs, const std::string& var) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Integer& c = coeffs[i];
        if (c == 0) continue;
        Integer ac = c < 0 ? Integer(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        std::string vars = var_text(var, static_cast<int>(2 * i));
        if (vars.empty())
            out << ac.get_str();
        else if (ac == 1)
            out << vars;
        else
            out << ac.get_str() << "*" << vars;
    }
    if (first) return "0";
    return out.str();
}

HalfIntMat matrix_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON needs \"n\" and \"entries\"");
    const int n = j["n"].get<int>();
    const auto& rows = j["entries"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("matrix JSON: wrong number of rows");
    std::vector<Rational> e;
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("matrix JSON: wrong row length");
        for (const auto& cell : row) e.push_back(rat_from_string(cell.get<std::string>()));
    }
    return {n, std::move(e)};
}

std::string matrix_to_json(const HalfIntMat& b) {
    json rows = json::array();
    for (int i = 0; i < b.dim(); ++i) {
        json row = json::array();
        for (int jc = 0; jc < b.dim(); ++jc) row.push_back(rat_to_string(b.at(i, jc)));
        rows.push_back(row);
    }
    json j;
    j["n"] = b.dim();
    j["entries"] = rows;
    return j.dump();
}

EGKDatum egk_from_json(const std::string& text) {
    json j = parse(text);
    EGKDatum g;
    for (const auto& v : j.at("n")) g.n.push_back(v.get<long>());
    for (const auto& v : j.at("m")) g.m.push_back(v.get<long>());
    for (const auto& v : j.at("zeta")) g.zeta.push_back(v.get<int>());
    return g;
}

std::string egk_to_json(const EGKDatum& g) {
    json j;
    j["n"] = g.n;
    j["m"] = g.m;
    j["zeta"] = g.zeta;
    return j.dump();
}

NaiveEGK naive_from_json(const std::string& text) {
    json j = parse(text);
    NaiveEGK h;
    for (const auto& v : j.at("a")) h.a.push_back(v.get<long>());
    for (const auto& v : j.at("eps")) h.eps.push_back(v.get<int>());
    return h;
}

std::string naive_to_json(const NaiveEGK& h) {
    json j;
    j["a"] = h.a;
    j["eps"] = h.eps;
    return j.dump();
}

std::string siegel_to_json(const SiegelResult& r) {
    json j;
    j["e_b"] = r.e_b;
    json terms = json::array();
    for (const auto& [e, c] : r.f_tilde.terms())
        terms.push_back(json::array({e.first, e.second, rat_to_string(c)}));
    j["f_tilde"] = terms;
    json f = json::array();
    for (const auto& c : r.f_poly) f.push_back(c.get_str());
    j["f"] = f;
    return j.dump();
}

std::string report_to_json(const DensityReport& rep) {
    json j;
    json alphas;
    for (const auto& [k, a] : rep.alphas) alphas[std::to_string(k)] = rat_to_string(a);
    j["alphas"] = alphas;
    json fi = json::array(), ff = json::array();
    for (const auto& c : rep.f_interp) fi.push_back(c.get_str());
    for (const auto& c : rep.f_formula) ff.push_back(c.get_str());
    j["f_interp"] = fi;
    j["f_formula"] = ff;
    j["verdict"] = rep.match ? "match" : ("mismatch(" + rep.detail + ")");
    return j.dump();
}

}  // namespace siegelkit
