#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "siegelkit/io.hpp"
#include "siegelkit/selftest.hpp"

#include <sstream>

namespace py = pybind11;
using namespace siegelkit;

namespace {

std::optional<DyadicCert> make_cert(const std::optional<std::vector<long>>& gk,
                                    const std::optional<std::vector<int>>& sigma) {
    if (!gk && !sigma) return std::nullopt;
    if (!gk || !sigma) throw std::invalid_argument("gk and sigma must be given together");
    return DyadicCert{GKData{*gk}, Involution(*sigma)};
}

py::dict siegel_dict(const SiegelResult& r) {
    py::dict out;
    out["e_b"] = r.e_b;
    py::list terms;
    for (const auto& [e, c] : r.f_tilde.terms()) {
        py::tuple t = py::make_tuple(e.first, e.second, rat_to_string(c));
        terms.append(t);
    }
    out["f_tilde"] = terms;
    py::list f;
    for (const auto& c : r.f_poly) f.append(c.get_str());
    out["f"] = f;
    out["f_tilde_text"] = render(r.f_tilde);
    out["f_text"] = render_poly(r.f_poly);
    py::dict egk;
    egk["n"] = r.egk.n;
    egk["m"] = r.egk.m;
    egk["zeta"] = r.egk.zeta;
    out["egk"] = egk;
    return out;
}

CountCaps caps_of(std::optional<double> max_states, int threads) {
    CountCaps caps;
    caps.threads = threads;
    if (max_states) {
        caps.max_states = *max_states;
        caps.max_tuples = *max_states;
    }
    return caps;
}

}  // namespace

PYBIND11_MODULE(_siegelkit, m) {
    m.doc() = "exact Siegel series of half-integral matrices over Z_p, with a counting oracle";

    m.def("invariants", [](long p, const std::string& matrix_json) {
        PrimeContext ctx(p);
        HalfIntMat b = matrix_from_json(matrix_json);
        validate(b, ctx);
        py::dict out;
        Rational d = d_b(b, ctx);
        out["d_b"] = rat_to_string(d);
        out["ord_d_b"] = ordp(ctx, d);
        out["xi"] = xi_b(b, ctx);
        out["eps"] = eps_b(b, ctx);
        out["eta"] = eta_b(b, ctx);
        out["e_b"] = e_b(b, ctx);
        return out;
    });

    m.def(
        "egk_of_matrix",
        [](long p, const std::string& matrix_json, std::optional<std::vector<long>> gk,
           std::optional<std::vector<int>> sigma) {
            PrimeContext ctx(p);
            HalfIntMat b = matrix_from_json(matrix_json);
            EGKDatum g;
            if (ctx.dyadic()) {
                auto cert = make_cert(gk, sigma);
                if (!cert) throw std::invalid_argument("p = 2 needs gk and sigma");
                g = egk_from_reduced(b, cert->gk, cert->sigma, ctx);
            } else {
                validate(b, ctx);
                g = egk_odd(b, ctx);
            }
            py::dict out;
            out["n"] = g.n;
            out["m"] = g.m;
            out["zeta"] = g.zeta;
            return out;
        },
        py::arg("p"), py::arg("matrix_json"), py::arg("gk") = std::nullopt,
        py::arg("sigma") = std::nullopt);

    m.def(
        "siegel_of_matrix",
        [](long p, const std::string& matrix_json, std::optional<std::vector<long>> gk,
           std::optional<std::vector<int>> sigma) {
            PrimeContext ctx(p);
            HalfIntMat b = matrix_from_json(matrix_json);
            return siegel_dict(f_tilde_matrix(b, ctx, make_cert(gk, sigma)));
        },
        py::arg("p"), py::arg("matrix_json"), py::arg("gk") = std::nullopt,
        py::arg("sigma") = std::nullopt);

    m.def("siegel_of_egk", [](const std::string& egk_json, long q) {
        return siegel_dict(f_tilde_from_egk(egk_from_json(egk_json), q));
    });

    m.def("fpoly", [](const std::string& naive_json) {
        return render(f_recursive(naive_from_json(naive_json)));
    });

    m.def("hilbert", [](long p, const std::string& a, const std::string& b) {
        return hilbert(PrimeContext(p), rat_from_string(a), rat_from_string(b));
    });

    m.def(
        "verify",
        [](long p, const std::string& matrix_json, std::optional<std::vector<long>> gk,
           std::optional<std::vector<int>> sigma, std::optional<double> max_states, int threads) {
            PrimeContext ctx(p);
            HalfIntMat b = matrix_from_json(matrix_json);
            DensityReport rep =
                verify(b, ctx, make_cert(gk, sigma), caps_of(max_states, threads));
            py::dict out;
            py::dict alphas;
            for (const auto& [k, a] : rep.alphas) alphas[py::str(std::to_string(k))] = rat_to_string(a);
            out["alphas"] = alphas;
            py::list fi, ff;
            for (const auto& c : rep.f_interp) fi.append(c.get_str());
            for (const auto& c : rep.f_formula) ff.append(c.get_str());
            out["f_interp"] = fi;
            out["f_formula"] = ff;
            out["verdict"] = rep.match ? "match" : ("mismatch(" + rep.detail + ")");
            return out;
        },
        py::arg("p"), py::arg("matrix_json"), py::arg("gk") = std::nullopt,
        py::arg("sigma") = std::nullopt, py::arg("max_states") = std::nullopt,
        py::arg("threads") = 1);

    m.def("selftest", [] {
        std::ostringstream ss;
        bool ok = selftest(ss);
        return py::make_tuple(ok, ss.str());
    });
}
