#ifndef G2ZETA_JSON_IO_HPP
#define G2ZETA_JSON_IO_HPP

#include "model.hpp"

#include <json.hpp>

namespace g2zeta {

using nlohmann::json;

inline json to_json(const CycloRational& c) {
    json a = json::array();
    for (int i = 0; i < 4; ++i) a.push_back(rational_to_string(c.coord(i)));
    return a;
}

inline CycloRational cyclo_from_json(const json& j) {
    return CycloRational(rational_from_string(j.at(0).get<std::string>()),
                         rational_from_string(j.at(1).get<std::string>()),
                         rational_from_string(j.at(2).get<std::string>()),
                         rational_from_string(j.at(3).get<std::string>()));
}

inline json to_json(const LinearForm& f) { return f.str(); }

inline LinearForm form_from_json(const json& j) {
    std::string s = j.get<std::string>();
    LinearForm f;
    if (std::sscanf(s.c_str(), "%d*m+%d*n", &f.u, &f.v) != 2)
        throw std::invalid_argument("bad linear form string: " + s);
    return f;
}

inline std::string classification_string(const Classification& c) {
    if (!c.convergent) return "divergent";
    return c.shape == ConvergenceShape::SingleForm ? "single_form" : "regular";
}

inline json to_json(const Certificate& cert) {
    json j;
    j["input"] = cert.input.s;
    j["classification"] = classification_string(cert.classification);
    j["weight"] = cert.input.weight();
    json terms = json::array();
    for (auto& [t, c] : cert.result.terms()) {
        json jt;
        jt["coeff"] = to_json(c);
        jt["exponents"] = t.exponents();
        jt["args"] = t.args();
        terms.push_back(jt);
    }
    j["terms"] = terms;
    json trace = json::array();
    for (const TraceStep& st : cert.trace) {
        json js;
        js["rule"] = st.rule;
        js["pair"] = json::array({to_json(st.pair_x), to_json(st.pair_y)});
        js["sum_form"] = to_json(st.sum_form);
        json sc = json::array();
        for (const Rational& r : st.scale) sc.push_back(rational_to_string(r));
        js["scale"] = sc;
        trace.push_back(js);
    }
    j["trace"] = trace;
    j["all_rational"] = cert.all_rational;
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    Certificate cert;
    for (int i = 0; i < 6; ++i) cert.input.s[i] = j.at("input").at(i).get<int>();
    std::string cls = j.at("classification").get<std::string>();
    cert.classification.convergent = cls != "divergent";
    cert.classification.shape = cls == "single_form" ? ConvergenceShape::SingleForm
                                                     : ConvergenceShape::Regular;
    if (cert.classification.convergent)
        cert.classification = classify(cert.input); // recover the form details
    for (const json& jt : j.at("terms"))
        cert.result.add(MPVTerm(jt.at("exponents").get<std::vector<int>>(),
                                jt.at("args").get<std::vector<int>>()),
                        cyclo_from_json(jt.at("coeff")));
    for (const json& js : j.at("trace")) {
        TraceStep st;
        st.rule = js.at("rule").get<std::string>();
        st.pair_x = form_from_json(js.at("pair").at(0));
        st.pair_y = form_from_json(js.at("pair").at(1));
        st.sum_form = form_from_json(js.at("sum_form"));
        for (const json& r : js.at("scale"))
            st.scale.push_back(rational_from_string(r.get<std::string>()));
        cert.trace.push_back(st);
    }
    cert.all_rational = j.at("all_rational").get<bool>();
    return cert;
}

} // namespace g2zeta

#endif
