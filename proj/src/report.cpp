#include "flagrock/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace flagrock {

using nlohmann::ordered_json;

namespace {

ordered_json root_list(const std::vector<Root>& roots) {
    ordered_json arr = ordered_json::array();
    for (const Root& r : roots) arr.push_back({r.i, r.j});
    return arr;
}

std::vector<Root> roots_from(const ordered_json& arr) {
    std::vector<Root> out;
    for (const auto& pair : arr) out.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    return out;
}

}  // namespace

ordered_json report_to_json(const Report& rep) {
    const Verdict& v = rep.verdict;
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["parameters"] = {{"p", v.p}, {"q", v.q}, {"p1", v.p1}};
    j["dimensions"] = {{"s", v.s}, {"t", v.t}, {"dimE", v.dim_e}, {"dimF", v.dim_f}};
    j["hormander"] = v.hormander_ok;
    j["gamma"] = root_list(v.gamma);
    ordered_json weights = ordered_json::array();
    for (const Quad& w : v.weights)
        weights.push_back({{"exact", w.str()}, {"approx", w.to_double()}});
    j["form"] = {{"weights", weights}};
    j["hypothesis_H"] = v.hypothesis_h;
    j["case"] = v.case_name;
    j["transverse_roots"] = root_list(v.transverse_roots);
    ordered_json rvals = ordered_json::array();
    for (const RValue& r : v.r_values) {
        ordered_json e;
        e["squared"] = r.squared.str();
        if (r.exact) e["exact"] = r.exact->str();
        else e["exact"] = nullptr;
        e["approx"] = r.approx;
        rvals.push_back(e);
    }
    j["r_values"] = rvals;
    j["exact_mode"] = v.exact_mode;
    ordered_json spectra = ordered_json::array();
    for (std::size_t deg = 0; deg < v.m_spectra.size(); ++deg)
        spectra.push_back({{"degree", deg}, {"eigenvalues", v.m_spectra[deg]}});
    j["m_spectra"] = spectra;
    j["spectral_hit_degrees"] = v.spectral_hit_degrees;
    ordered_json wits = ordered_json::array();
    for (const WitnessRecord& w : v.witnesses) {
        ordered_json e;
        e["degree"] = w.degree;
        e["eigenvalue"] = w.eigenvalue;
        if (!w.eigenvalue_exact.empty()) e["eigenvalue_exact"] = w.eigenvalue_exact;
        else e["eigenvalue_exact"] = nullptr;
        e["residual"] = {{"mode", w.residual_exact_zero ? "exact" : "float"},
                         {"value", w.residual}};
        if (!w.residual_exact_zero) e["residual"]["tolerance"] = 1e-10;
        e["construction"] = w.construction;
        wits.push_back(e);
    }
    j["witnesses"] = wits;
    j["degree0_min"] = v.degree0_min;
    ordered_json verdict;
    verdict["decided"] = v.rockland_fails.has_value();
    if (v.rockland_fails) {
        verdict["rockland_fails"] = *v.rockland_fails;
        verdict["maximal_hypoelliptic"] = *v.maximal_hypoelliptic;
    } else {
        verdict["rockland_fails"] = nullptr;
        verdict["maximal_hypoelliptic"] = nullptr;
        verdict["reason"] = v.degenerate_reason;
    }
    j["verdict"] = verdict;
    j["versions"] = {{"flagrock", kVersion}, {"schema", kSchemaVersion}};
    j["timing_ms"] = rep.timing_ms;
    return j;
}

Report report_from_json(const ordered_json& j) {
    Report rep;
    Verdict& v = rep.verdict;
    v.p = j["parameters"]["p"].get<int>();
    v.q = j["parameters"]["q"].get<int>();
    v.p1 = j["parameters"]["p1"].get<int>();
    v.s = j["dimensions"]["s"].get<int>();
    v.t = j["dimensions"]["t"].get<int>();
    v.dim_e = j["dimensions"]["dimE"].get<int>();
    v.dim_f = j["dimensions"]["dimF"].get<int>();
    v.hormander_ok = j["hormander"].get<bool>();
    v.gamma = roots_from(j["gamma"]);
    for (const auto& w : j["form"]["weights"])
        v.weights.push_back(parse_quad(w["exact"].get<std::string>()));
    v.hypothesis_h = j["hypothesis_H"].get<bool>();
    v.case_name = j["case"].get<std::string>();
    v.degenerate = v.case_name == "degenerate";
    v.transverse_roots = roots_from(j["transverse_roots"]);
    for (const auto& r : j["r_values"]) {
        RValue rv;
        rv.squared = parse_quad(r["squared"].get<std::string>());
        if (!r["exact"].is_null()) rv.exact = parse_quad(r["exact"].get<std::string>());
        rv.approx = r["approx"].get<double>();
        v.r_values.push_back(rv);
    }
    v.exact_mode = j["exact_mode"].get<bool>();
    for (const auto& s : j["m_spectra"])
        v.m_spectra.push_back(s["eigenvalues"].get<std::vector<double>>());
    v.spectral_hit_degrees = j["spectral_hit_degrees"].get<std::vector<int>>();
    for (const auto& w : j["witnesses"]) {
        WitnessRecord rec;
        rec.degree = w["degree"].get<int>();
        rec.eigenvalue = w["eigenvalue"].get<double>();
        if (!w["eigenvalue_exact"].is_null())
            rec.eigenvalue_exact = w["eigenvalue_exact"].get<std::string>();
        rec.residual_exact_zero = w["residual"]["mode"].get<std::string>() == "exact";
        rec.residual = w["residual"]["value"].get<double>();
        rec.construction = w["construction"].get<std::string>();
        v.witnesses.push_back(rec);
    }
    v.degree0_min = j["degree0_min"].get<double>();
    if (j["verdict"]["decided"].get<bool>()) {
        v.rockland_fails = j["verdict"]["rockland_fails"].get<bool>();
        v.maximal_hypoelliptic = j["verdict"]["maximal_hypoelliptic"].get<bool>();
    } else if (j["verdict"].contains("reason")) {
        v.degenerate_reason = j["verdict"]["reason"].get<std::string>();
    }
    rep.timing_ms = j["timing_ms"].get<double>();
    return rep;
}

std::string report_to_text(const Report& rep) {
    const Verdict& v = rep.verdict;
    std::ostringstream os;
    os << "flagrock " << kVersion << " certificate\n";
    os << "parameters    p=" << v.p << " q=" << v.q << " p1=" << v.p1 << "\n";
    os << "dimensions    s=" << v.s << " t=" << v.t << " dimE=" << v.dim_e
       << " dimF=" << v.dim_f << "\n";
    os << "hormander     " << (v.hormander_ok ? "ok" : "FAILED") << "\n";
    if (v.degenerate) {
        os << "case          degenerate\n";
        os << "verdict       not decided: " << v.degenerate_reason << "\n";
        return os.str();
    }
    os << "gamma        ";
    for (const Root& g : v.gamma) os << " " << g.str();
    os << "\nweights      ";
    for (const Quad& w : v.weights) os << " " << w.str();
    os << "\nhypothesis H  " << (v.hypothesis_h ? "ok (A has maximal rank)" : "FAILED")
       << "\n";
    os << "case          " << v.case_name << "\n";
    os << "r values     ";
    for (const RValue& r : v.r_values)
        os << " " << (r.exact ? r.exact->str() : std::to_string(r.approx));
    os << "  (mode: " << (v.exact_mode ? "exact" : "float") << ")\n";
    os << "degree-0 min  " << v.degree0_min << " (> 0: positive on functions)\n";
    os << "spectral hits  degrees";
    for (int d : v.spectral_hit_degrees) os << " " << d;
    os << " attain -sum r\n";
    for (const WitnessRecord& w : v.witnesses) {
        os << "witness       degree " << w.degree << ", eigenvalue " << w.eigenvalue
           << ", residual ";
        if (w.residual_exact_zero) os << "0 (exact)";
        else os << w.residual << " (float, tol 1e-10)";
        os << ", via " << w.construction << "\n";
    }
    if (v.rockland_fails) {
        os << "verdict       rockland_fails=" << (*v.rockland_fails ? "true" : "false")
           << " maximal_hypoelliptic="
           << (*v.maximal_hypoelliptic ? "true" : "false") << "\n";
    }
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot rename " + tmp + " to " + path);
}

}  // namespace flagrock
