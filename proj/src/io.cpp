#include "mucert/io.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "mucert/errors.hpp"

namespace mucert {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw input_error(std::string("missing required field \"") + key + "\"");
    return j.at(key);
}

u64 require_u64(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<i64>() >= 0))
        throw input_error(std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<u64>();
}

std::string timestamp_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

} // namespace

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw input_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out)
        throw input_error("cannot write " + path);
    out << contents;
}

CurveRecord curve_from_json(const json& j) {
    const json& ai = require(j, "ainvs");
    if (!ai.is_array() || ai.size() != 5)
        throw input_error("\"ainvs\" must be an array of 5 integers");
    std::array<i64, 5> a{};
    for (size_t i = 0; i < 5; ++i) {
        if (!ai[i].is_number_integer())
            throw input_error("\"ainvs\" entries must be integers");
        a[i] = ai[i].get<i64>();
    }
    std::set<u64> isog;
    if (j.contains("isogeny_degrees"))
        for (const auto& d : j.at("isogeny_degrees"))
            isog.insert(d.get<u64>());
    bool minimal = j.contains("minimal") ? j.at("minimal").get<bool>() : false;
    return make_curve(require(j, "label").get<std::string>(), a, require_u64(j, "conductor"),
                      static_cast<unsigned>(require_u64(j, "rank")), require_u64(j, "sha_order"),
                      require_u64(j, "tamagawa_product"), std::move(isog), minimal);
}

CurveRecord load_curve(const std::string& path) { return curve_from_json(load_json(path)); }

NewformRecord newform_from_json(const json& j) {
    std::map<u64, std::vector<i64>> eigen;
    if (j.contains("eigenvalues")) {
        const json& ev = j.at("eigenvalues");
        if (!ev.is_object())
            throw input_error("\"eigenvalues\" must map primes to integers or integer arrays");
        for (auto it = ev.begin(); it != ev.end(); ++it) {
            u64 ell;
            try {
                ell = std::stoull(it.key());
            } catch (...) {
                throw input_error("eigenvalue key \"" + it.key() + "\" is not a prime index");
            }
            std::vector<i64> coords;
            if (it.value().is_number_integer())
                coords.push_back(it.value().get<i64>());
            else if (it.value().is_array())
                for (const auto& c : it.value())
                    coords.push_back(c.get<i64>());
            else
                throw input_error("eigenvalue a_" + std::to_string(ell) +
                                  " must be an integer or an integer array");
            eigen[ell] = std::move(coords);
        }
    }
    std::set<u64> reducible;
    if (j.contains("reducible_primes"))
        for (const auto& p : j.at("reducible_primes"))
            reducible.insert(p.get<u64>());
    unsigned degree = j.contains("hecke_field_degree")
                          ? static_cast<unsigned>(j.at("hecke_field_degree").get<u64>())
                          : 1;
    u64 neben = j.contains("neben_conductor") ? require_u64(j, "neben_conductor") : 1;
    u64 sturm = j.contains("sturm_bound") ? require_u64(j, "sturm_bound") : 0;
    return make_newform(require(j, "label").get<std::string>(), require_u64(j, "level"),
                        static_cast<unsigned>(require_u64(j, "weight")), neben, degree,
                        std::move(eigen), sturm, std::move(reducible));
}

NewformRecord load_newform(const std::string& path) { return newform_from_json(load_json(path)); }

DihedralScenario scenario_from_json(const json& j) {
    std::vector<u64> s_extra;
    if (j.contains("S_extra"))
        for (const auto& ell : j.at("S_extra"))
            s_extra.push_back(ell.get<u64>());
    std::map<std::string, bool> flags;
    if (j.contains("oracle_flags")) {
        const json& of = j.at("oracle_flags");
        if (!of.is_object())
            throw input_error("\"oracle_flags\" must be an object of booleans");
        for (auto it = of.begin(); it != of.end(); ++it) {
            if (!it.value().is_boolean())
                throw input_error("oracle flag \"" + it.key() + "\" must be a boolean");
            flags[it.key()] = it.value().get<bool>();
        }
    }
    return make_dihedral_scenario(require_u64(j, "D"), require_u64(j, "p"), require_u64(j, "n"),
                                  std::move(s_extra), std::move(flags));
}

DihedralScenario load_scenario(const std::string& path) {
    return scenario_from_json(load_json(path));
}

LambdaPresentation presentation_from_json(const json& j, const PrecisionProfile& prof) {
    const json* mat = &j;
    if (j.is_object())
        mat = &require(j, "matrix");
    if (!mat->is_array() || mat->empty())
        throw input_error("presentation matrix must be a nonempty 2D array of series literals");
    std::vector<std::vector<TruncatedPowerSeries>> rows;
    for (const auto& row : *mat) {
        if (!row.is_array())
            throw input_error("presentation matrix rows must be arrays");
        std::vector<TruncatedPowerSeries> entries;
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw input_error("presentation entries must be series literals (strings)");
            entries.push_back(TruncatedPowerSeries::parse(prof, cell.get<std::string>()));
        }
        rows.push_back(std::move(entries));
    }
    return make_presentation(prof, std::move(rows));
}

LambdaPresentation load_presentation(const std::string& path, const PrecisionProfile& prof) {
    return presentation_from_json(load_json(path), prof);
}

QuadField quad_field_from_json(const json& j) { return make_quad_field(require_u64(j, "D")); }

ClassGroupCrossCheck crosscheck_from_json(const json& j) {
    ClassGroupCrossCheck c;
    c.D = require_u64(j, "D");
    c.h = require_u64(j, "h");
    if (j.contains("structure"))
        for (const auto& v : j.at("structure"))
            c.structure.push_back(v.get<u64>());
    return c;
}

ordered_json certificate_to_json(const Certificate& cert, bool with_timestamp) {
    ordered_json j;
    j["subject"] = cert.subject;
    j["theorem"] = cert.theorem;
    ordered_json conds = ordered_json::array();
    for (const auto& c : cert.conditions) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["status"] = to_string(c.status);
        cj["evidence"] = c.evidence;
        conds.push_back(cj);
    }
    j["conditions"] = conds;
    j["verdict"] = to_string(cert.verdict);
    j["interpretation_notes"] = cert.interpretation_notes;
    j["toolkit_version"] = kToolkitVersion;
    if (with_timestamp)
        j["generated_at"] = timestamp_now();
    return j;
}

namespace {

ConditionStatus status_from_string(const std::string& s) {
    if (s == "pass")
        return ConditionStatus::Pass;
    if (s == "fail")
        return ConditionStatus::Fail;
    if (s == "oracle-assumed")
        return ConditionStatus::OracleAssumed;
    if (s == "inconclusive")
        return ConditionStatus::Inconclusive;
    throw input_error("unknown condition status \"" + s + "\"");
}

} // namespace

Certificate certificate_from_json(const json& j) {
    Certificate cert;
    cert.subject = require(j, "subject").get<std::string>();
    cert.theorem = require(j, "theorem").get<std::string>();
    std::string verdict = require(j, "verdict").get<std::string>();
    if (verdict == "certified-mu-zero")
        cert.verdict = Verdict::CertifiedMuZero;
    else if (verdict == "inconclusive")
        cert.verdict = Verdict::Inconclusive;
    else
        throw input_error("unknown verdict \"" + verdict + "\"");
    for (const auto& c : require(j, "conditions")) {
        ConditionEntry e;
        e.name = require(c, "name").get<std::string>();
        e.status = status_from_string(require(c, "status").get<std::string>());
        e.evidence = require(c, "evidence").get<std::string>();
        cert.conditions.push_back(std::move(e));
    }
    if (j.contains("interpretation_notes"))
        for (const auto& n : j.at("interpretation_notes"))
            cert.interpretation_notes.push_back(n.get<std::string>());
    require(j, "toolkit_version");
    return cert;
}

ordered_json obstruction_report_to_json(const ObstructionReport& rep, bool with_timestamp) {
    ordered_json j;
    j["label"] = rep.label;
    j["level"] = rep.level;
    j["weight"] = rep.weight;
    j["small_weight_component"] = rep.small_weight_component;
    j["divisor_component"] = rep.divisor_component;
    j["congruence_component"] = rep.congruence_component;
    j["bound_set"] = rep.bound_set;
    if (rep.sturm_bound)
        j["sturm_bound"] = rep.sturm_bound;
    j["annotations"] = rep.annotations;
    j["outside_statement"] = rep.outside_statement;
    j["toolkit_version"] = kToolkitVersion;
    if (with_timestamp)
        j["generated_at"] = timestamp_now();
    return j;
}

ordered_json congruence_to_json(const CongruenceCandidates& c, const std::string& f,
                                const std::string& g, bool with_timestamp) {
    ordered_json j;
    j["form"] = f;
    j["sibling"] = g;
    j["candidate_primes"] = c.primes;
    j["sturm_bound"] = c.sturm_bound;
    j["convention"] = c.convention;
    j["toolkit_version"] = kToolkitVersion;
    if (with_timestamp)
        j["generated_at"] = timestamp_now();
    return j;
}

ordered_json density_report_to_json(const DensityReport& rep, const DihedralScenario& sc,
                                    bool with_timestamp) {
    ordered_json j;
    j["D"] = sc.field.D;
    j["disc"] = sc.field.disc;
    j["p"] = sc.p;
    j["n"] = sc.n;
    j["h"] = sc.table.h;
    j["bound"] = rep.bound;
    j["sample_size"] = rep.sample_size;
    j["split_count"] = rep.split_count;
    j["s1_count"] = rep.s1_count;
    j["s2_count"] = rep.s2_count;
    j["defined"] = rep.defined;
    j["fraction"] = rep.fraction;
    j["toolkit_version"] = kToolkitVersion;
    if (with_timestamp)
        j["generated_at"] = timestamp_now();
    return j;
}

std::string density_report_to_csv(const DensityReport& rep) {
    std::ostringstream out;
    out << "prime,mod3,splitting,in_S1,in_S2\n";
    for (const auto& row : rep.rows)
        out << row.prime << ',' << row.residue_mod_p << ',' << to_string(row.splitting) << ','
            << (row.in_s1 ? 1 : 0) << ',' << (row.in_s2 ? 1 : 0) << '\n';
    return out.str();
}

} // namespace mucert
