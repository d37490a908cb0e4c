#pragma once

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fields.hpp"
#include "measure.hpp"
#include "suite.hpp"

namespace cbh {

using json = nlohmann::ordered_json;

/// Body file format:
/// {"dim":3, "kind":"polytope"|"support"|"star",
///  "vertices":[[x,y,z],...] | "samples":[...], "grid_resolution":r}
/// Polytope round trips are bit exact (shortest round-trip float printing).
struct BodyFile {
    std::string kind;
    Polytope polytope;       // kind == "polytope"
    VectorXd samples;        // kind == "support" | "star"
    int grid_resolution = 0;
};

inline json to_json(const Polytope& p) {
    json j;
    j["dim"] = 3;
    j["kind"] = "polytope";
    json vs = json::array();
    for (const auto& v : p.vertices()) vs.push_back({v.x(), v.y(), v.z()});
    j["vertices"] = std::move(vs);
    return j;
}

inline json field_to_json(const std::string& kind, const VectorXd& samples, int resolution) {
    json j;
    j["dim"] = 3;
    j["kind"] = kind;
    j["samples"] = std::vector<double>(samples.data(), samples.data() + samples.size());
    j["grid_resolution"] = resolution;
    return j;
}

inline json to_json(const SupportBody& b) { return field_to_json("support", b.h, b.grid->resolution); }
inline json to_json(const StarBody& b) { return field_to_json("star", b.rho, b.grid->resolution); }

inline BodyFile body_from_json(const json& j) {
    BodyFile f;
    if (!j.contains("dim") || j.at("dim").get<int>() != 3)
        throw std::invalid_argument("body file: dim 3 required");
    f.kind = j.at("kind").get<std::string>();
    if (f.kind == "polytope") {
        std::vector<Vector3d> vs;
        for (const auto& row : j.at("vertices")) {
            if (row.size() != 3) throw std::invalid_argument("body file: bad vertex row");
            vs.emplace_back(row[0].get<double>(), row[1].get<double>(), row[2].get<double>());
        }
        f.polytope = Polytope(std::move(vs));
    } else if (f.kind == "support" || f.kind == "star") {
        auto s = j.at("samples").get<std::vector<double>>();
        f.samples = Eigen::Map<const VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
        f.grid_resolution = j.at("grid_resolution").get<int>();
    } else {
        throw std::invalid_argument("body file: unknown kind " + f.kind);
    }
    return f;
}

/// Measure file format: {"dim":3, "atoms":[{"dir":[x,y,z],"w":...},...]}
inline json to_json(const AtomicMeasure& m) {
    json j;
    j["dim"] = 3;
    json atoms = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json a;
        a["dir"] = {m.dirs[i].x(), m.dirs[i].y(), m.dirs[i].z()};
        a["w"] = m.weights[i];
        atoms.push_back(std::move(a));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

inline AtomicMeasure measure_from_json(const json& j) {
    if (!j.contains("dim") || j.at("dim").get<int>() != 3)
        throw std::invalid_argument("measure file: dim 3 required");
    AtomicMeasure m;
    for (const auto& a : j.at("atoms")) {
        const auto& d = a.at("dir");
        if (d.size() != 3) throw std::invalid_argument("measure file: bad direction");
        m.push(Vector3d(d[0].get<double>(), d[1].get<double>(), d[2].get<double>()),
               a.at("w").get<double>());
    }
    return m;
}

inline json to_json(const SuiteReport& r) {
    json j;
    j["schema_version"] = r.schema_version;
    json cfg;
    cfg["dim"] = r.config.dim;
    cfg["trials"] = r.config.trials;
    cfg["seed"] = r.config.seed;
    cfg["ops"] = r.config.ops;
    cfg["resolution"] = r.config.resolution;
    cfg["equality_every"] = r.config.equality_every;
    j["config"] = std::move(cfg);
    json fams = json::array();
    for (const auto& f : r.families) {
        json fj;
        fj["id"] = f.id;
        fj["rung"] = f.rung;
        fj["trials"] = f.trials;
        fj["violations"] = f.violations;
        fj["equality_trials"] = f.equality_trials;
        fj["equality_failures"] = f.equality_failures;
        fj["min_margin"] = f.min_margin;
        fj["worst_equality"] = f.worst_equality;
        fams.push_back(std::move(fj));
    }
    j["families"] = std::move(fams);
    json viols = json::array();
    for (const auto& v : r.violations) {
        json vj;
        vj["family"] = v.family;
        vj["trial"] = v.trial;
        vj["seed"] = v.seed;
        vj["margin"] = v.margin;
        vj["message"] = v.message;
        vj["reproduce"] = "suite --dim 3 --trials " + std::to_string(r.config.trials) +
                          " --seed " + std::to_string(r.config.seed) + "  # family " + v.family +
                          ", trial " + std::to_string(v.trial);
        viols.push_back(std::move(vj));
    }
    j["violations"] = std::move(viols);
    j["experiments"] = r.experiments;
    j["total_violations"] = r.total_violations;
    j["total_equality_failures"] = r.total_equality_failures;
    j["clean"] = r.clean();
    return j;
}

inline std::string report_csv(const SuiteReport& r) {
    std::ostringstream os;
    os << "family,rung,trials,violations,equality_trials,equality_failures,min_margin,"
          "worst_equality\n";
    for (const auto& f : r.families) {
        os << f.id << ',' << f.rung << ',' << f.trials << ',' << f.violations << ','
           << f.equality_trials << ',' << f.equality_failures << ',' << f.min_margin << ','
           << f.worst_equality << '\n';
    }
    return os.str();
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace cbh
