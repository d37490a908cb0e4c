// Command-line surface for the convex-body homomorphism library: operator
// application, the discrete Minkowski solver, the verification suite, and
// grid diagnostics.

#include <CLI11.hpp>
#include <cbh/cbh.hpp>

#include <cstdlib>
#include <iostream>

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

int thread_cap() {
    const char* env = std::getenv("CBH_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

struct LoadedBody {
    cbh::BodyFile file;
    cbh::GridPtr grid;

    bool is_polytope() const { return file.kind == "polytope"; }

    cbh::Polytope polytope() const {
        if (!is_polytope()) throw std::invalid_argument("expected a polytope body file");
        return file.polytope;
    }

    cbh::SupportBody support() const {
        if (file.kind == "support") return cbh::SupportBody{grid, file.samples, nullptr};
        if (file.kind == "polytope") return cbh::support_body_of(file.polytope, grid);
        throw std::invalid_argument("expected a support or polytope body file");
    }
};

LoadedBody load_body(const std::string& path, int resolution) {
    LoadedBody b;
    b.file = cbh::body_from_json(cbh::load_json(path));
    int res = b.file.grid_resolution > 0 ? b.file.grid_resolution : resolution;
    b.grid = cbh::build_grid(3, res);
    if (b.file.kind != "polytope" &&
        static_cast<std::size_t>(b.file.samples.size()) != b.grid->size())
        throw std::invalid_argument("body file: sample count does not match grid resolution");
    return b;
}

cbh::ZonalKernel kernel_from_csv(const std::string& path, bool even, bool is_support) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open kernel csv " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double t, v;
        if (!(ls >> t >> v)) throw std::invalid_argument("kernel csv: bad row '" + line + "'");
        if (t < -1.0 - 1e-12 || t > 1.0 + 1e-12)
            throw std::invalid_argument("kernel csv: t outside [-1, 1]");
        rows.emplace_back(std::clamp(t, -1.0, 1.0), v);
    }
    if (rows.size() < 2) throw std::invalid_argument("kernel csv: need at least 2 rows");
    std::sort(rows.begin(), rows.end());
    cbh::ZonalKernel k;
    k.profile = [rows](double t) {
        if (t <= rows.front().first) return rows.front().second;
        if (t >= rows.back().first) return rows.back().second;
        auto hi = std::upper_bound(rows.begin(), rows.end(), std::make_pair(t, 1e300));
        auto lo = hi - 1;
        double f = (t - lo->first) / (hi->first - lo->first);
        return (1.0 - f) * lo->second + f * hi->second;
    };
    k.even = even;
    k.is_support = is_support;
    k.name = "csv";
    return k;
}

cbh::StarBody star_of(const LoadedBody& b) {
    if (b.file.kind == "star") return cbh::StarBody{b.grid, b.file.samples, nullptr};
    if (b.file.kind == "polytope") {
        // radial function of a polytope with the origin interior:
        // rho(u) = min over facets of offset / (u . normal) for u . normal > 0
        cbh::Polytope p = b.file.polytope;
        cbh::AtomicMeasure s = cbh::surface_area_measure(p);
        std::vector<double> offsets(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) offsets[i] = p.support(s.dirs[i]);
        auto dirs = s.dirs;
        return cbh::make_star_body(b.grid, [dirs, offsets](const cbh::Vector3d& u) {
            double r = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < dirs.size(); ++i) {
                double c = u.dot(dirs[i]);
                if (c > 1e-14) r = std::min(r, offsets[i] / c);
            }
            if (!std::isfinite(r))
                throw std::invalid_argument("polytope is unbounded in some direction");
            return r;
        });
    }
    throw std::invalid_argument("expected a star or polytope body file");
}

void emit(const std::string& path, const cbh::json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        cbh::save_json(path, j);
    }
}

int run_op(const std::string& name, const std::string& in_path, const std::string& a_path,
           const std::string& b_path, const std::string& out_path, int resolution, double l1,
           double l2, const std::string& kernel_csv, bool kernel_even, bool kernel_support,
           bool verify) {
    cbh::GridPtr grid = cbh::build_grid(3, resolution);
    auto kernel_named = [&](const std::string& n) {
        if (!kernel_csv.empty()) return kernel_from_csv(kernel_csv, kernel_even, kernel_support);
        if (n == "pi") return cbh::projection_kernel();
        if (n == "theta") return cbh::disc_kernel();
        throw std::invalid_argument("unknown kernel " + n);
    };

    if (name == "pi" || name == "theta") {
        LoadedBody in = load_body(in_path, resolution);
        cbh::Polytope K = in.polytope();
        cbh::ZonalKernel k = kernel_named(name);
        cbh::AtomicMeasure s = cbh::surface_area_measure(K);
        cbh::SupportBody img = cbh::apply_zonal(s, k, in.grid);
        if (verify) {
            double w2 = cbh::w2_exact(*in.grid, [&](const cbh::Vector3d& u) { return img.eval(u); });
            double rhs = cbh::kernel_constant(k) * s.mass() / 3.0;
            std::cout << "verify image-mean-width-proportionality margin "
                      << (w2 - rhs) / std::max(std::abs(w2), std::abs(rhs)) << '\n';
            std::cout << "verify image-steiner-point-norm " << cbh::steiner_point(img).norm()
                      << '\n';
        }
        emit(out_path, cbh::to_json(img));
        return 0;
    }
    if (name == "intersection") {
        LoadedBody in = load_body(in_path, resolution);
        cbh::StarBody L = star_of(in);
        cbh::StarBody img = cbh::intersection_body(L);
        if (verify) {
            auto checks = cbh::check_lemma_dual_wn1(
                cbh::DualCtx{cbh::intersection_measure(3), in.grid}, L);
            for (const auto& c : checks)
                std::cout << "verify " << c.id << " margin " << c.margin << '\n';
        }
        emit(out_path, cbh::to_json(img));
        return 0;
    }
    if (name == "centroid") {
        LoadedBody in = load_body(in_path, resolution);
        cbh::StarBody L = star_of(in);
        cbh::SupportBody img = cbh::centroid_body(L);
        if (verify) {
            // degree-1 homogeneity under dilation of the source
            cbh::SupportBody img2 = cbh::centroid_body(cbh::dilate(L, 2.0));
            double err = ((img2.h / 2.0) - img.h).cwiseAbs().maxCoeff() / img.h.cwiseAbs().maxCoeff();
            std::cout << "verify centroid-homogeneity margin " << err << '\n';
        }
        emit(out_path, cbh::to_json(img));
        return 0;
    }
    if (name == "polar") {
        LoadedBody in = load_body(in_path, resolution);
        if (in.file.kind == "star") {
            cbh::StarBody L{in.grid, in.file.samples, nullptr};
            L.validate();
            cbh::SupportBody out = cbh::polar(L);
            if (verify) {
                double err = (cbh::polar(out).rho - L.rho).cwiseAbs().maxCoeff();
                std::cout << "verify polar-involution sup-error " << err << '\n';
            }
            emit(out_path, cbh::to_json(out));
        } else {
            cbh::SupportBody h = in.support();
            cbh::StarBody out = cbh::polar(h);
            if (verify) {
                double err = (cbh::polar(out).h - h.h).cwiseAbs().maxCoeff();
                std::cout << "verify polar-involution sup-error " << err << '\n';
            }
            emit(out_path, cbh::to_json(out));
        }
        return 0;
    }
    if (name == "minkowski-sum") {
        LoadedBody a = load_body(a_path, resolution), b = load_body(b_path, resolution);
        cbh::Polytope out = cbh::minkowski_sum(a.polytope(), b.polytope(), l1, l2);
        if (verify) {
            double err = 0.0;
            for (const auto& u : grid->nodes3)
                err = std::max(err, std::abs(out.support(u) - l1 * a.polytope().support(u) -
                                             l2 * b.polytope().support(u)));
            std::cout << "verify support-additivity sup-error " << err << '\n';
        }
        emit(out_path, cbh::to_json(out));
        return 0;
    }
    if (name == "blaschke-sum") {
        LoadedBody a = load_body(a_path, resolution), b = load_body(b_path, resolution);
        cbh::Polytope out = cbh::blaschke_sum(a.polytope(), b.polytope(), l1, l2, *grid);
        if (verify) {
            cbh::AtomicMeasure want = cbh::combine(cbh::surface_area_measure(a.polytope()),
                                                   cbh::surface_area_measure(b.polytope()), l1, l2);
            cbh::AtomicMeasure got = cbh::surface_area_measure(out);
            double err = 0.0;
            for (std::size_t i = 0; i < want.size(); ++i) {
                double g = 0.0;
                for (std::size_t j = 0; j < got.size(); ++j)
                    if (want.dirs[i].dot(got.dirs[j]) > 1.0 - 1e-9) g += got.weights[j];
                err = std::max(err, std::abs(g - want.weights[i]) / want.weights[i]);
            }
            std::cout << "verify surface-measure-additivity rel-error " << err << '\n';
        }
        emit(out_path, cbh::to_json(out));
        return 0;
    }
    if (name == "radial-sum" || name == "radial-blaschke-sum") {
        LoadedBody a = load_body(a_path, resolution), b = load_body(b_path, resolution);
        cbh::StarBody A = star_of(a), B = star_of(b);
        if (a.grid->resolution != b.grid->resolution)
            throw std::invalid_argument("radial sums need a shared grid resolution");
        cbh::StarBody Bs{A.grid, B.rho, B.eval_fn};  // align grid pointers
        cbh::StarBody out = name == "radial-sum" ? cbh::radial_sum(A, Bs, l1, l2)
                                                 : cbh::radial_blaschke_sum(A, Bs, l1, l2);
        if (verify) {
            std::size_t i = out.rho.size() / 2;
            double want = name == "radial-sum"
                              ? l1 * A.rho[i] + l2 * B.rho[i]
                              : std::sqrt(l1 * A.rho[i] * A.rho[i] + l2 * B.rho[i] * B.rho[i]);
            std::cout << "verify pointwise-combination error " << std::abs(out.rho[i] - want)
                      << '\n';
        }
        emit(out_path, cbh::to_json(out));
        return 0;
    }
    if (name == "steiner") {
        LoadedBody in = load_body(in_path, resolution);
        cbh::Vector3d s = in.is_polytope() ? cbh::steiner_point(in.polytope(), *in.grid)
                                           : cbh::steiner_point(in.support());
        cbh::json j;
        j["steiner_point"] = {s.x(), s.y(), s.z()};
        emit(out_path, j);
        return 0;
    }
    if (name == "surface-measure") {
        LoadedBody in = load_body(in_path, resolution);
        cbh::AtomicMeasure s = cbh::surface_area_measure(in.polytope());
        if (verify)
            std::cout << "verify measure-centroid-norm " << s.centroid().norm() << '\n';
        emit(out_path, cbh::to_json(s));
        return 0;
    }
    throw std::invalid_argument("unknown op " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex-body homomorphisms: operators, Minkowski solver, verification suite"};
    app.require_subcommand(1);
    (void)thread_cap();  // CBH_THREADS caps worker threads; evaluation is sequential

    // ---- op ----
    auto* op = app.add_subcommand("op", "apply an operator to body files");
    std::string op_name, in_path, a_path, b_path, out_path, kernel_csv;
    int resolution = 6;
    double l1 = 1.0, l2 = 1.0;
    bool verify = false, kernel_even = false, kernel_support = false;
    op->add_option("name", op_name,
                   "pi | theta | intersection | centroid | polar | minkowski-sum | blaschke-sum | "
                   "radial-sum | radial-blaschke-sum | steiner | surface-measure")
        ->required();
    op->add_option("--in", in_path, "input body file (single-body ops)");
    op->add_option("--a", a_path, "first input body file (two-body ops)");
    op->add_option("--b", b_path, "second input body file (two-body ops)");
    op->add_option("--out", out_path, "output file; '-' or empty prints to stdout");
    op->add_option("--resolution", resolution, "grid resolution")->check(CLI::PositiveNumber);
    op->add_option("--l1", l1, "first combination weight");
    op->add_option("--l2", l2, "second combination weight");
    op->add_option("--kernel-csv", kernel_csv, "zonal profile as t,value rows on [-1,1]");
    op->add_flag("--kernel-even", kernel_even, "mark the csv kernel as even");
    op->add_flag("--kernel-support", kernel_support, "mark the csv kernel as a support function");
    op->add_flag("--verify", verify, "cross-check the op against its invariant, print margins");

    // ---- solve-minkowski ----
    auto* solve = app.add_subcommand("solve-minkowski",
                                     "reconstruct a polytope from its surface area measure");
    std::string measure_path, solve_out;
    double solve_tol = 1e-6;
    int solve_res = 6;
    solve->add_option("--measure", measure_path, "measure json file")->required();
    solve->add_option("--out", solve_out, "output body file");
    solve->add_option("--tol", solve_tol, "max relative facet-area error");
    solve->add_option("--resolution", solve_res, "grid resolution for Steiner centering");

    // ---- suite ----
    auto* suite = app.add_subcommand("suite", "run the randomized verification suite");
    cbh::SuiteConfig cfg;
    std::string ops_csv = "pi,theta,intersection";
    std::string report_path, csv_path;
    suite->add_option("--dim", cfg.dim, "ambient dimension (3)");
    suite->add_option("--trials", cfg.trials, "trials per theorem family");
    suite->add_option("--seed", cfg.seed, "base seed");
    suite->add_option("--ops", ops_csv, "comma-separated operator list");
    suite->add_option("--resolution", cfg.resolution, "grid resolution");
    suite->add_option("--equality-every", cfg.equality_every,
                      "probe the equality case every k-th trial");
    suite->add_option("--out", report_path, "report json path");
    suite->add_option("--csv", csv_path, "margin table csv path");

    // ---- grid-info ----
    auto* ginfo = app.add_subcommand("grid-info", "print quadrature grid diagnostics");
    int gi_res = 6, gi_dim = 3;
    ginfo->add_option("--resolution", gi_res, "grid resolution");
    ginfo->add_option("--dim", gi_dim, "ambient dimension");

    CLI11_PARSE(app, argc, argv);

    try {
        if (op->parsed()) {
            return run_op(op_name, in_path, a_path, b_path, out_path, resolution, l1, l2,
                          kernel_csv, kernel_even, kernel_support, verify);
        }
        if (solve->parsed()) {
            cbh::AtomicMeasure m = cbh::measure_from_json(cbh::load_json(measure_path));
            cbh::GridPtr grid = cbh::build_grid(3, solve_res);
            try {
                cbh::MinkowskiSolution sol = cbh::solve_minkowski(m, *grid, solve_tol);
                std::cout << "solved: residual " << sol.residual << ", iterations "
                          << sol.iterations << '\n';
                emit(solve_out, cbh::to_json(sol.body));
            } catch (const cbh::SolverError& e) {
                std::cerr << "solver did not converge: " << e.what() << '\n';
                return kExitSolver;
            }
            return 0;
        }
        if (suite->parsed()) {
            cfg.ops.clear();
            std::istringstream os(ops_csv);
            std::string tok;
            while (std::getline(os, tok, ','))
                if (!tok.empty()) cfg.ops.push_back(tok);
            cbh::SuiteReport rep = cbh::run_suite(cfg);
            if (!report_path.empty()) cbh::save_json(report_path, cbh::to_json(rep));
            if (!csv_path.empty()) {
                std::ofstream out(csv_path);
                out << cbh::report_csv(rep);
            }
            std::cout << "suite: " << rep.total_violations << " violations, "
                      << rep.total_equality_failures << " equality failures over "
                      << rep.families.size() << " families\n";
            for (const auto& v : rep.violations)
                std::cout << "  " << v.family << " trial " << v.trial << ": " << v.message << '\n';
            return rep.clean() ? 0 : kExitViolations;
        }
        if (ginfo->parsed()) {
            cbh::GridPtr g = cbh::build_grid(gi_dim, gi_res);
            std::cout << "dim " << g->dim << ", resolution " << g->resolution << ", nodes "
                      << g->size() << " (" << g->n_t << " x " << g->n_phi << ")\n";
            double total = g->total_weight();
            std::cout << "total weight " << total << " (sphere area "
                      << cbh::sphere_surface_area(gi_dim) << ", error "
                      << total - cbh::sphere_surface_area(gi_dim) << ")\n";
            if (gi_dim == 3) {
                double m2 = cbh::integrate(*g, [](const cbh::Vector3d& u) { return u.z() * u.z(); });
                std::cout << "second moment along pole " << m2 << " (exact "
                          << 4.0 * cbh::pi() / 3.0 << ")\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
