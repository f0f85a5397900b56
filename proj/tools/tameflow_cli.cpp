// tameflow: command-line front end for the tameflow library.
//
// Exit codes: 0 ok, 1 invalid input, 2 a mathematical certificate failed,
// 3 file could not be read or written.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tameflow/io.hpp"
#include "tameflow/tameflow.hpp"

using namespace tameflow;

namespace {

struct RunConfig {
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::string out;
    std::string format = "json";
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string csv() const {
        std::string s;
        for (std::size_t i = 0; i < header.size(); ++i)
            s += (i ? "," : "") + header[i];
        s += "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                s += (i ? "," : "") + num(r[i]);
            s += "\n";
        }
        return s;
    }
};

/// Polyline plot of every column against the first.
std::string svg_plot(const Table& t, const std::string& title) {
    const double w = 640, h = 400, pad = 40;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& r : t.rows) {
        x0 = std::min(x0, r[0]);
        x1 = std::max(x1, r[0]);
        for (std::size_t c = 1; c < r.size(); ++c)
            if (std::isfinite(r[c])) {
                y0 = std::min(y0, r[c]);
                y1 = std::max(y1, r[c]);
            }
    }
    if (!(x1 > x0))
        x1 = x0 + 1;
    if (!(y1 > y0))
        y1 = y0 + 1;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    s << "<text x=\"" << pad << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    s << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << w - 2 * pad << "\" height=\"" << h - 2 * pad
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (std::size_t c = 1; c < t.header.size(); ++c) {
        s << "<polyline fill=\"none\" stroke=\"" << colors[(c - 1) % 6] << "\" points=\"";
        for (const auto& r : t.rows) {
            if (!std::isfinite(r[c]))
                continue;
            double px = pad + (r[0] - x0) / (x1 - x0) * (w - 2 * pad);
            double py = h - pad - (r[c] - y0) / (y1 - y0) * (h - 2 * pad);
            s << num(px) << "," << num(py) << " ";
        }
        s << "\"/>\n";
        s << "<text x=\"" << w - pad + 4 - 40 << "\" y=\"" << pad + 14 * c << "\" font-family=\"sans-serif\" "
          << "font-size=\"11\" fill=\"" << colors[(c - 1) % 6] << "\">" << t.header[c] << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void emit(const RunConfig& cfg, const std::string& stem, const std::string& ext, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    write_text_file(cfg.out + "/" + stem + "." + ext, text);
}

void emit_json(const RunConfig& cfg, const std::string& stem, const Json& j) { emit(cfg, stem, "json", j.dump(2) + "\n"); }

Json complex_summary(const Complex& k) {
    auto h = homology(k);
    Json j;
    j["vertices"] = k.vertices();
    j["dim"] = k.dim();
    j["f"] = k.f_vector();
    j["f_vector"] = k.f_vector();
    j["betti"] = h.betti;
    j["torsion"] = h.torsion;
    j["euler"] = k.euler_characteristic();
    return j;
}

int cmd_complex_info(const RunConfig& cfg, const std::string& path) {
    Complex k = complex_from_json(read_json_file(path));
    Json j = complex_summary(k);
    j["faces"] = faces_to_json(k);
    emit_json(cfg, "complex-info", j);
    return 0;
}

std::vector<double> parse_times(const std::string& list) {
    std::vector<double> ts;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            ts.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("times: cannot parse '" + item + "'");
        }
    }
    if (ts.empty())
        throw ValidationError("times: empty list");
    return ts;
}

int cmd_flow_trace(const RunConfig& cfg, const std::string& kpath, const std::string& opath,
                   const std::string& ppath, const std::string& times) {
    Complex k = complex_from_json(read_json_file(kpath));
    Orientation o = orientation_from_json(k, read_json_file(opath));
    Json pj = read_json_file(ppath);
    auto carrier = detail::field<std::vector<std::string>>(pj, "carrier", "point");
    auto coords = detail::field<std::vector<double>>(pj, "coords", "point");
    BarycentricPoint p = BarycentricPoint::make(carrier, coords, cfg.tol);
    auto ts = parse_times(times);
    auto lim = flow_limits(o, p);
    Table t;
    t.header.push_back("t");
    for (const auto& v : p.carrier)
        t.header.push_back(v);
    for (double x : ts) {
        auto q = complex_flow(o, p, x);
        std::vector<double> row{x};
        row.insert(row.end(), q.coords.begin(), q.coords.end());
        t.rows.push_back(row);
    }
    if (cfg.format == "json") {
        Json j;
        j["carrier"] = p.carrier;
        Json rows = Json::array();
        for (const auto& r : t.rows)
            rows.push_back(r);
        j["rows"] = rows;
        j["forward_limit"] = lim.forward;
        j["backward_limit"] = lim.backward;
        emit_json(cfg, "flow-trace", j);
    } else {
        std::string csv = t.csv() + "forward_limit," + lim.forward + "\nbackward_limit," + lim.backward + "\n";
        emit(cfg, "flow-trace", "csv", csv);
        if (cfg.format == "svg")
            emit(cfg, "flow-trace", "svg", svg_plot(t, "flow trace"));
    }
    return 0;
}

Json morse_report_json(const MorseReport& rep, const Complex& k, const std::map<Label, Face>* barycenters) {
    Json pts = Json::array();
    for (const auto& s : rep.points) {
        Json p;
        p["vertex"] = s.vertex;
        if (barycenters)
            p["face"] = barycenters->at(s.vertex);
        p["unstable_link_f"] = s.unstable_link.f_vector();
        p["unstable_link_facets"] = s.unstable_link.facets();
        p["morse_poly"] = poly_to_json(s.morse_poly);
        p["morse_poly_text"] = s.morse_poly.to_string();
        p["regularity"] = to_string(s.regular);
        p["method"] = s.verdict_method;
        pts.push_back(p);
    }
    Json j;
    j["complex"] = complex_summary(k);
    j["link"] = rep.star_restricted ? "star-restricted" : "literal";
    j["points"] = pts;
    j["sum"] = poly_to_json(rep.sum);
    j["sum_text"] = rep.sum.to_string();
    j["space"] = poly_to_json(rep.space);
    j["space_text"] = rep.space.to_string();
    if (rep.certificate) {
        j["certificate"] = poly_to_json(*rep.certificate);
        j["certificate_text"] = rep.certificate->to_string();
        j["falsified"] = false;
    } else {
        j["certificate"] = nullptr;
        j["falsified"] = true;
    }
    return j;
}

int cmd_conley(const RunConfig& cfg, const std::string& kpath, const std::string& opath, bool stiefel,
               bool literal) {
    Complex k = complex_from_json(read_json_file(kpath));
    MorseReport rep;
    Json j;
    if (stiefel) {
        auto s = stiefel_orientation(k);
        rep = morse_inequalities(s.orientation, !literal);
        j = morse_report_json(rep, s.subdivision, &s.barycenter_of);
        j["stiefel"] = true;
    } else {
        if (opath.empty())
            throw ValidationError("conley: an orientation file is required unless --stiefel is given");
        Orientation o = orientation_from_json(k, read_json_file(opath));
        rep = morse_inequalities(o, !literal);
        j = morse_report_json(rep, k, nullptr);
        j["stiefel"] = false;
    }
    emit_json(cfg, "conley", j);
    return rep.certificate ? 0 : 2;
}

Json optional_label(const Poset& p, const std::optional<std::size_t>& x) {
    return x ? Json(p.label(*x)) : Json(nullptr);
}

int cmd_poset_morse(const RunConfig& cfg, const std::string& ppath, const std::string& fpath, bool dim_function) {
    Json pj = read_json_file(ppath);
    std::optional<CWFacePoset> cw;
    Poset p;
    std::optional<Complex> source;
    if (pj.is_object() && pj.contains("facets")) {
        source = complex_from_json(pj);
        cw = CWFacePoset::from_complex(*source);
        p = cw->poset();
    } else if (pj.is_object() && pj.contains("dim")) {
        cw = cw_from_json(pj);
        p = cw->poset();
    } else {
        p = poset_from_json(pj);
    }
    AdmissibleFunction f;
    if (dim_function) {
        if (!cw)
            throw ValidationError("poset-morse: --dim-function needs dimensions (a complex or a cw file)");
        std::vector<double> v(cw->dims().begin(), cw->dims().end());
        f = AdmissibleFunction::make(p, v);
    } else {
        if (fpath.empty())
            throw ValidationError("poset-morse: a function file or --dim-function is required");
        f = AdmissibleFunction::make(p, function_values_from_json(read_json_file(fpath)));
    }

    Json j;
    j["elements"] = p.labels();
    Json values = Json::object();
    for (std::size_t i = 0; i < p.size(); ++i)
        values[p.label(i)] = f(i);
    j["values"] = values;
    j["admissible"] = true;

    auto coh = coherence(p, f);
    Json cj;
    cj["coherent"] = coh.coherent;
    cj["omega"] = coh.omega;
    cj["offending_interval"] = coh.offending ? Json{p.label(coh.offending->first), p.label(coh.offending->second)}
                                             : Json(nullptr);
    j["coherence"] = cj;

    Json viol = Json::object();
    for (std::size_t x = 0; x < p.size(); ++x) {
        auto v = violation_sets(p, f, x);
        Json e;
        e["plus"] = Json::array();
        e["minus"] = Json::array();
        for (auto y : v.plus)
            e["plus"].push_back(p.label(y));
        for (auto y : v.minus)
            e["minus"].push_back(p.label(y));
        viol[p.label(x)] = e;
    }
    j["violations"] = viol;

    auto c = c_plus_minus(p, f);
    Json cp = Json::object(), cm = Json::object();
    for (std::size_t x = 0; x < p.size(); ++x) {
        cp[p.label(x)] = optional_label(p, c.c_plus[x]);
        cm[p.label(x)] = optional_label(p, c.c_minus[x]);
    }
    j["c_plus"] = cp;
    j["c_minus"] = cm;
    j["c_plus_holds"] = c.plus_holds();
    j["c_minus_holds"] = c.minus_holds();

    Json reg = Json::object();
    auto rp = regular_points(p, f);
    for (std::size_t x = 0; x < p.size(); ++x)
        reg[p.label(x)] = Json{{"verdict", to_string(rp[x].verdict)}, {"reason", rp[x].reason}};
    j["regular_points"] = reg;

    int code = 0;
    if (cw && c.minus_holds()) {
        std::optional<PolyZ> space;
        if (source)
            space = poincare_polynomial(*source);
        auto rep = cminus_morse_report(*cw, f, space);
        Json m;
        Json faces = Json::array();
        for (const auto& fc : rep.faces) {
            Json e;
            e["face"] = p.label(fc.face);
            e["dim"] = cw->dim(fc.face);
            e["c_minus"] = optional_label(p, fc.c_minus);
            e["polynomial"] = poly_to_json(fc.polynomial);
            e["critical"] = fc.critical;
            e["mplus_facets"] = fc.mplus.facets();
            faces.push_back(e);
        }
        m["faces"] = faces;
        Json critical = Json::array();
        for (const auto& fc : rep.faces)
            if (fc.critical)
                critical.push_back(p.label(fc.face));
        m["critical"] = critical;
        m["space"] = poly_to_json(rep.space);
        m["space_text"] = rep.space.to_string();
        m["sum1"] = poly_to_json(rep.sum1);
        m["sum1_text"] = rep.sum1.to_string();
        m["certificate1"] = rep.certificate1 ? poly_to_json(*rep.certificate1) : Json(nullptr);
        m["certificate1_text"] = rep.certificate1 ? Json(rep.certificate1->to_string()) : Json(nullptr);
        m["c_holds"] = rep.c_holds;
        if (rep.c_holds) {
            m["sum2"] = poly_to_json(rep.sum2);
            m["sum2_text"] = rep.sum2.to_string();
            m["certificate2"] = rep.certificate2 ? poly_to_json(*rep.certificate2) : Json(nullptr);
            m["certificate2_text"] = rep.certificate2 ? Json(rep.certificate2->to_string()) : Json(nullptr);
        }
        bool ok = rep.certificate1 && (!rep.c_holds || rep.certificate2);
        m["falsified"] = !ok;
        j["morse"] = m;
        code = ok ? 0 : 2;
    } else {
        j["morse"] = nullptr;
    }
    emit_json(cfg, "poset-morse", j);
    return code;
}

std::vector<double> time_grid(double t_max, int steps) {
    if (steps < 1 || !(t_max > 0))
        throw ValidationError("gap-demo: need t-max > 0 and steps >= 1");
    std::vector<double> ts;
    for (int i = 0; i <= steps; ++i)
        ts.push_back(t_max * i / steps);
    return ts;
}

int cmd_gap_demo(const RunConfig& cfg, const std::string& kind, double a, double t_max, int steps, int n) {
    Table t;
    int code = 0;
    auto grid = time_grid(t_max, steps);
    if (kind == "siv") {
        t.header = {"t", "gap", "closed_form", "dist", "ratio"};
        for (const auto& r : siv_model_demo(a, grid))
            t.rows.push_back({r.t, r.gap, r.closed_form, r.dist, r.ratio});
    } else if (kind == "decay") {
        Rng rng(cfg.seed);
        Matrix am;
        Subspace v;
        if (n <= 2) {
            am = Matrix(Eigen::Vector2d(1, -1).asDiagonal());
            Matrix b(2, 1);
            b << 1, 1;
            v = Subspace(b);
        } else {
            Matrix g(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    g(i, j) = rng.normal();
            am = (g + g.transpose()) / 2.0;
            v = Subspace::random(n, SymOperator(am).positive_eigenspace().dim(), rng);
        }
        t.header = {"t", "gap", "bound"};
        for (const auto& r : decay_bound_check(SymOperator(am), v, grid)) {
            t.rows.push_back({r.t, r.gap, r.bound});
            if (!r.holds)
                code = 2;
        }
    } else if (kind == "grass") {
        if (n < 2)
            throw ValidationError("gap-demo grass: n must be at least 2");
        Rng rng(cfg.seed);
        std::vector<double> lambdas;
        for (int i = 0; i < n; ++i)
            lambdas.push_back(n - 1 - i);
        const int k = n / 2;
        std::vector<Eigen::Index> idx;
        for (int i = 0; i < k; ++i)
            idx.push_back(i);
        Matrix s(n - k, k);
        for (int i = 0; i < n - k; ++i)
            for (int j = 0; j < k; ++j)
                s(i, j) = rng.normal();
        t.header = {"t"};
        for (int i = 0; i < n - k; ++i)
            for (int j = 0; j < k; ++j)
                t.header.push_back("s" + std::to_string(k + i) + "_" + std::to_string(j));
        for (double x : grid) {
            Matrix m = grassmann_graph_flow(idx, s, lambdas, x);
            std::vector<double> row{x};
            for (int i = 0; i < n - k; ++i)
                for (int j = 0; j < k; ++j)
                    row.push_back(m(i, j));
            t.rows.push_back(row);
        }
    } else {
        throw ValidationError("gap-demo: unknown kind '" + kind + "' (expected decay, siv or grass)");
    }
    emit(cfg, "gap-" + kind, "csv", t.csv());
    if (cfg.format == "svg")
        emit(cfg, "gap-" + kind, "svg", svg_plot(t, "gap-demo " + kind));
    return code;
}

int cmd_asymptotic(const RunConfig& cfg, std::size_t m, std::size_t count, double horizon) {
    if (m < 1 || m > 6)
        throw ValidationError("asymptotic: m must be between 1 and 6");
    auto rep = asymptotic_pair_sample(m, count, horizon, cfg.seed);
    Json j;
    j["m"] = m;
    j["count"] = count;
    j["horizon"] = horizon;
    j["seed"] = cfg.seed;
    Json hist = Json::array();
    for (const auto& [cls, c] : rep.histogram)
        hist.push_back(Json{{"ell", cls.first}, {"k", cls.second}, {"count", c}});
    j["histogram"] = hist;
    j["violations"] = rep.violations;
    j["ties"] = rep.ties;

    // Normal-slice spot checks at each interior index.
    Rng rng(cfg.seed + 1);
    Json slices = Json::array();
    bool slices_ok = true;
    for (std::size_t k = 0; k <= m; ++k) {
        std::vector<double> wp(m + 1, 0.0), wm(m + 1, 0.0);
        double sp = 0, sm = 0;
        for (std::size_t i = k; i <= m; ++i)
            sp += wp[i] = rng.uniform(0.1, 1.0);
        for (std::size_t i = 0; i <= k; ++i)
            sm += wm[i] = rng.uniform(0.1, 1.0);
        for (auto& x : wp)
            x /= sp;
        for (auto& x : wm)
            x /= sm;
        double th = normal_slice_threshold(wp, wm, k);
        double t = std::isfinite(th) ? std::max(th, 0.0) + 2.0 : 2.0;
        Json e{{"k", k}, {"t", t}};
        try {
            auto s = normal_slice_intersection(wp, wm, k, t, cfg.tol);
            e["residual"] = s.residual;
        } catch (const CertificateFailure& err) {
            e["error"] = err.what();
            slices_ok = false;
        }
        slices.push_back(e);
    }
    j["normal_slices"] = slices;
    emit_json(cfg, "asymptotic", j);
    return rep.violations == 0 && slices_ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tameflow: tame flows on simplicial complexes, Conley indices and Morse inequalities"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--tol", cfg.tol, "Numerical tolerance")->capture_default_str();
    app.add_option("--out", cfg.out, "Write reports into this directory instead of stdout");
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "svg"}))
        ->capture_default_str();

    std::string kpath, opath, ppath, fpath, times = "0,1,2,3,4,5", kind;
    bool stiefel = false, literal = false, dim_function = false;
    double a = 1.0, t_max = 5.0, horizon = 20.0;
    int steps = 10, n = 2;
    std::size_t m = 3, count = 1000;

    auto* info = app.add_subcommand("complex-info", "f-vector, Betti numbers and Euler characteristic");
    info->add_option("complex", kpath, "Complex JSON")->required();

    auto* trace = app.add_subcommand("flow-trace", "Trajectory of a point under the simplicial flow");
    trace->add_option("complex", kpath, "Complex JSON")->required();
    trace->add_option("orientation", opath, "Orientation JSON")->required();
    trace->add_option("point", ppath, "Point JSON")->required();
    trace->add_option("--times", times, "Comma-separated times")->capture_default_str();

    auto* conley = app.add_subcommand("conley", "Morse polynomials and Morse inequalities");
    conley->add_option("complex", kpath, "Complex JSON")->required();
    conley->add_option("orientation", opath, "Orientation JSON");
    conley->add_flag("--stiefel", stiefel, "Use the Stiefel flow of the barycentric subdivision");
    conley->add_flag("--literal-link", literal, "Use the full subcomplex on the lower neighbours as link");

    auto* pm = app.add_subcommand("poset-morse", "Morse theory of a function on a poset");
    pm->add_option("poset", ppath, "Poset, CW face poset or complex JSON")->required();
    pm->add_option("function", fpath, "Function JSON");
    pm->add_flag("--dim-function", dim_function, "Use f = dim");

    auto* gd = app.add_subcommand("gap-demo", "Gap tables: decay, siv or grass");
    gd->add_option("kind", kind, "decay, siv or grass")->required();
    gd->add_option("--a", a, "Parameter a of the siv model")->capture_default_str();
    gd->add_option("--t-max", t_max, "Largest time")->capture_default_str();
    gd->add_option("--steps", steps, "Number of time steps")->capture_default_str();
    gd->add_option("--n", n, "Ambient dimension (decay, grass)")->capture_default_str();

    auto* as = app.add_subcommand("asymptotic", "Limit pairs of the graph of the flow");
    as->add_option("--m", m, "Simplex dimension")->capture_default_str();
    as->add_option("--count", count, "Number of samples")->capture_default_str();
    as->add_option("--horizon", horizon, "Time horizon T")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*info)
            return cmd_complex_info(cfg, kpath);
        if (*trace)
            return cmd_flow_trace(cfg, kpath, opath, ppath, times);
        if (*conley)
            return cmd_conley(cfg, kpath, opath, stiefel, literal);
        if (*pm)
            return cmd_poset_morse(cfg, ppath, fpath, dim_function);
        if (*gd)
            return cmd_gap_demo(cfg, kind, a, t_max, steps, n);
        if (*as)
            return cmd_asymptotic(cfg, m, count, horizon);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CertificateFailure& e) {
        std::cerr << "certificate failed: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
