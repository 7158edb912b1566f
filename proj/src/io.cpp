#include "isomesh/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "isomesh/measures.hpp"
#include "isomesh/unitness.hpp"

namespace isomesh {

using nlohmann::json;

namespace {

const char* constraint_name(ConstraintTag t) {
    switch (t) {
        case ConstraintTag::Free: return "free";
        case ConstraintTag::Fixed: return "fixed";
        case ConstraintTag::SlideX: return "slide_x";
        case ConstraintTag::SlideY: return "slide_y";
    }
    return "free";
}

ConstraintTag constraint_from_name(const std::string& s) {
    if (s == "free") return ConstraintTag::Free;
    if (s == "fixed") return ConstraintTag::Fixed;
    if (s == "slide_x") return ConstraintTag::SlideX;
    if (s == "slide_y") return ConstraintTag::SlideY;
    throw std::runtime_error("unknown constraint tag: " + s);
}

const char* edge_class_name(EdgeClass c) {
    switch (c) {
        case EdgeClass::Unit: return "unit";
        case EdgeClass::Leg: return "leg";
        case EdgeClass::Hypotenuse: return "hyp";
    }
    return "unit";
}

EdgeClass edge_class_from_name(const std::string& s) {
    if (s == "unit") return EdgeClass::Unit;
    if (s == "leg") return EdgeClass::Leg;
    if (s == "hyp") return EdgeClass::Hypotenuse;
    throw std::runtime_error("unknown edge class: " + s);
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

MetricField FieldSpec::build() const {
    MetricField f = (id == "constant" || id == "identity")
                        ? MetricField::constant(constant_m)
                        : MetricField::from_id(id);
    f.set_smooth_abs(smooth_abs);
    return f;
}

RunConfig parse_config(const std::string& json_text) {
    json j = json::parse(json_text);
    RunConfig c;

    const auto& jf = j.at("field");
    c.field.id = jf.at("id").get<std::string>();
    if (jf.contains("params")) {
        const auto& p = jf["params"];
        if (p.contains("m11"))
            c.field.constant_m = {p.at("m11").get<double>(),
                                  p.value("m12", 0.0),
                                  p.at("m22").get<double>()};
        c.field.smooth_abs = p.value("smooth_abs", false);
    }

    if (j.contains("domain")) {
        const auto& d = j["domain"];
        c.domain = {d.at(0).get<double>(), d.at(1).get<double>(),
                    d.at(2).get<double>(), d.at(3).get<double>()};
    }
    if (j.contains("grid")) {
        c.nx = j["grid"].at(0).get<int>();
        c.ny = j["grid"].at(1).get<int>();
    }
    c.N = j.value("N", 10);
    if (c.N < 1) throw std::runtime_error("config: N must be >= 1");

    const std::string tiling = j.value("tiling", "equilateral");
    if (tiling == "equilateral")
        c.tiling = Tiling::Equilateral;
    else if (tiling == "right")
        c.tiling = Tiling::Right;
    else
        throw std::runtime_error("config: unknown tiling: " + tiling);

    c.initial_rotation_degrees = j.value("initial_rotation_degrees", 0.0);

    const std::string mode = j.value("constraints", "free");
    if (mode == "free")
        c.constraints = ConstraintMode::Free;
    else if (mode == "pin_corners")
        c.constraints = ConstraintMode::PinCorners;
    else if (mode == "slide_boundary")
        c.constraints = ConstraintMode::SlideBoundary;
    else
        throw std::runtime_error("config: unknown constraint mode: " + mode);

    if (j.contains("termination")) {
        const auto& t = j["termination"];
        c.termination.rel_cost_decrease_tol =
            t.value("rel_cost_decrease", c.termination.rel_cost_decrease_tol);
        c.termination.grad_maxnorm_tol = t.value("grad_maxnorm", c.termination.grad_maxnorm_tol);
        c.termination.step_norm_tol = t.value("step_norm", c.termination.step_norm_tol);
        c.termination.max_iters = t.value("max_iters", c.termination.max_iters);
    }
    c.out_dir = j.value("out_dir", std::string("."));
    c.seed = j.value("seed", 0u);

    // Domain must sit inside the field's validity region.
    const MetricField f = c.field.build();
    if (!f.validity().contains({c.domain.x0, c.domain.y0}) ||
        !f.validity().contains({c.domain.x1, c.domain.y1}))
        throw std::runtime_error("config: domain outside field validity region");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void write_mesh(std::ostream& os, const SubdividedMesh& mesh) {
    os << "ISOMESH 1\n";
    os << "N " << mesh.N << "\n";
    os << "VERTICES " << mesh.subvertices.size() << "\n";
    for (std::size_t i = 0; i < mesh.subvertices.size(); ++i)
        os << i << " " << fmt_double(mesh.subvertices[i].x) << " "
           << fmt_double(mesh.subvertices[i].y) << " " << constraint_name(mesh.constraints[i])
           << "\n";
    os << "MACROVERTICES " << mesh.macro.vertices.size() << "\n";
    for (std::size_t i = 0; i < mesh.macro.vertices.size(); ++i)
        os << i << " " << fmt_double(mesh.macro.vertices[i].x) << " "
           << fmt_double(mesh.macro.vertices[i].y) << " " << mesh.macro_vertex_id[i] << "\n";
    os << "MACROS " << mesh.macro.triangles.size() << "\n";
    for (std::size_t i = 0; i < mesh.macro.triangles.size(); ++i)
        os << i << " " << mesh.macro.triangles[i][0] << " " << mesh.macro.triangles[i][1] << " "
           << mesh.macro.triangles[i][2] << "\n";
    os << "SUBTRIS " << mesh.subtriangles.size() << "\n";
    for (std::size_t i = 0; i < mesh.subtriangles.size(); ++i) {
        const auto& t = mesh.subtriangles[i];
        os << i << " " << t.macro << " " << t.bi << " " << t.bj << " " << (t.up ? 1 : 0) << " "
           << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
    }
    os << "SUBEDGES " << mesh.subedges.size() << "\n";
    for (std::size_t i = 0; i < mesh.subedges.size(); ++i)
        os << i << " " << mesh.subedges[i].v0 << " " << mesh.subedges[i].v1 << " "
           << edge_class_name(mesh.subedges[i].cls) << "\n";
}

namespace {

void expect_section(std::istream& is, const std::string& name, std::size_t& count) {
    std::string tok;
    is >> tok >> count;
    if (tok != name) throw std::runtime_error("mesh file: expected section " + name);
}

}  // namespace

SubdividedMesh read_mesh(std::istream& is) {
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "ISOMESH" || version != 1)
        throw std::runtime_error("mesh file: bad header");

    SubdividedMesh mesh;
    std::string tok;
    is >> tok >> mesh.N;
    if (tok != "N") throw std::runtime_error("mesh file: expected N");

    std::size_t count = 0;
    expect_section(is, "VERTICES", count);
    mesh.subvertices.resize(count);
    mesh.constraints.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t id;
        std::string tag;
        is >> id >> mesh.subvertices[i].x >> mesh.subvertices[i].y >> tag;
        mesh.constraints[i] = constraint_from_name(tag);
    }

    expect_section(is, "MACROVERTICES", count);
    mesh.macro.vertices.resize(count);
    mesh.macro_vertex_id.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t id;
        is >> id >> mesh.macro.vertices[i].x >> mesh.macro.vertices[i].y >> mesh.macro_vertex_id[i];
    }

    expect_section(is, "MACROS", count);
    mesh.macro.triangles.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t id;
        is >> id >> mesh.macro.triangles[i][0] >> mesh.macro.triangles[i][1] >>
            mesh.macro.triangles[i][2];
    }

    expect_section(is, "SUBTRIS", count);
    mesh.subtriangles.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t id;
        int up;
        auto& t = mesh.subtriangles[i];
        is >> id >> t.macro >> t.bi >> t.bj >> up >> t.v[0] >> t.v[1] >> t.v[2];
        t.up = up != 0;
    }

    expect_section(is, "SUBEDGES", count);
    mesh.subedges.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t id;
        std::string cls;
        is >> id >> mesh.subedges[i].v0 >> mesh.subedges[i].v1 >> cls;
        mesh.subedges[i].cls = edge_class_from_name(cls);
    }
    if (!is) throw std::runtime_error("mesh file: truncated");

    // Rebuild derived data (boundary flags and macroedge chains) from the
    // barycentric indices stored with the subtriangles.
    std::map<std::pair<int, int>, int> incidence;
    for (const auto& st : mesh.subtriangles)
        for (int e = 0; e < 3; ++e) {
            int u = st.v[e], w = st.v[(e + 1) % 3];
            if (u > w) std::swap(u, w);
            ++incidence[{u, w}];
        }
    mesh.boundary_subvertex.assign(mesh.subvertices.size(), 0);
    for (const auto& [key, c] : incidence)
        if (c == 1) {
            mesh.boundary_subvertex[key.first] = 1;
            mesh.boundary_subvertex[key.second] = 1;
        }

    // Lattice id map per macro from the up-triangles: (i,j) -> v0,
    // (i+1,j) -> v1, (i,j+1) -> v2.
    const int N = mesh.N;
    std::map<std::pair<int, int>, std::vector<int>> chains;
    std::vector<std::map<std::pair<int, int>, int>> lattice(mesh.macro.triangles.size());
    for (const auto& st : mesh.subtriangles) {
        auto& lat = lattice[st.macro];
        if (st.up) {
            lat[{st.bi, st.bj}] = st.v[0];
            lat[{st.bi + 1, st.bj}] = st.v[1];
            lat[{st.bi, st.bj + 1}] = st.v[2];
        } else {
            lat[{st.bi + 1, st.bj}] = st.v[0];
            lat[{st.bi + 1, st.bj + 1}] = st.v[1];
            lat[{st.bi, st.bj + 1}] = st.v[2];
        }
    }
    for (std::size_t t = 0; t < mesh.macro.triangles.size(); ++t) {
        auto& lat = lattice[t];
        auto add_chain = [&](int mv0, int mv1, auto&& lattice_key) {
            std::pair<int, int> key(std::min(mv0, mv1), std::max(mv0, mv1));
            if (chains.count(key)) return;
            std::vector<int> chain(N + 1);
            for (int k = 0; k <= N; ++k) chain[k] = lat.at(lattice_key(k));
            if (mv1 < mv0) std::reverse(chain.begin(), chain.end());
            chains.emplace(key, std::move(chain));
        };
        const int mv0 = mesh.macro.triangles[t][0], mv1 = mesh.macro.triangles[t][1],
                  mv2 = mesh.macro.triangles[t][2];
        add_chain(mv0, mv1, [](int k) { return std::pair<int, int>(k, 0); });
        add_chain(mv0, mv2, [](int k) { return std::pair<int, int>(0, k); });
        add_chain(mv1, mv2, [N](int k) { return std::pair<int, int>(N - k, k); });
    }
    for (auto& [key, chain] : chains) {
        MacroEdgeChain mc;
        mc.macro_v0 = key.first;
        mc.macro_v1 = key.second;
        mc.subvertices = std::move(chain);
        mesh.macroedges.push_back(std::move(mc));
    }
    return mesh;
}

void save_mesh(const std::string& path, const SubdividedMesh& mesh) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_mesh(os, mesh);
}

SubdividedMesh load_mesh(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open mesh: " + path);
    return read_mesh(is);
}

Histogram Histogram::build(const std::vector<double>& values, int bins) {
    Histogram h;
    if (values.empty()) return h;
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (hi == lo) hi = lo + 1e-12;
    h.edges.resize(bins + 1);
    h.counts.assign(bins, 0);
    for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
    for (double v : values) {
        int b = static_cast<int>((v - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++h.counts[b];
    }
    return h;
}

GeodesicOverlay compute_geodesic_overlay(const SubdividedMesh& mesh, const MetricField& field,
                                         double tol) {
    GeodesicOverlay overlay;
    for (const auto& me : mesh.macroedges) {
        GeodesicOverlay::Entry e;
        e.macro_v0 = me.macro_v0;
        e.macro_v1 = me.macro_v1;
        std::vector<Vec2> chain;
        chain.reserve(me.subvertices.size());
        for (int id : me.subvertices) chain.push_back(mesh.subvertices[id]);
        e.edge_metric_length = polyline_length(chain, field, 8);
        try {
            const GeodesicPolyline geo = geodesic_bvp(field, chain.front(), chain.back(), tol);
            e.geodesic = geo.points;
            e.deviation = geodesic_deviation(chain, field, tol);
        } catch (const std::exception&) {
            e.deviation = -1.0;
        }
        overlay.entries.push_back(std::move(e));
    }
    return overlay;
}

double parabola_fit_residual(const std::vector<Vec2>& chain) {
    if (chain.size() < 3) return 0.0;
    // Fit x(t), y(t) with quadratics, choosing the parameterization so exact
    // parabolas fit to machine precision. Reported residual is the max point
    // distance relative to the chain's Euclidean length.
    const std::size_t n = chain.size();
    std::vector<double> t(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        total += (chain[i] - chain[i - 1]).norm();
        t[i] = total;
    }
    if (total == 0.0) return 0.0;
    for (auto& v : t) v /= total;

    double cx[3] = {}, cy[3] = {};
    auto fit = [&]() {
        double S[3][3] = {};
        double bx[3] = {}, by[3] = {};
        for (std::size_t i = 0; i < n; ++i) {
            const double b[3] = {1.0, t[i], t[i] * t[i]};
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) S[r][c] += b[r] * b[c];
                bx[r] += b[r] * chain[i].x;
                by[r] += b[r] * chain[i].y;
            }
        }
        auto solve = [&](double rhs[3], double out[3]) {
            double A[3][4];
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) A[r][c] = S[r][c];
                A[r][3] = rhs[r];
            }
            for (int p = 0; p < 3; ++p) {
                int piv = p;
                for (int r = p + 1; r < 3; ++r)
                    if (std::fabs(A[r][p]) > std::fabs(A[piv][p])) piv = r;
                std::swap(A[p], A[piv]);
                for (int r = p + 1; r < 3; ++r) {
                    const double f = A[r][p] / A[p][p];
                    for (int c = p; c < 4; ++c) A[r][c] -= f * A[p][c];
                }
            }
            for (int r = 2; r >= 0; --r) {
                double v = A[r][3];
                for (int c = r + 1; c < 3; ++c) v -= A[r][c] * out[c];
                out[r] = v / A[r][r];
            }
        };
        solve(bx, cx);
        solve(by, cy);
    };
    auto curve = [&](double s) {
        return Vec2{cx[0] + cx[1] * s + cx[2] * s * s, cy[0] + cy[1] * s + cy[2] * s * s};
    };

    // A chain lies on a parabola exactly when some linear functional of
    // position is an affine parameter for it (any direction not parallel to
    // the axis). Optimize that direction: coarse scan, then golden-section.
    auto residual_for = [&](double theta) {
        const Vec2 lam{std::cos(theta), std::sin(theta)};
        double lo = 1e300, hi = -1e300;
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = chain[i].dot(lam);
            lo = std::min(lo, t[i]);
            hi = std::max(hi, t[i]);
        }
        if (hi - lo < 1e-13 * total) return 1e300;
        for (auto& v : t) v = (v - lo) / (hi - lo);
        fit();
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, (chain[i] - curve(t[i])).norm());
        return worst;
    };

    constexpr double kPi = 3.14159265358979323846;
    double best_theta = 0.0, best = 1e300;
    for (int k = 0; k < 180; ++k) {
        const double theta = kPi * k / 180.0;
        const double r = residual_for(theta);
        if (r < best) {
            best = r;
            best_theta = theta;
        }
    }
    const double gr = 0.6180339887498949;
    double a = best_theta - kPi / 180.0, b = best_theta + kPi / 180.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = residual_for(x1), f2 = residual_for(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = residual_for(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = residual_for(x2);
        }
        best = std::min({best, f1, f2});
    }
    return best / total;
}

ReportData compute_report(const SubdividedMesh& mesh, const MetricField& field,
                          const TargetSpec& targets) {
    ReportData r;
    const int N = targets.N;

    for (const auto& e : mesh.subedges) {
        const double l =
            N * segment_length_midpoint(mesh.subvertices[e.v0], mesh.subvertices[e.v1], field);
        switch (e.cls) {
            case EdgeClass::Unit: r.edge_lengths_unit.push_back(l); break;
            case EdgeClass::Leg: r.edge_lengths_leg.push_back(l); break;
            case EdgeClass::Hypotenuse: r.edge_lengths_hyp.push_back(l); break;
        }
    }

    const IdealSimplex ideal = targets.tiling == Tiling::Equilateral
                                   ? IdealSimplex::equilateral()
                                   : IdealSimplex::right();
    const IdealSimplex k0 = ideal.scaled(1.0 / N);
    const TriangleQuadrature quad = TriangleQuadrature::degree2();

    r.min_quality = 1.0;
    r.max_quality = 0.0;
    for (const auto& st : mesh.subtriangles) {
        const Triangle tri{mesh.subvertices[st.v[0]], mesh.subvertices[st.v[1]],
                           mesh.subvertices[st.v[2]]};
        const double q = quality_element(tri, k0.vertices, field, quad);
        r.qualities.push_back(q);
        r.min_quality = std::min(r.min_quality, q);
        r.max_quality = std::max(r.max_quality, q);

        const Qu1Result qu1 = classify_qu1(tri, k0, field);
        (qu1.pass ? r.qu1_pass : r.qu1_fail) += 1;
    }

    // Edge ratio relative to the class target.
    r.min_edge_ratio = 1e300;
    r.max_edge_ratio = 0.0;
    auto scan = [&](const std::vector<double>& lens, double target) {
        for (double l : lens) {
            const double ratio = l / target;
            r.min_edge_ratio = std::min(r.min_edge_ratio, ratio);
            r.max_edge_ratio = std::max(r.max_edge_ratio, ratio);
        }
    };
    scan(r.edge_lengths_unit, 1.0);
    scan(r.edge_lengths_leg, 1.0);
    scan(r.edge_lengths_hyp, std::sqrt(2.0));

    // Anisotropic quotient sampled on a raster over the mesh bounding box.
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& p : mesh.subvertices) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const int raster = 16;
    for (int j = 0; j <= raster; ++j)
        for (int i = 0; i <= raster; ++i) {
            const Vec2 p{x0 + (x1 - x0) * i / raster, y0 + (y1 - y0) * j / raster};
            try {
                r.aniso_quotient_samples.push_back(anisotropic_quotient(field.evaluate(p)));
            } catch (const std::exception&) {
            }
        }

    // Parabola-fit diagnostic per macroedge.
    for (const auto& me : mesh.macroedges) {
        std::vector<Vec2> chain;
        for (int id : me.subvertices) chain.push_back(mesh.subvertices[id]);
        r.parabola_residuals.push_back(parabola_fit_residual(chain));
    }
    return r;
}

namespace {

json stats_to_json(const RunStats& run) {
    json j;
    j["wall_time_seconds"] = run.wall_time_seconds;
    j["cost_final"] = run.cost_final;
    j["min_area_ratio_final"] = run.min_area_ratio_final;
    j["stages"] = json::array();
    for (const auto& s : run.stages) {
        json js;
        js["stage"] = s.stage;
        js["epsilon"] = s.epsilon;
        js["iterations"] = s.iterations;
        js["cost_initial"] = s.cost_initial;
        js["cost_final"] = s.cost_final;
        js["grad_max_final"] = s.grad_max_final;
        js["min_area_ratio"] = s.min_area_ratio;
        js["termination"] = s.termination;
        j["stages"].push_back(js);
    }
    return j;
}

json histogram_to_json(const Histogram& h) {
    json j;
    j["edges"] = h.edges;
    j["counts"] = h.counts;
    return j;
}

}  // namespace

std::string report_to_json(const ReportData& r) {
    json j;
    if (r.run) j["run"] = stats_to_json(*r.run);
    j["histograms"]["edge_length_unit"] = histogram_to_json(Histogram::build(r.edge_lengths_unit, 20));
    j["histograms"]["edge_length_leg"] = histogram_to_json(Histogram::build(r.edge_lengths_leg, 20));
    j["histograms"]["edge_length_hyp"] = histogram_to_json(Histogram::build(r.edge_lengths_hyp, 20));
    j["histograms"]["quality"] = histogram_to_json(Histogram::build(r.qualities, 20));
    j["quality"]["min"] = r.min_quality;
    j["quality"]["max"] = r.max_quality;
    j["edge_ratio"]["min"] = r.min_edge_ratio;
    j["edge_ratio"]["max"] = r.max_edge_ratio;
    j["qu1"]["pass"] = r.qu1_pass;
    j["qu1"]["fail"] = r.qu1_fail;
    if (!r.parabola_residuals.empty()) {
        j["parabola_fit"]["residuals"] = r.parabola_residuals;
        j["parabola_fit"]["max"] =
            *std::max_element(r.parabola_residuals.begin(), r.parabola_residuals.end());
    }
    if (!r.aniso_quotient_samples.empty()) {
        j["anisotropic_quotient"]["max"] = *std::max_element(
            r.aniso_quotient_samples.begin(), r.aniso_quotient_samples.end());
        j["anisotropic_quotient"]["samples"] = r.aniso_quotient_samples;
    }
    if (r.geodesics) {
        double worst = -1.0;
        int failures = 0;
        for (const auto& e : r.geodesics->entries) {
            if (e.deviation < 0.0)
                ++failures;
            else
                worst = std::max(worst, e.deviation);
        }
        j["geodesics"]["max_deviation"] = worst;
        j["geodesics"]["bvp_failures"] = failures;
    }
    return j.dump(2);
}

std::string overlay_to_json(const GeodesicOverlay& overlay) {
    json j;
    j["macroedges"] = json::array();
    for (const auto& e : overlay.entries) {
        json je;
        je["macro_v0"] = e.macro_v0;
        je["macro_v1"] = e.macro_v1;
        je["deviation"] = e.deviation;
        je["edge_metric_length"] = e.edge_metric_length;
        json pts = json::array();
        for (const auto& p : e.geodesic) pts.push_back({p.x, p.y});
        je["geodesic"] = pts;
        j["macroedges"].push_back(je);
    }
    return j.dump(2);
}

void write_vtk(std::ostream& os, const SubdividedMesh& mesh,
               const std::vector<double>& cell_quality) {
    if (mesh.subvertices.empty() || mesh.subtriangles.empty())
        throw std::runtime_error("write_vtk: empty mesh");
    os << "# vtk DataFile Version 3.0\n";
    os << "isomesh triangulation\n";
    os << "ASCII\n";
    os << "DATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << mesh.subvertices.size() << " double\n";
    for (const auto& p : mesh.subvertices)
        os << fmt_double(p.x) << " " << fmt_double(p.y) << " 0\n";
    os << "CELLS " << mesh.subtriangles.size() << " " << 4 * mesh.subtriangles.size() << "\n";
    for (const auto& t : mesh.subtriangles)
        os << "3 " << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
    os << "CELL_TYPES " << mesh.subtriangles.size() << "\n";
    for (std::size_t i = 0; i < mesh.subtriangles.size(); ++i) os << "5\n";
    if (cell_quality.size() == mesh.subtriangles.size()) {
        os << "CELL_DATA " << mesh.subtriangles.size() << "\n";
        os << "SCALARS quality double 1\n";
        os << "LOOKUP_TABLE default\n";
        for (double q : cell_quality) os << fmt_double(q) << "\n";
    }
}

namespace {

// Blue (0) -> white (0.5) -> red (1), for quality colormap fills.
std::string quality_color(double q) {
    const double t = std::clamp(q, 0.0, 1.0);
    const int r = static_cast<int>(255 * std::min(1.0, 2.0 * t));
    const int g = static_cast<int>(255 * (1.0 - std::fabs(2.0 * t - 1.0) * 0.6));
    const int b = static_cast<int>(255 * std::min(1.0, 2.0 * (1.0 - t)));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

void write_svg(std::ostream& os, const SubdividedMesh& mesh,
               const std::vector<double>& cell_quality, const GeodesicOverlay* overlay) {
    if (mesh.subvertices.empty() || mesh.subtriangles.empty())
        throw std::runtime_error("write_svg: empty mesh");

    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& p : mesh.subvertices) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double w = std::max(x1 - x0, 1e-12), h = std::max(y1 - y0, 1e-12);
    const double size = 900.0;
    const double scale = size / std::max(w, h);
    const double margin = 20.0;
    auto X = [&](double x) { return margin + (x - x0) * scale; };
    auto Y = [&](double y) { return margin + (y1 - y) * scale; };  // flip y

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (w * scale + 2 * margin)
       << "\" height=\"" << (h * scale + 2 * margin) << "\">\n";

    const bool fills = cell_quality.size() == mesh.subtriangles.size();
    for (std::size_t i = 0; i < mesh.subtriangles.size(); ++i) {
        const auto& t = mesh.subtriangles[i];
        os << "<polygon points=\"";
        for (int v = 0; v < 3; ++v)
            os << X(mesh.subvertices[t.v[v]].x) << "," << Y(mesh.subvertices[t.v[v]].y)
               << (v < 2 ? " " : "");
        os << "\" fill=\"" << (fills ? quality_color(cell_quality[i]) : std::string("none"))
           << "\" stroke=\"#555\" stroke-width=\"0.5\"/>\n";
    }

    // Macroedges, bold.
    for (const auto& me : mesh.macroedges) {
        os << "<polyline points=\"";
        for (std::size_t k = 0; k < me.subvertices.size(); ++k) {
            const Vec2& p = mesh.subvertices[me.subvertices[k]];
            os << X(p.x) << "," << Y(p.y) << (k + 1 < me.subvertices.size() ? " " : "");
        }
        os << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"2\"/>\n";
    }

    if (overlay) {
        for (const auto& e : overlay->entries) {
            if (e.geodesic.empty()) continue;
            os << "<polyline points=\"";
            for (std::size_t k = 0; k < e.geodesic.size(); ++k)
                os << X(e.geodesic[k].x) << "," << Y(e.geodesic[k].y)
                   << (k + 1 < e.geodesic.size() ? " " : "");
            os << "\" fill=\"none\" stroke=\"#1f77ff\" stroke-width=\"1.2\"/>\n";
        }
    }
    os << "</svg>\n";
}

}  // namespace isomesh
