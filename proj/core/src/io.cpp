#include "stardomain/io.hpp"

#include "stardomain/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace stardomain {

namespace {

Json point_json(const Point& p) { return Json::array({p.x(), p.y()}); }

Point point_from(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorCode::InvalidInput, "expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorCode::InvalidInput, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::vector<double> numbers_from(const Json& j, const char* what) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must contain numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

// JSON has no infinity; an unbounded gap is reported as null
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

} // namespace

StarDomain domain_from_json(const Json& j) {
    const Json& kind = member(j, "kind");
    if (!kind.is_string()) throw Error(ErrorCode::InvalidInput, "\"kind\" must be a string");
    const auto k = kind.get<std::string>();
    if (k == "polygon") {
        const Json& verts = member(j, "vertices");
        if (!verts.is_array()) throw Error(ErrorCode::InvalidInput, "vertices must be an array");
        std::vector<Point> points;
        for (const auto& v : verts) points.push_back(point_from(v));
        return StarDomain::polygon(std::move(points));
    }
    if (k == "radial")
        return StarDomain::radial(numbers_from(member(j, "angles"), "angles"), numbers_from(member(j, "radii"), "radii"));
    if (k == "ball") {
        const Json& r = member(j, "radius");
        if (!r.is_number()) throw Error(ErrorCode::InvalidInput, "radius must be a number");
        return StarDomain::ball(r.get<double>());
    }
    throw Error(ErrorCode::InvalidInput, "unknown domain kind \"" + k + "\"");
}

Json domain_to_json(const StarDomain& domain) {
    switch (domain.kind()) {
    case DomainKind::ConvexPolygon: {
        Json verts = Json::array();
        for (const Point& p : domain.vertices()) verts.push_back(point_json(p));
        return {{"kind", "polygon"}, {"vertices", verts}};
    }
    case DomainKind::RadialSpline: {
        const auto a = domain.angles();
        const auto r = domain.radii();
        return {{"kind", "radial"},
                {"angles", std::vector<double>(a.begin(), a.end())},
                {"radii", std::vector<double>(r.begin(), r.end())}};
    }
    case DomainKind::Ball:
        return {{"kind", "ball"}, {"radius", domain.ball_radius()}};
    }
    throw Error(ErrorCode::InvalidInput, "unknown domain kind");
}

StarDomain load_domain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open domain file " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidInput, "cannot parse " + path + ": " + e.what());
    }
    return domain_from_json(j);
}

Json metrics_to_json(const DomainMetrics& m) {
    return {{"rho", m.rho}, {"r_in", m.r_in}, {"R_out", m.R_out}, {"diameter", m.diameter}, {"area", m.area}};
}

Json mesh_to_json(const TriangleMesh& mesh) {
    Json verts = Json::array();
    for (const Point& p : mesh.vertices()) verts.push_back(point_json(p));
    Json tris = Json::array();
    for (const auto& t : mesh.triangles()) tris.push_back({t[0], t[1], t[2]});
    return {{"vertices", verts}, {"triangles", tris}};
}

TriangleMesh mesh_from_json(const Json& j) {
    std::vector<Point> verts;
    for (const auto& v : member(j, "vertices")) verts.push_back(point_from(v));
    std::vector<std::array<std::size_t, 3>> tris;
    for (const auto& t : member(j, "triangles")) {
        if (!t.is_array() || t.size() != 3) throw Error(ErrorCode::InvalidInput, "triangles must have 3 indices");
        std::array<std::size_t, 3> tri{};
        for (int k = 0; k < 3; ++k) {
            if (!t[k].is_number_unsigned()) throw Error(ErrorCode::InvalidInput, "triangle indices must be unsigned");
            tri[k] = t[k].get<std::size_t>();
        }
        tris.push_back(tri);
    }
    return TriangleMesh(std::move(verts), std::move(tris));
}

Json lipschitz_to_json(const LipschitzReport& r) {
    return {{"empirical", r.empirical},
            {"empirical_lower", r.empirical_lower},
            {"bound", r.theoretical_bound},
            {"pairs", r.sample_pairs},
            {"witness", Json::array({point_json(r.witness[0]), point_json(r.witness[1])})},
            {"pass", r.pass}};
}

Json chord_angle_to_json(const ChordAngleReport& r) {
    return {{"pairs", r.pairs},
            {"lower_violations", r.lower_violations},
            {"upper_violations", r.upper_violations},
            {"magnitude_violations", r.magnitude_violations},
            {"worst_lower_slack", r.worst_lower_slack},
            {"worst_upper_slack", r.worst_upper_slack},
            {"worst_magnitude_slack", r.worst_magnitude_slack},
            {"pass", r.pass}};
}

Json bounds_to_json(const std::vector<BoundCheck>& bounds) {
    Json out = Json::array();
    for (const auto& b : bounds)
        out.push_back({{"name", b.name}, {"lower", b.lower}, {"value", b.value}, {"upper", b.upper}, {"pass", b.pass}});
    return out;
}

Json spectrum_to_json(const SpectrumReport& r) {
    Json hodge = Json::object();
    for (int k = 0; k < 3; ++k) hodge[std::to_string(k)] = r.hodge[k];
    return {{"pf", {{"0", r.pf[0]}, {"1", r.pf[1]}}},
            {"hodge", hodge},
            {"bounds", bounds_to_json(r.bounds)},
            {"ordering_pass", r.ordering_pass},
            {"ordering_margin", r.ordering_margin},
            {"zero_count", {{"0", r.zero_count[0]}, {"1", r.zero_count[1]}}},
            {"metrics", metrics_to_json(r.metrics)},
            {"mesh", {{"rings", r.rings}, {"vertices", r.vertices}, {"edges", r.edges}, {"faces", r.faces},
                      {"h_max", r.h_max}}},
            {"tolerance", r.tolerance}};
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_convergence_csv(std::ostream& out, const ConvergenceStudy& study) {
    out << "eps,C0,C1,delta0,delta1";
    for (int k = 0; k < 3; ++k)
        for (std::size_t j = 0; j < study.hodge_count; ++j) out << ",lam_" << k << '_' << j + 1;
    out << '\n';
    auto row = [&](double eps, const SpectrumReport& r, double d0, double d1) {
        out << format_double(eps) << ',' << format_double(r.pf[0]) << ',' << format_double(r.pf[1]) << ','
            << format_double(d0) << ',' << format_double(d1);
        for (int k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < study.hodge_count; ++j)
                out << ',' << (j < r.hodge[k].size() ? format_double(r.hodge[k][j]) : std::string());
        out << '\n';
    };
    row(0.0, study.reference, 0.0, 0.0);
    for (const auto& e : study.entries) row(e.epsilon, e.report, e.delta[0], e.delta[1]);
}

void write_approximation_csv(std::ostream& out, const SmoothApproximation& approx, std::size_t rays) {
    out << "angle,s_base,s_eps,diff\n";
    for (std::size_t i = 0; i < rays; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(rays);
        const double a = approx.base.radius(t);
        const double b = approx.boundary.radius(t);
        out << format_double(t) << ',' << format_double(a) << ',' << format_double(b) << ',' << format_double(a - b)
            << '\n';
    }
}

} // namespace stardomain
