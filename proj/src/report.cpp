#include "arith/report.hpp"

#include "arith/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace arith {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string witness_str(const IntVec& w) {
    std::string s;
    for (size_t j = 0; j < w.size(); ++j) {
        if (j) s += ';';
        s += w[j].get_str();
    }
    return s;
}

} // namespace

std::string sigma_profile_csv(std::span<const SigmaEntry> profile) {
    std::ostringstream os;
    os << "# schema=arithclass.sigma.v1\n";
    os << "k,value_num,value_den,value_float,witness\n";
    for (const auto& e : profile) {
        os << e.k << ',' << e.value.get_num().get_str() << ',' << e.value.get_den().get_str()
           << ',' << fmt17(e.value.get_d()) << ',' << witness_str(e.witness) << '\n';
    }
    return os.str();
}

std::string sigma_profile_json(const TargetVector& alpha, std::span<const SigmaEntry> profile) {
    std::ostringstream os;
    os << "{\"schema\":\"arithclass.sigma.v1\",\"alpha\":[";
    for (int j = 0; j < alpha.dim(); ++j) {
        if (j) os << ',';
        os << '"' << rat_str(alpha.coords[j]) << '"';
    }
    os << "],\"profile\":[";
    for (size_t idx = 0; idx < profile.size(); ++idx) {
        const auto& e = profile[idx];
        if (idx) os << ',';
        os << "{\"k\":" << e.k << ",\"value\":\"" << rat_str(e.value) << "\",\"witness\":[";
        for (size_t j = 0; j < e.witness.size(); ++j) {
            if (j) os << ',';
            os << '"' << e.witness[j].get_str() << '"';
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

std::string verdict_json(const ClassVerdict& v) {
    std::ostringstream os;
    os << "{\"schema\":\"arithclass.verdict.v1\",";
    if (v.in_class()) {
        os << "\"status\":\"in_class_up_to\",\"K\":" << v.K << "}";
    } else {
        os << "\"status\":\"violated\",\"K\":" << v.K << ",\"k\":" << v.k << ",\"value\":\""
           << rat_str(v.value) << "\",\"witness\":[";
        for (size_t j = 0; j < v.witness.size(); ++j) {
            if (j) os << ',';
            os << '"' << v.witness[j].get_str() << '"';
        }
        os << "]}";
    }
    return os.str();
}

std::string density_csv(const DensityCurve& curve) {
    std::ostringstream os;
    os << "# schema=arithclass.density.v1\n";
    os << "r,density_lb,err,bands_considered,truncation_tail\n";
    for (const auto& p : curve.points) {
        os << fmt17(p.r) << ',' << fmt17(p.density_lb) << ',' << fmt17(p.err) << ','
           << p.bands_considered << ',' << fmt17(p.truncation_tail) << '\n';
    }
    return os.str();
}

namespace {

std::string svg_header(int w, int h) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
       << "<!-- schema=arithclass.svg.v1 -->\n";
    return os.str();
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

std::string density_svg(const DensityCurve& curve) {
    const int W = 640, H = 420, ML = 70, MR = 20, MT = 20, MB = 50;
    std::ostringstream os;
    os << svg_header(W, H);
    os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
       << "\" fill=\"white\"/>\n";
    if (!curve.points.empty()) {
        double xmin = 1e300, xmax = -1e300;
        for (const auto& p : curve.points) {
            double lx = std::log10(p.r);
            xmin = std::min(xmin, lx);
            xmax = std::max(xmax, lx);
        }
        if (xmax <= xmin) xmax = xmin + 1.0;
        auto X = [&](double r) {
            return ML + (std::log10(r) - xmin) / (xmax - xmin) * (W - ML - MR);
        };
        auto Y = [&](double dens) { return MT + (1.0 - dens) * (H - MT - MB); };
        os << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
           << H - MB << "\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << (W / 2) << "\" y=\"" << H - 12
           << "\" font-size=\"14\" text-anchor=\"middle\">log10 r</text>\n";
        os << "<text x=\"16\" y=\"" << (H / 2)
           << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
           << (H / 2) << ")\">density lower bound</text>\n";
        os << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" points=\"";
        for (const auto& p : curve.points)
            os << coord(X(p.r)) << ',' << coord(Y(p.density_lb)) << ' ';
        os << "\"/>\n";
        for (const auto& p : curve.points)
            os << "<circle cx=\"" << coord(X(p.r)) << "\" cy=\"" << coord(Y(p.density_lb))
               << "\" r=\"3\" fill=\"#1f6fb2\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string bounds_csv(std::span<const BoundReport> reports) {
    std::ostringstream os;
    os << "# schema=arithclass.bounds.v1\n";
    os << "id,lhs,lhs_err,rhs,satisfied,margin\n";
    for (const auto& r : reports) {
        const char* st = r.status == BoundReport::Status::Satisfied
                             ? "true"
                             : (r.status == BoundReport::Status::Violated ? "false" : "skipped");
        os << r.id << ',' << fmt17(r.lhs) << ',' << fmt17(r.lhs_err) << ',' << fmt17(r.rhs) << ','
           << st << ',' << fmt17(r.margin) << '\n';
    }
    return os.str();
}

std::string flow_csv(std::span<const FlowPoint> trajectory) {
    std::ostringstream os;
    os << "# schema=arithclass.flow.v1\n";
    os << "t,delta_lo,delta_hi,certified,coeffs\n";
    for (const auto& p : trajectory) {
        os << fmt17(p.t) << ',' << fmt17(p.delta.lo) << ',' << fmt17(p.delta.hi) << ','
           << (p.delta.certified ? "true" : "false") << ',';
        for (size_t j = 0; j < p.delta.coeffs.size(); ++j) {
            if (j) os << ';';
            os << p.delta.coeffs[j];
        }
        os << '\n';
    }
    return os.str();
}

std::string lemma_csv(std::span<const LemmaCheckRow> rows) {
    std::ostringstream os;
    os << "# schema=arithclass.lemma.v1\n";
    os << "k,witness,a,t,eps,delta_lo,delta_hi,satisfied\n";
    for (const auto& r : rows) {
        os << r.k << ',' << witness_str(r.i) << ',' << fmt17(r.a) << ',' << fmt17(r.pair.t) << ','
           << fmt17(r.pair.eps) << ',' << fmt17(r.delta.lo) << ',' << fmt17(r.delta.hi) << ','
           << (r.satisfied ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string bands_svg(std::span<const double> alpha, double r, std::span<const Band> bands) {
    if (alpha.size() != 2) throw std::invalid_argument("bands_svg: n == 2 only");
    const int W = 520, H = 520;
    const double view = 1.35 * r; // half-width of the viewport in data units
    double ax = alpha[0], ay = alpha[1];
    auto X = [&](double x) { return (x - ax) / view * (W / 2.0) + W / 2.0; };
    auto Y = [&](double y) { return H / 2.0 - (y - ay) / view * (H / 2.0); };

    std::ostringstream os;
    os << svg_header(W, H);
    os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
       << "\" fill=\"white\"/>\n";
    // the bands: strips |(x, i)| < halfwidth, drawn clipped to the viewport;
    // strips that never enter the viewport are skipped
    for (const auto& b : bands) {
        double i0 = b.i[0].get_d(), i1 = b.i[1].get_d();
        double norm = std::hypot(i0, i1);
        if (norm == 0.0) continue;
        double dist_to_center = std::fabs(ax * i0 + ay * i1) / norm;
        if (dist_to_center > b.halfwidth.get_d() / norm + 1.5 * view) continue;
        double ux = i0 / norm, uy = i1 / norm;  // band normal
        double vx = -uy, vy = ux;               // band direction
        double c = b.halfwidth.get_d() / norm;  // distance halfwidth
        double span = 4.0 * view;
        for (int side : {-1, 1}) {
            double px = ux * c * side, py = uy * c * side;
            os << "<line x1=\"" << coord(X(px - vx * span)) << "\" y1=\""
               << coord(Y(py - vy * span)) << "\" x2=\"" << coord(X(px + vx * span))
               << "\" y2=\"" << coord(Y(py + vy * span))
               << "\" stroke=\"#c44e52\" stroke-width=\"1\"/>\n";
        }
    }
    // the ball B(alpha, r)
    os << "<circle cx=\"" << coord(X(ax)) << "\" cy=\"" << coord(Y(ay)) << "\" r=\""
       << coord(r / view * (W / 2.0)) << "\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\"/>\n";
    os << "<circle cx=\"" << coord(X(ax)) << "\" cy=\"" << coord(Y(ay))
       << "\" r=\"2\" fill=\"#1f6fb2\"/>\n";
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + path);
    f << content;
    if (!f) throw ConfigError("failed writing output file: " + path);
}

} // namespace arith
