#include "ambinv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ambinv/errors.hpp"

namespace ambinv {

std::string format_sig(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    return out;
}

} // namespace

void write_field_csv(const ValueField& field, const RegionLabels& labels,
                     const std::string& metadata, const std::string& path) {
    std::ofstream out = open_out(path);
    out << metadata << "tau,x,m,value,label\n";
    const Grid& g = field.grid();
    for (int it = 0; it < g.n_tau(); ++it) {
        const std::string tau = format_sig(g.tau(it));
        for (int im = 0; im < g.n_m(); ++im) {
            const std::string m = format_sig(g.m(im));
            for (int ix = 0; ix < g.n_x(); ++ix) {
                out << tau << ',' << format_sig(g.x(ix)) << ',' << m << ','
                    << format_sig(field.at(it, ix, im)) << ','
                    << to_char(labels.at(it, ix, im)) << '\n';
            }
        }
    }
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

FieldCsv read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    FieldCsv out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "tau,x,m,value,label")
                throw ConfigError("unexpected field CSV header in '" + path + "'");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        double vals[4];
        for (double& v : vals) {
            if (!std::getline(row, cell, ','))
                throw ConfigError("short row in '" + path + "'");
            v = std::stod(cell);
        }
        if (!std::getline(row, cell, ',') || cell.empty())
            throw ConfigError("missing label in '" + path + "'");
        out.tau.push_back(vals[0]);
        out.x.push_back(vals[1]);
        out.m.push_back(vals[2]);
        out.value.push_back(vals[3]);
        out.label.push_back(cell[0]);
    }
    return out;
}

void write_barriers_csv(const BarrierSet& barriers, const std::string& metadata,
                        const std::string& path, int only_it) {
    std::ofstream out = open_out(path);
    out << metadata << "tau,m,lower,target,upper\n";
    const Grid& g = barriers.grid;
    for (int it = 0; it < g.n_tau(); ++it) {
        if (only_it >= 0 && it != only_it) continue;
        const std::string tau = format_sig(g.tau(it));
        for (int im = 0; im < g.n_m(); ++im) {
            const double lo = barriers.lower_at(it, im);
            const double hi = barriers.upper_at(it, im);
            out << tau << ',' << format_sig(g.m(im)) << ',';
            if (std::isfinite(lo)) out << format_sig(lo);
            out << ',' << format_sig(barriers.target_at(it, im)) << ',';
            if (std::isfinite(hi)) out << format_sig(hi);
            out << '\n';
        }
    }
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

void write_paths_csv(const std::vector<PathRecord>& paths, const std::string& metadata,
                     const std::string& path) {
    std::ofstream out = open_out(path);
    out << metadata
        << "path,t,x,m,S,cum_holding,cum_lower,cum_upper,discounted_total\n";
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const PathRecord& r = paths[p];
        for (std::size_t k = 0; k < r.t.size(); ++k) {
            out << p << ',' << format_sig(r.t[k]) << ',' << format_sig(r.x[k]) << ','
                << format_sig(r.m[k]) << ',' << format_sig(r.S[k]) << ','
                << format_sig(r.cum_holding[k]) << ','
                << format_sig(r.cum_lower_control[k]) << ','
                << format_sig(r.cum_upper_control[k]) << ','
                << format_sig(r.discounted_total[k]) << '\n';
        }
    }
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

void write_cost_summary_csv(double estimate, double std_error, long n_paths,
                            double x0, double m0, const std::string& metadata,
                            const std::string& path) {
    std::ofstream out = open_out(path);
    out << metadata << "x0,m0,n_paths,estimate,std_error\n"
        << format_sig(x0) << ',' << format_sig(m0) << ',' << n_paths << ','
        << format_sig(estimate) << ',' << format_sig(std_error) << '\n';
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

BarrierCurves barrier_curves(const BarrierSet& barriers, int it, std::string label) {
    BarrierCurves c;
    c.label = std::move(label);
    const Grid& g = barriers.grid;
    for (int im = 0; im < g.n_m(); ++im) {
        const double m = g.m(im);
        const double lo = barriers.lower_at(it, im);
        const double hi = barriers.upper_at(it, im);
        if (std::isfinite(lo)) c.lower.emplace_back(lo, m);
        if (std::isfinite(hi)) c.upper.emplace_back(hi, m);
        c.target.emplace_back(barriers.target_at(it, im), m);
    }
    return c;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

struct Mapper {
    double x_lo, x_hi, m_lo, m_hi;
    double px(double x) const { return 70.0 + (x - x_lo) / (x_hi - x_lo) * 580.0; }
    double py(double m) const { return 470.0 - (m - m_lo) / (m_hi - m_lo) * 420.0; }
};

void polyline(std::ostream& out, const Mapper& map,
              const std::vector<std::pair<double, double>>& pts, const char* color,
              bool dashed) {
    if (pts.empty()) return;
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out << ' ';
        out << format_sig(map.px(pts[i].first), 7) << ','
            << format_sig(map.py(pts[i].second), 7);
    }
    out << "\"/>\n";
}

} // namespace

void render_svg(const std::vector<BarrierCurves>& series, double x_lo, double x_hi,
                double m_lo, double m_hi, const std::string& title,
                const std::string& metadata, const std::string& path) {
    std::ofstream out = open_out(path);
    const Mapper map{x_lo, x_hi, m_lo, m_hi};
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"540\" "
           "viewBox=\"0 0 720 540\">\n<!--\n"
        << metadata << "-->\n"
        << "  <rect x=\"0\" y=\"0\" width=\"720\" height=\"540\" fill=\"white\"/>\n"
        << "  <text x=\"360\" y=\"24\" font-size=\"15\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">"
        << title << "</text>\n";

    // Axes with 7 ticks each.
    out << "  <rect x=\"70\" y=\"50\" width=\"580\" height=\"420\" fill=\"none\" "
           "stroke=\"black\"/>\n";
    for (int k = 0; k <= 6; ++k) {
        const double x = x_lo + (x_hi - x_lo) * k / 6.0;
        const double m = m_lo + (m_hi - m_lo) * k / 6.0;
        out << "  <line x1=\"" << format_sig(map.px(x), 7) << "\" y1=\"470\" x2=\""
            << format_sig(map.px(x), 7) << "\" y2=\"476\" stroke=\"black\"/>\n"
            << "  <text x=\"" << format_sig(map.px(x), 7)
            << "\" y=\"492\" font-size=\"11\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\">"
            << format_sig(x, 6) << "</text>\n"
            << "  <line x1=\"64\" y1=\"" << format_sig(map.py(m), 7) << "\" x2=\"70\" y2=\""
            << format_sig(map.py(m), 7) << "\" stroke=\"black\"/>\n"
            << "  <text x=\"58\" y=\"" << format_sig(map.py(m) + 4.0, 7)
            << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">"
            << format_sig(m, 6) << "</text>\n";
    }
    out << "  <text x=\"360\" y=\"520\" font-size=\"13\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">x</text>\n"
        << "  <text x=\"20\" y=\"260\" font-size=\"13\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">m</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        polyline(out, map, series[i].lower, color, false);
        polyline(out, map, series[i].upper, color, false);
        polyline(out, map, series[i].target, color, true);
        const double ly = 60.0 + 18.0 * static_cast<double>(i);
        out << "  <line x1=\"560\" y1=\"" << format_sig(ly, 7) << "\" x2=\"588\" y2=\""
            << format_sig(ly, 7) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "  <text x=\"594\" y=\"" << format_sig(ly + 4.0, 7)
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << series[i].label
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

} // namespace ambinv
